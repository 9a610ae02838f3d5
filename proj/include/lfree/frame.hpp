#pragma once

#include <string>
#include <vector>

#include "lfree/element.hpp"
#include "lfree/hermite.hpp"

namespace lfree {

/// Exact integer coordinates for a finite family of elements.
///
/// Coordinates are the values at every explicit point of the family, the
/// values at every rung below the latest tail start of each ladder, and each
/// tail coefficient scaled by the lcm of its denominators across the family.
/// The map is additive and injective on the span of the family, so integer
/// linear algebra on coordinates is linear algebra on elements.
class CoordinateFrame {
 public:
  CoordinateFrame(AmbientPtr ambient, const std::vector<Element>& family);

  std::size_t size() const { return points_.size() + slots_.size(); }
  const std::vector<Ordinal>& points() const { return points_; }

  /// Throws ErrorKind::Precondition when f does not live in the frame.
  IntVector coordinates(const Element& f) const;
  IntMatrix coordinates(const std::vector<Element>& fs) const;
  bool covers(const Element& f) const;

  /// Points and scaled tail slots, e.g. {"points":[...], "tails":["main:b0/6"]}.
  std::vector<std::string> slot_names() const;

 private:
  struct Slot {
    std::size_t ladder;
    std::size_t weight;
    mpz_class scale;
  };
  AmbientPtr ambient_;
  std::vector<Ordinal> points_;
  std::vector<Slot> slots_;
  std::map<std::size_t, std::uint64_t> horizon_;  // latest start per ladder
};

}  // namespace lfree
