#include "lfree/frame.hpp"

#include <algorithm>
#include <set>

#include "lfree/error.hpp"

namespace lfree {

CoordinateFrame::CoordinateFrame(AmbientPtr ambient, const std::vector<Element>& family)
    : ambient_(std::move(ambient)) {
  std::set<Ordinal> points;
  std::map<std::size_t, std::uint64_t> low;
  std::map<std::pair<std::size_t, std::size_t>, mpz_class> scale;
  for (const auto& f : family) {
    if (!same_ambient(ambient_, f.ambient())) throw Error(ErrorKind::SpaceMismatch, "frame family");
    for (const auto& [x, v] : f.prefix()) points.insert(x);
    for (const auto& [l, t] : f.tails()) {
      auto [it, fresh] = low.try_emplace(l, t.start);
      if (!fresh) it->second = std::min(it->second, t.start);
      auto& h = horizon_[l];
      h = std::max(h, t.start);
      for (std::size_t i = 0; i < t.coefficients.size(); ++i) {
        if (t.coefficients[i] == 0) continue;
        auto [s, added] = scale.try_emplace({l, i}, mpz_class(1));
        mpz_lcm(s->second.get_mpz_t(), s->second.get_mpz_t(), t.coefficients[i].get_den_mpz_t());
      }
    }
  }
  for (const auto& [l, h] : horizon_) {
    for (std::uint64_t k = low[l]; k < h; ++k) points.insert(ambient_->ladders[l].point(k));
  }
  points_.assign(points.begin(), points.end());
  for (const auto& [key, s] : scale) slots_.push_back(Slot{key.first, key.second, s});
}

bool CoordinateFrame::covers(const Element& f) const {
  if (!same_ambient(ambient_, f.ambient())) return false;
  for (const auto& [x, v] : f.prefix()) {
    if (!std::binary_search(points_.begin(), points_.end(), x)) return false;
  }
  for (const auto& [l, t] : f.tails()) {
    auto h = horizon_.find(l);
    if (h == horizon_.end()) return false;
    // rungs between this start and the horizon must be frame points
    for (std::uint64_t k = t.start; k < h->second; ++k) {
      if (!std::binary_search(points_.begin(), points_.end(), ambient_->ladders[l].point(k))) return false;
    }
    if (t.start > h->second) return false;
    for (std::size_t i = 0; i < t.coefficients.size(); ++i) {
      if (t.coefficients[i] == 0) continue;
      bool found = false;
      for (const auto& s : slots_) {
        if (s.ladder == l && s.weight == i) {
          found = mpz_divisible_p(s.scale.get_mpz_t(), t.coefficients[i].get_den_mpz_t()) != 0;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

IntVector CoordinateFrame::coordinates(const Element& f) const {
  if (!covers(f)) throw Error(ErrorKind::Precondition, to_string(f) + " lies outside the coordinate frame");
  IntVector out;
  out.reserve(size());
  for (const auto& x : points_) out.push_back(f.eval(x));
  for (const auto& s : slots_) {
    const mpq_class c = f.residue_on(s.ladder)[s.weight] * mpq_class(s.scale);
    out.push_back(c.get_num());
  }
  return out;
}

IntMatrix CoordinateFrame::coordinates(const std::vector<Element>& fs) const {
  IntMatrix out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(coordinates(f));
  return out;
}

std::vector<std::string> CoordinateFrame::slot_names() const {
  std::vector<std::string> out;
  for (const auto& x : points_) out.push_back(to_string(x));
  for (const auto& s : slots_) {
    const auto& lad = ambient_->ladders[s.ladder];
    out.push_back(lad.id() + ":" + lad.weights()[s.weight].label() + "/" + s.scale.get_str());
  }
  return out;
}

}  // namespace lfree
