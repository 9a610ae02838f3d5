#pragma once

#include <stdexcept>
#include <string>

namespace lfree {

enum class ErrorKind {
  Parse,
  OrdinalBound,
  ZeroOrdinal,
  NotAPoint,
  InfiniteSlice,
  SpaceMismatch,
  InfinitePrimeEval,
  Integrality,
  ZeroOnLadder,
  NoLadder,
  UnknownLadder,
  NotMember,
  AllZero,
  SearchExhausted,
  Precondition,
  ResidueNotRank1,
  PreimageExhausted,
  WitnessNotFound,
  NoPaddingPoint,
  BlockOverlap,
  UncoveredInfinitePrime,
  Schema,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lfree
