#include "lfree/ordinal.hpp"

#include <cctype>
#include <sstream>

#include "lfree/error.hpp"

namespace lfree {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::OrdinalBound: return "ordinal bound exceeded";
    case ErrorKind::ZeroOrdinal: return "zero ordinal";
    case ErrorKind::NotAPoint: return "not a point of the space";
    case ErrorKind::InfiniteSlice: return "infinite slice";
    case ErrorKind::SpaceMismatch: return "space mismatch";
    case ErrorKind::InfinitePrimeEval: return "evaluation at infinite prime";
    case ErrorKind::Integrality: return "non-integral tail";
    case ErrorKind::ZeroOnLadder: return "zero on ladder";
    case ErrorKind::NoLadder: return "no ladder";
    case ErrorKind::UnknownLadder: return "unknown ladder";
    case ErrorKind::NotMember: return "not a member";
    case ErrorKind::AllZero: return "all generators vanish";
    case ErrorKind::SearchExhausted: return "search exhausted";
    case ErrorKind::Precondition: return "precondition violated";
    case ErrorKind::ResidueNotRank1: return "residue group not rank 1";
    case ErrorKind::PreimageExhausted: return "preimage search exhausted";
    case ErrorKind::WitnessNotFound: return "witness not found";
    case ErrorKind::NoPaddingPoint: return "no padding point";
    case ErrorKind::BlockOverlap: return "block overlap";
    case ErrorKind::UncoveredInfinitePrime: return "uncovered infinite prime";
    case ErrorKind::Schema: return "schema error";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

namespace {

void check_coefficient(std::uint64_t c) {
  if (c >= Ordinal::kMaxCoefficient) {
    throw Error(ErrorKind::OrdinalBound, "coefficient " + std::to_string(c) + " exceeds 2^31");
  }
}

std::uint64_t checked_sum(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  check_coefficient(s);
  return s;
}

}  // namespace

Ordinal::Ordinal(std::uint64_t n) {
  if (n != 0) {
    check_coefficient(n);
    terms_.push_back(OrdinalTerm{Ordinal(), n});
  }
}

Ordinal Ordinal::power(const Ordinal& exponent, std::uint64_t coefficient) {
  if (coefficient == 0) return Ordinal();
  check_coefficient(coefficient);
  if (exponent.depth() + 1 > kMaxDepth) {
    throw Error(ErrorKind::OrdinalBound, "nesting depth exceeds " + std::to_string(kMaxDepth));
  }
  Ordinal out;
  out.terms_.push_back(OrdinalTerm{exponent, coefficient});
  return out;
}

Ordinal Ordinal::from_terms(std::vector<OrdinalTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) throw Error(ErrorKind::Parse, "zero coefficient in CNF");
    check_coefficient(terms[i].coefficient);
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent)) {
      throw Error(ErrorKind::Parse, "CNF exponents must strictly decrease");
    }
  }
  Ordinal out;
  out.terms_ = std::move(terms);
  if (out.depth() > kMaxDepth) {
    throw Error(ErrorKind::OrdinalBound, "nesting depth exceeds " + std::to_string(kMaxDepth));
  }
  return out;
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

std::optional<std::uint64_t> Ordinal::as_natural() const {
  if (terms_.empty()) return 0;
  if (is_finite()) return terms_[0].coefficient;
  return std::nullopt;
}

int Ordinal::depth() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, 1 + t.exponent.depth());
  return d;
}

std::strong_ordering Ordinal::operator<=>(const Ordinal& other) const {
  const std::size_t n = std::min(terms_.size(), other.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = terms_[i];
    const auto& b = other.terms_[i];
    if (auto c = a.exponent <=> b.exponent; c != 0) return c;
    if (auto c = a.coefficient <=> b.coefficient; c != 0) return c;
  }
  return terms_.size() <=> other.terms_.size();
}

bool Ordinal::operator==(const Ordinal& other) const { return terms_ == other.terms_; }

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const Ordinal& lead = b.terms().front().exponent;
  std::vector<OrdinalTerm> out;
  for (const auto& t : a.terms()) {
    if (t.exponent > lead) {
      out.push_back(t);
    } else if (t.exponent == lead) {
      out.push_back(OrdinalTerm{lead, checked_sum(t.coefficient, b.terms().front().coefficient)});
      break;
    } else {
      break;
    }
  }
  const bool merged = !out.empty() && out.back().exponent == lead;
  for (std::size_t i = merged ? 1 : 0; i < b.terms().size(); ++i) out.push_back(b.terms()[i]);
  return Ordinal::from_terms(std::move(out));
}

Classification classify(const Ordinal& a) {
  if (a.is_zero()) return {OrdinalKind::Zero, Ordinal()};
  if (a.terms().back().exponent.is_zero()) return {OrdinalKind::Successor, drop_last_unit(a)};
  return {OrdinalKind::Limit, Ordinal()};
}

bool is_limit(const Ordinal& a) { return classify(a).kind == OrdinalKind::Limit; }
bool is_successor(const Ordinal& a) { return classify(a).kind == OrdinalKind::Successor; }

Ordinal last_exponent(const Ordinal& a) {
  if (a.is_zero()) throw Error(ErrorKind::ZeroOrdinal, "last exponent of 0 is undefined");
  return a.terms().back().exponent;
}

Ordinal drop_last_unit(const Ordinal& a) {
  if (a.is_zero()) throw Error(ErrorKind::ZeroOrdinal, "cannot drop a unit from 0");
  auto terms = a.terms();
  if (--terms.back().coefficient == 0) terms.pop_back();
  return Ordinal::from_terms(std::move(terms));
}

Ordinal truncate_below(const Ordinal& a, const Ordinal& e) {
  std::vector<OrdinalTerm> out;
  for (const auto& t : a.terms()) {
    if (t.exponent < e) break;
    out.push_back(t);
  }
  return Ordinal::from_terms(std::move(out));
}

Ordinal fundamental(const Ordinal& limit, std::uint64_t k) {
  if (!is_limit(limit)) throw Error(ErrorKind::Precondition, to_string(limit) + " is not a limit");
  // limit = tau + w^d
  const Ordinal tau = drop_last_unit(limit);
  const Ordinal d = last_exponent(limit);
  auto c = classify(d);
  if (c.kind == OrdinalKind::Successor) return add(tau, Ordinal::power(c.predecessor, k));
  return add(tau, Ordinal::power(fundamental(d, k)));
}

// ---------------------------------------------------------------------------
// text syntax:  w^2*3 + w + 4,  w^(w+1),  w^w,  (w+1)*2

namespace {

Ordinal times_natural(const Ordinal& a, std::uint64_t n) {
  if (n == 0 || a.is_zero()) return Ordinal();
  auto terms = a.terms();
  const std::uint64_t lead = terms.front().coefficient;
  if (lead > (Ordinal::kMaxCoefficient - 1) / n) {
    throw Error(ErrorKind::OrdinalBound, "coefficient overflow in multiplication");
  }
  terms.front().coefficient = lead * n;
  return Ordinal::from_terms(std::move(terms));
}

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view s) : s_(s) {}

  Ordinal parse_all() {
    Ordinal out = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, msg + " at position " + std::to_string(pos_) + " in '" +
                                      std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eat_omega() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == 'w') {
      ++pos_;
      return true;
    }
    if (s_.substr(pos_, 2) == "\xCF\x89") {  // UTF-8 omega
      pos_ += 2;
      return true;
    }
    return false;
  }

  std::optional<std::uint64_t> natural() {
    skip();
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
      if (v >= Ordinal::kMaxCoefficient) {
        throw Error(ErrorKind::OrdinalBound, "coefficient exceeds 2^31 in '" + std::string(s_) + "'");
      }
      ++pos_;
    }
    if (pos_ == start) return std::nullopt;
    return v;
  }

  Ordinal sum() {
    Ordinal acc = product();
    while (eat('+')) acc = add(acc, product());
    return acc;
  }

  Ordinal product() {
    Ordinal acc = primary();
    while (eat('*')) {
      auto n = natural();
      if (!n) fail("expected natural multiplier");
      acc = times_natural(acc, *n);
    }
    return acc;
  }

  Ordinal primary() {
    if (auto n = natural()) return Ordinal(*n);
    if (eat_omega()) {
      if (eat('^')) return Ordinal::power(exponent());
      return Ordinal::omega();
    }
    if (eat('(')) {
      Ordinal inner = sum();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    fail("expected ordinal");
  }

  Ordinal exponent() {
    if (auto n = natural()) return Ordinal(*n);
    if (eat_omega()) {
      if (eat('^')) return Ordinal::power(exponent());
      return Ordinal::omega();
    }
    if (eat('(')) {
      Ordinal inner = sum();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    fail("expected exponent");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return OrdinalParser(text).parse_all(); }

std::string to_string(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : a.terms()) {
    if (!first) os << " + ";
    first = false;
    if (t.exponent.is_zero()) {
      os << t.coefficient;
      continue;
    }
    os << 'w';
    if (t.exponent != Ordinal(1)) {
      os << '^';
      if (t.exponent.is_finite() || t.exponent == Ordinal::omega()) {
        os << to_string(t.exponent);
      } else {
        os << '(' << to_string(t.exponent) << ')';
      }
    }
    if (t.coefficient != 1) os << '*' << t.coefficient;
  }
  return os.str();
}

}  // namespace lfree
