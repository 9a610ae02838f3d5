#include "lfree/ladder.hpp"

#include <algorithm>
#include <set>

#include "lfree/error.hpp"

namespace lfree {

namespace {

constexpr std::uint64_t kScanCap = 100'000;

mpz_class factorial(std::uint64_t k) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), k);
  return out;
}

mpz_class power(unsigned base, std::uint64_t k) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, k);
  return out;
}

int family_rank(Weight::Kind k) {
  switch (k) {
    case Weight::Kind::One: return 0;
    case Weight::Kind::Pow: return 1;
    case Weight::Kind::Factorial: return 2;
    case Weight::Kind::FactorialPoly: return 3;
  }
  return 0;
}

}  // namespace

Weight::Weight(std::string label, Kind kind, unsigned parameter)
    : label_(std::move(label)), kind_(kind), parameter_(parameter) {
  if (kind_ == Kind::Pow && parameter_ < 2) throw Error(ErrorKind::Schema, "pow weight needs base >= 2");
  if (kind_ == Kind::FactorialPoly && parameter_ < 1) {
    throw Error(ErrorKind::Schema, "factorial_poly weight needs degree >= 1");
  }
  if (kind_ == Kind::One || kind_ == Kind::Factorial) parameter_ = 0;
}

Weight Weight::parse(std::string label, const std::string& tag) {
  auto colon = tag.find(':');
  std::string head = tag.substr(0, colon);
  unsigned param = 0;
  if (colon != std::string::npos) {
    try {
      param = static_cast<unsigned>(std::stoul(tag.substr(colon + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Schema, "bad weight parameter in '" + tag + "'");
    }
  }
  if (head == "one") return Weight(std::move(label), Kind::One);
  if (head == "pow") return Weight(std::move(label), Kind::Pow, param);
  if (head == "factorial") return Weight(std::move(label), Kind::Factorial);
  if (head == "factorial_poly") return Weight(std::move(label), Kind::FactorialPoly, param);
  throw Error(ErrorKind::Schema, "unknown weight family '" + tag + "'");
}

std::string Weight::tag() const {
  switch (kind_) {
    case Kind::One: return "one";
    case Kind::Pow: return "pow:" + std::to_string(parameter_);
    case Kind::Factorial: return "factorial";
    case Kind::FactorialPoly: return "factorial_poly:" + std::to_string(parameter_);
  }
  return "?";
}

mpz_class Weight::operator()(std::uint64_t k) const {
  switch (kind_) {
    case Kind::One: return 1;
    case Kind::Pow: return power(parameter_, k);
    case Kind::Factorial: return factorial(k);
    case Kind::FactorialPoly: {
      mpz_class lead;
      mpz_ui_pow_ui(lead.get_mpz_t(), k + 1, parameter_);
      return lead * factorial(k);
    }
  }
  return 0;
}

bool Weight::integral_at(const mpz_class& denominator, std::uint64_t k) const {
  if (denominator == 1) return true;
  switch (kind_) {
    case Kind::One: return false;
    case Kind::Pow: return mpz_divisible_p(power(parameter_, k).get_mpz_t(), denominator.get_mpz_t()) != 0;
    case Kind::Factorial:
    case Kind::FactorialPoly:
      return mpz_divisible_p(factorial(k).get_mpz_t(), denominator.get_mpz_t()) != 0;
  }
  return false;
}

std::optional<std::uint64_t> Weight::integral_from(const mpz_class& denominator) const {
  if (denominator == 1) return 0;
  if (kind_ == Kind::One) return std::nullopt;
  if (kind_ == Kind::Pow) {
    // every prime of the denominator must divide the base
    mpz_class rest = denominator;
    mpz_class g;
    const mpz_class base = parameter_;
    while (rest != 1) {
      mpz_gcd(g.get_mpz_t(), rest.get_mpz_t(), base.get_mpz_t());
      if (g == 1) return std::nullopt;
      rest /= g;
    }
  }
  for (std::uint64_t k = 0; k < kScanCap; ++k) {
    if (integral_at(denominator, k)) return k;
  }
  return std::nullopt;
}

bool Weight::dominated_by(const Weight& other) const {
  int a = family_rank(kind_);
  int b = family_rank(other.kind_);
  if (a != b) return a < b;
  return parameter_ < other.parameter_;
}

std::uint64_t Weight::crossover(const Weight& higher) const {
  // b^k / k! and b^k / ((k+1)^j k!) are nonincreasing once k + 1 >= b; every
  // other pair has a nonincreasing ratio from k = 0.
  if (kind_ == Kind::Pow &&
      (higher.kind_ == Kind::Factorial || higher.kind_ == Kind::FactorialPoly)) {
    return parameter_ - 1;
  }
  return 0;
}

Ladder::Ladder(std::string id, Ordinal target, std::uint64_t offset, std::uint64_t shift,
               std::vector<Weight> weights)
    : id_(std::move(id)), target_(std::move(target)), offset_(offset), shift_(shift),
      weights_(std::move(weights)) {
  if (!is_limit(target_)) throw Error(ErrorKind::Precondition, "ladder target must be a limit ordinal");
  if (weights_.empty()) weights_.emplace_back("b0", Weight::Kind::Factorial);
  std::set<std::string> labels;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!labels.insert(weights_[i].label()).second) {
      throw Error(ErrorKind::Schema, "duplicate weight label '" + weights_[i].label() + "'");
    }
    if (i > 0 && !weights_[i - 1].dominated_by(weights_[i])) {
      throw Error(ErrorKind::Schema, "ladder '" + id_ + "' weights must increase in domination order");
    }
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    for (std::size_t j = i + 1; j < weights_.size(); ++j) {
      crossover_ = std::max(crossover_, weights_[i].crossover(weights_[j]));
    }
  }
}

std::optional<std::size_t> Ladder::weight_index(const std::string& label) const {
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i].label() == label) return i;
  }
  return std::nullopt;
}

Ordinal Ladder::point(std::uint64_t k) const {
  return add(fundamental(target_, k + offset_), Ordinal(shift_));
}

std::optional<std::uint64_t> Ladder::index_of(const Ordinal& x) const {
  if (x >= target_ || x < point(0)) return std::nullopt;
  const auto d = classify(last_exponent(target_));
  if (d.kind == OrdinalKind::Successor) {
    // rungs are tau + w^eps * m + shift; read m off the eps-term of x
    const Ordinal& eps = d.predecessor;
    std::uint64_t m = 0;
    for (const auto& t : x.terms()) {
      if (t.exponent == eps) m = t.coefficient;
    }
    if (eps.is_zero()) {
      if (m < shift_) return std::nullopt;
      m -= shift_;
    }
    if (m < offset_) return std::nullopt;
    if (point(m - offset_) == x) return m - offset_;
    return std::nullopt;
  }
  for (std::uint64_t k = 0; k < kScanCap; ++k) {
    Ordinal p = point(k);
    if (p == x) return k;
    if (p > x) return std::nullopt;
  }
  throw Error(ErrorKind::OrdinalBound, "ladder index search exceeded cap");
}

bool Ladder::cofinally_of_rank_at_least(const Ordinal& gamma) const {
  if (gamma.is_zero()) return true;
  if (shift_ > 0) return false;
  const Ordinal d = last_exponent(target_);
  const auto c = classify(d);
  if (c.kind == OrdinalKind::Successor) return c.predecessor >= gamma;
  return gamma < d;
}

std::optional<std::size_t> Ambient::ladder_index(const std::string& id) const {
  for (std::size_t i = 0; i < ladders.size(); ++i) {
    if (ladders[i].id() == id) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Ambient::ladder_for_target(const Ordinal& prime) const {
  for (std::size_t i = 0; i < ladders.size(); ++i) {
    if (ladders[i].target() == prime) return i;
  }
  return std::nullopt;
}

std::optional<std::pair<std::size_t, std::uint64_t>> Ambient::locate(const Ordinal& x) const {
  for (std::size_t i = 0; i < ladders.size(); ++i) {
    if (auto k = ladders[i].index_of(x)) return std::make_pair(i, *k);
  }
  return std::nullopt;
}

AmbientPtr make_ambient(ScatteredSpace space, std::vector<Ladder> ladders) {
  std::set<std::string> ids;
  std::set<Ordinal> targets;
  for (const auto& l : ladders) {
    if (!ids.insert(l.id()).second) throw Error(ErrorKind::Schema, "duplicate ladder id '" + l.id() + "'");
    if (!space.is_infinite_prime(l.target())) {
      throw Error(ErrorKind::Precondition,
                  "ladder '" + l.id() + "' targets " + to_string(l.target()) + ", not an infinite prime");
    }
    if (!targets.insert(l.target()).second) {
      throw Error(ErrorKind::Precondition, "two ladders converge to " + to_string(l.target()));
    }
    for (const auto& p : space.infinite_primes()) {
      if (l.index_of(p)) {
        throw Error(ErrorKind::Precondition,
                    "ladder '" + l.id() + "' passes through infinite prime " + to_string(p));
      }
    }
  }
  for (const auto& lo : ladders) {
    for (const auto& hi : ladders) {
      if (!(lo.target() < hi.target())) continue;
      for (std::uint64_t k = 0; k < kScanCap; ++k) {
        Ordinal p = hi.point(k);
        if (p >= lo.target()) break;
        if (lo.index_of(p)) {
          throw Error(ErrorKind::Precondition,
                      "ladders '" + lo.id() + "' and '" + hi.id() + "' share rung " + to_string(p));
        }
      }
    }
  }
  return std::make_shared<const Ambient>(Ambient{std::move(space), std::move(ladders)});
}

bool same_ambient(const AmbientPtr& a, const AmbientPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace lfree
