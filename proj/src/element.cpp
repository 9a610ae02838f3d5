#include "lfree/element.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>
#include <sstream>

#include "lfree/error.hpp"

namespace lfree {

namespace {

constexpr std::uint64_t kThresholdCap = 100'000;

mpz_class as_integer(const mpq_class& q) {
  if (q.get_den() != 1) throw Error(ErrorKind::Integrality, "tail value " + q.get_str() + " is not an integer");
  return q.get_num();
}

std::vector<mpq_class> zeros(std::size_t n) { return std::vector<mpq_class>(n, mpq_class(0)); }

bool all_zero(const std::vector<mpq_class>& c) {
  return std::all_of(c.begin(), c.end(), [](const mpq_class& q) { return q == 0; });
}

}  // namespace

std::optional<std::size_t> dominant_index(const std::vector<mpq_class>& c) {
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] != 0) return i;
  }
  return std::nullopt;
}

int eventual_sign(const std::vector<mpq_class>& c) {
  auto d = dominant_index(c);
  return d ? sgn(c[*d]) : 0;
}

std::uint64_t sign_threshold(const Ladder& ladder, const std::vector<mpq_class>& c, std::uint64_t from) {
  auto d = dominant_index(c);
  if (!d) return from;
  bool lone = true;
  for (std::size_t i = 0; i < *d; ++i) lone = lone && c[i] == 0;
  if (lone) return from;
  const auto& w = ladder.weights();
  for (std::uint64_t k = std::max(from, ladder.crossover()); k < from + kThresholdCap; ++k) {
    mpq_class lhs = abs(c[*d]) * mpq_class(w[*d](k));
    mpq_class rhs = 0;
    for (std::size_t i = 0; i < *d; ++i) {
      if (c[i] != 0) rhs += abs(c[i]) * mpq_class(w[i](k));
    }
    if (lhs > rhs) return k;
  }
  throw Error(ErrorKind::OrdinalBound, "sign threshold search exceeded cap");
}

// ---------------------------------------------------------------------------

Element::Element(AmbientPtr ambient) : ambient_(std::move(ambient)) {
  if (!ambient_) throw Error(ErrorKind::Precondition, "element needs an ambient space");
}

Element Element::basis(AmbientPtr ambient, const Ordinal& x, const mpz_class& value) {
  Element out(std::move(ambient));
  if (!out.ambient_->space.is_finite_prime(x)) {
    throw Error(ErrorKind::NotAPoint, to_string(x) + " is not a finite prime");
  }
  if (value != 0) out.prefix_[x] = value;
  return out;
}

Element Element::tail(AmbientPtr ambient, const std::string& ladder, std::size_t weight,
                      const mpq_class& r, std::uint64_t start) {
  Element out(std::move(ambient));
  auto l = out.ambient_->ladder_index(ladder);
  if (!l) throw Error(ErrorKind::UnknownLadder, "no ladder '" + ladder + "'");
  const auto& lad = out.ambient_->ladders[*l];
  if (weight >= lad.weights().size()) throw Error(ErrorKind::Schema, "weight index out of range");
  if (r == 0) return out;
  Tail t{zeros(lad.weights().size()), start};
  t.coefficients[weight] = r;
  t.coefficients[weight].canonicalize();
  out.tails_[*l] = std::move(t);
  out.canonicalize();
  return out;
}

Element Element::from_parts(AmbientPtr ambient, std::map<Ordinal, mpz_class> prefix,
                            std::map<std::size_t, Tail> tails) {
  Element out(std::move(ambient));
  for (const auto& [x, v] : prefix) {
    if (!out.ambient_->space.is_finite_prime(x)) {
      throw Error(ErrorKind::NotAPoint, to_string(x) + " is not a finite prime");
    }
  }
  for (auto& [l, t] : tails) {
    if (l >= out.ambient_->ladders.size()) throw Error(ErrorKind::UnknownLadder, "ladder index out of range");
    if (t.coefficients.size() != out.ambient_->ladders[l].weights().size()) {
      throw Error(ErrorKind::Schema, "tail coefficient count does not match the ladder weights");
    }
    for (auto& c : t.coefficients) c.canonicalize();
  }
  out.prefix_ = std::move(prefix);
  out.tails_ = std::move(tails);
  out.canonicalize();
  return out;
}

void Element::check_same(const Element& g) const {
  if (!same_ambient(ambient_, g.ambient_)) throw Error(ErrorKind::SpaceMismatch, "elements live over different spaces");
}

mpq_class Element::tail_value(std::size_t ladder, const Tail& t, std::uint64_t k) const {
  const auto& w = ambient_->ladders[ladder].weights();
  mpq_class v = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (t.coefficients[i] != 0) v += t.coefficients[i] * mpq_class(w[i](k));
  }
  return v;
}

bool Element::tail_integral_at(std::size_t ladder, const Tail& t, std::uint64_t k) const {
  const auto& w = ambient_->ladders[ladder].weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (t.coefficients[i] != 0 && !w[i].integral_at(t.coefficients[i].get_den(), k)) return false;
  }
  return true;
}

void Element::canonicalize() {
  for (auto it = prefix_.begin(); it != prefix_.end();) {
    it = it->second == 0 ? prefix_.erase(it) : std::next(it);
  }
  for (auto it = tails_.begin(); it != tails_.end();) {
    if (all_zero(it->second.coefficients)) {
      it = tails_.erase(it);
      continue;
    }
    const std::size_t l = it->first;
    Tail& t = it->second;
    const auto& lad = ambient_->ladders[l];
    if (!tail_integral_at(l, t, t.start)) {
      std::ostringstream os;
      os << "tail on '" << lad.id() << "' is not integral from start " << t.start;
      throw Error(ErrorKind::Integrality, os.str());
    }
    while (t.start > 0) {
      const std::uint64_t k = t.start - 1;
      if (!tail_integral_at(l, t, k)) break;
      const Ordinal x = lad.point(k);
      auto p = prefix_.find(x);
      const mpq_class have = p == prefix_.end() ? mpq_class(0) : mpq_class(p->second);
      if (have != tail_value(l, t, k)) break;
      if (p != prefix_.end()) prefix_.erase(p);
      t.start = k;
    }
    ++it;
  }
  for (const auto& [x, v] : prefix_) {
    if (auto loc = ambient_->locate(x)) {
      auto t = tails_.find(loc->first);
      if (t != tails_.end() && loc->second >= t->second.start) {
        throw Error(ErrorKind::Precondition, "explicit value at " + to_string(x) + " overlaps a tail");
      }
    }
  }
}

mpz_class Element::eval(const Ordinal& x) const {
  const auto& space = ambient_->space;
  if (space.is_infinite_prime(x)) {
    throw Error(ErrorKind::InfinitePrimeEval, "functions are not defined at infinite prime " + to_string(x));
  }
  if (!space.contains(x)) throw Error(ErrorKind::NotAPoint, to_string(x) + " is outside the space");
  if (auto loc = ambient_->locate(x)) {
    auto t = tails_.find(loc->first);
    if (t != tails_.end() && loc->second >= t->second.start) {
      return as_integer(tail_value(loc->first, t->second, loc->second));
    }
  }
  auto p = prefix_.find(x);
  return p == prefix_.end() ? mpz_class(0) : p->second;
}

mpz_class Element::eval_rung(std::size_t ladder, std::uint64_t k) const {
  auto t = tails_.find(ladder);
  if (t != tails_.end() && k >= t->second.start) return as_integer(tail_value(ladder, t->second, k));
  auto p = prefix_.find(ambient_->ladders[ladder].point(k));
  return p == prefix_.end() ? mpz_class(0) : p->second;
}

Element Element::combine(const Element& g, Op op) const {
  check_same(g);
  auto apply = [op](const mpz_class& a, const mpz_class& b) -> mpz_class {
    switch (op) {
      case Op::Add: return a + b;
      case Op::Min: return a < b ? a : b;
      case Op::Max: return a < b ? b : a;
    }
    return 0;
  };

  // highest explicit rung per ladder among both operands
  std::map<std::size_t, std::uint64_t> top_rung;
  std::map<Ordinal, std::optional<std::pair<std::size_t, std::uint64_t>>> located;
  for (const auto* e : {this, &g}) {
    for (const auto& [x, v] : e->prefix_) {
      auto [it, fresh] = located.try_emplace(x);
      if (fresh) it->second = ambient_->locate(x);
      if (it->second) {
        auto& r = top_rung[it->second->first];
        r = std::max(r, it->second->second + 1);
      }
    }
  }

  Element out(ambient_);
  std::map<std::size_t, std::uint64_t> window_low;
  std::set<std::size_t> ladders;
  for (const auto& [l, t] : tails_) ladders.insert(l);
  for (const auto& [l, t] : g.tails_) ladders.insert(l);
  for (std::size_t l : ladders) {
    const auto& lad = ambient_->ladders[l];
    const std::size_t n = lad.weights().size();
    auto tf = tails_.find(l);
    auto tg = g.tails_.find(l);
    const bool hf = tf != tails_.end();
    const bool hg = tg != g.tails_.end();
    const auto cf = hf ? tf->second.coefficients : zeros(n);
    const auto cg = hg ? tg->second.coefficients : zeros(n);
    std::uint64_t start = 0;
    std::uint64_t low = std::numeric_limits<std::uint64_t>::max();
    if (hf) start = std::max(start, tf->second.start), low = std::min(low, tf->second.start);
    if (hg) start = std::max(start, tg->second.start), low = std::min(low, tg->second.start);
    if (auto r = top_rung.find(l); r != top_rung.end()) start = std::max(start, r->second);
    std::vector<mpq_class> coeffs(n);
    if (op == Op::Add) {
      for (std::size_t i = 0; i < n; ++i) coeffs[i] = cf[i] + cg[i];
    } else {
      std::vector<mpq_class> diff(n);
      for (std::size_t i = 0; i < n; ++i) diff[i] = cf[i] - cg[i];
      const int s = eventual_sign(diff);
      if (s != 0) start = std::max(start, sign_threshold(lad, diff, 0));
      const bool f_larger = s > 0;
      coeffs = (op == Op::Min) == f_larger ? cg : cf;
    }
    out.tails_[l] = Tail{std::move(coeffs), start};
    window_low[l] = low;
  }

  for (const auto& [x, loc] : located) {
    mpz_class v = apply(eval(x), g.eval(x));
    if (v != 0) out.prefix_[x] = v;
  }
  for (const auto& [l, low] : window_low) {
    const auto& lad = ambient_->ladders[l];
    for (std::uint64_t k = low; k < out.tails_[l].start; ++k) {
      mpz_class v = apply(eval_rung(l, k), g.eval_rung(l, k));
      if (v != 0) out.prefix_[lad.point(k)] = v;
      else out.prefix_.erase(lad.point(k));
    }
  }
  out.canonicalize();
  return out;
}

Element Element::operator+(const Element& g) const { return combine(g, Op::Add); }
Element Element::operator-(const Element& g) const { return combine(-g, Op::Add); }
Element Element::meet(const Element& g) const { return combine(g, Op::Min); }
Element Element::join(const Element& g) const { return combine(g, Op::Max); }
Element Element::positive_part() const { return join(zero(ambient_)); }
Element Element::negative_part() const { return meet(zero(ambient_)); }

Element Element::operator-() const { return scaled(-1); }

Element Element::scaled(const mpz_class& n) const {
  Element out(ambient_);
  if (n == 0) return out;
  for (const auto& [x, v] : prefix_) out.prefix_[x] = v * n;
  for (const auto& [l, t] : tails_) {
    Tail s = t;
    for (auto& c : s.coefficients) c *= n;
    out.tails_[l] = std::move(s);
  }
  out.canonicalize();
  return out;
}

Element Element::divided(const mpz_class& n) const {
  if (n == 0) throw Error(ErrorKind::Precondition, "division by zero");
  Element out(ambient_);
  auto not_divisible = [&] {
    return Error(ErrorKind::Precondition, to_string(*this) + " is not divisible by " + n.get_str());
  };
  for (const auto& [x, v] : prefix_) {
    if (mpz_divisible_p(v.get_mpz_t(), n.get_mpz_t()) == 0) throw not_divisible();
    out.prefix_[x] = v / n;
  }
  for (const auto& [l, t] : tails_) {
    Tail s = t;
    for (auto& c : s.coefficients) c /= n;
    // per-weight integrality may start later than the divided values do
    std::uint64_t start = t.start;
    while (!out.tail_integral_at(l, s, start)) {
      if (++start > t.start + kThresholdCap) throw not_divisible();
    }
    for (std::uint64_t k = t.start; k < start; ++k) {
      mpz_class v = eval_rung(l, k);
      if (mpz_divisible_p(v.get_mpz_t(), n.get_mpz_t()) == 0) throw not_divisible();
      if (v != 0) out.prefix_[ambient_->ladders[l].point(k)] = v / n;
    }
    s.start = start;
    out.tails_[l] = std::move(s);
  }
  out.canonicalize();
  if (!(out.scaled(n) == *this)) throw not_divisible();
  return out;
}

bool Element::is_positive() const {
  for (const auto& [x, v] : prefix_) {
    if (v < 0) return false;
  }
  for (const auto& [l, t] : tails_) {
    if (eventual_sign(t.coefficients) < 0) return false;
    const std::uint64_t end = sign_threshold(ambient_->ladders[l], t.coefficients, t.start);
    for (std::uint64_t k = t.start; k < end; ++k) {
      if (tail_value(l, t, k) < 0) return false;
    }
  }
  return true;
}

std::optional<Ordinal> Element::first_negative_point() const {
  std::optional<Ordinal> best;
  auto consider = [&best](const Ordinal& x) {
    if (!best || x < *best) best = x;
  };
  for (const auto& [x, v] : prefix_) {
    if (v < 0) {
      consider(x);
      break;
    }
  }
  for (const auto& [l, t] : tails_) {
    const auto& lad = ambient_->ladders[l];
    const std::uint64_t end = sign_threshold(lad, t.coefficients, t.start);
    const bool negative_eventually = eventual_sign(t.coefficients) < 0;
    for (std::uint64_t k = t.start; k <= end; ++k) {
      if (k == end && !negative_eventually) break;
      if (tail_value(l, t, k) < 0) {
        consider(lad.point(k));
        break;
      }
    }
  }
  return best;
}

Support Element::support() const {
  Support s;
  for (const auto& [x, v] : prefix_) s.points.insert(x);
  for (const auto& [l, t] : tails_) s.ladders.insert(ambient_->ladders[l].id());
  return s;
}

std::uint64_t Element::mu(const std::string& ladder) const {
  auto l = ambient_->ladder_index(ladder);
  if (!l) throw Error(ErrorKind::UnknownLadder, "no ladder '" + ladder + "'");
  return mu(*l);
}

std::uint64_t Element::mu(std::size_t l) const {
  const auto& lad = ambient_->ladders[l];
  std::uint64_t end = 0;
  bool any = false;
  for (const auto& [x, v] : prefix_) {
    if (auto k = lad.index_of(x)) {
      end = std::max(end, *k + 1);
      any = true;
    }
  }
  if (auto t = tails_.find(l); t != tails_.end()) {
    end = std::max(end, sign_threshold(lad, t->second.coefficients, t->second.start) + 1);
    any = true;
  }
  if (any) {
    for (std::uint64_t k = 0; k < end; ++k) {
      if (eval_rung(l, k) != 0) return k;
    }
  }
  throw Error(ErrorKind::ZeroOnLadder, to_string(*this) + " vanishes on ladder '" + lad.id() + "'");
}

std::vector<mpq_class> Element::residue_on(std::size_t l) const {
  auto t = tails_.find(l);
  if (t == tails_.end()) return zeros(ambient_->ladders[l].weights().size());
  return t->second.coefficients;
}

std::vector<mpq_class> Element::residue_at(const Ordinal& infinite_prime) const {
  auto l = ambient_->ladder_for_target(infinite_prime);
  if (!l) throw Error(ErrorKind::NoLadder, "no ladder converges to " + to_string(infinite_prime));
  return residue_on(*l);
}

Ordinal Element::cb() const {
  const auto& space = ambient_->space;
  Ordinal out;
  for (const auto& [x, v] : prefix_) out = std::max(out, space.cb_rank(x));
  for (const auto& [l, t] : tails_) out = std::max(out, space.cb_rank(ambient_->ladders[l].target()));
  return out;
}

bool Element::operator==(const Element& g) const {
  return same_ambient(ambient_, g.ambient_) && prefix_ == g.prefix_ && tails_ == g.tails_;
}

Element linear_combination(const AmbientPtr& ambient, const std::vector<mpz_class>& coefficients,
                           const std::vector<Element>& elements) {
  if (coefficients.size() != elements.size()) {
    throw Error(ErrorKind::Precondition, "coefficient count does not match element count");
  }
  Element out(ambient);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (coefficients[i] != 0) out = out + elements[i].scaled(coefficients[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

bool is_semibasic(const Element& q, const Ordinal& x) {
  const auto& amb = *q.ambient();
  const auto& space = amb.space;
  if (!space.is_finite_prime(x)) return false;
  if (q.eval(x) != 1 || !q.is_positive()) return false;
  const Ordinal gamma = space.cb_rank(x);
  for (const auto& [y, v] : q.prefix()) {
    if (y != x && space.in_derived_set(y, gamma)) return false;
  }
  for (const auto& [l, t] : q.tails()) {
    const auto& lad = amb.ladders[l];
    if (lad.cofinally_of_rank_at_least(gamma)) return false;
    // only the rung at fundamental index 0 can break the pattern
    if (lad.offset() == 0 && t.start == 0) {
      const Ordinal p = lad.point(0);
      if (p != x && q.eval_rung(l, 0) != 0 && space.in_derived_set(p, gamma)) return false;
    }
  }
  return true;
}

bool same_support(const Element& f, const Element& g) {
  if (!same_ambient(f.ambient(), g.ambient())) throw Error(ErrorKind::SpaceMismatch, "support comparison");
  const auto& amb = *f.ambient();
  std::set<Ordinal> points;
  for (const auto& [x, v] : f.prefix()) points.insert(x);
  for (const auto& [x, v] : g.prefix()) points.insert(x);
  for (const auto& x : points) {
    if ((f.eval(x) != 0) != (g.eval(x) != 0)) return false;
  }
  std::set<std::size_t> lf, lg;
  for (const auto& [l, t] : f.tails()) lf.insert(l);
  for (const auto& [l, t] : g.tails()) lg.insert(l);
  if (lf != lg) return false;
  for (std::size_t l : lf) {
    const auto& lad = amb.ladders[l];
    const Tail& tf = f.tails().at(l);
    const Tail& tg = g.tails().at(l);
    const std::uint64_t lo = std::min(tf.start, tg.start);
    const std::uint64_t hi = std::max(sign_threshold(lad, tf.coefficients, tf.start),
                                      sign_threshold(lad, tg.coefficients, tg.start));
    for (std::uint64_t k = lo; k < hi; ++k) {
      if ((f.eval_rung(l, k) != 0) != (g.eval_rung(l, k) != 0)) return false;
    }
  }
  return true;
}

std::optional<mpz_class> bounded_ratio_witness(const Element& f, const Element& g) {
  if (!f.is_positive() || !g.is_positive()) {
    throw Error(ErrorKind::Precondition, "bounded ratio needs positive elements");
  }
  if (!same_support(f, g)) return std::nullopt;
  for (const auto& [l, t] : g.tails()) {
    if (*dominant_index(t.coefficients) > *dominant_index(f.tails().at(l).coefficients)) return std::nullopt;
  }
  mpz_class n = 1;
  for (int guard = 0; guard < 1'000'000; ++guard) {
    auto neg = (f.scaled(n) - g).first_negative_point();
    if (!neg) return n;
    const mpz_class fx = f.eval(*neg);
    const mpz_class gx = g.eval(*neg);
    mpz_class need;
    mpz_cdiv_q(need.get_mpz_t(), gx.get_mpz_t(), fx.get_mpz_t());
    n = std::max(mpz_class(n + 1), need);
  }
  throw Error(ErrorKind::SearchExhausted, "bounded ratio search did not settle");
}

// ---------------------------------------------------------------------------
// literal syntax

namespace {

class ElementParser {
 public:
  ElementParser(std::string_view s, const AmbientPtr& amb) : s_(s), amb_(amb) {}

  Element parse_all() {
    Element out = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, msg + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
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

  bool eat_word(std::string_view w) {
    skip();
    if (s_.substr(pos_, w.size()) == w) {
      std::size_t after = pos_ + w.size();
      if (after < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[after])) || s_[after] == '_')) return false;
      pos_ = after;
      return true;
    }
    return false;
  }

  std::optional<mpz_class> integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) return std::nullopt;
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  std::string identifier() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (pos_ == start) fail("expected identifier");
    return std::string(s_.substr(start, pos_ - start));
  }

  mpq_class rational() {
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    auto num = integer();
    if (!num) fail("expected rational");
    mpz_class den = 1;
    if (eat('/')) {
      auto d = integer();
      if (!d || *d == 0) fail("expected nonzero denominator");
      den = *d;
    }
    mpq_class q(neg ? mpz_class(-*num) : *num, den);
    q.canonicalize();
    return q;
  }

  Element expr() {
    skip();
    bool negate = false;
    if (eat('-')) negate = true;
    else eat('+');
    Element acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else break;
    }
    return acc;
  }

  Element term() {
    if (auto n = integer()) {
      if (eat('*')) return factor().scaled(*n);
      if (*n == 0) return Element::zero(amb_);
      fail("bare nonzero integer is not an element");
    }
    return factor();
  }

  Element factor() {
    if (eat('(')) {
      Element inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (eat_word("e")) {
      if (!eat('(')) fail("expected '(' after e");
      std::size_t start = pos_;
      int depth = 1;
      while (pos_ < s_.size() && depth > 0) {
        if (s_[pos_] == '(') ++depth;
        if (s_[pos_] == ')') --depth;
        if (depth > 0) ++pos_;
      }
      if (depth != 0) fail("unbalanced parentheses");
      Ordinal x = parse_ordinal(s_.substr(start, pos_ - start));
      ++pos_;
      return Element::basis(amb_, x);
    }
    if (eat_word("tail")) {
      if (!eat('(')) fail("expected '(' after tail");
      std::optional<std::string> ladder, label;
      std::optional<mpq_class> r;
      std::optional<std::uint64_t> start;
      do {
        std::string key = identifier();
        if (!eat('=')) fail("expected '='");
        if (key == "ladder") ladder = identifier();
        else if (key == "label") label = identifier();
        else if (key == "r") r = rational();
        else if (key == "start") {
          auto v = integer();
          if (!v || !v->fits_ulong_p()) fail("expected start index");
          start = v->get_ui();
        } else {
          fail("unknown tail key '" + key + "'");
        }
      } while (eat(','));
      if (!eat(')')) fail("expected ')'");
      if (!r || !start) fail("tail needs r= and start=");
      std::size_t li = 0;
      if (ladder) {
        auto l = amb_->ladder_index(*ladder);
        if (!l) throw Error(ErrorKind::UnknownLadder, "no ladder '" + *ladder + "'");
        li = *l;
      } else if (amb_->ladders.size() != 1) {
        fail("tail needs ladder= when the space has several ladders");
      }
      const auto& lad = amb_->ladders.at(li);
      std::size_t wi = 0;
      if (label) {
        auto w = lad.weight_index(*label);
        if (!w) fail("ladder '" + lad.id() + "' has no label '" + *label + "'");
        wi = *w;
      } else if (lad.weights().size() != 1) {
        fail("tail needs label= on a multi-weight ladder");
      }
      return Element::tail(amb_, lad.id(), wi, *r, *start);
    }
    fail("expected element term");
  }

  std::string_view s_;
  const AmbientPtr& amb_;
  std::size_t pos_ = 0;
};

}  // namespace

Element parse_element(std::string_view text, const AmbientPtr& ambient) {
  return ElementParser(text, ambient).parse_all();
}

std::string to_string(const Element& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [x, v] : f.prefix()) {
    const bool neg = v < 0;
    const mpz_class mag = abs(v);
    if (first) os << (neg ? "-" : "");
    else os << (neg ? " - " : " + ");
    first = false;
    if (mag != 1) os << mag.get_str() << '*';
    os << "e(" << to_string(x) << ')';
  }
  const auto& amb = *f.ambient();
  for (const auto& [l, t] : f.tails()) {
    const auto& lad = amb.ladders[l];
    for (std::size_t i = 0; i < t.coefficients.size(); ++i) {
      if (t.coefficients[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << "tail(ladder=" << lad.id();
      if (lad.weights().size() > 1) os << ", label=" << lad.weights()[i].label();
      os << ", r=" << t.coefficients[i].get_str() << ", start=" << t.start << ')';
    }
  }
  return os.str();
}

}  // namespace lfree

namespace lfree {

Element restrict_to_blocks(const Element& f, const std::vector<ClopenBlock>& blocks, bool inside) {
  const auto& amb = *f.ambient();
  auto in_union = [&](const Ordinal& x) {
    return std::any_of(blocks.begin(), blocks.end(), [&](const ClopenBlock& b) { return b.contains(x); });
  };
  auto keep = [&](const Ordinal& x) { return in_union(x) == inside; };

  std::map<Ordinal, mpz_class> prefix;
  for (const auto& [x, v] : f.prefix()) {
    if (keep(x)) prefix[x] = v;
  }
  std::map<std::size_t, Tail> tails;
  for (const auto& [l, t] : f.tails()) {
    const auto& lad = amb.ladders[l];
    const Ordinal& tau = lad.target();
    // every rung above `fence` behaves like the target
    Ordinal fence;
    const ClopenBlock* home = nullptr;
    for (const auto& b : blocks) {
      if (b.contains(tau)) home = &b;
    }
    if (home) {
      fence = home->low;
    } else {
      for (const auto& b : blocks) {
        if (b.high < tau) fence = std::max(fence, b.high);
      }
    }
    const bool tail_kept = keep(tau);
    std::uint64_t k = t.start;
    for (; k < t.start + kThresholdCap; ++k) {
      const Ordinal p = lad.point(k);
      if (p > fence) break;
      if (keep(p)) {
        mpz_class v = f.eval_rung(l, k);
        if (v != 0) prefix[p] = v;
      }
    }
    if (!tail_kept) continue;
    // the kept tail may need a later start for integrality
    Tail kept = t;
    kept.start = k;
    for (;; ++kept.start) {
      bool ok = true;
      for (std::size_t i = 0; i < t.coefficients.size(); ++i) {
        if (t.coefficients[i] != 0 && !lad.weights()[i].integral_at(t.coefficients[i].get_den(), kept.start)) ok = false;
      }
      if (ok) break;
      mpz_class v = f.eval_rung(l, kept.start);
      if (v != 0) prefix[lad.point(kept.start)] = v;
    }
    tails[l] = std::move(kept);
  }
  return Element::from_parts(f.ambient(), std::move(prefix), std::move(tails));
}

std::vector<Ordinal> probe_points(const std::vector<Element>& family) {
  std::set<Ordinal> out;
  for (const auto& f : family) {
    for (const auto& [x, v] : f.prefix()) out.insert(x);
    for (const auto& [l, t] : f.tails()) {
      const auto& lad = f.ambient()->ladders[l];
      for (std::uint64_t k = t.start; k < t.start + 3; ++k) out.insert(lad.point(k));
      out.insert(lad.point(std::max(t.start, lad.crossover()) + 1));
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace lfree
