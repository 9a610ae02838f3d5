// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "lfree/error.hpp"
#include "lfree/freeness.hpp"
#include "lfree/hermite.hpp"
#include "support.hpp"

using namespace lfree;

namespace {

Ordinal O(const char* s) { return parse_ordinal(s); }

mpz_class factorial(std::uint64_t n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

// A criterion returns an empty string on success, otherwise the first problem.
using Criterion = std::function<std::string()>;

std::string c1_example() {
  const GroupPresentation g = limitq_presentation(9);
  const char* rows[] = {"a_0: 1 1 2 6 24", "a_1: 0 1 2 6 24", "a_2: 0 0 1 3 12", "a_3: 0 0 0 1 4"};
  for (std::size_t n = 0; n < 4; ++n) {
    std::ostringstream line;
    line << "a_" << n << ":";
    for (std::uint64_t k = 0; k < 5; ++k) line << ' ' << g.generators[n].eval(Ordinal(k)).get_str();
    if (line.str() != rows[n]) return "row " + std::to_string(n) + " printed as \"" + line.str() + "\"";
  }
  const auto stair = staircase_from_sequence(g, g.generators);
  if (!stair) return "no staircase from a_0..a_8";
  for (std::size_t n = 0; n < stair->divisors.size(); ++n) {
    if (stair->divisors[n] != factorial(n)) return "d_" + std::to_string(n) + " = " + stair->divisors[n].get_str();
  }
  const StaircaseReport r = verify_staircase(*stair, g);
  if (r.axioms.size() != 4) return "expected four axioms";
  for (const auto& a : r.axioms) {
    if (!a.passed) return "axiom " + a.axiom + " failed";
  }
  const Element& a0 = g.generators[0];
  for (std::uint64_t n = 0; n <= 8; ++n) {
    const Element& an = g.generators[n];
    if (an.mu("main") != n) return "mu(a_" + std::to_string(n) + ") = " + std::to_string(an.mu("main"));
    const Element diff = factorial(n) * an - a0;
    for (std::uint64_t k = n; k <= n + 6; ++k) {
      if (diff.eval(Ordinal(k)) != 0) return "(n! a_n - a_0)(" + std::to_string(k) + ") != 0 for n = " + std::to_string(n);
    }
  }
  return {};
}

std::string c2_residues() {
  const auto amb = limitq_ambient();
  const Ordinal w = O("w");
  for (std::uint64_t n = 0; n <= 8; ++n) {
    const auto r = limitq_a(amb, n).residue_at(w);
    if (r != std::vector<mpq_class>{mpq_class(1, factorial(n))}) return "residue of a_" + std::to_string(n);
  }
  std::mt19937_64 rng(2);
  std::vector<Ordinal> pts;
  for (int k = 0; k < 12; ++k) pts.push_back(Ordinal(k));
  for (int t = 0; t < 200; ++t) {
    const Element f = oracle::random_element(amb, pts, rng, false, false);
    for (const auto& c : f.residue_at(w)) {
      if (c != 0) return "kernel element " + to_string(f) + " has a residue";
    }
  }
  const GroupPresentation g = limitq_presentation();
  for (std::size_t n = 0; n + 1 < 10; ++n) {
    const Element e = g.generators[n] - mpz_class(n + 1) * g.generators[n + 1];
    if (e != Element::basis(amb, Ordinal(n))) return "e_" + std::to_string(n) + " relation";
    for (const auto& c : e.residue_at(w)) {
      if (c != 0) return "e_" + std::to_string(n) + " has a residue";
    }
  }
  return {};
}

std::string c3_cb_oracle() {
  using D = oracle::Digits;
  std::size_t points = 0;
  for (const D& top : {D{0, 0, 1, 0}, D{0, 0, 2, 0}, D{0, 1, 0, 0}, D{0, 3, 0, 0}, D{1, 0, 0, 0}}) {
    const Ordinal t = oracle::to_ordinal(top);
    const ScatteredSpace s(t, {t});
    for (const auto& [x, r] : oracle::derived_rank(top, 5)) {
      ++points;
      if (s.cb_rank(oracle::to_ordinal(x)) != Ordinal(r)) {
        return "cb(" + to_string(oracle::to_ordinal(x)) + ") in top " + to_string(t);
      }
    }
  }
  return points > 100 ? std::string() : "only " + std::to_string(points) + " points compared";
}

std::string c4_spanqx() {
  for (const char* top : {"w+1", "w*2", "w^2"}) {
    const auto m = oracle::kernel_model(top);
    const auto& g = m.group;
    std::map<Ordinal, Element> q;
    for (const auto& x : m.window) {
      try {
        q.emplace(x, semibasic_construct(g, x));
      } catch (const Error&) {
        // points whose coefficient always cancels carry no q_x
      }
    }
    std::mt19937_64 rng(4);
    std::size_t compared = 0;
    for (int t = 0; t < 500; ++t) {
      const Element f = oracle::random_combination(g, rng, 4, 3);
      const auto c = spanqx_decompose(f, q, Ordinal(2));
      Element back = Element::zero(g.ambient);
      for (const auto& [x, v] : c) back = back + v * q.at(x);
      if (back != f) return std::string(top) + ": re-sum differs for " + to_string(f);
      if (f.prefix().size() > 6 || f.is_zero()) continue;
      // close the support under the q_x it touches
      std::set<Ordinal> used, rows;
      std::vector<Ordinal> todo;
      for (const auto& [x, v] : f.prefix()) todo.push_back(x);
      while (!todo.empty()) {
        const Ordinal x = todo.back();
        todo.pop_back();
        if (!rows.insert(x).second) continue;
        auto it = q.find(x);
        if (it == q.end()) continue;
        used.insert(x);
        for (const auto& [y, v] : it->second.prefix()) todo.push_back(y);
      }
      std::vector<std::vector<mpq_class>> columns;
      for (const auto& x : used) {
        std::vector<mpq_class> col;
        for (const auto& y : rows) col.emplace_back(q.at(x).eval(y));
        columns.push_back(std::move(col));
      }
      std::vector<mpq_class> target;
      for (const auto& y : rows) target.emplace_back(f.eval(y));
      const auto sol = oracle::rational_solve(columns, target);
      if (!sol) return std::string(top) + ": oracle found no solution for " + to_string(f);
      std::size_t i = 0;
      for (const auto& x : used) {
        const auto it = c.find(x);
        const mpq_class mine = it == c.end() ? mpq_class(0) : mpq_class(it->second);
        if ((*sol)[i++] != mine) return std::string(top) + ": coefficient at " + to_string(x) + " differs";
      }
      ++compared;
    }
    if (compared < 100) return std::string(top) + ": only " + std::to_string(compared) + " oracle comparisons";
  }
  return {};
}

std::string c5_laws() {
  const std::vector<std::pair<std::string, GroupPresentation>> groups{
      {"limitq", limitq_presentation()},
      {"limit-chain", limit_chain_presentation().group},
      {"two-prime", two_prime_presentation().group}};
  for (const auto& [name, g] : groups) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 1000; ++t) {
      const Element f = random_member(g, rng), h = random_member(g, rng), k = random_member(g, rng);
      auto fail = [&, &name = name](const char* law) {
        return name + ": " + law + " fails on " + to_string(f) + ", " + to_string(h) + ", " + to_string(k);
      };
      if (f.meet(h) != h.meet(f) || f.join(h) != h.join(f) || f + h != h + f) return fail("commutativity");
      if (f.meet(h.meet(k)) != f.meet(h).meet(k) || f.join(h.join(k)) != f.join(h).join(k) ||
          f + (h + k) != (f + h) + k) {
        return fail("associativity");
      }
      if (f.meet(f) != f || f.join(f) != f) return fail("idempotence");
      if (f.join(f.meet(h)) != f || f.meet(f.join(h)) != f) return fail("absorption");
      if (f + h.meet(k) != (f + h).meet(f + k) || f + h.join(k) != (f + h).join(f + k)) return fail("translation");
    }
  }
  return {};
}

std::string c6_sum_cb() {
  struct Case {
    const char* top;
    std::vector<const char*> points;
  };
  const std::vector<Case> cases{{"w*3", {"0", "2", "w", "w+1", "w*2", "w*2+4"}},
                                {"w^2", {"1", "4", "w", "w+2", "w*2", "w*3+1"}}};
  std::size_t done = 0;
  for (const auto& c : cases) {
    const Ordinal top = O(c.top);
    const auto amb = make_ambient(ScatteredSpace(top, {top}), {});
    std::vector<Ordinal> pts;
    for (const char* p : c.points) pts.push_back(O(p));
    std::mt19937_64 rng(6);
    for (int t = 0; t < 250; ++t, ++done) {
      const Element f = oracle::random_element(amb, pts, rng, true, false);
      const Element g = oracle::random_element(amb, pts, rng, true, false);
      if ((f + g).cb() != std::max(f.cb(), g.cb())) return "cb(f + g) for " + to_string(f) + ", " + to_string(g);
    }
  }
  return done == 500 ? std::string() : "pair count";
}

std::string c7_chain() {
  const GroupPresentation g = limitq_presentation();
  const FreenessCertificate cert = build_chain_successor(g, 6);
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& s = cert.steps[i];
    if (s.torsion_bound != factorial(i)) return "step " + std::to_string(i) + " bound " + s.torsion_bound.get_str();
    std::vector<Element> a = i == 0 ? std::vector<Element>{} : cert.steps[i - 1].basis;
    a.insert(a.end(), s.quotient_basis.begin(), s.quotient_basis.end());
    std::vector<Element> family = a;
    family.insert(family.end(), s.extra_generators.begin(), s.extra_generators.end());
    const CoordinateFrame frame(cert.ambient, family);
    if (integer_rank(frame.coordinates(a), frame.size()) != a.size()) {
      return "step " + std::to_string(i) + ": quotient basis is not of full rank";
    }
    if (s.torsion_witnesses.size() != s.extra_generators.size()) return "step " + std::to_string(i) + ": witnesses";
  }
  const GroupPresentation final_group{cert.ambient, cert.final_basis, {}, false, {}};
  for (std::uint64_t n = 0; n <= 6; ++n) {
    for (const Element& f : {limitq_a(cert.ambient, n), Element::basis(cert.ambient, Ordinal(n))}) {
      const auto d = member_decompose(f, final_group);
      if (!d || !d->unique) return to_string(f) + " has no unique decomposition";
    }
  }
  const ChainCheckReport r = smooth_chain_check(cert);
  if (!r.ok) return "checker: " + r.reason;
  return {};
}

std::string c8_mutations() {
  const FreenessCertificate cert = build_chain_successor(limitq_presentation(), 6);
  const Json base = certificate_to_json(cert);
  std::mt19937_64 rng(8);
  std::size_t detected = 0;
  std::string first_miss;
  for (int t = 0; t < 20; ++t) {
    Json m = base;
    auto& steps = m["steps"];
    std::vector<std::size_t> eligible;
    for (std::size_t i = 1; i < steps.size(); ++i) {
      if (t % 3 != 1 || !steps[i]["torsion_witnesses"].empty()) eligible.push_back(i);
    }
    const std::size_t i = eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng)];
    auto& s = steps[i];
    std::string what;
    if (t % 3 == 0) {
      auto& basis = s["basis"];
      const std::size_t j = std::uniform_int_distribution<std::size_t>(0, basis.size() - 1)(rng);
      basis[j] = basis[j].get<std::string>() + " + e(40)";
      what = "basis entry";
    } else if (t % 3 == 1) {
      auto& row = s["torsion_witnesses"][0];
      const std::size_t j = std::uniform_int_distribution<std::size_t>(0, row.size() - 1)(rng);
      row[j] = mpz_class(mpz_class(row[j].get<std::string>()) + 1).get_str();
      what = "witness";
    } else {
      s["torsion_bound"] = mpz_class(mpz_class(s["torsion_bound"].get<std::string>()) * 2).get_str();
      what = "bound";
    }
    const ChainCheckReport r = smooth_chain_check(certificate_from_json(m));
    if (!r.ok && r.failed_step == i) {
      ++detected;
    } else if (first_miss.empty()) {
      first_miss = what + " at step " + std::to_string(i);
    }
  }
  return detected == 20 ? std::string() : "missed " + first_miss;
}

std::string c9_dd() {
  for (const auto& g : {limitq_presentation(), two_prime_presentation().group}) {
    const LawReport r = phi_homomorphism_check(g, 200, 9);
    if (!r.passed()) return r.violations.front();
  }
  const GroupPresentation g = limitq_presentation();
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> small(1, 5);
  int checked = 0;
  while (checked < 100) {
    const Element i = random_member(g, rng).positive_part();
    if (i.is_zero()) continue;
    const Element j = i.scaled(small(rng)) + random_member(g, rng).positive_part().meet(i.scaled(small(rng)));
    const auto n = radical_power_witness({i}, {j});
    if (!n) return "no witness for " + to_string(i) + ", " + to_string(j);
    if (!j.leq(i.scaled(*n))) return "witness too small";
    if (*n > 1 && j.leq(i.scaled(*n - 1))) return "witness not minimal";
    ++checked;
  }
  return {};
}

std::string c10_compose() {
  const PresentationFile p = two_prime_presentation();
  const FreenessCertificate cert = multi_prime_compose(p.group, p.blocks, 4);
  const ChainCheckReport r = smooth_chain_check(cert);
  if (!r.ok) return "checker: " + r.reason;
  if (cert.decompositions.empty()) return "no decompositions recorded";
  return {};
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Criterion run;
    double limit_ms;  // 0: no time limit
  };
  const std::vector<Entry> criteria{
      {"example reproduction", c1_example, 1000}, {"residue map", c2_residues, 0},
      {"cb oracle", c3_cb_oracle, 5000},          {"spanqx round trip", c4_spanqx, 0},
      {"lattice laws", c5_laws, 0},               {"sum cb", c6_sum_cb, 0},
      {"chain certification", c7_chain, 10000},   {"mutation detection", c8_mutations, 0},
      {"dd facade", c9_dd, 0},                    {"multi-prime composer", c10_compose, 10000}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string problem;
    try {
      problem = criteria[i].run();
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (problem.empty() && criteria[i].limit_ms > 0 && ms > criteria[i].limit_ms) problem = "over the time limit";
    std::printf("%s criterion %zu (%s) %.1f ms%s%s\n", problem.empty() ? "PASS" : "FAIL", i + 1, criteria[i].name, ms,
                problem.empty() ? "" : ": ", problem.c_str());
    if (!problem.empty()) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
