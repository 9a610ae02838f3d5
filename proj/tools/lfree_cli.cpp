// lfree: command-line front end.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <random>
#include <string>

#include "lfree/ddmodel.hpp"
#include "lfree/error.hpp"
#include "lfree/examples.hpp"
#include "lfree/freeness.hpp"
#include "lfree/io.hpp"

namespace {

using namespace lfree;

constexpr std::uint64_t kDefaultSeed = 20240607;

struct RunConfig {
  std::string input;
  std::string output;
  std::string element;
  std::string mode = "member";
  std::string example = "limitq";
  std::uint64_t rank_bound = 4;
  std::uint64_t seed = kDefaultSeed;
  std::size_t cases = 200;
};

PresentationFile load_presentation(const std::string& path) { return presentation_from_json(read_json(path)); }

void print_report(const StaircaseReport& r) {
  for (const auto& a : r.axioms) {
    std::cout << "  " << a.axiom << ": " << (a.passed ? "pass" : "FAIL");
    if (!a.passed) std::cout << " at n = " << *a.index << " (" << a.detail << ")";
    std::cout << '\n';
  }
}

int demo_limitq() {
  const GroupPresentation g = limitq_presentation(9);
  for (std::size_t n = 0; n < 4; ++n) {
    std::cout << "a_" << n << ":";
    for (std::uint64_t k = 0; k < 5; ++k) std::cout << ' ' << g.generators[n].eval(Ordinal(k)).get_str();
    std::cout << '\n';
  }
  auto stair = staircase_from_sequence(g, g.generators);
  if (!stair) {
    std::cout << "a_0..a_8 carry no common residue weight\n";
    return 1;
  }
  std::cout << "staircase a_0..a_8, d_n:";
  for (const auto& d : stair->divisors) std::cout << ' ' << d.get_str();
  std::cout << '\n';
  const StaircaseReport r = verify_staircase(*stair, g);
  print_report(r);
  return r.passed() ? 0 : 1;
}

int verify_staircase_cmd(const RunConfig& cfg) {
  const auto p = load_presentation(cfg.input);
  bool ok = true, any = false;
  for (std::size_t l = 0; l < p.group.ambient->ladders.size(); ++l) {
    const auto& lad = p.group.ambient->ladders[l];
    GroupPresentation g = p.group;
    g.focus = lad.target();
    std::map<std::size_t, std::vector<Element>> by_weight;
    for (const auto& f : g.generators) {
      if (auto w = residue_weight(f, l)) by_weight[*w].push_back(f);
    }
    for (const auto& [w, seq] : by_weight) {
      any = true;
      std::cout << "ladder " << lad.id() << ", weight " << lad.weights()[w].label() << ", " << seq.size()
                << " terms\n";
      auto stair = staircase_from_sequence(g, seq);
      if (!stair) {
        std::cout << "  residues are not integer divisors of a_0's residue\n";
        ok = false;
        continue;
      }
      const StaircaseReport r = verify_staircase(*stair, g);
      print_report(r);
      ok = ok && r.passed();
    }
  }
  if (!any) std::cout << "no generator has a residue\n";
  return ok && any ? 0 : 1;
}

int extract_basis_cmd(const RunConfig& cfg) {
  const auto p = load_presentation(cfg.input);
  FreenessCertificate cert = extract_basis(p.group, cfg.rank_bound, p.alphas, p.blocks);
  cert.seed = cfg.seed;
  write_json(cfg.output, certificate_to_json(cert));
  std::cout << "steps " << cert.steps.size() << ", final basis " << cert.final_basis.size() << ", decompositions "
            << cert.decompositions.size() << ", beyond truncation " << cert.beyond_truncation.size() << '\n';
  std::cout << "wrote " << cfg.output << '\n';
  return 0;
}

int cert_verify_cmd(const RunConfig& cfg) {
  const FreenessCertificate cert = certificate_from_json(read_json(cfg.input));
  const ChainCheckReport r = smooth_chain_check(cert);
  if (!r.ok) {
    std::cout << "FAIL";
    if (r.failed_step) std::cout << " at step " << *r.failed_step;
    std::cout << ": " << r.reason << '\n';
    return 1;
  }
  std::cout << "ok: " << cert.steps.size() << " steps, final basis " << cert.final_basis.size() << ", seed "
            << cert.seed << '\n';
  if (r.torsion_quotient_step) {
    std::cout << "note: step " << *r.torsion_quotient_step << ": " << r.torsion_detail << '\n';
  }
  return 0;
}

int decompose_cmd(const RunConfig& cfg) {
  const auto p = load_presentation(cfg.input);
  const auto& g = p.group;
  const Element f = parse_element(cfg.element, g.ambient);
  if (cfg.mode == "spanqx") {
    if (!f.tail_free()) throw Error(ErrorKind::Precondition, "nonzero residue at infinity: " + to_string(f));
    std::map<Ordinal, Element> q;
    std::vector<Ordinal> todo;
    for (const auto& [x, v] : f.prefix()) todo.push_back(x);
    while (!todo.empty()) {
      const Ordinal x = todo.back();
      todo.pop_back();
      if (q.count(x)) continue;
      Element qx = semibasic_construct(g, x);
      for (const auto& [y, v] : qx.prefix()) todo.push_back(y);
      q.emplace(x, std::move(qx));
    }
    const auto c = spanqx_decompose(f, q, f.cb());
    std::cout << "spanqx:";
    if (c.empty()) std::cout << " (empty)";
    for (const auto& [x, v] : c) std::cout << ' ' << to_string(x) << ':' << v.get_str();
    std::cout << "\nwindow:";
    for (const auto& [x, qx] : q) std::cout << ' ' << to_string(x);
    std::cout << '\n';
    return 0;
  }
  if (cfg.mode != "member") throw Error(ErrorKind::Precondition, "unknown mode '" + cfg.mode + "'");
  const auto d = member_decompose(f, g);
  if (!d) {
    std::cout << "not-member\n";
    std::vector<Element> family = g.generators;
    family.push_back(f);
    std::cout << "window:";
    for (const auto& s : CoordinateFrame(g.ambient, family).slot_names()) std::cout << ' ' << s;
    std::cout << '\n';
    return 1;
  }
  std::cout << "member:";
  if (d->coefficients.empty() && d->finite_part.empty()) std::cout << " (empty)";
  for (const auto& [i, c] : d->coefficients) std::cout << ' ' << g.name_of(i) << ':' << c.get_str();
  for (const auto& [x, c] : d->finite_part) std::cout << " e(" << to_string(x) << "):" << c.get_str();
  std::cout << (d->unique ? "" : "  (not unique)") << "\nwindow:";
  for (const auto& s : d->window) std::cout << ' ' << s;
  std::cout << '\n';
  return 0;
}

int dd_check_cmd(const RunConfig& cfg) {
  const auto p = load_presentation(cfg.input);
  const auto& g = p.group;
  const LawReport laws = phi_homomorphism_check(g, cfg.cases, cfg.seed);
  std::cout << "seed " << cfg.seed << ", " << laws.cases << " ideal pairs: "
            << (laws.passed() ? "all laws hold" : std::to_string(laws.violations.size()) + " violations") << '\n';
  for (const auto& v : laws.violations) std::cout << "  " << v << '\n';

  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> small(1, 4);
  std::size_t witnessed = 0, minimal = 0, tried = 0;
  for (std::size_t c = 0; c < cfg.cases; ++c) {
    const Element base = random_member(g, rng).positive_part();
    if (base.is_zero()) continue;
    const Element other = random_member(g, rng).positive_part();
    const Element j = base.scaled(small(rng)) + other.meet(base.scaled(small(rng)));
    ++tried;
    const auto n = radical_power_witness({base}, {j});
    if (!n) continue;
    ++witnessed;
    if (*n == 1 || !j.leq(base.scaled(*n - 1))) ++minimal;
  }
  std::cout << "radical powers: " << witnessed << " of " << tried << " equal-support pairs witnessed, " << minimal
            << " minimal\n";

  std::size_t consistent = 0;
  for (const auto& f : g.generators) consistent += spec_map_check(g, f).consistent ? 1 : 0;
  std::cout << "spectral map: " << consistent << " of " << g.generators.size() << " generators consistent\n";
  const bool ok = laws.passed() && witnessed == tried && minimal == witnessed && consistent == g.generators.size();
  return ok ? 0 : 1;
}

int example_cmd(const RunConfig& cfg) {
  PresentationFile p;
  if (cfg.example == "limitq") p.group = limitq_presentation();
  else if (cfg.example == "limit-chain") p = limit_chain_presentation();
  else if (cfg.example == "two-prime") p = two_prime_presentation();
  else throw Error(ErrorKind::Precondition, "unknown example '" + cfg.example + "'");
  write_json(cfg.output, presentation_to_json(p));
  std::cout << "wrote " << cfg.output << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lfree: lattice-ordered function groups, staircase bases and freeness certificates"};
  app.require_subcommand(1);
  RunConfig cfg;

  app.add_subcommand("demo-limitq", "Print the a_n matrix and check the staircase axioms");

  auto* vs = app.add_subcommand("verify-staircase", "Check the staircase axioms on a presentation's generators");
  vs->add_option("file", cfg.input, "Presentation JSON")->required();

  auto* eb = app.add_subcommand("extract-basis", "Build a freeness certificate");
  eb->add_option("file", cfg.input, "Presentation JSON")->required();
  eb->add_option("--rank,-R", cfg.rank_bound, "Rank bound R");
  eb->add_option("--out,-o", cfg.output, "Certificate path")->required();
  eb->add_option("--seed", cfg.seed, "Seed recorded in the certificate");

  auto* cv = app.add_subcommand("cert-verify", "Re-check a certificate");
  cv->add_option("file", cfg.input, "Certificate JSON")->required();

  auto* dc = app.add_subcommand("decompose", "Decompose an element over the generators or the q_x family");
  dc->add_option("file", cfg.input, "Presentation JSON")->required();
  dc->add_option("--element,-e", cfg.element, "Element literal")->required();
  dc->add_option("--mode", cfg.mode, "member or spanqx")->check(CLI::IsMember({"member", "spanqx"}));

  auto* dd = app.add_subcommand("dd-check", "Property-check the ideal-function facade");
  dd->add_option("file", cfg.input, "Presentation JSON")->required();
  dd->add_option("--cases,-n", cfg.cases, "Number of random cases");
  dd->add_option("--seed", cfg.seed, "Random seed");

  auto* ex = app.add_subcommand("example", "Write a bundled presentation");
  ex->add_option("name", cfg.example, "limitq, limit-chain or two-prime")->required();
  ex->add_option("--out,-o", cfg.output, "Presentation path")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (app.got_subcommand("demo-limitq")) return demo_limitq();
    if (app.got_subcommand(vs)) return verify_staircase_cmd(cfg);
    if (app.got_subcommand(eb)) return extract_basis_cmd(cfg);
    if (app.got_subcommand(cv)) return cert_verify_cmd(cfg);
    if (app.got_subcommand(dc)) return decompose_cmd(cfg);
    if (app.got_subcommand(dd)) return dd_check_cmd(cfg);
    if (app.got_subcommand(ex)) return example_cmd(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
