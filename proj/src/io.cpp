#include "lfree/io.hpp"

#include <fstream>

#include "lfree/error.hpp"

namespace lfree {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Schema, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw Error(ErrorKind::Schema, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::uint64_t natural(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned()) throw Error(ErrorKind::Schema, std::string("field '") + key + "' must be a natural");
  return v.get<std::uint64_t>();
}

const Json& array(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw Error(ErrorKind::Schema, std::string("field '") + key + "' must be an array");
  return v;
}

void check_schema(const Json& j, const char* expected) {
  const std::string got = text(j, "schema");
  if (got != expected) {
    throw Error(ErrorKind::Schema, "schema-version mismatch: expected " + std::string(expected) + ", got " + got);
  }
}

mpz_class integer(const Json& v) {
  if (!v.is_string()) throw Error(ErrorKind::Schema, "integers are written as strings");
  mpz_class out;
  if (out.set_str(v.get<std::string>(), 10) != 0) throw Error(ErrorKind::Schema, "bad integer '" + v.get<std::string>() + "'");
  return out;
}

Json elements_to_json(const std::vector<Element>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(to_string(f));
  return out;
}

std::vector<Element> elements_from_json(const Json& j, const AmbientPtr& amb) {
  if (!j.is_array()) throw Error(ErrorKind::Schema, "expected an array of element literals");
  std::vector<Element> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw Error(ErrorKind::Schema, "element literals are strings");
    out.push_back(parse_element(v.get<std::string>(), amb));
  }
  return out;
}

Json vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

IntVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Schema, "expected an integer array");
  IntVector out;
  for (const auto& v : j) out.push_back(integer(v));
  return out;
}

Json ordinals_to_json(const std::vector<Ordinal>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

std::vector<Ordinal> ordinals_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Schema, "expected an array of ordinals");
  std::vector<Ordinal> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw Error(ErrorKind::Schema, "ordinals are written as strings");
    out.push_back(parse_ordinal(v.get<std::string>()));
  }
  return out;
}

}  // namespace

Json ambient_to_json(const Ambient& amb) {
  Json primes = Json::array();
  for (const auto& p : amb.space.infinite_primes()) primes.push_back(to_string(p));
  Json ladders = Json::array();
  for (const auto& lad : amb.ladders) {
    Json weights = Json::array();
    for (const auto& w : lad.weights()) weights.push_back({{"label", w.label()}, {"family", w.tag()}});
    ladders.push_back({{"id", lad.id()},
                       {"target", to_string(lad.target())},
                       {"offset", lad.offset()},
                       {"shift", lad.shift()},
                       {"weights", weights}});
  }
  return Json{{"top", to_string(amb.space.top())}, {"infinite_primes", primes}, {"ladders", ladders}};
}

AmbientPtr ambient_from_json(const Json& j) {
  std::set<Ordinal> primes;
  for (const auto& p : ordinals_from_json(array(j, "infinite_primes"))) primes.insert(p);
  ScatteredSpace space(parse_ordinal(text(j, "top")), std::move(primes));
  std::vector<Ladder> ladders;
  for (const auto& l : array(j, "ladders")) {
    std::vector<Weight> weights;
    for (const auto& w : array(l, "weights")) weights.push_back(Weight::parse(text(w, "label"), text(w, "family")));
    ladders.emplace_back(text(l, "id"), parse_ordinal(text(l, "target")), natural(l, "offset"), natural(l, "shift"),
                         std::move(weights));
  }
  return make_ambient(std::move(space), std::move(ladders));
}

Json presentation_to_json(const PresentationFile& p) {
  const auto& g = p.group;
  Json gens = Json::array();
  for (std::size_t i = 0; i < g.generators.size(); ++i) {
    gens.push_back({{"name", g.name_of(i)}, {"element", to_string(g.generators[i])}});
  }
  Json out{{"schema", kPresentationSchema},
           {"ambient", ambient_to_json(*g.ambient)},
           {"generators", gens},
           {"contains_finite_support", g.contains_finite_support}};
  if (!p.alphas.empty()) out["alphas"] = ordinals_to_json(p.alphas);
  if (!p.blocks.empty()) {
    Json blocks = Json::array();
    for (const auto& b : p.blocks) blocks.push_back({{"low", to_string(b.low)}, {"high", to_string(b.high)}});
    out["blocks"] = blocks;
  }
  return out;
}

PresentationFile presentation_from_json(const Json& j) {
  check_schema(j, kPresentationSchema);
  PresentationFile out;
  auto& g = out.group;
  g.ambient = ambient_from_json(field(j, "ambient"));
  for (const auto& gen : array(j, "generators")) {
    g.names.push_back(text(gen, "name"));
    g.generators.push_back(parse_element(text(gen, "element"), g.ambient));
  }
  if (j.contains("contains_finite_support")) {
    const Json& v = j.at("contains_finite_support");
    if (!v.is_boolean()) throw Error(ErrorKind::Schema, "contains_finite_support must be a boolean");
    g.contains_finite_support = v.get<bool>();
  }
  if (j.contains("alphas")) out.alphas = ordinals_from_json(j.at("alphas"));
  if (j.contains("blocks")) {
    for (const auto& b : array(j, "blocks")) {
      out.blocks.push_back(ClopenBlock{parse_ordinal(text(b, "low")), parse_ordinal(text(b, "high"))});
    }
  }
  return out;
}

Json certificate_to_json(const FreenessCertificate& cert) {
  Json segments = Json::array();
  for (const auto& s : cert.segments) {
    segments.push_back({{"kind", to_string(s.kind)}, {"label", s.label}, {"alphas", ordinals_to_json(s.alphas)}});
  }
  Json steps = Json::array();
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const auto& s = cert.steps[i];
    Json witnesses = Json::array();
    for (const auto& w : s.torsion_witnesses) witnesses.push_back(vector_to_json(w));
    steps.push_back({{"index", i},
                     {"segment", s.segment},
                     {"rank", to_string(s.rank)},
                     {"quotient_basis", elements_to_json(s.quotient_basis)},
                     {"extra_generators", elements_to_json(s.extra_generators)},
                     {"torsion_bound", s.torsion_bound.get_str()},
                     {"torsion_witnesses", witnesses},
                     {"basis", elements_to_json(s.basis)}});
  }
  Json decompositions = Json::array();
  for (const auto& d : cert.decompositions) {
    decompositions.push_back(
        {{"name", d.name}, {"element", to_string(d.element)}, {"coefficients", vector_to_json(d.coefficients)}});
  }
  return Json{{"schema", kCertificateSchema},
              {"seed", cert.seed},
              {"ambient", ambient_to_json(*cert.ambient)},
              {"segments", segments},
              {"steps", steps},
              {"final_basis", elements_to_json(cert.final_basis)},
              {"decompositions", decompositions},
              {"beyond_truncation", cert.beyond_truncation},
              {"probe_window", cert.probe_window}};
}

FreenessCertificate certificate_from_json(const Json& j) {
  check_schema(j, kCertificateSchema);
  FreenessCertificate cert;
  cert.seed = natural(j, "seed");
  cert.ambient = ambient_from_json(field(j, "ambient"));
  const auto& amb = cert.ambient;
  for (const auto& s : array(j, "segments")) {
    cert.segments.push_back(
        {parse_segment_kind(text(s, "kind")), text(s, "label"), ordinals_from_json(array(s, "alphas"))});
  }
  for (const auto& s : array(j, "steps")) {
    ChainStep step;
    step.segment = natural(s, "segment");
    step.rank = parse_ordinal(text(s, "rank"));
    step.quotient_basis = elements_from_json(array(s, "quotient_basis"), amb);
    step.extra_generators = elements_from_json(array(s, "extra_generators"), amb);
    step.torsion_bound = integer(field(s, "torsion_bound"));
    for (const auto& w : array(s, "torsion_witnesses")) step.torsion_witnesses.push_back(vector_from_json(w));
    step.basis = elements_from_json(array(s, "basis"), amb);
    cert.steps.push_back(std::move(step));
  }
  cert.final_basis = elements_from_json(array(j, "final_basis"), amb);
  for (const auto& d : array(j, "decompositions")) {
    cert.decompositions.push_back(
        {text(d, "name"), parse_element(text(d, "element"), amb), vector_from_json(array(d, "coefficients"))});
  }
  for (const auto& b : array(j, "beyond_truncation")) cert.beyond_truncation.push_back(b.get<std::string>());
  for (const auto& p : array(j, "probe_window")) cert.probe_window.push_back(p.get<std::string>());
  return cert;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Io, path + ": " + e.what());
  }
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

}  // namespace lfree
