#include "logchart/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace logchart::json_io {

namespace {

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(path + "." + key, "missing required field");
  return *it;
}

std::size_t parse_size(const Json& j, const std::string& path) {
  Integer v = parse_integer(j, path);
  if (v < 0 || !v.fits_ulong_p()) throw InputError(path, "expected a nonnegative integer");
  return v.get_ui();
}

}  // namespace

Json parse_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(source, std::string("malformed JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw InputError(path, "cannot open file");
    buf << in.rdbuf();
  }
  return parse_text(buf.str(), path);
}

Integer parse_integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start) throw InputError(path, "empty integer string");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw InputError(path, "'" + s + "' is not a decimal integer");
    return Integer(s[0] == '+' ? s.substr(1) : s);
  }
  throw InputError(path, "expected an integer (number or decimal string)");
}

IntVector parse_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected an array of integers");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_integer(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

IntegerMatrix parse_matrix(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected an array of rows");
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(parse_vector(j[i], path + "[" + std::to_string(i) + "]"));
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != cols) throw InputError(path + "[" + std::to_string(i) + "]", "rows have different lengths");
  return IntegerMatrix::from_rows(rows, cols);
}

AbelianGroup parse_group(const Json& j, const std::string& path) {
  AbelianGroup g;
  g.free_rank = parse_size(field(j, "free_rank", path), path + ".free_rank");
  if (j.contains("torsion")) g.torsion = parse_vector(j["torsion"], path + ".torsion");
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ".torsion", e.what());
  }
  return g;
}

AffineMonoid parse_monoid(const Json& j, const std::string& path) {
  AbelianGroup g = parse_group(field(j, "ambient", path), path + ".ambient");
  const Json& gens = field(j, "generators", path);
  if (!gens.is_array()) throw InputError(path + ".generators", "expected an array of generators");
  std::vector<IntVector> v;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::string p = path + ".generators[" + std::to_string(i) + "]";
    v.push_back(parse_vector(gens[i], p));
    if (v.back().size() != g.dimension())
      throw InputError(p, "generator has " + std::to_string(v.back().size()) + " coordinates, ambient has " +
                              std::to_string(g.dimension()));
  }
  return AffineMonoid(g, v);
}

MonoidPresentation parse_presentation(const Json& j, const std::string& path) {
  MonoidPresentation p;
  p.generator_count = parse_size(field(j, "generators", path), path + ".generators");
  const Json& rels = field(j, "relations", path);
  if (!rels.is_array()) throw InputError(path + ".relations", "expected an array of [lhs, rhs] pairs");
  for (std::size_t i = 0; i < rels.size(); ++i) {
    std::string rp = path + ".relations[" + std::to_string(i) + "]";
    if (!rels[i].is_array() || rels[i].size() != 2) throw InputError(rp, "expected a pair [lhs, rhs]");
    IntVector l = parse_vector(rels[i][0], rp + "[0]"), r = parse_vector(rels[i][1], rp + "[1]");
    if (l.size() != p.generator_count || r.size() != p.generator_count)
      throw InputError(rp, "exponent vectors must have one entry per generator");
    for (const auto& x : l)
      if (x < 0) throw InputError(rp + "[0]", "exponents must be nonnegative");
    for (const auto& x : r)
      if (x < 0) throw InputError(rp + "[1]", "exponents must be nonnegative");
    p.relations.emplace_back(l, r);
  }
  return p;
}

MonoidHom parse_hom(const Json& j, const std::string& path) {
  AffineMonoid dom = parse_monoid(field(j, "domain", path), path + ".domain");
  AffineMonoid cod = parse_monoid(field(j, "codomain", path), path + ".codomain");
  IntegerMatrix m = parse_matrix(field(j, "group_map", path), path + ".group_map");
  if (m.rows() == 0 && cod.ambient().dimension() == 0) m = IntegerMatrix(0, dom.ambient().dimension());
  if (m.rows() != cod.ambient().dimension() || m.cols() != dom.ambient().dimension())
    throw InputError(path + ".group_map", "expected a " + std::to_string(cod.ambient().dimension()) + " x " +
                                              std::to_string(dom.ambient().dimension()) + " matrix");
  try {
    return make_hom(dom, cod, m);
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ".group_map", e.what());
  }
}

Json to_json(const Integer& x) { return x.get_str(); }

Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

Json to_json(const IntegerMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

Json to_json(const AbelianGroup& g) {
  return Json{{"free_rank", std::to_string(g.free_rank)}, {"torsion", to_json(g.torsion)}};
}

Json to_json(const FiniteAbelianGroup& g) {
  return Json{{"invariant_factors", to_json(g.invariant_factors)}, {"order", to_json(g.order())}};
}

Json to_json(const AffineMonoid& m) {
  Json gens = Json::array();
  for (const auto& g : m.generators()) gens.push_back(to_json(g));
  return Json{{"ambient", to_json(m.ambient())}, {"generators", gens}};
}

Json to_json(const MonoidPresentation& p) {
  Json rels = Json::array();
  for (const auto& [l, r] : p.relations) rels.push_back(Json::array({to_json(l), to_json(r)}));
  return Json{{"generators", std::to_string(p.generator_count)}, {"relations", rels}};
}

Json to_json(const MonoidHom& u) {
  return Json{{"domain", to_json(u.domain)}, {"codomain", to_json(u.codomain)}, {"group_map", to_json(u.group_map)}};
}

Json to_json(const MonoidProperties& p) {
  return Json{{"fine", p.fine},   {"sharp", p.sharp},
              {"saturated", p.saturated}, {"fs", p.fs},
              {"dimension", std::to_string(p.dimension)}};
}

Json to_json(const ChartClassification& c) {
  return Json{{"injective", c.injective},
              {"exact", c.exact},
              {"kummer", c.kummer},
              {"log_smooth", c.log_smooth},
              {"log_etale", c.log_etale},
              {"kummer_etale", c.kummer_etale},
              {"residue_characteristic", std::to_string(c.residue_characteristic)},
              {"galois_group", c.galois_group ? to_json(*c.galois_group) : Json(nullptr)}};
}

Json to_json(const SelfProductDecomposition& d) {
  Json j{{"factors", std::to_string(d.factors)},
         {"galois_group", to_json(d.galois_group)},
         {"self_product", to_json(d.self_product)},
         {"target", to_json(d.target)},
         {"canonical_map", to_json(d.canonical_map.group_map)},
         {"certified", d.certified}};
  if (!d.certified) j["counterexample"] = d.counterexample;
  return j;
}

Json to_json(const covers::CoverDescriptor& c) {
  return Json{{"level", std::to_string(c.level)},
              {"subgroup_lattice", to_json(c.subgroup)},
              {"monoid", to_json(c.monoid)},
              {"galois_group", to_json(c.galois_group)}};
}

Json to_json(const covers::CorrespondenceReport& r) {
  Json cs = Json::array();
  for (const auto& c : r.covers) cs.push_back(to_json(c));
  Json ps = Json::array();
  std::size_t matched = 0;
  for (const auto& p : r.pairs) {
    matched += p.match() ? 1 : 0;
    ps.push_back(Json{{"source", std::to_string(p.source)},
                      {"target", std::to_string(p.target)},
                      {"hom_count", to_json(p.hom_count)},
                      {"equivariant_maps", to_json(p.equivariant_maps)},
                      {"match", p.match()}});
  }
  return Json{{"level", std::to_string(r.level)},
              {"identification", "mu_N(l) = Z/N via a fixed primitive N-th root"},
              {"covers", cs},
              {"pairs", ps},
              {"matched", std::to_string(matched)},
              {"total", std::to_string(r.pairs.size())},
              {"pass", r.pass}};
}

Json sizes_to_json(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(std::to_string(x));
  return a;
}

Json to_json(const CechSlice& s) {
  return Json{{"degree", to_json(s.degree)},
              {"in_codomain", s.in_codomain},
              {"in_base", s.in_base},
              {"dimensions", sizes_to_json(s.dimensions)},
              {"augmented_cohomology", sizes_to_json(s.augmented_cohomology)},
              {"cech_cohomology", sizes_to_json(s.cech_cohomology)},
              {"exact", s.exact}};
}

Json to_json(const CechGroupComparison& c) {
  return Json{{"characteristic", std::to_string(c.prime)},
              {"max_degree", std::to_string(c.max_degree)},
              {"degree_bound", std::to_string(c.degree_bound)},
              {"degrees_examined", std::to_string(c.degrees_examined)},
              {"group_cohomology", sizes_to_json(c.group_cohomology)},
              {"cech_trivial_class", sizes_to_json(c.cech_trivial_class)},
              {"cech_other_classes", sizes_to_json(c.cech_other_classes)},
              {"exact_everywhere", c.exact_everywhere},
              {"consistent", c.consistent},
              {"stable", c.stable},
              {"match", c.match}};
}

Json to_json(const PolydiscCohomology& p) {
  return Json{{"characteristic", std::to_string(p.prime)},
              {"zeta", std::to_string(p.zeta)},
              {"totals", sizes_to_json(p.totals)},
              {"characters", std::to_string(p.characters)},
              {"contributing_characters", std::to_string(p.contributing_characters)},
              {"only_trivial_contributes", p.only_trivial_contributes}};
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace logchart::json_io
