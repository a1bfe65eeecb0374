#include "logchart/errors.hpp"
#include "logchart/morphism.hpp"

#include <stdexcept>

namespace logchart {

namespace {

void check_common_domain(const MonoidHom& u, const MonoidHom& v) {
  if (u.domain != v.domain) throw PreconditionError("pushout requires maps with a common domain");
}

IntVector padded(const IntVector& v, std::size_t before, std::size_t after) {
  IntVector out(before, 0);
  out.insert(out.end(), v.begin(), v.end());
  out.resize(before + v.size() + after, 0);
  return out;
}

}  // namespace

PushoutMode parse_pushout_mode(const std::string& name) {
  if (name == "raw") return PushoutMode::raw;
  if (name == "fine") return PushoutMode::fine;
  if (name == "fs") return PushoutMode::fs;
  throw std::invalid_argument("unknown pushout mode '" + name + "' (expected raw, fine or fs)");
}

RawPushout raw_pushout(const MonoidHom& u, const MonoidHom& v) {
  check_common_domain(u, v);
  const std::size_t a = u.codomain.generator_count();
  const std::size_t b = v.codomain.generator_count();
  RawPushout out;
  out.left_generators = a;
  out.presentation.generator_count = a + b;
  for (const auto& [l, r] : lattice_presentation(u.codomain).relations)
    out.presentation.relations.emplace_back(padded(l, 0, b), padded(r, 0, b));
  for (const auto& [l, r] : lattice_presentation(v.codomain).relations)
    out.presentation.relations.emplace_back(padded(l, a, 0), padded(r, a, 0));
  MonoidStructure sq(u.codomain), sr(v.codomain);
  for (const auto& p : u.domain.generators()) {
    auto cq = sq.membership(u.apply(p));
    auto cr = sr.membership(v.apply(p));
    if (!cq || !cr) throw std::logic_error("image of a domain generator has no certificate");
    out.presentation.relations.emplace_back(padded(*cq, 0, b), padded(*cr, a, 0));
  }
  return out;
}

Pushout pushout(const MonoidHom& u, const MonoidHom& v, PushoutMode mode) {
  if (mode == PushoutMode::raw) throw std::invalid_argument("raw pushouts are presentations; use raw_pushout");
  check_common_domain(u, v);
  DirectProduct sum = direct_product({u.codomain.ambient(), v.codomain.ambient()});
  std::vector<IntVector> rels;
  for (const auto& p : u.domain.generators())
    rels.push_back(subtract(sum.inclusions[0] * u.apply(p), sum.inclusions[1] * v.apply(p)));
  Quotient q = quotient_group(sum.group, IntegerMatrix::from_columns(rels, sum.group.dimension()));
  IntegerMatrix left = q.projection * sum.inclusions[0];
  IntegerMatrix right = q.projection * sum.inclusions[1];
  std::vector<IntVector> gens;
  for (const auto& g : u.codomain.generators()) gens.push_back(left * g);
  for (const auto& g : v.codomain.generators()) gens.push_back(right * g);
  AffineMonoid m(q.group, gens);
  if (mode == PushoutMode::fs) m = saturate(m);
  return Pushout{m, make_hom(u.codomain, m, left), make_hom(v.codomain, m, right)};
}

}  // namespace logchart
