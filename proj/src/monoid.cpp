#include "logchart/monoid.hpp"

#include "logchart/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace logchart {

namespace {

IntegerMatrix free_rows(const AffineMonoid& m) {
  return m.generator_matrix().row_block(0, m.ambient().free_rank);
}

IntegerMatrix basis_of(const IntegerMatrix& free_part) {
  IntegerMatrix b = lattice_basis(free_part);
  if (b.rows() != free_part.rows()) return IntegerMatrix(free_part.rows(), 0);
  return b;
}

IntVector free_part_of(const IntVector& x, std::size_t r) {
  return IntVector(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(r));
}

void check_dimension(const AbelianGroup& g, const IntVector& x) {
  if (x.size() != g.dimension()) {
    std::ostringstream os;
    os << "element " << to_string(x) << " does not live in " << g.to_string();
    throw AmbientMismatch(os.str());
  }
}

// Columns of g together with the relation columns of its ambient.
IntegerMatrix with_relations(const AbelianGroup& amb, const IntegerMatrix& g) {
  return g.hconcat(amb.relation_matrix());
}

}  // namespace

// ---- AffineMonoid ---------------------------------------------------------

AffineMonoid::AffineMonoid(AbelianGroup ambient, std::vector<IntVector> generators)
    : ambient_(std::move(ambient)) {
  ambient_.validate();
  std::set<IntVector> seen;
  for (auto& g : generators) {
    check_dimension(ambient_, g);
    IntVector r = ambient_.reduce(std::move(g));
    if (is_zero(r) || !seen.insert(r).second) continue;
    generators_.push_back(std::move(r));
  }
}

AffineMonoid AffineMonoid::free(std::size_t rank) {
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < rank; ++i) {
    IntVector e(rank, 0);
    e[i] = 1;
    gens.push_back(e);
  }
  return AffineMonoid(AbelianGroup::free(rank), gens);
}

IntegerMatrix AffineMonoid::generator_matrix() const {
  return IntegerMatrix::from_columns(generators_, ambient_.dimension());
}

std::string AffineMonoid::to_string() const {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < generators_.size(); ++i)
    os << (i ? ", " : "") << logchart::to_string(generators_[i]);
  os << "> in " << ambient_.to_string();
  return os.str();
}

// ---- MonoidStructure ------------------------------------------------------

MonoidStructure::MonoidStructure(AffineMonoid m)
    : monoid_(std::move(m)),
      free_part_(free_rows(monoid_)),
      lattice_(basis_of(free_part_)),
      lattice_solver_(lattice_),
      free_solver_(free_part_),
      group_solver_(monoid_.generator_matrix(), monoid_.ambient()) {
  const std::size_t n = monoid_.generator_count();
  const std::size_t s = lattice_.cols();
  for (std::size_t i = 0; i < n; ++i) coords_.push_back(*lattice_solver_.solve(free_part_.column(i)));
  if (s > 0) cone_ = cone::describe(IntegerMatrix::from_columns(coords_, s));
  grading_.assign(s, 0);
  for (const auto& f : cone_.facets) grading_ = add(grading_, f);
  for (std::size_t i = 0; i < n; ++i) {
    degrees_.push_back(dot(grading_, coords_[i]));
    (degrees_[i] == 0 ? units_ : sharp_).push_back(i);
  }
  search_order_ = sharp_;
  std::stable_sort(search_order_.begin(), search_order_.end(),
                   [&](std::size_t a, std::size_t b) { return degrees_[a] > degrees_[b]; });

  IntegerMatrix k = integer_kernel(free_part_);
  std::set<IntVector> seen;
  IntegerMatrix g = monoid_.generator_matrix();
  for (std::size_t j = 0; j < k.cols(); ++j) {
    IntVector t = monoid_.ambient().reduce(g * k.column(j));
    if (!is_zero(t) && seen.insert(t).second) torsion_.push_back(t);
  }

  if (!units_.empty()) {
    std::vector<IntVector> ug;
    for (auto i : units_) ug.push_back(monoid_.generators()[i]);
    unit_solver_.emplace(IntegerMatrix::from_columns(ug, monoid_.ambient().dimension()),
                         monoid_.ambient());
  }
}

std::optional<IntVector> MonoidStructure::lattice_coordinates(const IntVector& x) const {
  check_dimension(monoid_.ambient(), x);
  return lattice_solver_.solve(free_part_of(x, monoid_.ambient().free_rank));
}

IntVector MonoidStructure::lift(const IntVector& w) const {
  auto c = free_solver_.solve(lattice_ * w);
  if (!c) throw std::logic_error("lattice point is not in the image of the generators");
  return monoid_.ambient().reduce(monoid_.generator_matrix() * *c);
}

bool MonoidStructure::in_group(const IntVector& x) const {
  check_dimension(monoid_.ambient(), x);
  return group_solver_.solve(monoid_.ambient().reduce(x)).has_value();
}

bool MonoidStructure::in_saturation(const IntVector& x) const {
  if (!in_group(x)) return false;
  auto w = lattice_coordinates(x);
  return w && cone_.contains(*w);
}

const IntVector& MonoidStructure::positive_unit_relation() const {
  if (unit_relation_) return *unit_relation_;
  std::vector<IntVector> fu;
  for (auto i : units_) fu.push_back(free_part_.column(i));
  IntegerMatrix k = integer_kernel(IntegerMatrix::from_columns(fu, monoid_.ambient().free_rank));
  IntVector lambda(units_.size(), 0);
  if (k.cols() > 0)
    for (const auto& ray : cone::extreme_rays(k)) lambda = add(lambda, k * ray);
  Integer e = monoid_.ambient().torsion_exponent();
  for (auto& v : lambda) {
    if (v <= 0) throw std::logic_error("unit generators admit no positive relation");
    v *= e;
  }
  unit_relation_ = lambda;
  return *unit_relation_;
}

std::optional<MembershipCertificate> MonoidStructure::membership(const IntVector& x_in) const {
  check_dimension(monoid_.ambient(), x_in);
  const AbelianGroup& amb = monoid_.ambient();
  IntVector x = amb.reduce(x_in);
  if (!group_solver_.solve(x)) return std::nullopt;
  auto w0 = lattice_coordinates(x);
  if (!w0 || !cone_.contains(*w0)) return std::nullopt;

  const auto& gens = monoid_.generators();
  IntVector coeff(gens.size(), 0);

  auto finish = [&](const IntVector& res) -> bool {
    IntVector r = amb.reduce(res);
    if (units_.empty()) return is_zero(r);
    auto z = unit_solver_->solve(r);
    if (!z) return false;
    bool negative = std::any_of(z->begin(), z->end(), [](const Integer& v) { return v < 0; });
    Integer k = 0;
    if (negative) {
      const IntVector& rel = positive_unit_relation();
      for (std::size_t j = 0; j < z->size(); ++j)
        if ((*z)[j] < 0) {
          Integer need = (-(*z)[j] + rel[j] - 1) / rel[j];
          if (need > k) k = need;
        }
      for (std::size_t j = 0; j < z->size(); ++j) (*z)[j] += k * rel[j];
    }
    for (std::size_t j = 0; j < units_.size(); ++j) coeff[units_[j]] = (*z)[j];
    return true;
  };

  std::function<bool(std::size_t, const IntVector&, const IntVector&)> search =
      [&](std::size_t k, const IntVector& res, const IntVector& rw) -> bool {
    if (k == search_order_.size()) return finish(res);
    std::size_t i = search_order_[k];
    Integer budget = dot(grading_, rw);
    const Integer& deg = degrees_[i];
    if (k + 1 == search_order_.size()) {
      if (budget % deg != 0) return false;
      Integer c = budget / deg;
      IntVector nrw = subtract(rw, scale(c, coords_[i]));
      if (!cone_.contains(nrw)) return false;
      coeff[i] = c;
      if (finish(subtract(res, scale(c, gens[i])))) return true;
      coeff[i] = 0;
      return false;
    }
    for (Integer c = budget / deg; c >= 0; --c) {
      IntVector nrw = subtract(rw, scale(c, coords_[i]));
      if (!cone_.contains(nrw)) continue;
      coeff[i] = c;
      if (search(k + 1, subtract(res, scale(c, gens[i])), nrw)) return true;
    }
    coeff[i] = 0;
    return false;
  };

  if (!search(0, x, *w0)) return std::nullopt;
  return coeff;
}

IntegerMatrix MonoidStructure::ambient_facet_functionals() const {
  const std::size_t r = monoid_.ambient().free_rank;
  const std::size_t s = lattice_.cols();
  IntegerMatrix out(cone_.facets.size(), r);
  if (s == 0) return out;
  SmithForm snf = smith_normal_form(lattice_);
  Integer e = 1;
  for (const auto& d : snf.invariant_factors) e = lcm(e, d);
  // left inverse of the lattice basis, scaled by e: V diag(e/d) U_top
  IntegerMatrix dplus(s, r);
  for (std::size_t i = 0; i < s; ++i) dplus(i, i) = e / snf.invariant_factors[i];
  IntegerMatrix left_inv = snf.right * dplus * snf.left;
  for (std::size_t f = 0; f < cone_.facets.size(); ++f) {
    IntVector row = primitive(left_inv.transpose() * cone_.facets[f]);
    for (std::size_t j = 0; j < r; ++j) out(f, j) = row[j];
  }
  return out;
}

// ---- operations -----------------------------------------------------------

std::optional<MembershipCertificate> membership(const AffineMonoid& m, const IntVector& x) {
  return MonoidStructure(m).membership(x);
}

AffineMonoid saturate(const AffineMonoid& m) {
  MonoidStructure st(m);
  std::vector<IntVector> gens;
  if (st.rank() > 0) {
    auto lp = cone::lattice_points(st.generator_coordinates(), st.rank());
    std::vector<IntVector> hb;
    for (const auto& h : lp.hilbert_basis) hb.push_back(st.lift(h));
    std::sort(hb.begin(), hb.end());
    gens = hb;
    for (const auto& l : lp.lineality_basis) {
      IntVector u = st.lift(l);
      gens.push_back(u);
      gens.push_back(m.ambient().reduce(negate(u)));
    }
  }
  for (const auto& t : st.gp_torsion()) gens.push_back(t);
  return AffineMonoid(m.ambient(), gens);
}

UnitsAndSharpQuotient units_and_sharp_quotient(const AffineMonoid& m) {
  MonoidStructure st(m);
  const AbelianGroup& amb = m.ambient();
  const std::size_t dim = amb.dimension();
  std::vector<IntVector> ug;
  for (auto i : st.unit_generators()) ug.push_back(m.generators()[i]);
  IntegerMatrix gu = IntegerMatrix::from_columns(ug, dim);

  UnitsAndSharpQuotient out;
  // canonical generators of the preimage of M^* in Z^dim
  IntegerMatrix canon = lattice_basis(with_relations(amb, gu));
  if (canon.rows() != dim) canon = IntegerMatrix(dim, 0);
  out.unit_group = subgroup_structure(amb, gu).group;
  for (std::size_t j = 0; j < canon.cols(); ++j) {
    IntVector u = amb.reduce(canon.column(j));
    if (!is_zero(u)) out.unit_generators.push_back(u);
  }
  Quotient q = cokernel(canon);
  out.projection = q.projection;
  std::vector<IntVector> sharp;
  for (auto i : st.sharp_generators()) sharp.push_back(q.project(m.generators()[i]));
  out.sharp = AffineMonoid(q.group, sharp);
  if (!MonoidStructure(out.sharp).unit_generators().empty())
    throw std::logic_error("sharp quotient still has units");
  return out;
}

MonoidProperties classify(const AffineMonoid& m) {
  MonoidStructure st(m);
  MonoidProperties p;
  p.dimension = st.rank();
  p.sharp = st.unit_generators().empty();
  AffineMonoid sat = saturate(m);
  p.saturated = std::all_of(sat.generators().begin(), sat.generators().end(),
                            [&](const IntVector& g) { return st.contains(g); });
  p.fs = p.saturated;
  return p;
}

bool same_monoid(const AffineMonoid& a, const AffineMonoid& b) {
  if (a.ambient() != b.ambient()) return false;
  MonoidStructure sa(a), sb(b);
  for (const auto& g : a.generators())
    if (!sb.contains(g)) return false;
  for (const auto& g : b.generators())
    if (!sa.contains(g)) return false;
  return true;
}

std::vector<IntVector> hilbert_basis(const AffineMonoid& m) {
  MonoidProperties p = classify(m);
  if (!p.sharp || !p.saturated) throw PreconditionError("Hilbert basis requires a sharp fs monoid");
  std::vector<IntVector> hb = saturate(m).generators();
  std::sort(hb.begin(), hb.end());
  return hb;
}

CanonicalForm canonical_form(const AffineMonoid& m) {
  if (!classify(m).saturated) throw PreconditionError("canonical form requires a saturated monoid");
  UnitsAndSharpQuotient q = units_and_sharp_quotient(m);
  CanonicalForm c;
  c.ambient = m.ambient();
  std::vector<IntVector> fu;
  for (const auto& u : q.unit_generators) fu.push_back(free_part_of(u, m.ambient().free_rank));
  c.unit_lattice = lattice_basis(IntegerMatrix::from_columns(fu, m.ambient().free_rank));
  c.unit_group = q.unit_group;
  std::vector<IntVector> hb = saturate(q.sharp).generators();
  std::sort(hb.begin(), hb.end());
  c.sharp_quotient = AffineMonoid(q.sharp.ambient(), hb);
  return c;
}

std::optional<IntVector> IntrinsicForm::to_intrinsic(const IntVector& x) const {
  auto c = solver.solve(x);
  if (!c) return std::nullopt;
  return coordinates.project(*c);
}

IntrinsicForm intrinsic(const AffineMonoid& m) {
  IntegerMatrix g = m.generator_matrix();
  Quotient q = subgroup_structure(m.ambient(), g);
  std::vector<IntVector> gens;
  for (std::size_t i = 0; i < m.generator_count(); ++i) {
    IntVector e(m.generator_count(), 0);
    e[i] = 1;
    gens.push_back(q.project(e));
  }
  IntegerMatrix emb = g * q.lift;
  for (std::size_t i = 0; i < emb.rows(); ++i)
    for (std::size_t j = 0; j < emb.cols(); ++j)
      if (i >= m.ambient().free_rank) {
        Integer d = m.ambient().torsion[i - m.ambient().free_rank];
        mpz_fdiv_r(emb(i, j).get_mpz_t(), emb(i, j).get_mpz_t(), d.get_mpz_t());
      }
  return IntrinsicForm{AffineMonoid(q.group, gens), emb, q, GroupSolver(g, m.ambient())};
}

// ---- homomorphisms --------------------------------------------------------

MonoidHom make_hom(AffineMonoid domain, AffineMonoid codomain, IntegerMatrix group_map) {
  if (group_map.rows() != codomain.ambient().dimension() ||
      group_map.cols() != domain.ambient().dimension())
    throw std::invalid_argument("group map has the wrong shape");
  if (!is_homomorphism(domain.ambient(), codomain.ambient(), group_map))
    throw std::invalid_argument("matrix is not a homomorphism of the ambient groups");
  MonoidHom u{std::move(domain), std::move(codomain), std::move(group_map)};
  MonoidStructure cod(u.codomain);
  for (const auto& g : u.domain.generators())
    if (!cod.contains(u.apply(g)))
      throw std::invalid_argument("image of generator " + to_string(g) + " is not in the codomain");
  return u;
}

MonoidHom exact_embedding(const AffineMonoid& p) {
  MonoidStructure st(p);
  if (!st.unit_generators().empty()) throw PreconditionError("exact embedding requires a sharp monoid");
  if (!classify(p).saturated) throw PreconditionError("exact embedding requires a saturated monoid");
  SmithForm snf = smith_normal_form(st.lattice_basis());
  for (const auto& d : snf.invariant_factors)
    if (d != 1)
      throw PreconditionError(
          "facet functionals are not integral on the ambient; pass the monoid in intrinsic form");
  IntegerMatrix phi = st.ambient_facet_functionals();
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < phi.rows(); ++i) {
    IntVector row = phi.row(i);
    row.resize(p.ambient().dimension(), 0);
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end());
  return make_hom(p, AffineMonoid::free(rows.size()),
                  IntegerMatrix::from_rows(rows, p.ambient().dimension()));
}

MonoidHom splitting_section(const MonoidHom& f) {
  const AffineMonoid& q = f.codomain;
  const std::size_t r = q.ambient().free_rank;
  MonoidStructure sq(q);
  if (!q.ambient().is_torsion_free() || sq.rank() != r || sq.lattice_basis() != IntegerMatrix::identity(r))
    throw PreconditionError("codomain must be given inside its own groupification");
  MonoidProperties pq = classify(q);
  if (!pq.sharp || !pq.saturated) throw PreconditionError("codomain must be sharp and fs");

  const AffineMonoid& m = f.domain;
  std::vector<IntVector> images;
  for (const auto& g : m.generators()) images.push_back(f.apply(g));
  MonoidStructure image(AffineMonoid(q.ambient(), images));
  for (const auto& g : q.generators())
    if (!image.contains(g)) throw PreconditionError("map is not surjective: misses " + to_string(g));

  MonoidStructure sm(m);
  IntegerMatrix gm = m.generator_matrix();
  IntegerMatrix fg = f.group_map * gm;
  IntegerMatrix ker = integer_kernel(fg);
  for (std::size_t j = 0; j < ker.cols(); ++j) {
    IntVector k = m.ambient().reduce(gm * ker.column(j));
    if (!sm.contains(k) || !sm.contains(m.ambient().reduce(negate(k))))
      throw PreconditionError("kernel element " + to_string(k) + " is not a unit of the domain");
  }

  IntegerSolver solver(fg);
  IntegerMatrix sigma(m.ambient().dimension(), r);
  for (std::size_t k = 0; k < r; ++k) {
    IntVector e(r, 0);
    e[k] = 1;
    auto c = solver.solve(e);
    if (!c) throw PreconditionError("groupified map is not surjective");
    IntVector col = m.ambient().reduce(gm * *c);
    for (std::size_t i = 0; i < col.size(); ++i) sigma(i, k) = col[i];
  }
  return make_hom(q, m, sigma);
}

FractionalRefinement fractional_refinement(const AffineMonoid& p, unsigned long n) {
  if (n == 0) throw std::invalid_argument("refinement level must be positive");
  if (!p.ambient().is_torsion_free()) throw PreconditionError("refinement requires a torsion-free ambient");
  IntegerMatrix m = IntegerMatrix::identity(p.ambient().dimension());
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) = static_cast<long>(n);
  return FractionalRefinement{p, make_hom(p, p, m)};
}

}  // namespace logchart
