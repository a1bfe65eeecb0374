#include "logchart/cohomology.hpp"

#include "logchart/errors.hpp"
#include "logchart/parallel.hpp"

#include <functional>
#include <stdexcept>

namespace logchart {

namespace {

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

IntegerMatrix inverse_on_group(const IntegerMatrix& phi, const AbelianGroup& target) {
  IntegerMatrix inv(phi.cols(), target.dimension());
  for (std::size_t k = 0; k < target.dimension(); ++k) {
    IntVector e(target.dimension(), 0);
    e[k] = 1;
    auto c = solve_in_group(phi, target, e);
    if (!c) throw std::logic_error("canonical map is not surjective");
    for (std::size_t i = 0; i < c->size(); ++i) inv(i, k) = (*c)[i];
  }
  return inv;
}

}  // namespace

CechComplexBuilder::CechComplexBuilder(const MonoidHom& u, std::uint64_t prime, std::size_t length)
    : original_(u),
      prime_(prime),
      length_(length),
      q_form_(intrinsic(u.codomain)),
      q_structure_(q_form_.monoid),
      p_structure_(intrinsic(u.domain).monoid),
      base_solver_(IntegerMatrix(), AbelianGroup{}) {
  if (!is_prime_u64(prime)) throw std::invalid_argument("coefficient field characteristic must be prime");
  if (length < 2) throw std::invalid_argument("Cech complex needs at least two terms");
  KummerVerdict kv = is_kummer(u);
  if (!kv.kummer) throw PreconditionError("Cech complex requires a Kummer map: " + kv.reason);
  galois_ = *kv.galois_group;
  if (galois_.order() % prime == 0)
    throw PreconditionError("characteristic " + std::to_string(prime) + " divides the Galois order " +
                            galois_.order().get_str() + "; the cover is not a standard Kummer cover");

  for (std::size_t j = 1; j < length; ++j) {
    levels_.push_back(self_product_decomposition(u, j));
    if (!levels_.back().certified)
      throw std::logic_error("self product decomposition failed: " + levels_.back().counterexample);
  }
  const SelfProductDecomposition& first = levels_.front();
  base_solver_ = GroupSolver(first.chart.group_map, first.chart.codomain.ambient());

  const AbelianGroup& g = first.galois.group;
  IntVector e(g.dimension(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == g.dimension()) {
      group_index_[e] = group_elements_.size();
      group_elements_.push_back(e);
      return;
    }
    for (Integer v = 0; v < g.torsion[i]; ++v) {
      e[i] = v;
      rec(i + 1);
    }
  };
  rec(0);

  // cofaces C^m -> C^{m+1}: insert a zero in slot i of the self product
  for (std::size_t m = 0; m + 1 < levels_.size(); ++m) {
    const auto& a = levels_[m];
    const auto& b = levels_[m + 1];
    IntegerMatrix lift = a.pushout_group.lift * inverse_on_group(a.canonical_map.group_map, a.target_sum.group);
    std::vector<IntegerMatrix> row;
    for (std::size_t i = 0; i <= m + 1; ++i) {
      IntegerMatrix shift(b.factor_sum.group.dimension(), a.factor_sum.group.dimension());
      for (std::size_t k = 0; k <= m; ++k) {
        std::size_t slot = k < i ? k : k + 1;
        shift = shift + b.factor_sum.inclusions[slot] * a.factor_sum.projections[k];
      }
      row.push_back(b.canonical_map.group_map * (b.pushout_group.projection * (shift * lift)));
    }
    cofaces_.push_back(row);
  }
}

IntVector CechComplexBuilder::to_intrinsic(const IntVector& q) const {
  auto qi = q_form_.to_intrinsic(q);
  if (!qi) throw std::invalid_argument("degree " + to_string(q) + " is not in the groupification of the codomain");
  return *qi;
}

bool CechComplexBuilder::trivial_class(const IntVector& q) const {
  return base_solver_.solve(to_intrinsic(q)).has_value();
}

std::vector<std::size_t> CechComplexBuilder::coface(std::size_t m, std::size_t i, const IntVector& qi) const {
  const auto& a = levels_[m];
  const auto& b = levels_[m + 1];
  const AbelianGroup& g = a.galois.group;
  const std::size_t size = group_elements_.size();
  const std::size_t count = power(size, m);
  std::vector<std::size_t> out(count);
  IntVector base = a.target_sum.inclusions[0] * qi;
  for (std::size_t idx = 0; idx < count; ++idx) {
    IntVector x = base;
    std::size_t rest = idx;
    for (std::size_t k = 0; k < m; ++k) {
      x = add(x, a.target_sum.inclusions[k + 1] * group_elements_[rest % size]);
      rest /= size;
    }
    IntVector y = b.target_sum.group.reduce(cofaces_[m][i] * x);
    if (q_form_.monoid.ambient().reduce(b.target_sum.projections[0] * y) != qi)
      throw std::logic_error("coface does not preserve the degree");
    std::size_t target = 0, place = 1;
    for (std::size_t k = 0; k <= m; ++k) {
      target += group_index_.at(g.reduce(b.target_sum.projections[k + 1] * y)) * place;
      place *= size;
    }
    out[idx] = target;
  }
  return out;
}

PrimeFieldComplex CechComplexBuilder::build(const IntVector& qi, bool in_codomain, bool in_base) const {
  const std::size_t size = group_elements_.size();
  std::vector<std::size_t> dims{in_base ? 1U : 0U};
  for (std::size_t m = 0; m + 1 < length_; ++m) dims.push_back(in_codomain ? power(size, m) : 0);
  std::vector<FpMatrix> diffs;
  FpMatrix aug(dims[1], dims[0], prime_);
  if (in_base) aug.set(0, 0, 1);
  diffs.push_back(aug);
  for (std::size_t m = 1; m + 1 < length_; ++m) {
    FpMatrix d(dims[m + 1], dims[m], prime_);
    if (in_codomain)
      for (std::size_t i = 0; i <= m; ++i) {
        auto map = coface(m - 1, i, qi);
        for (std::size_t c = 0; c < map.size(); ++c) d.add_to(map[c], c, i % 2 ? -1 : 1);
      }
    diffs.push_back(std::move(d));
  }
  return PrimeFieldComplex(prime_, dims, diffs);
}

PrimeFieldComplex CechComplexBuilder::complex(const IntVector& q) const {
  IntVector qi = to_intrinsic(q);
  bool in_codomain = q_structure_.contains(qi);
  bool in_base = false;
  if (auto x = base_solver_.solve(qi)) in_base = p_structure_.contains(p_structure_.monoid().ambient().reduce(*x));
  return build(qi, in_codomain, in_base);
}

std::vector<std::size_t> CechComplexBuilder::cohomology_of(const IntVector& qi, bool in_codomain,
                                                           bool in_base) const {
  const SelfProductDecomposition& first = levels_.front();
  auto key = std::make_tuple(first.galois.project(qi), in_codomain, in_base);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  PrimeFieldComplex c = build(qi, in_codomain, in_base);
  std::vector<std::size_t> result = c.dimensions();
  for (auto r : c.ranks()) result.push_back(r);
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.emplace(key, result);
  return result;
}

CechSlice CechComplexBuilder::slice(const IntVector& q) const {
  CechSlice s;
  s.degree = q;
  IntVector qi = to_intrinsic(q);
  s.in_codomain = q_structure_.contains(qi);
  if (auto x = base_solver_.solve(qi)) s.in_base = p_structure_.contains(p_structure_.monoid().ambient().reduce(*x));
  std::vector<std::size_t> data = cohomology_of(qi, s.in_codomain, s.in_base);
  s.dimensions.assign(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(length_));
  std::vector<std::size_t> ranks(data.begin() + static_cast<std::ptrdiff_t>(length_), data.end());
  s.exact = true;
  for (std::size_t i = 0; i + 1 < length_; ++i) {
    std::size_t h = s.dimensions[i] - ranks[i] - (i > 0 ? ranks[i - 1] : 0);
    s.augmented_cohomology.push_back(h);
    s.exact = s.exact && h == 0;
  }
  for (std::size_t m = 0; m + 3 <= length_; ++m)
    s.cech_cohomology.push_back(m == 0 ? s.dimensions[1] - ranks[1] : s.augmented_cohomology[m + 1]);
  return s;
}

std::vector<IntVector> CechComplexBuilder::degrees(unsigned long bound) const {
  const AbelianGroup& amb = original_.codomain.ambient();
  MonoidStructure st(original_.codomain);
  std::vector<IntVector> out;
  IntVector x(amb.dimension(), 0);
  const long b = static_cast<long>(bound);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == amb.dimension()) {
      if (st.contains(x)) out.push_back(x);
      return;
    }
    if (i < amb.free_rank) {
      for (long v = -b; v <= b; ++v) {
        x[i] = v;
        rec(i + 1);
      }
    } else {
      for (Integer v = 0; v < amb.torsion[i - amb.free_rank]; ++v) {
        x[i] = v;
        rec(i + 1);
      }
    }
  };
  rec(0);
  return out;
}

CechSlice cech_complex_degreewise(const MonoidHom& u, std::uint64_t prime, const IntVector& q, std::size_t length) {
  return CechComplexBuilder(u, prime, length).slice(q);
}

CechGroupComparison cech_vs_group_cohomology(const MonoidHom& u, std::uint64_t prime, std::size_t max_degree,
                                             unsigned long degree_bound) {
  if (degree_bound == 0) throw std::invalid_argument("degree bound must be positive");
  CechComplexBuilder builder(u, prime, max_degree + 3);
  CechGroupComparison out;
  out.prime = prime;
  out.max_degree = max_degree;
  out.degree_bound = degree_bound;
  out.group_cohomology = finite_group_cohomology(builder.galois_group(), prime, max_degree);

  auto summarize = [&](unsigned long bound, std::vector<std::size_t>& trivial, std::vector<std::size_t>& other,
                       bool& consistent, bool& exact, std::size_t& count) {
    std::vector<IntVector> qs = builder.degrees(bound);
    std::vector<CechSlice> slices(qs.size());
    parallel_for(qs.size(), [&](std::size_t k) { slices[k] = builder.slice(qs[k]); });
    trivial.clear();
    other.assign(max_degree + 1, 0);
    consistent = true;
    exact = true;
    count = qs.size();
    for (std::size_t k = 0; k < qs.size(); ++k) {
      const CechSlice& s = slices[k];
      exact = exact && s.exact;
      if (builder.trivial_class(qs[k])) {
        if (trivial.empty()) trivial = s.cech_cohomology;
        else if (trivial != s.cech_cohomology) consistent = false;
      } else {
        for (std::size_t i = 0; i <= max_degree; ++i) other[i] += s.cech_cohomology[i];
      }
    }
  };

  summarize(degree_bound, out.cech_trivial_class, out.cech_other_classes, out.consistent, out.exact_everywhere,
            out.degrees_examined);
  std::vector<std::size_t> t2, o2;
  bool c2 = true, e2 = true;
  std::size_t n2 = 0;
  summarize(degree_bound - 1, t2, o2, c2, e2, n2);
  out.stable = (t2 == out.cech_trivial_class) && (o2 == out.cech_other_classes) && c2 && e2;
  bool others_vanish = true;
  for (auto v : out.cech_other_classes) others_vanish = others_vanish && v == 0;
  out.match = out.exact_everywhere && out.consistent && out.stable && others_vanish &&
              out.cech_trivial_class == out.group_cohomology;
  return out;
}

}  // namespace logchart
