#include "logchart/morphism.hpp"

#include "logchart/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace logchart {

namespace {

// u re-expressed between the groupifications of P and Q.
struct IntrinsicHom {
  IntrinsicForm p;
  IntrinsicForm q;
  IntegerMatrix map;  // P^gp coords -> Q^gp coords
};

IntrinsicHom intrinsic_hom(const MonoidHom& u) {
  IntrinsicHom h{intrinsic(u.domain), intrinsic(u.codomain), {}};
  const AbelianGroup& pg = h.p.monoid.ambient();
  const AbelianGroup& qg = h.q.monoid.ambient();
  h.map = IntegerMatrix(qg.dimension(), pg.dimension());
  for (std::size_t k = 0; k < pg.dimension(); ++k) {
    auto y = h.q.to_intrinsic(u.apply(h.p.embedding.column(k)));
    if (!y) throw std::logic_error("u^gp does not land in Q^gp");
    for (std::size_t i = 0; i < y->size(); ++i) h.map(i, k) = (*y)[i];
  }
  return h;
}

KernelCokernel kernel_cokernel_of(const IntrinsicHom& h) {
  const AbelianGroup& pg = h.p.monoid.ambient();
  const AbelianGroup& qg = h.q.monoid.ambient();
  IntegerMatrix k = kernel_in_group(h.map, qg);
  return KernelCokernel{subgroup_structure(pg, k).group, quotient_group(qg, h.map).group};
}

Integer torsion_order(const AbelianGroup& g) {
  Integer n = 1;
  for (const auto& t : g.torsion) n *= t;
  return n;
}

}  // namespace

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool invertible_in_characteristic(const Integer& n, unsigned long p) {
  if (p == 0) return true;
  return n % p != 0;
}

KernelCokernel gp_kernel_cokernel(const MonoidHom& u) { return kernel_cokernel_of(intrinsic_hom(u)); }

ExactnessVerdict is_exact(const MonoidHom& u) {
  MonoidStructure sq(u.codomain);
  if (!classify(u.codomain).saturated) throw PreconditionError("exactness test requires a saturated codomain");
  MonoidStructure sp(u.domain);
  const std::size_t rp = u.domain.ambient().free_rank;
  const std::size_t rq = u.codomain.ambient().free_rank;
  const std::size_t s = sp.rank();

  std::vector<IntVector> candidates;
  if (s > 0) {
    IntegerMatrix a = sq.ambient_facet_functionals() * u.group_map.row_block(0, rq).column_block(0, rp) *
                      sp.lattice_basis();
    cone::InequalityCone c = cone::from_inequalities(a, s);
    auto lp = cone::lattice_points(c.generators(), s);
    std::sort(lp.hilbert_basis.begin(), lp.hilbert_basis.end());
    for (const auto& h : lp.hilbert_basis) candidates.push_back(sp.lift(h));
    for (const auto& l : lp.lineality_basis) {
      IntVector x = sp.lift(l);
      candidates.push_back(x);
      candidates.push_back(u.domain.ambient().reduce(negate(x)));
    }
  }
  for (const auto& t : sp.gp_torsion()) candidates.push_back(t);

  for (const auto& x : candidates)
    if (!sp.contains(x)) return ExactnessVerdict{false, x};
  return ExactnessVerdict{true, std::nullopt};
}

KummerVerdict is_kummer(const MonoidHom& u) {
  IntrinsicHom h = intrinsic_hom(u);
  KernelCokernel kc = kernel_cokernel_of(h);
  if (!kc.kernel.is_trivial()) return KummerVerdict{false, std::nullopt, "u^gp is not injective"};
  if (!kc.cokernel.is_finite()) return KummerVerdict{false, std::nullopt, "cokernel of u^gp is infinite"};
  Integer e = kc.cokernel.torsion_exponent();
  MonoidStructure sp(u.domain);
  const AbelianGroup& qg = h.q.monoid.ambient();
  for (const auto& q : u.codomain.generators()) {
    IntVector y = scale(e, *h.q.to_intrinsic(q));
    auto c = solve_in_group(h.map, qg, qg.reduce(y));
    if (!c) throw std::logic_error("exponent does not annihilate the cokernel");
    IntVector x = u.domain.ambient().reduce(h.p.embedding * h.p.monoid.ambient().reduce(*c));
    if (!sp.in_saturation(x))
      return KummerVerdict{false, std::nullopt,
                           "no multiple of generator " + to_string(q) + " lies in the image of P"};
  }
  return KummerVerdict{true, FiniteAbelianGroup::from_group(kc.cokernel), ""};
}

ChartClassification chart_classification(const MonoidHom& u, unsigned long p) {
  if (p != 0 && !is_prime(p)) throw std::invalid_argument("residue characteristic must be 0 or a prime");
  if (!classify(u.domain).fs || !classify(u.codomain).fs)
    throw PreconditionError("chart classification requires fs domain and codomain");
  ChartClassification c;
  c.residue_characteristic = p;
  KernelCokernel kc = gp_kernel_cokernel(u);
  c.injective = kc.kernel.is_trivial();
  c.exact = is_exact(u).exact;
  KummerVerdict kv = is_kummer(u);
  c.kummer = kv.kummer;
  c.galois_group = kv.galois_group;
  const bool kernel_ok = kc.kernel.is_finite() && invertible_in_characteristic(kc.kernel.order(), p);
  c.log_smooth = kernel_ok && invertible_in_characteristic(torsion_order(kc.cokernel), p);
  c.log_etale = kernel_ok && kc.cokernel.is_finite() && invertible_in_characteristic(kc.cokernel.order(), p);
  c.kummer_etale = c.kummer && invertible_in_characteristic(kv.galois_group->order(), p);
  return c;
}

Integer ramification_index(const MonoidHom& u) {
  KummerVerdict kv = is_kummer(u);
  if (!kv.kummer) throw PreconditionError("ramification index requires a Kummer map: " + kv.reason);
  return kv.galois_group->exponent();
}

SelfProductDecomposition self_product_decomposition(const MonoidHom& u, std::size_t j) {
  if (j == 0) throw std::invalid_argument("number of factors must be positive");
  KummerVerdict kv = is_kummer(u);
  if (!kv.kummer) throw PreconditionError("self product decomposition requires a Kummer map: " + kv.reason);
  IntrinsicHom h = intrinsic_hom(u);
  const AffineMonoid& q = h.q.monoid;
  const AbelianGroup& qg = q.ambient();
  const std::size_t dp = h.p.monoid.ambient().dimension();

  SelfProductDecomposition out;
  out.factors = j;
  out.chart = make_hom(h.p.monoid, q, h.map);
  out.galois_group = *kv.galois_group;

  DirectProduct prod = direct_product(std::vector<AbelianGroup>(j, qg));
  std::vector<IntVector> rels;
  for (std::size_t i = 1; i < j; ++i)
    for (std::size_t k = 0; k < dp; ++k) {
      IntVector y = h.map.column(k);
      rels.push_back(subtract(prod.inclusions[0] * y, prod.inclusions[i] * y));
    }
  Quotient qj = quotient_group(prod.group, IntegerMatrix::from_columns(rels, prod.group.dimension()));
  std::vector<IntegerMatrix> ins;
  std::vector<IntVector> fine_gens;
  for (std::size_t i = 0; i < j; ++i) {
    ins.push_back(qj.projection * prod.inclusions[i]);
    for (const auto& g : q.generators()) fine_gens.push_back(qj.group.reduce(ins[i] * g));
  }
  out.self_product = saturate(AffineMonoid(qj.group, fine_gens));
  for (std::size_t i = 0; i < j; ++i) out.insertions.push_back(make_hom(q, out.self_product, ins[i]));

  Quotient gq = quotient_group(qg, h.map);
  std::vector<AbelianGroup> tf{qg};
  for (std::size_t i = 1; i < j; ++i) tf.push_back(gq.group);
  DirectProduct tgt = direct_product(tf);
  IntegerMatrix phi_raw(tgt.group.dimension(), prod.group.dimension());
  for (std::size_t i = 0; i < j; ++i) {
    phi_raw = phi_raw + tgt.inclusions[0] * prod.projections[i];
    if (i > 0) phi_raw = phi_raw + tgt.inclusions[i] * (gq.projection * prod.projections[i]);
  }
  IntegerMatrix phi = phi_raw * qj.lift;

  std::vector<IntVector> target_gens;
  for (const auto& g : q.generators()) target_gens.push_back(tgt.inclusions[0] * g);
  for (std::size_t i = 1; i < j; ++i)
    for (std::size_t k = 0; k < gq.group.dimension(); ++k) target_gens.push_back(tgt.inclusions[i].column(k));
  out.target = AffineMonoid(tgt.group, target_gens);
  out.canonical_map = MonoidHom{out.self_product, out.target, phi};
  out.factor_sum = prod;
  out.pushout_group = qj;
  out.target_sum = tgt;
  out.galois = gq;

  if (!is_isomorphism(qj.group, tgt.group, phi)) {
    out.counterexample = "canonical map is not an isomorphism of groups";
    return out;
  }
  MonoidStructure st(out.target), ss(out.self_product);
  for (const auto& g : out.self_product.generators())
    if (!st.contains(out.canonical_map.apply(g))) {
      out.counterexample = "image of " + to_string(g) + " is not in the target monoid";
      return out;
    }
  for (const auto& t : out.target.generators()) {
    auto c = solve_in_group(phi, tgt.group, t);
    IntVector x = qj.group.reduce(*c);
    if (!ss.contains(x)) {
      out.counterexample = "preimage " + to_string(x) + " of " + to_string(t) + " is not in the self product";
      return out;
    }
  }
  out.certified = true;
  return out;
}

unsigned long abhyankar_index(const MonoidHom& u) {
  KummerVerdict kv = is_kummer(u);
  if (!kv.kummer) throw PreconditionError("Abhyankar index requires a Kummer map: " + kv.reason);
  IntrinsicHom h = intrinsic_hom(u);
  if (!h.p.monoid.ambient().is_torsion_free() || !h.q.monoid.ambient().is_torsion_free())
    throw PreconditionError("Abhyankar index requires torsion-free groupifications");
  const std::size_t r = h.map.rows();
  SmithForm snf = smith_normal_form(h.map);
  Integer e = 1;
  for (const auto& d : snf.invariant_factors) e = lcm(e, d);
  IntegerMatrix scaled(r, r);
  for (std::size_t i = 0; i < r; ++i) scaled(i, i) = e / snf.invariant_factors[i];
  IntegerMatrix inv = snf.right * scaled * snf.left;  // e * map^{-1}

  // x_q = numerators / e for each generator q
  std::vector<IntVector> numerators;
  Integer n0 = 1;
  for (const auto& g : h.q.monoid.generators()) {
    IntVector num = inv * g;
    for (const auto& a : num) {
      Integer den = e / gcd(a, e);
      n0 = lcm(n0, den);
    }
    numerators.push_back(num);
  }
  MonoidStructure sp(h.p.monoid);
  auto contained = [&](unsigned long n) {
    for (const auto& num : numerators) {
      IntVector x = scale(Integer(n), num);
      for (auto& a : x) {
        if (a % e != 0) return false;
        a /= e;
      }
      if (!sp.contains(x)) return false;
    }
    return true;
  };
  if (!n0.fits_ulong_p()) throw std::overflow_error("Abhyankar index does not fit in an unsigned long");
  unsigned long n = n0.get_ui();
  const unsigned long limit = n * kv.galois_group->exponent().get_ui();
  while (!contained(n)) {
    n += n0.get_ui();
    if (n > limit) throw std::logic_error("no refinement level contains the codomain");
  }
  for (unsigned long m = 1; m < n; ++m)
    if (contained(m)) throw std::logic_error("Abhyankar index is not minimal");
  return n;
}

}  // namespace logchart
