#include "logchart/covers.hpp"

#include "logchart/errors.hpp"
#include "logchart/parallel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace logchart::covers {

namespace {

std::vector<unsigned long> divisors(unsigned long n) {
  std::vector<unsigned long> d;
  for (unsigned long k = 1; k <= n; ++k)
    if (n % k == 0) d.push_back(k);
  return d;
}

void check_level(const LogPoint& pt, unsigned long n) {
  if (n == 0) throw std::invalid_argument("level must be positive");
  for (auto q : pt.excluded_primes)
    if (n % q == 0)
      throw PreconditionError("level " + std::to_string(n) + " is divisible by excluded prime " +
                              std::to_string(q));
}

IntegerMatrix scalar(std::size_t r, const Integer& k) {
  IntegerMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i) m(i, i) = k;
  return m;
}

// Columns of the lattice basis (transpose of the Hermite rows).
IntegerMatrix basis_columns(const CoverDescriptor& c) { return c.subgroup.transpose(); }

// G = L / n Z^r with generators as level-coordinate vectors.
struct GaloisData {
  Quotient quotient;                 // L coordinates -> G
  std::vector<IntVector> generators; // level coordinates of G's generators
  IntegerMatrix basis;               // columns of L
};

GaloisData galois_data(const CoverDescriptor& c) {
  const std::size_t r = c.subgroup.rows();
  IntegerMatrix b = basis_columns(c);
  IntegerSolver solve(b);
  std::vector<IntVector> rel;
  for (std::size_t i = 0; i < r; ++i) {
    IntVector e(r, 0);
    e[i] = static_cast<long>(c.level);
    rel.push_back(*solve.solve(e));
  }
  GaloisData g{cokernel(IntegerMatrix::from_columns(rel, r)), {}, b};
  for (std::size_t k = 0; k < g.quotient.group.dimension(); ++k)
    g.generators.push_back(b * g.quotient.lift.column(k));
  return g;
}

Integer mod(const Integer& a, unsigned long n) {
  Integer r;
  Integer nn = n;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), nn.get_mpz_t());
  return r;
}

}  // namespace

LogPoint make_log_point(const AffineMonoid& p, std::vector<unsigned long> excluded_primes) {
  for (auto q : excluded_primes)
    if (!is_prime(q)) throw std::invalid_argument("excluded prime " + std::to_string(q) + " is not prime");
  MonoidProperties props = classify(p);
  if (!props.sharp || !props.fs) throw PreconditionError("log point monoid must be sharp and fs");
  std::sort(excluded_primes.begin(), excluded_primes.end());
  excluded_primes.erase(std::unique(excluded_primes.begin(), excluded_primes.end()), excluded_primes.end());
  return LogPoint{intrinsic(p).monoid, excluded_primes};
}

IntegerMatrix TowerDescriptor::transition_from(unsigned long m) const {
  if (m == 0 || level % m != 0) throw std::invalid_argument("level does not refine the given level");
  return scalar(base.sharp_monoid.ambient().dimension(), Integer(level / m));
}

Pi1Descriptor pi1_descriptor(const LogPoint& pt) {
  return Pi1Descriptor{pt.sharp_monoid.ambient().free_rank, pt.excluded_primes};
}

std::string CoverDescriptor::to_string() const {
  std::ostringstream os;
  os << "level " << level << " G=" << galois_group.to_string() << " Q=" << monoid.to_string();
  return os.str();
}

CoverDescriptor cover_from_lattice(const LogPoint& pt, unsigned long n, const IntegerMatrix& rows) {
  check_level(pt, n);
  const std::size_t r = pt.sharp_monoid.ambient().dimension();
  IntegerMatrix h = hermite_normal_form(rows);
  if (h.rows() != r) throw std::invalid_argument("lattice does not have full rank");
  IntegerMatrix b = h.transpose();
  IntegerSolver solve(b);
  for (std::size_t i = 0; i < r; ++i) {
    IntVector e(r, 0);
    e[i] = static_cast<long>(n);
    if (!solve.solve(e)) throw std::invalid_argument("lattice does not contain n Z^r");
  }
  std::vector<IntVector> local;
  for (const auto& g : pt.sharp_monoid.generators()) local.push_back(*solve.solve(scale(Integer(n), g)));
  std::vector<IntVector> gens;
  if (r > 0)
    for (const auto& x : cone::lattice_points(local, r).hilbert_basis) gens.push_back(b * x);
  std::sort(gens.begin(), gens.end());
  CoverDescriptor c;
  c.level = n;
  c.subgroup = h;
  c.monoid = AffineMonoid(AbelianGroup::free(r), gens);
  c.chart = make_hom(pt.sharp_monoid, c.monoid, scalar(r, Integer(n)));
  c.galois_group = FiniteAbelianGroup::from_group(galois_data(c).quotient.group);
  return c;
}

std::vector<CoverDescriptor> classify_covers(const LogPoint& pt, unsigned long n) {
  check_level(pt, n);
  const std::size_t r = pt.sharp_monoid.ambient().dimension();
  std::vector<IntegerMatrix> lattices;
  IntegerMatrix h(r, r);
  auto contains_nzr = [&](const IntegerMatrix& m) {
    IntegerSolver s(m.transpose());
    for (std::size_t i = 0; i < r; ++i) {
      IntVector e(r, 0);
      e[i] = static_cast<long>(n);
      if (!s.solve(e)) return false;
    }
    return true;
  };
  // rows upper triangular, diagonal divides n, entries above a pivot reduced
  std::function<void(std::size_t)> diag = [&](std::size_t j) {
    if (j == r) {
      std::vector<std::pair<std::size_t, std::size_t>> cells;
      for (std::size_t c = 0; c < r; ++c)
        for (std::size_t i = 0; i < c; ++i) cells.emplace_back(i, c);
      std::function<void(std::size_t)> fill = [&](std::size_t k) {
        if (k == cells.size()) {
          if (contains_nzr(h)) lattices.push_back(h);
          return;
        }
        auto [i, c] = cells[k];
        for (Integer v = 0; v < h(c, c); ++v) {
          h(i, c) = v;
          fill(k + 1);
        }
        h(i, c) = 0;
      };
      fill(0);
      return;
    }
    for (auto d : divisors(n)) {
      h(j, j) = static_cast<long>(d);
      diag(j + 1);
    }
  };
  diag(0);
  std::vector<CoverDescriptor> out(lattices.size());
  parallel_for(lattices.size(), [&](std::size_t i) { out[i] = cover_from_lattice(pt, n, lattices[i]); });
  return out;
}

CoverDescriptor refine(const LogPoint& pt, const CoverDescriptor& c, unsigned long n) {
  if (n % c.level != 0) throw std::invalid_argument("refinement level must be a multiple of the cover level");
  const std::size_t r = c.subgroup.rows();
  IntegerMatrix rows = c.subgroup;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) rows(i, j) *= static_cast<long>(n / c.level);
  return cover_from_lattice(pt, n, rows.vconcat(scalar(r, Integer(n))));
}

Integer hom_count(const LogPoint& pt, const CoverDescriptor& q1, const CoverDescriptor& q2) {
  if (q1.chart.domain != pt.sharp_monoid || q2.chart.domain != pt.sharp_monoid)
    throw std::invalid_argument("covers are not over the given log point");
  unsigned long m = std::lcm(q1.level, q2.level);
  CoverDescriptor a = q1.level == m ? q1 : refine(pt, q1, m);
  CoverDescriptor b = q2.level == m ? q2 : refine(pt, q2, m);
  MonoidStructure sa(a.monoid);
  for (const auto& g : b.monoid.generators())
    if (!sa.contains(g)) return 0;
  return b.galois_group.order();
}

EquivariantFiniteSet fiber_functor(const LogPoint& pt, const CoverDescriptor& q, unsigned long level) {
  Integer e = q.galois_group.exponent();
  if (level == 0 || Integer(level) % e != 0)
    throw PreconditionError("level " + std::to_string(level) + " is not a multiple of the Galois exponent " +
                            e.get_str());
  const std::size_t r = pt.sharp_monoid.ambient().dimension();
  GaloisData g = galois_data(q);
  const IntVector& orders = g.quotient.group.torsion;
  EquivariantFiniteSet s;
  s.level = level;
  s.rank = r;

  IntVector chi(orders.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == orders.size()) {
      s.elements.push_back(chi);
      return;
    }
    Integer step = Integer(level) / orders[i];
    for (Integer t = 0; t < orders[i]; ++t) {
      chi[i] = t * step;
      rec(i + 1);
    }
  };
  rec(0);
  std::map<IntVector, std::size_t> index;
  for (std::size_t i = 0; i < s.elements.size(); ++i) index[s.elements[i]] = i;

  // <e_k, y> for y in level coordinates with e y in n Z^r
  const Integer scale_up = Integer(level) / e;
  for (std::size_t k = 0; k < r; ++k) {
    IntVector shift(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) {
      Integer v = g.generators[i][k] * e;
      if (v % q.level != 0) throw std::logic_error("Galois generator is not killed by the exponent");
      shift[i] = mod((v / q.level) * scale_up, level);
    }
    std::vector<std::size_t> perm;
    for (const auto& x : s.elements) {
      IntVector y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = mod(x[i] + shift[i], level);
      perm.push_back(index.at(y));
    }
    s.actions.push_back(perm);
  }
  return s;
}

std::vector<std::size_t> restriction_map(const LogPoint& pt, const CoverDescriptor& q1,
                                         const CoverDescriptor& q2, unsigned long level) {
  if (q1.level != q2.level) throw std::invalid_argument("covers must share a level");
  EquivariantFiniteSet s1 = fiber_functor(pt, q1, level), s2 = fiber_functor(pt, q2, level);
  GaloisData g1 = galois_data(q1), g2 = galois_data(q2);
  IntegerSolver in_l1(g1.basis);
  std::vector<IntVector> coords;  // G2 generators in G1 coordinates
  for (const auto& y : g2.generators) {
    auto c = in_l1.solve(y);
    if (!c) throw std::invalid_argument("second cover is not contained in the first");
    coords.push_back(g1.quotient.project(*c));
  }
  std::map<IntVector, std::size_t> index;
  for (std::size_t i = 0; i < s2.elements.size(); ++i) index[s2.elements[i]] = i;
  std::vector<std::size_t> out;
  for (const auto& chi : s1.elements) {
    IntVector res;
    for (const auto& c : coords) res.push_back(mod(dot(c, chi), level));
    out.push_back(index.at(res));
  }
  return out;
}

Integer count_equivariant_maps(const EquivariantFiniteSet& s, const EquivariantFiniteSet& t) {
  if (s.actions.size() != t.actions.size()) throw std::invalid_argument("actions of different groups");
  const std::size_t n = s.elements.size(), m = t.elements.size();
  if (m == 0) return n == 0 ? 1 : 0;
  std::vector<std::size_t> f(n, 0);
  Integer count = 0;
  // exhaustive enumeration of all m^n functions
  while (true) {
    bool ok = true;
    for (std::size_t a = 0; a < s.actions.size() && ok; ++a)
      for (std::size_t x = 0; x < n && ok; ++x)
        if (f[s.actions[a][x]] != t.actions[a][f[x]]) ok = false;
    if (ok) ++count;
    std::size_t i = 0;
    while (i < n && ++f[i] == m) f[i++] = 0;
    if (i == n) break;
  }
  return count;
}

CorrespondenceReport galois_correspondence_check(const LogPoint& pt, unsigned long n) {
  CorrespondenceReport rep;
  rep.level = n;
  rep.covers = classify_covers(pt, n);
  const std::size_t c = rep.covers.size();
  std::vector<EquivariantFiniteSet> fibers(c);
  parallel_for(c, [&](std::size_t i) { fibers[i] = fiber_functor(pt, rep.covers[i], n); });
  rep.pairs.resize(c * c);
  parallel_for(c * c, [&](std::size_t k) {
    std::size_t i = k / c, j = k % c;
    rep.pairs[k] = PairCheck{i, j, hom_count(pt, rep.covers[i], rep.covers[j]),
                             count_equivariant_maps(fibers[i], fibers[j])};
  });
  for (const auto& p : rep.pairs) rep.pass = rep.pass && p.match();
  return rep;
}

}  // namespace logchart::covers
