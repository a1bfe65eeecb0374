#include "logchart/cone.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace logchart::cone {
namespace {

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

Bits intersect(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

bool superset(const Bits& big, const Bits& small) {
  for (std::size_t i = 0; i < big.size(); ++i)
    if ((small[i] & ~big[i]) != 0) return false;
  return true;
}

std::size_t popcount(const Bits& b) {
  std::size_t n = 0;
  for (auto w : b) n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

std::size_t rank_of_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  if (rows.empty()) return 0;
  return hermite_normal_form(IntegerMatrix::from_rows(rows, cols)).rows();
}

IntegerMatrix adjugate(const IntegerMatrix& a) {
  const std::size_t n = a.rows();
  IntegerMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntegerMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = a(r, c);
        }
        ++mr;
      }
      Integer cof = determinant(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      adj(j, i) = cof;
    }
  return adj;
}

struct Ray {
  IntVector v;
  Bits zeros;
};

}  // namespace

std::vector<IntVector> extreme_rays(const IntegerMatrix& a) {
  const std::size_t m = a.rows(), d = a.cols();
  if (d == 0) return {};
  // initial simplicial cone from d independent rows
  std::vector<std::size_t> basis_rows;
  std::vector<IntVector> chosen;
  for (std::size_t i = 0; i < m && basis_rows.size() < d; ++i) {
    chosen.push_back(a.row(i));
    if (rank_of_rows(chosen, d) == chosen.size()) {
      basis_rows.push_back(i);
    } else {
      chosen.pop_back();
    }
  }
  if (basis_rows.size() < d) throw std::invalid_argument("extreme_rays: constraint matrix lacks full column rank");

  IntegerMatrix ab = IntegerMatrix::from_rows(chosen, d);
  Integer det = determinant(ab);
  IntegerMatrix adj = adjugate(ab);
  const std::size_t words = (m + 63) / 64;
  std::vector<Ray> rays;
  for (std::size_t j = 0; j < d; ++j) {
    IntVector v = adj.column(j);
    if (det < 0) v = negate(v);
    Ray r{primitive(v), Bits(words, 0)};
    for (std::size_t k = 0; k < d; ++k)
      if (k != j) set_bit(r.zeros, basis_rows[k]);
    rays.push_back(std::move(r));
  }

  std::vector<bool> in_basis(m, false);
  for (auto i : basis_rows) in_basis[i] = true;

  for (std::size_t i = 0; i < m; ++i) {
    if (in_basis[i]) continue;
    const IntVector row = a.row(i);
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      val[k] = dot(row, rays[k].v);
      if (val[k] > 0) pos.push_back(k);
      else if (val[k] < 0) neg.push_back(k);
    }
    if (neg.empty()) {
      for (std::size_t k = 0; k < rays.size(); ++k)
        if (val[k] == 0) set_bit(rays[k].zeros, i);
      continue;
    }
    std::vector<Ray> next;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (val[k] < 0) continue;
      Ray r = rays[k];
      if (val[k] == 0) set_bit(r.zeros, i);
      next.push_back(std::move(r));
    }
    for (auto p : pos)
      for (auto n : neg) {
        Bits common = intersect(rays[p].zeros, rays[n].zeros);
        if (d >= 2 && popcount(common) + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == p || k == n) continue;
          if (superset(rays[k].zeros, common)) adjacent = false;
        }
        if (!adjacent) continue;
        IntVector v = subtract(scale(val[p], rays[n].v), scale(val[n], rays[p].v));
        Ray r{primitive(v), common};
        set_bit(r.zeros, i);
        next.push_back(std::move(r));
      }
    rays = std::move(next);
  }

  std::vector<IntVector> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool ConeDescription::contains(const IntVector& x) const {
  for (const auto& f : facets)
    if (dot(f, x) < 0) return false;
  return true;
}

ConeDescription describe(const IntegerMatrix& generators) {
  const std::size_t s = generators.rows();
  ConeDescription c;
  c.dimension = s;
  if (s == 0) {
    c.lineality = IntegerMatrix(0, 0);
    c.complement = IntegerMatrix(0, 0);
    c.quotient_projection = IntegerMatrix(0, 0);
    return c;
  }
  c.facets = extreme_rays(generators.transpose());
  if (c.facets.empty()) {
    c.lineality = IntegerMatrix::identity(s);
    c.complement = IntegerMatrix(s, 0);
    c.quotient_projection = IntegerMatrix(0, s);
    return c;
  }
  IntegerMatrix y = IntegerMatrix::from_rows(c.facets, s);
  SmithForm snf = smith_normal_form(y);
  const std::size_t rho = snf.rank();
  c.complement = snf.right.column_block(0, rho);
  c.lineality = lattice_basis(snf.right.column_block(rho, s - rho));
  c.quotient_projection = snf.right_inverse.row_block(0, rho);
  IntegerMatrix qf = y * c.complement;
  for (std::size_t i = 0; i < qf.rows(); ++i) c.quotient_facets.push_back(primitive(qf.row(i)));
  c.quotient_rays = extreme_rays(qf);
  return c;
}

std::vector<IntVector> InequalityCone::generators() const {
  std::vector<IntVector> out = rays;
  for (std::size_t j = 0; j < lineality.cols(); ++j) {
    out.push_back(lineality.column(j));
    out.push_back(negate(lineality.column(j)));
  }
  return out;
}

InequalityCone from_inequalities(const IntegerMatrix& a, std::size_t dimension) {
  InequalityCone out;
  if (a.rows() == 0 || a.is_zero()) {
    out.lineality = IntegerMatrix::identity(dimension);
    return out;
  }
  if (a.cols() != dimension) throw std::invalid_argument("inequality matrix has wrong width");
  SmithForm snf = smith_normal_form(a);
  const std::size_t rho = snf.rank();
  IntegerMatrix v1 = snf.right.column_block(0, rho);
  out.lineality = lattice_basis(snf.right.column_block(rho, dimension - rho));
  for (const auto& r : extreme_rays(a * v1)) out.rays.push_back(primitive(v1 * r));
  std::sort(out.rays.begin(), out.rays.end());
  return out;
}

std::vector<IntVector> parallelepiped_points(const IntegerMatrix& basis) {
  const std::size_t n = basis.rows();
  SmithForm snf = smith_normal_form(basis);
  if (snf.rank() != n || basis.cols() != n) throw std::invalid_argument("parallelepiped basis must be square and invertible");
  const IntVector& e = snf.invariant_factors;
  const Integer big = e.back();
  std::vector<Integer> weight(n);
  for (std::size_t i = 0; i < n; ++i) weight[i] = big / e[i];

  std::vector<IntVector> out;
  IntVector r(n, Integer(0));
  for (;;) {
    // lambda = V diag(1/e) r, scaled by `big`
    IntVector scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = r[i] * weight[i];
    IntVector num = snf.right * scaled;
    for (auto& x : num) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), big.get_mpz_t());
    IntVector x = basis * num;
    for (auto& xi : x) mpz_divexact(xi.get_mpz_t(), xi.get_mpz_t(), big.get_mpz_t());
    out.push_back(std::move(x));
    std::size_t k = 0;
    while (k < n) {
      r[k] += 1;
      if (r[k] < e[k]) break;
      r[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVector> pointed_hilbert_basis(const std::vector<IntVector>& rays,
                                             const std::vector<IntVector>& facets) {
  if (rays.empty()) return {};
  const std::size_t rho = rays.front().size();
  std::set<IntVector> candidates(rays.begin(), rays.end());

  // every rho-subset of rays; dependent subsets are skipped
  std::vector<std::size_t> idx(rho);
  for (std::size_t i = 0; i < rho; ++i) idx[i] = i;
  const std::size_t k = rays.size();
  if (k >= rho) {
    for (;;) {
      std::vector<IntVector> cols;
      for (auto i : idx) cols.push_back(rays[i]);
      IntegerMatrix b = IntegerMatrix::from_columns(cols, rho);
      if (determinant(b) != 0)
        for (auto& p : parallelepiped_points(b))
          if (!is_zero(p)) candidates.insert(std::move(p));
      std::size_t pos = rho;
      while (pos > 0 && idx[pos - 1] == k - rho + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < rho; ++i) idx[i] = idx[i - 1] + 1;
    }
  }

  IntVector grading(rho, Integer(0));
  for (const auto& f : facets) grading = add(grading, f);

  struct Candidate {
    Integer degree;
    IntVector v;
    std::vector<Integer> heights;
  };
  std::vector<Candidate> cand;
  for (const auto& v : candidates) {
    Candidate c{dot(grading, v), v, {}};
    for (const auto& f : facets) c.heights.push_back(dot(f, v));
    cand.push_back(std::move(c));
  }
  std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.v < b.v;
  });

  std::vector<IntVector> basis;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    bool reducible = false;
    for (std::size_t j = 0; j < i && !reducible; ++j) {
      if (cand[j].degree >= cand[i].degree) break;
      bool inside = true;
      for (std::size_t f = 0; f < facets.size(); ++f)
        if (cand[i].heights[f] < cand[j].heights[f]) {
          inside = false;
          break;
        }
      reducible = inside;
    }
    if (!reducible) basis.push_back(cand[i].v);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

LatticeConeGenerators lattice_points(const std::vector<IntVector>& generators, std::size_t dimension) {
  LatticeConeGenerators out;
  std::vector<IntVector> gens;
  for (const auto& g : generators)
    if (!is_zero(g)) gens.push_back(g);
  if (gens.empty()) return out;
  IntegerMatrix g = IntegerMatrix::from_columns(gens, dimension);
  IntegerMatrix span = sublattice_saturation(g);
  IntegerSolver coords(span);
  std::vector<IntVector> local;
  for (const auto& v : gens) local.push_back(*coords.solve(v));
  ConeDescription c = describe(IntegerMatrix::from_columns(local, span.cols()));
  for (const auto& h : pointed_hilbert_basis(c.quotient_rays, c.quotient_facets))
    out.hilbert_basis.push_back(span * (c.complement * h));
  for (std::size_t j = 0; j < c.lineality.cols(); ++j)
    out.lineality_basis.push_back(span * c.lineality.column(j));
  return out;
}

}  // namespace logchart::cone
