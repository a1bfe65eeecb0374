#include "logchart/zlattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace logchart {

// ---- IntegerMatrix --------------------------------------------------------

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  IntegerMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntegerMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntVector IntegerMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<IntVector> IntegerMatrix::columns() const {
  std::vector<IntVector> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

IntegerMatrix IntegerMatrix::operator+(const IntegerMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("matrix shapes differ");
  IntegerMatrix out = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] += other.data_[k];
  return out;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix product dimension mismatch");
  IntegerMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  return out;
}

IntVector IntegerMatrix::operator*(const IntVector& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
  IntVector out(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if (v[k] != 0) out[i] += (*this)(i, k) * v[k];
  return out;
}

IntegerMatrix IntegerMatrix::column_block(std::size_t first, std::size_t count) const {
  IntegerMatrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
  return out;
}

IntegerMatrix IntegerMatrix::row_block(std::size_t first, std::size_t count) const {
  IntegerMatrix out(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(first + i, j);
  return out;
}

IntegerMatrix IntegerMatrix::hconcat(const IntegerMatrix& other) const {
  if (rows_ != other.rows_) throw std::invalid_argument("hconcat row mismatch");
  IntegerMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j) out(i, cols_ + j) = other(i, j);
  }
  return out;
}

IntegerMatrix IntegerMatrix::vconcat(const IntegerMatrix& other) const {
  if (cols_ != other.cols_) throw std::invalid_argument("vconcat column mismatch");
  IntegerMatrix out(rows_ + other.rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
  for (std::size_t i = 0; i < other.rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(rows_ + i, j) = other(i, j);
  return out;
}

bool IntegerMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ", ";
    os << logchart::to_string(row(i));
  }
  os << ']';
  return os.str();
}

// ---- vectors --------------------------------------------------------------

IntVector make_vector(std::initializer_list<long> values) {
  IntVector v;
  v.reserve(values.size());
  for (long x : values) v.emplace_back(x);
  return v;
}

IntVector add(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVector subtract(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

IntVector scale(const Integer& k, const IntVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = k * v[i];
  return out;
}

IntVector negate(const IntVector& v) { return scale(Integer(-1), v); }

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

IntVector primitive(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0 || g == 1) return v;
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i].get_str();
  }
  os << ')';
  return os.str();
}

// ---- AbelianGroup ---------------------------------------------------------

Integer AbelianGroup::order() const {
  if (!is_finite()) throw std::domain_error("order of an infinite group");
  Integer n = 1;
  for (const auto& d : torsion) n *= d;
  return n;
}

Integer AbelianGroup::torsion_exponent() const {
  return torsion.empty() ? Integer(1) : torsion.back();
}

IntVector AbelianGroup::reduce(IntVector v) const {
  if (v.size() != dimension()) throw std::invalid_argument("element has wrong dimension");
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    Integer& x = v[free_rank + i];
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), torsion[i].get_mpz_t());
  }
  return v;
}

IntegerMatrix AbelianGroup::relation_matrix() const {
  IntegerMatrix r(dimension(), torsion.size());
  for (std::size_t i = 0; i < torsion.size(); ++i) r(free_rank + i, i) = torsion[i];
  return r;
}

void AbelianGroup::validate() const {
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2) throw std::invalid_argument("torsion invariant factor must be >= 2");
    if (i > 0 && torsion[i] % torsion[i - 1] != 0)
      throw std::invalid_argument("torsion invariant factors must form a divisibility chain");
  }
}

std::string AbelianGroup::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << '^' << free_rank;
    first = false;
  }
  for (const auto& d : torsion) {
    if (!first) os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

Integer FiniteAbelianGroup::order() const {
  Integer n = 1;
  for (const auto& d : invariant_factors) n *= d;
  return n;
}

Integer FiniteAbelianGroup::exponent() const {
  return invariant_factors.empty() ? Integer(1) : invariant_factors.back();
}

FiniteAbelianGroup FiniteAbelianGroup::from_group(const AbelianGroup& g) {
  if (!g.is_finite()) throw std::domain_error("group is infinite: " + g.to_string());
  return FiniteAbelianGroup{g.torsion};
}

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(const IntVector& orders) {
  return from_group(normalize(0, orders).group);
}

std::string FiniteAbelianGroup::to_string() const { return as_group().to_string(); }

// ---- Smith normal form ----------------------------------------------------

namespace {

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row_target += k * row_source
void add_row_multiple(IntegerMatrix& m, std::size_t target, std::size_t source, const Integer& k) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(source, j) != 0) m(target, j) += k * m(source, j);
}

// col_target += k * col_source
void add_col_multiple(IntegerMatrix& m, std::size_t target, std::size_t source, const Integer& k) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, source) != 0) m(i, target) += k * m(i, source);
}

struct SnfState {
  IntegerMatrix d, u, uinv, v, vinv;

  void row_swap(std::size_t a, std::size_t b) {
    swap_rows(d, a, b);
    swap_rows(u, a, b);
    swap_cols(uinv, a, b);
  }
  void col_swap(std::size_t a, std::size_t b) {
    swap_cols(d, a, b);
    swap_cols(v, a, b);
    swap_rows(vinv, a, b);
  }
  // row_i += k row_t
  void row_add(std::size_t i, std::size_t t, const Integer& k) {
    add_row_multiple(d, i, t, k);
    add_row_multiple(u, i, t, k);
    add_col_multiple(uinv, t, i, -k);
  }
  // col_j += k col_t
  void col_add(std::size_t j, std::size_t t, const Integer& k) {
    add_col_multiple(d, j, t, k);
    add_col_multiple(v, j, t, k);
    add_row_multiple(vinv, t, j, -k);
  }
  void row_negate(std::size_t i) {
    for (std::size_t j = 0; j < d.cols(); ++j) d(i, j) = -d(i, j);
    for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) = -u(i, j);
    for (std::size_t r = 0; r < uinv.rows(); ++r) uinv(r, i) = -uinv(r, i);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SnfState s{a, IntegerMatrix::identity(m), IntegerMatrix::identity(m), IntegerMatrix::identity(n),
             IntegerMatrix::identity(n)};
  std::size_t t = 0;
  const std::size_t limit = std::min(m, n);

  auto pick_pivot = [&](std::size_t from) -> std::optional<std::pair<std::size_t, std::size_t>> {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    for (std::size_t i = from; i < m; ++i)
      for (std::size_t j = from; j < n; ++j) {
        const Integer& x = s.d(i, j);
        if (x == 0) continue;
        Integer ax = abs(x);
        if (!best || ax < best_abs) {
          best = {i, j};
          best_abs = ax;
        }
      }
    return best;
  };

  while (t < limit) {
    auto p = pick_pivot(t);
    if (!p) break;
    s.row_swap(t, p->first);
    s.col_swap(t, p->second);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s.d(i, t) == 0) continue;
        Integer q = s.d(i, t) / s.d(t, t);  // truncating
        if (q != 0) s.row_add(i, t, -q);
        if (s.d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s.d(t, j) == 0) continue;
        Integer q = s.d(t, j) / s.d(t, t);
        if (q != 0) s.col_add(j, t, -q);
        if (s.d(t, j) != 0) clean = false;
      }
      if (clean) {
        // every remaining entry must be divisible by the pivot
        std::optional<std::size_t> bad_row;
        for (std::size_t i = t + 1; i < m && !bad_row; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (s.d(i, j) % s.d(t, t) != 0) {
              bad_row = i;
              break;
            }
        if (!bad_row) break;
        s.row_add(t, *bad_row, Integer(1));
      }
      auto q = pick_pivot(t);
      s.row_swap(t, q->first);
      s.col_swap(t, q->second);
    }
    if (s.d(t, t) < 0) s.row_negate(t);
    ++t;
  }

  SmithForm out;
  out.invariant_factors.reserve(t);
  for (std::size_t i = 0; i < t; ++i) out.invariant_factors.push_back(s.d(i, i));
  out.left = std::move(s.u);
  out.diagonal = std::move(s.d);
  out.right = std::move(s.v);
  out.left_inverse = std::move(s.uinv);
  out.right_inverse = std::move(s.vinv);
  return out;
}

IntegerMatrix hermite_normal_form(const IntegerMatrix& a) {
  IntegerMatrix h = a;
  const std::size_t m = h.rows(), n = h.cols();
  std::size_t row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = row; i < m; ++i)
        if (h(i, c) != 0 && (!best || abs(h(i, c)) < abs(h(*best, c)))) best = i;
      if (!best) break;
      swap_rows(h, row, *best);
      bool done = true;
      for (std::size_t i = row + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        Integer q = h(i, c) / h(row, c);
        add_row_multiple(h, i, row, -q);
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(row, c) == 0) continue;
    if (h(row, c) < 0)
      for (std::size_t j = 0; j < n; ++j) h(row, j) = -h(row, j);
    for (std::size_t i = 0; i < row; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(row, c).get_mpz_t());
      if (q != 0) add_row_multiple(h, i, row, -q);
    }
    pivot_cols.push_back(c);
    ++row;
  }
  return h.row_block(0, row);
}

Integer determinant(const IntegerMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntegerMatrix m = a;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && m(swap_with, k) == 0) ++swap_with;
      if (swap_with == n) return 0;
      swap_rows(m, k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// ---- cokernels and solving ------------------------------------------------

Quotient cokernel(const IntegerMatrix& a) {
  const std::size_t n = a.rows();
  SmithForm snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  std::vector<std::size_t> order;
  Quotient q;
  for (std::size_t i = r; i < n; ++i) order.push_back(i);
  q.group.free_rank = n - r;
  for (std::size_t i = 0; i < r; ++i)
    if (snf.invariant_factors[i] != 1) {
      order.push_back(i);
      q.group.torsion.push_back(snf.invariant_factors[i]);
    }
  q.projection = IntegerMatrix(order.size(), n);
  q.lift = IntegerMatrix(n, order.size());
  for (std::size_t k = 0; k < order.size(); ++k)
    for (std::size_t j = 0; j < n; ++j) {
      q.projection(k, j) = snf.left(order[k], j);
      q.lift(j, k) = snf.left_inverse(j, order[k]);
    }
  return q;
}

AbelianGroup cokernel_group(const IntegerMatrix& a) {
  SmithForm snf = smith_normal_form(a);
  AbelianGroup g;
  g.free_rank = a.rows() - snf.rank();
  for (const auto& d : snf.invariant_factors)
    if (d != 1) g.torsion.push_back(d);
  return g;
}

IntegerSolver::IntegerSolver(const IntegerMatrix& a) : snf_(smith_normal_form(a)), cols_(a.cols()) {}

std::optional<IntVector> IntegerSolver::solve(const IntVector& b) const {
  if (b.size() != snf_.left.rows()) throw std::invalid_argument("right-hand side has wrong length");
  IntVector c = snf_.left * b;
  const std::size_t r = snf_.rank();
  IntVector y(cols_, Integer(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < r) {
      if (c[i] % snf_.invariant_factors[i] != 0) return std::nullopt;
      y[i] = c[i] / snf_.invariant_factors[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return snf_.right * y;
}

std::optional<IntVector> solve_integer(const IntegerMatrix& a, const IntVector& b) {
  return IntegerSolver(a).solve(b);
}

IntegerMatrix integer_kernel(const IntegerMatrix& a) {
  SmithForm snf = smith_normal_form(a);
  return snf.right.column_block(snf.rank(), a.cols() - snf.rank());
}

IntegerMatrix lattice_basis(const IntegerMatrix& generators) {
  return hermite_normal_form(generators.transpose()).transpose();
}

IntegerMatrix sublattice_saturation(const IntegerMatrix& generators) {
  SmithForm snf = smith_normal_form(generators);
  return lattice_basis(snf.left_inverse.column_block(0, snf.rank()));
}

IntegerMatrix kernel_in_group(const IntegerMatrix& images, const AbelianGroup& target) {
  if (images.rows() != target.dimension()) throw std::invalid_argument("image dimension mismatch");
  const std::size_t k = images.cols();
  IntegerMatrix aug = images.hconcat(target.relation_matrix());
  IntegerMatrix ker = integer_kernel(aug);
  IntegerMatrix head = ker.row_block(0, k);
  if (head.cols() == 0) return IntegerMatrix(k, 0);
  return lattice_basis(head);
}

std::optional<IntVector> solve_in_group(const IntegerMatrix& images, const AbelianGroup& target,
                                        const IntVector& b) {
  return GroupSolver(images, target).solve(b);
}

GroupSolver::GroupSolver(const IntegerMatrix& images, const AbelianGroup& target)
    : solver_(images.hconcat(target.relation_matrix())), unknowns_(images.cols()) {
  if (images.rows() != target.dimension()) throw std::invalid_argument("image dimension mismatch");
}

std::optional<IntVector> GroupSolver::solve(const IntVector& b) const {
  auto x = solver_.solve(b);
  if (!x) return std::nullopt;
  x->resize(unknowns_);
  return x;
}

Quotient quotient_group(const AbelianGroup& target, const IntegerMatrix& subgroup) {
  if (subgroup.rows() != target.dimension()) throw std::invalid_argument("subgroup dimension mismatch");
  return cokernel(subgroup.hconcat(target.relation_matrix()));
}

Quotient subgroup_structure(const AbelianGroup& ambient, const IntegerMatrix& generators) {
  return cokernel(kernel_in_group(generators, ambient));
}

bool is_homomorphism(const AbelianGroup& source, const AbelianGroup& target,
                     const IntegerMatrix& map) {
  if (map.rows() != target.dimension() || map.cols() != source.dimension()) return false;
  IntegerMatrix rel = map * source.relation_matrix();
  for (std::size_t j = 0; j < rel.cols(); ++j)
    if (!is_zero(target.reduce(rel.column(j)))) return false;
  return true;
}

bool is_isomorphism(const AbelianGroup& source, const AbelianGroup& target,
                    const IntegerMatrix& map) {
  if (!is_homomorphism(source, target, map)) return false;
  IntegerMatrix ker = kernel_in_group(map, target);
  IntegerSolver in_relations(source.relation_matrix());
  for (std::size_t j = 0; j < ker.cols(); ++j)
    if (!in_relations.solve(ker.column(j))) return false;
  return quotient_group(target, map).group.is_trivial();
}

Normalized normalize(std::size_t free_rank, const IntVector& cyclic_orders) {
  const std::size_t n = free_rank + cyclic_orders.size();
  IntegerMatrix rel(n, cyclic_orders.size());
  for (std::size_t i = 0; i < cyclic_orders.size(); ++i) {
    if (cyclic_orders[i] < 1) throw std::invalid_argument("cyclic order must be positive");
    rel(free_rank + i, i) = cyclic_orders[i];
  }
  Quotient q = cokernel(rel);
  return Normalized{q.group, q.projection, q.lift};
}

DirectSum direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
  IntVector orders = a.torsion;
  orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
  const std::size_t free = a.free_rank + b.free_rank;
  const std::size_t raw_dim = free + orders.size();
  IntegerMatrix left(raw_dim, a.dimension()), right(raw_dim, b.dimension());
  for (std::size_t i = 0; i < a.free_rank; ++i) left(i, i) = 1;
  for (std::size_t i = 0; i < b.free_rank; ++i) right(a.free_rank + i, i) = 1;
  for (std::size_t i = 0; i < a.torsion.size(); ++i) left(free + i, a.free_rank + i) = 1;
  for (std::size_t i = 0; i < b.torsion.size(); ++i)
    right(free + a.torsion.size() + i, b.free_rank + i) = 1;
  Normalized nf = normalize(free, orders);
  return DirectSum{nf.group, nf.to_normal * left, nf.to_normal * right};
}

DirectProduct direct_product(const std::vector<AbelianGroup>& factors) {
  std::size_t free = 0;
  IntVector orders;
  for (const auto& f : factors) {
    free += f.free_rank;
    orders.insert(orders.end(), f.torsion.begin(), f.torsion.end());
  }
  const std::size_t raw_dim = free + orders.size();
  Normalized nf = normalize(free, orders);
  DirectProduct out{nf.group, {}, {}};
  std::size_t free_at = 0, tors_at = free;
  for (const auto& f : factors) {
    IntegerMatrix e(raw_dim, f.dimension());
    for (std::size_t i = 0; i < f.free_rank; ++i) e(free_at + i, i) = 1;
    for (std::size_t i = 0; i < f.torsion.size(); ++i) e(tors_at + i, f.free_rank + i) = 1;
    free_at += f.free_rank;
    tors_at += f.torsion.size();
    out.inclusions.push_back(nf.to_normal * e);
    out.projections.push_back(e.transpose() * nf.from_normal);
  }
  return out;
}

}  // namespace logchart
