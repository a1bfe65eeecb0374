#pragma once

// Exact integer linear algebra over finitely generated abelian groups.
//
// Conventions used throughout the library:
//  * a matrix acts on column vectors, so a map Z^m -> Z^n is an n x m matrix;
//  * an element of Z^r (+) Z/d_1 (+) ... (+) Z/d_t is a vector of length r + t
//    with the free coordinates first and the torsion residues last.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace logchart {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows);
  static IntegerMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector column(std::size_t j) const;
  IntVector row(std::size_t i) const;
  std::vector<IntVector> columns() const;

  IntegerMatrix transpose() const;
  IntegerMatrix operator*(const IntegerMatrix& other) const;
  IntVector operator*(const IntVector& v) const;
  IntegerMatrix operator+(const IntegerMatrix& other) const;
  bool operator==(const IntegerMatrix& other) const = default;

  /// Columns [first, first + count).
  IntegerMatrix column_block(std::size_t first, std::size_t count) const;
  /// Rows [first, first + count).
  IntegerMatrix row_block(std::size_t first, std::size_t count) const;
  /// [this | other], requires equal row counts.
  IntegerMatrix hconcat(const IntegerMatrix& other) const;
  /// [this ; other], requires equal column counts.
  IntegerMatrix vconcat(const IntegerMatrix& other) const;

  bool is_zero() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntVector make_vector(std::initializer_list<long> values);
IntVector add(const IntVector& a, const IntVector& b);
IntVector subtract(const IntVector& a, const IntVector& b);
IntVector scale(const Integer& k, const IntVector& v);
IntVector negate(const IntVector& v);
Integer dot(const IntVector& a, const IntVector& b);
bool is_zero(const IntVector& v);
/// Divides by the gcd of the entries; the zero vector is returned unchanged.
IntVector primitive(const IntVector& v);
std::string to_string(const IntVector& v);

/// Z^free_rank (+) Z/d_1 (+) ... with d_1 | d_2 | ... and every d_i >= 2.
struct AbelianGroup {
  std::size_t free_rank = 0;
  IntVector torsion;

  std::size_t dimension() const { return free_rank + torsion.size(); }
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }
  bool is_torsion_free() const { return torsion.empty(); }
  /// Order of the group; requires is_finite().
  Integer order() const;
  /// Exponent of the torsion part (1 when torsion-free).
  Integer torsion_exponent() const;

  /// Reduces torsion residues into [0, d_i).
  IntVector reduce(IntVector v) const;
  bool contains_coordinates(const IntVector& v) const { return v.size() == dimension(); }
  /// dimension() x torsion.size() matrix with d_i in the row of the i-th torsion coordinate.
  IntegerMatrix relation_matrix() const;
  /// Throws if the invariant factors do not form a divisibility chain.
  void validate() const;

  static AbelianGroup free(std::size_t rank) { return AbelianGroup{rank, {}}; }
  bool operator==(const AbelianGroup& other) const = default;
  std::string to_string() const;
};

/// Finite abelian group stored by invariant factors d_1 | d_2 | ... (all >= 2).
struct FiniteAbelianGroup {
  IntVector invariant_factors;

  Integer order() const;
  /// Last invariant factor, 1 for the trivial group.
  Integer exponent() const;
  bool is_trivial() const { return invariant_factors.empty(); }
  AbelianGroup as_group() const { return AbelianGroup{0, invariant_factors}; }
  static FiniteAbelianGroup from_group(const AbelianGroup& g);
  /// Normal form of Z/n_1 (+) Z/n_2 (+) ... for arbitrary positive n_i.
  static FiniteAbelianGroup from_cyclic_orders(const IntVector& orders);
  bool operator==(const FiniteAbelianGroup& other) const = default;
  std::string to_string() const;
};

struct SmithForm {
  IntegerMatrix left;      // U, unimodular
  IntegerMatrix diagonal;  // D = U A V
  IntegerMatrix right;     // V, unimodular
  IntegerMatrix left_inverse;
  IntegerMatrix right_inverse;
  IntVector invariant_factors;  // nonzero diagonal entries, positive, d_i | d_{i+1}
  std::size_t rank() const { return invariant_factors.size(); }
};

/// U A V = D. Pivot: smallest nonzero absolute value, ties broken row-major.
SmithForm smith_normal_form(const IntegerMatrix& a);

/// Row-style Hermite normal form of the lattice spanned by the rows of `a`:
/// upper echelon, positive pivots, entries above each pivot reduced into [0, pivot).
/// Zero rows are dropped.
IntegerMatrix hermite_normal_form(const IntegerMatrix& a);

Integer determinant(const IntegerMatrix& a);

/// Z^n / image(A), with the coordinate map onto the quotient and a section back.
struct Quotient {
  AbelianGroup group;
  IntegerMatrix projection;  // group.dimension() x n; apply then group.reduce
  IntegerMatrix lift;        // n x group.dimension(); projection * lift = id on the group
  IntVector project(const IntVector& v) const { return group.reduce(projection * v); }
};

/// The cokernel of A: Z^m -> Z^n.
Quotient cokernel(const IntegerMatrix& a);
/// Cokernel as a bare group.
AbelianGroup cokernel_group(const IntegerMatrix& a);

/// Some x with A x = b, or nothing when the system has no integer solution.
std::optional<IntVector> solve_integer(const IntegerMatrix& a, const IntVector& b);

/// Solver that reuses one Smith form for many right-hand sides.
class IntegerSolver {
 public:
  explicit IntegerSolver(const IntegerMatrix& a);
  std::optional<IntVector> solve(const IntVector& b) const;
  std::size_t unknowns() const { return cols_; }

 private:
  SmithForm snf_;
  std::size_t cols_;
};

/// Columns form a basis of {x in Z^m : A x = 0}.
IntegerMatrix integer_kernel(const IntegerMatrix& a);

/// Basis (as columns) of the saturation (L tensor Q) cap Z^n of the lattice
/// spanned by the given columns.
IntegerMatrix sublattice_saturation(const IntegerMatrix& generators);

/// Basis (as columns) of the lattice spanned by the columns of `generators`.
IntegerMatrix lattice_basis(const IntegerMatrix& generators);

// ---- maps into finitely generated abelian groups ------------------------

/// Basis (columns) of {c in Z^k : sum c_i images_i = 0 in target}.
IntegerMatrix kernel_in_group(const IntegerMatrix& images, const AbelianGroup& target);

/// Some c with sum c_i images_i = b in target.
std::optional<IntVector> solve_in_group(const IntegerMatrix& images, const AbelianGroup& target,
                                        const IntVector& b);

/// Solver for repeated membership in the subgroup spanned by `images`.
class GroupSolver {
 public:
  GroupSolver(const IntegerMatrix& images, const AbelianGroup& target);
  std::optional<IntVector> solve(const IntVector& b) const;

 private:
  IntegerSolver solver_;
  std::size_t unknowns_;
};

/// target / <subgroup columns>, with coordinate maps from target coordinates.
Quotient quotient_group(const AbelianGroup& target, const IntegerMatrix& subgroup);

/// The subgroup H of `ambient` spanned by the columns of `generators`, presented
/// as Z^k / relations. projection sends generator-coefficient vectors to H coordinates.
Quotient subgroup_structure(const AbelianGroup& ambient, const IntegerMatrix& generators);

/// Whether M: source -> target (matrix on coordinates) is a well-defined homomorphism.
bool is_homomorphism(const AbelianGroup& source, const AbelianGroup& target,
                     const IntegerMatrix& map);

/// Whether the homomorphism M: source -> target is bijective.
bool is_isomorphism(const AbelianGroup& source, const AbelianGroup& target,
                    const IntegerMatrix& map);

/// Direct sum a (+) b with coordinates reordered so that free coordinates come
/// first; returns the group and the matrices of the two inclusions.
struct DirectSum {
  AbelianGroup group;
  IntegerMatrix left;   // group.dimension() x a.dimension()
  IntegerMatrix right;  // group.dimension() x b.dimension()
};
/// Torsion factors are left unnormalized when they do not form a chain; use
/// `normalize` to obtain invariant-factor form.
DirectSum direct_sum(const AbelianGroup& a, const AbelianGroup& b);

/// Direct sum of several groups with inclusions of, and projections onto, each factor.
struct DirectProduct {
  AbelianGroup group;
  std::vector<IntegerMatrix> inclusions;   // group.dimension() x factor dimension
  std::vector<IntegerMatrix> projections;  // factor dimension x group.dimension(); reduce after
};
DirectProduct direct_product(const std::vector<AbelianGroup>& factors);

/// Invariant-factor normal form of `g` (whose torsion list may be arbitrary
/// positive integers) together with the coordinate isomorphism.
struct Normalized {
  AbelianGroup group;
  IntegerMatrix to_normal;    // normal coords from old coords
  IntegerMatrix from_normal;  // old coords from normal coords
};
Normalized normalize(std::size_t free_rank, const IntVector& cyclic_orders);

}  // namespace logchart
