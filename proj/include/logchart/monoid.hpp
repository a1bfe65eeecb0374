#pragma once

// Finitely presented and affine (fine) commutative monoids, written additively.

#include "logchart/cone.hpp"
#include "logchart/zlattice.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace logchart {

/// <generators | lhs_i = rhs_i>, relations given by exponent vectors over N^s.
struct MonoidPresentation {
  std::size_t generator_count = 0;
  std::vector<std::pair<IntVector, IntVector>> relations;

  /// Throws std::invalid_argument on wrong lengths or negative exponents.
  void validate() const;
};

/// A finitely generated submonoid of a finitely generated abelian group.
/// Generators are reduced, zero generators and duplicates are dropped (first
/// occurrence wins); the zero monoid has no generators.
class AffineMonoid {
 public:
  AffineMonoid() = default;
  AffineMonoid(AbelianGroup ambient, std::vector<IntVector> generators);

  /// N^r inside Z^r.
  static AffineMonoid free(std::size_t rank);

  const AbelianGroup& ambient() const { return ambient_; }
  const std::vector<IntVector>& generators() const { return generators_; }
  std::size_t generator_count() const { return generators_.size(); }
  /// ambient().dimension() x generator_count().
  IntegerMatrix generator_matrix() const;

  bool operator==(const AffineMonoid& other) const = default;
  std::string to_string() const;

 private:
  AbelianGroup ambient_;
  std::vector<IntVector> generators_;
};

/// Nonnegative coefficients c with sum c_i g_i = x.
using MembershipCertificate = IntVector;

/// Precomputed geometry of an affine monoid M: the lattice spanned by the free
/// parts of the generators, the cone they span, units and torsion of M^gp.
/// Answers membership queries for M, M^gp and M^sat.
class MonoidStructure {
 public:
  explicit MonoidStructure(AffineMonoid m);

  const AffineMonoid& monoid() const { return monoid_; }
  /// Free rank of M^gp.
  std::size_t rank() const { return lattice_.cols(); }
  /// Columns: basis (Hermite form) of the image of M^gp in the free part of the ambient.
  const IntegerMatrix& lattice_basis() const { return lattice_; }
  /// Cone spanned by the generators, in lattice coordinates.
  const cone::ConeDescription& cone() const { return cone_; }

  /// Lattice coordinates of an ambient element whose free part lies in the lattice.
  std::optional<IntVector> lattice_coordinates(const IntVector& x) const;
  /// An element of M^gp with the given lattice coordinates.
  IntVector lift(const IntVector& coordinates) const;
  /// Generators of the torsion subgroup of M^gp.
  const std::vector<IntVector>& gp_torsion() const { return torsion_; }
  /// Lattice coordinates of the generators.
  const std::vector<IntVector>& generator_coordinates() const { return coords_; }

  /// Indices of generators that are units of M.
  const std::vector<std::size_t>& unit_generators() const { return units_; }
  /// Indices of the remaining generators.
  const std::vector<std::size_t>& sharp_generators() const { return sharp_; }

  bool in_group(const IntVector& x) const;
  bool in_saturation(const IntVector& x) const;
  std::optional<MembershipCertificate> membership(const IntVector& x) const;
  bool contains(const IntVector& x) const { return membership(x).has_value(); }

  /// Facet inequalities as integer functionals on the free part of the ambient,
  /// exact on elements of M^gp tensor Q; rows aligned with cone().facets.
  IntegerMatrix ambient_facet_functionals() const;

 private:
  const IntVector& positive_unit_relation() const;

  AffineMonoid monoid_;
  IntegerMatrix free_part_;          // r x n
  IntegerMatrix lattice_;            // r x s
  IntegerSolver lattice_solver_;     // lattice_ * w = y
  IntegerSolver free_solver_;        // free_part_ * c = y
  GroupSolver group_solver_;
  std::vector<IntVector> coords_;    // lattice coordinates of generators
  cone::ConeDescription cone_;
  IntVector grading_;                // positive on non-unit generators
  std::vector<Integer> degrees_;
  std::vector<std::size_t> units_, sharp_;
  std::vector<std::size_t> search_order_;  // sharp generators by decreasing degree
  std::vector<IntVector> torsion_;
  std::optional<GroupSolver> unit_solver_;
  mutable std::optional<IntVector> unit_relation_;
};

// ---- operations -----------------------------------------------------------

struct Groupification {
  AbelianGroup group;
  std::vector<IntVector> generator_images;
};
Groupification groupify(const MonoidPresentation& p);

/// P^int: the image of P in P^gp.
AffineMonoid integralize(const MonoidPresentation& p);

/// A presentation of M whose relations are a lattice basis of the relation
/// lattice of the generators (each relation c written as c+ = c-).
MonoidPresentation lattice_presentation(const AffineMonoid& m);

/// M^sat, listed as: Hilbert basis of the sharp part (sorted), then plus/minus a
/// unit-lattice basis, then generators of the torsion of M^gp.
AffineMonoid saturate(const AffineMonoid& m);

std::optional<MembershipCertificate> membership(const AffineMonoid& m, const IntVector& x);

struct UnitsAndSharpQuotient {
  AbelianGroup unit_group;
  std::vector<IntVector> unit_generators;  // ambient elements generating M^*
  AffineMonoid sharp;                      // M / M^*
  IntegerMatrix projection;                // ambient -> sharp.ambient (reduce after)
};
UnitsAndSharpQuotient units_and_sharp_quotient(const AffineMonoid& m);

struct MonoidProperties {
  bool fine = true;
  bool sharp = false;
  bool saturated = false;
  bool fs = false;
  std::size_t dimension = 0;
};
MonoidProperties classify(const AffineMonoid& m);

/// Same ambient and mutual containment of generators.
bool same_monoid(const AffineMonoid& a, const AffineMonoid& b);

/// The Hilbert basis of a sharp fs monoid (sorted).
std::vector<IntVector> hilbert_basis(const AffineMonoid& m);

/// Canonical form of a saturated monoid: Hermite basis of the unit lattice
/// (free parts), torsion of the unit group, and the sorted Hilbert basis of
/// the sharp quotient in its deterministic coordinates.
struct CanonicalForm {
  AbelianGroup ambient;
  IntegerMatrix unit_lattice;
  AbelianGroup unit_group;
  AffineMonoid sharp_quotient;
  bool operator==(const CanonicalForm&) const = default;
};
CanonicalForm canonical_form(const AffineMonoid& m);

/// M re-expressed inside its own groupification.
struct IntrinsicForm {
  AffineMonoid monoid;       // ambient() == M^gp
  IntegerMatrix embedding;   // M^gp coordinates -> original ambient
  Quotient coordinates;      // generator-coefficient vectors -> M^gp coordinates
  GroupSolver solver;        // original ambient element -> generator coefficients
  /// Coordinates in M^gp of an original-ambient element of M^gp.
  std::optional<IntVector> to_intrinsic(const IntVector& x) const;
};
IntrinsicForm intrinsic(const AffineMonoid& m);

/// A witness pair (a, b) with a + b = a and b != 0 in the presented monoid, as
/// exponent vectors, or nothing if none exists among words of total length at
/// most `word_length_bound`. Not finding one proves nothing.
std::optional<std::pair<IntVector, IntVector>> find_pseudo_integrality_violation(
    const MonoidPresentation& p, unsigned word_length_bound);

/// Whether two words are congruent in the presented monoid, searching through
/// words of total length at most `bound`.
bool congruent_within(const MonoidPresentation& p, const IntVector& a, const IntVector& b,
                      unsigned bound);

// ---- homomorphisms --------------------------------------------------------

/// u: domain -> codomain given by a matrix on ambient coordinates
/// (codomain.ambient().dimension() x domain.ambient().dimension()).
struct MonoidHom {
  AffineMonoid domain;
  AffineMonoid codomain;
  IntegerMatrix group_map;

  IntVector apply(const IntVector& x) const { return codomain.ambient().reduce(group_map * x); }
};

/// Builds u and checks that the matrix is a homomorphism of ambient groups and
/// that every domain generator lands in the codomain. Throws std::invalid_argument.
MonoidHom make_hom(AffineMonoid domain, AffineMonoid codomain, IntegerMatrix group_map);

/// Embedding of a sharp fs monoid P into N^s via its facet functionals, s the
/// number of facets of cone(P); P = {x in P^gp : phi(x) >= 0}. Facets are
/// ordered lexicographically by their functional on the ambient.
MonoidHom exact_embedding(const AffineMonoid& p);

/// A section s of f: M -> Q (Q sharp fs, f surjective) with f s = id. Requires
/// ker(f^gp) inside M; throws PreconditionError naming a kernel element outside M.
MonoidHom splitting_section(const MonoidHom& f);

/// P^{1/n} modelled on a copy of P, with the inclusion P -> P^{1/n} given by
/// multiplication by n (the n-th power map under P^{1/n} = P).
struct FractionalRefinement {
  AffineMonoid refined;
  MonoidHom inclusion;
};
FractionalRefinement fractional_refinement(const AffineMonoid& p, unsigned long n);

}  // namespace logchart
