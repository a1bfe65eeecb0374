#pragma once

// Rational polyhedral cones in Z^s: double description, lineality spaces and
// Hilbert bases of cone-lattice intersections.

#include "logchart/zlattice.hpp"

#include <vector>

namespace logchart::cone {

/// Primitive extreme rays of {x : A x >= 0}, sorted. A must have full column
/// rank (the cone is then pointed). Double description with the combinatorial
/// adjacency test.
std::vector<IntVector> extreme_rays(const IntegerMatrix& constraints);

/// A full-dimensional cone in R^s given by generators, in H- and V-form.
struct ConeDescription {
  std::size_t dimension = 0;
  /// Primitive inner facet normals y (y . x >= 0 on the cone), sorted.
  std::vector<IntVector> facets;
  /// s x l, columns: basis of the lattice (lineality space) cap Z^s.
  IntegerMatrix lineality;
  /// s x rho, columns complete `lineality` to a basis of Z^s.
  IntegerMatrix complement;
  /// rho x s, quotient coordinates: Z^s -> Z^s / lineality.
  IntegerMatrix quotient_projection;
  /// Primitive extreme rays of the pointed quotient cone, in quotient coordinates.
  std::vector<IntVector> quotient_rays;
  /// Facet normals in quotient coordinates (rows aligned with `facets`).
  std::vector<IntVector> quotient_facets;

  bool contains(const IntVector& x) const;
  bool is_pointed() const { return lineality.cols() == 0; }
};

/// Requires the generators (columns) to span R^s.
ConeDescription describe(const IntegerMatrix& generators);

/// Generators of {x : A x >= 0}: extreme rays of the pointed part (lifted) and a
/// lattice basis of the lineality space.
struct InequalityCone {
  std::vector<IntVector> rays;
  IntegerMatrix lineality;
  std::vector<IntVector> generators() const;  // rays, then +-lineality
};
InequalityCone from_inequalities(const IntegerMatrix& a, std::size_t dimension);

/// The monoid cone(generators) cap Z^s, as: Hilbert basis of the sharp part
/// (lifted through a fixed complement of the lineality lattice) plus a basis
/// of the unit lattice. Generators need not span R^s.
struct LatticeConeGenerators {
  std::vector<IntVector> hilbert_basis;
  std::vector<IntVector> lineality_basis;
};
LatticeConeGenerators lattice_points(const std::vector<IntVector>& generators, std::size_t dimension);

/// Hilbert basis of a pointed full-dimensional cone in Z^rho given by its
/// extreme rays and facets. Covers the cone by the simplicial cones spanned by
/// independent ray subsets, enumerates each fundamental parallelepiped and
/// reduces globally.
std::vector<IntVector> pointed_hilbert_basis(const std::vector<IntVector>& rays,
                                             const std::vector<IntVector>& facets);

/// Lattice points of the half-open fundamental parallelepiped of the simplicial
/// cone spanned by the (linearly independent) columns of `basis`.
std::vector<IntVector> parallelepiped_points(const IntegerMatrix& basis);

}  // namespace logchart::cone
