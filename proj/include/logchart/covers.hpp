#pragma once

// Finite Kummer etale covers of an fs log point with sharp monoid P.
//
// P is kept in its own groupification Z^r. At level n the monoid P^{1/n} is
// modelled on a copy of Z^r whose point x stands for x/n, so the inclusion
// P -> P^{1/n} is multiplication by n. A subgroup G of (P^{1/n})^gp / P^gp is
// a lattice L with n Z^r inside L inside Z^r.

#include "logchart/morphism.hpp"

#include <string>
#include <vector>

namespace logchart::covers {

struct LogPoint {
  AffineMonoid sharp_monoid;                 // in intrinsic form, ambient Z^r
  std::vector<unsigned long> excluded_primes;
};
/// Checks that P is sharp and fs and the excluded primes are prime.
LogPoint make_log_point(const AffineMonoid& p, std::vector<unsigned long> excluded_primes = {});

/// The finite layer P^{1/n} of P^{1/infinity}.
struct TowerDescriptor {
  LogPoint base;
  unsigned long level = 1;
  FractionalRefinement layer() const { return fractional_refinement(base.sharp_monoid, level); }
  /// Level-m coordinates into this level (requires m | level).
  IntegerMatrix transition_from(unsigned long m) const;
};

struct Pi1Descriptor {
  std::size_t rank = 0;
  std::vector<unsigned long> excluded_primes;
};
Pi1Descriptor pi1_descriptor(const LogPoint& pt);

struct CoverDescriptor {
  unsigned long level = 1;
  IntegerMatrix subgroup;        // rows: Hermite basis of L
  AffineMonoid monoid;           // Q = cone(P) cap L, level coordinates
  MonoidHom chart;               // P -> Q
  FiniteAbelianGroup galois_group;
  std::string to_string() const;
};

/// All connected covers at level n, one per subgroup of (Z/n)^r.
std::vector<CoverDescriptor> classify_covers(const LogPoint& pt, unsigned long n);

/// The cover cut out by the lattice with the given rows (must contain n Z^r).
CoverDescriptor cover_from_lattice(const LogPoint& pt, unsigned long n, const IntegerMatrix& rows);

/// The same cover re-expressed at level n (a multiple of its level).
CoverDescriptor refine(const LogPoint& pt, const CoverDescriptor& c, unsigned long n);

/// 0 if Q2 is not inside Q1, else |Q2^gp / P^gp|.
Integer hom_count(const LogPoint& pt, const CoverDescriptor& q1, const CoverDescriptor& q2);

/// Hom(Q^gp/P^gp, Z/N) with the action of (Z/N)^r = Hom(P^gp, Z/N) by translation.
struct EquivariantFiniteSet {
  unsigned long level = 1;
  std::size_t rank = 0;
  std::vector<IntVector> elements;                  // character values on the generators of G
  std::vector<std::vector<std::size_t>> actions;    // permutation for each basis vector of (Z/N)^r
};
EquivariantFiniteSet fiber_functor(const LogPoint& pt, const CoverDescriptor& q, unsigned long level);

/// Restriction of characters along Q2 inside Q1, as an index map between fibers.
std::vector<std::size_t> restriction_map(const LogPoint& pt, const CoverDescriptor& q1,
                                         const CoverDescriptor& q2, unsigned long level);

/// Number of maps S -> T commuting with every generator action, by exhaustive search.
Integer count_equivariant_maps(const EquivariantFiniteSet& s, const EquivariantFiniteSet& t);

struct PairCheck {
  std::size_t source = 0;
  std::size_t target = 0;
  Integer hom_count;
  Integer equivariant_maps;
  bool match() const { return hom_count == equivariant_maps; }
};
struct CorrespondenceReport {
  unsigned long level = 1;
  std::vector<CoverDescriptor> covers;
  std::vector<PairCheck> pairs;
  bool pass = true;
};
CorrespondenceReport galois_correspondence_check(const LogPoint& pt, unsigned long n);

}  // namespace logchart::covers
