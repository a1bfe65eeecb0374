#pragma once

// Cohomology over prime fields: finite abelian groups, Cech complexes of
// standard Kummer covers, Koszul complexes of characters.

#include "logchart/field_linalg.hpp"
#include "logchart/morphism.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace logchart {

bool is_prime_u64(std::uint64_t n);
/// Smallest prime l with l = 1 mod m.
std::uint64_t smallest_prime_congruent_one(std::uint64_t m);
/// Smallest prime not dividing n.
std::uint64_t smallest_prime_not_dividing(const Integer& n);
/// Smallest primitive root modulo the prime l.
std::uint64_t primitive_root(std::uint64_t prime);

// ---- finite groups --------------------------------------------------------

/// Cochains of G = prod Z/d_k with trivial F_l coefficients, from the tensor
/// product of the periodic cyclic resolutions; terms 0..max_degree+1.
PrimeFieldComplex group_cochain_complex(const FiniteAbelianGroup& g, std::uint64_t prime, std::size_t max_degree);
/// dim H^i(G, F_l) for i <= max_degree.
std::vector<std::size_t> finite_group_cohomology(const FiniteAbelianGroup& g, std::uint64_t prime,
                                                 std::size_t max_degree);

// ---- Cech complexes -------------------------------------------------------

/// Degree-q slice of the augmented Cech complex
/// 0 -> k[P]_q -> k[Q]_q -> k[Q (+) G]_q -> ... of a standard Kummer cover.
struct CechSlice {
  IntVector degree;
  bool in_codomain = false;
  bool in_base = false;                        // q in u(P)
  std::vector<std::size_t> dimensions;         // k[P]_q, C^0, ..., C^{length-2}
  std::vector<std::size_t> augmented_cohomology;  // positions 0..length-2
  std::vector<std::size_t> cech_cohomology;    // unaugmented H^0..H^{length-3}
  bool exact = false;
};

/// Builds degree slices for one cover. The complex has `length` terms counting
/// k[P]_q; exactness is checked at every term except the last. Cofaces come
/// from the slot insertions of the self pushouts. Safe for concurrent use.
class CechComplexBuilder {
 public:
  CechComplexBuilder(const MonoidHom& u, std::uint64_t prime, std::size_t length);

  const FiniteAbelianGroup& galois_group() const { return galois_; }
  std::uint64_t prime() const { return prime_; }
  std::size_t length() const { return length_; }

  /// q given in the codomain's ambient coordinates.
  CechSlice slice(const IntVector& q) const;
  PrimeFieldComplex complex(const IntVector& q) const;
  /// Whether q lies in u(P^gp).
  bool trivial_class(const IntVector& q) const;
  /// Elements of Q whose free coordinates lie in [-bound, bound].
  std::vector<IntVector> degrees(unsigned long bound) const;

 private:
  IntVector to_intrinsic(const IntVector& q) const;
  std::vector<std::size_t> coface(std::size_t m, std::size_t i, const IntVector& qi) const;
  PrimeFieldComplex build(const IntVector& qi, bool in_codomain, bool in_base) const;
  std::vector<std::size_t> cohomology_of(const IntVector& qi, bool in_codomain, bool in_base) const;

  MonoidHom original_;
  std::uint64_t prime_;
  std::size_t length_;
  FiniteAbelianGroup galois_;
  std::vector<SelfProductDecomposition> levels_;  // factors 1..length-1
  std::vector<std::vector<IntegerMatrix>> cofaces_;  // [m][i]: level m target -> level m+1 target
  IntrinsicForm q_form_;
  MonoidStructure q_structure_;
  MonoidStructure p_structure_;
  GroupSolver base_solver_;                      // u(P^gp) inside Q^gp, intrinsic coordinates
  std::vector<IntVector> group_elements_;        // G in mixed-radix order
  std::map<IntVector, std::size_t> group_index_;
  mutable std::mutex mutex_;
  mutable std::map<std::tuple<IntVector, bool, bool>, std::vector<std::size_t>> cache_;
};

CechSlice cech_complex_degreewise(const MonoidHom& u, std::uint64_t prime, const IntVector& q, std::size_t length);

struct CechGroupComparison {
  std::uint64_t prime = 0;
  std::size_t max_degree = 0;
  unsigned long degree_bound = 0;
  std::vector<std::size_t> group_cohomology;
  std::vector<std::size_t> cech_trivial_class;   // common value over degrees in u(P^gp)
  std::vector<std::size_t> cech_other_classes;   // summed over the remaining degrees
  std::size_t degrees_examined = 0;
  bool exact_everywhere = true;
  bool consistent = true;
  bool stable = true;
  bool match = false;
};
CechGroupComparison cech_vs_group_cohomology(const MonoidHom& u, std::uint64_t prime, std::size_t max_degree,
                                             unsigned long degree_bound = 12);

// ---- Koszul complexes -----------------------------------------------------

/// Character a = (j_1/m, ..., j_n/m) of Z^n with values in F_l, l = 1 mod m.
struct CharacterDatum {
  std::size_t n = 0;
  std::uint64_t level = 1;              // m
  std::vector<std::uint64_t> numerators;  // j_k in [0, m)
  std::uint64_t prime = 2;
  std::uint64_t zeta = 1;               // primitive m-th root of unity mod l
};
/// prime = 0 picks the smallest prime = 1 mod m.
CharacterDatum make_character_datum(std::size_t n, std::uint64_t level, std::vector<std::uint64_t> numerators,
                                    std::uint64_t prime = 0);

PrimeFieldComplex koszul_complex(const CharacterDatum& cd);
std::vector<std::size_t> koszul_cohomology(const CharacterDatum& cd, std::size_t max_degree);

struct PolydiscCohomology {
  std::uint64_t prime = 2;
  std::uint64_t zeta = 1;
  std::vector<std::size_t> totals;        // degrees 0..n
  std::size_t characters = 0;
  std::size_t contributing_characters = 0;
  bool only_trivial_contributes = true;
};
PolydiscCohomology polydisc_cohomology(std::size_t n, std::uint64_t level, std::uint64_t prime = 0);

}  // namespace logchart
