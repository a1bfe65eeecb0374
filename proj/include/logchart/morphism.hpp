#pragma once

// Chart criteria for homomorphisms of affine monoids u: P -> Q.

#include "logchart/monoid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace logchart {

/// Kernel and cokernel of u^gp: P^gp -> Q^gp.
struct KernelCokernel {
  AbelianGroup kernel;
  AbelianGroup cokernel;
};
KernelCokernel gp_kernel_cokernel(const MonoidHom& u);

struct ExactnessVerdict {
  bool exact = false;
  std::optional<IntVector> witness;  // element of (u^gp)^{-1}(Q) outside P
};
/// Requires Q saturated.
ExactnessVerdict is_exact(const MonoidHom& u);

struct KummerVerdict {
  bool kummer = false;
  std::optional<FiniteAbelianGroup> galois_group;
  std::string reason;  // empty when kummer
};
KummerVerdict is_kummer(const MonoidHom& u);

struct ChartClassification {
  bool injective = false;
  bool exact = false;
  bool kummer = false;
  bool log_smooth = false;
  bool log_etale = false;
  bool kummer_etale = false;
  unsigned long residue_characteristic = 0;
  std::optional<FiniteAbelianGroup> galois_group;
};
/// Requires fs domain and codomain; p must be 0 or prime.
ChartClassification chart_classification(const MonoidHom& u, unsigned long p);

/// Exponent of the Galois group. Throws PreconditionError unless u is Kummer.
Integer ramification_index(const MonoidHom& u);

enum class PushoutMode { raw, fine, fs };
PushoutMode parse_pushout_mode(const std::string& name);

/// Presentation on the generators of Q followed by those of R.
struct RawPushout {
  MonoidPresentation presentation;
  std::size_t left_generators = 0;
};
RawPushout raw_pushout(const MonoidHom& u, const MonoidHom& v);

struct Pushout {
  AffineMonoid monoid;
  MonoidHom left;   // Q -> pushout
  MonoidHom right;  // R -> pushout
};
/// Fine or fs amalgamated sum of u: P -> Q and v: P -> R.
Pushout pushout(const MonoidHom& u, const MonoidHom& v, PushoutMode mode);

/// The fs j-fold self pushout of a Kummer u: P -> Q and its canonical map to
/// Q (+) G^{j-1}, (y_1, ..., y_j) -> (y_1 + ... + y_j, [y_2], ..., [y_j]).
/// P and Q are replaced by their intrinsic forms.
struct SelfProductDecomposition {
  std::size_t factors = 1;
  MonoidHom chart;                     // u in intrinsic form
  FiniteAbelianGroup galois_group;
  AffineMonoid self_product;
  std::vector<MonoidHom> insertions;   // Q -> self_product
  AffineMonoid target;                 // Q (+) G^{j-1}
  MonoidHom canonical_map;             // self_product -> target
  bool certified = false;
  std::string counterexample;          // empty when certified

  DirectProduct factor_sum;            // Q^gp coordinates of each factor -> product
  Quotient pushout_group;              // product -> self_product ambient
  DirectProduct target_sum;            // Q^gp (+) G^{j-1}
  Quotient galois;                     // Q^gp -> G
};
SelfProductDecomposition self_product_decomposition(const MonoidHom& u, std::size_t j);

/// Least n with Q inside P^{1/n} in P^gp (x) Q. Requires u Kummer and P^gp, Q^gp torsion-free.
unsigned long abhyankar_index(const MonoidHom& u);

/// Whether p is 0 or prime and, if prime, does not divide n.
bool invertible_in_characteristic(const Integer& n, unsigned long p);
bool is_prime(unsigned long n);

}  // namespace logchart
