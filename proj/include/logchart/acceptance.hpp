#pragma once

// The acceptance battery behind `verify-suite`.

#include "logchart/json_io.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace logchart::acceptance {

enum class Scale { smoke, full };
Scale parse_scale(const std::string& name);
std::string scale_name(Scale s);

inline constexpr std::uint64_t kDefaultSeed = 20240917;

using SaturateFn = std::function<AffineMonoid(const AffineMonoid&)>;

struct SuiteOptions {
  Scale scale = Scale::full;
  std::uint64_t seed = kDefaultSeed;
  SaturateFn saturate;  // empty: the library implementation
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;
  json_io::Json evidence;  // failing instances are attached here
  double seconds = 0;
};

struct NamedHom {
  std::string name;
  MonoidHom hom;
};
/// [n]: N -> N for 2 <= n <= 6, diag(2,3): N^2 -> N^2, and
/// P = <(1,0),(1,1),(1,2)> -> P^{1/2}.
std::vector<NamedHom> kummer_catalog();
/// N^r with the standard basis.
AffineMonoid free_monoid(std::size_t r);

/// Saturation that drops the last Hilbert basis element; used to check that
/// the battery notices a broken build.
AffineMonoid faulty_saturate(const AffineMonoid& m);

CriterionResult saturation_oracle(const SuiteOptions& opt);
CriterionResult kummer_vs_exact(const SuiteOptions& opt);
CriterionResult standard_cover_identity(const SuiteOptions& opt);
CriterionResult cech_exactness(const SuiteOptions& opt);
CriterionResult cover_classification(const SuiteOptions& opt);
CriterionResult polydisc_counts(const SuiteOptions& opt);
CriterionResult normal_forms(const SuiteOptions& opt);
CriterionResult ramification_catalog(const SuiteOptions& opt);

std::vector<CriterionResult> run_suite(const SuiteOptions& opt);
/// One line per criterion, e.g. "[PASS] 5 cover-classification: ...".
std::string format_line(const CriterionResult& r);

}  // namespace logchart::acceptance
