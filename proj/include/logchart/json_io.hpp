#pragma once

// JSON encodings. Integers are written as decimal strings and read from
// strings or JSON numbers.

#include "logchart/cohomology.hpp"
#include "logchart/covers.hpp"
#include "logchart/morphism.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace logchart::json_io {

using nlohmann::ordered_json;
using Json = nlohmann::ordered_json;

/// Schema or invariant violation in user input; `path` names the field.
class InputError : public std::runtime_error {
 public:
  InputError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)), message_(message) {}
  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

 private:
  std::string path_;
  std::string message_;
};

Json parse_text(const std::string& text, const std::string& source);
/// Reads a file, or standard input when path is "-".
Json read_file(const std::string& path);

Integer parse_integer(const Json& j, const std::string& path);
IntVector parse_vector(const Json& j, const std::string& path);
IntegerMatrix parse_matrix(const Json& j, const std::string& path);
AbelianGroup parse_group(const Json& j, const std::string& path);
AffineMonoid parse_monoid(const Json& j, const std::string& path = "$");
MonoidPresentation parse_presentation(const Json& j, const std::string& path = "$");
MonoidHom parse_hom(const Json& j, const std::string& path = "$");

Json to_json(const Integer& x);
Json to_json(const IntVector& v);
Json to_json(const IntegerMatrix& m);
Json to_json(const AbelianGroup& g);
Json to_json(const FiniteAbelianGroup& g);
Json to_json(const AffineMonoid& m);
Json to_json(const MonoidPresentation& p);
Json to_json(const MonoidHom& u);
Json to_json(const MonoidProperties& p);
Json to_json(const ChartClassification& c);
Json to_json(const SelfProductDecomposition& d);
Json to_json(const covers::CoverDescriptor& c);
Json to_json(const covers::CorrespondenceReport& r);
Json to_json(const CechSlice& s);
Json to_json(const CechGroupComparison& c);
Json to_json(const PolydiscCohomology& p);
Json sizes_to_json(const std::vector<std::size_t>& v);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace logchart::json_io
