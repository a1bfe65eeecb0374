#pragma once

// Dense linear algebra over a prime field F_l.

#include <cstdint>
#include <string>
#include <vector>

namespace logchart {

class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::size_t rows, std::size_t cols, std::uint64_t prime);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t prime() const { return p_; }

  std::uint64_t get(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, std::int64_t v);
  void add_to(std::size_t i, std::size_t j, std::int64_t v);

  FpMatrix operator*(const FpMatrix& other) const;
  bool is_zero() const;
  std::size_t rank() const;
  bool operator==(const FpMatrix& other) const = default;
  /// Content key for caching ranks.
  std::string key() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::uint64_t p_ = 2;
  std::vector<std::uint64_t> data_;
};

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p);
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);

/// Cochain complex C^0 -> C^1 -> ... over F_l; d_i: C^i -> C^{i+1}.
/// Throws std::logic_error unless consecutive differentials compose to zero.
class PrimeFieldComplex {
 public:
  PrimeFieldComplex(std::uint64_t prime, std::vector<std::size_t> dimensions, std::vector<FpMatrix> differentials);

  std::uint64_t prime() const { return p_; }
  const std::vector<std::size_t>& dimensions() const { return dims_; }
  const std::vector<FpMatrix>& differentials() const { return diffs_; }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  /// dim ker d_i - rank d_{i-1}; the last term has no outgoing differential.
  std::vector<std::size_t> cohomology() const;
  long euler_characteristic() const;

 private:
  std::uint64_t p_;
  std::vector<std::size_t> dims_;
  std::vector<FpMatrix> diffs_;
  std::vector<std::size_t> ranks_;
};

}  // namespace logchart
