#include "logchart/field_linalg.hpp"

#include <stdexcept>
#include <utility>

namespace logchart {

namespace {

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = static_cast<std::uint64_t>((unsigned __int128)result * base % p);
    base = static_cast<std::uint64_t>((unsigned __int128)base * base % p);
    exp >>= 1U;
  }
  return result;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw std::domain_error("zero has no inverse");
  return mod_pow(a, p - 2, p);
}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, std::uint64_t prime)
    : rows_(rows), cols_(cols), p_(prime), data_(rows * cols, 0) {}

void FpMatrix::set(std::size_t i, std::size_t j, std::int64_t v) { data_[i * cols_ + j] = reduce_signed(v, p_); }

void FpMatrix::add_to(std::size_t i, std::size_t j, std::int64_t v) {
  data_[i * cols_ + j] = (data_[i * cols_ + j] + reduce_signed(v, p_)) % p_;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
  if (cols_ != o.rows_ || p_ != o.p_) throw std::invalid_argument("incompatible matrices");
  FpMatrix out(rows_, o.cols_, p_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint64_t a = get(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        out.data_[i * o.cols_ + j] = (out.data_[i * o.cols_ + j] + a * o.get(k, j)) % p_;
    }
  return out;
}

bool FpMatrix::is_zero() const {
  for (auto v : data_)
    if (v != 0) return false;
  return true;
}

std::size_t FpMatrix::rank() const {
  std::vector<std::uint64_t> a = data_;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    std::size_t piv = rank;
    while (piv < rows_ && a[piv * cols_ + c] == 0) ++piv;
    if (piv == rows_) continue;
    if (piv != rank)
      for (std::size_t j = c; j < cols_; ++j) std::swap(a[piv * cols_ + j], a[rank * cols_ + j]);
    std::uint64_t inv = mod_inverse(a[rank * cols_ + c], p_);
    for (std::size_t j = c; j < cols_; ++j) a[rank * cols_ + j] = a[rank * cols_ + j] * inv % p_;
    for (std::size_t i = rank + 1; i < rows_; ++i) {
      std::uint64_t f = a[i * cols_ + c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols_; ++j)
        a[i * cols_ + j] = (a[i * cols_ + j] + (p_ - f) * a[rank * cols_ + j]) % p_;
    }
    ++rank;
  }
  return rank;
}

std::string FpMatrix::key() const {
  std::string k = std::to_string(rows_) + "x" + std::to_string(cols_) + "/" + std::to_string(p_) + ":";
  k.reserve(k.size() + data_.size());
  for (auto v : data_) k.append(std::to_string(v)).push_back(',');
  return k;
}

PrimeFieldComplex::PrimeFieldComplex(std::uint64_t prime, std::vector<std::size_t> dimensions,
                                     std::vector<FpMatrix> differentials)
    : p_(prime), dims_(std::move(dimensions)), diffs_(std::move(differentials)) {
  if (dims_.empty()) throw std::invalid_argument("complex has no terms");
  if (diffs_.size() + 1 != dims_.size()) throw std::invalid_argument("need one differential between consecutive terms");
  for (std::size_t i = 0; i < diffs_.size(); ++i) {
    if (diffs_[i].rows() != dims_[i + 1] || diffs_[i].cols() != dims_[i] || diffs_[i].prime() != p_)
      throw std::invalid_argument("differential " + std::to_string(i) + " has the wrong shape");
    if (i > 0 && !(diffs_[i] * diffs_[i - 1]).is_zero())
      throw std::logic_error("differentials " + std::to_string(i - 1) + " and " + std::to_string(i) +
                             " do not compose to zero");
  }
  for (const auto& d : diffs_) ranks_.push_back(d.rank());
}

std::vector<std::size_t> PrimeFieldComplex::cohomology() const {
  std::vector<std::size_t> h;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    std::size_t out = i < ranks_.size() ? ranks_[i] : 0;
    std::size_t in = i > 0 ? ranks_[i - 1] : 0;
    h.push_back(dims_[i] - out - in);
  }
  return h;
}

long PrimeFieldComplex::euler_characteristic() const {
  long chi = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) chi += (i % 2 ? -1L : 1L) * static_cast<long>(dims_[i]);
  return chi;
}

}  // namespace logchart
