#include "logchart/cohomology.hpp"

#include "logchart/parallel.hpp"

#include <bit>
#include <functional>
#include <stdexcept>

namespace logchart {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t smallest_prime_congruent_one(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("level must be positive");
  for (std::uint64_t l = m + 1;; l += m)
    if (is_prime_u64(l)) return l;
}

std::uint64_t smallest_prime_not_dividing(const Integer& n) {
  for (std::uint64_t l = 2;; ++l)
    if (is_prime_u64(l) && n % l != 0) return l;
}

std::uint64_t primitive_root(std::uint64_t prime) {
  if (!is_prime_u64(prime)) throw std::invalid_argument("modulus is not prime");
  if (prime == 2) return 1;
  std::vector<std::uint64_t> factors;
  std::uint64_t n = prime - 1;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) factors.push_back(n);
  for (std::uint64_t g = 2; g < prime; ++g) {
    bool ok = true;
    for (auto f : factors)
      if (mod_pow(g, (prime - 1) / f, prime) == 1) ok = false;
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

// ---- finite groups --------------------------------------------------------

PrimeFieldComplex group_cochain_complex(const FiniteAbelianGroup& g, std::uint64_t prime, std::size_t max_degree) {
  if (!is_prime_u64(prime)) throw std::invalid_argument("coefficient field characteristic must be prime");
  const std::size_t k = g.invariant_factors.size();
  const std::size_t top = max_degree + 1;
  std::vector<std::vector<std::vector<std::size_t>>> basis(top + 1);
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> index(top + 1);
  std::vector<std::size_t> t(k, 0);
  std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left,
                                                                       std::size_t deg) {
    if (i + 1 >= k) {
      if (k > 0) t[k - 1] = left;
      index[deg][t] = basis[deg].size();
      basis[deg].push_back(t);
      return;
    }
    for (std::size_t a = left + 1; a-- > 0;) {
      t[i] = a;
      rec(i + 1, left - a, deg);
    }
  };
  for (std::size_t deg = 0; deg <= top; ++deg)
    if (k > 0 || deg == 0) rec(0, deg, deg);

  std::vector<std::size_t> dims;
  for (const auto& b : basis) dims.push_back(b.size());
  std::vector<FpMatrix> diffs;
  for (std::size_t deg = 0; deg < top; ++deg) {
    FpMatrix d(dims[deg + 1], dims[deg], prime);
    for (std::size_t c = 0; c < basis[deg].size(); ++c) {
      const auto& src = basis[deg][c];
      std::size_t before = 0;
      for (std::size_t f = 0; f < k; ++f) {
        if (src[f] % 2 == 1) {
          auto dst = src;
          ++dst[f];
          Integer order = g.invariant_factors[f];
          std::int64_t coeff = static_cast<std::int64_t>(mpz_fdiv_ui(order.get_mpz_t(), prime));
          d.add_to(index[deg + 1].at(dst), c, before % 2 ? -coeff : coeff);
        }
        before += src[f];
      }
    }
    diffs.push_back(std::move(d));
  }
  return PrimeFieldComplex(prime, dims, diffs);
}

std::vector<std::size_t> finite_group_cohomology(const FiniteAbelianGroup& g, std::uint64_t prime,
                                                 std::size_t max_degree) {
  auto h = group_cochain_complex(g, prime, max_degree).cohomology();
  h.resize(max_degree + 1);
  return h;
}

// ---- Koszul complexes -----------------------------------------------------

CharacterDatum make_character_datum(std::size_t n, std::uint64_t level, std::vector<std::uint64_t> numerators,
                                    std::uint64_t prime) {
  if (level == 0) throw std::invalid_argument("level must be positive");
  if (numerators.size() != n) throw std::invalid_argument("need one exponent per circle factor");
  for (auto j : numerators)
    if (j >= level) throw std::invalid_argument("exponents must lie in [0, 1)");
  if (prime == 0) prime = smallest_prime_congruent_one(level);
  if (!is_prime_u64(prime)) throw std::invalid_argument("coefficient field characteristic must be prime");
  if ((prime - 1) % level != 0)
    throw std::invalid_argument("F_" + std::to_string(prime) + " has no primitive " + std::to_string(level) +
                                "-th root of unity");
  std::uint64_t zeta = mod_pow(primitive_root(prime), (prime - 1) / level, prime);
  return CharacterDatum{n, level, std::move(numerators), prime, zeta};
}

PrimeFieldComplex koszul_complex(const CharacterDatum& cd) {
  const std::size_t n = cd.n;
  if (n > 20) throw std::invalid_argument("too many circle factors");
  std::vector<std::int64_t> c;
  for (auto j : cd.numerators)
    c.push_back(static_cast<std::int64_t>(mod_pow(cd.zeta, j, cd.prime)) - 1);
  std::vector<std::vector<std::uint32_t>> subsets(n + 1);
  std::vector<std::size_t> position(std::size_t{1} << n);
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    auto size = static_cast<std::size_t>(std::popcount(s));
    position[s] = subsets[size].size();
    subsets[size].push_back(s);
  }
  std::vector<std::size_t> dims;
  for (const auto& s : subsets) dims.push_back(s.size());
  std::vector<FpMatrix> diffs;
  for (std::size_t i = 0; i < n; ++i) {
    FpMatrix d(dims[i + 1], dims[i], cd.prime);
    for (std::size_t col = 0; col < subsets[i].size(); ++col) {
      std::uint32_t s = subsets[i][col];
      for (std::size_t k = 0; k < n; ++k) {
        if (s & (1U << k)) continue;
        int below = std::popcount(s & ((1U << k) - 1));
        d.add_to(position[s | (1U << k)], col, below % 2 ? -c[k] : c[k]);
      }
    }
    diffs.push_back(std::move(d));
  }
  return PrimeFieldComplex(cd.prime, dims, diffs);
}

std::vector<std::size_t> koszul_cohomology(const CharacterDatum& cd, std::size_t max_degree) {
  auto h = koszul_complex(cd).cohomology();
  h.resize(max_degree + 1, 0);
  return h;
}

PolydiscCohomology polydisc_cohomology(std::size_t n, std::uint64_t level, std::uint64_t prime) {
  CharacterDatum base = make_character_datum(n, level, std::vector<std::uint64_t>(n, 0), prime);
  PolydiscCohomology out;
  out.prime = base.prime;
  out.zeta = base.zeta;
  out.totals.assign(n + 1, 0);
  std::size_t count = 1;
  for (std::size_t k = 0; k < n; ++k) count *= level;
  out.characters = count;
  std::vector<std::vector<std::size_t>> dims(count);
  parallel_for(count, [&](std::size_t idx) {
    CharacterDatum cd = base;
    std::size_t rest = idx;
    for (std::size_t k = 0; k < n; ++k) {
      cd.numerators[k] = rest % level;
      rest /= level;
    }
    dims[idx] = koszul_cohomology(cd, n);
  });
  for (std::size_t idx = 0; idx < count; ++idx) {
    bool nonzero = false;
    for (std::size_t i = 0; i <= n; ++i) {
      out.totals[i] += dims[idx][i];
      nonzero = nonzero || dims[idx][i] != 0;
    }
    if (nonzero) {
      ++out.contributing_characters;
      if (idx != 0) out.only_trivial_contributes = false;
    }
  }
  return out;
}

}  // namespace logchart
