#include "logchart/cohomology.hpp"
#include "logchart/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <numeric>

using namespace logchart;

namespace {

using Dims = std::vector<std::size_t>;

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Poincare series of H^*(prod Z/d_k, F_l) is (1 - t)^{-a} with a the number of
// factors divisible by l.
Dims poincare_dims(const std::vector<long>& orders, long l, std::size_t max_degree) {
  std::size_t a = 0;
  for (long d : orders) a += d % l == 0;
  Dims out;
  for (std::size_t i = 0; i <= max_degree; ++i) out.push_back(a == 0 ? (i == 0) : binom(i + a - 1, a - 1));
  return out;
}

FiniteAbelianGroup group_of(const std::vector<long>& orders) {
  IntVector v;
  for (long d : orders) v.emplace_back(d);
  return FiniteAbelianGroup::from_cyclic_orders(v);
}

MonoidHom power(long n) {
  return make_hom(AffineMonoid::free(1), AffineMonoid::free(1), IntegerMatrix{{n}});
}

MonoidHom diag23() {
  return make_hom(AffineMonoid::free(2), AffineMonoid::free(2), IntegerMatrix{{2, 0}, {0, 3}});
}

Dims unit(std::size_t len) {
  Dims d(len, 0);
  d[0] = 1;
  return d;
}

}  // namespace

TEST_CASE("finite group cohomology examples") {
  CHECK(finite_group_cohomology(group_of({6}), 5, 3) == Dims{1, 0, 0, 0});
  CHECK(finite_group_cohomology(group_of({2}), 2, 4) == Dims{1, 1, 1, 1, 1});
  CHECK(finite_group_cohomology(group_of({2, 2}), 2, 3) == Dims{1, 2, 3, 4});
  CHECK(finite_group_cohomology(FiniteAbelianGroup{}, 3, 2) == Dims{1, 0, 0});
}

TEST_CASE("finite group cohomology follows the Poincare series") {
  std::vector<std::vector<long>> groups{{2}, {3}, {4}, {2, 2}, {2, 4}, {3, 3}, {2, 6}, {6}, {9}, {2, 2, 2}, {4, 4}};
  for (const auto& g : groups)
    for (long l : {2l, 3l, 5l})
      CHECK(finite_group_cohomology(group_of(g), static_cast<std::uint64_t>(l), 4) == poincare_dims(g, l, 4));
}

TEST_CASE("coprime group cohomology is concentrated in degree zero") {
  // every group of order up to 36, by invariant factors
  std::vector<std::vector<long>> shapes{{2, 2, 2}, {2, 2, 4}, {2, 2, 6}, {2, 2, 8}, {2, 4, 4}, {3, 3, 3}, {2, 2, 2, 2},
                                        {2, 2, 2, 4}, {2, 2, 2, 2, 2}};
  for (long n = 1; n <= 36; ++n) {
    shapes.push_back({n});
    for (long a = 2; a * a <= n; ++a)
      if (n % a == 0 && (n / a) % a == 0) shapes.push_back({a, n / a});
  }
  for (const auto& shape : shapes) {
    long n = std::accumulate(shape.begin(), shape.end(), 1l, std::multiplies<long>());
    std::uint64_t l = smallest_prime_not_dividing(n);
    for (std::uint64_t q : {l, smallest_prime_not_dividing(n * static_cast<long>(l))})
      CHECK(finite_group_cohomology(group_of(shape), q, 3) == unit(4));
  }
}

TEST_CASE("cyclic l-groups have one class in every degree") {
  for (long l : {2l, 3l, 5l})
    for (long k = 1; k <= 3; ++k) {
      long order = 1;
      for (long i = 0; i < k; ++i) order *= l;
      if (order > 64) continue;
      CHECK(finite_group_cohomology(group_of({order}), static_cast<std::uint64_t>(l), 5) == Dims(6, 1));
    }
}

TEST_CASE("Cech slices of the squaring cover") {
  CechSlice a = cech_complex_degreewise(power(2), 3, make_vector({3}), 4);
  CHECK(a.exact);
  CHECK_FALSE(a.in_base);
  CHECK(a.dimensions[0] == 0);
  for (auto d : a.augmented_cohomology) CHECK(d == 0);

  CechSlice b = cech_complex_degreewise(power(2), 3, make_vector({2}), 4);
  CHECK(b.exact);
  CHECK(b.in_base);
  CHECK(b.dimensions[0] == 1);
  CHECK(b.cech_cohomology == Dims{1, 0});
}

TEST_CASE("Cech slices of the identity cover are exact") {
  for (long q = 0; q <= 6; ++q)
    for (std::uint64_t l : {2, 3, 7}) CHECK(cech_complex_degreewise(power(1), l, make_vector({q}), 5).exact);
}

TEST_CASE("Cech slices are exact on the catalog covers") {
  std::vector<MonoidHom> catalog;
  for (long n = 2; n <= 6; ++n) catalog.push_back(power(n));
  catalog.push_back(diag23());
  AffineMonoid p(AbelianGroup::free(2), {make_vector({1, 0}), make_vector({1, 1}), make_vector({1, 2})});
  catalog.push_back(fractional_refinement(p, 2).inclusion);
  for (const auto& u : catalog) {
    Integer order = is_kummer(u).galois_group->order();
    std::uint64_t l = smallest_prime_not_dividing(order);
    CechComplexBuilder builder(u, l, 4);
    for (const auto& q : builder.degrees(6)) CHECK(builder.slice(q).exact);
  }
}

TEST_CASE("Cech complexes refuse characteristics dividing the group order") {
  CHECK_THROWS_AS(cech_complex_degreewise(power(2), 2, make_vector({2}), 4), PreconditionError);
  CHECK_THROWS_AS(cech_vs_group_cohomology(diag23(), 3, 2), PreconditionError);
}

TEST_CASE("Cech and group cohomology agree") {
  auto a = cech_vs_group_cohomology(power(2), 3, 3);
  CHECK(a.group_cohomology == Dims{1, 0, 0, 0});
  CHECK(a.cech_trivial_class == Dims{1, 0, 0, 0});
  CHECK(a.match);
  CHECK(a.exact_everywhere);
  auto b = cech_vs_group_cohomology(diag23(), 5, 3, 6);
  CHECK(b.group_cohomology == Dims{1, 0, 0, 0});
  CHECK(b.match);
  auto c = cech_vs_group_cohomology(power(1), 7, 2);
  CHECK(c.group_cohomology == Dims{1, 0, 0});
  CHECK(c.match);
}

TEST_CASE("Koszul examples") {
  CHECK(koszul_cohomology(make_character_datum(2, 1, {0, 0}), 2) == Dims{1, 2, 1});
  CHECK(koszul_cohomology(make_character_datum(2, 6, {0, 0}), 2) == Dims{1, 2, 1});
  CHECK(koszul_cohomology(make_character_datum(2, 2, {1, 0}, 3), 2) == Dims{0, 0, 0});
  CHECK(koszul_cohomology(make_character_datum(1, 1, {0}), 1) == Dims{1, 1});
  CHECK_THROWS_AS(make_character_datum(1, 4, {1}, 7), std::invalid_argument);
}

TEST_CASE("Koszul complexes have zero Euler characteristic") {
  std::mt19937_64 rng(83);
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t n = static_cast<std::size_t>(oracle::uniform(rng, 1, 4));
    std::uint64_t m = static_cast<std::uint64_t>(oracle::uniform(rng, 1, 6));
    std::vector<std::uint64_t> a(n);
    for (auto& x : a) x = static_cast<std::uint64_t>(oracle::uniform(rng, 0, static_cast<long>(m) - 1));
    auto cd = make_character_datum(n, m, a);
    CHECK(cd.prime % m == 1 % m);
    CHECK(mod_pow(cd.zeta, m, cd.prime) == 1);
    for (std::uint64_t d = 1; d < m; ++d)
      if (m % d == 0) CHECK(mod_pow(cd.zeta, d, cd.prime) != 1);
    PrimeFieldComplex k = koszul_complex(cd);
    CHECK(k.euler_characteristic() == 0);
    bool trivial = std::all_of(a.begin(), a.end(), [](std::uint64_t x) { return x == 0; });
    Dims dims = koszul_cohomology(cd, n);
    for (std::size_t i = 0; i <= n; ++i) CHECK(dims[i] == (trivial ? binom(n, i) : 0));
  }
}

TEST_CASE("polydisc cohomology") {
  auto a = polydisc_cohomology(2, 6, 7);
  CHECK(a.totals == Dims{1, 2, 1});
  CHECK(a.characters == 36);
  CHECK(a.contributing_characters == 1);
  CHECK(a.only_trivial_contributes);
  CHECK(polydisc_cohomology(1, 2, 3).totals == Dims{1, 1});
  CHECK(polydisc_cohomology(0, 5).totals == Dims{1});
  for (std::size_t n = 1; n <= 3; ++n) {
    auto p = polydisc_cohomology(n, 4);
    for (std::size_t i = 0; i <= n; ++i) CHECK(p.totals[i] == binom(n, i));
  }
}

TEST_CASE("field ranks agree with plain elimination") {
  std::mt19937_64 rng(89);
  for (int iter = 0; iter < 80; ++iter) {
    std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, 1, 64));
    std::size_t c = static_cast<std::size_t>(oracle::uniform(rng, 1, 64));
    std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7, 13}[static_cast<std::size_t>(oracle::uniform(rng, 0, 4))];
    FpMatrix m(r, c, p);
    std::vector<std::vector<long long>> raw(r, std::vector<long long>(c));
    bool sparse = iter % 2 == 0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        long long v = oracle::uniform(rng, -20, 20);
        if (sparse && oracle::uniform(rng, 0, 3) != 0) v = 0;
        raw[i][j] = v;
        m.set(i, j, v);
      }
    if (iter % 5 == 0 && r > 2)
      for (std::size_t j = 0; j < c; ++j) {
        raw[r - 1][j] = raw[0][j] + 2 * raw[1][j];
        m.set(r - 1, j, raw[r - 1][j]);
      }
    CHECK(m.rank() == oracle::rank_mod(raw, static_cast<long long>(p)));
  }
}

TEST_CASE("complexes reject differentials that do not compose to zero") {
  FpMatrix d0(1, 1, 5), d1(1, 1, 5);
  d0.set(0, 0, 1);
  d1.set(0, 0, 1);
  CHECK_THROWS_AS(PrimeFieldComplex(5, {1, 1, 1}, {d0, d1}), std::logic_error);
  FpMatrix z(1, 1, 5);
  CHECK(PrimeFieldComplex(5, {1, 1, 1}, {d0, z}).cohomology() == Dims{0, 0, 1});
}

TEST_CASE("prime helpers") {
  CHECK(smallest_prime_congruent_one(2) == 3);
  CHECK(smallest_prime_congruent_one(4) == 5);
  CHECK(smallest_prime_congruent_one(6) == 7);
  CHECK(smallest_prime_congruent_one(5) == 11);
  CHECK(smallest_prime_not_dividing(6) == 5);
  CHECK(smallest_prime_not_dividing(1) == 2);
  CHECK(primitive_root(7) == 3);
  CHECK(primitive_root(2) == 1);
}
