#include "logchart/errors.hpp"
#include "logchart/monoid.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace logchart;

namespace {

AffineMonoid in_z(std::size_t r, std::vector<IntVector> gens) {
  return AffineMonoid(AbelianGroup::free(r), std::move(gens));
}

std::vector<oracle::Vec> sorted_vecs(const std::vector<IntVector>& v) {
  std::vector<oracle::Vec> out;
  for (const auto& x : v) out.push_back(oracle::to_vec(x));
  std::sort(out.begin(), out.end());
  return out;
}

bool generators_in(const AffineMonoid& a, const AffineMonoid& b) {
  for (const auto& g : a.generators())
    if (!membership(b, g)) return false;
  return true;
}

}  // namespace

TEST_CASE("construction drops zero and duplicate generators") {
  AffineMonoid m = in_z(1, {make_vector({2}), make_vector({0}), make_vector({3}), make_vector({2})});
  CHECK(m.generators() == std::vector<IntVector>{make_vector({2}), make_vector({3})});
  AffineMonoid t(AbelianGroup{0, make_vector({3})}, {make_vector({4}), make_vector({1})});
  CHECK(t.generator_count() == 1);
  CHECK(in_z(2, {}).generator_count() == 0);
}

TEST_CASE("saturation examples") {
  CHECK(saturate(in_z(1, {make_vector({2}), make_vector({3})})).generators() ==
        std::vector<IntVector>{make_vector({1})});
  CHECK(saturate(in_z(2, {make_vector({2, 0}), make_vector({0, 1}), make_vector({1, 1})})).generators() ==
        std::vector<IntVector>{make_vector({0, 1}), make_vector({1, 0})});
  CHECK(same_monoid(saturate(AffineMonoid::free(2)), AffineMonoid::free(2)));
}

TEST_CASE("saturation with torsion in the ambient group") {
  // <(2, 1), (2, 0)> in Z (+) Z/2: (0, 1) is torsion in the group and 2 (0, 1) = 0
  AffineMonoid m(AbelianGroup{1, make_vector({2})}, {make_vector({2, 1}), make_vector({2, 0})});
  AffineMonoid s = saturate(m);
  CHECK_FALSE(membership(m, make_vector({0, 1})).has_value());
  CHECK(membership(s, make_vector({0, 1})).has_value());
  CHECK_FALSE(membership(s, make_vector({1, 0})).has_value());
  CHECK(generators_in(m, s));
  AffineMonoid single(AbelianGroup{1, make_vector({2})}, {make_vector({2, 1})});
  CHECK_FALSE(membership(saturate(single), make_vector({2, 0})).has_value());
  CHECK(membership(saturate(single), make_vector({4, 0})).has_value());
}

TEST_CASE("membership examples") {
  AffineMonoid m = in_z(1, {make_vector({2}), make_vector({3})});
  CHECK_FALSE(membership(m, make_vector({1})).has_value());
  CHECK(membership(m, make_vector({7})) == make_vector({2, 1}));
  AffineMonoid p = in_z(2, {make_vector({2, 0}), make_vector({0, 1}), make_vector({1, 1})});
  CHECK_FALSE(membership(p, make_vector({1, 0})).has_value());
  CHECK_THROWS_AS(membership(m, make_vector({1, 2})), std::invalid_argument);
}

TEST_CASE("membership agrees with reachability on random monoids") {
  std::mt19937_64 rng(37);
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, 1, 3));
    std::size_t n = static_cast<std::size_t>(oracle::uniform(rng, 1, 4));
    std::vector<oracle::Vec> g;
    std::vector<IntVector> gi;
    for (std::size_t k = 0; k < n; ++k) {
      oracle::Vec v(r);
      for (auto& x : v) x = oracle::uniform(rng, 0, 4);
      if (std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; })) continue;
      g.push_back(v);
      gi.push_back(oracle::to_int(v));
    }
    if (g.empty()) continue;
    AffineMonoid m = in_z(r, gi);
    MonoidStructure st(m);
    oracle::BoxReachability reach(g, r, 9);
    oracle::Vec x(r, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == r) {
        auto cert = st.membership(oracle::to_int(x));
        CHECK(cert.has_value() == reach(x));
        if (cert) CHECK(m.generator_matrix() * *cert == oracle::to_int(x));
        return;
      }
      for (long v = 0; v <= 8; ++v) {
        x[i] = v;
        rec(i + 1);
      }
    };
    rec(0);
  }
}

TEST_CASE("saturation agrees with the box oracle on small instances") {
  std::mt19937_64 rng(41);
  int tested = 0;
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, 1, 3));
    std::size_t n = static_cast<std::size_t>(oracle::uniform(rng, 1, 4));
    std::vector<oracle::Vec> g;
    std::vector<IntVector> gi;
    for (std::size_t k = 0; k < n; ++k) {
      oracle::Vec v(r);
      for (auto& x : v) x = oracle::uniform(rng, 0, 2);
      if (std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; })) continue;
      g.push_back(v);
      gi.push_back(oracle::to_int(v));
    }
    if (g.empty()) continue;
    ++tested;
    AffineMonoid s = saturate(in_z(r, gi));
    CHECK(sorted_vecs(s.generators()) == oracle::box_hilbert_basis(g, r, 6, 24));
  }
  CHECK(tested > 40);
}

TEST_CASE("saturation is idempotent, contains M, and multiples come back") {
  std::mt19937_64 rng(43);
  for (int iter = 0; iter < 80; ++iter) {
    std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, 1, 3));
    std::size_t n = static_cast<std::size_t>(oracle::uniform(rng, 1, 5));
    std::vector<IntVector> gi;
    for (std::size_t k = 0; k < n; ++k) {
      IntVector v(r);
      for (auto& x : v) x = oracle::uniform(rng, -3, 4);
      gi.push_back(v);
    }
    AffineMonoid m = in_z(r, gi);
    AffineMonoid s = saturate(m);
    AffineMonoid s2 = saturate(s);
    CHECK(generators_in(s, s2));
    CHECK(generators_in(s2, s));
    CHECK(generators_in(m, s));
    CHECK(classify(s).saturated);
    MonoidStructure st(m);
    for (const auto& h : s.generators()) {
      bool found = false;
      for (long k = 1; k <= 64 && !found; ++k) found = st.contains(scale(Integer(k), h));
      CHECK(found);
    }
  }
}

TEST_CASE("units and sharp quotient examples") {
  auto a = units_and_sharp_quotient(in_z(2, {make_vector({1, 0}), make_vector({-1, 0}), make_vector({0, 1})}));
  CHECK(a.unit_group == AbelianGroup::free(1));
  CHECK(classify(a.sharp).sharp);
  CHECK(classify(a.sharp).dimension == 1);
  CHECK(a.sharp.generator_count() == 1);

  auto b = units_and_sharp_quotient(AffineMonoid::free(2));
  CHECK(b.unit_group.is_trivial());
  CHECK(same_monoid(b.sharp, AffineMonoid::free(2)));

  AffineMonoid c = in_z(2, {make_vector({1, 1}), make_vector({-1, -1}), make_vector({1, 0})});
  auto u = units_and_sharp_quotient(c);
  CHECK(u.unit_group == AbelianGroup::free(1));
  REQUIRE(u.unit_generators.size() == 1);
  IntVector e = u.unit_generators[0];
  CHECK((e == make_vector({1, 1}) || e == make_vector({-1, -1})));
  CHECK(membership(c, e).has_value());
  CHECK(membership(c, negate(e)).has_value());
  CHECK(classify(u.sharp).sharp);
  CHECK(u.sharp.generator_count() == 1);
}

TEST_CASE("units are invertible in random monoids") {
  std::mt19937_64 rng(47);
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, 1, 3));
    std::size_t n = static_cast<std::size_t>(oracle::uniform(rng, 1, 5));
    std::vector<IntVector> gi;
    for (std::size_t k = 0; k < n; ++k) {
      IntVector v(r);
      for (auto& x : v) x = oracle::uniform(rng, -2, 2);
      gi.push_back(v);
    }
    AffineMonoid m = in_z(r, gi);
    auto u = units_and_sharp_quotient(m);
    for (const auto& e : u.unit_generators) {
      CHECK(membership(m, e).has_value());
      CHECK(membership(m, negate(e)).has_value());
    }
    CHECK(classify(u.sharp).sharp);
    for (const auto& g : m.generators()) CHECK(membership(u.sharp, u.sharp.ambient().reduce(u.projection * g)));
  }
}

TEST_CASE("classification examples") {
  auto a = classify(in_z(1, {make_vector({2}), make_vector({3})}));
  CHECK(a.fine);
  CHECK(a.sharp);
  CHECK_FALSE(a.saturated);
  CHECK_FALSE(a.fs);
  for (std::size_t r = 1; r <= 4; ++r) {
    auto n = classify(AffineMonoid::free(r));
    CHECK(n.fs);
    CHECK(n.sharp);
    CHECK(n.dimension == r);
  }
  auto z = classify(in_z(1, {make_vector({1}), make_vector({-1})}));
  CHECK(z.fs);
  CHECK_FALSE(z.sharp);
}

TEST_CASE("fs flag is consistent with saturation") {
  std::mt19937_64 rng(53);
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, 1, 3));
    std::size_t n = static_cast<std::size_t>(oracle::uniform(rng, 1, 4));
    std::vector<IntVector> gi;
    for (std::size_t k = 0; k < n; ++k) {
      IntVector v(r);
      for (auto& x : v) x = oracle::uniform(rng, -1, 3);
      gi.push_back(v);
    }
    AffineMonoid m = in_z(r, gi);
    bool equal = generators_in(saturate(m), m);
    CHECK(classify(m).fs == equal);
    CHECK(classify(m).saturated == equal);
  }
}

TEST_CASE("exact embedding of N^2 is the identity") {
  MonoidHom phi = exact_embedding(AffineMonoid::free(2));
  CHECK(phi.codomain.ambient() == AbelianGroup::free(2));
  // facets ordered lexicographically: y >= 0 before x >= 0
  CHECK(phi.group_map == IntegerMatrix{{0, 1}, {1, 0}});
}

TEST_CASE("exact embedding of a wedge monoid") {
  AffineMonoid p = in_z(2, {make_vector({1, 0}), make_vector({1, 1}), make_vector({1, 2})});
  MonoidHom phi = exact_embedding(p);
  CHECK(phi.group_map == IntegerMatrix{{0, 1}, {2, -1}});
  CHECK(phi.apply(make_vector({1, 0})) == make_vector({0, 2}));
  CHECK(phi.apply(make_vector({1, 1})) == make_vector({1, 1}));
  CHECK(phi.apply(make_vector({1, 2})) == make_vector({2, 0}));
}

TEST_CASE("exact embedding of the cone over a square needs four coordinates") {
  // one more than the rank of the group
  std::vector<oracle::Vec> g{{1, 0, 0}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}};
  std::vector<IntVector> gi;
  for (const auto& v : g) gi.push_back(oracle::to_int(v));
  AffineMonoid p = in_z(3, gi);
  MonoidHom phi = exact_embedding(p);
  CHECK(phi.codomain.ambient().free_rank == 4);
  CHECK(phi.group_map.rows() == 4);
  oracle::BoxReachability reach(g, 3, 13);
  bool agree = true;
  for (long a = -4; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b)
      for (long c = -4; c <= 4; ++c) {
        IntVector x = make_vector({a, b, c});
        IntVector y = phi.group_map * x;
        bool nonneg = std::all_of(y.begin(), y.end(), [](const Integer& v) { return v >= 0; });
        agree = agree && nonneg == reach(oracle::Vec{a, b, c});
      }
  CHECK(agree);
}

TEST_CASE("exact embeddings cut out the monoid on random instances") {
  std::mt19937_64 rng(59);
  for (int iter = 0; iter < 30; ++iter) {
    std::size_t n = static_cast<std::size_t>(oracle::uniform(rng, 2, 4));
    std::vector<oracle::Vec> g;
    for (std::size_t k = 0; k < n; ++k) g.push_back({oracle::uniform(rng, 0, 3), oracle::uniform(rng, 0, 3)});
    std::vector<IntVector> gi;
    for (const auto& v : g) gi.push_back(oracle::to_int(v));
    AffineMonoid p = saturate(in_z(2, gi));
    oracle::Lattice lat(g, 2);
    if (!lat.contains({1, 0}) || !lat.contains({0, 1})) continue;
    MonoidHom phi = exact_embedding(p);
    std::vector<oracle::Vec> hb = sorted_vecs(p.generators());
    oracle::BoxReachability reach(hb, 2, 40);
    bool agree = true;
    for (long a = -6; a <= 6; ++a)
      for (long b = -6; b <= 6; ++b) {
        IntVector y = phi.group_map * make_vector({a, b});
        bool nonneg = std::all_of(y.begin(), y.end(), [](const Integer& v) { return v >= 0; });
        agree = agree && nonneg == reach(oracle::Vec{a, b});
      }
    CHECK(agree);
  }
}

TEST_CASE("exact embedding rejects non-sharp or non-saturated input") {
  CHECK_THROWS_AS(exact_embedding(in_z(1, {make_vector({2}), make_vector({3})})), std::invalid_argument);
  CHECK_THROWS_AS(exact_embedding(in_z(1, {make_vector({1}), make_vector({-1})})), std::invalid_argument);
}

TEST_CASE("splitting sections") {
  AffineMonoid zn = in_z(2, {make_vector({1, 0}), make_vector({-1, 0}), make_vector({0, 1})});
  MonoidHom f = make_hom(zn, AffineMonoid::free(1), IntegerMatrix{{0, 1}});
  MonoidHom s = splitting_section(f);
  CHECK(s.group_map == IntegerMatrix{{0}, {1}});
  CHECK(f.apply(s.apply(make_vector({1}))) == make_vector({1}));

  MonoidHom sum = make_hom(AffineMonoid::free(2), AffineMonoid::free(1), IntegerMatrix{{1, 1}});
  CHECK_THROWS_AS(splitting_section(sum), PreconditionError);
}

TEST_CASE("splitting sections onto the sharp quotient on random monoids") {
  std::mt19937_64 rng(61);
  for (int iter = 0; iter < 40; ++iter) {
    std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, 2, 3));
    std::vector<IntVector> gi;
    for (std::size_t k = 0; k < r + 1; ++k) {
      IntVector v(r);
      for (auto& x : v) x = oracle::uniform(rng, -2, 2);
      gi.push_back(v);
    }
    std::vector<oracle::Vec> g;
    for (const auto& v : gi) g.push_back(oracle::to_vec(v));
    oracle::Lattice lat(g, r);
    bool full = true;
    for (std::size_t i = 0; i < r; ++i) {
      oracle::Vec e(r, 0);
      e[i] = 1;
      full = full && lat.contains(e);
    }
    if (!full) continue;
    AffineMonoid m = saturate(in_z(r, gi));
    auto u = units_and_sharp_quotient(m);
    MonoidHom f = make_hom(m, u.sharp, u.projection);
    MonoidHom s = splitting_section(f);
    for (const auto& q : u.sharp.generators()) {
      CHECK(f.apply(s.apply(q)) == q);
      CHECK(membership(m, s.apply(q)).has_value());
    }
  }
}

TEST_CASE("fractional refinement") {
  auto a = fractional_refinement(AffineMonoid::free(1), 2);
  CHECK(a.inclusion.group_map == IntegerMatrix{{2}});
  auto b = fractional_refinement(AffineMonoid::free(2), 6);
  CHECK(cokernel_group(b.inclusion.group_map) == AbelianGroup{0, make_vector({6, 6})});
  AffineMonoid p = in_z(2, {make_vector({1, 0}), make_vector({1, 1}), make_vector({1, 2})});
  auto c = fractional_refinement(p, 1);
  CHECK(c.inclusion.group_map == IntegerMatrix::identity(2));
  CHECK(same_monoid(c.refined, p));
  CHECK_THROWS_AS(fractional_refinement(AffineMonoid(AbelianGroup{1, make_vector({2})}, {make_vector({1, 0})}), 2),
                  std::invalid_argument);
}

TEST_CASE("canonical form identifies equal monoids given differently") {
  AffineMonoid a = in_z(2, {make_vector({1, 0}), make_vector({0, 1})});
  AffineMonoid b = in_z(2, {make_vector({0, 1}), make_vector({1, 1}), make_vector({1, 0})});
  CHECK(canonical_form(a) == canonical_form(b));
  AffineMonoid c = in_z(2, {make_vector({1, 0}), make_vector({1, 1})});
  CHECK_FALSE(canonical_form(a) == canonical_form(c));
}

TEST_CASE("intrinsic form lives in the groupification") {
  AffineMonoid m = in_z(2, {make_vector({2, 0}), make_vector({0, 2})});
  IntrinsicForm f = intrinsic(m);
  CHECK(f.monoid.ambient() == AbelianGroup::free(2));
  CHECK(classify(f.monoid).fs);
  CHECK(f.to_intrinsic(make_vector({2, 2})).has_value());
  CHECK_FALSE(f.to_intrinsic(make_vector({1, 0})).has_value());
}
