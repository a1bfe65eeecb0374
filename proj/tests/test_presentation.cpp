#include "logchart/monoid.hpp"
#include "logchart/morphism.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <numeric>

using namespace logchart;

namespace {

MonoidPresentation present(std::size_t s, std::vector<std::pair<IntVector, IntVector>> relations) {
  MonoidPresentation p;
  p.generator_count = s;
  p.relations = std::move(relations);
  return p;
}

// Number of maps of the generators into Z/m that respect every relation.
long long respecting_maps(const MonoidPresentation& p, long long m) {
  long long count = 0;
  std::vector<long long> f(p.generator_count, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == p.generator_count) {
      for (const auto& [l, r] : p.relations) {
        long long t = 0;
        for (std::size_t k = 0; k < p.generator_count; ++k) t += (l[k].get_si() - r[k].get_si()) * f[k];
        if (((t % m) + m) % m != 0) return;
      }
      ++count;
      return;
    }
    for (long long v = 0; v < m; ++v) {
      f[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

// |Hom(G, Z/m)| for G = Z^a (+) Z/d_1 (+) ...
long long hom_count(const AbelianGroup& g, long long m) {
  long long out = 1;
  for (std::size_t i = 0; i < g.free_rank; ++i) out *= m;
  for (const auto& d : g.torsion) out *= std::gcd(d.get_si(), m);
  return out;
}

}  // namespace

TEST_CASE("groupification of <a, b | 2a = 2b>") {
  auto g = groupify(present(2, {{make_vector({2, 0}), make_vector({0, 2})}}));
  CHECK(g.group == AbelianGroup{1, make_vector({2})});
  REQUIRE(g.generator_images.size() == 2);
  CHECK(g.generator_images[0] == make_vector({1, 0}));
  CHECK(g.generator_images[1] == make_vector({1, 1}));
}

TEST_CASE("groupification of free and collapsing presentations") {
  auto f = groupify(present(2, {}));
  CHECK(f.group == AbelianGroup::free(2));
  CHECK(f.generator_images[0] == make_vector({1, 0}));
  CHECK(f.generator_images[1] == make_vector({0, 1}));
  auto t = groupify(present(1, {{make_vector({2}), make_vector({1})}}));
  CHECK(t.group.is_trivial());
}

TEST_CASE("groupification is universal for maps into cyclic groups") {
  std::mt19937_64 rng(67);
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t s = static_cast<std::size_t>(oracle::uniform(rng, 1, 3));
    std::size_t nrel = static_cast<std::size_t>(oracle::uniform(rng, 0, 2));
    std::vector<std::pair<IntVector, IntVector>> rels;
    for (std::size_t k = 0; k < nrel; ++k) {
      IntVector l(s), r(s);
      for (std::size_t i = 0; i < s; ++i) {
        l[i] = oracle::uniform(rng, 0, 3);
        r[i] = oracle::uniform(rng, 0, 3);
      }
      rels.emplace_back(l, r);
    }
    MonoidPresentation p = present(s, rels);
    auto g = groupify(p);
    for (long long m : {2, 3, 4, 5, 6, 8, 9}) CHECK(respecting_maps(p, m) == hom_count(g.group, m));
    for (const auto& [l, r] : rels) {
      IntVector a(g.group.dimension(), 0), b(g.group.dimension(), 0);
      for (std::size_t i = 0; i < s; ++i) {
        a = add(a, scale(l[i], g.generator_images[i]));
        b = add(b, scale(r[i], g.generator_images[i]));
      }
      CHECK(g.group.reduce(a) == g.group.reduce(b));
    }
  }
}

TEST_CASE("integralization examples") {
  CHECK(integralize(present(1, {{make_vector({2}), make_vector({1})}})).generator_count() == 0);
  CHECK(same_monoid(integralize(present(2, {})), AffineMonoid::free(2)));
  AffineMonoid n = integralize(present(2, {{make_vector({1, 1}), make_vector({0, 2})}}));
  CHECK(n.generator_count() == 1);
  auto c = classify(n);
  CHECK(c.fs);
  CHECK(c.sharp);
  CHECK(c.dimension == 1);
}

TEST_CASE("lattice presentations recover the monoid") {
  std::mt19937_64 rng(71);
  for (int iter = 0; iter < 40; ++iter) {
    std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, 1, 3));
    std::size_t n = static_cast<std::size_t>(oracle::uniform(rng, 1, 4));
    std::vector<IntVector> gi;
    for (std::size_t k = 0; k < n; ++k) {
      IntVector v(r);
      for (auto& x : v) x = oracle::uniform(rng, 0, 3);
      gi.push_back(v);
    }
    AffineMonoid m(AbelianGroup::free(r), gi);
    MonoidPresentation p = lattice_presentation(m);
    CHECK(p.generator_count == m.generator_count());
    for (const auto& [l, rr] : p.relations) CHECK(m.generator_matrix() * l == m.generator_matrix() * rr);
    AffineMonoid back = integralize(p);
    CHECK(classify(back).dimension == classify(m).dimension);
    CHECK(classify(back).saturated == classify(m).saturated);
  }
}

TEST_CASE("pseudo-integrality examples") {
  CHECK_FALSE(find_pseudo_integrality_violation(present(1, {}), 8).has_value());
  MonoidPresentation bad = present(2, {{make_vector({1, 1}), make_vector({1, 0})}});
  auto v = find_pseudo_integrality_violation(bad, 8);
  REQUIRE(v.has_value());
  CHECK_FALSE(is_zero(v->second));
  CHECK(congruent_within(bad, add(v->first, v->second), v->first, 8));

  MonoidHom two = make_hom(AffineMonoid::free(1), AffineMonoid::free(1), IntegerMatrix{{2}});
  MonoidHom id = make_hom(AffineMonoid::free(1), AffineMonoid::free(1), IntegerMatrix{{1}});
  Pushout po = pushout(two, id, PushoutMode::fs);
  CHECK_FALSE(find_pseudo_integrality_violation(lattice_presentation(po.monoid), 8).has_value());
}

TEST_CASE("integral monoids have no pseudo-integrality violation") {
  std::mt19937_64 rng(73);
  for (int iter = 0; iter < 30; ++iter) {
    std::size_t n = static_cast<std::size_t>(oracle::uniform(rng, 1, 3));
    std::vector<IntVector> gi;
    for (std::size_t k = 0; k < n; ++k) gi.push_back(make_vector({oracle::uniform(rng, 0, 3), oracle::uniform(rng, 0, 3)}));
    AffineMonoid m(AbelianGroup::free(2), gi);
    CHECK_FALSE(find_pseudo_integrality_violation(lattice_presentation(m), 6).has_value());
  }
}

TEST_CASE("congruence search") {
  MonoidPresentation p = present(2, {{make_vector({2, 0}), make_vector({0, 2})}});
  CHECK(congruent_within(p, make_vector({3, 0}), make_vector({1, 2}), 4));
  CHECK_FALSE(congruent_within(p, make_vector({1, 0}), make_vector({0, 1}), 6));
}

TEST_CASE("presentation validation") {
  CHECK_THROWS_AS(present(2, {{make_vector({1}), make_vector({0, 1})}}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(present(1, {{make_vector({-1}), make_vector({0})}}).validate(), std::invalid_argument);
  CHECK_NOTHROW(present(1, {{make_vector({1}), make_vector({0})}}).validate());
}
