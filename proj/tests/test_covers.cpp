#include "logchart/covers.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace logchart;
using namespace logchart::covers;

namespace {

using Subgroup = std::set<oracle::Vec>;

Subgroup closure(const std::vector<oracle::Vec>& gens, std::size_t r, long long n) {
  Subgroup seen{oracle::Vec(r, 0)};
  std::vector<oracle::Vec> todo{oracle::Vec(r, 0)};
  while (!todo.empty()) {
    oracle::Vec x = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      oracle::Vec y(r);
      for (std::size_t i = 0; i < r; ++i) y[i] = ((x[i] + g[i]) % n + n) % n;
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen;
}

// Every subgroup of (Z/n)^r is generated by at most r elements.
std::set<Subgroup> all_subgroups(std::size_t r, long long n) {
  std::vector<oracle::Vec> elems;
  oracle::Vec x(r, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == r) {
      elems.push_back(x);
      return;
    }
    for (long long v = 0; v < n; ++v) {
      x[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  std::set<Subgroup> out;
  std::vector<oracle::Vec> chosen;
  std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t start, std::size_t left) {
    out.insert(closure(chosen, r, n));
    if (left == 0) return;
    for (std::size_t i = start; i < elems.size(); ++i) {
      chosen.push_back(elems[i]);
      pick(i, left - 1);
      chosen.pop_back();
    }
  };
  pick(0, r);
  return out;
}

Subgroup subgroup_of(const CoverDescriptor& c, std::size_t r) {
  std::vector<oracle::Vec> gens;
  for (std::size_t i = 0; i < c.subgroup.rows(); ++i) gens.push_back(oracle::to_vec(c.subgroup.row(i)));
  return closure(gens, r, static_cast<long long>(c.level));
}

LogPoint point(const AffineMonoid& p) { return make_log_point(p); }

AffineMonoid wedge() {
  return AffineMonoid(AbelianGroup::free(2), {make_vector({1, 0}), make_vector({1, 1}), make_vector({1, 2})});
}

}  // namespace

TEST_CASE("fundamental group ranks") {
  CHECK(pi1_descriptor(point(AffineMonoid::free(1))).rank == 1);
  CHECK(pi1_descriptor(point(AffineMonoid::free(3))).rank == 3);
  CHECK(pi1_descriptor(point(wedge())).rank == 2);
}

TEST_CASE("log point validation") {
  AffineMonoid z(AbelianGroup::free(1), {make_vector({1}), make_vector({-1})});
  CHECK_THROWS_AS(make_log_point(z), std::invalid_argument);
  AffineMonoid semi(AbelianGroup::free(1), {make_vector({2}), make_vector({3})});
  CHECK_THROWS_AS(make_log_point(semi), std::invalid_argument);
  CHECK_THROWS_AS(make_log_point(AffineMonoid::free(1), {4}), std::invalid_argument);
}

TEST_CASE("cover counts") {
  CHECK(classify_covers(point(AffineMonoid::free(1)), 2).size() == 2);
  CHECK(classify_covers(point(AffineMonoid::free(2)), 2).size() == 5);
  CHECK(classify_covers(point(AffineMonoid::free(1)), 6).size() == 4);
}

TEST_CASE("covers match the subgroup enumeration") {
  struct Case {
    AffineMonoid p;
    unsigned long n;
  };
  std::vector<Case> cases{{AffineMonoid::free(1), 12}, {AffineMonoid::free(2), 2}, {AffineMonoid::free(2), 4},
                          {AffineMonoid::free(2), 6}, {wedge(), 3},                {AffineMonoid::free(3), 2}};
  for (const auto& c : cases) {
    LogPoint pt = point(c.p);
    std::size_t r = pi1_descriptor(pt).rank;
    auto covers = classify_covers(pt, c.n);
    std::set<Subgroup> expected = all_subgroups(r, static_cast<long long>(c.n));
    std::set<Subgroup> got;
    for (const auto& cv : covers) {
      Subgroup g = subgroup_of(cv, r);
      got.insert(g);
      CHECK(Integer(static_cast<long>(g.size())) == cv.galois_group.order());
      CHECK(classify(cv.monoid).fs);
      auto k = is_kummer(cv.chart);
      CHECK(k.kummer);
      CHECK(k.galois_group == cv.galois_group);
    }
    CHECK(got.size() == covers.size());
    CHECK(got == expected);
  }
}

TEST_CASE("excluded primes") {
  LogPoint pt = make_log_point(AffineMonoid::free(1), {2});
  CHECK_THROWS_AS(classify_covers(pt, 2), std::invalid_argument);
  CHECK_THROWS_AS(classify_covers(pt, 6), std::invalid_argument);
  CHECK(classify_covers(pt, 3).size() == 2);
  CHECK(pi1_descriptor(pt).excluded_primes == std::vector<unsigned long>{2});
}

TEST_CASE("hom counts") {
  LogPoint pt = point(AffineMonoid::free(1));
  CoverDescriptor half = cover_from_lattice(pt, 6, IntegerMatrix{{3}});
  CoverDescriptor sixth = cover_from_lattice(pt, 6, IntegerMatrix{{1}});
  CoverDescriptor base = cover_from_lattice(pt, 6, IntegerMatrix{{6}});
  CHECK(hom_count(pt, half, half) == 2);
  CHECK(hom_count(pt, base, half) == 0);
  CHECK(hom_count(pt, sixth, half) == 2);
  CHECK(hom_count(pt, half, base) == 1);
}

TEST_CASE("automorphism counts equal Galois group orders") {
  for (const auto& p : {AffineMonoid::free(1), AffineMonoid::free(2), wedge()}) {
    LogPoint pt = point(p);
    for (const auto& c : classify_covers(pt, 4)) CHECK(hom_count(pt, c, c) == c.galois_group.order());
  }
}

TEST_CASE("fiber functor examples") {
  LogPoint n1 = point(AffineMonoid::free(1));
  CoverDescriptor half = cover_from_lattice(n1, 2, IntegerMatrix{{1}});
  auto f = fiber_functor(n1, half, 2);
  CHECK(f.elements.size() == 2);
  REQUIRE(f.actions.size() == 1);
  CHECK(f.actions[0] == std::vector<std::size_t>{1, 0});

  CoverDescriptor trivial = cover_from_lattice(n1, 3, IntegerMatrix{{3}});
  auto t = fiber_functor(n1, trivial, 6);
  CHECK(t.elements.size() == 1);
  CHECK(t.actions[0] == std::vector<std::size_t>{0});

  LogPoint n2 = point(AffineMonoid::free(2));
  CoverDescriptor first = cover_from_lattice(n2, 2, IntegerMatrix{{1, 0}, {0, 2}});
  auto g = fiber_functor(n2, first, 2);
  CHECK(g.elements.size() == 2);
  REQUIRE(g.actions.size() == 2);
  CHECK(g.actions[0] == std::vector<std::size_t>{1, 0});
  CHECK(g.actions[1] == std::vector<std::size_t>{0, 1});

  CHECK_THROWS_AS(fiber_functor(n1, cover_from_lattice(n1, 4, IntegerMatrix{{1}}), 2), std::invalid_argument);
}

TEST_CASE("restriction is equivariant and surjective") {
  LogPoint pt = point(AffineMonoid::free(2));
  const unsigned long level = 4;
  auto covers = classify_covers(pt, level);
  int checked = 0;
  for (const auto& q1 : covers)
    for (const auto& q2 : covers) {
      if (hom_count(pt, q1, q2) == 0) continue;
      ++checked;
      auto s1 = fiber_functor(pt, q1, level);
      auto s2 = fiber_functor(pt, q2, level);
      auto res = restriction_map(pt, q1, q2, level);
      REQUIRE(res.size() == s1.elements.size());
      std::set<std::size_t> image(res.begin(), res.end());
      CHECK(image.size() == s2.elements.size());
      for (std::size_t a = 0; a < s1.actions.size(); ++a)
        for (std::size_t x = 0; x < res.size(); ++x) CHECK(res[s1.actions[a][x]] == s2.actions[a][res[x]]);
    }
  CHECK(checked > 10);
}

TEST_CASE("Galois correspondence") {
  auto a = galois_correspondence_check(point(AffineMonoid::free(1)), 2);
  CHECK(a.pass);
  CHECK(a.pairs.size() == 4);
  auto b = galois_correspondence_check(point(AffineMonoid::free(2)), 2);
  CHECK(b.pass);
  CHECK(b.pairs.size() == 25);
  auto c = galois_correspondence_check(point(AffineMonoid(AbelianGroup::free(0), {})), 5);
  CHECK(c.pass);
  CHECK(c.covers.size() == 1);
  REQUIRE(c.pairs.size() == 1);
  CHECK(c.pairs[0].hom_count == 1);
  CHECK(c.pairs[0].equivariant_maps == 1);
  for (const auto& pr : galois_correspondence_check(point(AffineMonoid::free(1)), 6).pairs) CHECK(pr.match());
}

TEST_CASE("tower compatibility") {
  LogPoint pt = point(AffineMonoid::free(2));
  auto fine = classify_covers(pt, 4);
  std::set<Subgroup> at4;
  for (const auto& c : fine) at4.insert(subgroup_of(c, 2));
  TowerDescriptor tower{pt, 4};
  CHECK(tower.transition_from(2) == IntegerMatrix{{2, 0}, {0, 2}});
  for (const auto& c : classify_covers(pt, 2)) {
    CoverDescriptor r = refine(pt, c, 4);
    CHECK(r.level == 4);
    CHECK(at4.count(subgroup_of(r, 2)) == 1);
    CHECK(r.galois_group == c.galois_group);
    // x/2 = 2x/4: level-2 subgroup scaled by 2
    std::vector<oracle::Vec> scaled;
    for (const auto& v : subgroup_of(c, 2)) scaled.push_back({2 * v[0], 2 * v[1]});
    CHECK(subgroup_of(r, 2) == closure(scaled, 2, 4));
  }
  CHECK(tower.layer().inclusion.group_map == IntegerMatrix{{4, 0}, {0, 4}});
}
