#include "logchart/monoid.hpp"

#include <deque>
#include <functional>
#include <set>
#include <stdexcept>

namespace logchart {

namespace {

Integer total(const IntVector& v) {
  Integer t = 0;
  for (const auto& x : v) t += x;
  return t;
}

bool dominates(const IntVector& w, const IntVector& v) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] < v[i]) return false;
  return true;
}

// All words of N^s with total length exactly `len`, first coordinate descending.
void words_of_length(std::size_t s, unsigned len, std::vector<IntVector>& out) {
  IntVector w(s, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == s) {
      w[i] = left;
      out.push_back(w);
      return;
    }
    for (unsigned c = left + 1; c-- > 0;) {
      w[i] = c;
      rec(i + 1, left - c);
    }
  };
  if (s == 0) {
    if (len == 0) out.push_back(w);
    return;
  }
  rec(0, len);
}

// Rewrites the images through an automorphism of the group: Hermite form on
// the free rows, then each torsion row reduced against the free pivots.
void normalize_images(const AbelianGroup& g, std::vector<IntVector>& images) {
  const std::size_t s = images.size(), a = g.free_rank;
  if (s == 0 || a == 0) return;
  IntegerMatrix f(a, s);
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t i = 0; i < a; ++i) f(i, j) = images[j][i];
  IntegerMatrix h = hermite_normal_form(f);
  if (h.rows() != a) return;
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < a; ++i) {
    std::size_t c = 0;
    while (h(i, c) == 0) ++c;
    pivots.push_back(c);
  }
  for (std::size_t t = 0; t < g.torsion.size(); ++t) {
    const Integer& d = g.torsion[t];
    const std::size_t row = a + t;
    for (std::size_t k = 0; k < a; ++k) {
      const std::size_t c = pivots[k];
      Integer best_m = 0, best = images[c][row];
      for (Integer m = 1; m < d; ++m) {
        Integer r = images[c][row] - m * h(k, c);
        r %= d;
        if (r < 0) r += d;
        if (r < best) {
          best = r;
          best_m = m;
        }
      }
      if (best_m == 0) continue;
      for (std::size_t j = 0; j < s; ++j) images[j][row] -= best_m * h(k, j);
    }
  }
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < a; ++i) images[j][i] = h(i, j);
    images[j] = g.reduce(images[j]);
  }
}

}  // namespace

void MonoidPresentation::validate() const {
  for (const auto& [l, r] : relations) {
    if (l.size() != generator_count || r.size() != generator_count)
      throw std::invalid_argument("relation has the wrong number of exponents");
    for (const auto& v : {l, r})
      for (const auto& x : v)
        if (x < 0) throw std::invalid_argument("relation exponents must be nonnegative");
  }
}

Groupification groupify(const MonoidPresentation& p) {
  p.validate();
  std::vector<IntVector> diffs;
  for (const auto& [l, r] : p.relations) diffs.push_back(subtract(l, r));
  Quotient q = cokernel(IntegerMatrix::from_columns(diffs, p.generator_count));
  Groupification g{q.group, {}};
  for (std::size_t i = 0; i < p.generator_count; ++i) {
    IntVector e(p.generator_count, 0);
    e[i] = 1;
    g.generator_images.push_back(q.project(e));
  }
  normalize_images(g.group, g.generator_images);
  return g;
}

AffineMonoid integralize(const MonoidPresentation& p) {
  Groupification g = groupify(p);
  return AffineMonoid(g.group, g.generator_images);
}

MonoidPresentation lattice_presentation(const AffineMonoid& m) {
  MonoidPresentation p;
  p.generator_count = m.generator_count();
  IntegerMatrix k = kernel_in_group(m.generator_matrix(), m.ambient());
  for (std::size_t j = 0; j < k.cols(); ++j) {
    IntVector plus(p.generator_count, 0), minus(p.generator_count, 0);
    for (std::size_t i = 0; i < p.generator_count; ++i) {
      const Integer& c = k(i, j);
      (c > 0 ? plus[i] : minus[i]) = abs(c);
    }
    p.relations.emplace_back(plus, minus);
  }
  return p;
}

bool congruent_within(const MonoidPresentation& p, const IntVector& a, const IntVector& b,
                      unsigned bound) {
  p.validate();
  if (a.size() != p.generator_count || b.size() != p.generator_count)
    throw std::invalid_argument("word has the wrong number of exponents");
  if (a == b) return true;
  Groupification g = groupify(p);
  IntegerMatrix images = IntegerMatrix::from_columns(g.generator_images, g.group.dimension());
  if (g.group.reduce(images * a) != g.group.reduce(images * b)) return false;

  std::set<IntVector> seen{a};
  std::deque<IntVector> queue{a};
  while (!queue.empty()) {
    IntVector w = queue.front();
    queue.pop_front();
    for (const auto& [l, r] : p.relations) {
      for (int dir = 0; dir < 2; ++dir) {
        const IntVector& from = dir ? r : l;
        const IntVector& to = dir ? l : r;
        if (!dominates(w, from)) continue;
        IntVector next = add(subtract(w, from), to);
        if (total(next) > bound) continue;
        if (next == b) return true;
        if (seen.insert(next).second) queue.push_back(next);
      }
    }
  }
  return false;
}

std::optional<std::pair<IntVector, IntVector>> find_pseudo_integrality_violation(
    const MonoidPresentation& p, unsigned word_length_bound) {
  Groupification g = groupify(p);
  IntegerMatrix images = IntegerMatrix::from_columns(g.generator_images, g.group.dimension());
  const std::size_t s = p.generator_count;
  IntVector zero(s, 0);
  for (unsigned lb = 1; lb <= word_length_bound; ++lb) {
    std::vector<IntVector> bs;
    words_of_length(s, lb, bs);
    for (const auto& b : bs) {
      if (!is_zero(g.group.reduce(images * b))) continue;
      if (congruent_within(p, b, zero, word_length_bound)) continue;
      for (unsigned la = 0; la + lb <= word_length_bound; ++la) {
        std::vector<IntVector> as;
        words_of_length(s, la, as);
        for (const auto& a : as)
          if (congruent_within(p, add(a, b), a, word_length_bound)) return std::make_pair(a, b);
      }
    }
  }
  return std::nullopt;
}

}  // namespace logchart
