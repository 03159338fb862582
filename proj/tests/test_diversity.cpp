#include "satdiv/diversity.hpp"
#include "satdiv/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace satdiv;

namespace {

Assignment bits(std::initializer_list<bool> values) {
  return Assignment(std::vector<bool>(values));
}

Population population(int mu, std::initializer_list<Assignment> members) {
  Population p(mu);
  for (const Assignment& x : members)
    p.add(x);
  return p;
}

Assignment random_assignment(int n, Rng& rng) {
  Assignment x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    x.set(static_cast<std::size_t>(i), rng.coin());
  return x;
}

// Reference survivor selection: rebuild the reduced population for every
// candidate and recompute entropy from scratch.
std::size_t brute_force_least_contributor(const Population& p, const Measure& m) {
  std::size_t best = 0;
  double best_h = -1.0;
  for (std::size_t skip = 0; skip < p.size(); ++skip) {
    Population reduced(p.mu());
    for (std::size_t i = 0; i < p.size(); ++i)
      if (i != skip)
        reduced.add(p[i]);
    double h = entropy(reduced, m);
    if (h >= best_h) {
      best_h = h;
      best = skip;
    }
  }
  return best;
}

} // namespace

TEST_CASE("contribution matches the piecewise definition") {
  CHECK(contribution(0, 20) == 0.0);
  CHECK(contribution(20, 20) == 0.0);
  CHECK(contribution(10, 20) == doctest::Approx(0.34657359027997264).epsilon(1e-14));
  CHECK_THROWS_AS(contribution(-1, 20), std::invalid_argument);
  CHECK_THROWS_AS(contribution(21, 20), std::invalid_argument);
}

TEST_CASE("contribution stays in [0, 1/e] and peaks one step from mu/e") {
  const double inv_e = std::exp(-1.0);
  for (int mu = 1; mu <= 40; ++mu)
    for (int f = 0; f <= mu; ++f) {
      double h = contribution(f, mu);
      CHECK(h >= 0.0);
      CHECK(h <= inv_e);
    }
  // mu = 20: best integer count is 7 (mu/e = 7.36).
  CHECK(contribution(7, 20) > contribution(8, 20));
  CHECK(contribution(7, 20) > contribution(6, 20));
}

TEST_CASE("entropy of a degenerate population is zero") {
  Population p(3);
  for (int i = 0; i < 3; ++i)
    p.add(bits({true, false, true}));
  CHECK(entropy(p, Measure::h1(3)) == 0.0);
}

TEST_CASE("entropy hand examples") {
  Population p = population(2, {bits({true, false}), bits({false, false})});
  CHECK(entropy(p, Measure::h1(2)) == doctest::Approx(0.34657359027997264).epsilon(1e-14));

  Measure h2{MeasureKind::H2, 2, {3, 1}, 4};
  CHECK(entropy(p, h2) == doctest::Approx(1.0397207708399179).epsilon(1e-14));
}

TEST_CASE("max_entropy uses the per-variable maximum 1/e") {
  CHECK(max_entropy(Measure::h1(100)) == doctest::Approx(36.787944117144235).epsilon(1e-14));
  CHECK(max_entropy(Measure::h1(1)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  Measure h2{MeasureKind::H2, 100, std::vector<int>(100, 0), 630};
  CHECK(max_entropy(h2) == doctest::Approx(231.76404793800867).epsilon(1e-12));
}

TEST_CASE("normalized entropy") {
  Measure m = Measure::h1(100);
  CHECK(normalized(0.0, m) == 0.0);
  CHECK(normalized(max_entropy(m), m) == doctest::Approx(1.0).epsilon(1e-14));
  // Table-style value: normalized 0.055 corresponds to raw H1 about 2.02.
  CHECK(normalized(2.023336926442933, m) == doctest::Approx(0.055).epsilon(1e-12));
  CHECK(normalized_clamped(max_entropy(m) * 1.5, m) == 1.0);
}

TEST_CASE("H2 with unit weights equals H1") {
  Rng rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    int n = 1 + rng.below_int(8);
    int size = 2 + rng.below_int(6);
    Population p(size);
    for (int i = 0; i < size; ++i)
      p.add(random_assignment(n, rng));
    Measure ones{MeasureKind::H2, n, std::vector<int>(static_cast<std::size_t>(n), 1),
                 n};
    CHECK(std::fabs(entropy(p, ones) - entropy(p, Measure::h1(n))) <= 1e-12);
  }
}

TEST_CASE("entropy is invariant under member and variable permutations") {
  Rng rng(17);
  const int n = 6;
  Population p(5);
  for (int i = 0; i < 5; ++i)
    p.add(random_assignment(n, rng));
  double h = entropy(p, Measure::h1(n));

  // Reversed member order.
  Population rev(5);
  for (std::size_t i = p.size(); i-- > 0;)
    rev.add(p[i]);
  CHECK(entropy(rev, Measure::h1(n)) == h);

  // Rotated variable order, applied to every member.
  Population rotated(5);
  for (std::size_t i = 0; i < p.size(); ++i) {
    Assignment x(n);
    for (int v = 0; v < n; ++v)
      x.set(static_cast<std::size_t>(v), p[i][static_cast<std::size_t>((v + 1) % n)]);
    rotated.add(x);
  }
  CHECK(entropy(rotated, Measure::h1(n)) == doctest::Approx(h).epsilon(1e-14));
}

TEST_CASE("true-count cache equals recount through random edits") {
  Rng rng(23);
  const int n = 10;
  Population p(8);
  int edits = 0;
  while (edits < 1000) {
    bool grow = p.size() < 2 || (p.size() <= 8 && rng.coin());
    if (grow && p.size() <= 8) {
      p.add(random_assignment(n, rng));
    } else {
      p.remove(rng.index(p.size()));
    }
    ++edits;
    REQUIRE(p.true_counts() == p.recounted());
    if (p.size() > 0) {
      Population rebuilt(8);
      for (std::size_t i = 0; i < p.size(); ++i)
        rebuilt.add(p[i]);
      CHECK(entropy(p, Measure::h1(n)) == entropy(rebuilt, Measure::h1(n)));
    }
  }
}

TEST_CASE("least_contributor removes a duplicate") {
  Population p = population(3, {bits({true, true}), bits({true, true}), bits({false, false})});
  // Both duplicates tie as weakest; the larger index wins the tie.
  CHECK(least_contributor(p, Measure::h1(2)) == 1);
}

TEST_CASE("least_contributor tie-break on identical members") {
  Population p(4);
  for (int i = 0; i < 4; ++i)
    p.add(bits({true, false, true}));
  CHECK(least_contributor(p, Measure::h1(3)) == 3);
}

TEST_CASE("least_contributor matches exhaustive scan on random populations") {
  Rng rng(31);
  for (int rep = 0; rep < 200; ++rep) {
    int n = 1 + rng.below_int(8);
    int mu = 2 + rng.below_int(5);       // population sizes 2..6
    int size = mu + (rep % 2);           // sometimes mu + 1, the EA shape
    size = std::max(size, 2);
    Population p(mu);
    for (int i = 0; i < size; ++i)
      p.add(random_assignment(n, rng));

    Measure m = Measure::h1(n);
    if (rep % 3 == 0) {
      std::vector<int> r;
      long long total = 0;
      for (int i = 0; i < n; ++i) {
        r.push_back(1 + rng.below_int(5));
        total += r.back();
      }
      m = Measure{MeasureKind::H2, n, std::move(r), total};
    }

    std::size_t got = least_contributor(p, m);
    std::size_t expected = brute_force_least_contributor(p, m);
    CHECK(got == expected);
  }
}

TEST_CASE("survivor selection never decreases entropy vs any alternative") {
  Rng rng(47);
  for (int rep = 0; rep < 50; ++rep) {
    int n = 2 + rng.below_int(6);
    int mu = 3 + rng.below_int(3);
    Population p(mu);
    for (int i = 0; i <= mu; ++i)  // mu + 1 members
      p.add(random_assignment(n, rng));
    Measure m = Measure::h1(n);
    std::size_t victim = least_contributor(p, m);

    Population best(mu);
    for (std::size_t i = 0; i < p.size(); ++i)
      if (i != victim)
        best.add(p[i]);
    double best_h = entropy(best, m);

    for (std::size_t skip = 0; skip < p.size(); ++skip) {
      Population alt(mu);
      for (std::size_t i = 0; i < p.size(); ++i)
        if (i != skip)
          alt.add(p[i]);
      CHECK(best_h >= entropy(alt, m));
    }
  }
}

TEST_CASE("population guards") {
  Population p(2);
  p.add(bits({true}));
  CHECK_THROWS_AS(p.add(bits({true, false})), std::invalid_argument);
  CHECK_THROWS_AS(p.remove(5), std::out_of_range);
  CHECK_THROWS_AS(entropy(Population(2), Measure::h1(1)), std::invalid_argument);
  CHECK_THROWS_AS(least_contributor(p, Measure::h1(1)), std::invalid_argument);
}
