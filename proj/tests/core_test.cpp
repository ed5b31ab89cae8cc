#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "moobench/core/hypervolume.hpp"
#include "moobench/core/pareto.hpp"

using namespace moobench::core;

namespace {

std::vector<ObjectiveVector> random_set(std::mt19937_64& rng, std::size_t n, std::size_t dim,
                                        double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<ObjectiveVector> pts(n, ObjectiveVector(dim));
  for (auto& p : pts)
    for (auto& v : p) v = u(rng);
  return pts;
}

// Grid-cell oracle: area of the union of boxes on the grid induced by all coordinates.
double union_area_oracle(const std::vector<ObjectiveVector>& pts, const ObjectiveVector& ref) {
  std::vector<double> xs{ref[0]}, ys{ref[1]};
  for (const auto& p : pts) {
    xs.push_back(std::min(p[0], ref[0]));
    ys.push_back(std::min(p[1], ref[1]));
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
      const double cx = 0.5 * (xs[i] + xs[i + 1]), cy = 0.5 * (ys[j] + ys[j + 1]);
      for (const auto& p : pts) {
        if (p[0] <= cx && p[1] <= cy) {
          area += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
          break;
        }
      }
    }
  }
  return area;
}

}  // namespace

TEST_CASE("dominance basics") {
  const ObjectiveVector a{0.1, 0.2}, b{0.2, 0.3}, c{0.1, 0.3}, d{0.3, 0.1};
  CHECK(dominates(a, b));
  CHECK_FALSE(dominates(b, a));
  CHECK_FALSE(dominates(c, d));
  CHECK_FALSE(dominates(d, c));
  CHECK_FALSE(dominates(a, a));
  CHECK(dominates(a, c));
  CHECK_THROWS_AS(dominates(ObjectiveVector{1.0}, a), std::invalid_argument);
}

TEST_CASE("dominance is a strict partial order on random triples") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> level(0, 3);
  for (int t = 0; t < 5000; ++t) {
    ObjectiveVector p[3];
    for (auto& v : p) v = {level(rng) * 0.25, level(rng) * 0.25, level(rng) * 0.25};
    for (int i = 0; i < 3; ++i) {
      CHECK_FALSE(dominates(p[i], p[i]));
      for (int j = 0; j < 3; ++j) {
        if (dominates(p[i], p[j])) CHECK_FALSE(dominates(p[j], p[i]));
        for (int k = 0; k < 3; ++k) {
          if (dominates(p[i], p[j]) && dominates(p[j], p[k])) CHECK(dominates(p[i], p[k]));
        }
      }
    }
  }
}

TEST_CASE("nondominated filter") {
  CHECK(nondominated_filter(Front{{0.5, 0.5}, {0.6, 0.6}}) == Front{{0.5, 0.5}});
  CHECK(nondominated_filter(Front{{0.2, 0.8}, {0.8, 0.2}}) == Front{{0.2, 0.8}, {0.8, 0.2}});
  CHECK(nondominated_filter(Front{{0.3, 0.3}, {0.3, 0.3}}) == Front{{0.3, 0.3}});
  CHECK(nondominated_filter(Front{}).empty());
  CHECK(nondominated_filter(Front{{0.9, 0.1}, {0.5, 0.5}, {0.6, 0.6}, {0.1, 0.9}}) ==
        Front{{0.9, 0.1}, {0.5, 0.5}, {0.1, 0.9}});
}

TEST_CASE("filtered set is mutually non-dominated and loses only dominated points") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const auto pts = random_set(rng, 1 + rng() % 20, 2 + rng() % 2);
    const auto front = nondominated_filter(pts);
    for (const auto& a : front)
      for (const auto& b : front) CHECK_FALSE(dominates(a, b));
    for (const auto& p : pts) {
      if (std::find(front.begin(), front.end(), p) != front.end()) continue;
      CHECK(std::any_of(front.begin(), front.end(), [&](const auto& f) { return dominates(f, p); }));
    }
  }
}

TEST_CASE("exact 2-D hypervolume examples") {
  CHECK(std::abs(hypervolume_exact_2d(std::vector<ObjectiveVector>{{0.0655, 0.0834}}, kUnitReference) -
                 0.8566) < 1e-4);
  CHECK(std::abs(hypervolume_exact_2d(std::vector<ObjectiveVector>{{0.1519, 0.1526}}, kUnitReference) -
                 0.7187) < 1e-4);
  CHECK(hypervolume_exact_2d(std::vector<ObjectiveVector>{{1.0, 1.0}}, kUnitReference) == 0.0);
  CHECK(hypervolume_exact_2d(std::vector<ObjectiveVector>{{0.25, 0.75}, {0.5, 0.5}}, kUnitReference) ==
        doctest::Approx(0.3125));
  CHECK(hypervolume_exact_2d(std::vector<ObjectiveVector>{}, kUnitReference) == 0.0);
}

TEST_CASE("exact 2-D hypervolume clips to the reference box") {
  CHECK(hypervolume_exact_2d(std::vector<ObjectiveVector>{{2.0, 0.5}}, kUnitReference) == 0.0);
  CHECK(hypervolume_exact_2d(std::vector<ObjectiveVector>{{0.5, 3.0}, {0.5, 0.5}}, kUnitReference) ==
        doctest::Approx(0.25));
  CHECK(hypervolume_exact_2d(std::vector<ObjectiveVector>{{-1.0, 0.5}}, kUnitReference) ==
        doctest::Approx(1.0));
}

TEST_CASE("exact 2-D hypervolume errors") {
  CHECK_THROWS_AS(hypervolume_exact_2d(std::vector<ObjectiveVector>{{0.1, 0.2, 0.3}},
                                       ObjectiveVector{1, 1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(hypervolume_exact_2d(std::vector<ObjectiveVector>{{NAN, 0.2}}, kUnitReference),
                  std::invalid_argument);
}

TEST_CASE("exact 2-D hypervolume matches a grid-cell oracle") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const auto pts = random_set(rng, 1 + rng() % 12, 2, -0.2, 1.3);
    CHECK(hypervolume_exact_2d(pts, kUnitReference) ==
          doctest::Approx(union_area_oracle(pts, kUnitReference)).epsilon(1e-12));
  }
}

TEST_CASE("Monte-Carlo hypervolume") {
  CHECK(std::abs(hypervolume_mc(std::vector<ObjectiveVector>{{0.5, 0.5}}, kUnitReference, 1000000, 1) -
                 0.25) < 0.002);
  CHECK(hypervolume_mc(std::vector<ObjectiveVector>{}, kUnitReference, 1000, 1) == 0.0);
  CHECK(std::abs(hypervolume_mc(std::vector<ObjectiveVector>{{0.0, 0.0}}, kUnitReference, 1000000, 1) -
                 1.0) < 0.002);
  const std::vector<ObjectiveVector> pts{{0.2, 0.7}, {0.6, 0.3}};
  CHECK(hypervolume_mc(pts, kUnitReference, 10000, 9) == hypervolume_mc(pts, kUnitReference, 10000, 9));
  const ObjectiveVector ref3{1, 1, 1};
  CHECK(std::abs(hypervolume_mc(std::vector<ObjectiveVector>{{0.5, 0.5, 0.5}}, ref3, 400000, 2) -
                 0.125) < 0.003);
}

TEST_CASE("hypervolume dispatch") {
  const ObjectiveVector ref1{1.0};
  CHECK(hypervolume(std::vector<ObjectiveVector>{{0.3}, {0.6}}, ref1) == doctest::Approx(0.7));
  CHECK(hypervolume(std::vector<ObjectiveVector>{{1.4}}, ref1) == 0.0);
  CHECK(hypervolume(std::vector<ObjectiveVector>{{0.5, 0.5}}, kUnitReference) == 0.25);
}

TEST_CASE("hypervolume properties on random sets") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    auto pts = random_set(rng, 1 + rng() % 10, 2);
    const double hv = hypervolume_exact_2d(pts, kUnitReference);
    CHECK(hv >= 0.0);
    CHECK(hv <= 1.0);
    CHECK(hv == doctest::Approx(hypervolume_exact_2d(nondominated_filter(pts), kUnitReference)));
    pts.push_back({u(rng), u(rng)});
    CHECK(hypervolume_exact_2d(pts, kUnitReference) >= hv - 1e-15);
  }
}

TEST_CASE("delta_st is a signed difference") {
  CHECK(delta_st(0.8566, 0.8482) == doctest::Approx(0.0084));
  CHECK(std::abs(delta_st(0.8566, 0.8484) - 0.0083) <= 0.001);
  CHECK(delta_st(0.5, 0.5) == 0.0);
  CHECK(delta_st(0.5, 0.6) < 0.0);
}
