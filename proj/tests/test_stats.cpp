#include <cmath>
#include <random>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "doctest.h"
#include "massqd/pareto.hpp"
#include "massqd/stats.hpp"

using namespace massqd;

TEST_CASE("mean and sample deviation") {
  std::vector<double> xs = {2, 4, 4, 4, 5, 5, 7, 9};
  CHECK(mean(xs) == 5.0);
  CHECK(sample_stddev(xs) == doctest::Approx(std::sqrt(32.0 / 7.0)).epsilon(1e-14));
  std::vector<double> one = {3.0};
  CHECK(sample_stddev(one) == 0.0);
}

TEST_CASE("incomplete beta against boost") {
  for (double a : {0.5, 1.0, 2.5, 12.0})
    for (double b : {0.5, 3.0, 7.5})
      for (double x : {0.0, 0.01, 0.3, 0.5, 0.77, 0.999, 1.0})
        CHECK(incomplete_beta(a, b, x) == doctest::Approx(boost::math::ibeta(a, b, x)).epsilon(1e-12));
}

TEST_CASE("student t tail against boost") {
  for (double df : {1.0, 2.0, 3.7, 10.0, 24.99, 200.0})
    for (double t : {0.0, 0.5, 1.5, 2.0, 4.0, -2.46, 30.0}) {
      boost::math::students_t dist(df);
      const double expected = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
      CHECK(student_t_two_sided_p(t, df) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("welch test on a standard worked example") {
  std::vector<double> a = {27.5, 21.0, 19.0, 23.6, 17.0, 17.9, 16.9, 20.1,
                           21.9, 22.6, 23.1, 19.6, 19.0, 21.7, 21.4};
  std::vector<double> b = {27.1, 22.0, 20.8, 23.4, 23.4, 23.5, 25.8, 22.0,
                           24.8, 20.2, 21.9, 22.1, 22.9, 20.5, 24.4};
  TTestResult r = welch_t_test(a, b);
  CHECK(r.t_statistic == doctest::Approx(-2.455356398286006).epsilon(1e-12));
  CHECK(r.degrees_of_freedom == doctest::Approx(24.988529290231416).epsilon(1e-12));
  CHECK(r.p_value == doctest::Approx(0.021378001462866985).epsilon(1e-9));
  CHECK(r.significant);
  TTestResult swapped = welch_t_test(b, a);
  CHECK(swapped.t_statistic == doctest::Approx(-r.t_statistic));
  CHECK(swapped.p_value == doctest::Approx(r.p_value));
}

TEST_CASE("welch test edge cases") {
  std::vector<double> x = {1, 2, 3, 4, 5}, y = {11, 12, 13, 14, 15};
  TTestResult r = welch_t_test(x, y);
  CHECK(r.t_statistic == doctest::Approx(-10.0));
  CHECK(r.degrees_of_freedom == doctest::Approx(8.0));
  CHECK(r.p_value == doctest::Approx(8.4881815276285e-06).epsilon(1e-9));

  TTestResult same = welch_t_test(x, x);
  CHECK(same.t_statistic == 0.0);
  CHECK(same.p_value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_FALSE(same.significant);

  std::vector<double> c1 = {2, 2, 2}, c2 = {3, 3, 3};
  TTestResult flat = welch_t_test(c1, c1);
  CHECK(flat.p_value == 1.0);
  CHECK_FALSE(flat.significant);
  TTestResult apart = welch_t_test(c1, c2);
  CHECK(apart.p_value == 0.0);
  CHECK(std::isinf(apart.t_statistic));
  CHECK(apart.t_statistic < 0);
  CHECK(apart.significant);

  std::vector<double> single = {1.0};
  CHECK_THROWS_AS(welch_t_test(single, x), std::invalid_argument);
}

TEST_CASE("welch p values are uniform-ish under the null") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> normal(0.0, 1.0);
  int rejections = 0;
  const int trials = 4000;
  for (int i = 0; i < trials; ++i) {
    std::vector<double> a(10), b(12);
    for (auto& v : a) v = normal(rng);
    for (auto& v : b) v = 2.0 * normal(rng);
    rejections += welch_t_test(a, b).significant;
  }
  const double rate = static_cast<double>(rejections) / trials;
  CHECK(rate > 0.035);
  CHECK(rate < 0.065);
}

TEST_CASE("dominance") {
  CHECK(dominates({1, 1}, {0, 0}));
  CHECK(dominates({1, 0}, {0, 0}));
  CHECK_FALSE(dominates({1, 1}, {1, 1}));
  CHECK_FALSE(dominates({1, 0}, {0, 1}));
}

TEST_CASE("pareto fronts and selection") {
  std::vector<ObjectivePoint> pts = {{0.5, 10}, {0.9, 1}, {0.4, 5}, {0.7, 7}, {0.2, 20}, {0.3, 2}};
  auto fronts = pareto_fronts(pts);
  REQUIRE(fronts.size() == 3);
  CHECK(fronts[0] == std::vector<std::size_t>{0, 1, 3, 4});
  CHECK(fronts[1] == std::vector<std::size_t>{2});
  CHECK(fronts[2] == std::vector<std::size_t>{5});
  CHECK(select_best(pts, fronts) == std::vector<std::size_t>{1, 3, 0, 4});
  CHECK(select_best(pts, fronts, 5) == std::vector<std::size_t>{1, 3, 0, 4, 2});
  CHECK(select_best(pts, fronts, 10).size() == 6);

  std::vector<ObjectivePoint> ties = {{0.5, 1}, {0.5, 1}, {0.5, 1}};
  auto tf = pareto_fronts(ties);
  REQUIRE(tf.size() == 1);
  CHECK(select_best(ties, tf, 2) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("pareto front properties on random clouds") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> coord(0, 6);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<ObjectivePoint> pts(12);
    for (auto& p : pts) p = {static_cast<double>(coord(rng)), static_cast<double>(coord(rng))};
    auto fronts = pareto_fronts(pts);
    std::vector<int> rank(pts.size(), -1);
    for (std::size_t f = 0; f < fronts.size(); ++f)
      for (auto i : fronts[f]) {
        REQUIRE(rank[i] == -1);
        rank[i] = static_cast<int>(f);
      }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      REQUIRE(rank[i] >= 0);
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (dominates(pts[i], pts[j])) REQUIRE(rank[i] < rank[j]);
        if (rank[i] == rank[j]) REQUIRE_FALSE(dominates(pts[i], pts[j]));
      }
      if (rank[i] > 0) {
        bool dominated_by_previous = false;
        for (auto j : fronts[rank[i] - 1]) dominated_by_previous |= dominates(pts[j], pts[i]);
        REQUIRE(dominated_by_previous);
      }
    }
  }
}
