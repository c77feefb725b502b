#include "bscc/bounds.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bscc/errors.hpp"
#include "bscc/pipeline.hpp"
#include "bscc/spline_fit.hpp"
#include "support/oracles.hpp"

using namespace bscc;

namespace {

double spline_sup_norm(const CubicSplineInterpolant& fit, int grid) {
  const double lo = fit.nodes.front();
  const double hi = fit.nodes.back();
  double sup = 0.0;
  for (int i = 0; i <= grid; ++i) {
    const double z = lo + (hi - lo) * i / grid;
    sup = std::max(sup, std::abs(fit.evaluate_channel(0, z)));
  }
  return sup;
}

double berrut_interpolate(const std::vector<double>& nodes,
                          const std::vector<double>& values, double z) {
  double acc = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    acc += values[j] * berrut_basis(nodes, static_cast<int>(j), z);
  }
  return acc;
}

}  // namespace

TEST_CASE("knot spacing statistics") {
  std::vector<double> uniform(11);
  for (int i = 0; i <= 10; ++i) uniform[static_cast<std::size_t>(i)] = 0.1 * i;
  const KnotSpacingStats u = knot_spacing_stats(uniform);
  CHECK(u.h_max == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(u.h_min == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(u.ratio == doctest::Approx(1.0).epsilon(1e-12));

  const KnotSpacingStats s =
      knot_spacing_stats(std::vector<double>{0.0, 1.0, 3.0});
  CHECK(s.h_max == 2.0);
  CHECK(s.h_min == 1.0);
  CHECK(s.ratio == 2.0);

  CHECK_THROWS_AS(knot_spacing_stats(std::vector<double>{1.0}), InvalidNodes);
  CHECK_THROWS_AS(knot_spacing_stats(std::vector<double>{1.0, 1.0}),
                  InvalidNodes);
}

TEST_CASE("Chebyshev minimum gap shrinks quadratically") {
  const double h100 = knot_spacing_stats(chebyshev_nodes_second_kind(100)).h_min;
  const double h200 = knot_spacing_stats(chebyshev_nodes_second_kind(200)).h_min;
  const double ratio = h200 / h100;
  CHECK(ratio >= 0.2);
  CHECK(ratio <= 0.3);
}

TEST_CASE("operator norm bound is positive and finite") {
  const double bound =
      operator_norm_upper_bound(std::vector<double>{0, 1, 2, 3});
  CHECK(bound > 0.0);
  CHECK(std::isfinite(bound));
  std::vector<double> too_many(2001);
  for (int i = 0; i < 2001; ++i) too_many[static_cast<std::size_t>(i)] = i;
  CHECK_THROWS_AS(operator_norm_upper_bound(too_many), InvalidInput);
}

TEST_CASE("operator norm bound dominates fitted splines") {
  oracles::TestRng rng(314);
  for (const int m : {10, 37}) {
    const std::vector<double> nodes =
        oracles::random_nodes(rng, m, -1.0, 0.05, 0.6);
    const double bound = operator_norm_upper_bound(nodes);
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<double> samples(nodes.size());
      double sup = 0.0;
      for (double& v : samples) {
        v = rng.uniform(-1.0, 1.0);
        sup = std::max(sup, std::abs(v));
      }
      for (double& v : samples) v /= sup;  // unit sup norm
      const CubicSplineInterpolant fit = fit_natural_cubic(nodes, {samples});
      CHECK(spline_sup_norm(fit, 2000) <= bound + 1e-9);
    }
  }
}

TEST_CASE("operator norm bound grows with the spacing ratio") {
  std::vector<double> uniform(20);
  for (int i = 0; i < 20; ++i) {
    uniform[static_cast<std::size_t>(i)] = i / 19.0;
  }
  std::vector<double> stretched = uniform;
  // Compress the interior so that h_max / h_min is about 100.
  for (int i = 1; i < 19; ++i) {
    stretched[static_cast<std::size_t>(i)] =
        0.5 + 0.01 * (i - 9.5) / 19.0;
  }
  const double ratio_u = knot_spacing_stats(uniform).ratio;
  const double ratio_s = knot_spacing_stats(stretched).ratio;
  REQUIRE(ratio_s > 50.0 * ratio_u);
  CHECK(operator_norm_upper_bound(stretched) >
        operator_norm_upper_bound(uniform));
}

TEST_CASE("smooth-function bound arithmetic") {
  KnotSpacingStats stats;
  stats.h_max = 2.0 / 99.0;
  stats.h_min = 2.0 / 99.0;
  stats.ratio = 1.0;

  BoundInputs in;
  in.n = 100;
  in.s = 0;
  in.c = 1.0;
  in.c1 = 1.0;

  in.g4_sup = 0.0;
  CHECK(corollary_bound(in, stats) == 0.0);

  in.g4_sup = 1.0;
  const double h = stats.h_max;
  const double expected = (1.0 + 102.0) * h * h * h * h;  // independent route
  CHECK(corollary_bound(in, stats) ==
        doctest::Approx(expected).epsilon(1e-14));

  // Halving h_max at fixed ratio and n divides the bound by 16.
  KnotSpacingStats half = stats;
  half.h_max /= 2.0;
  half.h_min /= 2.0;
  CHECK(corollary_bound(in, half) ==
        doctest::Approx(corollary_bound(in, stats) / 16.0).epsilon(1e-12));
}

TEST_CASE("general bound needs the best-approximation distance") {
  KnotSpacingStats stats;
  stats.h_max = 2.0;
  stats.h_min = 1.0;
  stats.ratio = 2.0;

  BoundInputs in;
  in.n = 10;
  in.c1 = 1.0;
  CHECK_THROWS_AS(theorem2_bound(in, stats), MissingInput);

  in.d_inf = 0.0;
  CHECK(theorem2_bound(in, stats) == 0.0);

  in.d_inf = 0.1;
  CHECK(theorem2_bound(in, stats) == doctest::Approx(2.5).epsilon(1e-14));
  const double once = theorem2_bound(in, stats);
  in.d_inf = 0.2;
  CHECK(theorem2_bound(in, stats) ==
        doctest::Approx(2.0 * once).epsilon(1e-14));
}

TEST_CASE("Chebyshev-node bound decays quadratically in n") {
  BoundInputs in;
  in.c = 1.0;
  in.c1 = 1.0;
  in.g4_sup = 1.0;
  in.s = 0;

  in.n = 200;
  const double at_200 = bscc_cheby_bound(
      in, knot_spacing_stats(chebyshev_nodes_second_kind(200)).h_min);
  in.n = 400;
  const double at_400 = bscc_cheby_bound(
      in, knot_spacing_stats(chebyshev_nodes_second_kind(400)).h_min);
  const double ratio = at_400 / at_200;
  CHECK(ratio >= 0.2);
  CHECK(ratio <= 0.3);

  in.g4_sup = 0.0;
  CHECK(bscc_cheby_bound(in, 1e-3) == 0.0);

  in.g4_sup = 1.0;
  in.n = 10;
  in.s = 7;  // s = n - 3 boundary
  CHECK(std::isfinite(bscc_cheby_bound(in, 1e-3)));
}

TEST_CASE("rational-decoder bound values") {
  const double pi = std::numbers::pi;
  // Independent arithmetic route for n = 100, s = 0.
  const double expected = (1.0 + 3.0 * pi * pi / 4.0) * std::sin(pi / 200.0);
  CHECK(bacc_bound(100, 0) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(bacc_bound(100, 0) ==
        doctest::Approx(0.13197607336435996).epsilon(1e-12));

  // O(1/n): halving at large n.
  CHECK(bacc_bound(20000, 0) / bacc_bound(10000, 0) ==
        doctest::Approx(0.5).epsilon(1e-6));

  // Strictly increasing in s at fixed n.
  double prev = bacc_bound(100, 0);
  for (int s = 1; s <= 96; ++s) {
    const double next = bacc_bound(100, s);
    CHECK(next > prev);
    prev = next;
  }
  CHECK_THROWS_AS(bacc_bound(10, 10), InvalidInput);
}

TEST_CASE("both bounds only grow with stragglers") {
  BoundInputs in;
  in.n = 100;
  in.c = 1.0;
  in.c1 = 1.0;
  in.g4_sup = 1.0;
  const double h_min =
      knot_spacing_stats(chebyshev_nodes_second_kind(100)).h_min;
  double prev = -1.0;
  for (int s = 0; s <= 40; ++s) {
    in.s = s;
    const double b = bscc_cheby_bound(in, h_min);
    CHECK(b >= prev);
    prev = b;
  }
}

TEST_CASE("fourth-derivative estimate against analytic values") {
  // sin'''' = sin, so the sup over an interval containing pi/2 is 1.
  const double sine = estimate_fourth_derivative_sup(
      [](double x) { return std::sin(x); }, -2.0, 2.0);
  CHECK(sine == doctest::Approx(1.0).epsilon(0.05));

  const double linear = estimate_fourth_derivative_sup(
      [](double x) { return 3.0 * x - 1.0; }, -1.0, 1.0);
  CHECK(std::abs(linear) < 1e-2);

  const double expo = estimate_fourth_derivative_sup(
      [](double x) { return std::exp(x); }, 0.0, 1.0);
  CHECK(expo == doctest::Approx(std::exp(1.0)).epsilon(0.1 / std::exp(1.0)));

  CHECK_THROWS_AS(estimate_fourth_derivative_sup(
                      [](double) { return std::nan(""); }, 0.0, 1.0),
                  NumericalOverflow);
  CHECK_THROWS_AS(estimate_fourth_derivative_sup(
                      [](double x) { return x; }, 1.0, 0.0),
                  InvalidRange);
}

TEST_CASE("decay slope of exact power laws") {
  std::vector<std::pair<double, double>> quadratic;
  std::vector<std::pair<double, double>> linear;
  for (const double n : {20.0, 40.0, 80.0, 160.0}) {
    quadratic.emplace_back(n, 1.0 / (n * n));
    linear.emplace_back(n, 1.0 / n);
  }
  CHECK(decay_slope(quadratic) == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(decay_slope(linear) == doctest::Approx(-1.0).epsilon(1e-9));

  CHECK_THROWS_AS(decay_slope(std::vector<std::pair<double, double>>{
                      {10.0, 1.0}, {20.0, 0.5}}),
                  InvalidInput);
  CHECK_THROWS_AS(decay_slope(std::vector<std::pair<double, double>>{
                      {10.0, 1.0}, {20.0, 0.0}, {40.0, 0.1}}),
                  InvalidInput);
}

TEST_CASE("measured decay separates the two decoders") {
  std::vector<std::pair<double, double>> spline_errors;
  std::vector<std::pair<double, double>> rational_errors;
  for (const int n : {20, 40, 80, 160}) {
    const std::vector<double> nodes = chebyshev_nodes_second_kind(n);
    std::vector<double> values(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      values[i] = std::sin(nodes[i]);
    }
    const CubicSplineInterpolant fit = fit_natural_cubic(nodes, {values});
    double sup_spline = 0.0;
    double sup_rational = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double z =
          nodes.front() + (nodes.back() - nodes.front()) * i / 2000.0;
      sup_spline = std::max(
          sup_spline, std::abs(fit.evaluate_channel(0, z) - std::sin(z)));
      sup_rational = std::max(
          sup_rational,
          std::abs(berrut_interpolate(nodes, values, z) - std::sin(z)));
    }
    spline_errors.emplace_back(n, sup_spline);
    rational_errors.emplace_back(n, sup_rational);
  }
  CHECK(decay_slope(spline_errors) <= -1.9);
  CHECK(decay_slope(rational_errors) >= -1.6);
}

TEST_CASE("empirical error stays under the calibrated smooth bound") {
  // The bound constants are existential; calibrate the smallest c at n = 20
  // (c1 = 1) and check the bound keeps holding for larger n.
  const double g4_sup = 1.0;  // sin'''' = sin on [-1, 1], sup <= 1
  double calibrated_c = 0.0;
  for (const int n : {20, 40, 80, 160}) {
    const std::vector<double> nodes = chebyshev_nodes_second_kind(n);
    std::vector<double> values(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      values[i] = std::sin(nodes[i]);
    }
    const CubicSplineInterpolant fit = fit_natural_cubic(nodes, {values});
    double sup = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double z =
          nodes.front() + (nodes.back() - nodes.front()) * i / 2000.0;
      sup = std::max(sup, std::abs(fit.evaluate_channel(0, z) - std::sin(z)));
    }
    BoundInputs in;
    in.n = n;
    in.s = 0;
    in.c = 1.0;
    in.c1 = 1.0;
    in.g4_sup = g4_sup;
    const double bound = corollary_bound(in, knot_spacing_stats(nodes));
    if (n == 20) {
      calibrated_c = sup / bound;  // smallest c making the bound tight here
      continue;
    }
    CHECK(sup <= calibrated_c * bound * (1.0 + 1e-9));
  }
}
