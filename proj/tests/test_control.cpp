// Scalar maximization: the golden-section search itself, and the drive
// optimizer against the closed-form maxima for each channel.

#include <cmath>

#include "catch2/catch_amalgamated.hpp"
#include "entlab/optimize.hpp"
#include "entlab/stationary.hpp"

using namespace entlab;
using Catch::Approx;

TEST_CASE("golden_max refines a smooth interior maximum") {
  const auto f = [](double x) { return -(x - 1.3) * (x - 1.3); };
  const GoldenResult g = golden_max(f, 0.0, 3.0, 1e-10);
  REQUIRE(g.x == Approx(1.3).margin(1e-9));
  REQUIRE(g.value == Approx(0.0).margin(1e-15));
  REQUIRE(g.evaluations > 512);  // grid pre-scan plus refinement
}

TEST_CASE("golden_max picks the taller of two peaks") {
  const auto f = [](double x) {
    return std::exp(-(x - 2.2) * (x - 2.2) / 0.01) +
           0.5 * std::exp(-(x - 0.4) * (x - 0.4) / 0.01);
  };
  const GoldenResult g = golden_max(f, 0.0, 3.0, 1e-9);
  REQUIRE(g.x == Approx(2.2).margin(1e-6));
}

TEST_CASE("golden_max on a flat objective returns the left end") {
  const auto f = [](double) { return 2.0; };
  const GoldenResult g = golden_max(f, 0.5, 4.0, 1e-9);
  REQUIRE(g.x == Approx(0.5).margin(1e-8));
  REQUIRE(g.value == Approx(2.0).margin(0.0));
}

TEST_CASE("golden_max endpoint maxima are found") {
  const GoldenResult left =
      golden_max([](double x) { return -x; }, 0.0, 1.0, 1e-10);
  REQUIRE(left.x == Approx(0.0).margin(1e-9));
  const GoldenResult right =
      golden_max([](double x) { return x; }, 0.0, 1.0, 1e-10);
  REQUIRE(right.x == Approx(1.0).margin(1e-9));
}

TEST_CASE("golden_max input validation") {
  const auto f = [](double x) { return x; };
  REQUIRE_THROWS_AS(golden_max(f, 1.0, 1.0, 1e-8), InvalidArgument);
  REQUIRE_THROWS_AS(golden_max(f, 2.0, 1.0, 1e-8), InvalidArgument);
  REQUIRE_THROWS_AS(golden_max(f, 0.0, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("optimizer: independent channel, noiseless") {
  const OptimizeResult r = optimize_mu1(ChannelKind::Independent, 1.0);
  REQUIRE(r.mu1_star == Approx(0.30901699437494745).margin(1e-7));
  REQUIRE(r.value == Approx(0.30901699437494745).margin(1e-9));
  REQUIRE(r.analytic_mu1 == Approx(independent_optimal_mu1(1.0)).margin(0.0));
  REQUIRE(r.analytic_value == Approx(independent_cmax()).margin(0.0));
  REQUIRE(r.agreed);
  REQUIRE(r.evaluations > 0);
}

TEST_CASE("optimizer: the rate only sets the scale") {
  const OptimizeResult r = optimize_mu1(ChannelKind::Independent, 2.0);
  REQUIRE(r.mu1_star == Approx(0.6180339887498949).margin(2e-7));
  REQUIRE(r.value == Approx(0.30901699437494745).margin(1e-9));
  REQUIRE(r.agreed);
}

TEST_CASE("optimizer: independent channel under dephasing") {
  struct Case {
    double gs, mu_star, cmax;
  };
  // total phase variances for spatial-spread ratios 0.03 and 0.05
  const Case cases[] = {
      {0.03553057584392169, 0.30655427061345164, 0.3011563356342388},
      {0.0986960440108936, 0.3021394744477936, 0.2875914005517859},
  };
  for (const Case& c : cases) {
    DephasingNoise noise;
    noise.gamma1 = noise.gamma2 = 0.5 * c.gs;
    const OptimizeResult r =
        optimize_mu1(ChannelKind::Independent, 1.0, 1.0, noise);
    INFO("total variance " << c.gs);
    REQUIRE(r.mu1_star == Approx(c.mu_star).margin(1e-6));
    REQUIRE(r.value == Approx(c.cmax).margin(1e-8));
    REQUIRE(r.analytic_mu1 == Approx(c.mu_star).margin(1e-12));
    REQUIRE(r.analytic_value == Approx(c.cmax).margin(1e-12));
    REQUIRE(r.agreed);
  }
}

TEST_CASE("optimizer: collective channel above threshold") {
  for (double kappa : {0.85, 0.9, 1.0}) {
    const OptimizeResult r =
        optimize_mu1(ChannelKind::Collective, 1.0, kappa);
    INFO("kappa = " << kappa);
    REQUIRE(r.mu1_star == Approx(0.4342585459106649).margin(1e-6));
    REQUIRE(r.value == Approx(collective_cmax(kappa)).margin(1e-8));
    REQUIRE(r.agreed);
  }
  const OptimizeResult top = optimize_mu1(ChannelKind::Collective, 1.0, 1.0);
  REQUIRE(top.value == Approx(0.43425854591066493).margin(1e-8));
  const OptimizeResult low = optimize_mu1(ChannelKind::Collective, 1.0, 0.85);
  REQUIRE(low.value == Approx(0.2191197640240652).margin(1e-8));
}

TEST_CASE("optimizer: collective channel below threshold stays undriven") {
  const OptimizeResult r = optimize_mu1(ChannelKind::Collective, 1.0, 0.8);
  REQUIRE(r.mu1_star == Approx(0.0).margin(1e-6));
  REQUIRE(r.value == Approx(0.2).margin(1e-8));
  REQUIRE(r.analytic_mu1 == 0.0);
  REQUIRE(r.analytic_value == Approx(0.2).margin(1e-12));
  REQUIRE(r.agreed);
}

TEST_CASE("optimizer input validation") {
  REQUIRE_THROWS_AS(optimize_mu1(ChannelKind::Mixed, 1.0),
                    UnsupportedChannel);
  DephasingNoise noise;
  noise.gamma1 = 0.1;
  REQUIRE_THROWS_AS(optimize_mu1(ChannelKind::Collective, 1.0, 1.0, noise),
                    UnsupportedChannel);
  noise.gamma1 = -0.1;
  REQUIRE_THROWS_AS(optimize_mu1(ChannelKind::Independent, 1.0, 1.0, noise),
                    InvalidRates);
  REQUIRE_THROWS_AS(optimize_mu1(ChannelKind::Collective, 1.0, 1.2),
                    InvalidKappa);
  REQUIRE_THROWS_AS(optimize_mu1(ChannelKind::Independent, 0.0),
                    InvalidRates);
}
