#include <cmath>

#include "doctest.h"
#include "lcsim/errors.hpp"
#include "lcsim/thresholds.hpp"

using namespace lcsim;

TEST_CASE("private attack thresholds at known points") {
    // beta* solves beta = (1-beta) / (1 + (1-beta) * lambda * delta)
    CHECK(private_threshold(0.0, ThresholdModel::PowPs) ==
          doctest::Approx(0.5).epsilon(1e-12));
    // Chia: e * beta = (1-beta) at lambda*delta = 0
    CHECK(private_threshold(0.0, ThresholdModel::Chia) ==
          doctest::Approx(1.0 / (1.0 + std::exp(1.0))).epsilon(1e-12));
    // at lambda*delta = 1 the PoW/PS fixed point is the quadratic root
    CHECK(private_threshold(1.0, ThresholdModel::PowPs) ==
          doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(private_threshold(-0.1, ThresholdModel::PowPs),
                    InvalidArgument);
}

TEST_CASE("thresholds satisfy their fixed-point equations") {
    for (double ld : {0.0, 0.1, 0.5, 1.0, 2.0}) {
        const double b = private_threshold(ld, ThresholdModel::PowPs);
        CHECK(b == doctest::Approx((1.0 - b) / (1.0 + (1.0 - b) * ld))
                       .epsilon(1e-10));
        const double bc = private_threshold(ld, ThresholdModel::Chia);
        CHECK(std::exp(1.0) * bc ==
              doctest::Approx((1.0 - bc) / (1.0 + (1.0 - bc) * ld))
                  .epsilon(1e-10));
        CHECK(bc < b);  // nothing-at-stake costs the defender
    }
}

TEST_CASE("thresholds decrease with delay") {
    double prev = 1.0;
    for (double ld = 0.0; ld <= 2.0; ld += 0.1) {
        const double b = private_threshold(ld, ThresholdModel::PowPs);
        CHECK(b < prev);
        prev = b;
    }
}

TEST_CASE("comparison curves at grid zero") {
    auto pts = comparison_curves({0.0, 0.1});
    REQUIRE(!pts.empty());
    double pss_red_0 = -1, pos_red_0 = -1, pos_green_0 = -1;
    double yellow_01 = -1;
    for (const auto& p : pts) {
        if (p.lambda_delta == 0.0 && p.curve_id == "pss_red") pss_red_0 = p.beta;
        if (p.lambda_delta == 0.0 && p.curve_id == "pos_red") pos_red_0 = p.beta;
        if (p.lambda_delta == 0.0 && p.curve_id == "pos_green")
            pos_green_0 = p.beta;
        if (p.lambda_delta == 0.1 && p.curve_id == "pss_yellow")
            yellow_01 = p.present ? p.beta : -2;
    }
    CHECK(pss_red_0 == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(pos_red_0 == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(pos_green_0 == doctest::Approx(0.5).epsilon(1e-9));
    // the yellow guarantee collapses to beta = 0 exactly at lambda*delta = 0.1
    CHECK(yellow_01 == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("curve csv is self-describing and stable") {
    auto pts = comparison_curves({0.0});
    const auto csv = curves_to_csv(pts);
    CHECK(csv.rfind("lambda_delta,curve_id,beta\n", 0) == 0);
    CHECK(csv.find("pss_red") != std::string::npos);
    CHECK(csv == curves_to_csv(pts));
}

TEST_CASE("chernoff exponent reduces to the known anchor at delta zero") {
    const double la = 0.25, lh = 0.75;
    const auto r = chernoff_rate_A0(la, lh, 0.0);
    CHECK(r.s == doctest::Approx((lh - la) / 2.0).epsilon(1e-12));
    // at delta = 0 the optimized exponent equals minus the race-decay anchor
    CHECK(r.a0 == doctest::Approx(-bn_rate_anchor_delta0(la, lh)).epsilon(1e-10));
    CHECK(r.a0 < 0.0);
    CHECK(bn_rate_anchor_delta0(la, lh) ==
          doctest::Approx(std::log((la + lh) * (la + lh) / (4.0 * la * lh)))
              .epsilon(1e-12));
}

TEST_CASE("chernoff exponent regime check") {
    // requires lambda_a < lambda_h / (1 + lambda_h * delta)
    CHECK_THROWS_AS(chernoff_rate_A0(0.9, 1.0, 0.5), OutOfRegime);
    CHECK_NOTHROW(chernoff_rate_A0(0.3, 1.0, 0.5));
    // exponent stays negative inside the regime
    for (double d : {0.0, 0.2, 0.5}) CHECK(chernoff_rate_A0(0.3, 1.0, d).a0 < 0.0);
}
