#pragma once

#include <string>
#include <vector>

namespace lcsim {

enum class ThresholdModel { PowPs, Chia };

// lambda_h / (1 + lambda_h * delta)
double honest_growth_rate(double lambda_h, double delta);

// The unique beta in (0, 1) at which the private attack becomes viable:
// beta = (1-beta)/(1+(1-beta)*ld) for PoW/PS, with an extra factor e on the
// left-hand side for Chia.
double private_threshold(double lambda_delta, ThresholdModel model);

struct ThresholdPoint {
    double lambda_delta = 0.0;
    std::string curve_id;
    double beta = 0.0;
    bool present = true;  // false when the equation has no root in [0, 1]
};

// Evaluates the exact thresholds plus the literature comparison curves on a
// grid of lambda*delta values. Curve ids: true_pow_ps, true_chia, pss_red,
// green, yellow, pos_red, pos_green.
std::vector<ThresholdPoint> comparison_curves(const std::vector<double>& grid);

struct ChernoffRate {
    double s = 0.0;
    double a0 = 0.0;  // raw formula value; see estimate_bn_decay for validation
};

// Tilt point and exponent of the catch-up tail bound. The a0 formula is
// reported as written; it must be validated against the Monte Carlo decay of
// the catch-up events before use (its log term is negative near delta = 0).
ChernoffRate chernoff_rate_A0(double lambda_a, double lambda_h, double delta);

// Optimized decay rate of the two-sided exponential race at delta = 0:
// ln((lambda_a+lambda_h)^2 / (4*lambda_a*lambda_h)). Sanity anchor for the
// Monte Carlo fit.
double bn_rate_anchor_delta0(double lambda_a, double lambda_h);

std::string curves_to_csv(const std::vector<ThresholdPoint>& points);

}  // namespace lcsim
