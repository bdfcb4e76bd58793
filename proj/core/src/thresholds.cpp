#include "lcsim/thresholds.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "lcsim/errors.hpp"

namespace lcsim {

namespace {

constexpr double kTol = 1e-13;

// Root of f on [0, 1]; f(0) > 0 > f(1) is required by every curve we solve.
double bisect(const std::function<double(double)>& f) {
    double lo = 0.0, hi = 1.0;
    double flo = f(lo);
    if (flo <= 0.0) return 0.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm) < kTol) return mid;
        if (fm > 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double honest_growth_rate(double lambda_h, double delta) {
    if (lambda_h < 0.0) throw InvalidRate("honest_growth_rate: negative rate");
    if (delta < 0.0) throw InvalidArgument("honest_growth_rate: negative delta");
    return lambda_h / (1.0 + lambda_h * delta);
}

double private_threshold(double lambda_delta, ThresholdModel model) {
    if (lambda_delta < 0.0)
        throw InvalidArgument("private_threshold: negative lambda*delta");
    const double factor = model == ThresholdModel::Chia ? std::exp(1.0) : 1.0;
    return bisect([&](double b) {
        return (1.0 - b) / (1.0 + (1.0 - b) * lambda_delta) - factor * b;
    });
}

std::vector<ThresholdPoint> comparison_curves(const std::vector<double>& grid) {
    std::vector<ThresholdPoint> out;
    auto push = [&](double ld, const char* id, double beta, bool present) {
        out.push_back({ld, id, present ? beta : 0.0, present});
    };
    for (double ld : grid) {
        if (ld < 0.0) throw InvalidArgument("comparison_curves: negative grid value");
        push(ld, "true_pow_ps", private_threshold(ld, ThresholdModel::PowPs), true);
        push(ld, "true_chia", private_threshold(ld, ThresholdModel::Chia), true);
        // beta = (1-beta) * exp(-2 (1-beta) ld): always has a root in (0,1).
        push(ld, "pss_red",
             bisect([&](double b) {
                 return (1.0 - b) * std::exp(-2.0 * (1.0 - b) * ld) - b;
             }),
             true);
        // beta = (1-beta)(1 - c*ld*(1-beta)) for c = 2 (green) and 10
        // (yellow): quadratic c*ld*x^2 - 2x + 1 = 0 in x = 1-beta.
        auto poly_curve = [&](double c) -> std::pair<double, bool> {
            if (ld == 0.0) return {0.5, true};
            const double disc = 1.0 - c * ld;
            if (disc < 0.0) return {0.0, false};
            const double x = (1.0 - std::sqrt(disc)) / (c * ld);
            const double beta = 1.0 - x;
            if (beta < 0.0 || beta > 1.0) return {0.0, false};
            return {beta, true};
        };
        {
            auto [beta, present] = poly_curve(2.0);
            push(ld, "pss_green", beta, present);
        }
        {
            auto [beta, present] = poly_curve(10.0);
            push(ld, "pss_yellow", beta, present);
        }
        // (1-beta)/(1+ld) = 1/2 and (1-beta)(1-ld) = 1/2.
        {
            const double beta = 1.0 - 0.5 * (1.0 + ld);
            push(ld, "pos_red", beta, beta >= 0.0);
        }
        {
            const bool def = ld < 1.0;
            const double beta = def ? 1.0 - 0.5 / (1.0 - ld) : 0.0;
            push(ld, "pos_green", beta, def && beta >= 0.0);
        }
    }
    return out;
}

ChernoffRate chernoff_rate_A0(double lambda_a, double lambda_h, double delta) {
    if (lambda_a <= 0.0 || lambda_h <= 0.0)
        throw InvalidRate("chernoff_rate_A0: rates must be positive");
    if (delta < 0.0) throw InvalidArgument("chernoff_rate_A0: negative delta");
    if (lambda_a >= honest_growth_rate(lambda_h, delta))
        throw OutOfRegime("chernoff_rate_A0: requires lambda_a below the "
                          "honest growth rate");
    ChernoffRate r;
    if (delta == 0.0) {
        r.s = 0.5 * (lambda_h - lambda_a);
    } else {
        const double sum = lambda_a + lambda_h;
        r.s = 0.5 * (lambda_h - lambda_a) +
              (2.0 - std::sqrt(4.0 + delta * delta * sum * sum)) /
                  (2.0 * delta);
    }
    r.a0 = r.s * delta + std::log(lambda_a * lambda_h /
                                  ((lambda_h - r.s) * (lambda_a + r.s)));
    return r;
}

double bn_rate_anchor_delta0(double lambda_a, double lambda_h) {
    if (lambda_a <= 0.0 || lambda_h <= 0.0)
        throw InvalidRate("bn_rate_anchor_delta0: rates must be positive");
    const double sum = lambda_a + lambda_h;
    return std::log(sum * sum / (4.0 * lambda_a * lambda_h));
}

std::string curves_to_csv(const std::vector<ThresholdPoint>& points) {
    std::string csv = "lambda_delta,curve_id,beta\n";
    char buf[128];
    for (const auto& p : points) {
        if (!p.present) {
            std::snprintf(buf, sizeof buf, "%.17g,%s,\n", p.lambda_delta,
                          p.curve_id.c_str());
        } else {
            std::snprintf(buf, sizeof buf, "%.17g,%s,%.17g\n", p.lambda_delta,
                          p.curve_id.c_str(), p.beta);
        }
        csv += buf;
    }
    return csv;
}

}  // namespace lcsim
