#include "pesim/theory.h"

#include <cmath>
#include <stdexcept>

#include "pesim/haar.h"

namespace pesim::theory {

namespace {

double speed(double q, std::optional<double> v2_override) {
    return v2_override.value_or(purity_speed(q));
}

void check_q(double q) {
    if (q < 2) {
        throw std::invalid_argument("theory: q must be at least 2");
    }
}

}  // namespace

double s_eq(double q) {
    check_q(q);
    return std::log(q);
}

double purity_speed(double q) {
    check_q(q);
    return 2 * std::log((q * q + 1) / (2 * q)) / std::log(q);
}

double mean_purity(double q, double t) {
    check_q(q);
    return std::pow(2 * q / (1 + q * q), 2 * t);
}

double large_q_frame_potential(double q, double L_A, double t, size_t k) {
    check_q(q);
    double kk = (double)k;
    if (t <= L_A / 2) {
        return factorial(k) * std::exp(kk * t * std::log(4.0) - 2 * kk * t * std::log(q));
    }
    return factorial(k) * std::pow(q, -kk * L_A);
}

double large_q_branch_mismatch(double q, double L_A, size_t k) {
    double t = L_A / 2;
    double pre = factorial(k) * std::exp((double)k * t * std::log(4.0) - 2 * (double)k * t * std::log(q));
    double sat = factorial(k) * std::pow(q, -(double)k * L_A);
    return pre / sat;
}

double large_q_fp_with_spectators(double q, double L_A, double L_B, double t, size_t k, double n) {
    check_q(q);
    double exponent = 2 * (n + (double)k - 1) * L_B;
    return large_q_frame_potential(q, L_A, t, k) * std::pow(q, -exponent);
}

double membrane_frame_potential(double q, double L_A, double t, size_t k, std::optional<double> v2_override) {
    double v2 = speed(q, v2_override);
    if (t < L_A / v2) {
        return factorial(k) * std::exp(-(double)k * v2 * s_eq(q) * t);
    }
    return haar_frame_potential(std::pow(q, L_A), k);
}

double rounded_fp1(double q, double L_A, double t, std::optional<double> v2_override) {
    double v2 = speed(q, v2_override);
    double s = s_eq(q);
    return std::exp(-s * L_A) + std::exp(-v2 * s * t);
}

double delta2_nonint(double q, double L_A, double t, size_t k, std::optional<double> v2_override) {
    double v2 = speed(q, v2_override);
    double x = std::exp((L_A - v2 * t) * s_eq(q));
    return std::expm1((double)k * std::log1p(x));
}

double design_time(double q, double L_A, size_t k, double epsilon, std::optional<double> v2_override) {
    if (!(epsilon > 0 && epsilon < 1)) {
        throw std::invalid_argument("design_time: epsilon must be in (0, 1)");
    }
    if (k < 1) {
        throw std::invalid_argument("design_time: k must be at least 1");
    }
    double v2 = speed(q, v2_override);
    double s = s_eq(q);
    return L_A / v2 + 2 * std::log(1 / epsilon) / (v2 * s) + std::log((double)k) / (v2 * s);
}

double bulk_fp_large_q(
    double q, double t, size_t k, Boundary boundary, bool use_infinite_q_speed, std::optional<double> v2_override) {
    double v2 = use_infinite_q_speed ? 2.0 : speed(q, v2_override);
    double decay = std::exp(-2 * v2 * (double)k * t);
    double kf = factorial(k);
    return boundary == Boundary::Open ? kf * kf * decay : kf * decay;
}

double correlation_length(double q, double t, double n, size_t k, std::optional<double> v2_override) {
    double total = n + (double)k;
    if (total == 1) {
        return INFINITY;
    }
    if (total < 2) {
        throw std::invalid_argument("correlation_length: need n + k >= 2 for an elementary domain wall");
    }
    double v2 = speed(q, v2_override);
    return std::exp(v2 * s_eq(q) * t) / (total * (total - 1));
}

}  // namespace pesim::theory
