#include "pesim/haar.h"

#include <cmath>
#include <stdexcept>

namespace pesim {

double ascending_factorial(double x, size_t m) {
    double r = 1;
    for (size_t i = 0; i < m; i++) {
        r *= x + (double)i;
    }
    return r;
}

double log_ascending_factorial(double x, size_t m) {
    if (m == 0) {
        return 0;
    }
    if (x <= 0) {
        throw std::invalid_argument("log_ascending_factorial: x must be positive");
    }
    if (m <= 64) {
        double r = 0;
        for (size_t i = 0; i < m; i++) {
            r += std::log(x + (double)i);
        }
        return r;
    }
    return std::lgamma(x + (double)m) - std::lgamma(x);
}

double factorial(size_t k) {
    if (k <= 20) {
        uint64_t r = 1;
        for (uint64_t i = 2; i <= k; i++) {
            r *= i;
        }
        return (double)r;
    }
    return std::exp(std::lgamma((double)k + 1));
}

double log_factorial(size_t k) {
    if (k <= 20) {
        return std::log(factorial(k));
    }
    return std::lgamma((double)k + 1);
}

double haar_frame_potential(double N, size_t k) {
    if (N < 1 || k < 1) {
        throw std::invalid_argument("haar_frame_potential: need N >= 1 and k >= 1");
    }
    return std::exp(log_haar_frame_potential(N, k));
}

double log_haar_frame_potential(double N, size_t k) {
    if (N < 1 || k < 1) {
        throw std::invalid_argument("log_haar_frame_potential: need N >= 1 and k >= 1");
    }
    return log_factorial(k) - log_ascending_factorial(N, k);
}

namespace {

void check(const HaarParams &p) {
    if (p.q < 2 || p.k < 1) {
        throw std::invalid_argument("HaarParams: need q >= 2 and k >= 1");
    }
}

// log(exp(a) + exp(b)) without overflow.
double log_add(double a, double b) {
    double hi = std::max(a, b);
    double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

double haar_state_projected_fp(const HaarParams &p) {
    check(p);
    double lq = std::log((double)p.q);
    double n_a = std::pow((double)p.q, (double)p.L_A);
    double L = (double)(p.L_A + p.L_B);
    double L_B = (double)p.L_B;

    // [q^{L_B} N_A (N_A+1) + (q^{2 L_B} - q^{L_B}) k! N_A^2 / N_k(N_A)] / [q^L (q^L + 1)]
    double log_denom = 2 * L * lq + std::log1p(std::exp(-L * lq));
    double log_first = L_B * lq + std::log(n_a) + std::log(n_a + 1);
    if (p.L_B == 0) {
        return std::exp(log_first - log_denom);
    }
    double log_second = 2 * L_B * lq + std::log(-std::expm1(-L_B * lq)) + log_factorial(p.k) + 2 * std::log(n_a) -
                        log_ascending_factorial(n_a, p.k);
    return std::exp(log_add(log_first, log_second) - log_denom);
}

double haar_state_projected_fp_pre_limit(const HaarParams &p) {
    check(p);
    double lq = std::log((double)p.q);
    double n_a = std::pow((double)p.q, (double)p.L_A);
    double n_l = std::pow((double)p.q, (double)(p.L_A + p.L_B));
    double L_B = (double)p.L_B;
    size_t m = 2 * p.n + 2 * p.k;

    // [q^{L_B} N_m(N_A) + (q^{2 L_B} - q^{L_B}) k! N_{n+k}(N_A)^2 / N_k(N_A)] / N_m(q^L)
    double log_denom = log_ascending_factorial(n_l, m);
    double log_first = L_B * lq + log_ascending_factorial(n_a, m);
    if (p.L_B == 0) {
        return std::exp(log_first - log_denom);
    }
    double log_second = 2 * L_B * lq + std::log(-std::expm1(-L_B * lq)) + log_factorial(p.k) +
                        2 * log_ascending_factorial(n_a, p.n + p.k) - log_ascending_factorial(n_a, p.k);
    return std::exp(log_add(log_first, log_second) - log_denom);
}

std::vector<cdouble> sample_haar_state(size_t dim, Rng &rng) {
    if (dim < 1) {
        throw std::invalid_argument("sample_haar_state: dimension must be positive");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<cdouble> psi(dim);
    double norm = 0;
    for (auto &a : psi) {
        double re = normal(rng);
        double im = normal(rng);
        a = cdouble(re, im);
        norm += re * re + im * im;
    }
    double inv = 1.0 / std::sqrt(norm);
    for (auto &a : psi) {
        a *= inv;
    }
    return psi;
}

}  // namespace pesim
