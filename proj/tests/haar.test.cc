#include "pesim/haar.h"

#include <cmath>
#include <numeric>

#include "gtest/gtest.h"

#include "pesim/projected_ensemble.h"
#include "pesim/stats.h"

using namespace pesim;

static ProjectedStates haar_projected(size_t q, size_t L_A, size_t L_B, Rng &rng) {
    size_t n_a = (size_t)std::pow(q, L_A);
    size_t n_b = (size_t)std::pow(q, L_B);
    auto v = sample_haar_state(n_a * n_b, rng);
    Eigen::MatrixXcd m(n_a, n_b);
    for (size_t a = 0; a < n_a; a++) {
        for (size_t b = 0; b < n_b; b++) {
            m(a, b) = v[a * n_b + b];
        }
    }
    return projected_matrix(m, q, L_A, L_B);
}

TEST(haar, ascending_factorial) {
    ASSERT_EQ(ascending_factorial(7.5, 0), 1.0);
    ASSERT_EQ(ascending_factorial(4, 2), 20.0);
    ASSERT_EQ(ascending_factorial(64, 3), 274560.0);
    ASSERT_NEAR(log_ascending_factorial(64, 3), std::log(274560.0), 1e-12);
    ASSERT_NEAR(log_ascending_factorial(1e6, 100), std::lgamma(1e6 + 100) - std::lgamma(1e6), 1e-6);
}

TEST(haar, factorial) {
    ASSERT_EQ(factorial(0), 1.0);
    ASSERT_EQ(factorial(5), 120.0);
    ASSERT_EQ(factorial(20), 2432902008176640000.0);
    ASSERT_NEAR(log_factorial(30), std::lgamma(31.0), 1e-9);
}

TEST(haar, frame_potential_examples) {
    for (double n : {2.0, 5.0, 64.0}) {
        ASSERT_NEAR(haar_frame_potential(n, 1), 1 / n, 1e-15);
    }
    ASSERT_NEAR(haar_frame_potential(4, 2), 0.1, 1e-15);
    ASSERT_NEAR(haar_frame_potential(64, 2), 2.0 / (64 * 65), 1e-18);
    ASSERT_NEAR(haar_frame_potential(64, 2), 4.8077e-4, 1e-8);
}

TEST(haar, frame_potential_times_binomial_is_one) {
    for (uint64_t n = 1; n <= 64; n++) {
        for (uint64_t k = 1; k <= 5; k++) {
            // Exact binomial(n + k - 1, k) in integers.
            uint64_t binom = 1;
            for (uint64_t i = 1; i <= k; i++) {
                binom = binom * (n + i - 1) / i;
            }
            ASSERT_NEAR(haar_frame_potential((double)n, k) * (double)binom, 1.0, 1e-14);
        }
    }
}

TEST(haar, finite_lb_formula_examples) {
    ASSERT_NEAR(haar_state_projected_fp({2, 1, 1, 1}), 0.8, 1e-14);
    ASSERT_NEAR(haar_state_projected_fp({2, 1, 60, 2}), 1.0 / 3.0, 1e-12);
    for (size_t k = 1; k <= 3; k++) {
        double limit = haar_frame_potential(std::pow(2.0, 3), k);
        double prev = INFINITY;
        for (size_t lb = 1; lb <= 40; lb++) {
            double v = haar_state_projected_fp({2, 3, lb, k});
            ASSERT_GE(v, limit);
            ASSERT_LE(v, prev + 1e-15);
            prev = v;
        }
        ASSERT_NEAR(prev / limit, 1.0, 1e-9);
    }
}

TEST(haar, finite_lb_formula_by_direct_expression) {
    // [q^{L_B} N_A (N_A + 1) + (q^{2 L_B} - q^{L_B}) k! N_A^2 / N_k(N_A)] / [q^L (q^L + 1)]
    for (size_t la = 1; la <= 3; la++) {
        for (size_t lb = 1; lb <= 5; lb++) {
            for (size_t k = 1; k <= 3; k++) {
                double na = std::pow(2.0, la);
                double nb = std::pow(2.0, lb);
                double n = na * nb;
                double expected =
                    (nb * na * (na + 1) + (nb * nb - nb) * factorial(k) * na * na / ascending_factorial(na, k)) /
                    (n * (n + 1));
                ASSERT_NEAR(haar_state_projected_fp({2, la, lb, k}), expected, 1e-14 * expected);
            }
        }
    }
}

TEST(haar, pre_limit_consistency) {
    for (size_t lb = 1; lb <= 4; lb++) {
        ASSERT_NEAR(
            haar_state_projected_fp_pre_limit({2, 1, lb, 1, 0}), haar_state_projected_fp({2, 1, lb, 1}), 1e-14);
        ASSERT_NEAR(
            haar_state_projected_fp_pre_limit({3, 2, lb, 1, 0}), haar_state_projected_fp({3, 2, lb, 1}), 1e-14);
    }
    // Growing n suppresses by about q^{-2 L_B} per added spectator.
    double a = haar_state_projected_fp_pre_limit({2, 6, 6, 2, 2});
    double b = haar_state_projected_fp_pre_limit({2, 6, 6, 2, 3});
    ASSERT_NEAR(std::log2(a / b) / (2 * 6), 1.0, 0.05);
}

TEST(haar, pre_limit_matches_monte_carlo) {
    Rng rng(31);
    for (auto [k, n] : {std::pair<size_t, size_t>{1, 1}, {2, 0}, {2, 1}}) {
        std::vector<double> x;
        for (int rep = 0; rep < 3000; rep++) {
            x.push_back(replicated_frame_potential(haar_projected(2, 1, 2, rng), k, n));
        }
        auto est = estimate_mean(x);
        ASSERT_NEAR(est.mean, haar_state_projected_fp_pre_limit({2, 1, 2, k, n}), 3 * est.sem);
    }
}

TEST(haar, large_q_ordering) {
    for (size_t k = 1; k <= 3; k++) {
        for (double q : {2.0, 3.0, 5.0, 8.0, 64.0}) {
            double v = haar_state_projected_fp({(size_t)q, 2, 6, k});
            double leading = factorial(k) * std::pow(q, -2.0 * k);
            ASSERT_LE(std::abs(v / leading - 1), 3.0 * k * k / q);
        }
    }
}

TEST(haar, state_sampler) {
    Rng rng(41);
    auto v = sample_haar_state(17, rng);
    double norm = 0;
    for (auto x : v) {
        norm += std::norm(x);
    }
    ASSERT_NEAR(norm, 1.0, 1e-12);

    std::vector<double> e0;
    std::vector<double> pair;
    for (int rep = 0; rep < 100000; rep++) {
        auto a = sample_haar_state(4, rng);
        e0.push_back(std::norm(a[0]));
        if (rep < 20000) {
            auto b = sample_haar_state(6, rng);
            auto c = sample_haar_state(6, rng);
            cdouble dot = 0;
            for (size_t i = 0; i < 6; i++) {
                dot += std::conj(b[i]) * c[i];
            }
            pair.push_back(std::norm(dot));
        }
    }
    auto m0 = estimate_mean(e0);
    ASSERT_NEAR(m0.mean, 0.25, 3 * m0.sem);
    auto mp = estimate_mean(pair);
    ASSERT_NEAR(mp.mean, 1.0 / 6.0, 3 * mp.sem);
}

TEST(haar, finite_lb_monte_carlo) {
    Rng rng(51);
    for (size_t la = 1; la <= 2; la++) {
        for (size_t lb = 2; lb <= 6; lb++) {
            std::vector<double> f1;
            std::vector<double> f2;
            for (int rep = 0; rep < 1000; rep++) {
                auto proj = haar_projected(2, la, lb, rng);
                size_t ks[] = {1, 2};
                auto f = frame_potentials(proj, ks);
                f1.push_back(f[0].value);
                f2.push_back(f[1].value);
            }
            auto e1 = estimate_mean(f1);
            auto e2 = estimate_mean(f2);
            ASSERT_NEAR(e1.mean, haar_state_projected_fp({2, la, lb, 1}), 3 * e1.sem) << la << " " << lb;
            ASSERT_NEAR(e2.mean, haar_state_projected_fp({2, la, lb, 2}), 3 * e2.sem) << la << " " << lb;
        }
    }
}
