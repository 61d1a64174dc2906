#include "pesim/statmech.h"

#include <cmath>

#include "gtest/gtest.h"

#include "pesim/errors.h"
#include "pesim/projected_ensemble.h"
#include "pesim/stats.h"
#include "pesim/theory.h"

using namespace pesim;

TEST(statmech, weingarten_m1) {
    for (double d : {4.0, 9.0}) {
        ASSERT_NEAR(weingarten_table(1, d).value(Permutation::identity(1)), 1 / d, 1e-15);
    }
}

TEST(statmech, weingarten_m2_closed_form) {
    for (double d : {2.0, 4.0, 9.0, 16.0}) {
        auto w = weingarten_table(2, d);
        ASSERT_NEAR(w.value(Permutation::identity(2)), 1 / (d * d - 1), 1e-14);
        ASSERT_NEAR(w.value(Permutation({1, 0})), -1 / (d * (d * d - 1)), 1e-14);
    }
}

TEST(statmech, weingarten_m3_closed_form) {
    // Wg(e) = (d^2 - 2)/(d (d^2 - 1)(d^2 - 4)), Wg(2-cycle) = -1/((d^2-1)(d^2-4)), Wg(3-cycle) = 2/(d (d^2-1)(d^2-4)).
    double d = 9;
    auto w = weingarten_table(3, d);
    double den = (d * d - 1) * (d * d - 4);
    ASSERT_NEAR(w.value(Permutation::identity(3)), (d * d - 2) / (d * den), 1e-15);
    ASSERT_NEAR(w.value(Permutation({1, 0, 2})), -1 / den, 1e-15);
    ASSERT_NEAR(w.value(Permutation::translation(3)), 2 / (d * den), 1e-15);
    ASSERT_LT(w.defining_relation_residual(), 1e-12);
}

TEST(statmech, weingarten_defining_relation) {
    for (size_t m = 1; m <= 4; m++) {
        for (double d : {4.0, 9.0, 16.0}) {
            ASSERT_LT(weingarten_table(m, d).defining_relation_residual(), 1e-10) << m << " " << d;
        }
    }
    ASSERT_LT(weingarten_table(5, 9).defining_relation_residual(), 1e-10);
}

TEST(statmech, weingarten_is_class_function) {
    auto w = weingarten_table(4, 9);
    const auto &perms = w.permutations();
    for (size_t i = 0; i < perms.size(); i++) {
        for (size_t j = 0; j < perms.size(); j++) {
            auto c = compose(perms[i], perms[j].inverse());
            ASSERT_NEAR(w.matrix()(i, j), w.value(c), 1e-14);
        }
    }
}

TEST(statmech, weingarten_rejects_singular) {
    ASSERT_THROW(weingarten_table(3, 2), std::invalid_argument);
    ASSERT_THROW(weingarten_table(6, 4), std::invalid_argument);
    ASSERT_THROW(weingarten_table(7, 100), std::invalid_argument);
    try {
        weingarten_table(4, 2);
        FAIL();
    } catch (const std::invalid_argument &e) {
        ASSERT_NE(std::string(e.what()).find("condition number"), std::string::npos);
    }
}

TEST(statmech, gate_projects_aligned_pairs) {
    GateSuperoperator op(2, 2);
    for (size_t s = 0; s < 2; s++) {
        auto c = op.apply(s, s);
        for (size_t t = 0; t < 2; t++) {
            ASSERT_NEAR(c[t], s == t ? 1.0 : 0.0, 1e-14);
        }
    }
    auto m = op.dense_matrix();
    ASSERT_LT((m * m - m).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(statmech, gate_output_span) {
    GateSuperoperator op(4, 2);
    auto m = op.dense_matrix();
    size_t s = op.num_perms();
    for (size_t row = 0; row < s * s; row++) {
        if (row / s != row % s) {
            ASSERT_EQ(m.row((Eigen::Index)row).cwiseAbs().maxCoeff(), 0.0);
        }
    }
}

TEST(statmech, gate_matches_haar_average) {
    // Product-state input: c_sigma = 1 / (d (d + 1)) for both sigma.
    for (size_t q = 2; q <= 4; q++) {
        GateSuperoperator op(2, q);
        auto c = op.apply(op.zero_label(), op.zero_label());
        double d = (double)(q * q);
        ASSERT_NEAR(c[0], 1 / (d * (d + 1)), 1e-15);
        ASSERT_NEAR(c[1], 1 / (d * (d + 1)), 1e-15);
    }
}

TEST(statmech, gate_large_q_diagonal) {
    for (size_t m = 2; m <= 3; m++) {
        GateSuperoperator op(m, 64);
        double leading = std::pow(64.0, 2.0 * (double)m);
        for (size_t x = 0; x < op.num_perms(); x++) {
            auto c = op.apply(x, x);
            ASSERT_NEAR(c[x], 1.0, 1e-12);
            auto c2 = op.apply(x, 0);
            double scale = 0;
            for (size_t s = 0; s < op.num_perms(); s++) {
                scale = std::max(scale, op.overlap(s, x) * op.overlap(s, 0) / leading);
            }
            for (size_t s = 0; s < op.num_perms(); s++) {
                double expected = op.overlap(s, x) * op.overlap(s, 0) / leading;
                ASSERT_NEAR(c2[s], expected, 0.05 * scale);
            }
        }
    }
}

TEST(statmech, contraction_trivial_time) {
    Geometry g{2, 2, Boundary::Open, Placement::Edge};
    ASSERT_NEAR(contract_frame_potential(2, g, 0, 1, 0), 1.0, 1e-14);
    ASSERT_NEAR(contract_frame_potential(3, g, 0, 2, 0), 1.0, 1e-14);
    ASSERT_NEAR(contract_frame_potential(2, g, 0, 1, 1), 1.0, 1e-14);
    ASSERT_NEAR(contract_purity_moment(2, g, 0, 1), 1.0, 1e-14);
}

TEST(statmech, contraction_reproduces_mean_purity) {
    // Edge region, obc: pre-saturation purity is exactly (2q/(1+q^2))^{2t}.
    for (size_t q = 2; q <= 3; q++) {
        Geometry g{4, 4, Boundary::Open, Placement::Edge};
        for (size_t t = 0; t <= 2; t++) {
            ASSERT_NEAR(contract_frame_potential(q, g, t, 1, 0), theory::mean_purity((double)q, (double)t), 1e-12);
            ASSERT_NEAR(contract_purity_moment(q, g, t, 1), theory::mean_purity((double)q, (double)t), 1e-12);
        }
    }
}

TEST(statmech, purity_moment_and_frame_agree_at_k1) {
    for (auto b : {Boundary::Open, Boundary::Periodic}) {
        Geometry g{3, 3, b, Placement::Bulk};
        for (size_t t = 0; t <= 3; t++) {
            ASSERT_NEAR(contract_frame_potential(2, g, t, 1, 0), contract_purity_moment(2, g, t, 1), 1e-12);
        }
    }
}

TEST(statmech, contraction_matches_monte_carlo) {
    Geometry g{2, 2, Boundary::Open, Placement::Edge};
    for (auto [k, n] : {std::pair<size_t, size_t>{1, 0}, {2, 0}, {1, 1}}) {
        for (size_t t = 1; t <= 2; t++) {
            double exact = contract_frame_potential(2, g, t, k, n);
            std::vector<double> x;
            for (uint64_t r = 0; r < 10000; r++) {
                auto s = product_state(4, 2);
                evolve_brick_wall(s, t, g, realization_seed(1000 * k + 100 * n + t, r));
                x.push_back(replicated_frame_potential(projected_matrix(s, g), k, n));
            }
            auto est = estimate_mean(x);
            ASSERT_NEAR(est.mean, exact, 3 * est.sem) << k << " " << n << " " << t;
        }
    }
}

TEST(statmech, purity_moment_k2_matches_monte_carlo) {
    Geometry g{2, 2, Boundary::Open, Placement::Edge};
    double exact = contract_purity_moment(2, g, 1, 2);
    std::vector<double> x;
    for (uint64_t r = 0; r < 10000; r++) {
        auto s = product_state(4, 2);
        evolve_brick_wall(s, 1, g, realization_seed(77, r));
        double p = reduced_purity(s, g);
        x.push_back(p * p);
    }
    auto est = estimate_mean(x);
    ASSERT_NEAR(est.mean, exact, 3 * est.sem);
}

TEST(statmech, purity_l4_monte_carlo) {
    Geometry g{2, 2, Boundary::Open, Placement::Edge};
    double exact = contract_purity_moment(2, g, 1, 1);
    std::vector<double> x;
    for (uint64_t r = 0; r < 10000; r++) {
        auto s = product_state(4, 2);
        evolve_brick_wall(s, 1, g, realization_seed(78, r));
        x.push_back(reduced_purity(s, g));
    }
    auto est = estimate_mean(x);
    ASSERT_NEAR(est.mean, exact, 3 * est.sem);
}

TEST(statmech, large_q_degeneration) {
    // At q = 64 the k = 1 contraction approaches the leading large-q form including the 4^t walk count.
    Geometry g{2, 4, Boundary::Open, Placement::Edge};
    for (size_t t : {1, 2, 3}) {
        double exact = contract_frame_potential(64, g, t, 1, 0);
        double leading = theory::large_q_frame_potential(64, 2, (double)t, 1);
        ASSERT_NEAR(exact / leading, 1.0, 0.05) << t;
    }
}

TEST(statmech, budget_and_degree_guards) {
    Geometry g{7, 7, Boundary::Open, Placement::Edge};
    ASSERT_THROW(contract_frame_potential(2, g, 1, 1, 0), BudgetExceeded);
    Geometry small{1, 1, Boundary::Open, Placement::Edge};
    ASSERT_THROW(contract_frame_potential(2, small, 1, 2, 2), std::invalid_argument);
    ASSERT_THROW(contract_frame_potential(2, small, 1, 3, 0), std::invalid_argument);
    ASSERT_NO_THROW(contract_frame_potential(3, small, 1, 3, 0));
    ASSERT_THROW(contract_purity_moment(2, small, 1, 0), std::invalid_argument);
}
