#include "pesim/statevector.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "gtest/gtest.h"

#include "pesim/errors.h"
#include "pesim/stats.h"

using namespace pesim;

static Statevector random_state(size_t L, size_t q, uint64_t seed) {
    Statevector s = product_state(L, q);
    Rng rng(seed);
    std::normal_distribution<double> normal;
    double norm = 0;
    for (auto &a : s.amplitudes()) {
        a = {normal(rng), normal(rng)};
        norm += std::norm(a);
    }
    for (auto &a : s.amplitudes()) {
        a /= std::sqrt(norm);
    }
    return s;
}

TEST(statevector, product_state) {
    auto s = product_state(1, 2);
    ASSERT_EQ(s.size(), 2u);
    ASSERT_EQ(s[0], cdouble(1));
    ASSERT_EQ(s[1], cdouble(0));
    auto s3 = product_state(2, 3);
    ASSERT_EQ(s3.size(), 9u);
    ASSERT_EQ(s3[0], cdouble(1));
    for (size_t i = 1; i < 9; i++) {
        ASSERT_EQ(s3[i], cdouble(0));
    }
    for (size_t L = 1; L <= 8; L++) {
        for (size_t q = 2; q <= 4; q++) {
            ASSERT_EQ(product_state(L, q).norm_squared(), 1.0);
        }
    }
}

TEST(statevector, budget_guard) {
    ASSERT_THROW(product_state(30, 2), BudgetExceeded);
    ASSERT_NO_THROW(product_state(10, 2, 1024));
    ASSERT_THROW(product_state(11, 2, 1024), BudgetExceeded);
    try {
        product_state(27, 2);
        FAIL();
    } catch (const BudgetExceeded &e) {
        ASSERT_NE(std::string(e.what()).find("MiB"), std::string::npos);
    }
}

TEST(statevector, haar_gate_unitarity) {
    Rng rng(11);
    for (size_t q = 2; q <= 4; q++) {
        for (int rep = 0; rep < 20; rep++) {
            auto u = sample_haar_gate(q, rng);
            ASSERT_EQ(u.rows(), (Eigen::Index)(q * q));
            ASSERT_LT(unitarity_defect(u), 1e-12);
        }
    }
}

TEST(statevector, haar_gate_second_moment) {
    Rng rng(12);
    std::vector<double> x;
    for (int rep = 0; rep < 100000; rep++) {
        x.push_back(std::norm(sample_haar_gate(2, rng)(0, 0)));
    }
    auto est = estimate_mean(x);
    ASSERT_NEAR(est.mean, 0.25, 3 * est.sem);
}

TEST(statevector, haar_gate_fourth_moment) {
    // E|U_00|^4 = 2 / (d (d + 1)); a QR without phase correction fails this.
    Rng rng(13);
    std::vector<double> x;
    for (int rep = 0; rep < 100000; rep++) {
        auto u = sample_haar_unitary(2, rng);
        x.push_back(std::norm(u(0, 0)) * std::norm(u(0, 0)));
    }
    auto est = estimate_mean(x);
    ASSERT_NEAR(est.mean, 1.0 / 3.0, 3 * est.sem);

    // Phase of U_00 is uniform: E[U_00] = 0.
    std::vector<double> re;
    for (int rep = 0; rep < 100000; rep++) {
        re.push_back(sample_haar_unitary(3, rng)(0, 0).real());
    }
    auto m = estimate_mean(re);
    ASSERT_NEAR(m.mean, 0.0, 3 * m.sem);
}

TEST(statevector, haar_eigenphases_uniform) {
    Rng rng(14);
    const size_t bins = 20;
    std::vector<double> counts(bins, 0);
    size_t total = 0;
    for (int rep = 0; rep < 10000; rep++) {
        auto u = sample_haar_gate(2, rng);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(u);
        for (Eigen::Index i = 0; i < eig.eigenvalues().size(); i++) {
            double phase = std::arg(eig.eigenvalues()(i)) + std::numbers::pi;
            size_t b = std::min(bins - 1, (size_t)(phase / (2 * std::numbers::pi) * bins));
            counts[b] += 1;
            total++;
        }
    }
    double expected = (double)total / bins;
    double chi2 = 0;
    for (double c : counts) {
        chi2 += (c - expected) * (c - expected) / expected;
    }
    // 99th percentile of chi-square with 19 degrees of freedom.
    ASSERT_LT(chi2, 36.19);
}

TEST(statevector, identity_gate_is_exact) {
    auto s = random_state(5, 2, 1);
    auto before = s.amplitudes();
    GateMatrix id = GateMatrix::Identity(4, 4);
    for (size_t j = 0; j + 1 < 5; j++) {
        apply_two_site_gate(s, id, j, false);
    }
    ASSERT_EQ(s.amplitudes(), before);
}

TEST(statevector, swap_gate) {
    GateMatrix swap = GateMatrix::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = 1;
    swap(1, 2) = swap(2, 1) = 1;
    Statevector s = product_state(2, 2);
    s.amplitudes()[0] = 0;
    s.amplitudes()[1] = 1;  // |01>
    apply_two_site_gate(s, swap, 0, false);
    ASSERT_EQ(s[2], cdouble(1));  // |10>
    ASSERT_EQ(s[1], cdouble(0));
}

TEST(statevector, gate_acts_on_the_named_pair) {
    // CNOT with control on the left site of the pair.
    GateMatrix cnot = GateMatrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = 1;
    cnot(2, 3) = cnot(3, 2) = 1;
    Statevector s = product_state(4, 2);
    s.amplitudes()[0] = 0;
    s.amplitudes()[0b0100] = 1;
    apply_two_site_gate(s, cnot, 1, false);
    ASSERT_EQ(s[0b0110], cdouble(1));
    s.amplitudes()[0b0110] = 0;
    s.amplitudes()[0b0001] = 1;  // site 3 set; wrap pair is (3, 0)
    apply_two_site_gate(s, cnot, 3, true);
    ASSERT_EQ(s[0b1001], cdouble(1));
}

TEST(statevector, gate_round_trip) {
    Rng rng(15);
    for (size_t q = 2; q <= 3; q++) {
        auto s = random_state(5, q, 2);
        auto before = s.amplitudes();
        auto u = sample_haar_gate(q, rng);
        GateMatrix ud = u.adjoint();
        for (size_t j = 0; j + 1 < 5; j++) {
            apply_two_site_gate(s, u, j, false);
            ASSERT_NEAR(s.norm_squared(), 1.0, 1e-12);
            apply_two_site_gate(s, ud, j, false);
            for (size_t i = 0; i < s.size(); i++) {
                ASSERT_LT(std::abs(s[i] - before[i]), 1e-12);
            }
        }
        apply_two_site_gate(s, u, 4, true);
        apply_two_site_gate(s, ud, 4, true);
        for (size_t i = 0; i < s.size(); i++) {
            ASSERT_LT(std::abs(s[i] - before[i]), 1e-12);
        }
    }
}

TEST(statevector, gate_argument_errors) {
    auto s = product_state(4, 2);
    GateMatrix id = GateMatrix::Identity(4, 4);
    ASSERT_THROW(apply_two_site_gate(s, id, 3, false), std::invalid_argument);
    ASSERT_THROW(apply_two_site_gate(s, id, 4, false), std::invalid_argument);
    ASSERT_THROW(apply_two_site_gate(s, id, 1, true), std::invalid_argument);
    ASSERT_THROW(apply_two_site_gate(s, GateMatrix::Identity(9, 9), 0, false), std::invalid_argument);
}

TEST(statevector, brick_layers) {
    Geometry obc{3, 3, Boundary::Open, Placement::Edge};
    auto l0 = brick_layer(obc, 0);
    auto l1 = brick_layer(obc, 1);
    ASSERT_EQ(l0.size(), 3u);
    ASSERT_EQ(l1.size(), 2u);
    ASSERT_EQ(l0[1].site, 2u);
    ASSERT_EQ(l1[0].site, 1u);
    Geometry pbc{3, 3, Boundary::Periodic, Placement::Edge};
    auto p1 = brick_layer(pbc, 1);
    ASSERT_EQ(p1.size(), 3u);
    ASSERT_TRUE(p1.back().wrap);
    ASSERT_EQ(p1.back().site, 5u);
    Geometry odd{2, 3, Boundary::Periodic, Placement::Edge};
    ASSERT_THROW(odd.validate(), std::invalid_argument);
}

TEST(statevector, bulk_placement) {
    Geometry g{2, 5, Boundary::Open, Placement::Bulk};
    ASSERT_EQ(g.a_begin(), 2u);
    ASSERT_EQ(g.b_left(), 2u);
    ASSERT_EQ(g.b_right(), 3u);
    ASSERT_FALSE(g.in_a(1));
    ASSERT_TRUE(g.in_a(2));
    ASSERT_TRUE(g.in_a(3));
    ASSERT_FALSE(g.in_a(4));
}

TEST(statevector, evolve_examples) {
    Geometry g{4, 4, Boundary::Open, Placement::Edge};
    auto s = product_state(8, 2);
    evolve_brick_wall(s, 0, g, 1);
    ASSERT_EQ(s[0], cdouble(1));
    ASSERT_EQ(reduced_purity(s, g), 1.0);
    evolve_brick_wall(s, 10, g, 1);
    ASSERT_NEAR(s.norm_squared(), 1.0, 1e-10);
}

TEST(statevector, evolve_in_pieces_matches_single_call) {
    Geometry g{3, 3, Boundary::Periodic, Placement::Bulk};
    auto a = product_state(6, 2);
    auto b = product_state(6, 2);
    std::vector<GateRecord> log;
    evolve_brick_wall(a, 5, g, 99, 0, &log);
    evolve_brick_wall(b, 2, g, 99);
    evolve_brick_wall(b, 3, g, 99, 2);
    ASSERT_EQ(a.amplitudes(), b.amplitudes());
    ASSERT_EQ(log.size(), 5u * 6u);
    ASSERT_EQ(log.back().step, 5u);
    ASSERT_EQ(log.back().seed, gate_seed(99, 5, 1, 5));
}

TEST(statevector, evolution_is_deterministic) {
    Geometry g{3, 4, Boundary::Open, Placement::Edge};
    auto a = product_state(7, 3);
    auto b = product_state(7, 3);
    evolve_brick_wall(a, 4, g, 12345);
    evolve_brick_wall(b, 4, g, 12345);
    ASSERT_EQ(a.amplitudes(), b.amplitudes());
    auto c = product_state(7, 3);
    evolve_brick_wall(c, 4, g, 12346);
    ASSERT_NE(a.amplitudes(), c.amplitudes());
}

TEST(statevector, layer_gates_commute) {
    Geometry g{4, 4, Boundary::Periodic, Placement::Edge};
    Rng rng(3);
    for (int parity = 0; parity < 2; parity++) {
        auto layer = brick_layer(g, parity);
        std::vector<GateMatrix> gates;
        for (size_t i = 0; i < layer.size(); i++) {
            gates.push_back(sample_haar_gate(2, rng));
        }
        auto a = random_state(8, 2, 4);
        auto b = a;
        for (size_t i = 0; i < layer.size(); i++) {
            apply_two_site_gate(a, gates[i], layer[i].site, layer[i].wrap);
        }
        for (size_t i = layer.size(); i-- > 0;) {
            apply_two_site_gate(b, gates[i], layer[i].site, layer[i].wrap);
        }
        for (size_t i = 0; i < a.size(); i++) {
            ASSERT_LT(std::abs(a[i] - b[i]), 1e-12);
        }
    }
}

TEST(statevector, purity_examples) {
    Geometry g{1, 1, Boundary::Open, Placement::Edge};
    auto bell = product_state(2, 2);
    bell.amplitudes()[0] = std::sqrt(0.5);
    bell.amplitudes()[3] = std::sqrt(0.5);
    ASSERT_NEAR(reduced_purity(bell, g), 0.5, 1e-15);

    Geometry whole{4, 0, Boundary::Open, Placement::Edge};
    auto s = product_state(4, 2);
    evolve_brick_wall(s, 3, whole, 5);
    ASSERT_NEAR(reduced_purity(s, whole), 1.0, 1e-12);
    Geometry whole_bulk{4, 0, Boundary::Periodic, Placement::Bulk};
    auto s2 = product_state(4, 2);
    evolve_brick_wall(s2, 3, whole_bulk, 5);
    ASSERT_NEAR(reduced_purity(s2, whole_bulk), 1.0, 1e-12);
}

TEST(statevector, purity_is_symmetric_across_the_cut) {
    auto s = random_state(7, 2, 8);
    Geometry ga{3, 4, Boundary::Open, Placement::Edge};
    auto m = bipartition_matrix(s, ga);
    ASSERT_EQ(m.rows(), 8);
    ASSERT_EQ(m.cols(), 16);
    Eigen::MatrixXcd rho_a = m * m.adjoint();
    Eigen::MatrixXcd rho_b = m.adjoint() * m;
    ASSERT_NEAR(reduced_purity(s, ga), rho_a.squaredNorm(), 1e-12);
    ASSERT_NEAR(rho_a.squaredNorm(), rho_b.squaredNorm(), 1e-12);
}

TEST(statevector, bipartition_bulk_column_order) {
    // Sites: b b a a b b b with q = 2; left B digits are more significant.
    Geometry g{2, 5, Boundary::Open, Placement::Bulk};
    auto s = product_state(7, 2);
    s.amplitudes()[0] = 0;
    size_t index = 0b1001011;  // b=10, a=01, b=011
    s.amplitudes()[index] = 1;
    auto m = bipartition_matrix(s, g);
    ASSERT_EQ(m(0b01, 0b10011), cdouble(1));
}

TEST(statevector, dump_round_trip) {
    auto s = random_state(5, 3, 9);
    std::string path = ::testing::TempDir() + "/pesim_state.bin";
    write_statevector(path, s, 77);
    auto [t, seed] = read_statevector(path);
    ASSERT_EQ(seed, 77u);
    ASSERT_EQ(t.L(), 5u);
    ASSERT_EQ(t.q(), 3u);
    ASSERT_EQ(t.amplitudes(), s.amplitudes());
    std::remove(path.c_str());
}
