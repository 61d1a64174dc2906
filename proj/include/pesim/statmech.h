#ifndef PESIM_STATMECH_H
#define PESIM_STATMECH_H

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "pesim/permutation.h"
#include "pesim/statevector.h"

namespace pesim {

/// Weingarten function Wg(sigma; d) on S_m, obtained by inverting the
/// m! x m! Gram matrix [d^{N_c(sigma tau^{-1})}].
class WeingartenTable {
   public:
    WeingartenTable(size_t m, double d);

    size_t m() const {
        return m_;
    }
    double d() const {
        return d_;
    }
    /// Permutations of S_m in lexicographic order; matrix indices refer to this order.
    const std::vector<Permutation> &permutations() const {
        return perms_;
    }
    /// Wg(sigma) for any sigma in S_m (a class function).
    double value(const Permutation &sigma) const;
    /// Values keyed by cycle type.
    const std::map<std::vector<uint32_t>, double> &by_cycle_type() const {
        return by_class_;
    }
    /// W(i, j) = Wg(perm_i perm_j^{-1}).
    const Eigen::MatrixXd &matrix() const {
        return matrix_;
    }
    /// max |sum_tau Wg(sigma tau^{-1}) d^{N_c(tau pi^{-1})} - delta_{sigma pi}|.
    double defining_relation_residual() const;
    double condition_number() const {
        return condition_;
    }

   private:
    size_t m_;
    double d_;
    double condition_;
    std::vector<Permutation> perms_;
    Eigen::MatrixXd gram_;
    Eigen::MatrixXd matrix_;
    std::map<std::vector<uint32_t>, double> by_class_;
};

constexpr size_t kMaxWeingartenDegree = 6;

WeingartenTable weingarten_table(size_t m, double d);

/// Circuit average of one replicated two-site Haar gate, expressed on
/// permutation states. Local labels 0..m!-1 are permutation states
/// ||sigma>> (lexicographic order); label m! is the replicated product state ||0>>.
class GateSuperoperator {
   public:
    GateSuperoperator(size_t m, size_t q);

    size_t m() const {
        return m_;
    }
    size_t q() const {
        return q_;
    }
    size_t num_perms() const {
        return perms_.size();
    }
    size_t zero_label() const {
        return perms_.size();
    }
    const std::vector<Permutation> &permutations() const {
        return perms_;
    }
    const WeingartenTable &weingarten() const {
        return wg_;
    }

    /// <<tau||x>>: q^{N_c(tau x^{-1})} for a permutation label x, 1 for the product state.
    double overlap(size_t tau, size_t x) const {
        return overlap_(tau, x);
    }

    /// Output coefficients c_sigma with gate(||x>> ||y>>) = sum_sigma c_sigma ||sigma>> ||sigma>>.
    const std::vector<double> &apply(size_t x, size_t y) const;

    /// Dense matrix on the span of permutation pair states ||x>>||y>>, index x * m! + y.
    /// Rows index outputs, which are always aligned pairs. Only for m <= 4.
    Eigen::MatrixXd dense_matrix() const;

   private:
    size_t m_;
    size_t q_;
    std::vector<Permutation> perms_;
    WeingartenTable wg_;
    Eigen::MatrixXd overlap_;
    mutable std::vector<std::vector<double>> cache_;
};

constexpr size_t kDefaultConfigurationBudget = size_t{1} << 22;

/// Exact circuit average of the replicated frame potential F^(k,n) for integer n >= 0
/// by contracting the brick-wall transfer matrix between the product-state bottom
/// boundary and the domain-wall top boundary (mu_A on A, the measurement boundary on B).
double contract_frame_potential(
    size_t q,
    const Geometry &geometry,
    size_t t,
    size_t k,
    size_t n,
    size_t configuration_budget = kDefaultConfigurationBudget);

/// Exact circuit average of the k-th moment of the purity of A, using the
/// pairing top boundary (transpositions (0 1)(2 3)... on A, identity on B).
double contract_purity_moment(
    size_t q, const Geometry &geometry, size_t t, size_t k, size_t configuration_budget = kDefaultConfigurationBudget);

}  // namespace pesim

#endif
