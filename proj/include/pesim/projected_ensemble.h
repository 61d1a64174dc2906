#ifndef PESIM_PROJECTED_ENSEMBLE_H
#define PESIM_PROJECTED_ENSEMBLE_H

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "pesim/stats.h"
#include "pesim/statevector.h"

namespace pesim {

/// Unnormalized projected states of region A, one column per measurement
/// outcome on B in the computational basis, plus their Born weights.
struct ProjectedStates {
    Eigen::MatrixXcd columns;
    std::vector<double> born;
    size_t q = 0;
    size_t L_A = 0;
    size_t L_B = 0;

    double dim_a() const {
        return (double)columns.rows();
    }
};

ProjectedStates projected_matrix(const Statevector &state, const Geometry &geometry);
ProjectedStates projected_matrix(Eigen::MatrixXcd columns, size_t q, size_t L_A, size_t L_B);

struct FrameResult {
    size_t k = 0;
    double value = 0;
    double log_value = 0;
    /// Born weight of outcomes skipped as numerically null.
    double excluded_mass = 0;
    size_t q = 0;
    size_t L_A = 0;
    size_t L_B = 0;
};

struct FrameOptions {
    /// Outcomes with p(a) below this are dropped from the sum.
    double null_threshold = 1e-14;
    /// Columns per Gram block. Zero picks a block size from gram_budget.
    size_t block_columns = 0;
    /// Maximum number of Gram entries held at once.
    size_t gram_budget = size_t{1} << 22;
};

/// F^(k) = sum_{a,a'} p(a)^{1-k} p(a')^{1-k} |<a|a'>|^{2k} for every k in `ks`,
/// accumulated over pairs of column blocks without materializing the full Gram matrix.
std::vector<FrameResult> frame_potentials(
    const ProjectedStates &proj, std::span<const size_t> ks, const FrameOptions &options = {});
FrameResult frame_potential(const ProjectedStates &proj, size_t k, const FrameOptions &options = {});

/// Replicated quantity sum_{a,a'} p(a)^n p(a')^n |<a|a'>|^{2k} over unnormalized projected states.
double replicated_frame_potential(const ProjectedStates &proj, size_t k, size_t n);

/// G_{aa'} = <a|a'> over all outcomes. Small instances only.
Eigen::MatrixXcd gram_matrix(const ProjectedStates &proj);

/// F^(k)/F_H^(k) - 1, with tiny negative rounding clipped to zero.
double delta_squared(const FrameResult &f);

/// Mean and standard error of P^k over per-realization purities.
MeanEstimate purity_moment(std::span<const double> purities, size_t k);

}  // namespace pesim

#endif
