#include "pesim/projected_ensemble.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pesim/haar.h"

namespace pesim {

ProjectedStates projected_matrix(Eigen::MatrixXcd columns, size_t q, size_t L_A, size_t L_B) {
    ProjectedStates proj;
    proj.born.resize(columns.cols());
    for (Eigen::Index c = 0; c < columns.cols(); c++) {
        proj.born[c] = columns.col(c).squaredNorm();
    }
    proj.columns = std::move(columns);
    proj.q = q;
    proj.L_A = L_A;
    proj.L_B = L_B;
    return proj;
}

ProjectedStates projected_matrix(const Statevector &state, const Geometry &geometry) {
    return projected_matrix(bipartition_matrix(state, geometry), state.q(), geometry.L_A, geometry.L_B);
}

Eigen::MatrixXcd gram_matrix(const ProjectedStates &proj) {
    return proj.columns.adjoint() * proj.columns;
}

std::vector<FrameResult> frame_potentials(
    const ProjectedStates &proj, std::span<const size_t> ks, const FrameOptions &options) {
    if (ks.empty()) {
        return {};
    }
    for (auto k : ks) {
        if (k < 1) {
            throw std::invalid_argument("frame_potential: k must be at least 1");
        }
    }
    size_t k_max = *std::max_element(ks.begin(), ks.end());

    // Keep only outcomes with non-negligible Born weight.
    std::vector<Eigen::Index> kept;
    double excluded = 0;
    for (size_t a = 0; a < proj.born.size(); a++) {
        if (proj.born[a] >= options.null_threshold) {
            kept.push_back((Eigen::Index)a);
        } else {
            excluded += proj.born[a];
        }
    }
    Eigen::MatrixXcd cols(proj.columns.rows(), (Eigen::Index)kept.size());
    std::vector<double> p(kept.size());
    std::vector<double> inv_p(kept.size());
    for (size_t i = 0; i < kept.size(); i++) {
        cols.col((Eigen::Index)i) = proj.columns.col(kept[i]);
        p[i] = proj.born[kept[i]];
        inv_p[i] = 1.0 / p[i];
    }

    size_t n = kept.size();
    size_t block = options.block_columns;
    if (block == 0) {
        block = std::max<size_t>(1, (size_t)std::sqrt((double)options.gram_budget));
    }
    block = std::min(block, std::max<size_t>(n, 1));

    // sums[k-1] accumulates p p' r^k with r the normalized squared overlap.
    std::vector<CompensatedSum> sums(k_max);
    std::vector<double> column(k_max);
    Eigen::MatrixXcd g;
    for (size_t i0 = 0; i0 < n; i0 += block) {
        size_t ni = std::min(block, n - i0);
        for (size_t j0 = i0; j0 < n; j0 += block) {
            size_t nj = std::min(block, n - j0);
            g.noalias() = cols.middleCols((Eigen::Index)i0, (Eigen::Index)ni).adjoint() *
                          cols.middleCols((Eigen::Index)j0, (Eigen::Index)nj);
            double weight = i0 == j0 ? 1.0 : 2.0;
            // Terms are nonnegative, so a plain sum down each column is accurate;
            // columns are combined with compensation.
            for (size_t j = 0; j < nj; j++) {
                double pj = p[j0 + j];
                double inv_pj = inv_p[j0 + j];
                std::fill(column.begin(), column.end(), 0.0);
                const std::complex<double> *gj = g.col((Eigen::Index)j).data();
                for (size_t i = 0; i < ni; i++) {
                    double overlap = std::norm(gj[i]);
                    double r = overlap * inv_p[i0 + i] * inv_pj;
                    double term = p[i0 + i] * pj;
                    for (size_t k = 0; k < k_max; k++) {
                        term *= r;
                        column[k] += term;
                    }
                }
                for (size_t k = 0; k < k_max; k++) {
                    sums[k].add(weight * column[k]);
                }
            }
        }
    }

    std::vector<FrameResult> results;
    for (auto k : ks) {
        FrameResult f;
        f.k = k;
        f.value = sums[k - 1].value();
        f.log_value = std::log(f.value);
        f.excluded_mass = excluded;
        f.q = proj.q;
        f.L_A = proj.L_A;
        f.L_B = proj.L_B;
        results.push_back(f);
    }
    return results;
}

FrameResult frame_potential(const ProjectedStates &proj, size_t k, const FrameOptions &options) {
    size_t ks[] = {k};
    return frame_potentials(proj, ks, options).front();
}

double replicated_frame_potential(const ProjectedStates &proj, size_t k, size_t n) {
    if (k < 1) {
        throw std::invalid_argument("replicated_frame_potential: k must be at least 1");
    }
    Eigen::MatrixXcd g = gram_matrix(proj);
    CompensatedSum total;
    for (Eigen::Index j = 0; j < g.cols(); j++) {
        double pj = std::pow(proj.born[j], (double)n);
        for (Eigen::Index i = 0; i < g.rows(); i++) {
            total.add(std::pow(proj.born[i], (double)n) * pj * std::pow(std::norm(g(i, j)), (double)k));
        }
    }
    return total.value();
}

double delta_squared(const FrameResult &f) {
    double n_a = std::pow((double)f.q, (double)f.L_A);
    double d = std::exp(f.log_value - log_haar_frame_potential(n_a, f.k)) - 1;
    if (d < 0 && d > -1e-12) {
        return 0;
    }
    return d;
}

MeanEstimate purity_moment(std::span<const double> purities, size_t k) {
    if (k < 1) {
        throw std::invalid_argument("purity_moment: k must be at least 1");
    }
    std::vector<double> powers(purities.size());
    for (size_t i = 0; i < purities.size(); i++) {
        powers[i] = std::pow(purities[i], (double)k);
    }
    return estimate_mean(powers);
}

}  // namespace pesim
