#include "pesim/statmech.h"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "pesim/errors.h"

namespace pesim {

WeingartenTable::WeingartenTable(size_t m, double d) : m_(m), d_(d), condition_(0) {
    if (m < 1 || m > kMaxWeingartenDegree) {
        throw std::invalid_argument("weingarten_table: m must be in [1, 6]");
    }
    perms_ = all_permutations(m);
    size_t s = perms_.size();
    std::vector<Permutation> inverses;
    for (const auto &p : perms_) {
        inverses.push_back(p.inverse());
    }
    gram_.resize((Eigen::Index)s, (Eigen::Index)s);
    for (size_t i = 0; i < s; i++) {
        for (size_t j = 0; j < s; j++) {
            gram_((Eigen::Index)i, (Eigen::Index)j) = std::pow(d, (double)cycle_count(compose(perms_[i], inverses[j])));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_);
    const auto &ev = eig.eigenvalues();
    double lo = ev.cwiseAbs().minCoeff();
    double hi = ev.cwiseAbs().maxCoeff();
    condition_ = lo > 0 ? hi / lo : INFINITY;
    if (d < (double)m) {
        std::stringstream ss;
        ss << "weingarten_table: Gram matrix for m=" << m << ", d=" << d
           << " is singular or indefinite (need d >= m); condition number " << condition_;
        throw std::invalid_argument(ss.str());
    }
    matrix_ = eig.eigenvectors() * ev.cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();

    // perms_[0] is the identity, so column 0 holds Wg(perm_i).
    for (size_t i = 0; i < s; i++) {
        by_class_[perms_[i].cycle_type()] = matrix_((Eigen::Index)i, 0);
    }
}

double WeingartenTable::value(const Permutation &sigma) const {
    if (sigma.degree() != m_) {
        throw std::invalid_argument("WeingartenTable::value: degree mismatch");
    }
    return by_class_.at(sigma.cycle_type());
}

double WeingartenTable::defining_relation_residual() const {
    Eigen::MatrixXd product = matrix_ * gram_;
    product -= Eigen::MatrixXd::Identity(product.rows(), product.cols());
    return product.cwiseAbs().maxCoeff();
}

WeingartenTable weingarten_table(size_t m, double d) {
    return WeingartenTable(m, d);
}

GateSuperoperator::GateSuperoperator(size_t m, size_t q)
    : m_(m), q_(q), perms_(all_permutations(m)), wg_(m, (double)(q * q)) {
    size_t s = perms_.size();
    overlap_.resize((Eigen::Index)s, (Eigen::Index)(s + 1));
    for (size_t tau = 0; tau < s; tau++) {
        for (size_t x = 0; x < s; x++) {
            overlap_((Eigen::Index)tau, (Eigen::Index)x) =
                std::pow((double)q, (double)cycle_count(compose(perms_[tau], perms_[x].inverse())));
        }
        overlap_((Eigen::Index)tau, (Eigen::Index)s) = 1;
    }
    cache_.resize((s + 1) * (s + 1));
}

const std::vector<double> &GateSuperoperator::apply(size_t x, size_t y) const {
    size_t s = perms_.size();
    auto &entry = cache_[x * (s + 1) + y];
    if (entry.empty()) {
        Eigen::VectorXd v = overlap_.col((Eigen::Index)x).cwiseProduct(overlap_.col((Eigen::Index)y));
        Eigen::VectorXd c = wg_.matrix() * v;
        entry.assign(c.data(), c.data() + c.size());
    }
    return entry;
}

Eigen::MatrixXd GateSuperoperator::dense_matrix() const {
    if (m_ > 4) {
        throw std::invalid_argument("GateSuperoperator::dense_matrix: only for m <= 4");
    }
    size_t s = perms_.size();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero((Eigen::Index)(s * s), (Eigen::Index)(s * s));
    for (size_t x = 0; x < s; x++) {
        for (size_t y = 0; y < s; y++) {
            const auto &c = apply(x, y);
            for (size_t sigma = 0; sigma < s; sigma++) {
                out((Eigen::Index)(sigma * s + sigma), (Eigen::Index)(x * s + y)) = c[sigma];
            }
        }
    }
    return out;
}

namespace {

// Dense amplitude over label configurations; site 0 is the most significant digit.
double contract(
    const GateSuperoperator &op,
    const Geometry &geometry,
    size_t t,
    const std::function<double(size_t site, size_t label)> &top,
    size_t budget) {
    geometry.validate();
    size_t L = geometry.L();
    size_t base = op.num_perms() + 1;
    size_t dim = 1;
    for (size_t i = 0; i < L; i++) {
        if (dim > budget / base) {
            std::stringstream ss;
            ss << "transfer-matrix contraction needs (m!+1)^L = " << base << "^" << L
               << " configurations; budget is " << budget;
            throw BudgetExceeded(ss.str());
        }
        dim *= base;
    }
    std::vector<size_t> stride(L);
    for (size_t site = L, s = 1; site-- > 0; s *= base) {
        stride[site] = s;
    }

    std::vector<double> state(dim, 0.0);
    std::vector<double> next(dim, 0.0);
    size_t zero = op.zero_label();
    size_t all_zero = 0;
    for (size_t site = 0; site < L; site++) {
        all_zero += zero * stride[site];
    }
    state[all_zero] = 1;

    const std::vector<GatePlacement> layers[2] = {brick_layer(geometry, 0), brick_layer(geometry, 1)};
    for (size_t step = 0; step < t; step++) {
        for (int parity = 0; parity < 2; parity++) {
            for (const auto &g : layers[parity]) {
                size_t j1 = g.site;
                size_t j2 = g.wrap ? 0 : g.site + 1;
                std::fill(next.begin(), next.end(), 0.0);
                for (size_t c = 0; c < dim; c++) {
                    double v = state[c];
                    if (v == 0) {
                        continue;
                    }
                    size_t x = (c / stride[j1]) % base;
                    size_t y = (c / stride[j2]) % base;
                    size_t rest = c - x * stride[j1] - y * stride[j2];
                    const auto &coef = op.apply(x, y);
                    for (size_t sigma = 0; sigma < coef.size(); sigma++) {
                        next[rest + sigma * (stride[j1] + stride[j2])] += v * coef[sigma];
                    }
                }
                std::swap(state, next);
            }
        }
    }

    std::vector<std::vector<double>> weights(L, std::vector<double>(base));
    for (size_t site = 0; site < L; site++) {
        for (size_t label = 0; label < base; label++) {
            weights[site][label] = top(site, label);
        }
    }
    double total = 0;
    for (size_t c = 0; c < dim; c++) {
        if (state[c] == 0) {
            continue;
        }
        double w = state[c];
        for (size_t site = 0; site < L; site++) {
            w *= weights[site][(c / stride[site]) % base];
        }
        total += w;
    }
    return total;
}

}  // namespace

double contract_frame_potential(
    size_t q, const Geometry &geometry, size_t t, size_t k, size_t n, size_t configuration_budget) {
    ReplicaSplit split(n, k);
    size_t m = split.degree();
    if (m > kMaxWeingartenDegree) {
        throw std::invalid_argument("contract_frame_potential: need 2n + 2k <= 6");
    }
    GateSuperoperator op(m, q);
    auto mu = mu_A(split);
    const auto &perms = op.permutations();
    std::vector<double> a_weight(perms.size() + 1, 1.0);
    std::vector<double> b_weight(perms.size() + 1, 1.0);
    for (size_t i = 0; i < perms.size(); i++) {
        a_weight[i] = std::pow((double)q, (double)cycle_count(compose(mu, perms[i].inverse())));
        b_weight[i] = (double)b_boundary_overlap(perms[i], split, q);
    }
    return contract(
        op,
        geometry,
        t,
        [&](size_t site, size_t label) {
            return geometry.in_a(site) ? a_weight[label] : b_weight[label];
        },
        configuration_budget);
}

double contract_purity_moment(size_t q, const Geometry &geometry, size_t t, size_t k, size_t configuration_budget) {
    if (k < 1) {
        throw std::invalid_argument("contract_purity_moment: k must be at least 1");
    }
    size_t m = 2 * k;
    if (m > kMaxWeingartenDegree) {
        throw std::invalid_argument("contract_purity_moment: need 2k <= 6");
    }
    GateSuperoperator op(m, q);
    auto pairing = Permutation::identity(m);
    for (size_t i = 0; i < k; i++) {
        pairing = compose(pairing, Permutation::transposition(m, 2 * i, 2 * i + 1));
    }
    auto identity = Permutation::identity(m);
    const auto &perms = op.permutations();
    std::vector<double> a_weight(perms.size() + 1, 1.0);
    std::vector<double> b_weight(perms.size() + 1, 1.0);
    for (size_t i = 0; i < perms.size(); i++) {
        a_weight[i] = std::pow((double)q, (double)cycle_count(compose(pairing, perms[i].inverse())));
        b_weight[i] = std::pow((double)q, (double)cycle_count(compose(identity, perms[i].inverse())));
    }
    return contract(
        op,
        geometry,
        t,
        [&](size_t site, size_t label) {
            return geometry.in_a(site) ? a_weight[label] : b_weight[label];
        },
        configuration_budget);
}

}  // namespace pesim
