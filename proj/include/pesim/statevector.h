#ifndef PESIM_STATEVECTOR_H
#define PESIM_STATEVECTOR_H

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pesim/seeding.h"

namespace pesim {

using cdouble = std::complex<double>;
using GateMatrix = Eigen::MatrixXcd;

enum class Boundary { Open, Periodic };
enum class Placement { Edge, Bulk };

std::string_view to_string(Boundary b);
std::string_view to_string(Placement p);
Boundary parse_boundary(std::string_view text);
Placement parse_placement(std::string_view text);

/// Chain layout: boundary condition plus where region A sits.
///
/// Edge placement puts A on sites [0, L_A). Bulk placement puts A on
/// [floor(L_B/2), floor(L_B/2) + L_A); an odd leftover B site goes right.
struct Geometry {
    size_t L_A = 0;
    size_t L_B = 0;
    Boundary boundary = Boundary::Open;
    Placement placement = Placement::Edge;

    size_t L() const {
        return L_A + L_B;
    }
    size_t a_begin() const {
        return placement == Placement::Edge ? 0 : L_B / 2;
    }
    size_t b_left() const {
        return a_begin();
    }
    size_t b_right() const {
        return L_B - b_left();
    }
    bool in_a(size_t site) const {
        return site >= a_begin() && site < a_begin() + L_A;
    }
    /// Throws std::invalid_argument if the layout cannot be simulated.
    void validate() const;
};

constexpr size_t kDefaultAmplitudeBudget = size_t{1} << 26;

/// Dense pure state of L q-dits. Site 0 is the most significant base-q digit.
class Statevector {
   public:
    Statevector(size_t L, size_t q, size_t amplitude_budget = kDefaultAmplitudeBudget);

    size_t L() const {
        return L_;
    }
    size_t q() const {
        return q_;
    }
    size_t size() const {
        return amps_.size();
    }
    /// q^{L-1-site}: the index stride of a site's digit.
    size_t stride(size_t site) const {
        return strides_[site];
    }

    std::vector<cdouble> &amplitudes() {
        return amps_;
    }
    const std::vector<cdouble> &amplitudes() const {
        return amps_;
    }
    cdouble operator[](size_t i) const {
        return amps_[i];
    }

    double norm_squared() const;

   private:
    size_t L_;
    size_t q_;
    std::vector<size_t> strides_;
    std::vector<cdouble> amps_;
};

/// q^L, or throws BudgetExceeded with the required memory if above the budget.
size_t checked_hilbert_dimension(size_t L, size_t q, size_t amplitude_budget = kDefaultAmplitudeBudget);

/// |0...0>.
Statevector product_state(size_t L, size_t q, size_t amplitude_budget = kDefaultAmplitudeBudget);

/// Haar-distributed d x d unitary: QR of a complex Ginibre matrix with R's diagonal phases folded into Q.
GateMatrix sample_haar_unitary(size_t d, Rng &rng);
GateMatrix sample_haar_gate(size_t q, Rng &rng);
double unitarity_defect(const GateMatrix &u);

/// Applies `gate` to sites (j, j+1), or to (L-1, 0) when `wrap` is set.
/// The gate's local index is digit(j) * q + digit(j+1).
void apply_two_site_gate(Statevector &state, const GateMatrix &gate, size_t j, bool wrap);

struct GatePlacement {
    size_t site;
    bool wrap;
};

/// Parity 0 is the first layer of a time step: pairs (0,1), (2,3), ...
/// Parity 1 covers (1,2), (3,4), ... and the wrap pair (L-1, 0) under periodic boundaries.
std::vector<GatePlacement> brick_layer(const Geometry &geometry, int parity);

struct GateRecord {
    uint64_t step;
    int parity;
    size_t site;
    uint64_t seed;
};

/// Applies time steps start_step+1 .. start_step+t. Each step is two brick layers.
/// Gate seeds come from gate_seed(realization_seed, step, parity, site), so
/// evolving in pieces reproduces evolving in one call.
void evolve_brick_wall(
    Statevector &state,
    size_t t,
    const Geometry &geometry,
    uint64_t realization_seed,
    uint64_t start_step = 0,
    std::vector<GateRecord> *log = nullptr);

/// Amplitudes reshaped to a q^{L_A} x q^{L_B} matrix. Column b is indexed by the
/// B digits with the left B component more significant than the right one.
Eigen::MatrixXcd bipartition_matrix(const Statevector &state, const Geometry &geometry);

/// Tr_A[(Tr_B rho)^2].
double reduced_purity(const Statevector &state, const Geometry &geometry);

/// Debug dump: "PESV" magic, u32 version, u32 q, u32 L, u64 seed, then
/// little-endian interleaved (re, im) doubles.
void write_statevector(const std::string &path, const Statevector &state, uint64_t seed);
std::pair<Statevector, uint64_t> read_statevector(const std::string &path);

}  // namespace pesim

#endif
