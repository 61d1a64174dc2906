#include "pesim/statevector.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pesim/errors.h"

namespace pesim {

std::string_view to_string(Boundary b) {
    return b == Boundary::Open ? "obc" : "pbc";
}

std::string_view to_string(Placement p) {
    return p == Placement::Edge ? "edge" : "bulk";
}

Boundary parse_boundary(std::string_view text) {
    if (text == "obc" || text == "open") {
        return Boundary::Open;
    }
    if (text == "pbc" || text == "periodic") {
        return Boundary::Periodic;
    }
    throw std::invalid_argument("unknown boundary '" + std::string(text) + "' (expected obc or pbc)");
}

Placement parse_placement(std::string_view text) {
    if (text == "edge") {
        return Placement::Edge;
    }
    if (text == "bulk") {
        return Placement::Bulk;
    }
    throw std::invalid_argument("unknown geometry '" + std::string(text) + "' (expected edge or bulk)");
}

void Geometry::validate() const {
    if (L() < 1) {
        throw std::invalid_argument("Geometry: chain needs at least one site");
    }
    if (boundary == Boundary::Periodic && (L() % 2 != 0 || L() < 2)) {
        throw std::invalid_argument("Geometry: periodic boundaries need an even number of sites");
    }
}

size_t checked_hilbert_dimension(size_t L, size_t q, size_t amplitude_budget) {
    if (q < 2) {
        throw std::invalid_argument("local dimension q must be at least 2");
    }
    if (L < 1) {
        throw std::invalid_argument("chain length L must be at least 1");
    }
    size_t dim = 1;
    for (size_t i = 0; i < L; i++) {
        if (dim > amplitude_budget / q) {
            std::stringstream ss;
            ss << "state of " << L << " sites with q=" << q << " needs q^L amplitudes ("
               << std::pow((double)q, (double)L) * sizeof(cdouble) / (1024.0 * 1024.0)
               << " MiB); budget is " << amplitude_budget << " amplitudes ("
               << (double)amplitude_budget * sizeof(cdouble) / (1024.0 * 1024.0) << " MiB)";
            throw BudgetExceeded(ss.str());
        }
        dim *= q;
    }
    return dim;
}

Statevector::Statevector(size_t L, size_t q, size_t amplitude_budget)
    : L_(L), q_(q), strides_(L), amps_(checked_hilbert_dimension(L, q, amplitude_budget)) {
    size_t s = 1;
    for (size_t site = L; site-- > 0;) {
        strides_[site] = s;
        s *= q;
    }
}

double Statevector::norm_squared() const {
    double total = 0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

Statevector product_state(size_t L, size_t q, size_t amplitude_budget) {
    Statevector state(L, q, amplitude_budget);
    state.amplitudes()[0] = 1;
    return state;
}

GateMatrix sample_haar_unitary(size_t d, Rng &rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    GateMatrix z(d, d);
    for (size_t c = 0; c < d; c++) {
        for (size_t r = 0; r < d; r++) {
            double re = normal(rng);
            double im = normal(rng);
            z(r, c) = cdouble(re, im);
        }
    }
    Eigen::HouseholderQR<GateMatrix> qr(z);
    GateMatrix q = qr.householderQ();
    for (size_t c = 0; c < d; c++) {
        cdouble r = qr.matrixQR()(c, c);
        double mag = std::abs(r);
        q.col(c) *= mag > 0 ? r / mag : cdouble(1);
    }
    return q;
}

GateMatrix sample_haar_gate(size_t q, Rng &rng) {
    if (q < 2) {
        throw std::invalid_argument("sample_haar_gate: q must be at least 2");
    }
    return sample_haar_unitary(q * q, rng);
}

double unitarity_defect(const GateMatrix &u) {
    GateMatrix d = u.adjoint() * u - GateMatrix::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

void apply_two_site_gate(Statevector &state, const GateMatrix &gate, size_t j, bool wrap) {
    size_t L = state.L();
    size_t q = state.q();
    if (j >= L) {
        throw std::invalid_argument("apply_two_site_gate: site index out of range");
    }
    size_t j2;
    if (wrap) {
        if (j != L - 1 || L < 2) {
            throw std::invalid_argument("apply_two_site_gate: wrap is only valid for the (L-1, 0) pair");
        }
        j2 = 0;
    } else {
        if (j + 1 >= L) {
            throw std::invalid_argument("apply_two_site_gate: pair (j, j+1) leaves the chain; wrap not requested");
        }
        j2 = j + 1;
    }
    size_t d = q * q;
    if ((size_t)gate.rows() != d || (size_t)gate.cols() != d) {
        throw std::invalid_argument("apply_two_site_gate: gate must be q^2 x q^2");
    }

    size_t s1 = state.stride(j);
    size_t s2 = state.stride(j2);
    size_t hi = std::max(s1, s2);
    size_t lo = std::min(s1, s2);
    std::vector<size_t> offsets(d);
    for (size_t d1 = 0; d1 < q; d1++) {
        for (size_t d2 = 0; d2 < q; d2++) {
            offsets[d1 * q + d2] = d1 * s1 + d2 * s2;
        }
    }

    auto &amps = state.amplitudes();
    size_t n_outer = amps.size() / (hi * q);
    size_t n_mid = hi / (lo * q);
    std::vector<cdouble> in(d);
    for (size_t outer = 0; outer < n_outer; outer++) {
        for (size_t mid = 0; mid < n_mid; mid++) {
            size_t block = outer * hi * q + mid * lo * q;
            for (size_t inner = 0; inner < lo; inner++) {
                size_t base = block + inner;
                for (size_t r = 0; r < d; r++) {
                    in[r] = amps[base + offsets[r]];
                }
                for (size_t r = 0; r < d; r++) {
                    cdouble acc = 0;
                    for (size_t c = 0; c < d; c++) {
                        acc += gate(r, c) * in[c];
                    }
                    amps[base + offsets[r]] = acc;
                }
            }
        }
    }
}

std::vector<GatePlacement> brick_layer(const Geometry &geometry, int parity) {
    geometry.validate();
    size_t L = geometry.L();
    std::vector<GatePlacement> result;
    for (size_t j = (size_t)parity; j + 1 < L; j += 2) {
        result.push_back({j, false});
    }
    if (parity == 1 && geometry.boundary == Boundary::Periodic) {
        result.push_back({L - 1, true});
    }
    return result;
}

void evolve_brick_wall(
    Statevector &state,
    size_t t,
    const Geometry &geometry,
    uint64_t realization_seed,
    uint64_t start_step,
    std::vector<GateRecord> *log) {
    if (geometry.L() != state.L()) {
        throw std::invalid_argument("evolve_brick_wall: geometry does not match the state size");
    }
    const std::vector<GatePlacement> layers[2] = {brick_layer(geometry, 0), brick_layer(geometry, 1)};
    for (uint64_t step = start_step + 1; step <= start_step + t; step++) {
        for (int parity = 0; parity < 2; parity++) {
            for (const auto &g : layers[parity]) {
                uint64_t seed = gate_seed(realization_seed, step, (uint64_t)parity, g.site);
                Rng rng(seed);
                auto u = sample_haar_gate(state.q(), rng);
                apply_two_site_gate(state, u, g.site, g.wrap);
                if (log != nullptr) {
                    log->push_back({step, parity, g.site, seed});
                }
            }
        }
    }
}

Eigen::MatrixXcd bipartition_matrix(const Statevector &state, const Geometry &geometry) {
    if (geometry.L() != state.L()) {
        throw std::invalid_argument("bipartition_matrix: geometry does not match the state size");
    }
    size_t q = state.q();
    auto pow_q = [q](size_t e) {
        size_t r = 1;
        for (size_t i = 0; i < e; i++) {
            r *= q;
        }
        return r;
    };
    size_t n_a = pow_q(geometry.L_A);
    size_t n_right = pow_q(geometry.b_right());
    size_t n_left = pow_q(geometry.b_left());
    size_t n_b = n_left * n_right;
    Eigen::MatrixXcd m(n_a, n_b);
    const auto &amps = state.amplitudes();
    for (size_t bl = 0; bl < n_left; bl++) {
        for (size_t a = 0; a < n_a; a++) {
            size_t base = (bl * n_a + a) * n_right;
            for (size_t br = 0; br < n_right; br++) {
                m(a, bl * n_right + br) = amps[base + br];
            }
        }
    }
    return m;
}

double reduced_purity(const Statevector &state, const Geometry &geometry) {
    auto m = bipartition_matrix(state, geometry);
    if (m.rows() <= m.cols()) {
        Eigen::MatrixXcd rho = m * m.adjoint();
        return rho.squaredNorm();
    }
    Eigen::MatrixXcd rho = m.adjoint() * m;
    return rho.squaredNorm();
}

namespace {

constexpr char kDumpMagic[4] = {'P', 'E', 'S', 'V'};
constexpr uint32_t kDumpVersion = 1;

static_assert(std::endian::native == std::endian::little, "statevector dumps assume a little-endian host");

template <typename T>
void put(std::ostream &out, T value) {
    out.write(reinterpret_cast<const char *>(&value), sizeof(T));
}

template <typename T>
T get(std::istream &in) {
    T value;
    if (!in.read(reinterpret_cast<char *>(&value), sizeof(T))) {
        throw DataError("statevector dump truncated");
    }
    return value;
}

}  // namespace

void write_statevector(const std::string &path, const Statevector &state, uint64_t seed) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out.write(kDumpMagic, 4);
    put<uint32_t>(out, kDumpVersion);
    put<uint32_t>(out, (uint32_t)state.q());
    put<uint32_t>(out, (uint32_t)state.L());
    put<uint64_t>(out, seed);
    for (const auto &a : state.amplitudes()) {
        put<double>(out, a.real());
        put<double>(out, a.imag());
    }
}

std::pair<Statevector, uint64_t> read_statevector(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kDumpMagic, 4) != 0) {
        throw DataError(path + ": not a statevector dump");
    }
    auto version = get<uint32_t>(in);
    if (version != kDumpVersion) {
        throw DataError(path + ": unsupported dump version " + std::to_string(version));
    }
    auto q = get<uint32_t>(in);
    auto L = get<uint32_t>(in);
    auto seed = get<uint64_t>(in);
    Statevector state(L, q);
    for (auto &a : state.amplitudes()) {
        double re = get<double>(in);
        double im = get<double>(in);
        a = cdouble(re, im);
    }
    return {std::move(state), seed};
}

}  // namespace pesim
