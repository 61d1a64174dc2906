#include "pesim/permutation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pesim {

namespace {

void check_same_degree(const Permutation &a, const Permutation &b, const char *op) {
    if (a.degree() != b.degree()) {
        std::stringstream ss;
        ss << op << ": degree mismatch (" << a.degree() << " vs " << b.degree() << ")";
        throw std::invalid_argument(ss.str());
    }
}

}  // namespace

Permutation::Permutation(std::vector<uint32_t> images) : images_(std::move(images)) {
    if (images_.empty()) {
        throw std::invalid_argument("Permutation: degree must be at least 1");
    }
    std::vector<bool> seen(images_.size(), false);
    for (auto v : images_) {
        if (v >= images_.size() || seen[v]) {
            throw std::invalid_argument("Permutation: images are not a bijection on {0..m-1}");
        }
        seen[v] = true;
    }
}

Permutation Permutation::identity(size_t m) {
    std::vector<uint32_t> images(m);
    std::iota(images.begin(), images.end(), 0);
    return Permutation(std::move(images));
}

Permutation Permutation::inversion(size_t half) {
    std::vector<uint32_t> images(2 * half);
    for (size_t i = 0; i < images.size(); i++) {
        images[i] = (uint32_t)(images.size() - 1 - i);
    }
    return Permutation(std::move(images));
}

Permutation Permutation::translation(size_t m) {
    std::vector<uint32_t> images(m);
    for (size_t i = 0; i < m; i++) {
        images[i] = (uint32_t)((i + m - 1) % m);
    }
    return Permutation(std::move(images));
}

Permutation Permutation::transposition(size_t m, size_t a, size_t b) {
    if (a >= m || b >= m) {
        throw std::invalid_argument("Permutation::transposition: index out of range");
    }
    auto p = identity(m);
    std::swap(p.images_[a], p.images_[b]);
    return p;
}

Permutation Permutation::inverse() const {
    std::vector<uint32_t> inv(images_.size());
    for (size_t i = 0; i < images_.size(); i++) {
        inv[images_[i]] = (uint32_t)i;
    }
    return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
    for (size_t i = 0; i < images_.size(); i++) {
        if (images_[i] != i) {
            return false;
        }
    }
    return true;
}

std::vector<std::vector<uint32_t>> Permutation::cycles() const {
    std::vector<std::vector<uint32_t>> result;
    std::vector<bool> seen(images_.size(), false);
    for (uint32_t start = 0; start < images_.size(); start++) {
        if (seen[start]) {
            continue;
        }
        auto &cycle = result.emplace_back();
        for (uint32_t i = start; !seen[i]; i = images_[i]) {
            seen[i] = true;
            cycle.push_back(i);
        }
    }
    return result;
}

std::vector<uint32_t> Permutation::cycle_type() const {
    std::vector<uint32_t> lengths;
    for (const auto &c : cycles()) {
        lengths.push_back((uint32_t)c.size());
    }
    std::sort(lengths.rbegin(), lengths.rend());
    return lengths;
}

std::string Permutation::str() const {
    std::stringstream ss;
    ss << "[";
    for (size_t i = 0; i < images_.size(); i++) {
        if (i) {
            ss << ",";
        }
        ss << images_[i];
    }
    ss << "]";
    return ss.str();
}

std::string Permutation::cycle_str() const {
    std::stringstream ss;
    for (const auto &c : cycles()) {
        ss << "(";
        for (size_t i = 0; i < c.size(); i++) {
            if (i) {
                ss << " ";
            }
            ss << c[i];
        }
        ss << ")";
    }
    return ss.str();
}

ReplicaSplit::ReplicaSplit(size_t n, size_t k) : n(n), k(k) {
    if (k < 1) {
        throw std::invalid_argument("ReplicaSplit: k must be at least 1");
    }
}

Permutation compose(const Permutation &a, const Permutation &b) {
    check_same_degree(a, b, "compose");
    std::vector<uint32_t> images(a.degree());
    for (size_t i = 0; i < images.size(); i++) {
        images[i] = a(b(i));
    }
    return Permutation(std::move(images));
}

size_t cycle_count(const Permutation &s) {
    size_t count = 0;
    std::vector<bool> seen(s.degree(), false);
    for (size_t start = 0; start < s.degree(); start++) {
        if (seen[start]) {
            continue;
        }
        count++;
        for (size_t i = start; !seen[i]; i = s(i)) {
            seen[i] = true;
        }
    }
    return count;
}

namespace {

// N_c(a b^{-1}) without allocating the intermediate permutation twice.
size_t relative_cycle_count(const Permutation &a, const Permutation &b) {
    return cycle_count(compose(a, b.inverse()));
}

}  // namespace

size_t transposition_distance(const Permutation &a, const Permutation &b) {
    check_same_degree(a, b, "transposition_distance");
    return a.degree() - relative_cycle_count(a, b);
}

Permutation embed(const Permutation &a, const Permutation &b) {
    std::vector<uint32_t> images(a.degree() + b.degree());
    for (size_t i = 0; i < a.degree(); i++) {
        images[i] = a(i);
    }
    for (size_t i = 0; i < b.degree(); i++) {
        images[a.degree() + i] = (uint32_t)(a.degree() + b(i));
    }
    return Permutation(std::move(images));
}

Permutation embed(std::span<const Permutation> blocks) {
    if (blocks.empty()) {
        throw std::invalid_argument("embed: need at least one block");
    }
    Permutation result = blocks.back();
    for (size_t i = blocks.size() - 1; i-- > 0;) {
        result = embed(blocks[i], result);
    }
    return result;
}

Permutation mu_A(const ReplicaSplit &split) {
    auto middle = Permutation::inversion(split.k);
    if (split.n == 0) {
        return middle;
    }
    auto spectators = Permutation::identity(split.n);
    std::vector<Permutation> blocks{spectators, middle, spectators};
    return embed(blocks);
}

bool is_factorized(const Permutation &s, const ReplicaSplit &split) {
    if (s.degree() != split.degree()) {
        throw std::invalid_argument("is_factorized: permutation degree must equal 2(n+k)");
    }
    for (size_t i = 0; i < split.half(); i++) {
        if (s(i) >= split.half()) {
            return false;
        }
    }
    return true;
}

std::optional<uint64_t> permutation_overlap(const Permutation &a, const Permutation &b, uint64_t q) {
    check_same_degree(a, b, "permutation_overlap");
    if (q < 1) {
        throw std::invalid_argument("permutation_overlap: q must be positive");
    }
    size_t cycles = relative_cycle_count(a, b);
    uint64_t result = 1;
    for (size_t i = 0; i < cycles; i++) {
        if (result > UINT64_MAX / q) {
            return std::nullopt;
        }
        result *= q;
    }
    return result;
}

double log_permutation_overlap(const Permutation &a, const Permutation &b, double q) {
    check_same_degree(a, b, "log_permutation_overlap");
    return (double)relative_cycle_count(a, b) * std::log(q);
}

uint64_t b_boundary_overlap(const Permutation &s, const ReplicaSplit &split, uint64_t q) {
    return is_factorized(s, split) ? q * q : q;
}

Permutation partner_alpha(const Permutation &alpha) {
    size_t k = alpha.degree();
    auto iota = Permutation::inversion(k);
    auto conj = compose(iota, compose(embed(alpha.inverse(), Permutation::identity(k)), iota));
    std::vector<uint32_t> images(k);
    for (size_t i = 0; i < k; i++) {
        if (conj(i) != i) {
            throw std::logic_error("partner_alpha: conjugated block does not fix the first half");
        }
        images[i] = conj(k + i) - (uint32_t)k;
    }
    return Permutation(std::move(images));
}

std::vector<Permutation> all_permutations(size_t m) {
    if (m < 1 || m > kMaxEnumerationDegree) {
        throw std::invalid_argument("all_permutations: degree must be in [1, 8]");
    }
    std::vector<uint32_t> images(m);
    std::iota(images.begin(), images.end(), 0);
    std::vector<Permutation> result;
    do {
        result.emplace_back(images);
    } while (std::next_permutation(images.begin(), images.end()));
    return result;
}

size_t lexicographic_rank(const Permutation &s) {
    // Lehmer code.
    size_t m = s.degree();
    size_t rank = 0;
    for (size_t i = 0; i < m; i++) {
        size_t smaller = 0;
        for (size_t j = i + 1; j < m; j++) {
            if (s(j) < s(i)) {
                smaller++;
            }
        }
        rank = rank * (m - i) + smaller;
    }
    return rank;
}

}  // namespace pesim
