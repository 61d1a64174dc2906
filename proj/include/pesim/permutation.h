#ifndef PESIM_PERMUTATION_H
#define PESIM_PERMUTATION_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pesim {

/// An element of the symmetric group S_m stored in one-line notation:
/// `images()[i]` is the image of `i`. Indices are 0-based.
class Permutation {
   public:
    explicit Permutation(std::vector<uint32_t> images);

    static Permutation identity(size_t m);
    /// Reverses the order of the 2m replicas: i -> 2m - 1 - i.
    static Permutation inversion(size_t half);
    /// Cyclic shift i -> i - 1 (mod m), so 0 -> m - 1.
    static Permutation translation(size_t m);
    static Permutation transposition(size_t m, size_t a, size_t b);

    size_t degree() const {
        return images_.size();
    }
    uint32_t operator()(size_t i) const {
        return images_[i];
    }
    std::span<const uint32_t> images() const {
        return images_;
    }

    Permutation inverse() const;
    bool is_identity() const;

    /// Cycle lengths sorted in decreasing order (the conjugacy class label).
    std::vector<uint32_t> cycle_type() const;
    /// Cycles in canonical order, each starting from its smallest element.
    std::vector<std::vector<uint32_t>> cycles() const;
    std::string str() const;
    std::string cycle_str() const;

    bool operator==(const Permutation &other) const = default;
    auto operator<=>(const Permutation &other) const = default;

   private:
    std::vector<uint32_t> images_;
};

/// Number of spectator replicas per side (n) and of overlap replicas (k).
struct ReplicaSplit {
    size_t n;
    size_t k;

    ReplicaSplit(size_t n, size_t k);
    size_t half() const {
        return n + k;
    }
    size_t degree() const {
        return 2 * (n + k);
    }
};

/// result(i) = a(b(i)).
Permutation compose(const Permutation &a, const Permutation &b);
size_t cycle_count(const Permutation &s);
/// m - N_c(a b^{-1}); the minimal number of transpositions turning b into a.
size_t transposition_distance(const Permutation &a, const Permutation &b);
/// Block-diagonal pair (a, b) acting on m_a + m_b points.
Permutation embed(const Permutation &a, const Permutation &b);
Permutation embed(std::span<const Permutation> blocks);

/// Top boundary permutation of region A: (1_n, inversion_{2k}, 1_n).
Permutation mu_A(const ReplicaSplit &split);
/// True iff s maps the first n+k replicas onto themselves.
bool is_factorized(const Permutation &s, const ReplicaSplit &split);

/// q^{N_c(a b^{-1})} as an exact integer; nullopt on 64-bit overflow.
std::optional<uint64_t> permutation_overlap(const Permutation &a, const Permutation &b, uint64_t q);
double log_permutation_overlap(const Permutation &a, const Permutation &b, double q);
/// Overlap of a permutation state with the measured-region boundary state: q^2 if factorized, else q.
uint64_t b_boundary_overlap(const Permutation &s, const ReplicaSplit &split, uint64_t q);

/// The partner alpha' with (1_k, alpha') = inversion_{2k} (alpha^{-1}, 1_k) inversion_{2k}.
Permutation partner_alpha(const Permutation &alpha);

/// All m! permutations of degree m in lexicographic order of their images. m <= 8.
std::vector<Permutation> all_permutations(size_t m);
/// Index of a permutation in the lexicographic order used by all_permutations.
size_t lexicographic_rank(const Permutation &s);

constexpr size_t kMaxEnumerationDegree = 8;

}  // namespace pesim

#endif
