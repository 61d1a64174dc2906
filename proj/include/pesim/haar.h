#ifndef PESIM_HAAR_H
#define PESIM_HAAR_H

#include <cstdint>
#include <vector>

#include "pesim/statevector.h"

namespace pesim {

/// x (x+1) ... (x+m-1); the empty product is 1.
double ascending_factorial(double x, size_t m);
double log_ascending_factorial(double x, size_t m);

/// k! exactly for k <= 20 (as a double), via lgamma beyond.
double factorial(size_t k);
double log_factorial(size_t k);

/// Frame potential of the Haar ensemble on an N-dimensional space:
/// k! / (N (N+1) ... (N+k-1)) = 1 / binomial(N+k-1, k).
double haar_frame_potential(double N, size_t k);
double log_haar_frame_potential(double N, size_t k);

struct HaarParams {
    size_t q;
    size_t L_A;
    size_t L_B;
    size_t k;
    size_t n = 0;
};

/// Exact projected-ensemble frame potential F^(k) of a Haar-random global state
/// with finite L_B (the replica limit n -> 1-k already taken).
double haar_state_projected_fp(const HaarParams &p);
/// Integer-n replicated quantity F^(n,k) for the same Haar global state.
double haar_state_projected_fp_pre_limit(const HaarParams &p);

/// Standard complex Gaussian vector normalized to unit length.
std::vector<cdouble> sample_haar_state(size_t dim, Rng &rng);

}  // namespace pesim

#endif
