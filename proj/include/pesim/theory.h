#ifndef PESIM_THEORY_H
#define PESIM_THEORY_H

#include <cstddef>
#include <optional>

#include "pesim/statevector.h"

namespace pesim::theory {

/// Closed-form predictions for brick-wall circuits with q-dimensional sites.
/// Time t counts double layers and is real-valued so crossings can be solved for.
///
/// All rate-dependent predictors take the purity speed from purity_speed(q)
/// unless `v2_override` is supplied (e.g. a dressed value, or 2 for q -> infinity).

/// Equilibrium entropy density ln q.
double s_eq(double q);

/// 2 ln((q^2+1)/(2q)) / ln q.
double purity_speed(double q);

/// Pre-saturation circuit-averaged purity (2q/(1+q^2))^{2t}.
double mean_purity(double q, double t);

/// Leading large-q frame potential: k! 4^{kt} q^{-2kt} for t <= L_A/2, else k! q^{-k L_A}.
double large_q_frame_potential(double q, double L_A, double t, size_t k);

/// Size of the jump of large_q_frame_potential at t = L_A/2 (ratio of the two branches).
double large_q_branch_mismatch(double q, double L_A, size_t k);

/// Large-q replicated frame potential with n spectators:
/// k! q^{-2(n+k-1)L_B} times the two-branch purity moment. `n` may be the formal value 1-k.
double large_q_fp_with_spectators(double q, double L_A, double L_B, double t, size_t k, double n);

/// k! exp(-k v2 s_eq t) before t = L_A / v2, the Haar value k!/N_k(q^{L_A}) after.
double membrane_frame_potential(double q, double L_A, double t, size_t k, std::optional<double> v2_override = {});

/// Two-path rounded purity: e^{-s_eq L_A} + e^{-v2 s_eq t}.
double rounded_fp1(double q, double L_A, double t, std::optional<double> v2_override = {});

/// Non-interacting squared distance: (1 + exp[(L_A - v2 t) s_eq])^k - 1.
double delta2_nonint(double q, double L_A, double t, size_t k, std::optional<double> v2_override = {});

/// L_A/v2 + 2 ln(1/eps)/(v2 s_eq) + ln(k)/(v2 s_eq).
double design_time(double q, double L_A, size_t k, double epsilon, std::optional<double> v2_override = {});

/// Bulk region at q -> infinity: (k!)^2 e^{-2 v2 k t} under obc, k! e^{-2 v2 k t} under pbc.
/// `use_infinite_q_speed` sets v2 = 2.
double bulk_fp_large_q(
    double q, double t, size_t k, Boundary boundary, bool use_infinite_q_speed = false,
    std::optional<double> v2_override = {});

/// e^{v2 s_eq t} / [(n+k)(n+k-1)]. Returns +infinity when n + k = 1 (formal
/// replica limit); throws if n + k < 1 with n, k integer-valued such that no
/// elementary domain wall exists.
double correlation_length(double q, double t, double n, size_t k, std::optional<double> v2_override = {});

/// Fitted slope corrections v^(k) = k v2 - dv^(k) quoted for q = 2, L_A = 6.
/// Reference constants only; never used as predictions.
inline constexpr double kReferenceSlopeCorrectionK2 = 0.7;
inline constexpr double kReferenceSlopeCorrectionK3 = 0.4;

}  // namespace pesim::theory

#endif
