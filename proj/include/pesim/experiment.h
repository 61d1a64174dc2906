#ifndef PESIM_EXPERIMENT_H
#define PESIM_EXPERIMENT_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pesim/statevector.h"

namespace pesim {

inline constexpr int kCsvSchemaVersion = 1;
inline constexpr std::string_view kCsvHeader =
    "schema_version,q,L_A,L_B,geometry,boundary,t,k,observable,mean,sem,n_realizations,excluded_mass_max,master_seed";

/// Observable names written to the `observable` column by simulations.
namespace observable {
inline constexpr std::string_view kFrame = "F_k";
/// Squared distance computed from the realization-averaged F^(k).
inline constexpr std::string_view kDelta2 = "delta2";
/// Mean over realizations of the per-realization squared distance.
inline constexpr std::string_view kDelta2PerRealization = "delta2_per_realization_mean";
inline constexpr std::string_view kPurityMoment = "purity_moment";
}  // namespace observable

struct ExperimentConfig {
    size_t q = 2;
    size_t L_A = 1;
    std::vector<size_t> L_B;
    size_t t_max = 0;
    std::vector<size_t> k_list{1};
    size_t realizations = 2;
    uint64_t master_seed = 0;
    Placement geometry = Placement::Edge;
    Boundary boundary = Boundary::Open;
    std::string output;
    bool resume = false;
    size_t workers = 1;
    size_t amplitude_budget = kDefaultAmplitudeBudget;

    /// Throws std::invalid_argument or BudgetExceeded before any simulation starts.
    void validate() const;
    /// Flat `key = value` text; lists are comma separated.
    std::string to_text() const;
    /// Text of the fields that determine results (no output path, worker count or resume flag).
    std::string fingerprint() const;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string &path);

struct ResultRecord {
    int schema_version = kCsvSchemaVersion;
    size_t q = 0;
    size_t L_A = 0;
    size_t L_B = 0;
    Placement geometry = Placement::Edge;
    Boundary boundary = Boundary::Open;
    double t = 0;
    size_t k = 0;
    std::string observable;
    double mean = 0;
    /// Empty for closed-form rows.
    std::optional<double> sem;
    size_t n_realizations = 0;
    double excluded_mass_max = 0;
    uint64_t master_seed = 0;
};

std::string format_record(const ResultRecord &r);
ResultRecord parse_record(std::string_view line);
/// Reads a results CSV, refusing files whose header or rows do not match the schema.
std::vector<ResultRecord> read_records(const std::string &path);

/// Per-realization frame potentials at one (L_B, t) grid point.
struct GridPoint {
    size_t L_B = 0;
    size_t t = 0;
    /// frame[i][r]: F^(ks[i]) of realization r.
    std::vector<std::vector<double>> frame;
    std::vector<double> excluded_mass;
};

struct SweepData {
    /// Sorted distinct moments held in GridPoint::frame; always contains 1.
    std::vector<size_t> ks;
    std::vector<GridPoint> points;

    const GridPoint *find(size_t L_B, size_t t) const;
    const std::vector<double> &frame(const GridPoint &p, size_t k) const;
};

struct SweepResult {
    std::vector<ResultRecord> records;
    SweepData data;
};

/// Simulates every (L_B, t) grid point of the config with `realizations` independent
/// circuits and aggregates F^(k), both squared-distance conventions and purity moments.
///
/// With a non-empty output path, completed realizations are appended to
/// `<output>.realizations.csv` as they finish and aggregate rows to `<output>` per
/// completed L_B; `<output>.manifest` echoes the config. With `resume`, existing
/// realizations are reused and only missing work is simulated.
SweepResult run_sweep(const ExperimentConfig &config);

/// Aggregates one grid point into result records.
std::vector<ResultRecord> aggregate(const ExperimentConfig &config, const SweepData &data, const GridPoint &point);

struct DesignTimeEstimate {
    double t = 0;
    bool censored = false;
    double ci_low = 0;
    double ci_high = 0;
    double censored_fraction = 0;
};

/// First crossing of delta2 below epsilon^2, interpolated linearly in (t, ln delta2).
/// Uses `delta2` records of moment k at the given L_B. Censored (t = +inf) without a crossing.
DesignTimeEstimate estimate_design_time(
    const std::vector<ResultRecord> &records, size_t L_B, size_t k, double epsilon);

/// Same point estimate from per-realization data, plus a percentile bootstrap
/// interval over realizations.
DesignTimeEstimate estimate_design_time(
    const SweepData &data,
    size_t q,
    size_t L_A,
    size_t L_B,
    size_t k,
    double epsilon,
    size_t bootstrap_samples = 1000,
    uint64_t bootstrap_seed = 0);

/// Crossing of a (t, delta2) curve sampled at increasing t; nullopt if it never drops below the threshold.
std::optional<double> first_crossing(const std::vector<double> &t, const std::vector<double> &delta2, double threshold);

/// Markov bound on Prob(F^(k)_U - F_H^(k) > epsilon): (mean F^(k) - F_H^(k)) / epsilon.
double markov_tail_bound(double mean_frame, double haar_frame, double epsilon);
double markov_tail_bound(const std::vector<ResultRecord> &records, size_t L_B, size_t t, size_t k, double epsilon);

}  // namespace pesim

#endif
