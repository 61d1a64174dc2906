#include "pesim/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pesim/errors.h"
#include "pesim/haar.h"
#include "pesim/projected_ensemble.h"
#include "pesim/stats.h"

#ifndef PESIM_VERSION
#define PESIM_VERSION "unknown"
#endif

namespace pesim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace((unsigned char)s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace((unsigned char)s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
    text = trim(text);
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
    }
    return value;
}

std::vector<size_t> parse_list(std::string_view text, std::string_view what) {
    std::vector<size_t> out;
    for (auto item : split(text, ',')) {
        if (!trim(item).empty()) {
            out.push_back(parse_number<size_t>(item, what));
        }
    }
    if (out.empty()) {
        throw std::invalid_argument(std::string(what) + " list is empty");
    }
    return out;
}

bool parse_bool(std::string_view text) {
    text = trim(text);
    if (text == "1" || text == "true" || text == "yes") {
        return true;
    }
    if (text == "0" || text == "false" || text == "no") {
        return false;
    }
    throw std::invalid_argument("cannot parse boolean from '" + std::string(text) + "'");
}

std::string join(const std::vector<size_t> &values) {
    std::stringstream ss;
    for (size_t i = 0; i < values.size(); i++) {
        if (i) {
            ss << ",";
        }
        ss << values[i];
    }
    return ss.str();
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

std::vector<size_t> sorted_unique(std::vector<size_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (q < 2) {
        throw std::invalid_argument("config: q must be at least 2");
    }
    if (L_A < 1) {
        throw std::invalid_argument("config: L_A must be at least 1");
    }
    if (L_B.empty()) {
        throw std::invalid_argument("config: L_B list is empty");
    }
    if (k_list.empty() || *std::min_element(k_list.begin(), k_list.end()) < 1) {
        throw std::invalid_argument("config: k values must be at least 1");
    }
    if (realizations < 1) {
        throw std::invalid_argument("config: need at least one realization");
    }
    if (workers < 1) {
        throw std::invalid_argument("config: need at least one worker");
    }
    for (auto lb : L_B) {
        Geometry g{L_A, lb, boundary, geometry};
        g.validate();
    }
    checked_hilbert_dimension(L_A + *std::max_element(L_B.begin(), L_B.end()), q, amplitude_budget);
}

std::string ExperimentConfig::fingerprint() const {
    std::stringstream ss;
    ss << "q = " << q << "\n";
    ss << "L_A = " << L_A << "\n";
    ss << "L_B = " << join(L_B) << "\n";
    ss << "t_max = " << t_max << "\n";
    ss << "k = " << join(k_list) << "\n";
    ss << "realizations = " << realizations << "\n";
    ss << "seed = " << master_seed << "\n";
    ss << "geometry = " << to_string(geometry) << "\n";
    ss << "boundary = " << to_string(boundary) << "\n";
    return ss.str();
}

std::string ExperimentConfig::to_text() const {
    std::stringstream ss;
    ss << fingerprint();
    if (!output.empty()) {
        ss << "output = " << output << "\n";
    }
    ss << "resume = " << (resume ? "true" : "false") << "\n";
    ss << "workers = " << workers << "\n";
    ss << "amplitude_budget = " << amplitude_budget << "\n";
    return ss.str();
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig c;
    size_t line_no = 0;
    for (auto raw : split(text, '\n')) {
        line_no++;
        auto line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
        }
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (key == "q") {
            c.q = parse_number<size_t>(value, "q");
        } else if (key == "L_A") {
            c.L_A = parse_number<size_t>(value, "L_A");
        } else if (key == "L_B") {
            c.L_B = parse_list(value, "L_B");
        } else if (key == "t_max") {
            c.t_max = parse_number<size_t>(value, "t_max");
        } else if (key == "k" || key == "k_list") {
            c.k_list = parse_list(value, "k");
        } else if (key == "realizations") {
            c.realizations = parse_number<size_t>(value, "realizations");
        } else if (key == "seed" || key == "master_seed") {
            c.master_seed = parse_number<uint64_t>(value, "seed");
        } else if (key == "geometry") {
            c.geometry = parse_placement(value);
        } else if (key == "boundary") {
            c.boundary = parse_boundary(value);
        } else if (key == "output" || key == "out") {
            c.output = std::string(value);
        } else if (key == "resume") {
            c.resume = parse_bool(value);
        } else if (key == "workers") {
            c.workers = parse_number<size_t>(value, "workers");
        } else if (key == "amplitude_budget") {
            c.amplitude_budget = parse_number<size_t>(value, "amplitude_budget");
        } else {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
        }
    }
    return c;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_record(const ResultRecord &r) {
    std::stringstream ss;
    ss << r.schema_version << "," << r.q << "," << r.L_A << "," << r.L_B << "," << to_string(r.geometry) << ","
       << to_string(r.boundary) << "," << format_double(r.t) << "," << r.k << "," << r.observable << ","
       << format_double(r.mean) << "," << (r.sem ? format_double(*r.sem) : "") << "," << r.n_realizations << ","
       << format_double(r.excluded_mass_max) << "," << r.master_seed;
    return ss.str();
}

ResultRecord parse_record(std::string_view line) {
    auto fields = split(line, ',');
    if (fields.size() != 14) {
        throw DataError("results row has " + std::to_string(fields.size()) + " fields, expected 14: " + std::string(line));
    }
    try {
        ResultRecord r;
        r.schema_version = parse_number<int>(fields[0], "schema_version");
        if (r.schema_version != kCsvSchemaVersion) {
            throw DataError("unsupported schema_version " + std::to_string(r.schema_version));
        }
        r.q = parse_number<size_t>(fields[1], "q");
        r.L_A = parse_number<size_t>(fields[2], "L_A");
        r.L_B = parse_number<size_t>(fields[3], "L_B");
        r.geometry = parse_placement(trim(fields[4]));
        r.boundary = parse_boundary(trim(fields[5]));
        r.t = parse_number<double>(fields[6], "t");
        r.k = parse_number<size_t>(fields[7], "k");
        r.observable = std::string(trim(fields[8]));
        r.mean = parse_number<double>(fields[9], "mean");
        if (!trim(fields[10]).empty()) {
            r.sem = parse_number<double>(fields[10], "sem");
        }
        r.n_realizations = parse_number<size_t>(fields[11], "n_realizations");
        r.excluded_mass_max = parse_number<double>(fields[12], "excluded_mass_max");
        r.master_seed = parse_number<uint64_t>(fields[13], "master_seed");
        return r;
    } catch (const std::invalid_argument &e) {
        throw DataError(std::string("malformed results row: ") + e.what());
    }
}

std::vector<ResultRecord> read_records(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open results file " + path);
    }
    std::string line;
    if (!std::getline(in, line) || trim(line) != kCsvHeader) {
        throw DataError(path + ": header does not match results schema version " + std::to_string(kCsvSchemaVersion));
    }
    std::vector<ResultRecord> out;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (trim(line).empty()) {
            continue;
        }
        try {
            out.push_back(parse_record(line));
        } catch (const DataError &e) {
            throw DataError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

const GridPoint *SweepData::find(size_t L_B, size_t t) const {
    for (const auto &p : points) {
        if (p.L_B == L_B && p.t == t) {
            return &p;
        }
    }
    return nullptr;
}

const std::vector<double> &SweepData::frame(const GridPoint &p, size_t k) const {
    auto it = std::find(ks.begin(), ks.end(), k);
    if (it == ks.end()) {
        throw std::invalid_argument("SweepData: moment k=" + std::to_string(k) + " was not simulated");
    }
    return p.frame[(size_t)(it - ks.begin())];
}

std::vector<ResultRecord> aggregate(const ExperimentConfig &config, const SweepData &data, const GridPoint &point) {
    double n_a = std::pow((double)config.q, (double)config.L_A);
    double excluded_max = 0;
    for (double e : point.excluded_mass) {
        excluded_max = std::max(excluded_max, e);
    }
    ResultRecord base;
    base.q = config.q;
    base.L_A = config.L_A;
    base.L_B = point.L_B;
    base.geometry = config.geometry;
    base.boundary = config.boundary;
    base.t = (double)point.t;
    base.excluded_mass_max = excluded_max;
    base.master_seed = config.master_seed;

    auto with = [&](size_t k, std::string_view name, const MeanEstimate &est, double scale) {
        ResultRecord r = base;
        r.k = k;
        r.observable = std::string(name);
        r.mean = est.mean;
        if (est.has_sem) {
            r.sem = est.sem * scale;
        }
        r.n_realizations = est.count;
        return r;
    };

    std::vector<ResultRecord> out;
    const auto &purities = data.frame(point, 1);
    for (auto k : sorted_unique(config.k_list)) {
        const auto &f = data.frame(point, k);
        double f_haar = haar_frame_potential(n_a, k);
        auto est = estimate_mean(f);
        out.push_back(with(k, observable::kFrame, est, 1.0));

        FrameResult mean_result{k, est.mean, std::log(est.mean), excluded_max, config.q, config.L_A, point.L_B};
        MeanEstimate d = est;
        d.mean = delta_squared(mean_result);
        out.push_back(with(k, observable::kDelta2, d, 1.0 / f_haar));

        std::vector<double> per(f.size());
        for (size_t r = 0; r < f.size(); r++) {
            FrameResult fr{k, f[r], std::log(f[r]), 0, config.q, config.L_A, point.L_B};
            per[r] = delta_squared(fr);
        }
        out.push_back(with(k, observable::kDelta2PerRealization, estimate_mean(per), 1.0));
        out.push_back(with(k, observable::kPurityMoment, purity_moment(purities, k), 1.0));
    }
    return out;
}

namespace {

std::string sidecar_header(const std::vector<size_t> &ks) {
    std::string h = "L_B,t,realization,excluded_mass";
    for (auto k : ks) {
        h += ",F_" + std::to_string(k);
    }
    return h;
}

struct RealizationRow {
    size_t L_B;
    size_t t;
    size_t realization;
    double excluded;
    std::vector<double> frame;
};

std::vector<RealizationRow> read_sidecar(const std::string &path, const std::vector<size_t> &ks) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open realization file " + path);
    }
    std::string line;
    if (!std::getline(in, line) || trim(line) != sidecar_header(ks)) {
        throw DataError(path + ": header does not match the configured moments");
    }
    std::vector<RealizationRow> rows;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (trim(line).empty()) {
            continue;
        }
        auto fields = split(line, ',');
        if (fields.size() != 4 + ks.size()) {
            // A torn final line from an interrupted run is dropped; anything else is corruption.
            if (in.peek() == EOF) {
                break;
            }
            throw DataError(path + ":" + std::to_string(line_no) + ": wrong field count");
        }
        try {
            RealizationRow r;
            r.L_B = parse_number<size_t>(fields[0], "L_B");
            r.t = parse_number<size_t>(fields[1], "t");
            r.realization = parse_number<size_t>(fields[2], "realization");
            r.excluded = parse_number<double>(fields[3], "excluded_mass");
            for (size_t i = 0; i < ks.size(); i++) {
                r.frame.push_back(parse_number<double>(fields[4 + i], "F"));
            }
            rows.push_back(std::move(r));
        } catch (const std::invalid_argument &e) {
            throw DataError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return rows;
}

std::string now_text() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void write_manifest(const std::string &path, const ExperimentConfig &config, const std::string &started, double elapsed, bool complete) {
    std::ofstream out(path, std::ios::trunc);
    out << "# pesim sweep manifest\n";
    out << "code_version = " << PESIM_VERSION << "\n";
    out << "schema_version = " << kCsvSchemaVersion << "\n";
    out << "started = " << started << "\n";
    out << "elapsed_seconds = " << elapsed << "\n";
    out << "complete = " << (complete ? "true" : "false") << "\n";
    out << "[config]\n";
    out << config.fingerprint();
}

std::string manifest_fingerprint(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot resume: manifest " + path + " is missing");
    }
    std::string line;
    std::string result;
    bool in_config = false;
    while (std::getline(in, line)) {
        if (line == "[config]") {
            in_config = true;
            continue;
        }
        if (in_config) {
            result += line + "\n";
        }
    }
    return result;
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig &config) {
    config.validate();
    auto started_at = now_text();
    auto clock_start = std::chrono::steady_clock::now();

    std::vector<size_t> with_one = config.k_list;
    with_one.push_back(1);
    auto ks = sorted_unique(with_one);
    size_t R = config.realizations;
    size_t T = config.t_max + 1;

    bool persist = !config.output.empty();
    std::string out_path = config.output;
    std::string side_path = config.output + ".realizations.csv";
    std::string manifest_path = config.output + ".manifest";

    std::set<std::pair<size_t, size_t>> aggregated_points;
    std::map<std::tuple<size_t, size_t, size_t>, RealizationRow> done;
    std::ofstream records_out;
    std::ofstream side_out;
    if (persist) {
        namespace fs = std::filesystem;
        bool exists = fs::exists(out_path) || fs::exists(side_path);
        if (exists) {
            if (!config.resume) {
                throw std::invalid_argument(out_path + " already exists; pass resume to continue it");
            }
            if (manifest_fingerprint(manifest_path) != config.fingerprint()) {
                throw DataError("cannot resume: " + manifest_path + " was written for a different configuration");
            }
            for (const auto &r : read_records(out_path)) {
                aggregated_points.insert({r.L_B, (size_t)r.t});
            }
            for (auto &row : read_sidecar(side_path, ks)) {
                auto key = std::make_tuple(row.L_B, row.t, row.realization);
                done.emplace(key, std::move(row));
            }
            records_out.open(out_path, std::ios::app);
            side_out.open(side_path, std::ios::app);
        } else {
            records_out.open(out_path);
            side_out.open(side_path);
            if (!records_out || !side_out) {
                throw std::runtime_error("cannot create output files next to " + out_path);
            }
            records_out << kCsvHeader << "\n";
            side_out << sidecar_header(ks) << "\n";
            records_out.flush();
            side_out.flush();
        }
        write_manifest(manifest_path, config, started_at, 0, false);
    }

    SweepResult result;
    result.data.ks = ks;
    std::mutex write_mutex;

    for (auto L_B : config.L_B) {
        Geometry geometry{config.L_A, L_B, config.boundary, config.geometry};
        std::vector<GridPoint> points(T);
        std::vector<std::vector<bool>> have(T, std::vector<bool>(R, false));
        for (size_t t = 0; t < T; t++) {
            points[t].L_B = L_B;
            points[t].t = t;
            points[t].frame.assign(ks.size(), std::vector<double>(R, NAN));
            points[t].excluded_mass.assign(R, 0);
            for (size_t r = 0; r < R; r++) {
                auto it = done.find({L_B, t, r});
                if (it != done.end()) {
                    for (size_t i = 0; i < ks.size(); i++) {
                        points[t].frame[i][r] = it->second.frame[i];
                    }
                    points[t].excluded_mass[r] = it->second.excluded;
                    have[t][r] = true;
                }
            }
        }
        std::vector<size_t> pending;
        for (size_t r = 0; r < R; r++) {
            for (size_t t = 0; t < T; t++) {
                if (!have[t][r]) {
                    pending.push_back(r);
                    break;
                }
            }
        }

        std::atomic<size_t> next{0};
        std::exception_ptr failure;
        auto work = [&]() {
            try {
                while (true) {
                    size_t idx = next.fetch_add(1);
                    if (idx >= pending.size()) {
                        return;
                    }
                    size_t r = pending[idx];
                    uint64_t seed = realization_seed(config.master_seed, r);
                    auto state = product_state(geometry.L(), config.q, config.amplitude_budget);
                    std::string lines;
                    for (size_t t = 0; t < T; t++) {
                        if (t > 0) {
                            evolve_brick_wall(state, 1, geometry, seed, t - 1);
                        }
                        if (have[t][r]) {
                            continue;
                        }
                        auto proj = projected_matrix(state, geometry);
                        auto frames = frame_potentials(proj, ks);
                        std::string line = std::to_string(L_B) + "," + std::to_string(t) + "," + std::to_string(r) + "," +
                                           format_double(frames[0].excluded_mass);
                        for (size_t i = 0; i < ks.size(); i++) {
                            points[t].frame[i][r] = frames[i].value;
                            line += "," + format_double(frames[i].value);
                        }
                        points[t].excluded_mass[r] = frames[0].excluded_mass;
                        lines += line + "\n";
                    }
                    if (persist) {
                        std::lock_guard lock(write_mutex);
                        side_out << lines;
                        side_out.flush();
                    }
                }
            } catch (...) {
                std::lock_guard lock(write_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(pending.size());
            }
        };
        {
            std::vector<std::jthread> threads;
            size_t n_threads = std::min(config.workers, std::max<size_t>(pending.size(), 1));
            for (size_t w = 1; w < n_threads; w++) {
                threads.emplace_back(work);
            }
            work();
        }
        if (failure) {
            std::rethrow_exception(failure);
        }

        for (auto &p : points) {
            result.data.points.push_back(std::move(p));
        }
        for (size_t t = 0; t < T; t++) {
            const auto &p = *result.data.find(L_B, t);
            auto recs = aggregate(config, result.data, p);
            if (persist && !aggregated_points.count({L_B, t})) {
                for (const auto &rec : recs) {
                    records_out << format_record(rec) << "\n";
                }
                records_out.flush();
            }
            result.records.insert(result.records.end(), recs.begin(), recs.end());
        }
    }

    if (persist) {
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
        write_manifest(manifest_path, config, started_at, elapsed, true);
    }
    return result;
}

std::optional<double> first_crossing(const std::vector<double> &t, const std::vector<double> &delta2, double threshold) {
    if (t.size() != delta2.size()) {
        throw std::invalid_argument("first_crossing: mismatched curve lengths");
    }
    for (size_t i = 0; i < t.size(); i++) {
        if (delta2[i] >= threshold) {
            continue;
        }
        if (i == 0) {
            return t[0];
        }
        double a = delta2[i - 1];
        double b = delta2[i];
        double frac;
        if (a > 0 && b > 0) {
            frac = (std::log(threshold) - std::log(a)) / (std::log(b) - std::log(a));
        } else {
            frac = (threshold - a) / (b - a);
        }
        return t[i - 1] + frac * (t[i] - t[i - 1]);
    }
    return std::nullopt;
}

DesignTimeEstimate estimate_design_time(const std::vector<ResultRecord> &records, size_t L_B, size_t k, double epsilon) {
    std::vector<std::pair<double, double>> curve;
    for (const auto &r : records) {
        if (r.L_B == L_B && r.k == k && r.observable == observable::kDelta2) {
            curve.emplace_back(r.t, r.mean);
        }
    }
    std::sort(curve.begin(), curve.end());
    std::vector<double> ts;
    std::vector<double> ds;
    for (auto [t, d] : curve) {
        ts.push_back(t);
        ds.push_back(d);
    }
    DesignTimeEstimate est;
    auto crossing = first_crossing(ts, ds, epsilon * epsilon);
    if (crossing) {
        est.t = est.ci_low = est.ci_high = *crossing;
    } else {
        est.censored = true;
        est.censored_fraction = 1;
        est.t = est.ci_low = est.ci_high = INFINITY;
    }
    return est;
}

DesignTimeEstimate estimate_design_time(
    const SweepData &data,
    size_t q,
    size_t L_A,
    size_t L_B,
    size_t k,
    double epsilon,
    size_t bootstrap_samples,
    uint64_t bootstrap_seed) {
    std::vector<const GridPoint *> curve;
    for (const auto &p : data.points) {
        if (p.L_B == L_B) {
            curve.push_back(&p);
        }
    }
    if (curve.empty()) {
        throw std::invalid_argument("estimate_design_time: no data for the requested L_B");
    }
    std::sort(curve.begin(), curve.end(), [](auto *a, auto *b) {
        return a->t < b->t;
    });
    double f_haar = haar_frame_potential(std::pow((double)q, (double)L_A), k);
    std::vector<double> ts;
    for (auto *p : curve) {
        ts.push_back((double)p->t);
    }
    size_t R = data.frame(*curve[0], k).size();

    auto crossing_for = [&](const std::vector<size_t> *sample) {
        std::vector<double> ds;
        for (auto *p : curve) {
            const auto &f = data.frame(*p, k);
            CompensatedSum s;
            if (sample == nullptr) {
                for (double x : f) {
                    s.add(x);
                }
            } else {
                for (auto idx : *sample) {
                    s.add(f[idx]);
                }
            }
            ds.push_back(s.value() / (double)R / f_haar - 1);
        }
        return first_crossing(ts, ds, epsilon * epsilon);
    };

    DesignTimeEstimate est;
    auto point = crossing_for(nullptr);
    est.censored = !point.has_value();
    est.t = point.value_or(INFINITY);

    Rng rng(derive_seed(bootstrap_seed, {0x424F4F54ULL, L_B, k}));
    std::uniform_int_distribution<size_t> pick(0, R - 1);
    std::vector<double> values;
    size_t censored = 0;
    std::vector<size_t> sample(R);
    for (size_t b = 0; b < bootstrap_samples; b++) {
        for (auto &s : sample) {
            s = pick(rng);
        }
        auto c = crossing_for(&sample);
        if (c) {
            values.push_back(*c);
        } else {
            censored++;
        }
    }
    est.censored_fraction = bootstrap_samples ? (double)censored / (double)bootstrap_samples : (est.censored ? 1.0 : 0.0);
    if (values.empty()) {
        est.ci_low = est.ci_high = est.t;
        return est;
    }
    std::sort(values.begin(), values.end());
    auto quantile = [&](double p) {
        double pos = p * (double)(values.size() - 1);
        size_t lo = (size_t)std::floor(pos);
        size_t hi = std::min(lo + 1, values.size() - 1);
        return values[lo] + (pos - (double)lo) * (values[hi] - values[lo]);
    };
    est.ci_low = quantile(0.025);
    est.ci_high = censored > 0 ? INFINITY : quantile(0.975);
    return est;
}

double markov_tail_bound(double mean_frame, double haar_frame, double epsilon) {
    if (!(epsilon > 0)) {
        throw std::invalid_argument("markov_tail_bound: epsilon must be positive");
    }
    if (std::isinf(epsilon)) {
        return 0;
    }
    return (mean_frame - haar_frame) / epsilon;
}

double markov_tail_bound(const std::vector<ResultRecord> &records, size_t L_B, size_t t, size_t k, double epsilon) {
    for (const auto &r : records) {
        if (r.L_B == L_B && (size_t)r.t == t && r.k == k && r.observable == observable::kFrame) {
            double f_haar = haar_frame_potential(std::pow((double)r.q, (double)r.L_A), k);
            return markov_tail_bound(r.mean, f_haar, epsilon);
        }
    }
    throw std::invalid_argument("markov_tail_bound: no F_k record for the requested grid point");
}

}  // namespace pesim
