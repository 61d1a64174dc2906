#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "pesim/errors.h"
#include "pesim/experiment.h"
#include "pesim/haar.h"
#include "pesim/permutation.h"
#include "pesim/projected_ensemble.h"
#include "pesim/statmech.h"
#include "pesim/theory.h"

using namespace pesim;

namespace {

enum ExitCode {
    kOk = 0,
    kFailure = 1,
    kBadInput = 2,
    kBudget = 3,
    kData = 4,
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

Permutation parse_perm(const std::string &text) {
    std::vector<uint32_t> images;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        images.push_back((uint32_t)std::stoul(item));
    }
    return Permutation(images);
}

struct TheoryArgs {
    size_t q = 2;
    size_t L_A = 6;
    size_t L_B = 0;
    double t_max = 16;
    double dt = 1;
    std::vector<size_t> ks{1, 2, 3};
    double epsilon = 0.5;
    std::string boundary = "obc";
    std::string geometry = "edge";
    std::optional<double> v2;
};

void run_theory(const TheoryArgs &a) {
    std::cout << kCsvHeader << "\n";
    ResultRecord base;
    base.q = a.q;
    base.L_A = a.L_A;
    base.L_B = a.L_B;
    base.geometry = parse_placement(a.geometry);
    base.boundary = parse_boundary(a.boundary);
    double q = (double)a.q;
    double la = (double)a.L_A;
    size_t steps = (size_t)std::floor(a.t_max / a.dt + 1e-9);
    auto emit = [&](double t, size_t k, const char *name, double value) {
        ResultRecord r = base;
        r.t = t;
        r.k = k;
        r.observable = name;
        r.mean = value;
        std::cout << format_record(r) << "\n";
    };
    for (size_t i = 0; i <= steps; i++) {
        double t = (double)i * a.dt;
        emit(t, 1, "mean_purity", theory::mean_purity(q, t));
        emit(t, 1, "rounded_fp1", theory::rounded_fp1(q, la, t, a.v2));
        for (auto k : a.ks) {
            emit(t, k, "haar_fp", haar_frame_potential(std::pow(q, la), k));
            emit(t, k, "large_q_fp", theory::large_q_frame_potential(q, la, t, k));
            emit(t, k, "membrane_fp", theory::membrane_frame_potential(q, la, t, k, a.v2));
            emit(t, k, "delta2_nonint", theory::delta2_nonint(q, la, t, k, a.v2));
            emit(t, k, "bulk_fp_large_q", theory::bulk_fp_large_q(q, t, k, base.boundary, false, a.v2));
        }
    }
    for (auto k : a.ks) {
        emit(0, k, "design_time", theory::design_time(q, la, k, a.epsilon, a.v2));
    }
}

struct OracleArgs {
    size_t q = 2;
    size_t L_A = 3;
    size_t L_B = 3;
    size_t t_max = 3;
    size_t k = 1;
    size_t n = 0;
    size_t realizations = 1000;
    uint64_t seed = 1;
    std::string boundary = "obc";
    std::string geometry = "edge";
    size_t budget = kDefaultConfigurationBudget;
};

void run_oracle(const OracleArgs &a) {
    Geometry g{a.L_A, a.L_B, parse_boundary(a.boundary), parse_placement(a.geometry)};
    g.validate();
    std::cout << "q,L_A,L_B,geometry,boundary,t,k,n,exact,monte_carlo,sem,realizations\n";
    for (size_t t = 0; t <= a.t_max; t++) {
        double exact = contract_frame_potential(a.q, g, t, a.k, a.n, a.budget);
        std::vector<double> samples;
        for (size_t r = 0; r < a.realizations; r++) {
            auto state = product_state(g.L(), a.q);
            evolve_brick_wall(state, t, g, realization_seed(a.seed, r));
            samples.push_back(replicated_frame_potential(projected_matrix(state, g), a.k, a.n));
        }
        auto est = estimate_mean(samples);
        std::cout << a.q << "," << a.L_A << "," << a.L_B << "," << a.geometry << "," << a.boundary << "," << t << ","
                  << a.k << "," << a.n << "," << fmt(exact) << "," << fmt(est.mean) << ","
                  << (est.has_sem ? fmt(est.sem) : "") << "," << est.count << "\n";
    }
}

struct HaarArgs {
    size_t q = 2;
    std::vector<size_t> L_A{1, 2, 6};
    std::vector<size_t> L_B{1, 2, 4, 8, 12, 16};
    std::vector<size_t> ks{1, 2, 3};
};

void run_haar(const HaarArgs &a) {
    std::cout << "q,L_A,L_B,k,haar_fp,haar_state_projected_fp,ratio\n";
    for (auto la : a.L_A) {
        for (auto lb : a.L_B) {
            for (auto k : a.ks) {
                double fh = haar_frame_potential(std::pow((double)a.q, (double)la), k);
                double fp = haar_state_projected_fp({a.q, la, lb, k});
                std::cout << a.q << "," << la << "," << lb << "," << k << "," << fmt(fh) << "," << fmt(fp) << ","
                          << fmt(fp / fh) << "\n";
            }
        }
    }
}

void run_perm(const std::string &images, const std::string &other, bool alpha) {
    auto p = parse_perm(images);
    std::cout << "images: " << p.str() << "\n";
    std::cout << "cycles: " << p.cycle_str() << "\n";
    std::cout << "cycle_count: " << cycle_count(p) << "\n";
    std::cout << "distance_to_identity: " << transposition_distance(p, Permutation::identity(p.degree())) << "\n";
    if (p.degree() % 2 == 0) {
        auto inv = Permutation::inversion(p.degree() / 2);
        std::cout << "distance_to_inversion: " << transposition_distance(p, inv) << "\n";
    }
    if (!other.empty()) {
        auto o = parse_perm(other);
        std::cout << "distance: " << transposition_distance(p, o) << "\n";
        std::cout << "compose: " << compose(p, o).str() << "\n";
    }
    if (alpha) {
        auto partner = partner_alpha(p);
        auto joined = embed(p, partner);
        std::cout << "partner_alpha: " << partner.str() << "\n";
        std::cout << "distance_embed_to_inversion: "
                  << transposition_distance(joined, Permutation::inversion(p.degree())) << "\n";
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Projected-ensemble simulator for brick-wall random circuits"};
    app.require_subcommand(1);

    auto *sim = app.add_subcommand("simulate", "Run a configured sweep and write the results CSV");
    std::string config_path;
    std::optional<uint64_t> seed;
    std::optional<size_t> workers;
    std::string out;
    bool resume = false;
    sim->add_option("--config", config_path, "Flat key = value config file")->required()->check(CLI::ExistingFile);
    sim->add_option("--seed", seed, "Master seed override");
    sim->add_option("--workers", workers, "Worker threads");
    sim->add_option("--out", out, "Output CSV path");
    sim->add_flag("--resume", resume, "Continue an interrupted sweep");

    auto *th = app.add_subcommand("theory", "Closed-form prediction curves as CSV");
    TheoryArgs ta;
    double v2 = 0;
    th->add_option("--q", ta.q);
    th->add_option("--L_A", ta.L_A);
    th->add_option("--L_B", ta.L_B, "Only echoed into the L_B column");
    th->add_option("--t-max", ta.t_max);
    th->add_option("--dt", ta.dt);
    th->add_option("--k", ta.ks)->delimiter(',');
    th->add_option("--epsilon", ta.epsilon);
    th->add_option("--boundary", ta.boundary);
    th->add_option("--geometry", ta.geometry);
    auto *v2_opt = th->add_option("--v2", v2, "Override the purity speed");

    auto *orc = app.add_subcommand("oracle", "Transfer-matrix averages against statevector Monte Carlo");
    OracleArgs oa;
    orc->add_option("--q", oa.q);
    orc->add_option("--L_A", oa.L_A);
    orc->add_option("--L_B", oa.L_B);
    orc->add_option("--t-max", oa.t_max);
    orc->add_option("--k", oa.k);
    orc->add_option("--n", oa.n);
    orc->add_option("--realizations", oa.realizations);
    orc->add_option("--seed", oa.seed);
    orc->add_option("--boundary", oa.boundary);
    orc->add_option("--geometry", oa.geometry);
    orc->add_option("--budget", oa.budget, "Maximum number of label configurations");

    auto *hb = app.add_subcommand("haar-baseline", "Haar frame potentials and the finite-L_B Haar-state values");
    HaarArgs ha;
    hb->add_option("--q", ha.q);
    hb->add_option("--L_A", ha.L_A)->delimiter(',');
    hb->add_option("--L_B", ha.L_B)->delimiter(',');
    hb->add_option("--k", ha.ks)->delimiter(',');

    auto *pm = app.add_subcommand("perm", "Cycle structure and distances of a permutation");
    std::string images;
    std::string other;
    bool alpha = false;
    pm->add_option("images", images, "Comma separated images, e.g. 3,2,1,0")->required();
    pm->add_option("--other", other, "Second permutation for distance and composition");
    pm->add_flag("--alpha", alpha, "Also print the partner permutation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*sim) {
            auto config = load_config(config_path);
            if (seed) {
                config.master_seed = *seed;
            }
            if (workers) {
                config.workers = *workers;
            }
            if (!out.empty()) {
                config.output = out;
            }
            if (resume) {
                config.resume = true;
            }
            auto result = run_sweep(config);
            if (config.output.empty()) {
                std::cout << kCsvHeader << "\n";
                for (const auto &r : result.records) {
                    std::cout << format_record(r) << "\n";
                }
            } else {
                std::cerr << "wrote " << result.records.size() << " rows to " << config.output << "\n";
            }
        } else if (*th) {
            if (*v2_opt) {
                ta.v2 = v2;
            }
            run_theory(ta);
        } else if (*orc) {
            run_oracle(oa);
        } else if (*hb) {
            run_haar(ha);
        } else if (*pm) {
            run_perm(images, other, alpha);
        }
    } catch (const BudgetExceeded &e) {
        std::cerr << "error [budget]: " << e.what() << "\n";
        return kBudget;
    } catch (const DataError &e) {
        std::cerr << "error [data]: " << e.what() << "\n";
        return kData;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error [input]: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception &e) {
        std::cerr << "error [internal]: " << e.what() << "\n";
        return kFailure;
    }
    return kOk;
}
