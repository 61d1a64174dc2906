#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pesim/errors.h"
#include "pesim/experiment.h"
#include "pesim/haar.h"
#include "pesim/permutation.h"
#include "pesim/projected_ensemble.h"
#include "pesim/statmech.h"
#include "pesim/theory.h"

namespace py = pybind11;
using namespace pesim;

namespace {

Geometry make_geometry(size_t L_A, size_t L_B, const std::string &boundary, const std::string &geometry) {
    Geometry g{L_A, L_B, parse_boundary(boundary), parse_placement(geometry)};
    g.validate();
    return g;
}

py::dict record_dict(const ResultRecord &r) {
    py::dict d;
    d["schema_version"] = r.schema_version;
    d["q"] = r.q;
    d["L_A"] = r.L_A;
    d["L_B"] = r.L_B;
    d["geometry"] = std::string(to_string(r.geometry));
    d["boundary"] = std::string(to_string(r.boundary));
    d["t"] = r.t;
    d["k"] = r.k;
    d["observable"] = r.observable;
    d["mean"] = r.mean;
    d["sem"] = r.sem ? py::object(py::float_(*r.sem)) : py::object(py::none());
    d["n_realizations"] = r.n_realizations;
    d["excluded_mass_max"] = r.excluded_mass_max;
    d["master_seed"] = r.master_seed;
    return d;
}

std::vector<py::dict> record_list(const std::vector<ResultRecord> &rs) {
    std::vector<py::dict> out;
    for (const auto &r : rs) {
        out.push_back(record_dict(r));
    }
    return out;
}

Permutation to_perm(const std::vector<uint32_t> &images) {
    return Permutation(images);
}

std::vector<uint32_t> from_perm(const Permutation &p) {
    return {p.images().begin(), p.images().end()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Projected-ensemble simulator and closed forms for brick-wall random circuits";
    m.attr("CSV_HEADER") = std::string(kCsvHeader);
    m.attr("CSV_SCHEMA_VERSION") = kCsvSchemaVersion;

    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_MemoryError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

    m.def("transposition_distance", [](const std::vector<uint32_t> &a, const std::vector<uint32_t> &b) {
        return transposition_distance(to_perm(a), to_perm(b));
    });
    m.def("partner_alpha", [](const std::vector<uint32_t> &a) { return from_perm(partner_alpha(to_perm(a))); });
    m.def("compose", [](const std::vector<uint32_t> &a, const std::vector<uint32_t> &b) {
        return from_perm(compose(to_perm(a), to_perm(b)));
    });

    m.def("haar_frame_potential", &haar_frame_potential, py::arg("N"), py::arg("k"));
    m.def(
        "haar_state_projected_fp",
        [](size_t q, size_t L_A, size_t L_B, size_t k) { return haar_state_projected_fp({q, L_A, L_B, k}); },
        py::arg("q"), py::arg("L_A"), py::arg("L_B"), py::arg("k"));

    m.def("purity_speed", &theory::purity_speed, py::arg("q"));
    m.def("mean_purity", &theory::mean_purity, py::arg("q"), py::arg("t"));
    m.def("large_q_frame_potential", &theory::large_q_frame_potential, py::arg("q"), py::arg("L_A"), py::arg("t"),
          py::arg("k"));
    m.def("membrane_frame_potential", &theory::membrane_frame_potential, py::arg("q"), py::arg("L_A"), py::arg("t"),
          py::arg("k"), py::arg("v2") = py::none());
    m.def("delta2_nonint", &theory::delta2_nonint, py::arg("q"), py::arg("L_A"), py::arg("t"), py::arg("k"),
          py::arg("v2") = py::none());
    m.def("design_time", &theory::design_time, py::arg("q"), py::arg("L_A"), py::arg("k"), py::arg("epsilon"),
          py::arg("v2") = py::none());

    m.def(
        "contract_frame_potential",
        [](size_t q, size_t L_A, size_t L_B, size_t t, size_t k, size_t n, const std::string &boundary,
           const std::string &geometry) {
            return contract_frame_potential(q, make_geometry(L_A, L_B, boundary, geometry), t, k, n);
        },
        py::arg("q"), py::arg("L_A"), py::arg("L_B"), py::arg("t"), py::arg("k"), py::arg("n") = 0,
        py::arg("boundary") = "obc", py::arg("geometry") = "edge");

    m.def(
        "circuit_frame_potentials",
        [](size_t q, size_t L_A, size_t L_B, size_t t, std::vector<size_t> ks, uint64_t seed,
           const std::string &boundary, const std::string &geometry) {
            auto g = make_geometry(L_A, L_B, boundary, geometry);
            std::vector<double> out;
            {
                py::gil_scoped_release release;
                auto s = product_state(g.L(), q);
                evolve_brick_wall(s, t, g, seed);
                for (const auto &f : frame_potentials(projected_matrix(s, g), ks)) {
                    out.push_back(f.value);
                }
            }
            return out;
        },
        py::arg("q"), py::arg("L_A"), py::arg("L_B"), py::arg("t"), py::arg("ks"), py::arg("seed"),
        py::arg("boundary") = "obc", py::arg("geometry") = "edge");

    m.def(
        "run_sweep",
        [](const std::string &config_text) {
            auto config = parse_config(config_text);
            SweepResult result;
            {
                py::gil_scoped_release release;
                result = run_sweep(config);
            }
            return record_list(result.records);
        },
        py::arg("config_text"));
    m.def("read_records", [](const std::string &path) { return record_list(read_records(path)); }, py::arg("path"));
}
