#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <vector>

#include "denoise/errors.hpp"
#include "denoise/experiment.hpp"
#include "denoise/models.hpp"
#include "denoise/ne.hpp"
#include "denoise/oracle.hpp"
#include "denoise/pos.hpp"
#include "denoise/swm.hpp"

namespace py = pybind11;
using namespace denoise;

namespace {

using Profile = std::vector<double>;

StrategyProfile wrap(Profile x) { return StrategyProfile(std::move(x)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Social optimum, Nash equilibrium and price of stability for the label-denoising game.";

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<InvalidInput>(m, "InvalidInput", error.ptr());
    py::register_exception<InfeasibleStrategy>(m, "InfeasibleStrategy", error.ptr());
    py::register_exception<NonConvergence>(m, "NonConvergence", error.ptr());
    py::register_exception<RatioUndefined>(m, "RatioUndefined", error.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());
    py::register_exception<IoError>(m, "IoError", error.ptr());

    py::class_<ClientParams>(m, "ClientParams")
        .def(py::init([](double w, double d, double epsilon) {
                 ClientParams c{w, d, epsilon};
                 validate(c);
                 return c;
             }),
             py::arg("w"), py::arg("d"), py::arg("epsilon"))
        .def_readonly("w", &ClientParams::w)
        .def_readonly("d", &ClientParams::d)
        .def_readonly("epsilon", &ClientParams::epsilon);

    py::class_<AccuracyModel>(m, "AccuracyModel")
        .def_static("linear", &AccuracyModel::linear, py::arg("kappa"), py::arg("g0"))
        .def_static("quadratic", &AccuracyModel::quadratic, py::arg("g2"), py::arg("g1"), py::arg("g0"))
        .def("value", &AccuracyModel::value, py::arg("xbar"))
        .def("slope", &AccuracyModel::slope, py::arg("xbar"))
        .def_property_readonly("is_linear", &AccuracyModel::is_linear);

    py::class_<CostModel>(m, "CostModel")
        .def_static("log", &CostModel::log, py::arg("c"))
        .def("value", &CostModel::value, py::arg("x"))
        .def("derivative", &CostModel::derivative, py::arg("x"));

    py::class_<GameInstance>(m, "GameInstance")
        .def(py::init<std::vector<ClientParams>, AccuracyModel, CostModel>(), py::arg("clients"), py::arg("accuracy"),
             py::arg("cost"))
        .def("__len__", &GameInstance::size)
        .def_property_readonly("clients",
                               [](const GameInstance& g) {
                                   return std::vector<ClientParams>(g.clients().begin(), g.clients().end());
                               })
        .def_property_readonly("w_bar", &GameInstance::w_bar)
        .def_property_readonly("d_bar", &GameInstance::d_bar)
        .def_property_readonly("total_d", &GameInstance::total_d)
        .def_property_readonly("max_epsilon", &GameInstance::max_epsilon);

    py::class_<SwmReport>(m, "SwmReport")
        .def_readonly("theta", &SwmReport::theta)
        .def_property_readonly("profile", [](const SwmReport& r) { return r.profile.x; })
        .def_readonly("welfare", &SwmReport::welfare)
        .def_readonly("accuracy", &SwmReport::accuracy)
        .def_readonly("avg_noise", &SwmReport::avg_noise)
        .def_readonly("ternary_iterations", &SwmReport::ternary_iterations);

    py::class_<NeReport>(m, "NeReport")
        .def_property_readonly("profile", [](const NeReport& r) { return r.profile.x; })
        .def_readonly("welfare", &NeReport::welfare)
        .def_readonly("accuracy", &NeReport::accuracy)
        .def_readonly("avg_noise", &NeReport::avg_noise)
        .def_readonly("sweeps", &NeReport::sweeps)
        .def_readonly("converged", &NeReport::converged);

    py::class_<PosReport>(m, "PosReport")
        .def_readonly("swm", &PosReport::swm)
        .def_readonly("ne", &PosReport::ne)
        .def_readonly("pos_welfare", &PosReport::pos_welfare)
        .def_readonly("accuracy_gap", &PosReport::accuracy_gap)
        .def_readonly("noise_gap", &PosReport::noise_gap);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("sweep_value", &SweepRow::sweep_value)
        .def_readonly("acc_swm", &SweepRow::acc_swm)
        .def_readonly("acc_ne", &SweepRow::acc_ne)
        .def_readonly("sw_swm", &SweepRow::sw_swm)
        .def_readonly("sw_ne", &SweepRow::sw_ne)
        .def_readonly("pos", &SweepRow::pos)
        .def_readonly("avg_noise_swm", &SweepRow::avg_noise_swm)
        .def_readonly("avg_noise_ne", &SweepRow::avg_noise_ne);

    m.def("average_noise_rate", [](const GameInstance& g, Profile x) { return average_noise_rate(g, wrap(std::move(x))); });
    m.def("correction_cost", &correction_cost, py::arg("cost"), py::arg("client"), py::arg("x"));
    m.def("payoff", [](const GameInstance& g, std::size_t n, Profile x) { return payoff(g, n, wrap(std::move(x))); });
    m.def("social_welfare", [](const GameInstance& g, Profile x) { return social_welfare(g, wrap(std::move(x))); });

    m.def("h_swm", [](const GameInstance& g, std::size_t n, Profile x) { return h_swm(g, n, wrap(std::move(x))); });
    m.def("profile_from_threshold", [](const GameInstance& g, double theta) { return profile_from_threshold(g, theta).x; });
    m.def("welfare_of_threshold", &welfare_of_threshold, py::arg("instance"), py::arg("theta"));
    m.def("solve_swm", &solve_swm, py::arg("instance"), py::arg("mu") = kDefaultMu);

    m.def("h_ne", [](const GameInstance& g, std::size_t n, Profile x) { return h_ne(g, n, wrap(std::move(x))); });
    m.def("best_response",
          [](const GameInstance& g, std::size_t n, Profile x) { return best_response(g, n, wrap(std::move(x))); });
    m.def(
        "solve_ne",
        [](const GameInstance& g, double convg_thresh, std::size_t max_sweeps) {
            return solve_ne(g, NeOptions{convg_thresh, max_sweeps});
        },
        py::arg("instance"), py::arg("convg_thresh") = 1e-8, py::arg("max_sweeps") = 100000);

    m.def(
        "compare",
        [](const GameInstance& g, double mu, double convg_thresh) {
            return compare(g, mu, NeOptions{convg_thresh, NeOptions{}.max_sweeps});
        },
        py::arg("instance"), py::arg("mu") = kDefaultMu, py::arg("convg_thresh") = 1e-8);

    m.def(
        "brute_force_swm",
        [](const GameInstance& g, double step) {
            auto r = brute_force_swm(g, step);
            return py::make_tuple(r.profile.x, r.welfare);
        },
        py::arg("instance"), py::arg("grid_step"));
    m.def(
        "verify_ne",
        [](const GameInstance& g, Profile x, double step) {
            auto r = verify_ne(g, wrap(std::move(x)), step);
            return py::make_tuple(r.ok, r.max_gain);
        },
        py::arg("instance"), py::arg("profile"), py::arg("grid_step"));
    m.def("check_unimodal", &check_unimodal, py::arg("instance"), py::arg("grid_points"));

    m.def(
        "run_sweep", [](const std::string& config_json) { return run_sweep(parse_config(config_json)); },
        py::arg("config_json"), "Parse a JSON config and run its sweep.");
    m.def(
        "sweep_csv",
        [](const std::vector<SweepRow>& rows) {
            std::ostringstream out;
            emit_csv(rows, out);
            return out.str();
        },
        py::arg("rows"));
}
