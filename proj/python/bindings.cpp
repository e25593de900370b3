#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <iostream>
#include <sstream>

#include "onset/app/commands.hpp"
#include "onset/features/power_matrix.hpp"
#include "onset/grid/grid_case.hpp"
#include "onset/grid/power_flow.hpp"
#include "onset/hpo/acquisition.hpp"
#include "onset/hpo/gp.hpp"
#include "onset/ml/model.hpp"
#include "onset/report/metrics.hpp"
#include "onset/sim/cascade.hpp"
#include "onset/sim/onset.hpp"

namespace py = pybind11;
using namespace onset;

namespace {

// Profiles cross the boundary as [(time_min, cumulative_failed), ...].
using ProfilePoints = std::vector<std::pair<double, int>>;

sim::FailureProfile to_profile(const ProfilePoints& points) {
  sim::FailureProfile p;
  for (const auto& [t, n] : points) p.events.push_back({t, n, {}});
  return p;
}

ml::LabeledData to_data(const ml::Matrix& x, const std::vector<int>& y) {
  ml::LabeledData d{x, y, sim::kNumClasses};
  ml::validate(d);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "C++ core of the onset toolkit";
  m.attr("__version__") = ONSET_VERSION;

  py::register_exception<grid::GridError>(m, "GridError", PyExc_ValueError);

  py::class_<grid::GridCase>(m, "GridCase")
      .def_property_readonly("num_buses", [](const grid::GridCase& c) { return c.buses().size(); })
      .def_property_readonly("num_branches", [](const grid::GridCase& c) { return c.branches().size(); })
      .def_property_readonly("base_mva", &grid::GridCase::base_mva)
      .def_property_readonly("branch_ids", &grid::GridCase::sorted_branch_ids)
      .def("__repr__", [](const grid::GridCase& c) {
        return "<GridCase " + std::to_string(c.buses().size()) + " buses, " +
               std::to_string(c.branches().size()) + " branches>";
      });

  m.def("parse_grid_case", &grid::parse_grid_case, py::arg("text"));
  m.def("load_grid_case", &grid::load_grid_case, py::arg("path"));

  m.def(
      "solve_dc_power_flow",
      [](const grid::GridCase& c, const std::vector<int>& removed) {
        auto sol = grid::solve_dc_power_flow(c, removed);
        py::dict out;
        out["angle_rad"] = sol.angle_rad;
        out["branch_flow_mw"] = sol.branch_flow_mw;
        out["injection_mw"] = sol.injection_mw;
        std::vector<std::vector<int>> islands;
        std::vector<bool> solved;
        for (const auto& isl : sol.islands) {
          std::vector<int> ids;
          for (auto b : isl.buses) ids.push_back(c.buses()[b].id);
          islands.push_back(std::move(ids));
          solved.push_back(isl.solved);
        }
        out["islands"] = islands;
        out["solved"] = solved;
        out["shed_mw"] = sol.total_shed_mw();
        return out;
      },
      py::arg("case"), py::arg("removed") = std::vector<int>{},
      "Branch flows are aligned with the case's branch order.");

  m.def(
      "run_cascade",
      [](const grid::GridCase& c, const std::vector<int>& removed, double tau0, double horizon) {
        sim::CascadeConfig cfg;
        cfg.tau0_min = tau0;
        cfg.horizon_min = horizon;
        auto profile = sim::run_cascade(c, sim::ContingencySpec{removed}, cfg);
        ProfilePoints points;
        for (const auto& e : profile.events) points.emplace_back(e.time_min, e.cumulative_failed);
        return points;
      },
      py::arg("case"), py::arg("removed"), py::arg("tau0_min") = 10.0,
      py::arg("horizon_min") = 5000.0);

  m.def(
      "detect_onset",
      [](const ProfilePoints& points, double window, int min_failures) {
        return sim::detect_onset(to_profile(points), {window, min_failures});
      },
      py::arg("profile"), py::arg("window_min") = 50.0, py::arg("min_failures") = 3);

  m.def(
      "label_onset",
      [](std::optional<double> onset, double t_c1, double t_c2) {
        return sim::class_code(sim::label(onset, {t_c1, t_c2}));
      },
      py::arg("onset_min"), py::arg("t_c1_min") = 100.0, py::arg("t_c2_min") = 1000.0,
      "Class code: 1 non-critical, 2 critical, 3 relatively critical.");

  m.def(
      "contingency_features",
      [](const grid::GridCase& c, const std::vector<int>& removed) {
        auto base = features::power_matrix(grid::solve_dc_power_flow(c), c);
        return features::contingency_features(c, base, removed);
      },
      py::arg("case"), py::arg("removed"));

  py::class_<ml::ClassifierModel>(m, "Model")
      .def_property_readonly("kind", [](const ml::ClassifierModel& mdl) {
        return std::string(ml::slug(mdl.meta.kind));
      })
      .def("predict",
           [](const ml::ClassifierModel& mdl, const ml::Matrix& x) {
             return mdl.predict_all(x);
           },
           py::arg("x"), "Class indices (code - 1).")
      .def("to_json", &ml::model_to_json)
      .def_static("from_json", [](const std::string& s) { return ml::model_from_json(s); });

  m.def(
      "train_model",
      [](const std::string& kind, const ml::Matrix& x, const std::vector<int>& y,
         std::uint64_t seed) {
        return ml::train_model(ml::learner_from_slug(kind), to_data(x, y), {}, seed);
      },
      py::arg("kind"), py::arg("x"), py::arg("y"), py::arg("seed") = 0,
      "Trains a learner with default settings; y holds class indices 0..2.");

  m.def(
      "confusion_matrix",
      [](const std::vector<int>& truth, const std::vector<int>& pred) {
        return report::confusion_matrix(std::span<const int>(truth), std::span<const int>(pred)).counts;
      },
      py::arg("truth"), py::arg("predicted"));

  m.def(
      "accuracy",
      [](const std::vector<int>& truth, const std::vector<int>& pred) {
        return report::accuracy(
            report::confusion_matrix(std::span<const int>(truth), std::span<const int>(pred)));
      },
      py::arg("truth"), py::arg("predicted"));

  m.def("expected_improvement", &hpo::expected_improvement, py::arg("mean"), py::arg("stddev"),
        py::arg("best"));

  m.def(
      "gp_posterior",
      [](const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& query,
         double lengthscale, double noise) {
        auto gp = hpo::gp_fit(x, y, {lengthscale, noise});
        auto post = gp.posterior(query);
        return std::make_pair(post.mean, post.stddev);
      },
      py::arg("x"), py::arg("y"), py::arg("query"), py::arg("lengthscale") = 0.5,
      py::arg("noise_variance") = 1e-6);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full{"onset"};
        full.insert(full.end(), args.begin(), args.end());
        py::gil_scoped_release release;
        return app::run_cli(full, std::cout, std::cerr);
      },
      py::arg("args"), "Runs a CLI command line (without the program name); returns the exit code.");
}
