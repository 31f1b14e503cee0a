#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>

#include "nzd/scan.hpp"
#include "nzd/sim.hpp"
#include "nzd/synthesis.hpp"

namespace py = pybind11;
using namespace nzd;

namespace {

MemoryOneStrategy to_strategy(const std::array<double, 4>& a) {
  return {a[0], a[1], a[2], a[3]};
}

std::array<double, 4> from_strategy(const MemoryOneStrategy& s) {
  return s.p;
}

std::array<double, 4> to_array(const Eigen::Vector4d& v) {
  return {v(0), v(1), v(2), v(3)};
}

std::array<std::array<double, 4>, 4> to_nested(const Eigen::Matrix4d& m) {
  std::array<std::array<double, 4>, 4> out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = m(i, j);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Zero-determinant strategies for repeated prisoner's dilemma games "
      "with perception errors";
  m.attr("__version__") = "1.0.0";

  const auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<SingularNoiseError>(m, "SingularNoiseError", base);
  py::register_exception<NonUniqueStationaryError>(m, "NonUniqueStationaryError", base);
  py::register_exception<DegenerateChainError>(m, "DegenerateChainError", base);
  py::register_exception<DegeneratePinError>(m, "DegeneratePinError", base);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", base);

  py::enum_<Action>(m, "Action")
      .value("Cooperate", Action::Cooperate)
      .value("Defect", Action::Defect);
  py::enum_<Signal>(m, "Signal")
      .value("Good", Signal::Good)
      .value("Bad", Signal::Bad);

  py::class_<NoiseModel>(m, "NoiseModel")
      .def_static("from_epsilon_r", &NoiseModel::from_epsilon_r,
                  py::arg("epsilon"), py::arg("r"))
      .def_static("from_strength", &NoiseModel::from_strength, py::arg("s"))
      .def_property_readonly("tau", &NoiseModel::tau)
      .def_property_readonly("epsilon", &NoiseModel::epsilon)
      .def_property_readonly("r", &NoiseModel::r)
      .def_property_readonly("strength", &NoiseModel::strength)
      .def_property_readonly("correct_prob", &NoiseModel::correct_prob)
      .def_property_readonly("error_prob", &NoiseModel::error_prob)
      .def("__repr__", [](const NoiseModel& n) {
        return "NoiseModel(tau=" + std::to_string(n.tau()) +
               ", epsilon=" + std::to_string(n.epsilon()) +
               ", r=" + std::to_string(n.r()) + ")";
      });

  py::class_<SignalDistribution>(m, "SignalDistribution")
      .def(py::init<const NoiseModel&>(), py::arg("noise"))
      .def("pi",
           static_cast<double (SignalDistribution::*)(int, int) const>(
               &SignalDistribution::pi),
           py::arg("action_profile"), py::arg("signal_profile"));

  py::class_<StagePayoffs>(m, "StagePayoffs")
      .def(py::init([](double G, double L) {
             return StagePayoffs{G, L};
           }),
           py::arg("G") = 0.5, py::arg("L") = 0.5)
      .def_readwrite("G", &StagePayoffs::G)
      .def_readwrite("L", &StagePayoffs::L)
      .def("realized", &StagePayoffs::realized, py::arg("own"),
           py::arg("own_signal"));

  py::class_<ExpectedPayoffs>(m, "ExpectedPayoffs")
      .def(py::init([](double R, double S, double T, double P) {
             return ExpectedPayoffs{R, S, T, P};
           }),
           py::arg("R"), py::arg("S"), py::arg("T"), py::arg("P"))
      .def_readwrite("R", &ExpectedPayoffs::R)
      .def_readwrite("S", &ExpectedPayoffs::S)
      .def_readwrite("T", &ExpectedPayoffs::T)
      .def_readwrite("P", &ExpectedPayoffs::P)
      .def("pd_ordering", &ExpectedPayoffs::pd_ordering)
      .def("row_vector", [](const ExpectedPayoffs& e) { return to_array(e.row_vector()); })
      .def("col_vector", [](const ExpectedPayoffs& e) { return to_array(e.col_vector()); })
      .def("__repr__", [](const ExpectedPayoffs& e) {
        return "ExpectedPayoffs(R=" + std::to_string(e.R) +
               ", S=" + std::to_string(e.S) + ", T=" + std::to_string(e.T) +
               ", P=" + std::to_string(e.P) + ")";
      });

  m.def(
      "expected_stage_payoffs",
      [](const StagePayoffs& payoffs, const NoiseModel& noise) {
        return expected_stage_payoffs(payoffs, noise);
      },
      py::arg("payoffs"), py::arg("noise"));

  m.def(
      "transition_matrix",
      [](const std::array<double, 4>& x, const std::array<double, 4>& y,
         const NoiseModel& noise) {
        return to_nested(transition_matrix(to_strategy(x), to_strategy(y), noise));
      },
      py::arg("x"), py::arg("y"), py::arg("noise"));

  m.def(
      "stationary_distribution",
      [](const std::array<double, 4>& x, const std::array<double, 4>& y,
         const NoiseModel& noise) {
        return to_array(stationary_distribution(
            transition_matrix(to_strategy(x), to_strategy(y), noise)));
      },
      py::arg("x"), py::arg("y"), py::arg("noise"));

  m.def(
      "stationary_payoffs",
      [](const std::array<double, 4>& x, const std::array<double, 4>& y,
         const NoiseModel& noise, const ExpectedPayoffs& payoffs) {
        return stationary_payoffs(to_strategy(x), to_strategy(y), noise, payoffs);
      },
      py::arg("x"), py::arg("y"), py::arg("noise"), py::arg("payoffs"));

  m.def(
      "spectral_gap",
      [](const std::array<double, 4>& x, const std::array<double, 4>& y,
         const NoiseModel& noise) {
        return spectral_gap(transition_matrix(to_strategy(x), to_strategy(y), noise));
      },
      py::arg("x"), py::arg("y"), py::arg("noise"));

  m.def(
      "determinant_score",
      [](const std::array<double, 4>& x, const std::array<double, 4>& y,
         const NoiseModel& noise, const std::array<double, 4>& f) {
        return determinant_score(to_strategy(x), to_strategy(y), noise,
                                 Eigen::Vector4d(f[0], f[1], f[2], f[3]));
      },
      py::arg("x"), py::arg("y"), py::arg("noise"), py::arg("f"));

  py::class_<LinearRelation>(m, "LinearRelation")
      .def(py::init([](double alpha, double beta, double gamma) {
             return LinearRelation{alpha, beta, gamma};
           }),
           py::arg("alpha"), py::arg("beta"), py::arg("gamma"))
      .def_readwrite("alpha", &LinearRelation::alpha)
      .def_readwrite("beta", &LinearRelation::beta)
      .def_readwrite("gamma", &LinearRelation::gamma)
      .def("__repr__", [](const LinearRelation& r) {
        return "LinearRelation(alpha=" + std::to_string(r.alpha) +
               ", beta=" + std::to_string(r.beta) +
               ", gamma=" + std::to_string(r.gamma) + ")";
      });

  py::class_<RelationCheck>(m, "RelationCheck")
      .def_readonly("enforced", &RelationCheck::enforced)
      .def_readonly("residual", &RelationCheck::residual);

  m.def(
      "verify_linear_relation",
      [](const std::array<double, 4>& x, const NoiseModel& noise,
         const ExpectedPayoffs& payoffs, const LinearRelation& relation) {
        return verify_linear_relation(to_strategy(x), noise, payoffs, relation);
      },
      py::arg("x"), py::arg("noise"), py::arg("payoffs"), py::arg("relation"));

  py::class_<RelationFit>(m, "RelationFit")
      .def_readonly("relation", &RelationFit::relation)
      .def_readonly("residual", &RelationFit::residual);

  m.def(
      "fit_linear_relation",
      [](const std::array<double, 4>& x, const NoiseModel& noise,
         const ExpectedPayoffs& payoffs) {
        return fit_linear_relation(to_strategy(x), noise, payoffs);
      },
      py::arg("x"), py::arg("noise"), py::arg("payoffs"));

  py::class_<StrategyCandidate>(m, "StrategyCandidate")
      .def_readonly("feasible", &StrategyCandidate::feasible)
      .def_property_readonly(
          "strategy",
          [](const StrategyCandidate& c) { return from_strategy(c.strategy); })
      .def_readonly("raw", &StrategyCandidate::raw)
      .def_readonly("violations", &StrategyCandidate::violations);

  py::class_<PinningResult>(m, "PinningResult")
      .def_readonly("candidate", &PinningResult::candidate)
      .def_readonly("relation", &PinningResult::relation)
      .def_readonly("pinned_value", &PinningResult::pinned_value);

  m.def(
      "pinning_strategy",
      [](double p1, double p4, const NoiseModel& noise,
         const ExpectedPayoffs& payoffs) {
        return pinning_strategy(p1, p4, noise, payoffs);
      },
      py::arg("p1"), py::arg("p4"), py::arg("noise"), py::arg("payoffs"));

  py::class_<ExtortionResult>(m, "ExtortionResult")
      .def_readonly("candidate", &ExtortionResult::candidate)
      .def_readonly("phi", &ExtortionResult::phi)
      .def_readonly("max_phi", &ExtortionResult::max_phi)
      .def_readonly("relation", &ExtortionResult::relation);

  m.def(
      "weak_extortion_strategy",
      [](double chi, double delta, double phi, const NoiseModel& noise,
         const ExpectedPayoffs& payoffs) {
        return weak_extortion_strategy(chi, delta, phi, noise, payoffs);
      },
      py::arg("chi"), py::arg("delta"), py::arg("phi"), py::arg("noise"),
      py::arg("payoffs"));

  m.def(
      "max_phi",
      [](double chi, double delta, const NoiseModel& noise,
         const ExpectedPayoffs& payoffs) {
        return max_phi(chi, delta, noise, payoffs);
      },
      py::arg("chi"), py::arg("delta"), py::arg("noise"), py::arg("payoffs"));

  py::class_<StrongExtortionResult>(m, "StrongExtortionResult")
      .def_readonly("feasible", &StrongExtortionResult::feasible)
      .def_property_readonly(
          "strategy",
          [](const StrongExtortionResult& r) { return from_strategy(r.strategy); })
      .def_readonly("phi", &StrongExtortionResult::phi)
      .def_readonly("error_prob", &StrongExtortionResult::error_prob)
      .def_readonly("forced_p3", &StrongExtortionResult::forced_p3)
      .def_readonly("forced_p4", &StrongExtortionResult::forced_p4)
      .def_readonly("row3_requirement", &StrongExtortionResult::row3_requirement)
      .def_readonly("violated_constraints",
                    &StrongExtortionResult::violated_constraints);

  m.def(
      "strong_extortion_feasibility",
      [](double chi, const NoiseModel& noise, const ExpectedPayoffs& payoffs) {
        return strong_extortion_feasibility(chi, noise, payoffs);
      },
      py::arg("chi"), py::arg("noise"), py::arg("payoffs"));

  py::class_<FullCooperationPayoffs>(m, "FullCooperationPayoffs")
      .def_readonly("s_x", &FullCooperationPayoffs::s_x)
      .def_readonly("s_y", &FullCooperationPayoffs::s_y)
      .def_readonly("x_star", &FullCooperationPayoffs::x_star);

  m.def("fullcoop_payoffs", &fullcoop_payoffs, py::arg("chi"), py::arg("delta"),
        py::arg("payoffs"));

  py::enum_<CellStatus>(m, "CellStatus")
      .value("Feasible", CellStatus::Feasible)
      .value("Infeasible", CellStatus::Infeasible)
      .value("Degenerate", CellStatus::Degenerate);

  py::class_<PinCell>(m, "PinCell")
      .def_readonly("p1", &PinCell::p1)
      .def_readonly("p4", &PinCell::p4)
      .def_readonly("status", &PinCell::status)
      .def_readonly("p2", &PinCell::p2)
      .def_readonly("p3", &PinCell::p3)
      .def_readonly("pinned_value", &PinCell::pinned_value);

  py::class_<PinScanResult>(m, "PinScanResult")
      .def_readonly("resolution", &PinScanResult::resolution)
      .def_readonly("cells", &PinScanResult::cells)
      .def_readonly("feasible_count", &PinScanResult::feasible_count)
      .def_readonly("min_pinned", &PinScanResult::min_pinned)
      .def_readonly("max_pinned", &PinScanResult::max_pinned);

  m.def(
      "scan_pinning",
      [](const NoiseModel& noise, const ExpectedPayoffs& payoffs,
         int resolution, int threads) {
        return scan_pinning(noise, payoffs, resolution, threads);
      },
      py::arg("noise"), py::arg("payoffs"), py::arg("resolution") = 200,
      py::arg("threads") = 0);

  py::class_<ExtortScanRow>(m, "ExtortScanRow")
      .def_readonly("chi", &ExtortScanRow::chi)
      .def_readonly("feasible", &ExtortScanRow::feasible)
      .def_readonly("delta_min", &ExtortScanRow::delta_min)
      .def_readonly("delta_max", &ExtortScanRow::delta_max)
      .def_readonly("max_phi_at_delta_min", &ExtortScanRow::max_phi_at_delta_min);

  py::class_<ExtortScanResult>(m, "ExtortScanResult")
      .def_readonly("rows", &ExtortScanResult::rows);

  m.def(
      "scan_extortion",
      [](const NoiseModel& noise, const ExpectedPayoffs& payoffs,
         const std::vector<double>& chi_grid, int delta_resolution,
         int threads) {
        return scan_extortion(noise, payoffs, chi_grid, delta_resolution, threads);
      },
      py::arg("noise"), py::arg("payoffs"), py::arg("chi_grid"),
      py::arg("delta_resolution") = 400, py::arg("threads") = 0);

  m.def("log_spaced_grid", &log_spaced_grid, py::arg("lo"), py::arg("hi"),
        py::arg("count"));

  py::class_<SimResult>(m, "SimResult")
      .def_readonly("mean_x", &SimResult::mean_x)
      .def_readonly("mean_y", &SimResult::mean_y)
      .def_readonly("se_x", &SimResult::se_x)
      .def_readonly("se_y", &SimResult::se_y)
      .def_readonly("occupancy", &SimResult::occupancy)
      .def_readonly("stages_counted", &SimResult::stages_counted)
      .def_readonly("burn_in", &SimResult::burn_in);

  m.def(
      "simulate",
      [](const std::array<double, 4>& x, const std::array<double, 4>& y,
         const NoiseModel& noise, const StagePayoffs& payoffs,
         std::uint64_t stages, std::uint64_t seed, int initial_profile) {
        if (initial_profile < 0 || initial_profile > 3)
          throw std::invalid_argument("initial_profile must be 0..3");
        SimConfig cfg;
        cfg.x = to_strategy(x);
        cfg.y = to_strategy(y);
        cfg.payoffs = payoffs;
        cfg.stages = stages;
        cfg.seed = seed;
        cfg.initial_profile = initial_profile;
        return simulate(cfg, noise);
      },
      py::arg("x"), py::arg("y"), py::arg("noise"),
      py::arg("payoffs") = StagePayoffs{},
      py::arg("stages") = std::uint64_t{1'000'000},
      py::arg("seed") = std::uint64_t{1}, py::arg("initial_profile") = 0);
}
