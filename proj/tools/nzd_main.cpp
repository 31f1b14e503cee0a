// nzd: command-line front end for the noisy-game ZD toolkit.
//
// Exit codes: 0 success, 2 bad arguments, 3 degenerate chain or pin,
// 4 requested strategy infeasible. strong-check reports its verdict with
// exit 0 either way.

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nzd/format.hpp"
#include "nzd/scan.hpp"
#include "nzd/sim.hpp"
#include "nzd/synthesis.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace nzd;

double num(double v) { return round_sig(v, 12); }

json strategy_json(const MemoryOneStrategy& s) {
  return json::array({num(s[0]), num(s[1]), num(s[2]), num(s[3])});
}

json raw_json(const std::array<double, 4>& raw) {
  return json::array({num(raw[0]), num(raw[1]), num(raw[2]), num(raw[3])});
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << text;
}

void emit_json(const json& j, const std::string& path) {
  write_output(j.dump(2) + "\n", path);
}

std::string trimmed(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// key=value lines; # starts a comment; keys: G, L, epsilon, r, noise_strength
std::map<std::string, double> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::map<std::string, double> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    const std::string where = path + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      throw std::invalid_argument(where + ": expected key=value");
    const std::string key = trimmed(line.substr(0, eq));
    const std::string val = trimmed(line.substr(eq + 1));
    if (key != "G" && key != "L" && key != "epsilon" && key != "r" &&
        key != "noise_strength")
      throw std::invalid_argument(where + ": unknown key '" + key + "'");
    char* end = nullptr;
    const double parsed = std::strtod(val.c_str(), &end);
    if (val.empty() || end != val.c_str() + val.size())
      throw std::invalid_argument(where + ": '" + val + "' is not a number");
    kv[key] = parsed;
  }
  return kv;
}

// Game parameters shared by every subcommand: (G, L) stage payoffs, the
// noise as either (epsilon, r) or a single strength, an optional direct
// expected-payoff override, and an optional config file. Command-line flags
// override config values key by key; choosing one noise parameterization on
// the command line discards the other one from the config.
struct GameArgs {
  double G = 0.5, L = 0.5;
  double epsilon = 0.0, r = 0.0, strength = 0.0;
  std::vector<double> payoff_override;
  std::string config_path;
  bool use_strength = false;

  CLI::Option* opt_G = nullptr;
  CLI::Option* opt_L = nullptr;
  CLI::Option* opt_eps = nullptr;
  CLI::Option* opt_r = nullptr;
  CLI::Option* opt_strength = nullptr;

  void attach(CLI::App* cmd, bool with_override) {
    opt_G = cmd->add_option("--G", G, "temptation increment (default 0.5)");
    opt_L = cmd->add_option("--L", L, "cooperator's loss on a bad signal (default 0.5)");
    opt_eps = cmd->add_option("--epsilon", epsilon,
                              "probability exactly one player misreads (per side)");
    opt_r = cmd->add_option("--r", r, "probability both players misread");
    opt_strength = cmd->add_option(
        "--noise-strength", strength,
        "per-player error probability epsilon + r, split 2:1 between them");
    cmd->add_option("--config", config_path,
                    "key=value file with G, L, epsilon, r, noise_strength");
    if (with_override)
      cmd->add_option("--payoffs", payoff_override,
                      "expected payoffs R,S,T,P given directly")
          ->delimiter(',');
  }

  void finalize() {
    std::map<std::string, double> cfg;
    if (!config_path.empty()) cfg = read_config(config_path);
    if (opt_G->count() == 0 && cfg.count("G")) G = cfg["G"];
    if (opt_L->count() == 0 && cfg.count("L")) L = cfg["L"];

    const bool cli_eps = opt_eps->count() > 0;
    const bool cli_r = opt_r->count() > 0;
    const bool cli_s = opt_strength->count() > 0;
    bool cfg_eps = cfg.count("epsilon") > 0;
    bool cfg_r = cfg.count("r") > 0;
    bool cfg_s = cfg.count("noise_strength") > 0;
    if (cli_eps || cli_r) cfg_s = false;
    if (cli_s) cfg_eps = cfg_r = false;

    const bool use_eps = cli_eps || cfg_eps;
    const bool use_r = cli_r || cfg_r;
    use_strength = cli_s || cfg_s;
    if ((use_eps || use_r) && use_strength)
      throw std::invalid_argument(
          "--epsilon/--r and --noise-strength are mutually exclusive");
    if (!use_eps && !use_r && !use_strength)
      throw std::invalid_argument(
          "noise is required: give --epsilon with --r, or --noise-strength");
    if (!use_strength && use_eps != use_r)
      throw std::invalid_argument("--epsilon and --r must be given together");
    if (use_eps && !cli_eps) epsilon = cfg["epsilon"];
    if (use_r && !cli_r) r = cfg["r"];
    if (use_strength && !cli_s) strength = cfg["noise_strength"];

    if (!(G > 0.0) || !(L > 0.0))
      throw std::invalid_argument("G and L must be positive");
    if (!payoff_override.empty() && payoff_override.size() != 4)
      throw std::invalid_argument("--payoffs needs exactly four values R,S,T,P");
  }

  NoiseModel noise() const {
    return use_strength ? NoiseModel::from_strength(strength)
                        : NoiseModel::from_epsilon_r(epsilon, r);
  }
  StagePayoffs stage() const { return StagePayoffs{G, L}; }
  ExpectedPayoffs expected(const NoiseModel& n) const {
    if (payoff_override.size() == 4)
      return ExpectedPayoffs{payoff_override[0], payoff_override[1],
                             payoff_override[2], payoff_override[3]};
    return expected_stage_payoffs(stage(), n);
  }
};

struct StrategyArgs {
  std::array<double, 4> v{1.0, 1.0, 1.0, 1.0};

  void attach(CLI::App* cmd, char prefix, const std::string& who, bool required) {
    static const char* kOutcome[4] = {"(C, good)", "(C, bad)", "(D, good)",
                                      "(D, bad)"};
    for (int i = 0; i < 4; ++i) {
      const std::string name =
          std::string("--") + prefix + std::to_string(i + 1);
      CLI::Option* opt = cmd->add_option(
          name, v[i], who + " cooperation probability after " + kOutcome[i]);
      if (required) opt->required();
    }
  }
  MemoryOneStrategy strategy() const { return {v[0], v[1], v[2], v[3]}; }
};

void add_relation(json& j, const LinearRelation& rel) {
  j["relation_alpha"] = num(rel.alpha);
  j["relation_beta"] = num(rel.beta);
  j["relation_gamma"] = num(rel.gamma);
}

void add_candidate(json& j, const StrategyCandidate& cand) {
  j["feasible"] = cand.feasible;
  if (cand.feasible) j["strategy"] = strategy_json(cand.strategy);
  j["raw"] = raw_json(cand.raw);
  if (!cand.violations.empty()) j["violations"] = cand.violations;
}

void setup_payoffs(CLI::App& app) {
  struct State {
    GameArgs game;
    std::string out;
  };
  auto st = std::make_shared<State>();
  CLI::App* cmd = app.add_subcommand(
      "payoffs", "expected stage payoffs after averaging over signal errors");
  st->game.attach(cmd, false);
  cmd->add_option("--out", st->out, "write to this file instead of stdout");
  cmd->callback([st] {
    st->game.finalize();
    const NoiseModel n = st->game.noise();
    const ExpectedPayoffs e = expected_stage_payoffs(st->game.stage(), n);
    json j;
    j["tau"] = num(n.tau());
    j["epsilon"] = num(n.epsilon());
    j["r"] = num(n.r());
    j["noise_strength"] = num(n.strength());
    j["r_e"] = num(e.R);
    j["s_e"] = num(e.S);
    j["t_e"] = num(e.T);
    j["p_e"] = num(e.P);
    j["pd_ordering"] = e.pd_ordering();
    emit_json(j, st->out);
  });
}

void setup_analyze(CLI::App& app) {
  struct State {
    GameArgs game;
    StrategyArgs x, y;
    bool dump = false;
    std::string out;
  };
  auto st = std::make_shared<State>();
  CLI::App* cmd = app.add_subcommand(
      "analyze",
      "score a strategy pair by the determinant and eigenvector routes");
  st->game.attach(cmd, true);
  st->x.attach(cmd, 'p', "X's", true);
  st->y.attach(cmd, 'q', "Y's", false);
  cmd->add_flag("--dump-matrix", st->dump,
                "include the transition matrix and stationary distribution");
  cmd->add_option("--out", st->out, "write to this file instead of stdout");
  cmd->callback([st] {
    st->game.finalize();
    const NoiseModel n = st->game.noise();
    const ExpectedPayoffs e = st->game.expected(n);
    const MemoryOneStrategy x = st->x.strategy();
    const MemoryOneStrategy y = st->y.strategy();

    const double sx_det = determinant_score(x, y, n, e.row_vector());
    const double sy_det = determinant_score(x, y, n, e.col_vector());
    const auto [sx_ev, sy_ev] = stationary_payoffs(x, y, n, e);
    const Eigen::Matrix4d m = transition_matrix(x, y, n);
    const RelationFit fit = fit_linear_relation(x, n, e);
    const NumericPolicy policy;

    json j;
    j["s_x_determinant"] = num(sx_det);
    j["s_y_determinant"] = num(sy_det);
    j["s_x_eigenvector"] = num(sx_ev);
    j["s_y_eigenvector"] = num(sy_ev);
    j["discrepancy"] =
        num(std::max(std::abs(sx_det - sx_ev), std::abs(sy_det - sy_ev)));
    j["spectral_gap"] = num(spectral_gap(m));
    add_relation(j, fit.relation);
    j["relation_residual"] = num(fit.residual);
    j["relation_enforced"] = fit.residual <= policy.residual_tol;
    if (st->dump) {
      json flat = json::array();
      for (int row = 0; row < 4; ++row)
        for (int col = 0; col < 4; ++col) flat.push_back(num(m(row, col)));
      j["transition_matrix"] = flat;
      const Eigen::Vector4d v = stationary_distribution(m);
      j["stationary"] = json::array({num(v(0)), num(v(1)), num(v(2)), num(v(3))});
    }
    emit_json(j, st->out);
  });
}

void setup_pin(CLI::App& app, int& rc) {
  struct State {
    GameArgs game;
    double p1 = 0.0, p4 = 0.0;
    std::string out;
  };
  auto st = std::make_shared<State>();
  CLI::App* cmd = app.add_subcommand(
      "pin", "strategy fixing the opponent's long-run payoff");
  st->game.attach(cmd, true);
  cmd->add_option("--p1", st->p1, "cooperation probability after (C, good)")
      ->required();
  cmd->add_option("--p4", st->p4, "cooperation probability after (D, bad)")
      ->required();
  cmd->add_option("--out", st->out, "write to this file instead of stdout");
  cmd->callback([st, &rc] {
    st->game.finalize();
    const NoiseModel n = st->game.noise();
    const ExpectedPayoffs e = st->game.expected(n);
    const PinningResult pin = pinning_strategy(st->p1, st->p4, n, e);
    json j;
    j["p1"] = num(st->p1);
    j["p4"] = num(st->p4);
    add_candidate(j, pin.candidate);
    add_relation(j, pin.relation);
    if (pin.candidate.feasible) j["pinned_s_y"] = num(pin.pinned_value);
    emit_json(j, st->out);
    if (!pin.candidate.feasible) rc = 4;
  });
}

void setup_extort(CLI::App& app, int& rc) {
  struct State {
    GameArgs game;
    double chi = 2.0, delta = 0.0, phi = 0.0;
    CLI::Option* opt_phi = nullptr;
    std::string out;
  };
  auto st = std::make_shared<State>();
  CLI::App* cmd = app.add_subcommand(
      "extort", "strategy forcing s_X - l = chi (s_Y - l), l = P_E + delta");
  st->game.attach(cmd, true);
  cmd->add_option("--chi", st->chi, "payoff-gain ratio, >= 1")->required();
  cmd->add_option("--delta", st->delta, "baseline lift above P_E (default 0)");
  st->opt_phi = cmd->add_option(
      "--phi", st->phi, "step size; defaults to half the feasible maximum");
  cmd->add_option("--out", st->out, "write to this file instead of stdout");
  cmd->callback([st, &rc] {
    st->game.finalize();
    const NoiseModel n = st->game.noise();
    const ExpectedPayoffs e = st->game.expected(n);
    double phi = 0.0;
    if (st->opt_phi->count() > 0) {
      if (!(st->phi > 0.0))
        throw std::invalid_argument("--phi must be positive");
      phi = st->phi;
    }
    const ExtortionResult ex =
        weak_extortion_strategy(st->chi, st->delta, phi, n, e);
    const FullCooperationPayoffs fc = fullcoop_payoffs(st->chi, st->delta, e);
    json j;
    j["chi"] = num(st->chi);
    j["delta"] = num(st->delta);
    j["baseline"] = num(e.P + st->delta);
    j["phi"] = num(ex.phi);
    j["max_phi"] = num(ex.max_phi);
    add_candidate(j, ex.candidate);
    add_relation(j, ex.relation);
    j["s_x_fullcoop"] = num(fc.s_x);
    j["s_y_fullcoop"] = num(fc.s_y);
    emit_json(j, st->out);
    if (!ex.candidate.feasible) rc = 4;
  });
}

void setup_strong_check(CLI::App& app) {
  struct State {
    GameArgs game;
    double chi = 2.0;
    std::string out;
  };
  auto st = std::make_shared<State>();
  CLI::App* cmd = app.add_subcommand(
      "strong-check",
      "test for an extortion strategy with baseline exactly P_E");
  st->game.attach(cmd, true);
  cmd->add_option("--chi", st->chi, "payoff-gain ratio, > 1")->required();
  cmd->add_option("--out", st->out, "write to this file instead of stdout");
  cmd->callback([st] {
    st->game.finalize();
    const NoiseModel n = st->game.noise();
    const ExpectedPayoffs e = st->game.expected(n);
    const StrongExtortionResult res = strong_extortion_feasibility(st->chi, n, e);
    json j;
    j["chi"] = num(st->chi);
    j["error_prob"] = num(res.error_prob);
    j["verdict"] = res.feasible ? "FEASIBLE" : "INFEASIBLE";
    j["feasible"] = res.feasible;
    if (res.feasible) {
      j["strategy"] = strategy_json(res.strategy);
      j["phi"] = num(res.phi);
    } else {
      j["forced_p3"] = num(res.forced_p3);
      j["forced_p4"] = num(res.forced_p4);
      j["row3_requirement"] = num(res.row3_requirement);
      j["violated_constraints"] = res.violated_constraints;
    }
    emit_json(j, st->out);
  });
}

void setup_pin_scan(CLI::App& app) {
  struct State {
    GameArgs game;
    int grid = 200;
    int threads = 0;
    std::string format = "csv";
    std::string out;
  };
  auto st = std::make_shared<State>();
  CLI::App* cmd = app.add_subcommand(
      "pin-scan", "pinning feasibility over the (p1, p4) grid, CSV per cell");
  st->game.attach(cmd, true);
  cmd->add_option("--grid", st->grid, "grid resolution per axis (default 200)");
  cmd->add_option("--threads", st->threads, "worker threads, 0 = auto");
  cmd->add_option("--format", st->format, "csv (cells) or json (summary)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", st->out, "write to this file instead of stdout");
  cmd->callback([st] {
    st->game.finalize();
    const NoiseModel n = st->game.noise();
    const ExpectedPayoffs e = st->game.expected(n);
    const PinScanResult res = scan_pinning(n, e, st->grid, st->threads);
    if (st->format == "csv") {
      std::ostringstream ss;
      write_pin_csv(ss, res);
      write_output(ss.str(), st->out);
      return;
    }
    json j;
    j["resolution"] = res.resolution;
    j["feasible_count"] = res.feasible_count;
    j["min_pinned_s_y"] = num(res.min_pinned);
    j["max_pinned_s_y"] = num(res.max_pinned);
    emit_json(j, st->out);
  });
}

void setup_extort_scan(CLI::App& app) {
  struct State {
    GameArgs game;
    int grid = 100;
    double chi_min = 1.0, chi_max = 20.0;
    int delta_resolution = 400;
    int threads = 0;
    std::string format = "csv";
    std::string out;
  };
  auto st = std::make_shared<State>();
  CLI::App* cmd = app.add_subcommand(
      "extort-scan",
      "feasible generosity window [delta_min, delta_max] per chi, CSV per row");
  st->game.attach(cmd, true);
  cmd->add_option("--grid", st->grid,
                  "number of log-spaced chi values (default 100)");
  cmd->add_option("--chi-min", st->chi_min, "smallest chi (default 1)");
  cmd->add_option("--chi-max", st->chi_max, "largest chi (default 20)");
  cmd->add_option("--delta-resolution", st->delta_resolution,
                  "delta grid points before bisection (default 400)");
  cmd->add_option("--threads", st->threads, "worker threads, 0 = auto");
  cmd->add_option("--format", st->format, "csv (rows) or json (summary)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", st->out, "write to this file instead of stdout");
  cmd->callback([st] {
    st->game.finalize();
    if (st->grid < 1)
      throw std::invalid_argument("--grid must be at least 1");
    if (!(st->chi_min >= 1.0) || !(st->chi_max >= st->chi_min))
      throw std::invalid_argument("need 1 <= chi-min <= chi-max");
    const NoiseModel n = st->game.noise();
    const ExpectedPayoffs e = st->game.expected(n);
    const std::vector<double> grid =
        st->grid == 1 ? std::vector<double>{st->chi_min}
                      : log_spaced_grid(st->chi_min, st->chi_max, st->grid);
    const ExtortScanResult res =
        scan_extortion(n, e, grid, st->delta_resolution, st->threads);
    if (st->format == "csv") {
      std::ostringstream ss;
      write_extort_csv(ss, res);
      write_output(ss.str(), st->out);
      return;
    }
    std::size_t feasible = 0;
    for (const ExtortScanRow& row : res.rows) feasible += row.feasible ? 1 : 0;
    json j;
    j["rows"] = res.rows.size();
    j["feasible_rows"] = feasible;
    emit_json(j, st->out);
  });
}

void setup_simulate(CLI::App& app) {
  struct State {
    GameArgs game;
    StrategyArgs x, y;
    std::uint64_t stages = 1'000'000;
    std::uint64_t seed = 1;
    std::string initial = "CC";
    std::string out;
  };
  auto st = std::make_shared<State>();
  CLI::App* cmd = app.add_subcommand(
      "simulate", "Monte Carlo play of the noisy repeated game");
  st->game.attach(cmd, false);
  st->x.attach(cmd, 'p', "X's", true);
  st->y.attach(cmd, 'q', "Y's", false);
  cmd->add_option("--stages", st->stages, "stage count (default 1000000)");
  cmd->add_option("--seed", st->seed, "RNG seed (default 1)");
  cmd->add_option("--initial", st->initial,
                  "first-stage action profile: CC, CD, DC or DD")
      ->check(CLI::IsMember({"CC", "CD", "DC", "DD"}));
  cmd->add_option("--out", st->out, "write to this file instead of stdout");
  cmd->callback([st] {
    st->game.finalize();
    if (st->stages == 0)
      throw std::invalid_argument("--stages must be at least 1");
    const NoiseModel n = st->game.noise();
    SimConfig cfg;
    cfg.x = st->x.strategy();
    cfg.y = st->y.strategy();
    cfg.payoffs = st->game.stage();
    cfg.stages = st->stages;
    cfg.seed = st->seed;
    const std::string profiles[4] = {"CC", "CD", "DC", "DD"};
    for (int i = 0; i < 4; ++i)
      if (st->initial == profiles[i]) cfg.initial_profile = i;
    const SimResult res = simulate(cfg, n);
    json j;
    j["stages"] = cfg.stages;
    j["burn_in"] = res.burn_in;
    j["stages_counted"] = res.stages_counted;
    j["seed"] = cfg.seed;
    j["initial"] = st->initial;
    j["mean_x"] = num(res.mean_x);
    j["mean_y"] = num(res.mean_y);
    j["se_x"] = num(res.se_x);
    j["se_y"] = num(res.se_y);
    j["occupancy"] = json::array({num(res.occupancy[0]), num(res.occupancy[1]),
                                  num(res.occupancy[2]), num(res.occupancy[3])});
    emit_json(j, st->out);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zero-determinant strategies for the repeated prisoner's "
               "dilemma with perception errors"};
  app.require_subcommand(1);
  int rc = 0;

  setup_payoffs(app);
  setup_analyze(app);
  setup_pin(app, rc);
  setup_extort(app, rc);
  setup_strong_check(app);
  setup_pin_scan(app);
  setup_extort_scan(app);
  setup_simulate(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const NonUniqueStationaryError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const DegenerateChainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const DegeneratePinError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const SingularNoiseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return rc;
}
