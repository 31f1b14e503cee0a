#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "nzd/game_model.hpp"
#include "nzd/synthesis.hpp"

namespace nzd {

enum class CellStatus { Feasible, Infeasible, Degenerate };

struct PinCell {
  double p1 = 0.0, p4 = 0.0;
  CellStatus status = CellStatus::Infeasible;
  double p2 = 0.0, p3 = 0.0;      // raw closed-form values
  double pinned_value = 0.0;      // meaningful unless degenerate
};

struct PinScanResult {
  int resolution = 0;
  std::vector<PinCell> cells;  // row-major, p1 outer, p4 inner
  std::size_t feasible_count = 0;
  double min_pinned = 0.0, max_pinned = 0.0;  // over feasible cells
};

// Uniform (resolution x resolution) grid over (p1, p4) in [0,1]^2 including
// both endpoints. threads = 0 picks a hardware-based default; output is
// deterministic regardless.
PinScanResult scan_pinning(const NoiseModel& noise,
                           const ExpectedPayoffs& payoffs, int resolution,
                           int threads = 0, const NumericPolicy& policy = {});

struct ExtortScanRow {
  double chi = 1.0;
  bool feasible = false;
  double delta_min = 0.0, delta_max = 0.0;
  double max_phi_at_delta_min = 0.0;
};

struct ExtortScanResult {
  std::vector<ExtortScanRow> rows;
};

// For each chi, bracket the feasible delta interval inside [0, R - P] on a
// uniform delta grid, then tighten both edges by bisection on
// max_phi(chi, delta) > 0.
ExtortScanResult scan_extortion(const NoiseModel& noise,
                                const ExpectedPayoffs& payoffs,
                                const std::vector<double>& chi_grid,
                                int delta_resolution = 400, int threads = 0,
                                const NumericPolicy& policy = {});

std::vector<double> log_spaced_grid(double lo, double hi, int count);

// CSV emitters, one row per cell / chi, 12 significant digits.
void write_pin_csv(std::ostream& out, const PinScanResult& scan);
void write_extort_csv(std::ostream& out, const ExtortScanResult& scan);

}  // namespace nzd
