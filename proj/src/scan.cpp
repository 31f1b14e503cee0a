#include "nzd/scan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "nzd/errors.hpp"
#include "nzd/format.hpp"

namespace nzd {

namespace {

int pick_threads(int requested, std::size_t jobs) {
  if (requested <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    requested = static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
  }
  return static_cast<int>(std::min<std::size_t>(requested, std::max<std::size_t>(jobs, 1)));
}

// index-addressed parallel loop; workers own disjoint strided slots, so the
// output layout never depends on scheduling
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body) {
  const int n = pick_threads(threads, count);
  if (n <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (int t = 0; t < n; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += n) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

PinScanResult scan_pinning(const NoiseModel& noise,
                           const ExpectedPayoffs& payoffs, int resolution,
                           int threads, const NumericPolicy& policy) {
  if (resolution < 2)
    throw std::invalid_argument("pin scan resolution must be at least 2");
  payoffs.require_pd_ordering();

  PinScanResult result;
  result.resolution = resolution;
  result.cells.resize(static_cast<std::size_t>(resolution) * resolution);
  const double step = 1.0 / (resolution - 1);

  parallel_for(result.cells.size(), threads, [&](std::size_t k) {
    const int i = static_cast<int>(k) / resolution;
    const int j = static_cast<int>(k) % resolution;
    PinCell& cell = result.cells[k];
    cell.p1 = i * step;
    cell.p4 = j * step;
    if (1.0 - cell.p1 + cell.p4 == 0.0) {
      cell.status = CellStatus::Degenerate;
      return;
    }
    const PinningResult pin =
        pinning_strategy(cell.p1, cell.p4, noise, payoffs, policy);
    cell.status = pin.candidate.feasible ? CellStatus::Feasible
                                         : CellStatus::Infeasible;
    cell.p2 = pin.candidate.raw[1];
    cell.p3 = pin.candidate.raw[2];
    cell.pinned_value = pin.pinned_value;
  });

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const PinCell& cell : result.cells) {
    if (cell.status != CellStatus::Feasible) continue;
    ++result.feasible_count;
    lo = std::min(lo, cell.pinned_value);
    hi = std::max(hi, cell.pinned_value);
  }
  if (result.feasible_count > 0) {
    result.min_pinned = lo;
    result.max_pinned = hi;
  }
  return result;
}

namespace {

// shrink [bad, good] around the feasibility edge, keeping the feasible end
double bisect_edge(double bad, double good,
                   const std::function<bool(double)>& feasible, double tol) {
  while (std::abs(good - bad) > tol) {
    const double mid = 0.5 * (bad + good);
    if (feasible(mid))
      good = mid;
    else
      bad = mid;
  }
  return good;
}

}  // namespace

ExtortScanResult scan_extortion(const NoiseModel& noise,
                                const ExpectedPayoffs& payoffs,
                                const std::vector<double>& chi_grid,
                                int delta_resolution, int threads,
                                const NumericPolicy& policy) {
  if (delta_resolution < 1)
    throw std::invalid_argument("delta resolution must be at least 1");
  payoffs.require_pd_ordering();
  const double cap = payoffs.R - payoffs.P;  // largest baseline shift worth probing

  ExtortScanResult result;
  result.rows.resize(chi_grid.size());

  parallel_for(chi_grid.size(), threads, [&](std::size_t k) {
    const double chi = chi_grid[k];
    ExtortScanRow& row = result.rows[k];
    row.chi = chi;
    const auto feasible = [&](double delta) {
      return max_phi(chi, delta, noise, payoffs) > 0.0;
    };

    int first = -1, last = -1;
    for (int i = 0; i <= delta_resolution; ++i) {
      if (feasible(cap * i / delta_resolution)) {
        if (first < 0) first = i;
        last = i;
      }
    }
    if (first < 0) {
      row.feasible = false;
      return;
    }
    row.feasible = true;
    const double step = cap / delta_resolution;
    row.delta_min =
        first == 0 ? 0.0
                   : bisect_edge((first - 1) * step, first * step, feasible,
                                 policy.bisection_tol);
    row.delta_max =
        last == delta_resolution
            ? cap
            : bisect_edge((last + 1) * step, last * step, feasible,
                          policy.bisection_tol);
    row.max_phi_at_delta_min = max_phi(chi, row.delta_min, noise, payoffs);
  });
  return result;
}

std::vector<double> log_spaced_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo))
    throw std::invalid_argument("log grid needs 0 < lo <= hi");
  if (count < 1) throw std::invalid_argument("log grid needs count >= 1");
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double ratio = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) grid[i] = lo * std::exp(ratio * i);
  grid.back() = hi;  // kill the last roundoff step
  return grid;
}

void write_pin_csv(std::ostream& out, const PinScanResult& scan) {
  out << "p1,p4,feasible,p2,p3,pinned_sY\n";
  for (const PinCell& cell : scan.cells) {
    if (cell.status == CellStatus::Degenerate) continue;
    out << format_sig(cell.p1) << ',' << format_sig(cell.p4) << ','
        << (cell.status == CellStatus::Feasible ? '1' : '0') << ','
        << format_sig(cell.p2) << ',' << format_sig(cell.p3) << ',';
    if (cell.status == CellStatus::Feasible) out << format_sig(cell.pinned_value);
    out << '\n';
  }
}

void write_extort_csv(std::ostream& out, const ExtortScanResult& scan) {
  out << "chi,feasible,delta_min,delta_max,max_phi_at_delta_min\n";
  for (const ExtortScanRow& row : scan.rows) {
    out << format_sig(row.chi) << ',' << (row.feasible ? '1' : '0') << ',';
    if (row.feasible) {
      out << format_sig(row.delta_min) << ',' << format_sig(row.delta_max)
          << ',' << format_sig(row.max_phi_at_delta_min);
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

}  // namespace nzd
