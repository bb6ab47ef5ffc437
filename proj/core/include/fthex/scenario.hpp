#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fthex/config.hpp"

// Closed-loop scenario execution: physics stepped at dt, the attitude loop at
// 200 Hz and the position loop at 20 Hz (zero-order hold between ticks), fault
// injection with a detection-latency oracle, GP data collection and model
// generations, and the bound bookkeeping used by the Monte Carlo sweeps.

namespace fthex {

struct LogRow {
  double t = 0.0;
  Mat3 rotation = Mat3::Identity();
  Vec3 position = Vec3::Zero();
  Vec3 omega = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  Vec3 p_d = Vec3::Zero();
  Vec3 p_d_dot = Vec3::Zero();
  Mat3 r_d = Mat3::Identity();
  double yaw_d = 0.0;
  double f_z_cmd = 0.0;
  Vec3 u1 = Vec3::Zero();
  Vec3 u2 = Vec3::Zero();
  Vec6 pwm = Vec6::Zero();
  int sat_mask = 0;
  Vec6 gp_mean = Vec6::Zero();
  Vec6 gp_var = Vec6::Zero();
  double rho = 0.0;
  Vec3 e = Vec3::Zero();
  Vec3 z = Vec3::Zero();
  Vec3 chi = Vec3::Zero();
  Vec3 omega_err = Vec3::Zero();
  double psi = 0.0;
  Vec6 f_true = Vec6::Zero();
  bool fault_active = false;
  bool reconfigured = false;
  bool gp_active = false;
  bool degenerate = false;

  double zeta_norm() const { return std::sqrt(e.squaredNorm() + z.squaredNorm()); }
  double eta_norm() const { return std::sqrt(chi.squaredNorm() + omega_err.squaredNorm()); }
};

struct ScenarioLog {
  std::vector<LogRow> rows;
  double dt = 1e-3;
  bool aborted = false;
  std::string abort_reason;

  double fault_time = -1.0;     // -1 when no fault configured / not reached
  double reconfig_time = -1.0;

  Dataset dataset;          // final GP dataset (empty when collection off)
  BoundBundle bounds;       // final-generation bound machinery
  double max_rho = 0.0;     // max rho_bar over visited states, final model
  double b_n = std::numeric_limits<double>::quiet_NaN();
  double c_n = std::numeric_limits<double>::quiet_NaN();
  double hover_pwm = 0.0;   // nominal hover PWM percent (diagnostic)
  int model_builds = 0;
};

ScenarioLog run_scenario(const ScenarioConfig& cfg);

struct MetricsReport {
  Vec3 position_mse_axes = Vec3::Zero();  // m^2, world frame
  double position_mse = 0.0;              // m^2, sum over axes
  double attitude_mse = 0.0;              // mean Psi over the window
  double pwm_roughness = 0.0;             // mean |delta pwm| per tick, %/tick
  double bound_violation_fraction = 0.0;  // ||zeta|| > b_n within the window
  double settling_time = 0.0;             // s, last entry into the 5 cm ball
  double window_start = 0.0;
  double window_end = 0.0;
};

/// Metrics over [t_start, t_end] of the log.
MetricsReport compute_metrics(const ScenarioLog& log, double t_start, double t_end);

/// Post-failure analysis window: reconfiguration + settle margin to the end
/// (no fault: second half of the run).
std::pair<double, double> analysis_window(const ScenarioLog& log, double settle_margin);

struct CompareResult {
  MetricsReport without_gp;
  MetricsReport with_gp;
  double improvement_percent = 0.0;  // (mse_off - mse_on) / mse_off * 100
};

/// Runs the scenario twice with identical seed and fault, toggling only the
/// GP compensation flag.
CompareResult compare_runs(const ScenarioConfig& cfg);

struct BoundCheck {
  bool satisfied = false;
  double settle_time = -1.0;  // earliest T with the bound holding for t >= T
  double bound = 0.0;
  double worst_suffix = 0.0;  // sup of the error norm over [T, end]
};

/// Earliest T such that err(t) <= bound for all t >= T, required to leave at
/// least min_certified_window seconds of certified tail.
BoundCheck check_ultimate_bound(const std::vector<double>& times,
                                const std::vector<double>& err_norms, double bound,
                                double min_certified_window = 5.0);

struct MonteCarloRun {
  std::uint64_t seed = 0;
  bool ok = false;
  BoundCheck position;
  BoundCheck attitude;
  double b_n = 0.0;
  double c_n = 0.0;
  double max_rho = 0.0;
};

struct MonteCarloReport {
  int n_seeds = 0;
  double pass_fraction_position = 0.0;
  double pass_fraction_attitude = 0.0;
  std::vector<MonteCarloRun> runs;
};

/// Independent seeded runs; each seed varies the sensor-noise streams and the
/// disturbance realization (componentwise scale jitter) only. threads = 0
/// picks hardware concurrency.
MonteCarloReport monte_carlo(const ScenarioConfig& cfg, int n_seeds, int threads = 0);

}  // namespace fthex
