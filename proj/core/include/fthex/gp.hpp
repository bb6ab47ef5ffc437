#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fthex/dynamics.hpp"
#include "fthex/se3.hpp"

// Gaussian-process regression over the 6-dimensional disturbance (f_v, f_omega),
// with the dataset lifecycle (grow / sliding-window forgetting under a finite
// switch budget), marginal-likelihood hyperparameter fitting, and the
// high-probability error-bound machinery: information gain gamma, confidence
// multiplier beta, and the state-dependent error radius rho_bar.
//
// Inputs are rigid-body states embedded as 18-vectors (9 rotation entries
// row-major, position, omega, v), normalized componentwise by configured
// scales so that a stationary squared-exponential kernel is meaningful.

namespace fthex {

inline constexpr int kEncodingDim = 18;

struct EncodingScales {
  double rotation = 1.0;
  double position = 2.0;  // m
  double omega = 2.0;     // rad/s
  double velocity = 2.0;  // m/s

  Eigen::VectorXd vector() const;
};

/// Embed a state as a normalized 18-vector.
Eigen::VectorXd encode_state(const RigidState& s, const EncodingScales& scales);

/// Inverse of encode_state; the rotation block is reprojected onto SO(3).
RigidState decode_state(const Eigen::VectorXd& x, const EncodingScales& scales);

struct Hyperparams {
  Eigen::VectorXd lengthscales;  // per input dimension, > 0
  double signal_var = 1.0;       // sigma_f^2
  double noise_var = 1e-4;       // sigma^2

  static Hyperparams isotropic(int dim, double lengthscale, double signal_var,
                               double noise_var);
  void validate(int dim) const;  // throws std::invalid_argument
};

/// Squared-exponential (ARD) kernel
///   k(a, b) = sigma_f^2 exp(-1/2 sum_d (a_d - b_d)^2 / l_d^2).
double kernel_se(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Hyperparams& h);

enum class DatasetPolicy { kGrow, kSlidingWindow };
enum class UpdateStatus { kOk, kBudgetExhausted };

/// Training data D_n = {(x_i, y_i)}. `index` counts dataset switches (every
/// accepted update is one); once it reaches switch_budget further updates are
/// refused and the dataset is frozen.
struct Dataset {
  Eigen::MatrixXd inputs;   // dim x N, one column per point
  Eigen::MatrixXd outputs;  // N x 6
  std::vector<double> stamps;
  std::size_t capacity = 200;
  std::uint64_t index = 0;
  std::uint64_t switch_budget = 1000000;

  int size() const { return static_cast<int>(inputs.cols()); }
  int dim() const { return static_cast<int>(inputs.rows()); }
};

struct TrainingPoint {
  Eigen::VectorXd input;
  Vec6 output;
  double stamp = 0.0;
};

/// Append a point under the given policy. Sliding-window evicts the oldest
/// point when over capacity; grow never evicts. Refused (no change) once the
/// switch budget is exhausted.
UpdateStatus dataset_update(Dataset& d, const TrainingPoint& point, DatasetPolicy policy);

/// Dataset exchange format: one row per point, columns q0..q{dim-1}, y0..y5, t.
void save_dataset_csv(const Dataset& d, const std::string& path);
Dataset load_dataset_csv(const std::string& path);

/// Optional prior mean over the 6 outputs; empty means zero.
using MeanFn = std::function<Vec6(const Eigen::VectorXd&)>;

struct Prediction {
  Vec6 mean = Vec6::Zero();
  Vec6 var = Vec6::Zero();
};

/// Immutable GP posterior over the 6 outputs. Either one shared kernel head
/// for all outputs or one head per output. Thread-safe for concurrent reads;
/// a new generation is built after every dataset change.
class GpModel {
 public:
  /// heads.size() must be 1 (shared) or 6 (per-output). The Gram factorization
  /// escalates diagonal jitter 1e-10 -> 1e-8 -> 1e-6 before giving up with
  /// NumericError.
  static GpModel build(const Dataset& d, const std::vector<Hyperparams>& heads,
                       MeanFn mean = {});

  Prediction predict(const Eigen::VectorXd& x) const;

  int size() const { return n_; }
  int dim() const { return dim_; }
  std::uint64_t source_index() const { return source_index_; }
  const Hyperparams& head_for_output(int output) const;
  /// Count of negative predictive variances clamped to zero so far.
  std::uint64_t negative_variance_clamps() const { return clamp_count_.load(); }

  GpModel(GpModel&& other) noexcept;
  GpModel& operator=(GpModel&& other) noexcept;
  GpModel(const GpModel&) = delete;
  GpModel& operator=(const GpModel&) = delete;

 private:
  GpModel() = default;

  struct Head {
    Hyperparams h;
    Eigen::MatrixXd chol;    // lower factor of K + sigma^2 I (+ jitter)
    Eigen::MatrixXd alpha;   // N x (#outputs served by this head)
    std::vector<int> outputs;
  };

  std::vector<Head> heads_;
  Eigen::MatrixXd inputs_;  // dim x N copy
  MeanFn mean_;
  int n_ = 0;
  int dim_ = 0;
  std::uint64_t source_index_ = 0;
  mutable std::atomic<std::uint64_t> clamp_count_{0};
};

/// Sum over the 6 outputs of the Gaussian log evidence.
double log_marginal_likelihood(const Dataset& d, const std::vector<Hyperparams>& heads,
                               const MeanFn& mean = {});

struct FitResult {
  std::vector<Hyperparams> heads;
  bool improved = false;
  double log_likelihood = 0.0;
};

/// Multistart gradient ascent on the log marginal likelihood in log-parameter
/// space (default 4 starts; deterministic given seed). budget caps gradient
/// steps per start; budget 0 returns init unchanged. If no start improves on
/// init, returns init with improved = false.
FitResult fit_hyperparameters(const Dataset& d, const std::vector<Hyperparams>& init,
                              int budget, std::uint64_t seed = 0, int n_starts = 4);

struct InfoGainResult {
  double value = 0.0;             // 1/2 log det(I + sigma^-2 K_S)
  std::vector<int> selected;      // candidate indices, selection order
  std::string method;
};

/// Greedy submodular maximization of the information gain over subsets of the
/// candidate columns of size k_max; within (1 - 1/e) of the exact maximum.
InfoGainResult info_gain_greedy(const Eigen::MatrixXd& candidates, const Hyperparams& h,
                                double noise_var, int k_max);

/// Exact maximum by exhaustive enumeration; candidates.cols() must be <= 12.
InfoGainResult info_gain_exhaustive(const Eigen::MatrixXd& candidates, const Hyperparams& h,
                                    double noise_var, int k_max);

/// Exhaustive for up to 12 candidates, greedy beyond.
InfoGainResult info_gain(const Eigen::MatrixXd& candidates, const Hyperparams& h,
                         double noise_var, int k_max);

/// Confidence multiplier, per output j:
///   beta_j = sqrt(2 B_j^2 + 300 gamma_j ln^3((N+1) / (1 - delta^(1/6)))).
/// Throws std::domain_error unless delta lies in (0, 1).
Vec6 beta_vector(int n_points, const Vec6& gamma, const Vec6& rkhs_bound, double delta);

/// Everything needed to evaluate the high-probability error radius.
struct BoundBundle {
  Vec6 beta = Vec6::Zero();
  Vec6 gamma = Vec6::Zero();
  Vec6 rkhs_bound = Vec6::Zero();
  double delta = 0.9;
  int n_points = 0;
};

/// rho_bar(x) = || beta elementwise* sqrt(predictive variance at x) ||_2.
double rho_bar(const GpModel& model, const Vec6& beta, const Eigen::VectorXd& x);

}  // namespace fthex
