#include "fthex/gp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fthex/errors.hpp"

namespace fthex {

Eigen::VectorXd EncodingScales::vector() const {
  Eigen::VectorXd s(kEncodingDim);
  s.segment(0, 9).setConstant(rotation);
  s.segment(9, 3).setConstant(position);
  s.segment(12, 3).setConstant(omega);
  s.segment(15, 3).setConstant(velocity);
  return s;
}

Eigen::VectorXd encode_state(const RigidState& s, const EncodingScales& scales) {
  Eigen::VectorXd x(kEncodingDim);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      x(3 * r + c) = s.rotation(r, c);
    }
  }
  x.segment(9, 3) = s.position;
  x.segment(12, 3) = s.omega;
  x.segment(15, 3) = s.v;
  return x.cwiseQuotient(scales.vector());
}

RigidState decode_state(const Eigen::VectorXd& x, const EncodingScales& scales) {
  if (x.size() != kEncodingDim) {
    throw std::invalid_argument("decode_state: expected an 18-vector");
  }
  const Eigen::VectorXd raw = x.cwiseProduct(scales.vector());
  RigidState s;
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r(i, j) = raw(3 * i + j);
    }
  }
  s.rotation = reproject(r);
  s.position = raw.segment(9, 3);
  s.omega = raw.segment(12, 3);
  s.v = raw.segment(15, 3);
  return s;
}

Hyperparams Hyperparams::isotropic(int dim, double lengthscale, double signal_var,
                                   double noise_var) {
  Hyperparams h;
  h.lengthscales = Eigen::VectorXd::Constant(dim, lengthscale);
  h.signal_var = signal_var;
  h.noise_var = noise_var;
  return h;
}

void Hyperparams::validate(int dim) const {
  if (lengthscales.size() != dim) {
    throw std::invalid_argument("Hyperparams: lengthscale dimension mismatch");
  }
  if (!(lengthscales.array() > 0.0).all() || !lengthscales.allFinite()) {
    throw std::invalid_argument("Hyperparams: lengthscales must be positive and finite");
  }
  if (!(signal_var > 0.0) || !std::isfinite(signal_var)) {
    throw std::invalid_argument("Hyperparams: signal variance must be positive");
  }
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) {
    throw std::invalid_argument("Hyperparams: noise variance must be positive");
  }
}

double kernel_se(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Hyperparams& h) {
  const Eigen::ArrayXd r = (a - b).array() / h.lengthscales.array();
  return h.signal_var * std::exp(-0.5 * r.square().sum());
}

UpdateStatus dataset_update(Dataset& d, const TrainingPoint& point, DatasetPolicy policy) {
  if (d.index >= d.switch_budget) {
    return UpdateStatus::kBudgetExhausted;
  }
  const int dim = static_cast<int>(point.input.size());
  if (d.size() == 0) {
    d.inputs.resize(dim, 0);
    d.outputs.resize(0, 6);
  } else if (d.dim() != dim) {
    throw std::invalid_argument("dataset_update: input dimension mismatch");
  }

  const int n = d.size();
  d.inputs.conservativeResize(dim, n + 1);
  d.inputs.col(n) = point.input;
  d.outputs.conservativeResize(n + 1, 6);
  d.outputs.row(n) = point.output.transpose();
  d.stamps.push_back(point.stamp);

  if (policy == DatasetPolicy::kSlidingWindow &&
      d.size() > static_cast<int>(d.capacity)) {
    const int keep = d.size() - 1;
    d.inputs = d.inputs.rightCols(keep).eval();
    d.outputs = d.outputs.bottomRows(keep).eval();
    d.stamps.erase(d.stamps.begin());
  }
  d.index += 1;
  return UpdateStatus::kOk;
}

void save_dataset_csv(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_dataset_csv: cannot open '" + path + "'");
  }
  const int dim = d.size() > 0 ? d.dim() : kEncodingDim;
  for (int i = 0; i < dim; ++i) {
    out << "q" << i << ",";
  }
  for (int i = 0; i < 6; ++i) {
    out << "y" << i << ",";
  }
  out << "t\n";
  char buf[32];
  for (int j = 0; j < d.size(); ++j) {
    for (int i = 0; i < dim; ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", d.inputs(i, j));
      out << buf << ",";
    }
    for (int i = 0; i < 6; ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", d.outputs(j, i));
      out << buf << ",";
    }
    std::snprintf(buf, sizeof(buf), "%.17g", d.stamps[static_cast<std::size_t>(j)]);
    out << buf << "\n";
  }
}

Dataset load_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_dataset_csv: cannot open '" + path + "'");
  }
  std::string header;
  if (!std::getline(in, header)) {
    throw std::runtime_error("load_dataset_csv: empty file '" + path + "'");
  }
  int dim = 0;
  {
    std::stringstream ss(header);
    std::string col;
    while (std::getline(ss, col, ',')) {
      if (!col.empty() && col[0] == 'q') {
        ++dim;
      }
    }
  }
  if (dim == 0) {
    throw std::runtime_error("load_dataset_csv: no input columns in header");
  }

  std::vector<Eigen::VectorXd> xs;
  std::vector<Vec6> ys;
  std::vector<double> ts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::stringstream ss(line);
    std::string field;
    std::vector<double> vals;
    while (std::getline(ss, field, ',')) {
      vals.push_back(std::stod(field));
    }
    if (static_cast<int>(vals.size()) != dim + 7) {
      throw std::runtime_error("load_dataset_csv: malformed row in '" + path + "'");
    }
    Eigen::VectorXd x(dim);
    for (int i = 0; i < dim; ++i) {
      x(i) = vals[static_cast<std::size_t>(i)];
    }
    Vec6 y;
    for (int i = 0; i < 6; ++i) {
      y(i) = vals[static_cast<std::size_t>(dim + i)];
    }
    xs.push_back(x);
    ys.push_back(y);
    ts.push_back(vals.back());
  }

  Dataset d;
  const int n = static_cast<int>(xs.size());
  d.inputs.resize(dim, n);
  d.outputs.resize(n, 6);
  for (int j = 0; j < n; ++j) {
    d.inputs.col(j) = xs[static_cast<std::size_t>(j)];
    d.outputs.row(j) = ys[static_cast<std::size_t>(j)].transpose();
  }
  d.stamps = ts;
  d.index = static_cast<std::uint64_t>(n);
  d.capacity = std::max<std::size_t>(d.capacity, static_cast<std::size_t>(n));
  return d;
}

namespace {

Eigen::MatrixXd gram_matrix(const Eigen::MatrixXd& x, const Hyperparams& h) {
  const int n = static_cast<int>(x.cols());
  Eigen::MatrixXd k(n, n);
  for (int i = 0; i < n; ++i) {
    k(i, i) = h.signal_var;
    for (int j = i + 1; j < n; ++j) {
      k(i, j) = kernel_se(x.col(i), x.col(j), h);
      k(j, i) = k(i, j);
    }
  }
  return k;
}

// Jitter escalation; throws NumericError after the last level fails.
Eigen::MatrixXd chol_with_jitter(Eigen::MatrixXd k_noisy) {
  static constexpr double kJitters[] = {0.0, 1e-10, 1e-8, 1e-6};
  const int n = static_cast<int>(k_noisy.rows());
  for (double jitter : kJitters) {
    Eigen::MatrixXd k = k_noisy + jitter * Eigen::MatrixXd::Identity(n, n);
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() == Eigen::Success) {
      return llt.matrixL();
    }
  }
  throw NumericError("gp: Gram matrix factorization failed after jitter escalation");
}

Eigen::MatrixXd mean_matrix(const Eigen::MatrixXd& x, const MeanFn& mean) {
  const int n = static_cast<int>(x.cols());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, 6);
  if (mean) {
    for (int j = 0; j < n; ++j) {
      m.row(j) = mean(x.col(j)).transpose();
    }
  }
  return m;
}

void check_heads(const Dataset& d, const std::vector<Hyperparams>& heads) {
  if (heads.size() != 1 && heads.size() != 6) {
    throw std::invalid_argument("gp: expected 1 shared head or 6 per-output heads");
  }
  for (const auto& h : heads) {
    h.validate(d.dim());
  }
}

}  // namespace

GpModel GpModel::build(const Dataset& d, const std::vector<Hyperparams>& heads,
                       MeanFn mean) {
  if (d.size() < 1) {
    throw std::invalid_argument("GpModel::build: dataset must hold at least one point");
  }
  check_heads(d, heads);

  GpModel m;
  m.inputs_ = d.inputs;
  m.mean_ = mean;
  m.n_ = d.size();
  m.dim_ = d.dim();
  m.source_index_ = d.index;

  const Eigen::MatrixXd prior_mean = mean_matrix(d.inputs, mean);
  const Eigen::MatrixXd residual = d.outputs - prior_mean;

  for (std::size_t hi = 0; hi < heads.size(); ++hi) {
    Head head;
    head.h = heads[hi];
    if (heads.size() == 1) {
      head.outputs = {0, 1, 2, 3, 4, 5};
    } else {
      head.outputs = {static_cast<int>(hi)};
    }
    Eigen::MatrixXd k = gram_matrix(d.inputs, head.h);
    k.diagonal().array() += head.h.noise_var;
    head.chol = chol_with_jitter(std::move(k));

    head.alpha.resize(m.n_, static_cast<int>(head.outputs.size()));
    for (std::size_t oi = 0; oi < head.outputs.size(); ++oi) {
      const int out = head.outputs[oi];
      Eigen::VectorXd rhs = residual.col(out);
      head.chol.triangularView<Eigen::Lower>().solveInPlace(rhs);
      head.chol.transpose().triangularView<Eigen::Upper>().solveInPlace(rhs);
      head.alpha.col(static_cast<int>(oi)) = rhs;
    }
    m.heads_.push_back(std::move(head));
  }
  return m;
}

GpModel::GpModel(GpModel&& other) noexcept
    : heads_(std::move(other.heads_)),
      inputs_(std::move(other.inputs_)),
      mean_(std::move(other.mean_)),
      n_(other.n_),
      dim_(other.dim_),
      source_index_(other.source_index_),
      clamp_count_(other.clamp_count_.load()) {}

GpModel& GpModel::operator=(GpModel&& other) noexcept {
  heads_ = std::move(other.heads_);
  inputs_ = std::move(other.inputs_);
  mean_ = std::move(other.mean_);
  n_ = other.n_;
  dim_ = other.dim_;
  source_index_ = other.source_index_;
  clamp_count_.store(other.clamp_count_.load());
  return *this;
}

const Hyperparams& GpModel::head_for_output(int output) const {
  for (const auto& head : heads_) {
    for (int out : head.outputs) {
      if (out == output) {
        return head.h;
      }
    }
  }
  throw std::out_of_range("GpModel::head_for_output: bad output index");
}

Prediction GpModel::predict(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) {
    throw std::invalid_argument("GpModel::predict: input dimension mismatch");
  }
  Prediction p;
  const Vec6 prior = mean_ ? mean_(x) : Vec6::Zero();
  for (const auto& head : heads_) {
    Eigen::VectorXd kvec(n_);
    for (int j = 0; j < n_; ++j) {
      kvec(j) = kernel_se(x, inputs_.col(j), head.h);
    }
    Eigen::VectorXd w = kvec;
    head.chol.triangularView<Eigen::Lower>().solveInPlace(w);
    double var = head.h.signal_var - w.squaredNorm();
    if (var < 0.0) {
      var = 0.0;
      clamp_count_.fetch_add(1, std::memory_order_relaxed);
    }
    for (std::size_t oi = 0; oi < head.outputs.size(); ++oi) {
      const int out = head.outputs[oi];
      p.mean(out) = prior(out) + kvec.dot(head.alpha.col(static_cast<int>(oi)));
      p.var(out) = var;
    }
  }
  return p;
}

double log_marginal_likelihood(const Dataset& d, const std::vector<Hyperparams>& heads,
                               const MeanFn& mean) {
  if (d.size() < 1) {
    throw std::invalid_argument("log_marginal_likelihood: empty dataset");
  }
  check_heads(d, heads);
  const int n = d.size();
  const Eigen::MatrixXd residual = d.outputs - mean_matrix(d.inputs, mean);

  double lml = 0.0;
  for (std::size_t hi = 0; hi < heads.size(); ++hi) {
    Eigen::MatrixXd k = gram_matrix(d.inputs, heads[hi]);
    k.diagonal().array() += heads[hi].noise_var;
    const Eigen::MatrixXd l = chol_with_jitter(std::move(k));
    const double log_det = 2.0 * l.diagonal().array().log().sum();

    const auto outputs = heads.size() == 1 ? std::vector<int>{0, 1, 2, 3, 4, 5}
                                           : std::vector<int>{static_cast<int>(hi)};
    for (int out : outputs) {
      Eigen::VectorXd alpha = residual.col(out);
      l.triangularView<Eigen::Lower>().solveInPlace(alpha);
      l.transpose().triangularView<Eigen::Upper>().solveInPlace(alpha);
      lml += -0.5 * residual.col(out).dot(alpha) - 0.5 * log_det -
             0.5 * n * std::log(2.0 * std::numbers::pi);
    }
  }
  return lml;
}

namespace {

struct LogParams {
  Eigen::VectorXd theta;  // [log l_1..l_d, log sigma_f^2, log sigma^2]

  static LogParams from(const Hyperparams& h) {
    LogParams p;
    const int d = static_cast<int>(h.lengthscales.size());
    p.theta.resize(d + 2);
    p.theta.head(d) = h.lengthscales.array().log();
    p.theta(d) = std::log(h.signal_var);
    p.theta(d + 1) = std::log(h.noise_var);
    return p;
  }

  Hyperparams to(int dim) const {
    Hyperparams h;
    h.lengthscales = theta.head(dim).array().exp();
    h.signal_var = std::exp(theta(dim));
    h.noise_var = std::exp(theta(dim + 1));
    return h;
  }

  void clamp(int dim) {
    for (int i = 0; i < dim; ++i) {
      theta(i) = std::clamp(theta(i), -8.0, 8.0);
    }
    theta(dim) = std::clamp(theta(dim), -20.0, 10.0);
    theta(dim + 1) = std::clamp(theta(dim + 1), -27.0, 10.0);
  }
};

// LML and gradient for one kernel head shared by the given output columns.
// Gradient identity: dLML/dtheta = 1/2 tr((sum_i alpha_i alpha_i^T - m K^-1) dK/dtheta).
double lml_and_grad(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y_cols,
                    const Hyperparams& h, Eigen::VectorXd* grad) {
  const int n = static_cast<int>(x.cols());
  const int dim = static_cast<int>(x.rows());
  const int n_out = static_cast<int>(y_cols.cols());

  Eigen::MatrixXd k0 = gram_matrix(x, h);  // noiseless
  Eigen::MatrixXd k = k0;
  k.diagonal().array() += h.noise_var;
  const Eigen::MatrixXd l = chol_with_jitter(std::move(k));

  const double log_det = 2.0 * l.diagonal().array().log().sum();
  Eigen::MatrixXd alpha = y_cols;
  l.triangularView<Eigen::Lower>().solveInPlace(alpha);
  l.transpose().triangularView<Eigen::Upper>().solveInPlace(alpha);

  double lml = 0.0;
  for (int i = 0; i < n_out; ++i) {
    lml += -0.5 * y_cols.col(i).dot(alpha.col(i)) - 0.5 * log_det -
           0.5 * n * std::log(2.0 * std::numbers::pi);
  }
  if (grad == nullptr) {
    return lml;
  }

  Eigen::MatrixXd kinv = Eigen::MatrixXd::Identity(n, n);
  l.triangularView<Eigen::Lower>().solveInPlace(kinv);
  l.transpose().triangularView<Eigen::Upper>().solveInPlace(kinv);
  const Eigen::MatrixXd w = alpha * alpha.transpose() - n_out * kinv;

  grad->resize(dim + 2);
  for (int d = 0; d < dim; ++d) {
    // dK/d(log l_d) = K0 elemwise* scaled squared distances along dim d
    const double inv_l2 = 1.0 / (h.lengthscales(d) * h.lengthscales(d));
    double g = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double r = x(d, i) - x(d, j);
        g += w(i, j) * k0(i, j) * r * r * inv_l2;
      }
    }
    (*grad)(d) = 0.5 * g;
  }
  (*grad)(dim) = 0.5 * (w.array() * k0.array()).sum();          // dK/dlog sigma_f^2 = K0
  (*grad)(dim + 1) = 0.5 * h.noise_var * w.diagonal().sum();    // dK/dlog sigma^2 = sigma^2 I
  return lml;
}

// Backtracking gradient ascent from one start. Returns best (lml, params).
std::pair<double, Hyperparams> ascend(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y_cols,
                                      Hyperparams h, int budget) {
  const int dim = static_cast<int>(x.rows());
  LogParams p = LogParams::from(h);
  Eigen::VectorXd grad;
  double lml = lml_and_grad(x, y_cols, h, &grad);
  double step = 0.1;

  for (int it = 0; it < budget; ++it) {
    if (grad.norm() < 1e-6) {
      break;
    }
    bool accepted = false;
    for (int bt = 0; bt < 20; ++bt) {
      LogParams trial = p;
      trial.theta += step * grad;
      trial.clamp(dim);
      const Hyperparams ht = trial.to(dim);
      double trial_lml;
      try {
        trial_lml = lml_and_grad(x, y_cols, ht, nullptr);
      } catch (const NumericError&) {
        step *= 0.5;
        continue;
      }
      if (trial_lml > lml) {
        p = trial;
        h = ht;
        lml = trial_lml;
        step = std::min(step * 1.3, 1.0);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      break;
    }
    lml = lml_and_grad(x, y_cols, h, &grad);
  }
  return {lml, h};
}

}  // namespace

FitResult fit_hyperparameters(const Dataset& d, const std::vector<Hyperparams>& init,
                              int budget, std::uint64_t seed, int n_starts) {
  if (d.size() < 5) {
    throw std::invalid_argument("fit_hyperparameters: need at least 5 points");
  }
  check_heads(d, init);

  FitResult result;
  result.heads = init;
  result.log_likelihood = log_marginal_likelihood(d, init);
  if (budget <= 0) {
    return result;
  }

  std::mt19937_64 rng(seed);
  const auto uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  const int dim = d.dim();
  std::vector<Hyperparams> fitted = init;
  double total = 0.0;
  bool any_improved = false;

  for (std::size_t hi = 0; hi < init.size(); ++hi) {
    Eigen::MatrixXd y_cols;
    if (init.size() == 1) {
      y_cols = d.outputs;
    } else {
      y_cols = d.outputs.col(static_cast<int>(hi));
    }

    const double init_lml = lml_and_grad(d.inputs, y_cols, init[hi], nullptr);
    double best_lml = init_lml;
    Hyperparams best = init[hi];

    for (int start = 0; start < n_starts; ++start) {
      Hyperparams h0 = init[hi];
      if (start > 0) {
        LogParams p = LogParams::from(h0);
        for (int i = 0; i < p.theta.size(); ++i) {
          p.theta(i) += (uniform() * 2.0 - 1.0) * 0.7;
        }
        p.clamp(dim);
        h0 = p.to(dim);
      }
      const auto [lml, h] = ascend(d.inputs, y_cols, h0, budget);
      if (lml > best_lml) {
        best_lml = lml;
        best = h;
      }
    }
    if (best_lml > init_lml) {
      any_improved = true;
    }
    fitted[hi] = best;
    total += best_lml;
  }

  result.heads = fitted;
  result.improved = any_improved;
  result.log_likelihood = any_improved ? total : result.log_likelihood;
  return result;
}

namespace {

double subset_info_gain(const Eigen::MatrixXd& candidates, const std::vector<int>& subset,
                        const Hyperparams& h, double noise_var) {
  const int k = static_cast<int>(subset.size());
  Eigen::MatrixXd m(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double kij = kernel_se(candidates.col(subset[static_cast<std::size_t>(i)]),
                                   candidates.col(subset[static_cast<std::size_t>(j)]), h);
      m(i, j) = (i == j ? 1.0 : 0.0) + kij / noise_var;
    }
  }
  const Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw NumericError("info_gain: factorization failed");
  }
  return Eigen::MatrixXd(llt.matrixL()).diagonal().array().log().sum();
}

}  // namespace

InfoGainResult info_gain_greedy(const Eigen::MatrixXd& candidates, const Hyperparams& h,
                                double noise_var, int k_max) {
  const int m = static_cast<int>(candidates.cols());
  if (m < k_max || k_max < 1) {
    throw std::invalid_argument("info_gain_greedy: need k_max in [1, #candidates]");
  }
  if (!(noise_var > 0.0)) {
    throw std::invalid_argument("info_gain_greedy: noise variance must be positive");
  }

  InfoGainResult result;
  result.method = "greedy";
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  Eigen::MatrixXd chol(k_max, k_max);          // factor of I + sigma^-2 K_S
  Eigen::MatrixXd cross(k_max, m);             // sigma^-2 k(s_i, c_j) rows as selected
  double log_det = 0.0;                        // log det of current M_S

  for (int step = 0; step < k_max; ++step) {
    int best = -1;
    double best_schur = -1.0;
    for (int c = 0; c < m; ++c) {
      if (used[static_cast<std::size_t>(c)]) {
        continue;
      }
      const double diag = 1.0 + kernel_se(candidates.col(c), candidates.col(c), h) / noise_var;
      double schur = diag;
      if (step > 0) {
        Eigen::VectorXd u(step);
        for (int i = 0; i < step; ++i) {
          u(i) = cross(i, c);
        }
        chol.topLeftCorner(step, step)
            .triangularView<Eigen::Lower>()
            .solveInPlace(u);
        schur = diag - u.squaredNorm();
      }
      if (schur > best_schur) {
        best_schur = schur;
        best = c;
      }
    }
    // Extend the factor with the chosen candidate.
    Eigen::VectorXd u(step);
    for (int i = 0; i < step; ++i) {
      u(i) = cross(i, best);
    }
    if (step > 0) {
      chol.topLeftCorner(step, step).triangularView<Eigen::Lower>().solveInPlace(u);
    }
    chol.row(step).head(step) = u.transpose();
    chol(step, step) = std::sqrt(std::max(best_schur, 1e-300));
    for (int c = 0; c < m; ++c) {
      cross(step, c) = kernel_se(candidates.col(best), candidates.col(c), h) / noise_var;
    }
    log_det += std::log(std::max(best_schur, 1e-300));
    used[static_cast<std::size_t>(best)] = true;
    result.selected.push_back(best);
  }
  result.value = 0.5 * log_det;
  return result;
}

InfoGainResult info_gain_exhaustive(const Eigen::MatrixXd& candidates, const Hyperparams& h,
                                    double noise_var, int k_max) {
  const int m = static_cast<int>(candidates.cols());
  if (m > 12) {
    throw std::invalid_argument("info_gain_exhaustive: at most 12 candidates");
  }
  if (m < k_max || k_max < 1) {
    throw std::invalid_argument("info_gain_exhaustive: need k_max in [1, #candidates]");
  }

  InfoGainResult result;
  result.method = "exhaustive";
  std::vector<int> subset;
  std::vector<int> best_subset;
  double best = -std::numeric_limits<double>::infinity();

  const std::function<void(int)> recurse = [&](int next) {
    if (static_cast<int>(subset.size()) == k_max) {
      const double v = subset_info_gain(candidates, subset, h, noise_var);
      if (v > best) {
        best = v;
        best_subset = subset;
      }
      return;
    }
    const int remaining = k_max - static_cast<int>(subset.size());
    for (int c = next; c <= m - remaining; ++c) {
      subset.push_back(c);
      recurse(c + 1);
      subset.pop_back();
    }
  };
  recurse(0);

  result.value = best;
  result.selected = best_subset;
  return result;
}

InfoGainResult info_gain(const Eigen::MatrixXd& candidates, const Hyperparams& h,
                         double noise_var, int k_max) {
  if (candidates.cols() <= 12) {
    return info_gain_exhaustive(candidates, h, noise_var, k_max);
  }
  return info_gain_greedy(candidates, h, noise_var, k_max);
}

Vec6 beta_vector(int n_points, const Vec6& gamma, const Vec6& rkhs_bound, double delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::domain_error("beta_vector: delta must lie in (0, 1)");
  }
  if ((gamma.array() < 0.0).any() || (rkhs_bound.array() < 0.0).any()) {
    throw std::domain_error("beta_vector: gamma and RKHS bounds must be nonnegative");
  }
  const double log_term = std::log((n_points + 1.0) / (1.0 - std::pow(delta, 1.0 / 6.0)));
  const double log_cubed = log_term * log_term * log_term;
  Vec6 beta;
  for (int j = 0; j < 6; ++j) {
    beta(j) = std::sqrt(2.0 * rkhs_bound(j) * rkhs_bound(j) + 300.0 * gamma(j) * log_cubed);
  }
  return beta;
}

double rho_bar(const GpModel& model, const Vec6& beta, const Eigen::VectorXd& x) {
  const Prediction p = model.predict(x);
  return (beta.array() * p.var.array().sqrt()).matrix().norm();
}

}  // namespace fthex
