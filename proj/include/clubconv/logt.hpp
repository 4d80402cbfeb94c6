#pragma once

#include <string>
#include <vector>

#include "clubconv/panel.hpp"

namespace clubconv {

/// Relative transition parameters h_it and their cross-sectional variance H_t.
/// h_it = y_it / cross-sectional mean of y at t; the mean of h over units is 1
/// at every t by construction.
struct TransitionPaths {
  int n_units = 0;
  int n_periods = 0;
  std::vector<double> h;  // row-major N x T
  std::vector<double> H;  // length T, H_t >= 0

  double h_at(int unit, int period) const {
    return h[static_cast<std::size_t>(unit) * n_periods + period];
  }
};

enum class TrimConvention {
  floor_rT,         // regression starts at ordinal index floor(r*T)
  floor_rT_plus_1,  // default; starts at floor(r*T)+1
};

enum class HacLagRule { auto_newey_west, fixed };

struct HacConfig {
  HacLagRule lag_rule = HacLagRule::auto_newey_west;
  int fixed_lag = 0;  // used when lag_rule == fixed
};

struct LogTConfig {
  double trim_fraction = 0.3;  // r in (0, 0.5]
  TrimConvention trim_convention = TrimConvention::floor_rT_plus_1;
  HacConfig hac;
  double critical_value = -1.65;  // one-sided 5% critical value for t_b
  double hp_lambda = 0.0;         // > 0 enables Hodrick-Prescott pre-smoothing
};

enum class Classification {
  absolute_convergence,                  // b >= 2
  conditional_convergence,               // 0 <= b < 2
  convergence_not_rejected_negative_b,   // b < 0 but t >= critical
  reject_convergence,                    // t < critical
};

std::string to_string(Classification c);
Classification classification_from_string(const std::string& s);

struct LogTResult {
  double a_hat = 0;
  double b_hat = 0;
  double alpha_hat = 0;  // b_hat / 2
  double t_stat = 0;
  double hac_se = 0;
  int window_first = 0;  // ordinal index (1-based) of first regression period
  int window_last = 0;
  std::vector<double> residuals;
  Classification classification = Classification::reject_convergence;
};

struct OlsFit {
  double a_hat = 0;
  double b_hat = 0;
  std::vector<double> residuals;
};

/// h_it = y_it / mean_j y_jt and H_t = mean_i (h_it - 1)^2 on a log-scale
/// panel. Errors if the cross-sectional mean of y is within 1e-12 of zero at
/// any period (rebase the panel to move log-levels away from zero).
TransitionPaths compute_transition_paths(const Panel& panel);

/// Closed-form least squares of y on a constant and x.
OlsFit ols_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Bartlett-kernel (Newey-West) standard error of the slope estimate.
/// Auto lag is floor(4 * (T/100)^(2/9)).
double hac_slope_se(const std::vector<double>& residuals, const std::vector<double>& x,
                    const HacConfig& hac);

Classification classify(double b_hat, double t_stat, double critical_value);

/// The log-t regression log(H_1/H_t) - 2 log(log t) = a + b log t over the
/// trimmed window, with one-sided HAC inference on b. The time index t is the
/// ordinal position within the screened panel (t = 1 at the first retained
/// period); the regression never includes t = 1.
LogTResult logt_regression(const TransitionPaths& paths, const LogTConfig& config);

/// Convenience: transition paths + regression on a log-scale panel, applying
/// HP pre-smoothing per unit first when config.hp_lambda > 0.
LogTResult logt_test(const Panel& panel, const LogTConfig& config);

}  // namespace clubconv
