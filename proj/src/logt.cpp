#include "clubconv/logt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "clubconv/hp_filter.hpp"

namespace clubconv {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::absolute_convergence: return "absolute_convergence";
    case Classification::conditional_convergence: return "conditional_convergence";
    case Classification::convergence_not_rejected_negative_b:
      return "convergence_not_rejected_negative_b";
    case Classification::reject_convergence: return "reject_convergence";
  }
  std::abort();
}

Classification classification_from_string(const std::string& s) {
  if (s == "absolute_convergence") return Classification::absolute_convergence;
  if (s == "conditional_convergence") return Classification::conditional_convergence;
  if (s == "convergence_not_rejected_negative_b")
    return Classification::convergence_not_rejected_negative_b;
  if (s == "reject_convergence") return Classification::reject_convergence;
  throw InputError("unknown classification: " + s);
}

TransitionPaths compute_transition_paths(const Panel& panel) {
  if (panel.scale != Scale::log_scale)
    throw NotLogScale("transition paths are defined on the log-scale panel");
  const int n = panel.n_units();
  const int t_len = panel.n_periods();
  if (n < 2) throw DimensionMismatch("transition paths need at least 2 units");

  TransitionPaths paths;
  paths.n_units = n;
  paths.n_periods = t_len;
  paths.h.resize(static_cast<std::size_t>(n) * t_len);
  paths.H.resize(t_len);

  // Cross-sectional reductions sum in sorted order so that reordering the
  // units leaves H_t (and everything downstream) bit-identical.
  std::vector<double> column(n);
  for (int t = 0; t < t_len; ++t) {
    for (int i = 0; i < n; ++i) column[i] = panel.at(i, t);
    std::sort(column.begin(), column.end());
    double mean = 0;
    for (double v : column) mean += v;
    mean /= n;
    if (std::fabs(mean) <= 1e-12)
      throw ZeroCrossSectionMean("cross-sectional mean of y is zero at period " +
                                 panel.period_labels[t]);
    for (int i = 0; i < n; ++i) {
      const double d = column[i] / mean - 1.0;
      column[i] = d * d;
    }
    for (int i = 0; i < n; ++i)
      paths.h[static_cast<std::size_t>(i) * t_len + t] = panel.at(i, t) / mean;
    std::sort(column.begin(), column.end());
    double var = 0;
    for (double v : column) var += v;
    paths.H[t] = var / n;
  }
  return paths;
}

OlsFit ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DimensionMismatch("ols_fit: length mismatch");
  const int n = static_cast<int>(x.size());
  if (n < 2) throw WindowTooShort("ols_fit needs at least 2 points");

  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;

  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0) throw ConstantRegressor("ols_fit: regressor is constant");

  OlsFit fit;
  fit.b_hat = sxy / sxx;
  fit.a_hat = my - fit.b_hat * mx;
  fit.residuals.resize(n);
  for (int i = 0; i < n; ++i) fit.residuals[i] = y[i] - fit.a_hat - fit.b_hat * x[i];
  return fit;
}

int newey_west_auto_lag(int n) {
  return static_cast<int>(std::floor(4.0 * std::pow(n / 100.0, 2.0 / 9.0)));
}

double hac_slope_se(const std::vector<double>& residuals, const std::vector<double>& x,
                    const HacConfig& hac) {
  if (residuals.size() != x.size()) throw DimensionMismatch("hac_slope_se: length mismatch");
  const int n = static_cast<int>(x.size());
  if (n < 2) throw WindowTooShort("hac_slope_se needs at least 2 points");

  int lag = hac.lag_rule == HacLagRule::auto_newey_west ? newey_west_auto_lag(n) : hac.fixed_lag;
  if (lag < 0 || lag >= n)
    throw LagTooLarge("HAC lag " + std::to_string(lag) + " with " + std::to_string(n) +
                      " observations");

  double mx = 0;
  for (int i = 0; i < n; ++i) mx += x[i];
  mx /= n;
  double sxx = 0;
  std::vector<double> u(n);  // u_t = (x_t - mean x) * e_t
  for (int i = 0; i < n; ++i) {
    const double xd = x[i] - mx;
    sxx += xd * xd;
    u[i] = xd * residuals[i];
  }
  if (sxx <= 0) throw ConstantRegressor("hac_slope_se: regressor is constant");

  // Bartlett-weighted long-run variance of u, scaled into the slope variance:
  // Var(b) = n * S / sxx^2 with S = gamma_0 + 2 sum_l w_l gamma_l.
  double s = 0;
  for (int i = 0; i < n; ++i) s += u[i] * u[i];
  s /= n;
  for (int l = 1; l <= lag; ++l) {
    const double w = 1.0 - static_cast<double>(l) / (lag + 1);
    double gamma = 0;
    for (int i = l; i < n; ++i) gamma += u[i] * u[i - l];
    s += 2.0 * w * gamma / n;
  }
  if (s < 0) s = 0;  // Bartlett weights keep S psd up to roundoff
  return std::sqrt(n * s) / sxx;
}

Classification classify(double b_hat, double t_stat, double critical_value) {
  if (t_stat < critical_value) return Classification::reject_convergence;
  if (b_hat >= 2.0) return Classification::absolute_convergence;
  if (b_hat >= 0.0) return Classification::conditional_convergence;
  return Classification::convergence_not_rejected_negative_b;
}

LogTResult logt_regression(const TransitionPaths& paths, const LogTConfig& config) {
  const int t_len = paths.n_periods;
  const double r = config.trim_fraction;
  if (!(r > 0 && r <= 0.5)) throw InputError("trim fraction must lie in (0, 0.5]");

  int start = static_cast<int>(std::floor(r * t_len));  // 1-based ordinal
  if (config.trim_convention == TrimConvention::floor_rT_plus_1) start += 1;
  if (start < 2) start = 2;  // log(log t) needs t >= 2
  if (t_len - start + 1 < 2)
    throw WindowTooShort("post-trim window has fewer than 2 periods (T = " +
                         std::to_string(t_len) + ")");

  if (paths.H[0] <= 0)
    throw ZeroVariancePeriod("H_1 is zero; log(H_1/H_t) is undefined");

  std::vector<double> xs, ys;
  xs.reserve(t_len - start + 1);
  ys.reserve(t_len - start + 1);
  for (int t = start; t <= t_len; ++t) {
    const double ht = paths.H[t - 1];
    if (ht <= 0)
      throw ZeroVariancePeriod("H_t is zero at ordinal period " + std::to_string(t));
    xs.push_back(std::log(static_cast<double>(t)));
    ys.push_back(std::log(paths.H[0] / ht) - 2.0 * std::log(std::log(static_cast<double>(t))));
  }

  OlsFit fit = ols_fit(xs, ys);
  LogTResult res;
  res.a_hat = fit.a_hat;
  res.b_hat = fit.b_hat;
  res.alpha_hat = fit.b_hat / 2.0;
  res.hac_se = hac_slope_se(fit.residuals, xs, config.hac);
  res.t_stat = fit.b_hat / res.hac_se;
  res.window_first = start;
  res.window_last = t_len;
  res.residuals = std::move(fit.residuals);
  res.classification = classify(res.b_hat, res.t_stat, config.critical_value);
  return res;
}

LogTResult logt_test(const Panel& panel, const LogTConfig& config) {
  if (config.hp_lambda > 0) {
    Panel smoothed = panel;
    const int t_len = panel.n_periods();
    std::vector<double> row(t_len);
    for (int i = 0; i < panel.n_units(); ++i) {
      for (int t = 0; t < t_len; ++t) row[t] = panel.at(i, t);
      const auto trend = hp_trend(row, config.hp_lambda);
      for (int t = 0; t < t_len; ++t) smoothed.at(i, t) = trend[t];
    }
    return logt_regression(compute_transition_paths(smoothed), config);
  }
  return logt_regression(compute_transition_paths(panel), config);
}

}  // namespace clubconv
