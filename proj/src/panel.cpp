#include "clubconv/panel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace clubconv {

namespace {

// Period labels compare numerically when both sides parse as numbers
// (years, quarters-as-numbers), lexicographically otherwise.
bool label_less(const std::string& a, const std::string& b) {
  double da = 0, db = 0;
  auto ra = std::from_chars(a.data(), a.data() + a.size(), da);
  auto rb = std::from_chars(b.data(), b.data() + b.size(), db);
  bool na = ra.ec == std::errc{} && ra.ptr == a.data() + a.size();
  bool nb = rb.ec == std::errc{} && rb.ptr == b.data() + b.size();
  if (na && nb) return da < db;
  return a < b;
}

}  // namespace

int Panel::period_index(const std::string& label) const {
  auto it = std::find(period_labels.begin(), period_labels.end(), label);
  if (it == period_labels.end()) throw UnknownPeriod("unknown period: " + label);
  return static_cast<int>(it - period_labels.begin());
}

int Panel::unit_index(const std::string& label) const {
  auto it = std::find(unit_ids.begin(), unit_ids.end(), label);
  if (it == unit_ids.end()) throw UnknownUnit("unknown unit: " + label);
  return static_cast<int>(it - unit_ids.begin());
}

Panel build_panel(std::vector<std::string> units, std::vector<std::string> periods,
                  std::vector<double> values) {
  const std::size_t n = units.size();
  const std::size_t t = periods.size();
  if (n == 0 || t == 0) throw DimensionMismatch("panel must have at least one unit and one period");
  if (values.size() != n * t)
    throw DimensionMismatch("expected " + std::to_string(n * t) + " values, got " +
                            std::to_string(values.size()));

  std::set<std::string> seen;
  for (const auto& u : units)
    if (!seen.insert(u).second) throw DuplicateUnit("duplicate unit: " + u);

  for (std::size_t k = 1; k < t; ++k)
    if (!label_less(periods[k - 1], periods[k]))
      throw DimensionMismatch("period labels not strictly increasing at '" + periods[k] + "'");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < t; ++k) {
      double v = values[i * t + k];
      if (!std::isfinite(v))
        throw NonPositiveValue("non-finite value for unit " + units[i] + ", period " + periods[k]);
      if (v <= 0)
        throw NonPositiveValue("non-positive value " + std::to_string(v) + " for unit " +
                               units[i] + ", period " + periods[k]);
    }

  Panel p;
  p.unit_ids = std::move(units);
  p.period_labels = std::move(periods);
  p.values = std::move(values);
  p.scale = Scale::raw_index;
  return p;
}

Panel rebase(const Panel& panel, const std::string& base_period) {
  if (panel.scale != Scale::raw_index) throw AlreadyLog("rebase requires a raw_index panel");
  const int b = panel.period_index(base_period);
  Panel out = panel;
  for (int i = 0; i < panel.n_units(); ++i) {
    const double base = panel.at(i, b);
    if (base <= 0)
      throw NonPositiveValue("non-positive base-period value for unit " + panel.unit_ids[i]);
    for (int t = 0; t < panel.n_periods(); ++t) out.at(i, t) = 100.0 * panel.at(i, t) / base;
  }
  out.base_period = base_period;
  return out;
}

Panel to_log(const Panel& panel) {
  if (panel.scale != Scale::raw_index) throw AlreadyLog("panel is already on log scale");
  Panel out = panel;
  for (auto& v : out.values) v = std::log(v);
  out.scale = Scale::log_scale;
  return out;
}

double cross_section_variance(const Panel& panel, int t) {
  const int n = panel.n_units();
  double mean = 0;
  for (int i = 0; i < n; ++i) mean += panel.at(i, t);
  mean /= n;
  double var = 0;
  for (int i = 0; i < n; ++i) {
    const double d = panel.at(i, t) - mean;
    var += d * d;
  }
  return var / n;
}

std::pair<Panel, PanelScreenReport> screen_degenerate_periods(const Panel& panel,
                                                              double epsilon) {
  if (panel.scale != Scale::log_scale)
    throw NotLogScale("screening operates on the log-scale panel");

  const int t_total = panel.n_periods();
  int drop = 0;
  while (drop < t_total && cross_section_variance(panel, drop) < epsilon) ++drop;
  if (drop == t_total)
    throw AllPeriodsDegenerate("every period has cross-sectional variance below epsilon");

  PanelScreenReport report;
  for (int t = 0; t < drop; ++t) {
    report.dropped_periods.push_back(panel.period_labels[t]);
    bool is_base = panel.base_period && *panel.base_period == panel.period_labels[t];
    report.reasons.push_back(is_base ? DropReason::base_period_degenerate
                                     : DropReason::variance_below_epsilon);
  }

  if (drop == 0) return {panel, report};

  Panel out;
  out.unit_ids = panel.unit_ids;
  out.scale = panel.scale;
  out.base_period = panel.base_period;
  out.period_labels.assign(panel.period_labels.begin() + drop, panel.period_labels.end());
  const int t_kept = t_total - drop;
  out.values.resize(static_cast<std::size_t>(panel.n_units()) * t_kept);
  for (int i = 0; i < panel.n_units(); ++i)
    for (int t = 0; t < t_kept; ++t) out.at(i, t) = panel.at(i, t + drop);
  return {out, report};
}

Panel subpanel(const Panel& panel, const std::vector<std::string>& units) {
  Panel out;
  out.period_labels = panel.period_labels;
  out.scale = panel.scale;
  out.base_period = panel.base_period;
  out.unit_ids = units;
  std::set<std::string> seen;
  out.values.resize(units.size() * static_cast<std::size_t>(panel.n_periods()));
  for (std::size_t k = 0; k < units.size(); ++k) {
    if (!seen.insert(units[k]).second) throw DuplicateUnit("duplicate unit: " + units[k]);
    const int i = panel.unit_index(units[k]);
    for (int t = 0; t < panel.n_periods(); ++t)
      out.values[k * panel.n_periods() + t] = panel.at(i, t);
  }
  return out;
}

Panel window_slice(const Panel& panel, const std::string& first, const std::string& last) {
  const int a = panel.period_index(first);
  const int b = panel.period_index(last);
  if (a > b) throw UnknownPeriod("window start '" + first + "' is after end '" + last + "'");
  Panel out;
  out.unit_ids = panel.unit_ids;
  out.scale = panel.scale;
  out.base_period = panel.base_period;
  out.period_labels.assign(panel.period_labels.begin() + a, panel.period_labels.begin() + b + 1);
  const int t_kept = b - a + 1;
  out.values.resize(static_cast<std::size_t>(panel.n_units()) * t_kept);
  for (int i = 0; i < panel.n_units(); ++i)
    for (int t = 0; t < t_kept; ++t) out.at(i, t) = panel.at(i, t + a);
  return out;
}

}  // namespace clubconv
