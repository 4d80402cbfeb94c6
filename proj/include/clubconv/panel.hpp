#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clubconv/errors.hpp"

namespace clubconv {

enum class Scale { raw_index, log_scale };

/// Rectangular unit x period panel. Immutable after construction; all
/// operations below return new panels.
struct Panel {
  std::vector<std::string> unit_ids;      // N unique labels
  std::vector<std::string> period_labels; // T strictly increasing labels
  std::vector<double> values;             // row-major N x T
  Scale scale = Scale::raw_index;
  std::optional<std::string> base_period;

  int n_units() const { return static_cast<int>(unit_ids.size()); }
  int n_periods() const { return static_cast<int>(period_labels.size()); }

  double at(int unit, int period) const {
    return values[static_cast<std::size_t>(unit) * period_labels.size() + period];
  }
  double& at(int unit, int period) {
    return values[static_cast<std::size_t>(unit) * period_labels.size() + period];
  }

  int period_index(const std::string& label) const;  // throws UnknownPeriod
  int unit_index(const std::string& label) const;    // throws UnknownUnit
};

enum class DropReason { base_period_degenerate, variance_below_epsilon };

struct PanelScreenReport {
  std::vector<std::string> dropped_periods;  // always a prefix of the period axis
  std::vector<DropReason> reasons;           // parallel to dropped_periods
};

/// Validates dimensions, positivity and label uniqueness/order. The panel is
/// built at raw_index scale; degenerate-variance handling is deferred to
/// screen_degenerate_periods.
Panel build_panel(std::vector<std::string> units, std::vector<std::string> periods,
                  std::vector<double> values);

/// Divides every unit's series by its value at base_period and scales by 100.
Panel rebase(const Panel& panel, const std::string& base_period);

/// Natural log of every cell; scale becomes log_scale.
Panel to_log(const Panel& panel);

/// Drops leading periods whose cross-sectional variance is below epsilon
/// (the base period of an index is the canonical case: every unit sits at
/// log(100) there, so log(H_1/H_t) would be undefined). Interior low-variance
/// periods are kept.
std::pair<Panel, PanelScreenReport> screen_degenerate_periods(const Panel& panel,
                                                              double epsilon = 1e-12);

/// Row subset in the order given. Labels must exist and be distinct.
Panel subpanel(const Panel& panel, const std::vector<std::string>& units);

/// Contiguous period slice [first, last], both inclusive, by label.
Panel window_slice(const Panel& panel, const std::string& first, const std::string& last);

/// Cross-sectional variance of column t (population variance).
double cross_section_variance(const Panel& panel, int t);

}  // namespace clubconv
