#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "clubconv/panel.hpp"

namespace testutil {

inline std::vector<std::string> unit_labels(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "U%02d", i + 1);
    out.emplace_back(buf);
  }
  return out;
}

inline std::vector<std::string> year_labels(int t, int first = 2000) {
  std::vector<std::string> out;
  for (int k = 0; k < t; ++k) out.push_back(std::to_string(first + k));
  return out;
}

// Random positive raw-index panel; for property tests.
inline clubconv::Panel random_panel(std::mt19937_64& rng, int n, int t) {
  std::uniform_real_distribution<double> level(50.0, 150.0);
  std::normal_distribution<double> step(0.0, 0.05);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n) * t);
  for (int i = 0; i < n; ++i) {
    double v = level(rng);
    for (int k = 0; k < t; ++k) {
      v *= std::exp(step(rng));
      values.push_back(v);
    }
  }
  return clubconv::build_panel(unit_labels(n), year_labels(t), std::move(values));
}

// Log-scale panel straight from a y matrix (row-major), bypassing exp/log.
inline clubconv::Panel log_panel_from(const std::vector<double>& y, int n, int t) {
  clubconv::Panel p;
  p.unit_ids = unit_labels(n);
  p.period_labels = year_labels(t);
  p.values = y;
  p.scale = clubconv::Scale::log_scale;
  return p;
}

}  // namespace testutil
