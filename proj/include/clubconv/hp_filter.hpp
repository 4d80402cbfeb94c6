#pragma once

#include <vector>

namespace clubconv {

/// Hodrick-Prescott trend of a series: minimizes sum (y-tau)^2 +
/// lambda * sum (second differences of tau)^2. lambda = 0 returns the input.
std::vector<double> hp_trend(const std::vector<double>& series, double lambda);

}  // namespace clubconv
