#pragma once

#include <functional>

namespace aoi {

/// Adaptive Simpson integration of f over [a, b] with Richardson
/// correction. The absolute tolerance is split in half at every
/// subdivision; each branch is refined at least four levels deep.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 50);

}  // namespace aoi
