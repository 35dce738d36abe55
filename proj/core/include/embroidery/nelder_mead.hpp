#pragma once

#include <functional>
#include <span>
#include <vector>

namespace embroidery {

struct NelderMeadOptions {
    int max_evaluations{5000};
    double initial_step{0.25};     // simplex edge, in the caller's coordinates
    double x_tolerance{1e-10};     // simplex diameter (max-norm)
    double f_tolerance{1e-15};     // spread of vertex values
    int max_restarts{3};           // fresh simplex around the best vertex after convergence
};

struct NelderMeadResult {
    std::vector<double> x;
    double value{0.0};
    int evaluations{0};
    bool converged{false};
    /// Best value after every iteration; nonincreasing.
    std::vector<double> best_trace;
};

/// Deterministic bounded Nelder-Mead. Trial points are projected onto the
/// box [lower, upper] before evaluation; non-finite values rank worst.
NelderMeadResult minimize_nelder_mead(const std::function<double(std::span<const double>)>& objective,
                                      std::vector<double> start, std::span<const double> lower,
                                      std::span<const double> upper, const NelderMeadOptions& options = {});

} // namespace embroidery
