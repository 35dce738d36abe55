#include "embroidery/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace embroidery {

namespace {

using Point = std::vector<double>;

double sanitize(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::infinity(); }

} // namespace

NelderMeadResult minimize_nelder_mead(const std::function<double(std::span<const double>)>& objective,
                                      std::vector<double> start, std::span<const double> lower,
                                      std::span<const double> upper, const NelderMeadOptions& options) {
    const std::size_t n = start.size();
    if (lower.size() != n || upper.size() != n)
        throw std::invalid_argument("minimize_nelder_mead: bounds size mismatch");
    for (std::size_t i = 0; i < n; ++i)
        if (!(lower[i] < upper[i])) throw std::invalid_argument("minimize_nelder_mead: need lower < upper");

    NelderMeadResult result;
    auto project = [&](Point p) {
        for (std::size_t i = 0; i < n; ++i) p[i] = std::clamp(p[i], lower[i], upper[i]);
        return p;
    };
    // The budget is hard: once spent, trial points rank worst without being evaluated.
    auto eval = [&](const Point& p) {
        if (result.evaluations >= options.max_evaluations) return std::numeric_limits<double>::infinity();
        ++result.evaluations;
        return sanitize(objective(p));
    };

    Point best = project(std::move(start));
    double best_value = eval(best);
    if (n == 0) {
        result.x = best;
        result.value = best_value;
        result.converged = true;
        return result;
    }

    constexpr double reflect = 1.0;
    constexpr double expand = 2.0;
    constexpr double contract = 0.5;
    constexpr double shrink = 0.5;

    for (int restart = 0; restart <= options.max_restarts; ++restart) {
        const double value_at_restart = best_value;
        std::vector<Point> simplex{best};
        std::vector<double> values{best_value};
        for (std::size_t i = 0; i < n; ++i) {
            Point p = best;
            const double span = upper[i] - lower[i];
            double step = options.initial_step * span;
            // Step inward when the start sits on (or near) the upper face.
            if (p[i] + step > upper[i]) step = -step;
            p[i] += step;
            p = project(std::move(p));
            simplex.push_back(p);
            values.push_back(eval(p));
        }

        bool converged = false;
        while (result.evaluations < options.max_evaluations) {
            std::vector<std::size_t> order(n + 1);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
            {
                std::vector<Point> s2;
                std::vector<double> v2;
                for (std::size_t idx : order) {
                    s2.push_back(simplex[idx]);
                    v2.push_back(values[idx]);
                }
                simplex = std::move(s2);
                values = std::move(v2);
            }
            if (values.front() < best_value) {
                best_value = values.front();
                best = simplex.front();
            }
            result.best_trace.push_back(best_value);

            double diameter = 0.0;
            for (std::size_t v = 1; v <= n; ++v)
                for (std::size_t i = 0; i < n; ++i)
                    diameter = std::max(diameter, std::abs(simplex[v][i] - simplex[0][i]));
            const double spread = values.back() - values.front();
            if (diameter <= options.x_tolerance ||
                (std::isfinite(spread) && spread <= options.f_tolerance && diameter <= 1e3 * options.x_tolerance)) {
                converged = true;
                break;
            }

            Point centroid(n, 0.0);
            for (std::size_t v = 0; v < n; ++v)
                for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v][i] / static_cast<double>(n);

            auto along = [&](double t) {
                Point p(n);
                for (std::size_t i = 0; i < n; ++i) p[i] = centroid[i] + t * (simplex[n][i] - centroid[i]);
                return project(std::move(p));
            };

            const Point xr = along(-reflect);
            const double fr = eval(xr);
            if (fr < values[0]) {
                const Point xe = along(-expand);
                const double fe = eval(xe);
                if (fe < fr) {
                    simplex[n] = xe;
                    values[n] = fe;
                } else {
                    simplex[n] = xr;
                    values[n] = fr;
                }
                continue;
            }
            if (fr < values[n - 1]) {
                simplex[n] = xr;
                values[n] = fr;
                continue;
            }
            const bool outside = fr < values[n];
            const Point xc = along(outside ? -contract : contract);
            const double fc = eval(xc);
            if (fc < (outside ? fr : values[n])) {
                simplex[n] = xc;
                values[n] = fc;
                continue;
            }
            for (std::size_t v = 1; v <= n; ++v) {
                for (std::size_t i = 0; i < n; ++i)
                    simplex[v][i] = simplex[0][i] + shrink * (simplex[v][i] - simplex[0][i]);
                simplex[v] = project(std::move(simplex[v]));
                values[v] = eval(simplex[v]);
            }
        }
        for (std::size_t v = 0; v <= n; ++v) {
            if (values[v] < best_value) {
                best_value = values[v];
                best = simplex[v];
            }
        }
        result.converged = converged;
        if (!converged) break;
        if (restart > 0 && !(best_value < value_at_restart)) break;
    }

    result.x = best;
    result.value = best_value;
    return result;
}

} // namespace embroidery
