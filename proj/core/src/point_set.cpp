#include "jacoframe/point_set.hpp"

#include "jacoframe/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace jacoframe {

namespace {

constexpr double duplicate_tolerance = 1e-13;

ScatteredSet from_sorted(std::vector<double> thetas)
{
    ScatteredSet s;
    s.xs.resize(thetas.size());
    std::transform(thetas.begin(), thetas.end(), s.xs.begin(), [](double t) { return std::cos(t); });

    double max_gap = thetas.front();
    double min_gap = thetas.front();
    for (std::size_t k = 0; k <= thetas.size(); ++k) {
        const double lo = k == 0 ? 0.0 : thetas[k - 1];
        const double hi = k == thetas.size() ? std::numbers::pi : thetas[k];
        max_gap = std::max(max_gap, hi - lo);
        min_gap = std::min(min_gap, hi - lo);
    }
    s.mesh_norm = 0.5 * max_gap;
    s.separation_radius = 0.5 * min_gap;
    s.uniformity = s.mesh_norm / s.separation_radius;
    s.thetas = std::move(thetas);
    return s;
}

} // namespace

ScatteredSet analyze_set(std::span<const double> thetas)
{
    if (thetas.size() < 2)
        throw InputError("a scattered set needs at least 2 points (got " + std::to_string(thetas.size()) + ")");
    for (std::size_t i = 0; i < thetas.size(); ++i)
        if (!(thetas[i] > 0.0 && thetas[i] < std::numbers::pi))
            throw InputError("theta at index " + std::to_string(i) + " is outside (0, pi): "
                             + std::to_string(thetas[i]));

    std::vector<std::size_t> order(thetas.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto l, auto r) { return thetas[l] < thetas[r]; });

    std::vector<double> sorted(thetas.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted[i] = thetas[order[i]];
        if (i > 0 && sorted[i] - sorted[i - 1] <= duplicate_tolerance)
            throw InputError("theta at index " + std::to_string(order[i]) + " duplicates index "
                             + std::to_string(order[i - 1]));
    }
    return from_sorted(std::move(sorted));
}

ScatteredSet analyze_x_values(std::span<const double> xs)
{
    std::vector<double> thetas(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > -1.0 && xs[i] < 1.0))
            throw InputError("x at index " + std::to_string(i) + " is outside (-1, 1): " + std::to_string(xs[i]));
        thetas[i] = std::acos(xs[i]);
    }
    return analyze_set(thetas);
}

ScatteredSet uniform_subset(const ScatteredSet& set)
{
    constexpr double pi = std::numbers::pi;
    if (set.mesh_norm > pi / 4)
        throw PreconditionError("set too sparse for subset construction (mesh norm "
                                + std::to_string(set.mesh_norm) + " > pi/4)");
    const int m = static_cast<int>(std::floor(pi / (4.0 * set.mesh_norm)));

    std::vector<double> chosen;
    chosen.reserve(m);
    auto it = set.thetas.begin();
    for (int j = 0; j < m; ++j) {
        const double lo = (4.0 * j + 1.0) * pi / (4.0 * m);
        const double hi = (4.0 * j + 3.0) * pi / (4.0 * m);
        it = std::lower_bound(it, set.thetas.end(), lo);
        if (it == set.thetas.end() || *it > hi)
            throw NumericalError("subset window " + std::to_string(j) + " is empty");
        chosen.push_back(*it);
    }
    return from_sorted(std::move(chosen));
}

ScatteredSet random_points(int count, std::uint64_t seed)
{
    if (count < 2)
        throw ParameterError("random point sets need at least 2 points");
    std::mt19937_64 engine(seed);
    std::vector<double> thetas(count);
    for (int k = 0; k < count; ++k) {
        const double u = (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
        thetas[k] = (k + u) * std::numbers::pi / count;
    }
    return from_sorted(std::move(thetas));
}

std::vector<double> standard_normals(std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 engine(seed);
    auto uniform = [&] { return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53; };
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; k += 2) {
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        out[k] = r * std::cos(angle);
        if (k + 1 < count)
            out[k + 1] = r * std::sin(angle);
    }
    return out;
}

} // namespace jacoframe
