#ifndef JACOFRAME_POINT_SET_HPP
#define JACOFRAME_POINT_SET_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace jacoframe {

/// Scattered nodes given by their angles theta in (0, pi), x = cos(theta).
struct ScatteredSet {
    std::vector<double> thetas;      ///< strictly increasing
    std::vector<double> xs;          ///< cos(thetas), strictly decreasing
    double mesh_norm = 0.0;          ///< half the largest padded gap
    double separation_radius = 0.0;  ///< half the smallest padded gap
    double uniformity = 0.0;         ///< mesh_norm / separation_radius

    std::size_t size() const noexcept { return thetas.size(); }
};

/// Sorts the angles and fills the geometry. The padded gaps include
/// theta_0 = 0 and theta_{M+1} = pi. Throws InputError naming the
/// offending input index for values outside (0, pi) or duplicates closer
/// than 1e-13, and for fewer than 2 points.
ScatteredSet analyze_set(std::span<const double> thetas);

/// Same, for points given as x in (-1, 1).
ScatteredSet analyze_x_values(std::span<const double> xs);

/// With m = floor(pi / (4 mesh_norm)), keeps the first point (by ascending
/// theta) of each window [(4j+1) pi/(4m), (4j+3) pi/(4m)], j = 0 .. m-1.
/// Throws PreconditionError when mesh_norm > pi/4.
ScatteredSet uniform_subset(const ScatteredSet& set);

/// One angle drawn uniformly from the open interval (k pi/M, (k+1) pi/M) for
/// each k = 0 .. M-1.
///
/// Generator: std::mt19937_64 constructed from `seed`; each draw r gives
/// u = ((r >> 11) + 0.5) * 2^-53 in (0, 1) and theta_k = (k + u) pi / M,
/// consuming one draw per k in increasing k. Both the engine and this
/// mapping are fully specified, so streams agree across platforms.
ScatteredSet random_points(int count, std::uint64_t seed);

/// `count` standard normal draws: Box-Muller on the uniform mapping of
/// random_points, two normals per pair of draws.
std::vector<double> standard_normals(std::size_t count, std::uint64_t seed);

} // namespace jacoframe

#endif // JACOFRAME_POINT_SET_HPP
