#ifndef BALLGROW_GEOMETRY_HPP
#define BALLGROW_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ballgrow {

using Point = std::vector<double>;
using PointId = std::uint64_t;
using Weight = std::uint64_t;

/// Objective: sum of distances (median) or of squared distances (means).
enum class Objective { median, means };

inline int objective_power(Objective objective) { return objective == Objective::median ? 1 : 2; }

inline const char* to_string(Objective objective) { return objective == Objective::median ? "median" : "means"; }

inline Objective parse_objective(const std::string& name) {
    if (name == "median") {
        return Objective::median;
    }
    if (name == "means") {
        return Objective::means;
    }
    throw std::invalid_argument("unknown objective '" + name + "'");
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double delta = a[j] - b[j];
        acc += delta * delta;
    }
    return acc;
}

inline double distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

/// d(a,b)^p for p in {1,2}; the p=2 case squares the Euclidean distance
/// rather than skipping the root, so that d^2 is consistent with d.
inline double powered_distance(std::span<const double> a, std::span<const double> b, int power) {
    const double d = distance(a, b);
    return power == 1 ? d : d * d;
}

inline double apply_power(double dist, int power) { return power == 1 ? dist : dist * dist; }

}  // namespace ballgrow

#endif  // BALLGROW_GEOMETRY_HPP
