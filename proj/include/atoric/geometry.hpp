#pragma once

// Turning angles of boundary tangents at nodes. All inputs to the arctangent
// are exact integer cross and dot products; this is the only floating-point
// code in the library.

#include <atoric/base.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace atoric {

struct TurningReport {
    std::vector<double> angles;
    double total = 0.0;
};

namespace detail {

/// atan2 of two exact integers that may exceed the double range.
inline double exact_atan2(Integer y, Integer x) {
    const auto bits = [](const Integer& v) { return v == 0 ? 0u : boost::multiprecision::msb(abs(v)); };
    const unsigned top = std::max(bits(y), bits(x));
    if (top > 1000) {
        y >>= (top - 1000);
        x >>= (top - 1000);
    }
    return std::atan2(y.convert_to<double>(), x.convert_to<double>());
}

}  // namespace detail

/// Angle theta in [0, pi) with tan theta = (Av x v) / (Av . v).
inline double node_turning_angle(const ParabolicMonodromy& p, const LatticeVector& v) {
    if (v.is_zero()) throw Error(ErrorCode::ZeroVector, "turning angle of the zero vector");
    const LatticeVector Av = apply_parabolic(p, v);
    return detail::exact_atan2(cross(Av, v), dot(Av, v));
}

/// Walks v through A_1 v, A_2 A_1 v, ... summing the turning at each factor.
inline TurningReport total_turning(const FactorizationWord& word, const LatticeVector& v0) {
    if (v0.is_zero()) throw Error(ErrorCode::ZeroVector, "turning walk from the zero vector");
    TurningReport report;
    LatticeVector v = v0;
    for (const auto& f : word.factors) {
        const double theta = node_turning_angle(f, v);
        report.angles.push_back(theta);
        report.total += theta;
        v = apply_parabolic(f, v);
    }
    return report;
}

}  // namespace atoric
