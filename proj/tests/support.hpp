#pragma once

// Oracles for the unit suites. They recompute from first principles and
// never call the library function under test.

#include <atoric/atoric.hpp>

#include <gtest/gtest.h>

#include <random>

namespace oracle {

using atoric::Integer;
using atoric::LatticeVector;
using atoric::UnimodularMatrix;

// [[1 - ab, a^2], [-b^2, 1 + ab]] raised to the power m by repeated multiplication.
inline UnimodularMatrix parabolic(const Integer& a, const Integer& b, int m = 1) {
    const UnimodularMatrix A{1 - a * b, a * a, -b * b, 1 + a * b};
    UnimodularMatrix out;
    for (int i = 0; i < m; ++i) out = out * A;
    return out;
}

inline UnimodularMatrix word_product(const std::vector<UnimodularMatrix>& ms) {
    UnimodularMatrix out;
    for (const auto& m : ms) out = out * m;
    return out;
}

// Corner monodromies read off the normals: the unique parabolic with
// eigen direction u_i - u_{i-1} (scaled to primitive) sending u_i to u_{i-1}.
inline std::vector<UnimodularMatrix> corner_matrices(const atoric::DiskBase& b) {
    std::vector<UnimodularMatrix> out;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const LatticeVector& u = b.normal(i);
        const LatticeVector& w = b.normal(b.prev(i));
        const LatticeVector d{u.x - w.x, u.y - w.y};
        int mult = 1;
        LatticeVector e = d;
        if (const auto* node = std::get_if<atoric::Node>(&b.corners[i])) {
            mult = node->multiplicity.convert_to<int>();
            if (d.is_zero()) e = node->eigen;
        }
        if (!d.is_zero()) {
            const Integer g = atoric::gcd(d.x, d.y);
            e = {d.x / g, d.y / g};
        }
        out.push_back(parabolic(e.x, e.y, mult));
    }
    return out;
}

inline std::vector<Integer> n_values(const atoric::DiskBase& b) {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const Integer c = atoric::cross(b.normal(b.prev(i)), b.normal(i));
        out.push_back(boost::multiprecision::sqrt(c));
    }
    return out;
}

inline LatticeVector random_primitive(std::mt19937_64& rng, int bound) {
    std::uniform_int_distribution<int> d(-bound, bound);
    for (;;) {
        const int x = d(rng), y = d(rng);
        if (std::gcd(x, y) == 1) return {x, y};
    }
}

// Random det +1 matrix as a product of elementary shears.
inline UnimodularMatrix random_unimodular(std::mt19937_64& rng, int steps = 6) {
    std::uniform_int_distribution<int> s(-3, 3), which(0, 1);
    UnimodularMatrix U;
    for (int i = 0; i < steps; ++i)
        U = U * (which(rng) ? UnimodularMatrix(1, s(rng), 0, 1) : UnimodularMatrix(1, 0, s(rng), 1));
    return U;
}

inline std::size_t node_count(const atoric::DiskBase& b) {
    std::size_t n = 0;
    for (const auto& c : b.corners) n += atoric::is_node(c);
    return n;
}

}  // namespace oracle
