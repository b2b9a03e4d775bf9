#pragma once

// Exact integer lattice algebra in rank 2: vectors, unimodular matrices and
// the parabolic matrices that encode nodal monodromy.

#include <atoric/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <ostream>
#include <string>
#include <tuple>
#include <utility>

namespace atoric {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Integer& v) { return v.str(); }

inline std::string to_string(const Rational& r) {
    const Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Integer gcd(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(abs(a), abs(b));
}

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
inline std::tuple<Integer, Integer, Integer> extended_gcd(const Integer& a, const Integer& b) {
    Integer old_r = a, r = b;
    Integer old_s = 1, s = 0;
    Integer old_t = 0, t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        old_r = std::exchange(r, Integer(old_r - q * r));
        old_s = std::exchange(s, Integer(old_s - q * s));
        old_t = std::exchange(t, Integer(old_t - q * t));
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

/// Floor division for integers of either sign.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

struct LatticeVector {
    Integer x;
    Integer y;

    LatticeVector() = default;
    LatticeVector(Integer x_, Integer y_) : x(std::move(x_)), y(std::move(y_)) {}

    friend bool operator==(const LatticeVector&, const LatticeVector&) = default;

    LatticeVector operator+(const LatticeVector& o) const { return {x + o.x, y + o.y}; }
    LatticeVector operator-(const LatticeVector& o) const { return {x - o.x, y - o.y}; }
    LatticeVector operator-() const { return {-x, -y}; }
    friend LatticeVector operator*(const Integer& k, const LatticeVector& v) { return {k * v.x, k * v.y}; }

    bool is_zero() const { return x == 0 && y == 0; }
    bool is_primitive() const { return !is_zero() && gcd(x, y) == 1; }

    std::string str() const { return "(" + x.str() + "," + y.str() + ")"; }
};

inline std::ostream& operator<<(std::ostream& os, const LatticeVector& v) { return os << v.str(); }

inline Integer cross(const LatticeVector& v, const LatticeVector& w) { return v.x * w.y - v.y * w.x; }
inline Integer dot(const LatticeVector& v, const LatticeVector& w) { return v.x * w.x + v.y * w.y; }

// Counterclockwise rotation by a quarter turn.
inline LatticeVector rotate_ccw(const LatticeVector& v) { return {-v.y, v.x}; }

inline void require_primitive(const LatticeVector& v, const std::string& what) {
    if (v.is_zero()) throw Error(ErrorCode::ZeroVector, what + " is the zero vector");
    if (!v.is_primitive()) throw Error(ErrorCode::NotPrimitive, what + " " + v.str() + " is not primitive");
}

/// Row-major 2x2 integer matrix. Unimodularity is checked by the operations
/// that need it, not on construction.
struct UnimodularMatrix {
    Integer a = 1, b = 0, c = 0, d = 1;

    UnimodularMatrix() = default;
    UnimodularMatrix(Integer a_, Integer b_, Integer c_, Integer d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static UnimodularMatrix identity() { return {}; }

    /// The matrix whose columns are `first` and `second`.
    static UnimodularMatrix from_columns(const LatticeVector& first, const LatticeVector& second) {
        return {first.x, second.x, first.y, second.y};
    }

    friend bool operator==(const UnimodularMatrix&, const UnimodularMatrix&) = default;

    Integer det() const { return a * d - b * c; }
    Integer trace() const { return a + d; }
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }

    UnimodularMatrix operator*(const UnimodularMatrix& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    LatticeVector operator*(const LatticeVector& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }

    UnimodularMatrix transpose() const { return {a, c, b, d}; }

    /// Exact inverse; requires det = +-1.
    UnimodularMatrix inverse() const {
        const Integer D = det();
        if (D != 1 && D != -1)
            throw Error(ErrorCode::NotParabolic, "matrix " + str() + " is not unimodular (det " + D.str() + ")");
        return {D * d, -D * b, -D * c, D * a};
    }

    std::string str() const {
        return "[[" + a.str() + "," + b.str() + "],[" + c.str() + "," + d.str() + "]]";
    }
};

inline std::ostream& operator<<(std::ostream& os, const UnimodularMatrix& m) { return os << m.str(); }

inline UnimodularMatrix power(UnimodularMatrix base, Integer exponent) {
    if (exponent < 0) {
        base = base.inverse();
        exponent = -exponent;
    }
    UnimodularMatrix result;
    while (exponent > 0) {
        if ((exponent & 1) != 0) result = result * base;
        base = base * base;
        exponent >>= 1;
    }
    return result;
}

/// Sign normalization for eigen-directions: y > 0, or y = 0 and x > 0.
inline LatticeVector normalize_sign(const LatticeVector& v) {
    if (v.y > 0 || (v.y == 0 && v.x > 0)) return v;
    return -v;
}

/// The k-th power of the parabolic matrix fixing a primitive direction e,
/// acting by v -> v - k (v x e) e.
class ParabolicMonodromy {
public:
    ParabolicMonodromy(LatticeVector eigen, Integer multiplicity) {
        require_primitive(eigen, "eigenvector");
        if (multiplicity <= 0)
            throw Error(ErrorCode::NotParabolic, "multiplicity must be positive, got " + multiplicity.str());
        eigen_ = normalize_sign(eigen);
        multiplicity_ = std::move(multiplicity);
    }

    const LatticeVector& eigen() const { return eigen_; }
    const Integer& multiplicity() const { return multiplicity_; }

    UnimodularMatrix to_matrix() const {
        const Integer& p = eigen_.x;
        const Integer& q = eigen_.y;
        const Integer& m = multiplicity_;
        return {1 - m * p * q, m * p * p, -m * q * q, 1 + m * p * q};
    }

    friend bool operator==(const ParabolicMonodromy&, const ParabolicMonodromy&) = default;

    std::string str() const { return "A" + eigen_.str() + (multiplicity_ == 1 ? "" : "^" + multiplicity_.str()); }

private:
    LatticeVector eigen_;
    Integer multiplicity_;
};

inline std::ostream& operator<<(std::ostream& os, const ParabolicMonodromy& p) { return os << p.str(); }

inline ParabolicMonodromy parabolic_from_eigen(const Integer& a, const Integer& b, const Integer& mult = 1) {
    return ParabolicMonodromy({a, b}, mult);
}

inline LatticeVector apply_parabolic(const ParabolicMonodromy& p, const LatticeVector& v) {
    return v - (p.multiplicity() * cross(v, p.eigen())) * p.eigen();
}

/// Inverse of ParabolicMonodromy::to_matrix on trace-2, det-1 matrices that
/// are positive powers of a conjugate of [[1,1],[0,1]].
inline ParabolicMonodromy parabolic_from_matrix(const UnimodularMatrix& M) {
    if (M.det() != 1) throw Error(ErrorCode::OrientationReversing, "matrix " + M.str() + " does not have determinant +1");
    if (M.is_identity()) throw Error(ErrorCode::IdentityMonodromy, "identity is not a single-node monodromy");
    if (M.trace() != 2) throw Error(ErrorCode::NotParabolic, "matrix " + M.str() + " has trace " + M.trace().str() + ", not 2");

    // M - I = m [[-ab, a^2], [-b^2, ab]] with gcd(a, b) = 1, m > 0.
    const Integer n11 = M.a - 1, n12 = M.b, n21 = M.c, n22 = M.d - 1;
    if (n12 < 0 || n21 > 0)
        throw Error(ErrorCode::NotParabolic, "matrix " + M.str() + " is a negative power of a parabolic");
    const Integer m = gcd(n12, n21);
    const Integer a2 = n12 / m;
    const Integer b2 = -n21 / m;
    const Integer a = boost::multiprecision::sqrt(a2);
    const Integer b = boost::multiprecision::sqrt(b2);
    if (a * a != a2 || b * b != b2)
        throw Error(ErrorCode::NotParabolic, "matrix " + M.str() + " is not conjugate to a power of [[1,1],[0,1]]");
    // sign(ab) = -sign(n11); choose b >= 0.
    LatticeVector e = (n11 > 0) ? LatticeVector{-a, b} : LatticeVector{a, b};
    if (n11 == 0 && n22 != 0)
        throw Error(ErrorCode::NotParabolic, "matrix " + M.str() + " is not conjugate to a power of [[1,1],[0,1]]");
    ParabolicMonodromy p(e, m);
    if (p.to_matrix() != M)
        throw Error(ErrorCode::NotParabolic, "matrix " + M.str() + " is not conjugate to a power of [[1,1],[0,1]]");
    return p;
}

/// The affine monodromy dual to a topological one: (M^-1)^T.
inline UnimodularMatrix affine_from_topological(const UnimodularMatrix& M) { return M.inverse().transpose(); }

}  // namespace atoric
