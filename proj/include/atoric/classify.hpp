#pragma once

// Diffeomorphism type of the total space of a closed almost toric
// four-manifold, read off from its base; torus-bundle equivalence; and the
// compatibility test for exchanging two nodal neighborhoods.

#include <atoric/normalize.hpp>

#include <string>
#include <variant>

namespace atoric {

namespace manifold {

/// CP^2 # n (CP^2-bar); n = 0 is CP^2.
struct CP2BlownUp {
    Integer blowups;
    friend bool operator==(const CP2BlownUp&, const CP2BlownUp&) = default;
};
struct S2xS2 {
    friend bool operator==(const S2xS2&, const S2xS2&) = default;
};
/// (S^2 x T^2) or the twisted bundle, # n (CP^2-bar).
struct SphereBundleOverT2 {
    bool twisted = false;
    Integer blowups;
    friend bool operator==(const SphereBundleOverT2&, const SphereBundleOverT2&) = default;
};
struct K3 {
    friend bool operator==(const K3&, const K3&) = default;
};
struct Enriques {
    friend bool operator==(const Enriques&, const Enriques&) = default;
};
/// Torus bundle over the torus with monodromy {I, [[1, lambda], [0, 1]]}.
struct TorusBundleOverT2 {
    Integer lambda;
    ChernClass chern;
    friend bool operator==(const TorusBundleOverT2&, const TorusBundleOverT2&) = default;
};
/// Torus bundle over the Klein bottle with monodromy
/// {[[1, 0], [0, -1]], [[1, lambda], [0, 1]]}; chern is that of the double cover.
struct TorusBundleOverK {
    Integer lambda;
    ChernClass chern;
    friend bool operator==(const TorusBundleOverK&, const TorusBundleOverK&) = default;
};

}  // namespace manifold

using ClassificationResult =
    std::variant<manifold::CP2BlownUp, manifold::S2xS2, manifold::SphereBundleOverT2, manifold::K3,
                 manifold::Enriques, manifold::TorusBundleOverT2, manifold::TorusBundleOverK>;

namespace detail {

inline std::string blowup_suffix(const Integer& n) {
    if (n == 0) return "";
    return " # " + n.str() + " CP2bar";
}

inline std::string chern_str(const ChernClass& c) { return "(" + c.m.str() + "," + c.n.str() + ")"; }

}  // namespace detail

/// Single-line text form, e.g. `CP2 # 3 CP2bar`, `K3`, `T2-bundle lambda=2 chern=(1,0)`.
inline std::string to_string(const ClassificationResult& result) {
    using namespace manifold;
    return std::visit(
        [](const auto& r) -> std::string {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, CP2BlownUp>) return "CP2" + detail::blowup_suffix(r.blowups);
            else if constexpr (std::is_same_v<R, S2xS2>) return "S2xS2";
            else if constexpr (std::is_same_v<R, SphereBundleOverT2>)
                return std::string(r.twisted ? "S2~xT2" : "S2xT2") + detail::blowup_suffix(r.blowups);
            else if constexpr (std::is_same_v<R, K3>) return "K3";
            else if constexpr (std::is_same_v<R, Enriques>) return "Enriques";
            else if constexpr (std::is_same_v<R, TorusBundleOverT2>)
                return "T2-bundle lambda=" + r.lambda.str() + " chern=" + detail::chern_str(r.chern);
            else return "T2-bundle-over-Klein lambda=" + r.lambda.str() + " chern=" + detail::chern_str(r.chern);
        },
        result);
}

/// |a| for a 4-edge Delzant polygon brought to normals (1,0), (0,1), (-1,a), (0,-1).
inline Integer hirzebruch_parameter(const DiskBase& fan) {
    if (fan.size() != 4 || !is_delzant(fan))
        throw Error(ErrorCode::InvalidBase, "hirzebruch_parameter needs a 4-edge Delzant polygon");
    for (std::size_t i = 0; i < 4; ++i) {
        const LatticeVector& u0 = fan.normal(i);
        const LatticeVector& u1 = fan.normal(i + 1);
        const LatticeVector& u2 = fan.normal(i + 2);
        const LatticeVector& u3 = fan.normal(i + 3);
        if (!(u1 + u3).is_zero()) continue;
        const UnimodularMatrix U = UnimodularMatrix::from_columns(u0, u1).inverse();
        const LatticeVector w = U * u2;
        if (w.x != -1 || U * u3 != LatticeVector{0, -1})
            throw Error(ErrorCode::InvalidBase, "4-edge fan does not normalize to Hirzebruch form");
        return abs(w.y);
    }
    throw Error(ErrorCode::InvalidBase, "4-edge fan has no pair of opposite normals");
}

inline ClassificationResult classify(const DiskBase& base) {
    const Integer chi = euler_characteristic(base);
    const MinimalModel core = minimal_model(to_toric(base).base);
    // Only the unblown-up 4-edge case distinguishes S2xS2: any further
    // blow-up of S2xS2 is diffeomorphic to CP2 # (chi-3) CP2bar.
    if (core.base.size() == 4 && chi == 4 && hirzebruch_parameter(core.base) % 2 == 0) return manifold::S2xS2{};
    return manifold::CP2BlownUp{chi - 3};
}

inline ClassificationResult classify(const NonDiskBase& base) {
    require_valid(base);
    switch (base.topology) {
        case Topology::Cylinder:
        case Topology::Moebius:
            return manifold::SphereBundleOverT2{base.lambda % 2 != 0, base.nodes};
        case Topology::Sphere:
            return manifold::K3{};
        case Topology::RP2:
            return manifold::Enriques{};
        case Topology::Torus:
            return manifold::TorusBundleOverT2{base.lambda, *base.chern};
        case Topology::KleinBottle:
            return manifold::TorusBundleOverK{base.lambda, *base.chern};
    }
    throw Error(ErrorCode::InvalidBase, "unknown topology");
}

inline ClassificationResult classify(const AnyBase& base) {
    return std::visit([](const auto& b) { return classify(b); }, base);
}

// ---------------------------------------------------------------------------
// Torus bundles over the torus

struct BundleData {
    Integer lambda;
    Integer m;
    Integer n;
};

enum class BundleRelation { EquivalentBundles, EqualDiffeoTypeB1Ge3, Distinct };

inline std::string to_string(BundleRelation r) {
    switch (r) {
        case BundleRelation::EquivalentBundles: return "equivalent_bundles";
        case BundleRelation::EqualDiffeoTypeB1Ge3: return "equal_diffeo_type_b1_ge_3";
        case BundleRelation::Distinct: return "distinct";
    }
    return "distinct";
}

/// (lambda, m, n) ~ (lambda', m', n') as bundles iff lambda' = e lambda,
/// n' = e n for a sign e, and m' - m lies in lambda Z + n Z.
inline bool bundles_equivalent(const BundleData& a, const BundleData& b) {
    for (int eps : {1, -1}) {
        if (b.lambda != eps * a.lambda || b.n != eps * a.n) continue;
        const Integer g = gcd(a.lambda, a.n);
        const Integer diff = b.m - a.m;
        if (g == 0 ? diff == 0 : diff % g == 0) return true;
    }
    return false;
}

inline BundleRelation torus_bundle_equivalent(const BundleData& a, const BundleData& b) {
    if (bundles_equivalent(a, b)) return BundleRelation::EquivalentBundles;
    const bool a_large_b1 = a.lambda == 0 || a.n == 0;
    const bool b_large_b1 = b.lambda == 0 || b.n == 0;
    if (a_large_b1 && b_large_b1) return BundleRelation::EqualDiffeoTypeB1Ge3;
    return BundleRelation::Distinct;
}

// ---------------------------------------------------------------------------
// Surgery compatibility

struct SurgerySpec {
    FactorizationWord word_a;
    FactorizationWord word_b;
    LatticeVector v;
};

struct SurgeryReport {
    bool vector_match = false;
    std::size_t sign_changes_a = 0;
    std::size_t sign_changes_b = 0;
    bool compatible = false;

    friend bool operator==(const SurgeryReport&, const SurgeryReport&) = default;
};

/// Number of sign changes of (A_i ... A_1 v) x v for i = 1..m, zeros skipped.
inline std::size_t prefix_sign_changes(const FactorizationWord& word, const LatticeVector& v) {
    std::size_t changes = 0;
    int last = 0;
    LatticeVector w = v;
    for (const auto& f : word.factors) {
        w = apply_parabolic(f, w);
        const Integer c = cross(w, v);
        const int s = c > 0 ? 1 : (c < 0 ? -1 : 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

inline LatticeVector apply_word(const FactorizationWord& word, LatticeVector v) {
    for (const auto& f : word.factors) v = apply_parabolic(f, v);
    return v;
}

inline SurgeryReport surgery_compatible(const SurgerySpec& spec) {
    if (spec.v.is_zero()) throw Error(ErrorCode::ZeroVector, "surgery vector is zero");
    SurgeryReport report;
    report.vector_match = apply_word(spec.word_a, spec.v) == apply_word(spec.word_b, spec.v);
    report.sign_changes_a = prefix_sign_changes(spec.word_a, spec.v);
    report.sign_changes_b = prefix_sign_changes(spec.word_b, spec.v);
    report.compatible = report.vector_match && report.sign_changes_a == report.sign_changes_b;
    return report;
}

}  // namespace atoric
