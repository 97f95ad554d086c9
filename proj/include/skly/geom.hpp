#pragma once

// Geometric data (Y, sigma, L) for a Sklyanin algebra and the associated
// helix of degree-3 divisor classes.
//
// Sign conventions, pinned by the helix acceptance test:
//   sigma = translation by +t on points,
//   sigma^* O(D) = O(sigma^{-1} D),
//   sigma^{-1} D translates every point of D by -t.

#include <vector>

#include "skly/curve.hpp"
#include "skly/freealg.hpp"

namespace skly {

template <class K>
struct GeometricData {
    Curve<K> curve;
    CurvePoint<K> t;           // sigma = translation by t
    Divisor<K> line_bundle;    // divisor of L, degree 3 (quadratic) or 2 (cubic)
    AlgebraKind kind = AlgebraKind::quadratic;

    int r() const { return generator_count(kind); }
    int s() const { return relation_degree(kind); }
    CurvePoint<K> tau_point() const { return curve.mul(s() + 1, t); }

    CurvePoint<K> sigma_pow(const CurvePoint<K>& p, int k) const {
        return curve.add(p, curve.mul(k, t));
    }
    /// sigma^{-k} D: every point moved by -k*t.
    Divisor<K> sigma_inv(const Divisor<K>& D, int k) const {
        return D.translated(curve, curve.mul(-static_cast<std::int64_t>(k), t));
    }
    /// tau^{-k} d with tau = sigma^{s+1}.
    Divisor<K> tau_inv(const Divisor<K>& d, int k) const {
        return d.translated(curve, curve.mul(-static_cast<std::int64_t>(k) * (s() + 1), t));
    }
    /// Delta_{i,j} = sum_{l=i}^{j-1} sigma^{-l} D0; the divisor of the
    /// twisted-ring piece B_{i,j} in the absolute model.
    Divisor<K> delta(int i, int j) const {
        Divisor<K> D;
        for (int l = i; l < j; ++l) D = D + sigma_inv(line_bundle, l);
        return D;
    }

    void validate_basic() const {
        if (line_bundle.degree() != r())
            throw ConfigError("D0", "line bundle degree must equal the generator count");
        if (!line_bundle.effective()) throw ConfigError("D0", "line bundle divisor must be effective");
        if (!curve.contains(t)) throw ConfigError("t", "translation point not on the curve");
        for (const auto& [p, m] : line_bundle.entries())
            if (!curve.contains(p)) throw ConfigError("D0", "divisor point not on the curve");
    }
};

template <class K>
struct HelixEntry {
    Divisor<K> divisor;   // divisor of L_i
    PicClass<K> cls;
};

/// L_i = M_{tau^{-i} d} (x) L^{sigma^{2i}} (x) L^{sigma^{2i+1}} realized by
/// the divisor sigma^{-2i} D0 + sigma^{-2i-1} D0 - tau^{-i} d.
template <class K>
std::vector<HelixEntry<K>> helix_from_data(const GeometricData<K>& gd, const Divisor<K>& d,
                                           int i0, int i1) {
    if (!d.effective() || d.degree() != (gd.kind == AlgebraKind::quadratic ? 3 : 1))
        throw ConfigError("points", "helix point divisor must be effective of degree 3 (quadratic) or 1 (cubic)");
    std::vector<HelixEntry<K>> out;
    for (int i = i0; i <= i1; ++i) {
        Divisor<K> E = gd.sigma_inv(gd.line_bundle, 2 * i) + gd.sigma_inv(gd.line_bundle, 2 * i + 1) -
                       gd.tau_inv(d, i);
        out.push_back(HelixEntry<K>{E, pic_class(gd.curve, E)});
    }
    return out;
}

/// [L_i] - 2[L_{i+1}] + [L_{i+2}] for consecutive helix entries.
template <class K>
PicClass<K> helix_defect(const Curve<K>& c, const HelixEntry<K>& a, const HelixEntry<K>& b,
                         const HelixEntry<K>& e) {
    return pic_add(c, pic_sub(c, a.cls, pic_scale(c, 2, b.cls)), e.cls);
}

}  // namespace skly
