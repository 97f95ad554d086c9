#pragma once

// Bridge between curve geometry and graded algebra: evaluation panels give
// sections faithful linear coordinates, the Sklyanin presentation is the
// kernel of the section multiplication map, and the avatar matrices realize
// the quotient A -> B in the absolute-divisor model.
//
// The graded twist a.b = a (x) b^{sigma^n} is never materialized: an element
// of A_n is sent, at base index i, to the plain function
//     product_l  f_l o sigma^{i+l}
// and all products downstream are ordinary function products.

#include <map>
#include <memory>
#include <vector>

#include "skly/freealg.hpp"
#include "skly/geom.hpp"
#include "skly/sections.hpp"

namespace skly {

/// Faithful linear coordinates for sections of every L(E) with
/// deg E^+ <= capacity whose support stays inside the translate lattice.
/// Over F_p: evaluations at capacity+1 curve points chosen away from all
/// supports.  Over Q: a truncated expansion at the origin transported by
/// the group law (rational points are too scarce for a point panel).
template <class K>
class EvalPanel {
  public:
    EvalPanel(const GeometricData<K>& gd, int capacity, int reach,
              std::vector<CurvePoint<K>> support_seeds)
        : curve_(gd.curve), t_(gd.t), capacity_(capacity), reach_(reach) {
        for (const auto& [p, m] : gd.line_bundle.entries()) support_seeds.push_back(p);
        if constexpr (std::is_same_v<K, Fp>) {
            build_point_panel(support_seeds);
        } else {
            check_origin_clear(support_seeds);
            base_order_ = capacity_ + 24;
        }
    }

    int width() const {
        if constexpr (std::is_same_v<K, Fp>) return static_cast<int>(pts_.size());
        else return capacity_ + 1;
    }

    /// Coordinates of f o sigma^twist, i.e. of Q |-> f(Q + twist*t).
    std::vector<K> coords(const FFElem<K>& f, int twist) const {
        if constexpr (std::is_same_v<K, Fp>) {
            std::vector<K> row;
            row.reserve(pts_.size());
            const auto& tr = translated(twist);
            for (const auto& q : tr) {
                auto v = eval_at(curve_, f, q);
                if (!v) throw Error("panel point hit a pole; widen the avoid set");
                row.push_back(*v);
            }
            return row;
        } else {
            for (int order = base_order_;; order *= 2) {
                if (order > (1 << 14)) throw Error("jet panel: expansion cap reached");
                const SeriesPoint<K>& sp = jet_base(twist, order);
                Laurent<K> e = evaluate(f, sp);
                if (!e.known_through(capacity_)) continue;
                std::vector<K> row(static_cast<size_t>(capacity_) + 1);
                for (int k = 0; k <= capacity_; ++k) row[static_cast<size_t>(k)] = e.coeff(k);
                return row;
            }
        }
    }

    std::vector<K> one() const {
        auto d = curve_.desc();
        std::vector<K> row(static_cast<size_t>(width()), d.zero());
        if constexpr (std::is_same_v<K, Fp>) {
            for (auto& v : row) v = d.one();
        } else {
            row[0] = d.one();
        }
        return row;
    }

    /// Pointwise product of coordinate rows (truncated convolution for jets).
    std::vector<K> mul(const std::vector<K>& a, const std::vector<K>& b) const {
        auto d = curve_.desc();
        std::vector<K> r(static_cast<size_t>(width()), d.zero());
        if constexpr (std::is_same_v<K, Fp>) {
            for (size_t j = 0; j < r.size(); ++j) r[j] = a[j] * b[j];
        } else {
            for (size_t i = 0; i < r.size(); ++i) {
                if (a[i].is_zero()) continue;
                for (size_t j = 0; i + j < r.size(); ++j) {
                    if (b[j].is_zero()) continue;
                    r[i + j] += a[i] * b[j];
                }
            }
        }
        return r;
    }

  private:
    void build_point_panel(const std::vector<CurvePoint<K>>& seeds) {
        // forbidden x-coordinates: the whole translate lattice of the seed
        // supports (x covers a point and its negative at once)
        std::vector<K> banned;
        for (const auto& p : seeds) {
            if (p.inf) continue;
            for (int j = -reach_; j <= reach_; ++j) {
                auto q = curve_.add(p, curve_.mul(j, t_));
                if (!q.inf) banned.push_back(q.x);
            }
        }
        auto is_banned = [&](const K& x) {
            for (const auto& b : banned)
                if (b == x) return true;
            return false;
        };
        const std::uint64_t p = curve_.desc().p;
        for (std::uint64_t xv = 0; xv < p && static_cast<int>(pts_.size()) <= capacity_; ++xv) {
            Fp x(xv, p);
            if (is_banned(x)) continue;
            Fp rhs = curve_.rhs(x);
            if (rhs.is_zero()) continue;
            auto root = sqrt_mod(rhs.value(), p);
            if (!root) continue;
            std::uint64_t y = std::min<std::uint64_t>(*root, p - *root);
            pts_.emplace_back(x, Fp(y, p));
        }
        if (static_cast<int>(pts_.size()) <= capacity_)
            throw Error("field too small for the requested panel capacity");
    }

    // The pipeline only twists by sigma^m with m >= 0, so a support P is in
    // the way exactly when P = j*t for some j in [0, 2*reach].
    void check_origin_clear(const std::vector<CurvePoint<K>>& seeds) const {
        for (const auto& p : seeds) {
            if (p.inf)
                throw Error("jet panel requires supports away from the origin");
            for (int j = 0; j <= 2 * reach_; ++j)
                if (curve_.sub(p, curve_.mul(j, t_)).inf)
                    throw Error("jet panel: a support translate passes through the origin");
        }
    }

    const std::vector<CurvePoint<K>>& translated(int twist) const {
        auto it = translated_.find(twist);
        if (it != translated_.end()) return it->second;
        std::vector<CurvePoint<K>> tr;
        tr.reserve(pts_.size());
        auto shift = curve_.mul(twist, t_);
        for (const auto& q : pts_) tr.push_back(curve_.add(q, shift));
        return translated_.emplace(twist, std::move(tr)).first->second;
    }

    const SeriesPoint<K>& jet_base(int twist, int order) const {
        auto key = std::make_pair(twist, order);
        auto it = jets_.find(key);
        if (it != jets_.end()) return it->second;
        SeriesPoint<K> sp = expand_at_infinity(curve_, order + 16);
        sp = series_translate(curve_, sp, curve_.mul(twist, t_));
        return jets_.emplace(key, std::move(sp)).first->second;
    }

    Curve<K> curve_;
    CurvePoint<K> t_;
    int capacity_;
    int reach_;
    std::vector<CurvePoint<K>> pts_;
    mutable std::map<int, std::vector<CurvePoint<K>>> translated_;
    int base_order_ = 0;
    mutable std::map<std::pair<int, int>, SeriesPoint<K>> jets_;
};

template <class K>
struct ContextOptions {
    int truncation = 0;  // algebra degree bound; 0 picks the kind default (10 / 12)
    int reach = 0;       // highest twist index in play; 0 derives from truncation
};

template <class K>
struct ThcrPiece {
    int i = 0, j = 0;
    Divisor<K> divisor;
    std::vector<FFElem<K>> basis;
};

/// Everything a pipeline needs around one geometric datum: the generators
/// of V = L(D0), the Sklyanin presentation, the materialized algebra, the
/// evaluation panel and cached avatar matrices.  Not thread-safe (caches);
/// concurrent pipelines own separate contexts.
template <class K>
class SectionContext {
  public:
    SectionContext(GeometricData<K> gd, ContextOptions<K> opts = {},
                   std::vector<CurvePoint<K>> extra_avoid = {})
        : gd_(std::move(gd)) {
        gd_.validate_basic();
        truncation_ = opts.truncation > 0
                          ? opts.truncation
                          : (gd_.kind == AlgebraKind::quadratic ? 10 : 12);
        reach_ = opts.reach > 0 ? opts.reach : truncation_ + 2 * (gd_.s() + 1) + 4;
        const int capacity = gd_.r() * (truncation_ + 2) + 4;
        panel_ = std::make_unique<EvalPanel<K>>(gd_, capacity, reach_, extra_avoid);

        generators_ = riemann_roch_space(gd_.curve, gd_.line_bundle);
        if (static_cast<int>(generators_.size()) != gd_.r())
            throw GenericityError({"section space of the line bundle has wrong dimension"});
        presentation_ = build_presentation();
        algebra_ = std::make_unique<GradedAlgebra<K>>(presentation_, truncation_);
    }

    const GeometricData<K>& gd() const { return gd_; }
    const GradedAlgebra<K>& algebra() const { return *algebra_; }
    const GradedPresentation<K>& presentation() const { return presentation_; }
    const std::vector<FFElem<K>>& generators() const { return generators_; }
    const EvalPanel<K>& panel() const { return *panel_; }
    int truncation() const { return truncation_; }

    /// Panel coordinates of the generator section g twisted by sigma^m.
    const std::vector<K>& gen_row(int g, int m) const {
        auto key = std::make_pair(g, m);
        auto it = gen_rows_.find(key);
        if (it != gen_rows_.end()) return it->second;
        return gen_rows_.emplace(key, panel_->coords(generators_[static_cast<size_t>(g)], m))
            .first->second;
    }

    /// Avatar matrix of A_n at base index i: row e = coordinates of the
    /// function prod_l f_l o sigma^{i+l} attached to the basis monomial e.
    const Matrix<K>& avatar(int n, int base) const {
        auto key = std::make_pair(n, base);
        auto it = avatars_.find(key);
        if (it != avatars_.end()) return it->second;
        Matrix<K> m(algebra_->dim(n), panel_->width(), desc());
        if (n == 0) {
            m.set_row(0, panel_->one());
        } else {
            const Matrix<K>& prev = avatar(n - 1, base);
            for (int e = 0; e < algebra_->dim(n); ++e) {
                auto [b, g] = algebra_->lift(n, e);
                m.set_row(e, panel_->mul(prev.row(b), gen_row(g, base + n - 1)));
            }
        }
        return avatars_.emplace(key, std::move(m)).first->second;
    }

    /// Avatar values at explicit points (vanishing conditions, orbits).
    Matrix<K> avatar_at_points(int n, int base, const std::vector<CurvePoint<K>>& pts) const {
        Matrix<K> m(algebra_->dim(n), static_cast<int>(pts.size()), desc());
        if (algebra_->dim(n) == 0 || pts.empty()) return m;
        // values of f_g at pts translated by (base+l)*t, degree by degree
        Matrix<K> cur(1, static_cast<int>(pts.size()), desc());
        for (size_t j = 0; j < pts.size(); ++j) cur.at(0, static_cast<int>(j)) = desc().one();
        std::vector<Matrix<K>> stage{cur};
        for (int l = 0; l < n; ++l) {
            Matrix<K> next(algebra_->dim(l + 1), static_cast<int>(pts.size()), desc());
            std::vector<std::vector<K>> gvals(static_cast<size_t>(gd_.r()));
            auto shift = gd_.curve.mul(base + l, gd_.t);
            for (int g = 0; g < gd_.r(); ++g) {
                gvals[static_cast<size_t>(g)].resize(pts.size());
                for (size_t j = 0; j < pts.size(); ++j) {
                    auto v = eval_at(gd_.curve, generators_[static_cast<size_t>(g)],
                                     gd_.curve.add(pts[j], shift));
                    if (!v) throw GenericityError({"vanishing-condition point hits a section pole"});
                    gvals[static_cast<size_t>(g)][j] = *v;
                }
            }
            for (int e = 0; e < algebra_->dim(l + 1); ++e) {
                auto [b, g] = algebra_->lift(l + 1, e);
                for (size_t j = 0; j < pts.size(); ++j)
                    next.at(e, static_cast<int>(j)) =
                        stage.back().at(b, static_cast<int>(j)) * gvals[static_cast<size_t>(g)][j];
            }
            stage.push_back(std::move(next));
        }
        return stage.back();
    }

    Divisor<K> delta(int i, int j) const { return gd_.delta(i, j); }

    const ThcrPiece<K>& thcr_piece(int i, int j) const {
        auto key = std::make_pair(i, j);
        auto it = thcr_.find(key);
        if (it != thcr_.end()) return it->second;
        ThcrPiece<K> piece;
        piece.i = i;
        piece.j = j;
        piece.divisor = delta(i, j);
        piece.basis = (i == j) ? std::vector<FFElem<K>>{FFElem<K>::one(desc())}
                               : riemann_roch_space(gd_.curve, piece.divisor);
        return thcr_.emplace(key, std::move(piece)).first->second;
    }

    /// Panel-coordinate matrix of a list of sections (absolute, twist 0).
    Matrix<K> section_matrix(const std::vector<FFElem<K>>& fs) const {
        Matrix<K> m(static_cast<int>(fs.size()), panel_->width(), desc());
        for (size_t i = 0; i < fs.size(); ++i) m.set_row(static_cast<int>(i), panel_->coords(fs[i], 0));
        return m;
    }

    typename K::Desc desc() const { return gd_.curve.desc(); }

  private:
    GradedPresentation<K> build_presentation() {
        const int r = gd_.r(), s = gd_.s();
        int nwords = 1;
        for (int l = 0; l < s; ++l) nwords *= r;
        Matrix<K> rows(nwords, panel_->width(), desc());
        for (int w = 0; w < nwords; ++w) {
            int code = w;
            std::vector<int> letters(static_cast<size_t>(s));
            for (int l = s - 1; l >= 0; --l) {
                letters[static_cast<size_t>(l)] = code % r;
                code /= r;
            }
            std::vector<K> row = panel_->one();
            for (int l = 0; l < s; ++l)
                row = panel_->mul(row, gen_row(letters[static_cast<size_t>(l)], l));
            rows.set_row(w, row);
        }
        Subspace<K> rel = kernel(rows);
        if (rel.dim() != expected_relation_count(gd_.kind))
            throw GenericityError({"relation space has dimension " + std::to_string(rel.dim()) +
                                   ", expected " + std::to_string(expected_relation_count(gd_.kind))});
        GradedPresentation<K> p;
        p.gens = r;
        p.rel_degree = s;
        p.relations = rel;
        return p;
    }

    GeometricData<K> gd_;
    int truncation_ = 0;
    int reach_ = 0;
    std::unique_ptr<EvalPanel<K>> panel_;
    std::vector<FFElem<K>> generators_;
    GradedPresentation<K> presentation_;
    std::unique_ptr<GradedAlgebra<K>> algebra_;
    mutable std::map<std::pair<int, int>, std::vector<K>> gen_rows_;
    mutable std::map<std::pair<int, int>, Matrix<K>> avatars_;
    mutable std::map<std::pair<int, int>, ThcrPiece<K>> thcr_;
};

/// Sklyanin presentation from geometric data (the relation kernel of the
/// degree-s section multiplication).
template <class K>
GradedPresentation<K> construct_sklyanin(const GeometricData<K>& gd) {
    ContextOptions<K> opts;
    opts.truncation = gd.s() + 1;
    SectionContext<K> ctx(gd, opts);
    return ctx.presentation();
}

/// Data of the map A_n -> B-piece at base index i.
template <class K>
struct ThcrMap {
    Subspace<K> kernel_space;  // subspace of A_n
    int image_dim = 0;
    int target_dim = 0;
    bool surjective = false;
};

template <class K>
ThcrMap<K> algebra_to_thcr(const SectionContext<K>& ctx, int n, int base) {
    ThcrMap<K> m;
    const Matrix<K>& av = ctx.avatar(n, base);
    m.kernel_space = kernel(av);
    m.image_dim = ctx.algebra().dim(n) - m.kernel_space.dim();
    m.target_dim = static_cast<int>(ctx.thcr_piece(base, base + n).basis.size());
    m.surjective = m.image_dim == m.target_dim;
    return m;
}

/// Evaluation table along the sigma-orbit of q: alpha(n, g) = f_g(q + n t).
template <class K>
Matrix<K> orbit_evaluation_table(const SectionContext<K>& ctx, const CurvePoint<K>& q, int length) {
    Matrix<K> alpha(length, ctx.gd().r(), ctx.desc());
    for (int n = 0; n < length; ++n) {
        auto pt = ctx.gd().sigma_pow(q, n);
        for (int g = 0; g < ctx.gd().r(); ++g) {
            auto v = eval_at(ctx.gd().curve, ctx.generators()[static_cast<size_t>(g)], pt);
            if (!v) throw GenericityError({"point-module base point meets a section pole"});
            alpha.at(n, g) = *v;
        }
    }
    return alpha;
}

/// Point module of q over the Sklyanin algebra, acting by evaluation along
/// the sigma-orbit.
template <class K>
PointModuleData<K> point_module(const SectionContext<K>& ctx, const CurvePoint<K>& q, int length) {
    return make_point_module(ctx.algebra(), orbit_evaluation_table(ctx, q, length));
}

}  // namespace skly
