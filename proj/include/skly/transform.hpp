#pragma once

// The birational constructions: quadric-to-plane (cubic -> quadratic data),
// the noncommutative Cremona transform (quadratic -> quadratic), the
// genericity validator guarding both, and the function-field embedding
// witness search.

#include <string>
#include <vector>

#include "skly/zalgebra.hpp"

namespace skly {

/// Collected hypotheses: distinct points, non-collinearity (quadratic),
/// sigma^{s+1} != id, and collision-freeness of every point constellation
/// used on the window.
template <class K>
std::vector<std::string> validate_genericity(const GeometricData<K>& gd, const Divisor<K>& d,
                                             const Window& w) {
    std::vector<std::string> bad;
    const auto& c = gd.curve;

    if (!c.contains(gd.t)) bad.push_back("translation point not on the curve");
    for (const auto& [p, m] : d.entries())
        if (!c.contains(p)) bad.push_back("vanishing point not on the curve");
    if (!d.effective()) bad.push_back("vanishing divisor not effective");
    for (const auto& [p, m] : d.entries())
        if (m != 1) bad.push_back("points not distinct");
    const int want = gd.kind == AlgebraKind::quadratic ? 3 : 1;
    if (d.degree() != want) bad.push_back("wrong number of vanishing points");

    if (gd.tau_point().inf) {
        bad.push_back("sigma^(s+1)=id");
        bad.push_back(gd.kind == AlgebraKind::quadratic ? "sigma-3-torsion" : "sigma-4-torsion");
    }

    if (gd.kind == AlgebraKind::quadratic && d.degree() == 3 && d.effective() &&
        pic_class(c, d) == pic_class(c, gd.line_bundle))
        bad.push_back("collinear");

    // constellation collisions on the window: tau-translates of d must be
    // pairwise disjoint and must avoid the sigma-translates of the
    // line-bundle support where sections are evaluated
    const int lmax = w.m1 + w.amax;
    const int jmax = 2 * lmax + gd.s() + 2;
    {
        std::vector<CurvePoint<K>> seen;
        bool collision = false;
        for (int l = w.m0; l < lmax && !collision; ++l) {
            Divisor<K> dl = gd.tau_inv(d, l);
            for (const auto& [p, m] : dl.entries()) {
                for (const auto& q : seen)
                    if (q == p) collision = true;
                seen.push_back(p);
            }
        }
        if (collision) bad.push_back("tau-orbit of the vanishing points collides with itself");
    }
    {
        bool collision = false;
        for (int l = w.m0; l < lmax && !collision; ++l) {
            Divisor<K> dl = gd.tau_inv(d, l);
            for (const auto& [p, m] : dl.entries())
                for (int j = 0; j <= jmax && !collision; ++j) {
                    Divisor<K> sj = gd.sigma_inv(gd.line_bundle, j);
                    for (const auto& [q, mq] : sj.entries())
                        if (p == q) collision = true;
                }
        }
        if (collision) bad.push_back("vanishing point meets a section divisor on the window");
    }
    return bad;
}

template <class K>
struct PipelineOptions {
    Window window{};
    int truncation = 0;  // 0 = smallest bound covering the window
};

template <class K>
struct TransformReport {
    AlgebraKind input_kind = AlgebraKind::quadratic;
    Divisor<K> points;
    Certificate certificate;
    std::map<std::pair<int, int>, int> hilbert;
    std::map<std::pair<int, int>, int> colength;

    // output geometric data (always a quadratic triple)
    CurvePoint<K> out_translation;
    Divisor<K> out_line_bundle;  // divisor of L_0
    PicClass<K> out_class;

    // translation bookkeeping for the cubic input: 3u = 4t
    bool has_torsion_data = false;
    bool torsion_exact = false;
    int torsion_roots = 0;
    bool torsion_roots_full = false;
};

namespace detail {

template <class K>
struct BuiltPipeline {
    std::shared_ptr<SectionContext<K>> ctx;
    Divisor<K> d;
    ZSubalgebra<K> D;
};

template <class K>
BuiltPipeline<K> build_pipeline(const GeometricData<K>& gd, const Divisor<K>& d,
                                const PipelineOptions<K>& opts) {
    auto bad = validate_genericity(gd, d, opts.window);
    if (!bad.empty()) throw GenericityError(bad);
    const Window& w = opts.window;
    ContextOptions<K> copts;
    copts.truncation = opts.truncation > 0 ? opts.truncation : 2 * w.amax + 2;
    copts.reach = (gd.s() + 1) * (w.m1 + w.amax) + 8;
    std::vector<CurvePoint<K>> avoid = d.support();
    BuiltPipeline<K> out;
    out.ctx = std::make_shared<SectionContext<K>>(gd, copts, avoid);
    out.d = d;
    std::map<int, Subspace<K>> pieces;
    for (int m = w.m0; m <= w.m1 + w.amax - 1; ++m)
        pieces.emplace(m, degree_one_piece(*out.ctx, d, m));
    out.D = generate(*out.ctx, pieces, w);
    return out;
}

template <class K>
TransformReport<K> report_common(const BuiltPipeline<K>& pipe) {
    TransformReport<K> rep;
    const auto& gd = pipe.ctx->gd();
    rep.input_kind = gd.kind;
    rep.points = pipe.d;
    rep.certificate = certify_as_regular(*pipe.ctx, pipe.D, pipe.d);
    rep.hilbert = hilbert_table(pipe.D);
    rep.colength = colength_table(*pipe.ctx, pipe.D);
    // L_0 = sigma^0 D0 + sigma^{-1} D0 - d
    rep.out_line_bundle = gd.line_bundle + gd.sigma_inv(gd.line_bundle, 1) - pipe.d;
    rep.out_class = pic_class(gd.curve, rep.out_line_bundle);
    return rep;
}

}  // namespace detail

/// Cubic Sklyanin data + one point -> quadratic data (Y, psi, L_0) with
/// 3 * psi-point = 4 * t; the new translation is a cube root chosen
/// deterministically, ambiguity by 3-torsion reported alongside.
template <class K>
TransformReport<K> quadric_to_plane(const GeometricData<K>& gd, const CurvePoint<K>& p,
                                    const PipelineOptions<K>& opts = {}) {
    if (gd.kind != AlgebraKind::cubic)
        throw ConfigError("kind", "quadric-to-plane expects cubic input data");
    auto pipe = detail::build_pipeline(gd, Divisor<K>::of_point(p), opts);
    TransformReport<K> rep = detail::report_common(pipe);
    rep.has_torsion_data = true;
    auto target = gd.curve.mul(4, gd.t);
    auto roots = divide_point(gd.curve, 3, target);
    rep.torsion_roots = static_cast<int>(roots.solutions.size());
    rep.torsion_roots_full = roots.full_torsion;
    rep.out_translation = roots.canonical();  // throws TorsionSearchError when empty
    rep.torsion_exact = gd.curve.mul(3, rep.out_translation) == target;
    return rep;
}

/// Quadratic Sklyanin data + three points -> quadratic data with the same
/// translation and the helix line bundle L_0.
template <class K>
TransformReport<K> cremona(const GeometricData<K>& gd, const CurvePoint<K>& p1,
                           const CurvePoint<K>& p2, const CurvePoint<K>& p3,
                           const PipelineOptions<K>& opts = {}) {
    if (gd.kind != AlgebraKind::quadratic)
        throw ConfigError("kind", "cremona expects quadratic input data");
    auto pipe = detail::build_pipeline(gd, Divisor<K>::of_points({p1, p2, p3}), opts);
    TransformReport<K> rep = detail::report_common(pipe);
    rep.out_translation = gd.t;
    return rep;
}

// ---------------------------------------------------------------------------
// Function-field embedding witness

template <class K>
struct WitnessReport {
    int n = 1;
    int base_index = 0;
    int Nmax = 8;
    struct Row {
        int N = 0;
        long long closed_form_bound = 0;  // dim A_{2N} - colength of the ideal
        int vanishing_dim = 0;            // avatar-vanishing subspace of A_{2N}
        int exact_dim = 0;                // {h : a h in D for all ambient a}
    };
    std::vector<Row> rows;
    int first_positive_bound_N = -1;
    int found_N = -1;
    std::vector<K> witness;
    bool membership_ok = false;
    bool vanishing_ok = false;
};

inline long long witness_bound(AlgebraKind kind, int n, int N) {
    if (kind == AlgebraKind::quadratic)
        return static_cast<long long>(2 * N + 1) * (2 * N + 2) / 2 -
               3LL * (n + N) * (n + N + 1) / 2;
    return static_cast<long long>(N + 1) * (N + 1) - static_cast<long long>(n + N) * (n + N + 1) / 2;
}

/// Search for the smallest N <= Nmax such that some nonzero h in A_{2N}
/// multiplies the whole ambient piece A_{2n} into D_{i, i+n+N}.  The exact
/// search space is the membership kernel; the avatar-vanishing space and
/// the closed-form dimension bound are computed alongside as cross-checks.
template <class K>
WitnessReport<K> function_field_witness(const GeometricData<K>& gd, const Divisor<K>& d, int n,
                                        int Nmax, int base_index = 0) {
    WitnessReport<K> rep;
    rep.n = n;
    rep.base_index = base_index;
    rep.Nmax = Nmax;

    Window w{base_index, base_index, n + Nmax};
    auto bad = validate_genericity(gd, d, w);
    if (!bad.empty()) throw GenericityError(bad);

    ContextOptions<K> copts;
    copts.truncation = 2 * (n + Nmax);
    copts.reach = (gd.s() + 1) * (base_index + n + Nmax) + 8;
    SectionContext<K> ctx(gd, copts, d.support());
    const auto& A = ctx.algebra();
    std::map<int, Subspace<K>> pieces;
    for (int m = w.m0; m <= w.m1 + w.amax - 1; ++m)
        pieces.emplace(m, degree_one_piece(ctx, d, m));
    ZSubalgebra<K> D = generate(ctx, pieces, w);

    auto desc = ctx.desc();
    const int i = base_index;
    for (int N = 1; N <= Nmax; ++N) {
        typename WitnessReport<K>::Row row;
        row.N = N;
        row.closed_form_bound = witness_bound(gd.kind, n, N);
        if (rep.first_positive_bound_N < 0 && row.closed_form_bound > 0)
            rep.first_positive_bound_N = N;

        // avatar-vanishing space: h with avatar at base 2(i+n) vanishing on
        // the full constellation of D_{i, i+n+N}
        auto pts = vanishing_constellation(gd, d, i, i + n + N - 1);
        Subspace<K> vanishing = kernel(ctx.avatar_at_points(2 * N, 2 * (i + n), pts));
        row.vanishing_dim = vanishing.dim();

        // exact space: stack the membership constraints over an ambient basis
        const Subspace<K>& cell = D.cell(i, i + n + N);
        Matrix<K> res = cell.residual_matrix();
        const int src = A.dim(2 * N);
        const int wcols = A.dim(2 * (n + N));
        Matrix<K> stacked(src, A.dim(2 * n) * wcols, desc);
        std::vector<Matrix<K>> mults;
        for (int j = 0; j < A.dim(2 * n); ++j) {
            std::vector<K> aj(static_cast<size_t>(A.dim(2 * n)), desc.zero());
            aj[static_cast<size_t>(j)] = desc.one();
            Matrix<K> Mj = A.left_mul_matrix(aj, 2 * n, 2 * N);
            mults.push_back(Mj);
            Matrix<K> MjR = Mj * res;
            for (int a = 0; a < src; ++a)
                for (int b = 0; b < wcols; ++b) stacked.at(a, j * wcols + b) = MjR.at(a, b);
        }
        Subspace<K> exact = kernel(stacked);
        row.exact_dim = exact.dim();
        rep.rows.push_back(row);

        if (rep.found_N < 0 && exact.dim() > 0) {
            rep.found_N = N;
            rep.witness = exact.basis().row(0);
            rep.membership_ok = true;
            for (int j = 0; j < A.dim(2 * n); ++j)
                rep.membership_ok =
                    rep.membership_ok && cell.contains(mat_vec(rep.witness, mults[static_cast<size_t>(j)]));
            rep.vanishing_ok = vanishing.contains(rep.witness);
        }
    }
    return rep;
}

}  // namespace skly
