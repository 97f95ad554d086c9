#pragma once

// The sub-Z-algebra D of the 2-Veronese: degree-one pieces cut out by
// vanishing conditions, generation in degree one, Hilbert and colength
// tables, relation extraction, the map D -> D_Y and the AS-regularity
// certificate.
//
// Indexing: the (m, n) cell of the 2-Veronese is A_{2(n-m)} viewed at base
// index 2m; its Z-algebra product is the plain product of A.

#include <map>
#include <string>
#include <vector>

#include "skly/sklyanin.hpp"

namespace skly {

struct Window {
    int m0 = 0, m1 = 2;
    int amax = 4;
};

template <class K>
class ZSubalgebra {
  public:
    ZSubalgebra() = default;
    ZSubalgebra(Window w) : w_(w) {}

    const Window& window() const { return w_; }

    const Subspace<K>& cell(int m, int n) const {
        auto it = cells_.find({m, n});
        if (it == cells_.end()) throw TruncationError("Z-algebra cell outside the window");
        return it->second;
    }
    bool has_cell(int m, int n) const { return cells_.count({m, n}) > 0; }
    void set_cell(int m, int n, Subspace<K> s) { cells_[{m, n}] = std::move(s); }

  private:
    Window w_;
    std::map<std::pair<int, int>, Subspace<K>> cells_;
};

/// Points of tau^{-m} d, with multiplicity flattened (validator enforces
/// multiplicity-free d).
template <class K>
std::vector<CurvePoint<K>> vanishing_constellation(const GeometricData<K>& gd, const Divisor<K>& d,
                                                   int m_first, int m_last) {
    std::vector<CurvePoint<K>> pts;
    for (int l = m_first; l <= m_last; ++l) {
        Divisor<K> dl = gd.tau_inv(d, l);
        for (const auto& [p, mult] : dl.entries())
            for (int k = 0; k < mult; ++k) pts.push_back(p);
    }
    return pts;
}

/// D_{m,m+1} = {a in A_2 : avatar of a at base 2m vanishes on tau^{-m} d}.
template <class K>
Subspace<K> degree_one_piece(const SectionContext<K>& ctx, const Divisor<K>& d, int m) {
    const auto& gd = ctx.gd();
    if (!d.effective() || d.degree() != (gd.kind == AlgebraKind::quadratic ? 3 : 1))
        throw ConfigError("points", "vanishing divisor must be effective of degree 3 (quadratic) or 1 (cubic)");
    auto pts = vanishing_constellation(gd, d, m, m);
    Matrix<K> vals = ctx.avatar_at_points(2, 2 * m, pts);
    Subspace<K> piece = kernel(vals);
    const int expected = ctx.algebra().dim(2) - d.degree();
    if (piece.dim() != expected)
        throw GenericityError({"degree-one piece has dimension " + std::to_string(piece.dim()) +
                               ", expected " + std::to_string(expected)});
    return piece;
}

/// Generate D on the window from its degree-one pieces:
/// D_{m,n} = span(D_{m,m+1} ... D_{n-1,n}) inside A_{2(n-m)}.
template <class K>
ZSubalgebra<K> generate(const SectionContext<K>& ctx, const std::map<int, Subspace<K>>& pieces,
                        const Window& w) {
    const auto& A = ctx.algebra();
    auto desc = ctx.desc();
    if (2 * w.amax > A.max_degree())
        throw TruncationError("window exceeds the materialized degree bound");
    ZSubalgebra<K> D(w);
    for (int m = w.m0; m <= w.m1; ++m) {
        D.set_cell(m, m, Subspace<K>::full(1, desc));
        for (int n = m + 1; n <= m + w.amax; ++n) {
            auto it = pieces.find(n - 1);
            if (it == pieces.end()) throw TruncationError("missing degree-one piece for the window");
            const Subspace<K>& step = it->second;
            const Subspace<K>& prev = D.cell(m, n - 1);
            const int da = 2 * (n - 1 - m);
            std::vector<std::vector<K>> rows;
            for (int i = 0; i < prev.dim(); ++i) {
                Matrix<K> L = A.left_mul_matrix(prev.basis().row(i), da, 2);
                for (int j = 0; j < step.dim(); ++j)
                    rows.push_back(mat_vec(step.basis().row(j), L));
            }
            D.set_cell(m, n, Subspace<K>::from_rows(
                                 Matrix<K>::from_rows(rows, A.dim(da + 2), desc)));
        }
    }
    return D;
}

template <class K>
std::map<std::pair<int, int>, int> hilbert_table(const ZSubalgebra<K>& D) {
    std::map<std::pair<int, int>, int> t;
    const Window& w = D.window();
    for (int m = w.m0; m <= w.m1; ++m)
        for (int a = 0; a <= w.amax; ++a) t[{m, a}] = D.cell(m, m + a).dim();
    return t;
}

template <class K>
std::map<std::pair<int, int>, int> colength_table(const SectionContext<K>& ctx,
                                                  const ZSubalgebra<K>& D) {
    std::map<std::pair<int, int>, int> t;
    const Window& w = D.window();
    for (int m = w.m0; m <= w.m1; ++m)
        for (int a = 0; a <= w.amax; ++a)
            t[{m, a}] = ctx.algebra().dim(2 * a) - D.cell(m, m + a).dim();
    return t;
}

/// Kernel of D_{m,m+1} (x) D_{m+1,m+2} -> D_{m,m+2} in lexicographic tensor
/// coordinates on the cells' echelon bases.
template <class K>
Subspace<K> quadratic_relations(const SectionContext<K>& ctx, const ZSubalgebra<K>& D, int m) {
    const auto& A = ctx.algebra();
    const Subspace<K>& U = D.cell(m, m + 1);
    const Subspace<K>& V = D.cell(m + 1, m + 2);
    std::vector<std::vector<K>> rows;
    for (int i = 0; i < U.dim(); ++i) {
        Matrix<K> L = A.left_mul_matrix(U.basis().row(i), 2, 2);
        for (int j = 0; j < V.dim(); ++j) rows.push_back(mat_vec(V.basis().row(j), L));
    }
    return kernel(Matrix<K>::from_rows(rows, A.dim(4), ctx.desc()));
}

/// Relations of the comparison algebra A(Y, L_m, L_{m+1}) built curve-side:
/// kernel of L(E_m) (x) L(E_{m+1}) -> L(E_m + E_{m+1}) under plain function
/// multiplication, in panel coordinates.
template <class K>
Subspace<K> curve_side_relations(const SectionContext<K>& ctx,
                                 const std::vector<FFElem<K>>& vm,
                                 const std::vector<FFElem<K>>& vm1) {
    std::vector<std::vector<K>> rows;
    for (const auto& f : vm) {
        auto fc = ctx.panel().coords(f, 0);
        for (const auto& g : vm1) rows.push_back(ctx.panel().mul(fc, ctx.panel().coords(g, 0)));
    }
    return kernel(Matrix<K>::from_rows(rows, ctx.panel().width(), ctx.desc()));
}

/// Avatar transport D_{m,m+1} -> L(E_m) as a matrix on the chosen bases.
template <class K>
Matrix<K> avatar_transport(const SectionContext<K>& ctx, const ZSubalgebra<K>& D, int m,
                           const std::vector<FFElem<K>>& target_basis) {
    const Subspace<K>& U = D.cell(m, m + 1);
    Matrix<K> av = U.basis() * ctx.avatar(2, 2 * m);
    return express_in_basis(av, ctx.section_matrix(target_basis));
}

template <class K>
Matrix<K> tensor_square(const Matrix<K>& X, const Matrix<K>& Y) {
    Matrix<K> t(X.rows() * Y.rows(), X.cols() * Y.cols(), X.desc());
    for (int i = 0; i < X.rows(); ++i)
        for (int j = 0; j < Y.rows(); ++j)
            for (int k = 0; k < X.cols(); ++k)
                for (int l = 0; l < Y.cols(); ++l)
                    t.at(i * Y.rows() + j, k * Y.cols() + l) = X.at(i, k) * Y.at(j, l);
    return t;
}

/// Data of D_{m,n} -> (D_Y)_{m,n} = L(Delta_{2m,2n} - sum_l tau^{-l} d).
template <class K>
struct DYMap {
    int target_dim = 0;
    int image_dim = 0;
    int kernel_dim = 0;
    bool surjective = false;
    bool image_inside_target = false;
};

template <class K>
DYMap<K> map_to_DY(const SectionContext<K>& ctx, const ZSubalgebra<K>& D, const Divisor<K>& d,
                   int m, int n) {
    DYMap<K> out;
    const auto& gd = ctx.gd();
    Divisor<K> div = ctx.delta(2 * m, 2 * n);
    for (int l = m; l < n; ++l) div = div - gd.tau_inv(d, l);
    auto target = riemann_roch_space(gd.curve, div);
    out.target_dim = static_cast<int>(target.size());

    const Subspace<K>& cellD = D.cell(m, n);
    Matrix<K> img = cellD.basis() * ctx.avatar(2 * (n - m), 2 * m);
    out.image_dim = rank(img);
    out.kernel_dim = cellD.dim() - out.image_dim;
    out.surjective = out.image_dim == out.target_dim;
    if (n > m) {
        Subspace<K> t = image(ctx.section_matrix(target));
        out.image_inside_target = true;
        for (int i = 0; i < img.rows(); ++i)
            out.image_inside_target = out.image_inside_target && t.contains(img.row(i));
    } else {
        out.image_inside_target = true;
    }
    return out;
}

// ---------------------------------------------------------------------------
// AS-regularity certificate

struct CertClause {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct Certificate {
    bool pass = false;
    std::vector<CertClause> clauses;
    std::string first_failure;

    void add(std::string name, bool ok, std::string detail = "") {
        if (!ok && first_failure.empty()) first_failure = name;
        clauses.push_back({std::move(name), ok, std::move(detail)});
    }
    void finish() {
        pass = true;
        for (const auto& c : clauses) pass = pass && c.ok;
    }
};

/// PASS iff (i) the Hilbert table is (a+1)(a+2)/2 on the window, (ii) D is
/// closed and generated in degree one (all cell products span exactly),
/// (iii) quadratic relation spaces have dimension 3 and coincide with the
/// curve-side relation spaces of (Y, L_m, L_{m+1}) under avatar transport,
/// (iv) the L_i form an elliptic helix: degree 3, [L_0] != [L_1], trivial
/// second difference.
template <class K>
Certificate certify_as_regular(const SectionContext<K>& ctx, const ZSubalgebra<K>& D,
                               const Divisor<K>& d) {
    Certificate cert;
    const Window& w = D.window();
    const auto& gd = ctx.gd();

    // (0) hypothesis on the vanishing points: distinct, and non-collinear in
    // the quadratic case (class of d differs from the line-bundle class).
    // The computational clauses below do not always detect a collinear
    // triple; the certificate asserts the hypothesis the theory needs.
    {
        bool ok = d.effective();
        std::string detail;
        for (const auto& [p, mult] : d.entries())
            if (mult != 1) {
                ok = false;
                detail = "vanishing divisor has a repeated point";
            }
        if (ok && gd.kind == AlgebraKind::quadratic &&
            pic_class(gd.curve, d) == pic_class(gd.curve, gd.line_bundle)) {
            ok = false;
            detail = "collinear";
        }
        cert.add("vanishing-points", ok, detail);
    }

    // (i) Hilbert table
    {
        bool ok = true;
        std::string detail;
        for (int m = w.m0; m <= w.m1 && ok; ++m)
            for (int a = 0; a <= w.amax && ok; ++a) {
                int got = D.cell(m, m + a).dim();
                int want = (a + 1) * (a + 2) / 2;
                if (got != want) {
                    ok = false;
                    detail = "cell (" + std::to_string(m) + "," + std::to_string(m + a) +
                             ") has dim " + std::to_string(got) + ", expected " + std::to_string(want);
                }
            }
        cert.add("hilbert-table", ok, detail);
    }

    // (ii) closure / generation in degree one: D_{m,n} * D_{n,p} spans D_{m,p}
    {
        bool ok = true;
        std::string detail;
        const auto& A = ctx.algebra();
        for (int m = w.m0; m <= w.m1 && ok; ++m)
            for (int n = m; n <= m + w.amax && ok; ++n)
                for (int p = n; p <= m + w.amax && ok; ++p) {
                    if (!D.has_cell(m, n) || !D.has_cell(n, p) || !D.has_cell(m, p)) continue;
                    std::vector<std::vector<K>> rows;
                    const auto& U = D.cell(m, n);
                    const auto& V = D.cell(n, p);
                    for (int i = 0; i < U.dim(); ++i) {
                        Matrix<K> L = A.left_mul_matrix(U.basis().row(i), 2 * (n - m), 2 * (p - n));
                        for (int j = 0; j < V.dim(); ++j) rows.push_back(mat_vec(V.basis().row(j), L));
                    }
                    auto span = Subspace<K>::from_rows(
                        Matrix<K>::from_rows(rows, A.dim(2 * (p - m)), ctx.desc()));
                    if (!(span == D.cell(m, p))) {
                        ok = false;
                        detail = "product span mismatch at (" + std::to_string(m) + "," +
                                 std::to_string(n) + "," + std::to_string(p) + ")";
                    }
                }
        cert.add("degree-one-generation", ok, detail);
    }

    // helix data for (iii)-(iv)
    auto helix = helix_from_data(gd, d, w.m0, w.m1 + w.amax);
    auto entry = [&](int i) -> const HelixEntry<K>& {
        return helix[static_cast<size_t>(i - w.m0)];
    };

    // (iii) relation spaces match the curve-side construction
    {
        bool ok = true;
        std::string detail;
        for (int m = w.m0; m + 1 <= w.m1 && w.amax >= 2 && ok; ++m) {
            Subspace<K> rd = quadratic_relations(ctx, D, m);
            if (rd.dim() != 3) {
                ok = false;
                detail = "relation space at m=" + std::to_string(m) + " has dim " +
                         std::to_string(rd.dim());
                break;
            }
            auto vm = riemann_roch_space(gd.curve, entry(m).divisor);
            auto vm1 = riemann_roch_space(gd.curve, entry(m + 1).divisor);
            if (vm.size() != 3 || vm1.size() != 3) {
                ok = false;
                detail = "helix section space has wrong dimension at m=" + std::to_string(m);
                break;
            }
            Subspace<K> rc = curve_side_relations(ctx, vm, vm1);
            if (rc.dim() != 3) {
                ok = false;
                detail = "curve-side relation space at m=" + std::to_string(m) + " has dim " +
                         std::to_string(rc.dim());
                break;
            }
            Matrix<K> T = tensor_square(avatar_transport(ctx, D, m, vm),
                                        avatar_transport(ctx, D, m + 1, vm1));
            Matrix<K> transported = rd.basis() * T;
            // double inclusion
            bool inc1 = true, inc2 = true;
            for (int i = 0; i < transported.rows(); ++i)
                inc1 = inc1 && rc.contains(transported.row(i));
            Subspace<K> ts = image(transported);
            for (int i = 0; i < rc.dim(); ++i) inc2 = inc2 && ts.contains(rc.basis().row(i));
            if (!(inc1 && inc2)) {
                ok = false;
                detail = "relation spaces differ under avatar transport at m=" + std::to_string(m);
            }
        }
        cert.add("relation-spaces", ok, detail);
    }

    // (iv) helix conditions
    {
        bool ok = true;
        std::string detail;
        for (int i = w.m0; i <= w.m1 + w.amax && ok; ++i) {
            if (entry(i).cls.degree != 3) {
                ok = false;
                detail = "deg L_" + std::to_string(i) + " != 3";
            }
        }
        if (ok && entry(w.m0).cls == entry(w.m0 + 1).cls) {
            ok = false;
            detail = "[L_0] == [L_1]";
        }
        for (int i = w.m0; ok && i + 2 <= w.m1 + w.amax; ++i) {
            if (!helix_defect(gd.curve, entry(i), entry(i + 1), entry(i + 2)).trivial()) {
                ok = false;
                detail = "helix second difference nontrivial at i=" + std::to_string(i);
            }
        }
        cert.add("helix", ok, detail);
    }

    cert.finish();
    return cert;
}

}  // namespace skly
