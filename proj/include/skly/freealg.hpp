#pragma once

// Connected graded algebras presented by degree-1 generators and homogeneous
// relations, materialized degree by degree as quotients of A_{n-1} (x) V by
// the image of A_{n-s} (x) R.  Dimensions stay polynomial in n; the free
// algebra is never spanned beyond the relation degree.

#include <map>
#include <utility>
#include <vector>

#include "skly/linalg.hpp"

namespace skly {

enum class AlgebraKind { quadratic, cubic };

inline int generator_count(AlgebraKind k) { return k == AlgebraKind::quadratic ? 3 : 2; }
inline int relation_degree(AlgebraKind k) { return k == AlgebraKind::quadratic ? 2 : 3; }
inline int expected_relation_count(AlgebraKind k) { return k == AlgebraKind::quadratic ? 3 : 2; }

/// Presentation: `gens` degree-one generators, relations a subspace of the
/// degree-`rel_degree` piece of the free algebra in word-lex coordinates
/// (first letter most significant).
template <class K>
struct GradedPresentation {
    int gens = 0;
    int rel_degree = 0;
    Subspace<K> relations;

    typename K::Desc desc() const { return relations.desc(); }
};

/// Graded algebra materialized up to a degree bound.  Immutable once built.
template <class K>
class GradedAlgebra {
  public:
    GradedAlgebra(GradedPresentation<K> pres, int max_degree) : pres_(std::move(pres)) {
        build(max_degree);
    }

    const GradedPresentation<K>& presentation() const { return pres_; }
    typename K::Desc desc() const { return pres_.desc(); }
    int gens() const { return pres_.gens; }
    int max_degree() const { return static_cast<int>(deg_.size()) - 1; }

    int dim(int n) const {
        if (n < 0) return 0;
        check(n);
        return deg_[static_cast<size_t>(n)].dim;
    }
    std::vector<int> hilbert() const {
        std::vector<int> h;
        for (int n = 0; n <= max_degree(); ++n) h.push_back(dim(n));
        return h;
    }

    /// (parent basis index in A_{n-1}, generator index) of a basis monomial.
    std::pair<int, int> lift(int n, int i) const {
        check(n);
        return deg_[static_cast<size_t>(n)].lift[static_cast<size_t>(i)];
    }
    /// Letters of the basis monomial, leftmost first.
    std::vector<int> word(int n, int i) const {
        std::vector<int> w(static_cast<size_t>(n));
        for (int m = n; m >= 1; --m) {
            auto [b, g] = lift(m, i);
            w[static_cast<size_t>(m - 1)] = g;
            i = b;
        }
        return w;
    }

    /// Quotient map A_{n-1} (x) V -> A_n; row (b * gens + g).
    const Matrix<K>& reduce(int n) const {
        check(n);
        return deg_[static_cast<size_t>(n)].reduce;
    }
    /// Right multiplication by generator g: A_n -> A_{n+1}.
    const Matrix<K>& right_gen(int n, int g) const {
        check(n + 1);
        return deg_[static_cast<size_t>(n)].rgen[static_cast<size_t>(g)];
    }

    /// Matrix of v |-> a * v on A_db (rows = A_db basis).
    Matrix<K> left_mul_matrix(const std::vector<K>& a, int da, int db) const {
        check(da + db);
        Matrix<K> m(1, dim(da), desc());
        m.set_row(0, a);
        for (int k = 1; k <= db; ++k) {
            Matrix<K> next(dim(k), dim(da + k), desc());
            for (int e = 0; e < dim(k); ++e) {
                auto [b, g] = lift(k, e);
                next.set_row(e, mat_vec(m.row(b), right_gen(da + k - 1, g)));
            }
            m = std::move(next);
        }
        return m;
    }

    std::vector<K> mul(const std::vector<K>& a, int da, const std::vector<K>& b, int db) const {
        if (da == 0) {
            std::vector<K> r = b;
            for (auto& v : r) v *= a[0];
            return r;
        }
        if (db == 0) {
            std::vector<K> r = a;
            for (auto& v : r) v *= b[0];
            return r;
        }
        return mat_vec(b, left_mul_matrix(a, da, db));
    }

    std::vector<K> unit() const { return {desc().one()}; }
    std::vector<K> gen_coords(int g) const {
        std::vector<K> v(static_cast<size_t>(pres_.gens), desc().zero());
        v[static_cast<size_t>(g)] = desc().one();
        return v;
    }

    /// {z in A_d : z x = x z for every generator x}.
    Subspace<K> central_subspace(int d) const {
        check(d + 1);
        const int r = pres_.gens;
        Matrix<K> stacked(dim(d), r * dim(d + 1), desc());
        for (int g = 0; g < r; ++g) {
            Matrix<K> diff = left_mul_matrix(gen_coords(g), 1, d) - right_gen(d, g);
            for (int i = 0; i < dim(d); ++i)
                for (int j = 0; j < dim(d + 1); ++j)
                    stacked.at(i, g * dim(d + 1) + j) = diff.at(i, j);
        }
        return kernel(stacked);
    }

  private:
    struct Deg {
        int dim = 0;
        Matrix<K> reduce;                      // (dim_{n-1} * gens) x dim
        std::vector<std::pair<int, int>> lift;
        std::vector<Matrix<K>> rgen;           // per generator, dim_n x dim_{n+1} (on A_n)
    };

    void check(int n) const {
        if (n > max_degree())
            throw TruncationError("degree " + std::to_string(n) + " beyond materialized bound " +
                                  std::to_string(max_degree()));
    }

    void build(int N) {
        const int r = pres_.gens;
        const int s = pres_.rel_degree;
        auto d = desc();
        if (N < s) N = s;
        deg_.resize(static_cast<size_t>(N) + 1);
        deg_[0].dim = 1;
        for (int n = 1; n <= N; ++n) {
            Deg& cur = deg_[static_cast<size_t>(n)];
            const int prev = deg_[static_cast<size_t>(n - 1)].dim;
            const int D = prev * r;
            std::vector<std::vector<K>> rel_rows;
            if (n >= s) {
                const int base_dim = deg_[static_cast<size_t>(n - s)].dim;
                const auto& R = pres_.relations.basis();
                for (int b = 0; b < base_dim; ++b) {
                    std::vector<K> eb(static_cast<size_t>(base_dim), d.zero());
                    eb[static_cast<size_t>(b)] = d.one();
                    for (int t = 0; t < R.rows(); ++t) {
                        std::vector<K> row(static_cast<size_t>(D), d.zero());
                        for (int w = 0; w < R.cols(); ++w) {
                            const K& coef = R.at(t, w);
                            if (coef.is_zero()) continue;
                            // letters of word w (first letter most significant)
                            int code = w;
                            std::vector<int> letters(static_cast<size_t>(s));
                            for (int l = s - 1; l >= 0; --l) {
                                letters[static_cast<size_t>(l)] = code % r;
                                code /= r;
                            }
                            std::vector<K> y = eb;
                            for (int l = 0; l + 1 < s; ++l)
                                y = mat_vec(y, deg_[static_cast<size_t>(n - s + l)]
                                                   .rgen[static_cast<size_t>(letters[static_cast<size_t>(l)])]);
                            const int glast = letters[static_cast<size_t>(s - 1)];
                            for (size_t k = 0; k < y.size(); ++k) {
                                if (y[k].is_zero()) continue;
                                row[k * static_cast<size_t>(r) + static_cast<size_t>(glast)] +=
                                    coef * y[k];
                            }
                        }
                        rel_rows.push_back(std::move(row));
                    }
                }
            }
            Echelon<K> e = rref(Matrix<K>::from_rows(rel_rows, D, d));
            std::vector<bool> is_pivot(static_cast<size_t>(D), false);
            for (int p : e.pivots) is_pivot[static_cast<size_t>(p)] = true;
            cur.dim = D - e.rank();
            std::vector<int> np_index(static_cast<size_t>(D), -1);
            int idx = 0;
            for (int j = 0; j < D; ++j)
                if (!is_pivot[static_cast<size_t>(j)]) {
                    np_index[static_cast<size_t>(j)] = idx++;
                    cur.lift.emplace_back(j / r, j % r);
                }
            cur.reduce = Matrix<K>(D, cur.dim, d);
            int prow = 0;
            for (int j = 0; j < D; ++j) {
                if (!is_pivot[static_cast<size_t>(j)]) {
                    cur.reduce.at(j, np_index[static_cast<size_t>(j)]) = d.one();
                } else {
                    for (int cidx = 0; cidx < D; ++cidx) {
                        if (is_pivot[static_cast<size_t>(cidx)]) continue;
                        cur.reduce.at(j, np_index[static_cast<size_t>(cidx)]) =
                            -e.basis.at(prow, cidx);
                    }
                    ++prow;
                }
            }
            // right-multiplication-by-generator matrices on A_{n-1}
            Deg& below = deg_[static_cast<size_t>(n - 1)];
            below.rgen.assign(static_cast<size_t>(r), Matrix<K>(prev, cur.dim, d));
            for (int b = 0; b < prev; ++b)
                for (int g = 0; g < r; ++g)
                    below.rgen[static_cast<size_t>(g)].set_row(b, cur.reduce.row(b * r + g));
        }
    }

    GradedPresentation<K> pres_;
    std::vector<Deg> deg_;
};

template <class K>
GradedAlgebra<K> materialize(const GradedPresentation<K>& p, int max_degree) {
    return GradedAlgebra<K>(p, max_degree);
}

/// Commutative polynomial presentation on `gens` variables (commutator
/// relations); a smoke-test input, not a Sklyanin algebra.
template <class K>
GradedPresentation<K> commutative_presentation(int gens, typename K::Desc d) {
    std::vector<std::vector<K>> rows;
    for (int i = 0; i < gens; ++i)
        for (int j = i + 1; j < gens; ++j) {
            std::vector<K> row(static_cast<size_t>(gens * gens), d.zero());
            row[static_cast<size_t>(i * gens + j)] = d.one();
            row[static_cast<size_t>(j * gens + i)] = -d.one();
            rows.push_back(std::move(row));
        }
    GradedPresentation<K> p;
    p.gens = gens;
    p.rel_degree = 2;
    p.relations = Subspace<K>::from_rows(Matrix<K>::from_rows(rows, gens * gens, d));
    return p;
}

// ---------------------------------------------------------------------------
// Degreewise right modules and minimal free resolutions

/// A graded right module truncated in degrees [0, top], realized inside
/// ambient coordinate spaces with generator action matrices.
template <class K>
struct DegreewiseModule {
    std::vector<int> amb;                    // ambient dimension per degree
    std::vector<std::vector<Matrix<K>>> act; // act[n][g] : amb[n] x amb[n+1]
    std::vector<Subspace<K>> piece;          // M_n inside k^{amb[n]}

    int top() const { return static_cast<int>(piece.size()) - 1; }
};

/// One syzygy step: minimal generators of M, the free cover F -> M and its
/// degreewise kernel packaged as the next module.
template <class K>
struct ResolutionStep {
    std::map<int, int> betti;                             // degree -> generator count
    std::vector<int> shifts;                              // generator degrees in order
    std::vector<std::pair<int, std::vector<K>>> gens;     // (degree, ambient vector)
    std::vector<Matrix<K>> cover;                         // F_n x amb[n]
    DegreewiseModule<K> kernel_module;
};

template <class K>
int free_dim(const GradedAlgebra<K>& A, const std::vector<int>& shifts, int n) {
    int d = 0;
    for (int s : shifts) d += A.dim(n - s);
    return d;
}

template <class K>
ResolutionStep<K> resolve_step(const GradedAlgebra<K>& A, const DegreewiseModule<K>& M) {
    auto d = A.desc();
    const int top = M.top();
    const int r = A.gens();
    ResolutionStep<K> st;

    for (int n = 0; n <= top; ++n) {
        Subspace<K> span_below(M.amb[static_cast<size_t>(n)], d);
        if (n > 0 && M.piece[static_cast<size_t>(n - 1)].dim() > 0) {
            std::vector<std::vector<K>> rows;
            const auto& prev = M.piece[static_cast<size_t>(n - 1)];
            for (int i = 0; i < prev.dim(); ++i)
                for (int g = 0; g < r; ++g)
                    rows.push_back(
                        mat_vec(prev.basis().row(i), M.act[static_cast<size_t>(n - 1)][static_cast<size_t>(g)]));
            span_below = Subspace<K>::from_rows(
                Matrix<K>::from_rows(rows, M.amb[static_cast<size_t>(n)], d));
            if (!M.piece[static_cast<size_t>(n)].contains(span_below))
                throw Error("resolve_step: module is not closed under the action");
        }
        // deterministic complement: echelon vectors of M_n independent mod span
        Subspace<K> grow = span_below;
        for (int i = 0; i < M.piece[static_cast<size_t>(n)].dim(); ++i) {
            std::vector<K> v = M.piece[static_cast<size_t>(n)].basis().row(i);
            if (grow.contains(v)) continue;
            st.gens.emplace_back(n, v);
            st.shifts.push_back(n);
            st.betti[n] += 1;
            grow = sum(grow, Subspace<K>::from_rows(Matrix<K>::from_rows({v},
                       M.amb[static_cast<size_t>(n)], d)));
        }
    }

    // cover realization and kernel per degree
    // orbit matrices: for each generator (deg dk, vector m), O_q rows = m * (A_q basis)
    std::vector<std::vector<Matrix<K>>> orbit(st.gens.size());
    for (size_t k = 0; k < st.gens.size(); ++k) {
        const auto& [dk, mv] = st.gens[k];
        std::vector<Matrix<K>>& O = orbit[k];
        O.resize(static_cast<size_t>(top - dk) + 1);
        O[0] = Matrix<K>(1, M.amb[static_cast<size_t>(dk)], d);
        O[0].set_row(0, mv);
        for (int q = 1; dk + q <= top; ++q) {
            O[static_cast<size_t>(q)] = Matrix<K>(A.dim(q), M.amb[static_cast<size_t>(dk + q)], d);
            for (int e = 0; e < A.dim(q); ++e) {
                auto [b, g] = A.lift(q, e);
                O[static_cast<size_t>(q)].set_row(
                    e, mat_vec(O[static_cast<size_t>(q - 1)].row(b),
                               M.act[static_cast<size_t>(dk + q - 1)][static_cast<size_t>(g)]));
            }
        }
    }

    DegreewiseModule<K>& km = st.kernel_module;
    km.amb.resize(static_cast<size_t>(top) + 1);
    km.act.resize(static_cast<size_t>(top) + 1);
    km.piece.resize(static_cast<size_t>(top) + 1);
    st.cover.resize(static_cast<size_t>(top) + 1);
    for (int n = 0; n <= top; ++n) {
        const int fdim = free_dim(A, st.shifts, n);
        km.amb[static_cast<size_t>(n)] = fdim;
        Matrix<K> cov(fdim, M.amb[static_cast<size_t>(n)], d);
        int row0 = 0;
        for (size_t k = 0; k < st.gens.size(); ++k) {
            const int dk = st.gens[k].first;
            if (n - dk < 0) continue;
            const Matrix<K>& O = orbit[k][static_cast<size_t>(n - dk)];
            for (int i = 0; i < O.rows(); ++i) cov.set_row(row0 + i, O.row(i));
            row0 += O.rows();
        }
        st.cover[static_cast<size_t>(n)] = cov;
        km.piece[static_cast<size_t>(n)] = kernel(cov);
        if (n < top) {
            km.act[static_cast<size_t>(n)].assign(static_cast<size_t>(r),
                                                  Matrix<K>(fdim, 0, d));
            for (int g = 0; g < r; ++g) {
                Matrix<K> a(fdim, free_dim(A, st.shifts, n + 1), d);
                int rr = 0;
                int cc = 0;
                for (size_t k = 0; k < st.gens.size(); ++k) {
                    const int dk = st.gens[k].first;
                    const int nr = A.dim(n - dk);
                    const int nc = A.dim(n + 1 - dk);
                    if (nr > 0) {
                        const Matrix<K>& rg = A.right_gen(n - dk, g);
                        for (int i = 0; i < nr; ++i)
                            for (int j = 0; j < nc; ++j) a.at(rr + i, cc + j) = rg.at(i, j);
                    }
                    rr += nr;
                    cc += nc;
                }
                km.act[static_cast<size_t>(n)][static_cast<size_t>(g)] = std::move(a);
            }
        }
    }
    return st;
}

/// Graded Betti numbers: betti[i] maps internal degree to the number of
/// minimal generators of the i-th syzygy, computed degreewise up to the
/// module truncation.  Entries are authoritative for degrees <= top; a
/// request for more steps than the truncation can support is an error,
/// never a guess.
template <class K>
std::vector<std::map<int, int>> betti_table(const GradedAlgebra<K>& A, DegreewiseModule<K> M,
                                            int steps) {
    if (steps > M.top() + 1)
        throw TruncationError("betti_table: truncation " + std::to_string(M.top()) +
                              " cannot determine " + std::to_string(steps) + " resolution steps");
    if (M.top() > A.max_degree())
        throw TruncationError("betti_table: module truncation exceeds the materialized algebra");
    std::vector<std::map<int, int>> out;
    for (int i = 0; i < steps; ++i) {
        ResolutionStep<K> st = resolve_step(A, M);
        out.push_back(st.betti);
        M = std::move(st.kernel_module);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Point modules

/// Cyclic right module with one-dimensional graded pieces; the generator
/// action in degree n is multiplication by alpha(n, g).
template <class K>
struct PointModuleData {
    Matrix<K> alpha;  // rows: degree 0..N-1, cols: generators

    int length() const { return alpha.rows(); }

    /// Module functional on A_n: row vector of m * e over basis monomials e.
    std::vector<K> functional(const GradedAlgebra<K>& A, int n) const {
        if (n > length()) throw TruncationError("point module truncated below degree");
        std::vector<K> cur{A.desc().one()};
        for (int m = 1; m <= n; ++m) {
            std::vector<K> next(static_cast<size_t>(A.dim(m)), A.desc().zero());
            for (int e = 0; e < A.dim(m); ++e) {
                auto [b, g] = A.lift(m, e);
                next[static_cast<size_t>(e)] = cur[static_cast<size_t>(b)] * alpha.at(m - 1, g);
            }
            cur = std::move(next);
        }
        return cur;
    }

    /// Degree-1 annihilator {v in A_1 : e_0 * v = 0}.
    Subspace<K> degree_one_annihilator(const GradedAlgebra<K>& A) const {
        Matrix<K> m(A.gens(), 1, A.desc());
        for (int g = 0; g < A.gens(); ++g) m.at(g, 0) = alpha.at(0, g);
        return kernel(m);
    }

    DegreewiseModule<K> as_module(const GradedAlgebra<K>& A) const {
        auto d = A.desc();
        const int top = length();
        DegreewiseModule<K> M;
        M.amb.assign(static_cast<size_t>(top) + 1, 1);
        M.piece.assign(static_cast<size_t>(top) + 1, Subspace<K>::full(1, d));
        M.act.resize(static_cast<size_t>(top) + 1);
        for (int n = 0; n < top; ++n) {
            M.act[static_cast<size_t>(n)].assign(static_cast<size_t>(A.gens()), Matrix<K>(1, 1, d));
            for (int g = 0; g < A.gens(); ++g)
                M.act[static_cast<size_t>(n)][static_cast<size_t>(g)].at(0, 0) = alpha.at(n, g);
        }
        return M;
    }
};

/// Validate the action table: every degree must act nontrivially (otherwise
/// the module truncates and the configuration is non-generic), and the
/// algebra relations must annihilate the module.
template <class K>
PointModuleData<K> make_point_module(const GradedAlgebra<K>& A, Matrix<K> alpha) {
    for (int n = 0; n < alpha.rows(); ++n) {
        bool all_zero = true;
        for (int g = 0; g < alpha.cols(); ++g) all_zero = all_zero && alpha.at(n, g).is_zero();
        if (all_zero)
            throw GenericityError({"point-module evaluation degenerate at degree " + std::to_string(n)});
    }
    PointModuleData<K> pm{std::move(alpha)};
    // relations act as zero: check in the first few degrees
    const auto& R = A.presentation().relations;
    const int s = A.presentation().rel_degree;
    const int r = A.gens();
    for (int base = 0; base + s <= std::min(pm.length(), s + 2); ++base) {
        for (int t = 0; t < R.dim(); ++t) {
            K acc = A.desc().zero();
            for (int w = 0; w < R.ambient(); ++w) {
                const K& coef = R.basis().at(t, w);
                if (coef.is_zero()) continue;
                K prod = coef;
                int code = w;
                std::vector<int> letters(static_cast<size_t>(s));
                for (int l = s - 1; l >= 0; --l) {
                    letters[static_cast<size_t>(l)] = code % r;
                    code /= r;
                }
                for (int l = 0; l < s; ++l) prod *= pm.alpha.at(base + l, letters[static_cast<size_t>(l)]);
                acc += prod;
            }
            if (!acc.is_zero()) throw Error("point module does not satisfy the algebra relations");
        }
    }
    return pm;
}

/// The trivial module k as a degreewise module (for resolving k itself).
template <class K>
DegreewiseModule<K> trivial_module(const GradedAlgebra<K>& A, int top) {
    auto d = A.desc();
    DegreewiseModule<K> M;
    M.amb.assign(static_cast<size_t>(top) + 1, 0);
    M.amb[0] = 1;
    M.piece.assign(static_cast<size_t>(top) + 1, Subspace<K>(0, d));
    M.piece[0] = Subspace<K>::full(1, d);
    M.act.resize(static_cast<size_t>(top) + 1);
    for (int n = 0; n < top; ++n)
        M.act[static_cast<size_t>(n)].assign(static_cast<size_t>(A.gens()),
                                             Matrix<K>(M.amb[static_cast<size_t>(n)],
                                                       M.amb[static_cast<size_t>(n + 1)], d));
    return M;
}

// ---------------------------------------------------------------------------
// Maps between shifted free modules

/// Map (+) A(-src[i]) -> (+) A(-dst[j]); entry[i][j] is an element of
/// A_{src[i]-dst[j]} (empty vector = zero entry).  Generators are mapped by
/// e_i |-> sum_j e_j * entry[i][j].
template <class K>
struct FreeMap {
    std::vector<int> src, dst;
    std::vector<std::vector<std::vector<K>>> entry;

    static FreeMap zeros(std::vector<int> s, std::vector<int> d) {
        FreeMap m;
        m.src = std::move(s);
        m.dst = std::move(d);
        m.entry.assign(m.src.size(), std::vector<std::vector<K>>(m.dst.size()));
        return m;
    }

    Matrix<K> realize(const GradedAlgebra<K>& A, int n) const {
        Matrix<K> out(free_dim(A, src, n), free_dim(A, dst, n), A.desc());
        int r0 = 0;
        for (size_t i = 0; i < src.size(); ++i) {
            const int nr = A.dim(n - src[i]);
            int c0 = 0;
            for (size_t j = 0; j < dst.size(); ++j) {
                const int nc = A.dim(n - dst[j]);
                if (nr > 0 && nc > 0 && !entry[i][j].empty()) {
                    Matrix<K> block = A.left_mul_matrix(entry[i][j], src[i] - dst[j], n - src[i]);
                    for (int a = 0; a < nr; ++a)
                        for (int b = 0; b < nc; ++b) out.at(r0 + a, c0 + b) = block.at(a, b);
                }
                c0 += nc;
            }
            r0 += nr;
        }
        return out;
    }
};

template <class K>
FreeMap<K> compose(const GradedAlgebra<K>& A, const FreeMap<K>& first, const FreeMap<K>& second) {
    FreeMap<K> out = FreeMap<K>::zeros(first.src, second.dst);
    for (size_t i = 0; i < first.src.size(); ++i)
        for (size_t k = 0; k < second.dst.size(); ++k) {
            std::vector<K> acc;
            for (size_t j = 0; j < first.dst.size(); ++j) {
                if (first.entry[i][j].empty() || second.entry[j][k].empty()) continue;
                auto term = A.mul(second.entry[j][k], second.src[j] - second.dst[k],
                                  first.entry[i][j], first.src[i] - first.dst[j]);
                if (acc.empty()) acc.assign(term.size(), A.desc().zero());
                for (size_t t = 0; t < term.size(); ++t) acc[t] += term[t];
            }
            out.entry[i][k] = std::move(acc);
        }
    return out;
}

/// The syzygy map F_step -> F_prev extracted from a resolution step whose
/// module lives inside the free module with shifts prev_shifts.
template <class K>
FreeMap<K> step_map(const GradedAlgebra<K>& A, const std::vector<int>& prev_shifts,
                    const ResolutionStep<K>& st) {
    FreeMap<K> m = FreeMap<K>::zeros(st.shifts, prev_shifts);
    for (size_t i = 0; i < st.gens.size(); ++i) {
        const auto& [degree, vec] = st.gens[i];
        size_t off = 0;
        for (size_t j = 0; j < prev_shifts.size(); ++j) {
            const int nd = A.dim(degree - prev_shifts[j]);
            if (nd > 0) {
                std::vector<K> block(vec.begin() + static_cast<long>(off),
                                     vec.begin() + static_cast<long>(off + static_cast<size_t>(nd)));
                bool nz = false;
                for (const auto& v : block) nz = nz || !v.is_zero();
                if (nz) m.entry[i][j] = std::move(block);
                off += static_cast<size_t>(nd);
            }
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// The cubic extended complex
//
// For a point module P over a cubic algebra, splice the minimal resolution
// of P with the shifted minimal resolution of k into
//     0 -> A(-5) -> A(-4)^2 (+) A(-3) -> A(-2)^3 -> A -> P -> 0
// and measure its homology degreewise.

template <class K>
struct CubicComplexReport {
    bool shapes_ok = false;         // resolutions of P and k have the expected shapes
    bool compositions_zero = false;
    bool exact_tail = false;        // exact at A(-5), A(-4)^2(+)A(-3) and A(-2)^3
    std::map<int, int> homology_at_a;  // internal degree -> dim; expected {1: 1}
    std::vector<std::map<int, int>> betti_p, betti_k;

    bool defect_is_one_dimensional_in_degree_one() const {
        for (const auto& [n, h] : homology_at_a)
            if (h != (n == 1 ? 1 : 0)) return false;
        return homology_at_a.count(1) && homology_at_a.at(1) == 1;
    }
};

template <class K>
CubicComplexReport<K> cubic_point_complex(const GradedAlgebra<K>& A, const PointModuleData<K>& pm) {
    CubicComplexReport<K> rep;
    auto d = A.desc();
    const int top = std::min(pm.length(), A.max_degree());

    DegreewiseModule<K> Mp = pm.as_module(A);
    Mp.amb.resize(static_cast<size_t>(top) + 1);
    Mp.act.resize(static_cast<size_t>(top) + 1);
    Mp.piece.resize(static_cast<size_t>(top) + 1);
    ResolutionStep<K> p0 = resolve_step(A, Mp);
    ResolutionStep<K> p1 = resolve_step(A, p0.kernel_module);
    ResolutionStep<K> p2 = resolve_step(A, p1.kernel_module);
    rep.betti_p = {p0.betti, p1.betti, p2.betti};

    ResolutionStep<K> k0 = resolve_step(A, trivial_module(A, top));
    ResolutionStep<K> k1 = resolve_step(A, k0.kernel_module);
    ResolutionStep<K> k2 = resolve_step(A, k1.kernel_module);
    ResolutionStep<K> k3 = resolve_step(A, k2.kernel_module);
    rep.betti_k = {k0.betti, k1.betti, k2.betti, k3.betti};

    rep.shapes_ok = p0.shifts == std::vector<int>{0} && p1.shifts == std::vector<int>{1, 2} &&
                    p2.shifts == std::vector<int>{3} && k1.shifts == std::vector<int>{1, 1} &&
                    k2.shifts == std::vector<int>{3, 3} && k3.shifts == std::vector<int>{4};
    if (!rep.shapes_ok) return rep;

    FreeMap<K> beta = step_map(A, {0}, p1);      // A(-1)(+)A(-2) -> A
    FreeMap<K> alpha = step_map(A, {1, 2}, p2);  // A(-3) -> A(-1)(+)A(-2)
    FreeMap<K> delta0 = step_map(A, {0}, k1);    // A(-1)^2 -> A
    FreeMap<K> eps = step_map(A, {1, 1}, k2);    // A(-3)^2 -> A(-1)^2
    FreeMap<K> zeta = step_map(A, {3, 3}, k3);   // A(-4) -> A(-3)^2

    // delta = delta0(-1) (+) id : A(-2)^3 -> A(-1) (+) A(-2)
    FreeMap<K> delta = FreeMap<K>::zeros({2, 2, 2}, {1, 2});
    delta.entry[0][0] = delta0.entry[0][0];
    delta.entry[1][0] = delta0.entry[1][0];
    delta.entry[2][1] = {d.one()};

    // eta : A(-3) -> A(-2)^3 with delta o eta = alpha
    FreeMap<K> eta = FreeMap<K>::zeros({3}, {2, 2, 2});
    {
        const std::vector<K>& x0 = delta0.entry[0][0];
        const std::vector<K>& x1 = delta0.entry[1][0];
        Matrix<K> stacked = A.left_mul_matrix(x0, 1, 1).stacked(A.left_mul_matrix(x1, 1, 1));
        std::vector<K> sol;
        if (!solve_row(stacked, alpha.entry[0][0], sol))
            throw Error("cubic complex: lifting eta failed");
        const int d1 = A.dim(1);
        eta.entry[0][0] = std::vector<K>(sol.begin(), sol.begin() + d1);
        eta.entry[0][1] = std::vector<K>(sol.begin() + d1, sol.end());
        eta.entry[0][2] = alpha.entry[0][1];
    }

    FreeMap<K> C1 = compose(A, delta, beta);  // A(-2)^3 -> A
    FreeMap<K> C2 = FreeMap<K>::zeros({4, 4, 3}, {2, 2, 2});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) C2.entry[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            eps.entry[static_cast<size_t>(i)][static_cast<size_t>(j)];
    for (int j = 0; j < 3; ++j) C2.entry[2][static_cast<size_t>(j)] = eta.entry[0][static_cast<size_t>(j)];
    FreeMap<K> C3 = FreeMap<K>::zeros({5}, {4, 4, 3});
    C3.entry[0][0] = zeta.entry[0][0];
    C3.entry[0][1] = zeta.entry[0][1];

    rep.compositions_zero = true;
    rep.exact_tail = true;
    for (int n = 0; n <= top; ++n) {
        Matrix<K> M3 = C3.realize(A, n);
        Matrix<K> M2 = C2.realize(A, n);
        Matrix<K> M1 = C1.realize(A, n);
        const Matrix<K>& aug = p0.cover[static_cast<size_t>(n)];
        auto is_zero = [](const Matrix<K>& m) {
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j)
                    if (!m.at(i, j).is_zero()) return false;
            return true;
        };
        if (!is_zero(M3 * M2) || !is_zero(M2 * M1) || !is_zero(M1 * aug))
            rep.compositions_zero = false;
        if (kernel(M3).dim() != 0) rep.exact_tail = false;
        if (kernel(M2).dim() != rank(M3)) rep.exact_tail = false;
        if (kernel(M1).dim() != rank(M2)) rep.exact_tail = false;
        const int h = A.dim(n) - rank(aug) - rank(M1);
        if (h != 0 || n <= 2) rep.homology_at_a[n] = h;
    }
    return rep;
}

}  // namespace skly
