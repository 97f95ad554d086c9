#pragma once

// Exact dense linear algebra over a field scalar K (Fp or Rat).
//
// Conventions, used consistently by every module built on top:
//   * vectors are rows of coordinates;
//   * a Subspace is the row space of its reduced-echelon basis matrix;
//   * a linear map is a Matrix M applied on the right, v |-> v * M,
//     so row i of M is the image of the i-th source basis vector.
//
// Row reduction is deterministic: columns are eliminated in natural
// order and the pivot row is the first row with a nonzero entry.  The
// reduced echelon basis is therefore canonical for a given row space.

#include <algorithm>
#include <vector>

#include "skly/error.hpp"
#include "skly/field.hpp"

namespace skly {

template <class K>
class Matrix {
  public:
    using Desc = typename K::Desc;

    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols, Desc desc)
        : rows_(rows), cols_(cols), desc_(desc), a_(static_cast<size_t>(rows) * cols, desc.zero()) {}

    static Matrix identity(int n, Desc desc) {
        Matrix m(n, n, desc);
        for (int i = 0; i < n; ++i) m.at(i, i) = desc.one();
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<K>>& rows, int cols, Desc desc) {
        Matrix m(static_cast<int>(rows.size()), cols, desc);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(rows[i].size()) != cols) throw Error("row length mismatch");
            for (int j = 0; j < cols; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Desc desc() const { return desc_; }

    K& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const K& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    std::vector<K> row(int i) const {
        std::vector<K> r(a_.begin() + static_cast<size_t>(i) * cols_,
                         a_.begin() + static_cast<size_t>(i + 1) * cols_);
        return r;
    }
    void set_row(int i, const std::vector<K>& r) {
        if (static_cast<int>(r.size()) != cols_) throw Error("row length mismatch");
        std::copy(r.begin(), r.end(), a_.begin() + static_cast<size_t>(i) * cols_);
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_, desc_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw Error("matrix product shape mismatch");
        Matrix r(rows_, o.cols_, desc_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const K& aik = at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
            }
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch");
        Matrix r(rows_, cols_, desc_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
        return r;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    /// Append the rows of `o` below this matrix.
    Matrix stacked(const Matrix& o) const {
        if (cols_ != o.cols_) throw Error("stack width mismatch");
        Matrix r(rows_ + o.rows_, cols_, desc_);
        r.a_ = a_;
        r.a_.insert(r.a_.end(), o.a_.begin(), o.a_.end());
        return r;
    }

  private:
    int rows_, cols_;
    Desc desc_;
    std::vector<K> a_;
};

template <class K>
std::vector<K> mat_vec(const std::vector<K>& v, const Matrix<K>& m) {
    if (static_cast<int>(v.size()) != m.rows()) throw Error("mat_vec shape mismatch");
    std::vector<K> r(m.cols(), m.desc().zero());
    for (int i = 0; i < m.rows(); ++i) {
        if (v[i].is_zero()) continue;
        for (int j = 0; j < m.cols(); ++j) r[j] += v[i] * m.at(i, j);
    }
    return r;
}

/// Reduced row echelon form.  `basis` holds only the nonzero rows,
/// `pivots[k]` is the pivot column of row k (strictly increasing).
template <class K>
struct Echelon {
    Matrix<K> basis;
    std::vector<int> pivots;
    int rank() const { return static_cast<int>(pivots.size()); }
};

template <class K>
Echelon<K> rref(Matrix<K> m) {
    const int rows = m.rows(), cols = m.cols();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (!m.at(i, c).is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = c; j < cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        K inv = m.at(r, c).inverse();
        for (int j = c; j < cols; ++j) m.at(r, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            K f = m.at(i, c);
            for (int j = c; j < cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    Echelon<K> e{Matrix<K>(r, cols, m.desc()), pivots};
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < cols; ++j) e.basis.at(i, j) = m.at(i, j);
    return e;
}

template <class K>
int rank(const Matrix<K>& m) {
    return rref(m).rank();
}

/// Subspace of a coordinate space, stored as its canonical reduced
/// echelon basis.
template <class K>
class Subspace {
  public:
    using Desc = typename K::Desc;

    Subspace() : ambient_(0) {}
    Subspace(int ambient, Desc desc) : ambient_(ambient), e_{Matrix<K>(0, ambient, desc), {}} {}

    static Subspace from_rows(const Matrix<K>& rows) {
        Subspace s;
        s.ambient_ = rows.cols();
        s.e_ = rref(rows);
        return s;
    }
    static Subspace full(int ambient, Desc desc) {
        return from_rows(Matrix<K>::identity(ambient, desc));
    }

    int ambient() const { return ambient_; }
    int dim() const { return e_.rank(); }
    const Matrix<K>& basis() const { return e_.basis; }
    const std::vector<int>& pivots() const { return e_.pivots; }
    Desc desc() const { return e_.basis.desc(); }

    /// v minus its projection onto the subspace along pivot coordinates;
    /// zero iff v is a member.
    std::vector<K> residual(std::vector<K> v) const {
        if (static_cast<int>(v.size()) != ambient_) throw Error("residual: ambient mismatch");
        for (int k = 0; k < dim(); ++k) {
            const K& c = v[e_.pivots[k]];
            if (c.is_zero()) continue;
            K f = c;
            for (int j = e_.pivots[k]; j < ambient_; ++j) v[j] -= f * e_.basis.at(k, j);
        }
        return v;
    }

    bool contains(const std::vector<K>& v) const {
        for (const K& x : residual(v))
            if (!x.is_zero()) return false;
        return true;
    }
    bool contains(const Subspace& o) const {
        for (int i = 0; i < o.dim(); ++i)
            if (!contains(o.basis().row(i))) return false;
        return true;
    }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && e_.basis == o.e_.basis;
    }

    /// Matrix of the residual map (ambient x ambient), applied as v * R.
    Matrix<K> residual_matrix() const {
        Matrix<K> r(ambient_, ambient_, desc());
        for (int i = 0; i < ambient_; ++i) {
            std::vector<K> e(ambient_, desc().zero());
            e[i] = desc().one();
            r.set_row(i, residual(e));
        }
        return r;
    }

  private:
    int ambient_;
    Echelon<K> e_;
};

/// Solutions of v * m = 0 (the left kernel when rows are vectors).
template <class K>
Subspace<K> kernel(const Matrix<K>& m) {
    Echelon<K> e = rref(m.transpose());  // columns of m^T = rows of m
    const int n = m.rows();
    std::vector<bool> is_pivot(n, false);
    for (int p : e.pivots) is_pivot[p] = true;
    Matrix<K> basis(n - e.rank(), n, m.desc());
    int bi = 0;
    for (int j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        basis.at(bi, j) = m.desc().one();
        for (int k = 0; k < e.rank(); ++k) basis.at(bi, e.pivots[k]) = -e.basis.at(k, j);
        ++bi;
    }
    return Subspace<K>::from_rows(basis);
}

/// Row space of m.
template <class K>
Subspace<K> image(const Matrix<K>& m) {
    return Subspace<K>::from_rows(m);
}

template <class K>
Subspace<K> sum(const Subspace<K>& a, const Subspace<K>& b) {
    if (a.ambient() != b.ambient()) throw Error("subspace sum: ambient mismatch");
    return Subspace<K>::from_rows(a.basis().stacked(b.basis()));
}

/// Zassenhaus intersection of two row spaces of the same ambient space.
template <class K>
Subspace<K> intersect(const Subspace<K>& a, const Subspace<K>& b) {
    if (a.ambient() != b.ambient()) throw Error("subspace intersection: ambient mismatch");
    const int n = a.ambient();
    auto desc = a.desc();
    Matrix<K> block(a.dim() + b.dim(), 2 * n, desc);
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < n; ++j) {
            block.at(i, j) = a.basis().at(i, j);
            block.at(i, n + j) = a.basis().at(i, j);
        }
    for (int i = 0; i < b.dim(); ++i)
        for (int j = 0; j < n; ++j) block.at(a.dim() + i, j) = b.basis().at(i, j);
    Echelon<K> e = rref(block);
    Matrix<K> rows(0, n, desc);
    std::vector<std::vector<K>> keep;
    for (int i = 0; i < e.rank(); ++i) {
        bool left_zero = true;
        for (int j = 0; j < n && left_zero; ++j)
            if (!e.basis.at(i, j).is_zero()) left_zero = false;
        if (!left_zero) continue;
        std::vector<K> r(n);
        for (int j = 0; j < n; ++j) r[j] = e.basis.at(i, n + j);
        keep.push_back(std::move(r));
    }
    return Subspace<K>::from_rows(Matrix<K>::from_rows(keep, n, desc));
}

/// Preimage {v : v * m in s}.
template <class K>
Subspace<K> preimage(const Matrix<K>& m, const Subspace<K>& s) {
    if (m.cols() != s.ambient()) throw Error("preimage: ambient mismatch");
    return kernel(m * s.residual_matrix());
}

/// Solve x * m = target; returns false if inconsistent.
template <class K>
bool solve_row(const Matrix<K>& m, const std::vector<K>& target, std::vector<K>& x) {
    // reduce the augmented system [m^T | target^T]
    const int nr = m.rows(), nc = m.cols();
    Matrix<K> aug(nc, nr + 1, m.desc());
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) aug.at(j, i) = m.at(i, j);
    for (int j = 0; j < nc; ++j) aug.at(j, nr) = target[j];
    Echelon<K> e = rref(aug);
    x.assign(nr, m.desc().zero());
    for (int k = 0; k < e.rank(); ++k) {
        if (e.pivots[k] == nr) return false;  // pivot in the augmented column
        x[e.pivots[k]] = e.basis.at(k, nr);
    }
    return true;
}

/// Express each row of `vecs` in the row basis `basis`; throws if any row
/// is outside the span.
template <class K>
Matrix<K> express_in_basis(const Matrix<K>& vecs, const Matrix<K>& basis) {
    Matrix<K> out(vecs.rows(), basis.rows(), vecs.desc());
    for (int i = 0; i < vecs.rows(); ++i) {
        std::vector<K> x;
        if (!solve_row(basis, vecs.row(i), x)) throw Error("express_in_basis: vector not in span");
        out.set_row(i, x);
    }
    return out;
}

}  // namespace skly
