#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "skly/linalg.hpp"

using namespace skly;

namespace {

// independent oracle: plain Gaussian elimination rank, no pivoting policy shared
// with the library RREF
template <class K>
int naive_rank(Matrix<K> m) {
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int sel = -1;
        for (int i = m.rows() - 1; i >= r; --i)  // bottom-up pivot search on purpose
            if (!m.at(i, c).is_zero()) sel = i;
        if (sel < 0) continue;
        for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
        for (int i = r + 1; i < m.rows(); ++i) {
            if (m.at(i, c).is_zero()) continue;
            K f = m.at(i, c) / m.at(r, c);
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        ++r;
    }
    return r;
}

Matrix<Fp> random_matrix(std::mt19937_64& rng, int rows, int cols, FpDesc d) {
    Matrix<Fp> m(rows, cols, d);
    std::uniform_int_distribution<std::uint64_t> u(0, d.p - 1);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = Fp(u(rng), d.p);
    return m;
}

const FpDesc F{10007};

}  // namespace

TEST_CASE("field arithmetic is exact") {
    for (std::uint64_t a = 1; a < 50; ++a)
        for (std::uint64_t b = 1; b < 50; ++b) {
            Fp x(a, F.p), y(b, F.p);
            CHECK((x / y) * y == x);
        }
    Rat a(3, 7), b(-5, 11);
    CHECK((a / b) * b == a);
    CHECK((a + b) - b == a);
    CHECK(Rat::parse("22/7") == Rat(22, 7));
}

TEST_CASE("kernel of identity and zero map") {
    CHECK(kernel(Matrix<Fp>::identity(2, F)).dim() == 0);
    Matrix<Fp> z(1, 3, F);
    CHECK(kernel(z).dim() == 1);  // the single zero row maps everything to 0
    // zero map on 3-space: represent as 3x1 zero matrix
    Matrix<Fp> zm(3, 1, F);
    CHECK(kernel(zm).dim() == 3);
}

TEST_CASE("kernel dimension agrees with rank-nullity on random matrices") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix<Fp> m = random_matrix(rng, 4, 6, F);
        int r = naive_rank(m);
        CHECK(r == 4);  // random 4x6 over a large field is full rank
        CHECK(kernel(m.transpose()).dim() == 6 - r);
        CHECK(rank(m) == r);
    }
}

TEST_CASE("rank equals rank of transpose") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        Matrix<Fp> m = random_matrix(rng, 5, 8, F);
        // force low rank sometimes by repeating rows
        if (trial % 3 == 0)
            for (int j = 0; j < 8; ++j) {
                m.at(3, j) = m.at(0, j);
                m.at(4, j) = m.at(1, j) + m.at(0, j);
            }
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("intersection: idempotence and complementary planes") {
    std::mt19937_64 rng(11);
    auto a = image(random_matrix(rng, 3, 6, F));
    CHECK(intersect(a, a) == a);

    Matrix<Fp> xy(2, 4, F), zw(2, 4, F);
    xy.at(0, 0) = F.one();
    xy.at(1, 1) = F.one();
    zw.at(0, 2) = F.one();
    zw.at(1, 3) = F.one();
    CHECK(intersect(image(xy), image(zw)).dim() == 0);
}

TEST_CASE("dim(a) + dim(b) = dim(a+b) + dim(a^b)") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 15; ++trial) {
        auto a = image(random_matrix(rng, 5, 8, F));
        auto b = image(random_matrix(rng, 5, 8, F));
        auto s = sum(a, b);
        auto i = intersect(a, b);
        CHECK(a.dim() + b.dim() == s.dim() + i.dim());
        CHECK(i.dim() >= 2);  // 5 + 5 - 8
        CHECK(s.contains(a));
        CHECK(s.contains(b));
        CHECK(a.contains(i));
        CHECK(b.contains(i));
        // checked against the stacked-bases rank oracle
        CHECK(s.dim() == naive_rank(a.basis().stacked(b.basis())));
    }
}

TEST_CASE("row reduction is deterministic") {
    std::mt19937_64 rng(17);
    Matrix<Fp> m = random_matrix(rng, 6, 9, F);
    auto e1 = rref(m);
    auto e2 = rref(m);
    CHECK(e1.basis == e2.basis);
    CHECK(e1.pivots == e2.pivots);
}

TEST_CASE("membership, residual and preimage") {
    std::mt19937_64 rng(19);
    auto s = image(random_matrix(rng, 3, 7, F));
    std::vector<Fp> v = s.basis().row(0);
    for (auto& x : v) x *= Fp(5, F.p);
    CHECK(s.contains(v));
    v[6] += F.one();
    CHECK(!s.contains(v));

    Matrix<Fp> m = random_matrix(rng, 5, 7, F);
    auto pre = preimage(m, s);
    for (int i = 0; i < pre.dim(); ++i) CHECK(s.contains(mat_vec(pre.basis().row(i), m)));
}

TEST_CASE("solve_row and express_in_basis") {
    std::mt19937_64 rng(23);
    Matrix<Fp> m = random_matrix(rng, 4, 6, F);
    std::vector<Fp> x0{Fp(1, F.p), Fp(2, F.p), Fp(3, F.p), Fp(4, F.p)};
    auto t = mat_vec(x0, m);
    std::vector<Fp> x;
    REQUIRE(solve_row(m, t, x));
    CHECK(mat_vec(x, m) == t);
}

TEST_CASE("rational field: everything works without a modulus") {
    Matrix<Rat> m(2, 3, RatDesc{});
    m.at(0, 0) = Rat(1, 2);
    m.at(0, 1) = Rat(1, 3);
    m.at(1, 0) = Rat(1, 4);
    m.at(1, 1) = Rat(1, 6);  // row1 = row0 / 2
    CHECK(rank(m) == 1);
    CHECK(kernel(m.transpose()).dim() == 2);
}
