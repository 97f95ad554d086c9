#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "skly/zalgebra.hpp"

using namespace skly;
using namespace skly::testfix;

namespace {

// cubic pipeline: D built from one point
struct CubicPipeline {
    SectionContext<Fp> ctx;
    Divisor<Fp> d;
    ZSubalgebra<Fp> D;

    explicit CubicPipeline(Window w = {})
        : ctx(cubic_gd(), ContextOptions<Fp>{2 * (w.amax + w.m1) + 2, 0},
              {point_from(cubic_gd().curve, 222)}),
          d(Divisor<Fp>::of_point(point_from(ctx.gd().curve, 222))) {
        std::map<int, Subspace<Fp>> pieces;
        for (int m = w.m0; m <= w.m1 + w.amax - 1; ++m)
            pieces.emplace(m, degree_one_piece(ctx, d, m));
        D = generate(ctx, pieces, w);
    }
};

// quadratic pipeline: D built from three points
struct QuadraticPipeline {
    SectionContext<Fp> ctx;
    Divisor<Fp> d;
    ZSubalgebra<Fp> D;

    explicit QuadraticPipeline(Window w = {})
        : ctx(quadratic_gd(), ContextOptions<Fp>{2 * (w.amax + w.m1) + 2, 0},
              {point_from(quadratic_gd().curve, 60), point_from(quadratic_gd().curve, 2500),
               point_from(quadratic_gd().curve, 8200)}),
          d(Divisor<Fp>::of_points({point_from(ctx.gd().curve, 60),
                                    point_from(ctx.gd().curve, 2500),
                                    point_from(ctx.gd().curve, 8200)})) {
        std::map<int, Subspace<Fp>> pieces;
        for (int m = w.m0; m <= w.m1 + w.amax - 1; ++m)
            pieces.emplace(m, degree_one_piece(ctx, d, m));
        D = generate(ctx, pieces, w);
    }
};

}  // namespace

TEST_CASE("2-Veronese check construction has the ambient dimensions") {
    SectionContext<Fp> ctx(quadratic_gd(), ContextOptions<Fp>{10, 0});
    // full ambient pieces as input: D = whole 2-Veronese window
    std::map<int, Subspace<Fp>> pieces;
    Window w{0, 2, 3};
    for (int m = 0; m <= w.m1 + w.amax - 1; ++m)
        pieces.emplace(m, Subspace<Fp>::full(ctx.algebra().dim(2), F));
    auto D = generate(ctx, pieces, w);
    for (int m = 0; m <= 2; ++m)
        for (int a = 0; a <= 3; ++a)
            CHECK(D.cell(m, m + a).dim() == ctx.algebra().dim(2 * a));
    // quadratic ambient: dim = (2a+1)(2a+2)/2
    CHECK(D.cell(0, 3).dim() == 28);
}

TEST_CASE("degree-one pieces have dimension 3 in both ambients") {
    CubicPipeline cp;
    for (int m = 0; m <= 2; ++m) CHECK(cp.D.cell(m, m + 1).dim() == 3);
    QuadraticPipeline qp;
    for (int m = 0; m <= 2; ++m) CHECK(qp.D.cell(m, m + 1).dim() == 3);
}

TEST_CASE("engineered degeneracy: repeated vanishing point is rejected") {
    auto gd = quadratic_gd();
    auto p = point_from(gd.curve, 60);
    Divisor<Fp> bad;
    bad.add(p, 3);  // one point with multiplicity 3: constraint matrix rank drops
    SectionContext<Fp> ctx(gd, ContextOptions<Fp>{6, 0}, {p});
    CHECK_THROWS_AS(degree_one_piece(ctx, bad, 0), GenericityError);
}

TEST_CASE("Hilbert table of D is (a+1)(a+2)/2 in both pipelines") {
    Window w{0, 2, 4};
    CubicPipeline cp(w);
    auto ht = hilbert_table(cp.D);
    for (int m = 0; m <= 2; ++m)
        for (int a = 0; a <= 4; ++a) CHECK(ht[{m, a}] == (a + 1) * (a + 2) / 2);

    QuadraticPipeline qp(w);
    auto hq = hilbert_table(qp.D);
    for (int m = 0; m <= 2; ++m)
        for (int a = 0; a <= 4; ++a) CHECK(hq[{m, a}] == (a + 1) * (a + 2) / 2);
}

TEST_CASE("colengths are attained exactly") {
    Window w{0, 2, 4};
    CubicPipeline cp(w);
    auto cc = colength_table(cp.ctx, cp.D);
    for (int m = 0; m <= 2; ++m)
        for (int a = 0; a <= 4; ++a) CHECK(cc[{m, a}] == a * (a + 1) / 2);

    QuadraticPipeline qp(w);
    auto cq = colength_table(qp.ctx, qp.D);
    for (int m = 0; m <= 2; ++m)
        for (int a = 0; a <= 4; ++a) CHECK(cq[{m, a}] == 3 * a * (a + 1) / 2);
}

TEST_CASE("quadratic relation spaces of D have dimension 3") {
    QuadraticPipeline qp;
    for (int m = 0; m <= 1; ++m) CHECK(quadratic_relations(qp.ctx, qp.D, m).dim() == 3);
    CubicPipeline cp;
    for (int m = 0; m <= 1; ++m) CHECK(quadratic_relations(cp.ctx, cp.D, m).dim() == 3);
}

TEST_CASE("map to D_Y: surjective with kernel dims (a-1)(a-2)/2") {
    Window w{0, 2, 4};
    CubicPipeline cp(w);
    for (int m = 0; m <= 2; ++m)
        for (int a = 1; a <= 4; ++a) {
            auto dy = map_to_DY(cp.ctx, cp.D, cp.d, m, m + a);
            CHECK(dy.surjective);
            CHECK(dy.image_inside_target);
            CHECK(dy.target_dim == 3 * a);
            CHECK(dy.kernel_dim == (a - 1) * (a - 2) / 2);
        }
    QuadraticPipeline qp(w);
    for (int a = 1; a <= 4; ++a) {
        auto dy = map_to_DY(qp.ctx, qp.D, qp.d, 0, a);
        CHECK(dy.surjective);
        CHECK(dy.image_inside_target);
        CHECK(dy.kernel_dim == (a - 1) * (a - 2) / 2);
    }
}

TEST_CASE("certificate passes for generic data in both pipelines") {
    CubicPipeline cp;
    auto cert = certify_as_regular(cp.ctx, cp.D, cp.d);
    for (const auto& cl : cert.clauses) {
        INFO(cl.name, ": ", cl.detail);
        CHECK(cl.ok);
    }
    CHECK(cert.pass);

    QuadraticPipeline qp;
    auto certq = certify_as_regular(qp.ctx, qp.D, qp.d);
    for (const auto& cl : certq.clauses) {
        INFO(cl.name, ": ", cl.detail);
        CHECK(cl.ok);
    }
    CHECK(certq.pass);
}

TEST_CASE("collinear points fail the certificate with the named clause") {
    auto gd = quadratic_gd();
    const auto& c = gd.curve;
    auto p1 = point_from(c, 60);
    auto p2 = point_from(c, 2500);
    // choose p3 so that p1 + p2 + p3 is linearly equivalent to D0
    auto cls = pic_class(c, gd.line_bundle);
    auto p3 = c.sub(cls.sum, c.add(p1, p2));
    REQUIRE(c.contains(p3));
    Divisor<Fp> d = Divisor<Fp>::of_points({p1, p2, p3});
    CHECK(pic_class(c, d) == cls);  // the pic-class collinearity oracle

    Window w{0, 1, 2};
    SectionContext<Fp> ctx(gd, ContextOptions<Fp>{2 * (w.amax + w.m1) + 2, 0}, {p1, p2, p3});
    std::map<int, Subspace<Fp>> pieces;
    for (int m = w.m0; m <= w.m1 + w.amax - 1; ++m) pieces.emplace(m, degree_one_piece(ctx, d, m));
    auto D = generate(ctx, pieces, w);
    auto cert = certify_as_regular(ctx, D, d);
    CHECK(!cert.pass);
    CHECK(cert.first_failure == "vanishing-points");
    for (const auto& cl : cert.clauses)
        if (cl.name == "vanishing-points") CHECK(cl.detail == "collinear");
}

TEST_CASE("helix classes: degree 3, consecutive distinct, trivial second difference") {
    auto gd = cubic_gd();
    auto d = Divisor<Fp>::of_point(point_from(gd.curve, 222));
    auto helix = helix_from_data(gd, d, -2, 5);
    for (const auto& h : helix) CHECK(h.cls.degree == 3);
    for (size_t i = 0; i + 1 < helix.size(); ++i) CHECK(helix[i].cls != helix[i + 1].cls);
    for (size_t i = 0; i + 2 < helix.size(); ++i)
        CHECK(helix_defect(gd.curve, helix[i], helix[i + 1], helix[i + 2]).trivial());
}
