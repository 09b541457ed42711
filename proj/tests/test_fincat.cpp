#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "obstr/fincat.hpp"

using namespace obstr;

namespace {

// two-chart toy model of the projective line: nilpotent truncations of the
// coordinate rings glued along a five-dimensional overlap algebra
CoverSpec p1_toy_cover() {
    CoverSpec spec;
    spec.charts = 2;
    spec.algebras[{1}] = truncated_polynomial_algebra(3);
    spec.algebras[{2}] = truncated_polynomial_algebra(3);
    // overlap: Q[u,v]/(uv, u^3, v^3), u and v the two chart coordinates
    AlgebraTable overlap;
    overlap.basis = {"1", "u", "u2", "v", "v2"};
    overlap.unit = {1, 0, 0, 0, 0};
    auto z = std::vector<Rational>(5);
    overlap.mult.assign(5, std::vector<std::vector<Rational>>(5, z));
    auto set = [&](int i, int j, int k) { overlap.mult[i][j][k] = 1; };
    for (int i = 0; i < 5; ++i) {
        set(0, i, i);
        if (i) set(i, 0, i);
    }
    set(1, 1, 2);  // u*u = u2
    set(3, 3, 4);  // v*v = v2
    spec.algebras[{1, 2}] = overlap;
    QMatrix r1(5, 3), r2(5, 3);
    r1.at(0, 0) = 1;
    r1.at(1, 1) = 1;
    r1.at(2, 2) = 1;
    r2.at(0, 0) = 1;
    r2.at(3, 1) = 1;
    r2.at(4, 2) = 1;
    spec.restrictions[{{1}, {1, 2}}] = r1;
    spec.restrictions[{{2}, {1, 2}}] = r2;
    return spec;
}

LinearFunctor a2_to_two_cycle() {
    LinearFunctor f;  // u -> a, v -> b, the arrow to alpha
    f.object_map = {0, 1};
    f.hom_map.resize(4);
    f.hom_map[0] = QMatrix(2, 1);
    f.hom_map[0].at(0, 0) = 1;  // id -> 1a
    f.hom_map[1] = QMatrix(1, 1);
    f.hom_map[1].at(0, 0) = 1;  // arrow -> alpha
    f.hom_map[2] = QMatrix(1, 0);
    f.hom_map[3] = QMatrix(1, 1);
    f.hom_map[3].at(0, 0) = 1;  // id -> 1b
    return f;
}

}  // namespace

TEST_CASE("one-object categories") {
    FinCategory q = build_one_object_category(rationals_algebra());
    CHECK(q.n_objects() == 1);
    CHECK(q.dim(0, 0) == 1);
    CHECK(validate_category(q).ok());

    FinCategory dual = build_one_object_category(dual_numbers_algebra());
    CHECK(dual.dim(0, 0) == 2);
    // eps * eps = 0 forced by the relation
    auto sq = dual.compose_basis(0, 0, 0, 1, 1);
    CHECK(sq[0] == 0);
    CHECK(sq[1] == 0);
    CHECK(validate_category(dual).ok());

    // the path algebra of the A2 quiver as a 3-dimensional algebra
    AlgebraTable a2;
    a2.basis = {"e1", "e2", "a"};
    a2.unit = {1, 1, 0};
    auto zero3 = std::vector<Rational>(3);
    a2.mult.assign(3, std::vector<std::vector<Rational>>(3, zero3));
    a2.mult[0][0][0] = 1;  // e1 e1 = e1
    a2.mult[1][1][1] = 1;  // e2 e2 = e2
    a2.mult[2][1][2] = 1;  // a e2 = a  (path order)
    a2.mult[0][2][2] = 1;  // e1 a = a
    FinCategory a2cat = build_one_object_category(a2);
    CHECK(validate_category(a2cat).ok());

    // a corrupted table is rejected
    a2.mult[2][1][2] = 0;
    a2.mult[1][2][2] = 1;
    CHECK_THROWS_AS(build_one_object_category(a2), validation_error);
}

TEST_CASE("validate_category pinpoints a corrupted composition") {
    FinCategory two = two_cycle_category();
    // corrupt one entry: eps then alpha = alpha (instead of 0); the triple
    // (eps, eps, alpha) now associates two different ways
    QMatrix bad(1, 2);
    bad.at(0, 0) = 1;
    bad.at(0, 1) = 1;
    two.set_compose(0, 0, 1, bad);
    auto report = validate_category(two);
    REQUIRE_FALSE(report.ok());
    bool named = false;
    for (const auto& p : report.problems)
        if (p.find("eps") != std::string::npos && p.find("alpha") != std::string::npos)
            named = true;
    CHECK(named);
}

TEST_CASE("cover categories") {
    // one-element cover reduces to the one-object category
    CoverSpec single;
    single.charts = 1;
    single.algebras[{1}] = dual_numbers_algebra();
    FinCategory c1 = build_cover_category(single);
    CHECK(c1.n_objects() == 1);
    CHECK(c1.dim(0, 0) == 2);
    CHECK(validate_category(c1).ok());

    // the toy projective line: 3 objects, hom dims (3,5,3) pattern
    FinCategory p1 = build_cover_category(p1_toy_cover());
    CHECK(p1.n_objects() == 3);
    // objects are ordered {1}, {2}, {1,2}
    CHECK(p1.dim(0, 0) == 3);
    CHECK(p1.dim(1, 1) == 3);
    CHECK(p1.dim(2, 2) == 5);
    CHECK(p1.dim(0, 2) == 5);
    CHECK(p1.dim(1, 2) == 5);
    CHECK(p1.dim(0, 1) == 0);
    CHECK(p1.dim(1, 0) == 0);
    CHECK(p1.dim(2, 0) == 0);
    CHECK(validate_category(p1).ok());

    // poset of subsets of {1,2} with all algebras Q: the incidence category
    CoverSpec poset;
    poset.charts = 2;
    poset.algebras[{1}] = rationals_algebra();
    poset.algebras[{2}] = rationals_algebra();
    poset.algebras[{1, 2}] = rationals_algebra();
    poset.restrictions[{{1}, {1, 2}}] = QMatrix::identity(1);
    poset.restrictions[{{2}, {1, 2}}] = QMatrix::identity(1);
    FinCategory inc = build_cover_category(poset);
    CHECK(validate_category(inc).ok());
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) {
            bool leq = (a == b) || b == 2;
            CHECK(inc.dim(a, b) == (leq ? 1u : 0u));
        }

    // broken restriction (not an algebra map) is refused
    CoverSpec broken = p1_toy_cover();
    broken.restrictions[{{1}, {1, 2}}].at(2, 2) = 2;
    CHECK_THROWS_AS(build_cover_category(broken), validation_error);
}

TEST_CASE("canonical bimodule and modules validate") {
    for (const FinCategory& c :
         {dual_numbers_category(), a2_path_category(), two_cycle_category()}) {
        Bimodule m = canonical_bimodule(c);
        CHECK(validate_bimodule(c, m).ok());
        for (std::size_t x = 0; x < c.n_objects(); ++x) {
            Module u = representable_module(c, x);
            CHECK(validate_module(c, u).ok());
        }
    }
}

TEST_CASE("restrict_bimodule") {
    FinCategory a2 = a2_path_category();
    FinCategory two = two_cycle_category();
    LinearFunctor f = a2_to_two_cycle();
    CHECK(validate_functor(a2, two, f).ok());

    Bimodule m = canonical_bimodule(two);
    Bimodule r = restrict_bimodule(a2, two, f, m);
    CHECK(validate_bimodule(a2, r).ok());
    CHECK(r.dim(0, 0) == 2);  // End(a) pulled back
    CHECK(r.dim(0, 1) == 1);
    CHECK(r.dim(1, 0) == 1);
    CHECK(r.dim(1, 1) == 1);

    // identity functor restricts to the same carrier dimensions
    LinearFunctor id;
    id.object_map = {0, 1};
    id.hom_map.resize(4);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            id.hom_map[a * 2 + b] = QMatrix::identity(a2.dim(a, b));
    Bimodule m2 = canonical_bimodule(a2);
    Bimodule r2 = restrict_bimodule(a2, a2, id, m2);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) CHECK(r2.dim(a, b) == m2.dim(a, b));

    // collapsing the poset category onto one object: carriers all 2-dimensional
    FinCategory dual = dual_numbers_category();
    LinearFunctor collapse;
    collapse.object_map = {0, 0};
    collapse.hom_map.resize(4);
    collapse.hom_map[0] = QMatrix(2, 1);
    collapse.hom_map[0].at(0, 0) = 1;
    collapse.hom_map[1] = QMatrix(2, 1);
    collapse.hom_map[1].at(1, 0) = 1;  // the arrow goes to eps
    collapse.hom_map[2] = QMatrix(2, 0);
    collapse.hom_map[3] = QMatrix(2, 1);
    collapse.hom_map[3].at(0, 0) = 1;
    CHECK(validate_functor(a2, dual, collapse).ok());
    Bimodule rc = restrict_bimodule(a2, dual, collapse, canonical_bimodule(dual));
    CHECK(validate_bimodule(a2, rc).ok());
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) CHECK(rc.dim(a, b) == 2);
}

TEST_CASE("restriction along a composite is the composite of restrictions") {
    FinCategory a2 = a2_path_category();
    FinCategory two = two_cycle_category();
    FinCategory dual = dual_numbers_category();
    LinearFunctor f = a2_to_two_cycle();
    LinearFunctor g;  // two -> dual: alpha -> eps, beta -> 0, eps -> 0
    g.object_map = {0, 0};
    g.hom_map.resize(4);
    g.hom_map[0] = QMatrix(2, 2);
    g.hom_map[0].at(0, 0) = 1;
    g.hom_map[1] = QMatrix(2, 1);
    g.hom_map[1].at(1, 0) = 1;
    g.hom_map[2] = QMatrix(2, 1);
    g.hom_map[3] = QMatrix(2, 1);
    g.hom_map[3].at(0, 0) = 1;
    CHECK(validate_functor(two, dual, g).ok());

    LinearFunctor gf;
    gf.object_map = {g.object_map[f.object_map[0]], g.object_map[f.object_map[1]]};
    gf.hom_map.resize(4);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            gf.hom_map[a * 2 + b] =
                g.hom_map[f.object_map[a] * 2 + f.object_map[b]].mul(f.hom_map[a * 2 + b]);
    CHECK(validate_functor(a2, dual, gf).ok());

    Bimodule m = canonical_bimodule(dual);
    Bimodule direct = restrict_bimodule(a2, dual, gf, m);
    Bimodule staged = restrict_bimodule(a2, two, f, restrict_bimodule(two, dual, g, m));
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            REQUIRE(direct.dim(a, b) == staged.dim(a, b));
            for (std::size_t xp = 0; xp < 2; ++xp)
                for (std::size_t fj = 0; fj < a2.dim(xp, a); ++fj)
                    for (std::size_t mi = 0; mi < direct.dim(a, b); ++mi) {
                        std::vector<Rational> ef(a2.dim(xp, a)), em(direct.dim(a, b));
                        ef[fj] = 1;
                        em[mi] = 1;
                        CHECK(direct.act_source(xp, a, b, ef, em) ==
                              staged.act_source(xp, a, b, ef, em));
                    }
        }
}

TEST_CASE("tensor category") {
    FinCategory dual = dual_numbers_category();
    FinCategory a2 = a2_path_category();
    FinCategory t = tensor_category(dual, a2);
    CHECK(t.n_objects() == 2);
    CHECK(validate_category(t).ok());
    for (std::size_t a = 0; a < t.n_objects(); ++a)
        for (std::size_t b = 0; b < t.n_objects(); ++b)
            CHECK(t.dim(a, b) == dual.dim(0, 0) * a2.dim(a, b));

    FinCategory q = star_q();
    FinCategory tq = tensor_category(dual, q);
    CHECK(tq.n_objects() == 1);
    CHECK(tq.dim(0, 0) == 2);
    CHECK(validate_category(tq).ok());

    Bimodule tm = tensor_bimodule(dual, canonical_bimodule(dual), a2);
    CHECK(validate_bimodule(t, tm).ok());
}
