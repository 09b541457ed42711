#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "obstr/hochschild.hpp"
#include "testutil.hpp"

using namespace obstr;
using namespace obstr::testutil;

namespace {

// brute-force Hochschild cohomology of a one-object algebra, written directly
// against the multiplication table; independent of the cochain machinery
std::size_t algebra_hh_oracle(const AlgebraTable& alg, int n) {
    std::size_t d = alg.dim();
    auto pow = [&](int k) {
        std::size_t p = 1;
        for (int i = 0; i < k; ++i) p *= d;
        return p;
    };
    auto build_matrix = [&](int deg) {
        // maps A^{(x) deg} -> A as vectors indexed by (input tuple, output)
        std::size_t dom = pow(deg) * d, cod = pow(deg + 1) * d;
        QMatrix dm(cod, dom);
        for (std::size_t tup = 0; tup < pow(deg); ++tup)
            for (std::size_t out = 0; out < d; ++out) {
                std::size_t col = tup * d + out;
                std::vector<std::size_t> in(deg);
                std::size_t rem = tup;
                for (int i = 0; i < deg; ++i) {
                    in[i] = rem % d;
                    rem /= d;
                }
                // value of d(basis cochain) on every (deg+1)-tuple
                std::vector<std::size_t> big(deg + 1);
                std::size_t total = pow(deg + 1);
                for (std::size_t btup = 0; btup < total; ++btup) {
                    rem = btup;
                    for (int i = 0; i <= deg; ++i) {
                        big[i] = rem % d;
                        rem /= d;
                    }
                    std::vector<Rational> val(d);
                    auto matches_tail = [&]() {
                        for (int i = 0; i < deg; ++i)
                            if (big[i + 1] != in[i]) return false;
                        return true;
                    };
                    auto matches_head = [&]() {
                        for (int i = 0; i < deg; ++i)
                            if (big[i] != in[i]) return false;
                        return true;
                    };
                    if (matches_tail()) {
                        // x1 * f(x2..)
                        for (std::size_t k = 0; k < d; ++k)
                            val[k] += alg.mult[big[0]][out][k];
                    }
                    for (int i = 1; i <= deg; ++i) {
                        // f(..., x_i x_{i+1}, ...) with sign (-1)^i
                        const auto& prod = alg.mult[big[i - 1]][big[i]];
                        for (std::size_t mid = 0; mid < d; ++mid) {
                            if (prod[mid] == 0) continue;
                            bool match = true;
                            for (int j = 0; j < i - 1 && match; ++j)
                                if (big[j] != in[j]) match = false;
                            if (match && in[i - 1] != mid) match = false;
                            for (int j = i; j < deg && match; ++j)
                                if (big[j + 1] != in[j]) match = false;
                            if (!match) continue;
                            val[out] += (i % 2 == 0 ? 1 : -1) * prod[mid];
                        }
                    }
                    if (matches_head()) {
                        // (-1)^{deg+1} f(x1..) * x_{deg+1}
                        for (std::size_t k = 0; k < d; ++k)
                            val[k] += ((deg + 1) % 2 == 0 ? 1 : -1) *
                                      alg.mult[out][big[deg]][k];
                    }
                    for (std::size_t k = 0; k < d; ++k)
                        if (val[k] != 0) dm.at(btup * d + k, col) = val[k];
                }
            }
        return dm;
    };
    QMatrix d_out = build_matrix(n);
    QMatrix d_in = n == 0 ? QMatrix(d, 0) : build_matrix(n - 1);
    return cohomology_dim(d_out, d_in);
}

}  // namespace

TEST_CASE("hochschild differential basics") {
    FinCategory dual = dual_numbers_category();
    Bimodule m = canonical_bimodule(dual);

    Cochain zero;
    zero.degree = 2;
    CHECK(hochschild_differential(dual, m, zero).is_zero());

    // degree 0 over a commutative one-object algebra: d is the commutator, so 0
    Cochain x0;
    x0.degree = 0;
    QMatrix b(2, 1);
    b.at(1, 0) = 1;  // the family {eps}
    x0.blocks[{0}] = b;
    CHECK(hochschild_differential(dual, m, x0).is_zero());

    // d(d x) = 0 entrywise on a degree-1 cochain over the dual numbers
    Cochain x1;
    x1.degree = 1;
    QMatrix b1(2, 2);
    b1.at(0, 1) = 1;  // eps -> 1
    x1.blocks[{0, 0}] = b1;
    Cochain dx = hochschild_differential(dual, m, x1);
    CHECK(hochschild_differential(dual, m, dx).is_zero());
}

TEST_CASE("d o d = 0 on randomized instances") {
    std::mt19937 rng(101);
    int done = 0;
    while (done < 50) {
        FinCategory c = pick_category(rng);
        Bimodule m = canonical_bimodule(c);
        int n = static_cast<int>(rng() % 3);
        Cochain x = random_cochain(rng, c, m, n);
        Cochain dx = hochschild_differential(c, m, x);
        CHECK(hochschild_differential(c, m, dx).is_zero());
        ++done;
    }
}

TEST_CASE("hh dimensions of the stock categories") {
    FinCategory q = star_q();
    Bimodule mq = canonical_bimodule(q);
    CHECK(hh_dimension(q, mq, 0) == 1);
    for (int n = 1; n <= 4; ++n) CHECK(hh_dimension(q, mq, n) == 0);

    // dual numbers in characteristic zero: brute-force ranks give 2,1,1,1,1
    FinCategory dual = dual_numbers_category();
    Bimodule md = canonical_bimodule(dual);
    std::vector<std::size_t> expected{2, 1, 1, 1, 1};
    for (int n = 0; n <= 4; ++n) {
        CHECK(hh_dimension(dual, md, n) == expected[n]);
        CHECK(algebra_hh_oracle(dual_numbers_algebra(), n) == expected[n]);
    }

    // A2: hereditary, nothing above degree 0
    FinCategory a2 = a2_path_category();
    Bimodule ma = canonical_bimodule(a2);
    CHECK(hh_dimension(a2, ma, 0) == 1);
    CHECK(hh_dimension(a2, ma, 1) == 0);
    CHECK(hh_dimension(a2, ma, 2) == 0);
}

TEST_CASE("the stored generators really generate") {
    FinCategory dual = dual_numbers_category();
    Bimodule m = canonical_bimodule(dual);
    for (int deg = 2; deg <= 4; ++deg) {
        Cochain g = dual_numbers_generator(dual, deg);
        CHECK(is_cocycle(dual, m, g));
        Cochain zero;
        zero.degree = deg;
        CHECK_FALSE(cohomologous_witness(dual, m, g, zero).has_value());
    }
}

TEST_CASE("cohomologous witnesses") {
    std::mt19937 rng(202);
    FinCategory dual = dual_numbers_category();
    Bimodule m = canonical_bimodule(dual);

    // eta = mu: the zero witness is accepted
    Cochain eta = dual_numbers_generator(dual, 2);
    auto w = cohomologous_witness(dual, m, eta, eta);
    REQUIRE(w.has_value());
    CHECK(hochschild_differential(dual, m, *w).is_zero());

    // a coboundary against zero
    for (int rep = 0; rep < 10; ++rep) {
        FinCategory c = pick_category(rng);
        Bimodule cm = canonical_bimodule(c);
        int n = 2 + static_cast<int>(rng() % 2);
        Cochain db = random_coboundary(rng, c, cm, n);
        Cochain zero;
        zero.degree = n;
        auto theta = cohomologous_witness(c, cm, db, zero);
        REQUIRE(theta.has_value());
        CHECK((hochschild_differential(c, cm, *theta) - db).is_zero());
    }

    // non-cocycle inputs are rejected
    Cochain bad = random_cochain(rng, dual, m, 2);
    while (is_cocycle(dual, m, bad)) bad = random_cochain(rng, dual, m, 2);
    Cochain zero2;
    zero2.degree = 2;
    CHECK_THROWS_AS(cohomologous_witness(dual, m, bad, zero2), validation_error);
}

TEST_CASE("gerstenhaber bracket with the composition is minus the differential") {
    std::mt19937 rng(303);
    for (int rep = 0; rep < 25; ++rep) {
        FinCategory c = pick_category(rng);
        Bimodule m = canonical_bimodule(c);
        int n = static_cast<int>(rng() % 3);
        Cochain f = random_cochain(rng, c, m, n);
        Cochain br = gerstenhaber_bracket_composition(c, m, f);
        Cochain df = hochschild_differential(c, m, f);
        CHECK((br + df).is_zero());
    }
}

TEST_CASE("gerstenhaber bracket bilinearity and degree-0 centrality") {
    std::mt19937 rng(404);
    FinCategory c = two_cycle_category();
    Bimodule m = canonical_bimodule(c);
    for (int rep = 0; rep < 6; ++rep) {
        Cochain f = random_cochain(rng, c, m, 1);
        Cochain g = random_cochain(rng, c, m, 1);
        Cochain h = random_cochain(rng, c, m, 2);
        Cochain lhs = gerstenhaber_bracket(c, f + g, h);
        Cochain rhs = gerstenhaber_bracket(c, f, h) + gerstenhaber_bracket(c, g, h);
        CHECK((lhs - rhs).is_zero());
    }
    // a central degree-0 family has vanishing action difference
    FinCategory dual = dual_numbers_category();
    Bimodule md = canonical_bimodule(dual);
    Cochain central;
    central.degree = 0;
    QMatrix b(2, 1);
    b.at(1, 0) = 1;
    central.blocks[{0}] = b;
    CHECK(gerstenhaber_bracket_composition(dual, md, central).is_zero());
}

TEST_CASE("cup with the identity") {
    std::mt19937 rng(505);
    FinCategory dual = dual_numbers_category();
    Bimodule m = canonical_bimodule(dual);
    FinCategory a2 = a2_path_category();

    // I = *_Q: the extension is the cochain itself under the canonical bijection
    FinCategory q = star_q();
    Cochain eta = dual_numbers_generator(dual, 2);
    Cochain cup = cup_identity_extend(dual, m, eta, q);
    FinCategory tens = tensor_category(dual, q);
    Bimodule tm = tensor_bimodule(dual, m, q);
    CHECK(cc_dim(tens, tm, 2) == cc_dim(dual, m, 2));
    CHECK(cochain_flatten(tens, tm, cup) == cochain_flatten(dual, m, eta));

    // cocycles map to cocycles, coboundaries to coboundaries
    for (int rep = 0; rep < 6; ++rep) {
        int n = 2;
        Cochain z = random_cocycle(rng, dual, m, n);
        Cochain zc = cup_identity_extend(dual, m, z, a2);
        FinCategory t2 = tensor_category(dual, a2);
        Bimodule t2m = tensor_bimodule(dual, m, a2);
        CHECK(is_cocycle(t2, t2m, zc));
        Cochain sigma = random_cochain(rng, dual, m, n - 1);
        Cochain db = hochschild_differential(dual, m, sigma);
        Cochain lhs = cup_identity_extend(dual, m, db, a2);
        Cochain rhs = hochschild_differential(t2, t2m, cup_identity_extend(dual, m, sigma, a2));
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("pushforward of cocycles") {
    std::mt19937 rng(606);
    FinCategory dual = dual_numbers_category();
    Bimodule m = canonical_bimodule(dual);

    // identity functor: the cocycle itself
    LinearFunctor id;
    id.object_map = {0};
    id.hom_map = {QMatrix::identity(2)};
    Cochain eta = dual_numbers_generator(dual, 3);
    Cochain push = pushforward_cocycle(dual, dual, id, m, eta);
    Bimodule rm = restrict_bimodule(dual, dual, id, m);
    CHECK(cochain_flatten(dual, rm, push) == cochain_flatten(dual, m, eta));

    // naturality: f*(d theta) = d(f* theta) for the unit inclusion of *_Q
    FinCategory q = star_q();
    LinearFunctor unit;
    unit.object_map = {0};
    unit.hom_map = {QMatrix(2, 1)};
    unit.hom_map[0].at(0, 0) = 1;
    CHECK(validate_functor(q, dual, unit).ok());
    Bimodule um = restrict_bimodule(q, dual, unit, m);
    for (int rep = 0; rep < 6; ++rep) {
        Cochain theta = random_cochain(rng, dual, m, 2);
        Cochain lhs = pushforward_cocycle(q, dual, unit, m,
                                          hochschild_differential(dual, m, theta));
        Cochain rhs = hochschild_differential(
            q, um, pushforward_cocycle(q, dual, unit, m, theta));
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("characteristic classes over the dual numbers") {
    FinCategory dual = dual_numbers_category();
    Bimodule m = canonical_bimodule(dual);
    // the simple module Q with eps acting by zero
    Module simple;
    simple.init(1);
    simple.set_carrier(0, {"v"});
    QMatrix act(1, 2);
    act.at(0, 0) = 1;  // 1 acts as the identity, eps acts by zero
    simple.set_action(0, 0, act);
    simple.finish();
    REQUIRE(validate_module(dual, simple).ok());

    // eta = 0: class vanishes
    Cochain zero;
    zero.degree = 2;
    auto cls0 = characteristic_class(dual, m, simple, zero, false);
    CHECK(cls0.cocycle_certified);
    CHECK(cls0.vanishes);

    // a coboundary: still vanishes
    std::mt19937 rng(707);
    Cochain db = random_coboundary(rng, dual, m, 2);
    auto clsb = characteristic_class(dual, m, simple, db, false);
    CHECK(clsb.cocycle_certified);
    CHECK(clsb.vanishes);

    // the HH^2 generator: the induced 2-extension of Q by Q is non-split
    Cochain g2 = dual_numbers_generator(dual, 2);
    auto cls2 = characteristic_class(dual, m, simple, g2, false);
    CHECK(cls2.cocycle_certified);
    CHECK_FALSE(cls2.vanishes);

    // dual variant agrees for the invertible (canonical) coefficient bimodule
    auto cls2d = characteristic_class(dual, m, simple, g2, true);
    CHECK(cls2d.cocycle_certified);
    CHECK_FALSE(cls2d.vanishes);

    // the odd generator takes eps-divisible values, which die in Gamma (x) Q:
    // its class vanishes and the lift exists -- both sides of the equivalence
    Cochain g3 = dual_numbers_generator(dual, 3);
    auto cls3 = characteristic_class(dual, m, simple, g3, false);
    CHECK(cls3.vanishes);
    CHECK(module_lift_witness(dual, m, simple, g3, 2 - 3).has_value());

    // the even degree-4 generator hits 1 (x) v and obstructs the lift
    Cochain g4 = dual_numbers_generator(dual, 4);
    auto cls4 = characteristic_class(dual, m, simple, g4, false);
    CHECK(cls4.cocycle_certified);
    CHECK_FALSE(cls4.vanishes);
    auto cls4d = characteristic_class(dual, m, simple, g4, true);
    CHECK_FALSE(cls4d.vanishes);
    CHECK_FALSE(module_lift_witness(dual, m, simple, g4, 2 - 4).has_value());

    // lifts exist along coboundaries
    Cochain db3 = random_coboundary(rng, dual, m, 3);
    auto lift = module_lift_witness(dual, m, simple, db3, 2 - 3);
    CHECK(lift.has_value());
}

TEST_CASE("lift witnesses match the characteristic verdicts on random instances") {
    std::mt19937 rng(808);
    int done = 0;
    while (done < 20) {
        FinCategory c = pick_category(rng);
        Bimodule m = canonical_bimodule(c);
        Cochain eta = random_cocycle(rng, c, m, 3);
        Module u = rng() % 2 == 0 ? simple_module(c, rng() % c.n_objects())
                                  : representable_module(c, rng() % c.n_objects());
        auto cls = characteristic_class(c, m, u, eta, false);
        CHECK(cls.cocycle_certified);
        auto lift = module_lift_witness(c, m, u, eta, -1);
        CHECK(cls.vanishes == lift.has_value());
        if (lift) {
            // the witness honestly solves the lifting equation
            ModuleCochain rep = cls.representative;
            TensorModule tm = tensor_module(c, m, u);
            ModuleCochain check = module_differential(c, u, tm.mod, lift->lambda);
            CHECK((check - rep).is_zero());
        }
        ++done;
    }
}

TEST_CASE("dual and non-dual verdicts agree for invertible coefficients") {
    std::mt19937 rng(909);
    int done = 0;
    while (done < 12) {
        FinCategory c = pick_category(rng);
        Bimodule m = canonical_bimodule(c);  // the unit bimodule is invertible
        int deg = 2 + static_cast<int>(rng() % 2);
        Cochain eta = random_cocycle(rng, c, m, deg);
        Module u = rng() % 2 == 0 ? simple_module(c, rng() % c.n_objects())
                                  : representable_module(c, rng() % c.n_objects());
        auto plain = characteristic_class(c, m, u, eta, false);
        auto dual = characteristic_class(c, m, u, eta, true);
        CHECK(plain.cocycle_certified);
        CHECK(dual.cocycle_certified);
        CHECK(plain.vanishes == dual.vanishes);
        ++done;
    }
}
