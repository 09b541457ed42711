#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "obstr/qlinalg.hpp"

#include <random>

using namespace obstr;

namespace {

QMatrix from_rows(std::vector<std::vector<int>> rows) {
    QMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

}  // namespace

TEST_CASE("rational parsing round-trips") {
    CHECK(rational_str(parse_rational("3/6")) == "1/2");
    CHECK(rational_str(parse_rational("-4/2")) == "-2");
    CHECK(rational_str(parse_rational("7")) == "7");
    CHECK_THROWS_AS(parse_rational("1/0"), input_error);
    CHECK_THROWS_AS(parse_rational("x"), input_error);
}

TEST_CASE("binomials") {
    CHECK(binomial(3, 1) == 3);
    CHECK(binomial(13, 8) == 1287);
    CHECK(binomial(68, 7) == Integer("969443904"));
    CHECK(binomial(40, 20) == Integer("137846528820"));
    CHECK(binomial(4, 7) == 0);
    CHECK(binomial(-1, 0) == 0);
}

TEST_CASE("rank basics") {
    CHECK(QMatrix::identity(3).rank() == 3);
    CHECK(QMatrix(2, 2).rank() == 0);
    CHECK(from_rows({{1, 2}, {2, 4}}).rank() == 1);
}

TEST_CASE("rank equals rank of the transpose on random matrices") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int rep = 0; rep < 40; ++rep) {
        QMatrix m(1 + rng() % 6, 1 + rng() % 6);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = Rational(coef(rng), 1 + rng() % 3);
        CHECK(m.rank() == m.transpose().rank());
    }
}

TEST_CASE("solve") {
    QMatrix id = QMatrix::identity(3);
    std::vector<Rational> b{Rational(1), Rational(-2), Rational(1, 3)};
    auto x = id.solve(b);
    REQUIRE(x.has_value());
    CHECK(*x == b);

    QMatrix wide = from_rows({{1, 1}});
    auto y = wide.solve({Rational(2)});
    REQUIRE(y.has_value());
    CHECK(wide.apply(*y) == std::vector<Rational>{Rational(2)});

    QMatrix zero = from_rows({{0}});
    CHECK_FALSE(zero.solve({Rational(1)}).has_value());
}

TEST_CASE("solve consistency property") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int rep = 0; rep < 60; ++rep) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        QMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = coef(rng);
        std::vector<Rational> b(r);
        for (auto& e : b) e = coef(rng);
        auto x = m.solve(b);
        QMatrix aug(r, c + 1);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < c; ++j) aug.at(i, j) = m.at(i, j);
            aug.at(i, c) = b[i];
        }
        if (x)
            CHECK(m.apply(*x) == b);
        else
            CHECK(aug.rank() > m.rank());
    }
}

TEST_CASE("kernel basis spans the kernel") {
    QMatrix m = from_rows({{1, 2, 3}, {2, 4, 6}});
    auto k = m.kernel_basis();
    CHECK(k.size() == 2);
    for (const auto& v : k) {
        auto img = m.apply(v);
        for (const auto& e : img) CHECK(e == 0);
    }
}

TEST_CASE("cohomology_dim") {
    // zero differentials on an n-dimensional space
    CHECK(cohomology_dim(QMatrix(4, 5), QMatrix(5, 2)) == 5);
    // identity d_out kills everything
    CHECK(cohomology_dim(QMatrix::identity(3), QMatrix(3, 0)) == 0);
    // two-term Koszul-style complex: d_in = (1, -1)^t, d_out = (1, 1)
    QMatrix d_in = from_rows({{1}, {-1}});
    QMatrix d_out = from_rows({{1, 1}});
    // brute force: ker(d_out) is 1-dimensional, image of d_in is 1-dimensional
    CHECK(d_out.cols() - d_out.rank() == 1);
    CHECK(d_in.rank() == 1);
    CHECK(cohomology_dim(d_out, d_in) == 0);
    // not a complex
    CHECK_THROWS_AS(cohomology_dim(QMatrix::identity(2), QMatrix::identity(2)),
                    validation_error);
    // dimension mismatch
    CHECK_THROWS_AS(cohomology_dim(QMatrix(2, 3), QMatrix(2, 2)), input_error);
}
