#include "obstr/selftest.hpp"

#include "obstr/ainf.hpp"
#include "obstr/hodge.hpp"

#include <random>

namespace obstr {

namespace {

struct Checker {
    SelftestResult result;

    void check(bool ok, const std::string& what) {
        ++result.checks;
        if (!ok) result.failures.push_back(what);
    }
};

FinCategory pick_category(std::mt19937& rng) {
    switch (rng() % 4) {
        case 0: return dual_numbers_category();
        case 1: return a2_path_category();
        case 2: return two_cycle_category();
        default: return build_one_object_category(truncated_polynomial_algebra(3));
    }
}

Cochain random_cochain(std::mt19937& rng, const FinCategory& c, const Bimodule& m, int n) {
    Cochain x;
    x.degree = n;
    std::vector<Rational> v(cc_dim(c, m, n));
    std::uniform_int_distribution<int> coef(-2, 2);
    for (auto& e : v) e = coef(rng);
    return cochain_unflatten(c, m, n, v);
}

Cochain random_cocycle(std::mt19937& rng, const FinCategory& c, const Bimodule& m, int n) {
    QMatrix d = differential_matrix(c, m, n);
    auto kernel = d.kernel_basis();
    std::vector<Rational> v(cc_dim(c, m, n));
    std::uniform_int_distribution<int> coef(-2, 2);
    for (const auto& k : kernel) {
        Rational a = coef(rng);
        if (a == 0) continue;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += a * k[i];
    }
    return cochain_unflatten(c, m, n, v);
}

QMatrix random_invertible(std::mt19937& rng, std::size_t n) {
    QMatrix m = QMatrix::identity(n);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (std::size_t pass = 0; pass < 2 * n; ++pass) {
        std::size_t i = rng() % n, j = rng() % n;
        if (i == j) continue;
        Rational a = coef(rng);
        for (std::size_t k = 0; k < n; ++k) m.at(i, k) += a * m.at(j, k);
    }
    return m;
}

}  // namespace

SelftestResult run_selftest(unsigned seed) {
    std::mt19937 rng(seed);
    Checker ck;
    std::uniform_int_distribution<int> coef(-3, 3);

    // exact linear algebra
    for (int rep = 0; rep < 10; ++rep) {
        std::size_t r = 1 + rng() % 5, cdim = 1 + rng() % 5;
        QMatrix m(r, cdim);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < cdim; ++j) m.at(i, j) = coef(rng);
        ck.check(m.rank() == m.transpose().rank(), "rank(m) == rank(m^T)");
        std::vector<Rational> b(r);
        for (auto& e : b) e = coef(rng);
        auto x = m.solve(b);
        if (x) {
            ck.check(m.apply(*x) == b, "solve returns an exact solution");
        } else {
            QMatrix aug(r, cdim + 1);
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < cdim; ++j) aug.at(i, j) = m.at(i, j);
                aug.at(i, cdim) = b[i];
            }
            ck.check(aug.rank() > m.rank(), "unsolvable iff rank([a|b]) > rank(a)");
        }
    }

    // cohomology_dim is invariant under change of basis
    for (int rep = 0; rep < 5; ++rep) {
        FinCategory c = pick_category(rng);
        Bimodule m = canonical_bimodule(c);
        int n = 1 + static_cast<int>(rng() % 2);
        QMatrix d_out = differential_matrix(c, m, n);
        QMatrix d_in = differential_matrix(c, m, n - 1);
        std::size_t dim = cohomology_dim(d_out, d_in);
        QMatrix p = random_invertible(rng, d_out.cols());
        QMatrix q = random_invertible(rng, d_in.cols());
        QMatrix w = random_invertible(rng, d_out.rows());
        auto pinv_times = [&](const QMatrix& a) {
            // solve p * y = a column by column
            QMatrix y(p.cols(), a.cols());
            for (std::size_t j = 0; j < a.cols(); ++j) {
                std::vector<Rational> col(a.rows());
                for (std::size_t i = 0; i < a.rows(); ++i) col[i] = a.at(i, j);
                auto sol = p.solve(col);
                for (std::size_t i = 0; i < p.cols(); ++i) y.at(i, j) = (*sol)[i];
            }
            return y;
        };
        QMatrix d_out2 = w.mul(d_out).mul(p);
        QMatrix d_in2 = pinv_times(d_in.mul(q));
        ck.check(cohomology_dim(d_out2, d_in2) == dim,
                 "cohomology_dim invariant under change of basis");
    }

    // d o d = 0 and [., m2] = -d
    for (int rep = 0; rep < 12; ++rep) {
        FinCategory c = pick_category(rng);
        Bimodule m = canonical_bimodule(c);
        int n = static_cast<int>(rng() % 3);
        Cochain x = random_cochain(rng, c, m, n);
        Cochain dx = hochschild_differential(c, m, x);
        ck.check(hochschild_differential(c, m, dx).is_zero(), "d o d = 0");
        Cochain br = gerstenhaber_bracket_composition(c, m, x);
        ck.check((br + dx).is_zero(), "[f, m2] = -d f");
    }

    // deformation relations <=> cocycle condition, both directions
    for (int rep = 0; rep < 6; ++rep) {
        FinCategory c = pick_category(rng);
        Bimodule m = canonical_bimodule(c);
        int mdeg = 3;
        Cochain eta = random_cocycle(rng, c, m, mdeg);
        Deformation d = deform(c, m, eta, mdeg);
        ck.check(check_ainf_relations(d.category, 2 * mdeg).empty(),
                 "deform of a cocycle satisfies the relations");
        Cochain bad = random_cochain(rng, c, m, mdeg);
        bool bad_is_cocycle = is_cocycle(c, m, bad);
        Deformation db = deform(c, m, bad, mdeg, false);
        auto viol = check_ainf_relations(db.category, mdeg + 1);
        ck.check(bad_is_cocycle == viol.empty(),
                 "relations hold iff the deformation datum is a cocycle");
        if (!viol.empty())
            ck.check(viol.front().arity == mdeg + 1, "violations appear at arity mdeg+1");
    }

    // small hodge sample: Serre duality and Euler consistency
    for (int rep = 0; rep < 6; ++rep) {
        int d = 2 + static_cast<int>(rng() % 4);
        int N = 3 + static_cast<int>(rng() % 3);
        int t = static_cast<int>(rng() % 11) - 5;
        auto spec = make_spec(d, N, t);
        auto dual = make_spec(d, N, -t);
        int n = spec.n();
        for (int p = 0; p <= n; ++p) {
            Integer chi = 0;
            for (int q = 0; q <= n; ++q) {
                Integer h = twisted_hodge_number(spec, p, q);
                ck.check(h == twisted_hodge_number(dual, n - p, n - q), "Serre duality");
                chi += (q % 2 == 0) ? h : -h;
            }
            ck.check(chi == euler_char_twisted(spec, p), "Euler characteristic consistency");
        }
    }

    return ck.result;
}

}  // namespace obstr
