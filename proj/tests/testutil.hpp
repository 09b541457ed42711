#pragma once

#include "obstr/hochschild.hpp"

#include <random>

namespace obstr::testutil {

inline FinCategory pick_category(std::mt19937& rng) {
    switch (rng() % 5) {
        case 0: return dual_numbers_category();
        case 1: return a2_path_category();
        case 2: return two_cycle_category();
        case 3: return star_q();
        default: return build_one_object_category(truncated_polynomial_algebra(3));
    }
}

inline Cochain random_cochain(std::mt19937& rng, const FinCategory& c, const Bimodule& m, int n,
                              int spread = 2) {
    std::vector<Rational> v(cc_dim(c, m, n));
    std::uniform_int_distribution<int> coef(-spread, spread);
    for (auto& e : v) e = coef(rng);
    return cochain_unflatten(c, m, n, v);
}

inline Cochain random_cocycle(std::mt19937& rng, const FinCategory& c, const Bimodule& m, int n) {
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

inline Cochain random_coboundary(std::mt19937& rng, const FinCategory& c, const Bimodule& m,
                                 int n) {
    return hochschild_differential(c, m, random_cochain(rng, c, m, n - 1));
}

// one-dimensional module supported at x0, nilpotents acting by zero; falls
// back to a representable when the evaluation character is not an algebra map
inline Module simple_module(const FinCategory& c, std::size_t x0) {
    Module u;
    u.init(c.n_objects());
    u.set_carrier(x0, {"v"});
    for (std::size_t x = 0; x < c.n_objects(); ++x)
        for (std::size_t y = 0; y < c.n_objects(); ++y) {
            QMatrix t(u.dim(y), c.dim(x, y) * u.dim(x));
            if (x == x0 && y == x0)
                for (std::size_t j = 0; j < c.dim(x0, x0); ++j)
                    t.at(0, j) = c.identity(x0)[j];
            u.set_action(x, y, std::move(t));
        }
    u.finish();
    if (!validate_module(c, u).ok()) return representable_module(c, x0);
    return u;
}

// the degree-m generator of HH^m of the dual numbers:
// (eps,...,eps) -> eps for odd m, (eps,...,eps) -> 1 for even m
inline Cochain dual_numbers_generator(const FinCategory& dual, int m) {
    Cochain x;
    x.degree = m;
    std::vector<std::size_t> tuple(m + 1, 0);
    QMatrix block(2, 1 << m);
    std::size_t all_eps = (1u << m) - 1;  // eps has index 1 in every slot
    block.at(m % 2 == 0 ? 0 : 1, all_eps) = 1;
    x.blocks[tuple] = std::move(block);
    return x;
}

}  // namespace obstr::testutil
