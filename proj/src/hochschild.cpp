#include "obstr/hochschild.hpp"

#include <algorithm>

namespace obstr {

namespace {

std::vector<Rational> unit_vec(std::size_t n, std::size_t i) {
    std::vector<Rational> v(n);
    v[i] = 1;
    return v;
}

bool all_zero(const std::vector<Rational>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

void add_scaled(std::vector<Rational>& acc, const std::vector<Rational>& v, const Rational& c) {
    for (std::size_t i = 0; i < acc.size(); ++i)
        if (v[i] != 0) acc[i] += c * v[i];
}

std::vector<std::vector<std::size_t>> all_tuples(std::size_t n_obj, std::size_t len) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur(len, 0);
    if (len == 0) return {{}};
    while (true) {
        out.push_back(cur);
        std::size_t i = 0;
        while (i < len) {
            if (++cur[i] < n_obj) break;
            cur[i] = 0;
            ++i;
        }
        if (i == len) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> hom_dims(const FinCategory& c, const std::vector<std::size_t>& tuple) {
    std::vector<std::size_t> d;
    for (std::size_t i = 0; i + 1 < tuple.size(); ++i) d.push_back(c.dim(tuple[i], tuple[i + 1]));
    return d;
}

bool next_index(std::vector<std::size_t>& idx, const std::vector<std::size_t>& dims) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (++idx[i] < dims[i]) return true;
        idx[i] = 0;
    }
    return false;
}

std::size_t flat_index(const std::vector<std::size_t>& idx, const std::vector<std::size_t>& dims) {
    std::size_t f = 0;
    for (std::size_t i = idx.size(); i-- > 0;) f = f * dims[i] + idx[i];
    return f;
}

std::size_t prod(const std::vector<std::size_t>& dims) {
    std::size_t p = 1;
    for (auto d : dims) p *= d;
    return p;
}

int parity_sign(long long k) { return (k % 2 + 2) % 2 == 0 ? 1 : -1; }

}  // namespace

bool Cochain::is_zero() const {
    for (const auto& [t, b] : blocks)
        if (!b.is_zero()) return false;
    return true;
}

Cochain Cochain::operator+(const Cochain& o) const {
    if (degree != o.degree) throw input_error("cochain sum: degree mismatch");
    Cochain out = *this;
    for (const auto& [t, b] : o.blocks) {
        auto it = out.blocks.find(t);
        if (it == out.blocks.end())
            out.blocks[t] = b;
        else
            it->second = it->second + b;
    }
    return out;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + o.scaled(-1); }

Cochain Cochain::scaled(const Rational& c) const {
    Cochain out = *this;
    for (auto& [t, b] : out.blocks) b = b.scaled(c);
    return out;
}

std::size_t tuple_source_dim(const FinCategory& c, const std::vector<std::size_t>& tuple) {
    return prod(hom_dims(c, tuple));
}

std::vector<Rational> cochain_eval(const FinCategory& c, const Bimodule& m, const Cochain& x,
                                   const std::vector<std::size_t>& tuple,
                                   const std::vector<std::size_t>& idx) {
    std::vector<Rational> out(m.dim(tuple.front(), tuple.back()));
    auto it = x.blocks.find(tuple);
    if (it == x.blocks.end()) return out;
    std::size_t col = flat_index(idx, hom_dims(c, tuple));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = it->second.at(i, col);
    return out;
}

namespace {

// evaluate x with one slot carrying a linear combination instead of a basis vector
std::vector<Rational> eval_with_combo(const FinCategory& c, const Bimodule& m, const Cochain& x,
                                      const std::vector<std::size_t>& tuple,
                                      std::vector<std::size_t> idx, std::size_t slot,
                                      const std::vector<Rational>& combo) {
    std::vector<Rational> out(m.dim(tuple.front(), tuple.back()));
    for (std::size_t l = 0; l < combo.size(); ++l) {
        if (combo[l] == 0) continue;
        idx[slot] = l;
        add_scaled(out, cochain_eval(c, m, x, tuple, idx), combo[l]);
    }
    return out;
}

}  // namespace

Cochain hochschild_differential(const FinCategory& c, const Bimodule& m, const Cochain& x) {
    int n = x.degree;
    Cochain out;
    out.degree = n + 1;
    out.shift = x.shift;
    for (const auto& tuple : all_tuples(c.n_objects(), n + 2)) {
        std::size_t tgt = m.dim(tuple.front(), tuple.back());
        auto dims = hom_dims(c, tuple);
        std::size_t src = prod(dims);
        if (tgt == 0 || src == 0) continue;
        QMatrix block(tgt, src);
        bool nonzero = false;
        std::vector<std::size_t> idx(dims.size(), 0);
        do {
            std::vector<Rational> acc(tgt);
            // x_1 . f(x_2 ... x_{n+1})
            {
                std::vector<std::size_t> sub_tuple(tuple.begin() + 1, tuple.end());
                std::vector<std::size_t> sub_idx(idx.begin() + 1, idx.end());
                auto v = cochain_eval(c, m, x, sub_tuple, sub_idx);
                if (!all_zero(v)) {
                    auto f = unit_vec(dims[0], idx[0]);
                    add_scaled(acc, m.act_source(tuple[0], tuple[1], tuple.back(), f, v), 1);
                }
            }
            // inner compositions with alternating signs
            for (int i = 1; i <= n; ++i) {
                auto w = c.compose_basis(tuple[i - 1], tuple[i], tuple[i + 1], idx[i - 1], idx[i]);
                if (all_zero(w)) continue;
                std::vector<std::size_t> sub_tuple = tuple;
                sub_tuple.erase(sub_tuple.begin() + i);
                std::vector<std::size_t> sub_idx = idx;
                sub_idx.erase(sub_idx.begin() + i - 1);
                // slot i-1 of the sub-cochain receives the composed input
                auto v = eval_with_combo(c, m, x, sub_tuple, sub_idx, i - 1, w);
                add_scaled(acc, v, parity_sign(i));
            }
            // (-1)^{n+1} f(x_1 ... x_n) . x_{n+1}
            {
                std::vector<std::size_t> sub_tuple(tuple.begin(), tuple.end() - 1);
                std::vector<std::size_t> sub_idx(idx.begin(), idx.end() - 1);
                auto v = cochain_eval(c, m, x, sub_tuple, sub_idx);
                if (!all_zero(v)) {
                    auto g = unit_vec(dims[n], idx[n]);
                    add_scaled(acc,
                               m.act_target(tuple[0], tuple[n], tuple.back(), v, g),
                               parity_sign(n + 1));
                }
            }
            std::size_t col = flat_index(idx, dims);
            for (std::size_t i = 0; i < tgt; ++i)
                if (acc[i] != 0) {
                    block.at(i, col) = acc[i];
                    nonzero = true;
                }
        } while (next_index(idx, dims));
        if (nonzero) out.blocks[tuple] = std::move(block);
    }
    return out;
}

bool is_cocycle(const FinCategory& c, const Bimodule& m, const Cochain& x) {
    return hochschild_differential(c, m, x).is_zero();
}

std::size_t cc_dim(const FinCategory& c, const Bimodule& m, int n) {
    std::size_t total = 0;
    for (const auto& tuple : all_tuples(c.n_objects(), n + 1))
        total += m.dim(tuple.front(), tuple.back()) * tuple_source_dim(c, tuple);
    return total;
}

std::vector<Rational> cochain_flatten(const FinCategory& c, const Bimodule& m, const Cochain& x) {
    std::vector<Rational> v(cc_dim(c, m, x.degree));
    std::size_t off = 0;
    for (const auto& tuple : all_tuples(c.n_objects(), x.degree + 1)) {
        std::size_t tgt = m.dim(tuple.front(), tuple.back());
        std::size_t src = tuple_source_dim(c, tuple);
        auto it = x.blocks.find(tuple);
        if (it != x.blocks.end())
            for (std::size_t s = 0; s < src; ++s)
                for (std::size_t t = 0; t < tgt; ++t) v[off + s * tgt + t] = it->second.at(t, s);
        off += src * tgt;
    }
    return v;
}

Cochain cochain_unflatten(const FinCategory& c, const Bimodule& m, int n,
                          const std::vector<Rational>& v) {
    Cochain x;
    x.degree = n;
    std::size_t off = 0;
    for (const auto& tuple : all_tuples(c.n_objects(), n + 1)) {
        std::size_t tgt = m.dim(tuple.front(), tuple.back());
        std::size_t src = tuple_source_dim(c, tuple);
        if (src * tgt > 0) {
            QMatrix block(tgt, src);
            bool nonzero = false;
            for (std::size_t s = 0; s < src; ++s)
                for (std::size_t t = 0; t < tgt; ++t) {
                    block.at(t, s) = v[off + s * tgt + t];
                    if (block.at(t, s) != 0) nonzero = true;
                }
            if (nonzero) x.blocks[tuple] = std::move(block);
        }
        off += src * tgt;
    }
    return x;
}

QMatrix differential_matrix(const FinCategory& c, const Bimodule& m, int n) {
    std::size_t dom = cc_dim(c, m, n), cod = cc_dim(c, m, n + 1);
    QMatrix d(cod, dom);
    std::size_t off = 0;
    for (const auto& tuple : all_tuples(c.n_objects(), n + 1)) {
        std::size_t tgt = m.dim(tuple.front(), tuple.back());
        std::size_t src = tuple_source_dim(c, tuple);
        for (std::size_t s = 0; s < src; ++s)
            for (std::size_t t = 0; t < tgt; ++t) {
                Cochain basis;
                basis.degree = n;
                QMatrix block(tgt, src);
                block.at(t, s) = 1;
                basis.blocks[tuple] = std::move(block);
                auto col = cochain_flatten(c, m, hochschild_differential(c, m, basis));
                std::size_t j = off + s * tgt + t;
                for (std::size_t i = 0; i < cod; ++i) d.at(i, j) = col[i];
            }
        off += src * tgt;
    }
    return d;
}

std::size_t hh_dimension(const FinCategory& c, const Bimodule& m, int n) {
    if (n < 0) throw input_error("hh_dimension: negative degree");
    QMatrix d_out = differential_matrix(c, m, n);
    QMatrix d_in = n == 0 ? QMatrix(cc_dim(c, m, 0), 0) : differential_matrix(c, m, n - 1);
    return cohomology_dim(d_out, d_in);
}

std::optional<Cochain> cohomologous_witness(const FinCategory& c, const Bimodule& m,
                                            const Cochain& eta, const Cochain& mu) {
    if (eta.degree != mu.degree) throw input_error("cohomologous_witness: degree mismatch");
    if (!is_cocycle(c, m, eta) || !is_cocycle(c, m, mu))
        throw validation_error("cohomologous_witness: inputs must be cocycles");
    int n = eta.degree;
    Cochain diff = eta - mu;
    if (n == 0) {
        if (diff.is_zero()) {
            Cochain zero;
            zero.degree = 0;
            return zero;
        }
        return std::nullopt;
    }
    QMatrix d = differential_matrix(c, m, n - 1);
    auto sol = d.solve(cochain_flatten(c, m, diff));
    if (!sol) return std::nullopt;
    return cochain_unflatten(c, m, n - 1, *sol);
}

Cochain gerstenhaber_bracket_composition(const FinCategory& c, const Bimodule& m,
                                         const Cochain& f) {
    int i = f.degree;
    Cochain out;
    out.degree = i + 1;
    out.shift = f.shift;
    for (const auto& tuple : all_tuples(c.n_objects(), i + 2)) {
        std::size_t tgt = m.dim(tuple.front(), tuple.back());
        auto dims = hom_dims(c, tuple);
        std::size_t src = prod(dims);
        if (tgt == 0 || src == 0) continue;
        QMatrix block(tgt, src);
        bool nonzero = false;
        std::vector<std::size_t> idx(dims.size(), 0);
        do {
            std::vector<Rational> acc(tgt);
            // insertions of m2 into f: sum_r (-1)^r f(..., x_{r+1} x_{r+2}, ...)
            for (int r = 0; r + 1 <= i; ++r) {
                auto w = c.compose_basis(tuple[r], tuple[r + 1], tuple[r + 2], idx[r], idx[r + 1]);
                if (all_zero(w)) continue;
                std::vector<std::size_t> sub_tuple = tuple;
                sub_tuple.erase(sub_tuple.begin() + r + 1);
                std::vector<std::size_t> sub_idx = idx;
                sub_idx.erase(sub_idx.begin() + r);
                add_scaled(acc, eval_with_combo(c, m, f, sub_tuple, sub_idx, r, w),
                           parity_sign(r));
            }
            // minus (-1)^{(i-1)} m2(f (x) 1) and minus m2(1 (x) f)
            {
                std::vector<std::size_t> sub_tuple(tuple.begin(), tuple.end() - 1);
                std::vector<std::size_t> sub_idx(idx.begin(), idx.end() - 1);
                auto v = cochain_eval(c, m, f, sub_tuple, sub_idx);
                if (!all_zero(v)) {
                    auto g = unit_vec(dims[i], idx[i]);
                    add_scaled(acc, m.act_target(tuple[0], tuple[i], tuple.back(), v, g),
                               -parity_sign(i - 1));
                }
            }
            {
                std::vector<std::size_t> sub_tuple(tuple.begin() + 1, tuple.end());
                std::vector<std::size_t> sub_idx(idx.begin() + 1, idx.end());
                auto v = cochain_eval(c, m, f, sub_tuple, sub_idx);
                if (!all_zero(v)) {
                    auto g = unit_vec(dims[0], idx[0]);
                    add_scaled(acc, m.act_source(tuple[0], tuple[1], tuple.back(), g, v), -1);
                }
            }
            std::size_t col = flat_index(idx, dims);
            for (std::size_t t = 0; t < tgt; ++t)
                if (acc[t] != 0) {
                    block.at(t, col) = acc[t];
                    nonzero = true;
                }
        } while (next_index(idx, dims));
        if (nonzero) out.blocks[tuple] = std::move(block);
    }
    return out;
}

namespace {

// insertion sum of g into f for canonical-bimodule-valued cochains
Cochain insert_sum(const FinCategory& c, const Cochain& f, const Cochain& g) {
    Bimodule canon = canonical_bimodule(c);
    int i = f.degree, k = g.degree;
    Cochain out;
    out.degree = i + k - 1;
    for (const auto& tuple : all_tuples(c.n_objects(), i + k)) {
        std::size_t tgt = c.dim(tuple.front(), tuple.back());
        auto dims = hom_dims(c, tuple);
        std::size_t src = prod(dims);
        if (tgt == 0 || src == 0) continue;
        QMatrix block(tgt, src);
        bool nonzero = false;
        std::vector<std::size_t> idx(dims.size(), 0);
        do {
            std::vector<Rational> acc(tgt);
            for (int r = 0; r <= i - 1; ++r) {
                // g consumes inputs r+1 .. r+k
                std::vector<std::size_t> g_tuple(tuple.begin() + r, tuple.begin() + r + k + 1);
                std::vector<std::size_t> g_idx(idx.begin() + r, idx.begin() + r + k);
                auto w = cochain_eval(c, canon, g, g_tuple, g_idx);
                if (all_zero(w)) continue;
                std::vector<std::size_t> f_tuple;
                f_tuple.insert(f_tuple.end(), tuple.begin(), tuple.begin() + r + 1);
                f_tuple.insert(f_tuple.end(), tuple.begin() + r + k, tuple.end());
                std::vector<std::size_t> f_idx;
                f_idx.insert(f_idx.end(), idx.begin(), idx.begin() + r);
                f_idx.push_back(0);
                f_idx.insert(f_idx.end(), idx.begin() + r + k, idx.end());
                auto v = eval_with_combo(c, canon, f, f_tuple, f_idx, r, w);
                add_scaled(acc, v, parity_sign(static_cast<long long>(r) * (k - 1)));
            }
            std::size_t col = flat_index(idx, dims);
            for (std::size_t t = 0; t < tgt; ++t)
                if (acc[t] != 0) {
                    block.at(t, col) = acc[t];
                    nonzero = true;
                }
        } while (next_index(idx, dims));
        if (nonzero) out.blocks[tuple] = std::move(block);
    }
    return out;
}

}  // namespace

Cochain gerstenhaber_bracket(const FinCategory& c, const Cochain& f, const Cochain& g) {
    int i = f.degree, k = g.degree;
    if (i < 1 || k < 1) throw input_error("gerstenhaber_bracket: arities must be >= 1");
    Cochain a = insert_sum(c, f, g);
    Cochain b = insert_sum(c, g, f);
    long long sgn = static_cast<long long>(i - 1) * (k - 1);
    return a - b.scaled(parity_sign(sgn));
}

Cochain cup_identity_extend(const FinCategory& c, const Bimodule& m, const Cochain& eta,
                            const FinCategory& icat) {
    int n = eta.degree;
    std::size_t ni = icat.n_objects();
    Cochain out;
    out.degree = n;
    out.shift = eta.shift;
    FinCategory tens = tensor_category(c, icat);
    Bimodule tm = tensor_bimodule(c, m, icat);
    for (const auto& tuple : all_tuples(tens.n_objects(), n + 1)) {
        std::vector<std::size_t> a(n + 1), p(n + 1);
        for (int j = 0; j <= n; ++j) {
            a[j] = tuple[j] / ni;
            p[j] = tuple[j] % ni;
        }
        std::size_t tgt = tm.dim(tuple.front(), tuple.back());
        auto dims = hom_dims(tens, tuple);
        std::size_t src = prod(dims);
        if (tgt == 0 || src == 0) continue;
        std::vector<std::size_t> a_tuple(a.begin(), a.end());
        std::size_t dm = m.dim(a.front(), a.back());
        std::size_t di = icat.dim(p.front(), p.back());
        QMatrix block(tgt, src);
        bool nonzero = false;
        std::vector<std::size_t> idx(dims.size(), 0);
        do {
            std::vector<std::size_t> xi(n), ui(n);
            for (int j = 0; j < n; ++j) {
                std::size_t dc = c.dim(a[j], a[j + 1]);
                xi[j] = idx[j] % dc;
                ui[j] = idx[j] / dc;
            }
            auto ev = cochain_eval(c, m, eta, a_tuple, xi);
            if (!all_zero(ev)) {
                // ordered product of the I-inputs (the identity for n = 0)
                std::vector<Rational> w = icat.identity(p[0]);
                if (n >= 1) {
                    w = unit_vec(icat.dim(p[0], p[1]), ui[0]);
                    for (int j = 1; j < n; ++j)
                        w = icat.compose(p[0], p[j], p[j + 1], w,
                                         unit_vec(icat.dim(p[j], p[j + 1]), ui[j]));
                }
                std::size_t col = flat_index(idx, dims);
                for (std::size_t r1 = 0; r1 < dm; ++r1)
                    for (std::size_t r2 = 0; r2 < di; ++r2) {
                        Rational v = ev[r1] * w[r2];
                        if (v != 0) {
                            block.at(r1 + dm * r2, col) = v;
                            nonzero = true;
                        }
                    }
            }
        } while (next_index(idx, dims));
        if (nonzero) out.blocks[tuple] = std::move(block);
    }
    return out;
}

Cochain pushforward_cocycle(const FinCategory& src, const FinCategory& tgt,
                            const LinearFunctor& f, const Bimodule& m, const Cochain& eta) {
    int n = eta.degree;
    std::size_t ns = src.n_objects();
    Cochain out;
    out.degree = n;
    out.shift = eta.shift;
    for (const auto& tuple : all_tuples(ns, n + 1)) {
        std::vector<std::size_t> ft(n + 1);
        for (int j = 0; j <= n; ++j) ft[j] = f.object_map[tuple[j]];
        std::size_t tgt_dim = m.dim(ft.front(), ft.back());
        auto dims = hom_dims(src, tuple);
        std::size_t src_dim = prod(dims);
        if (tgt_dim == 0 || src_dim == 0) continue;
        auto fdims = hom_dims(tgt, ft);
        QMatrix block(tgt_dim, src_dim);
        bool nonzero = false;
        std::vector<std::size_t> idx(dims.size(), 0);
        do {
            // expand eta multilinearly over the images of the basis inputs
            std::vector<std::vector<Rational>> imgs(n);
            for (int j = 0; j < n; ++j)
                imgs[j] = f.map(tuple[j], tuple[j + 1], ns).apply(unit_vec(dims[j], idx[j]));
            std::vector<Rational> acc(tgt_dim);
            if (n == 0) {
                acc = cochain_eval(tgt, m, eta, ft, {});
            } else {
                std::vector<std::size_t> fidx(n, 0);
                bool any = prod(fdims) > 0;
                if (any) do {
                        Rational coeff = 1;
                        for (int j = 0; j < n; ++j) {
                            coeff *= imgs[j][fidx[j]];
                            if (coeff == 0) break;
                        }
                        if (coeff == 0) continue;
                        add_scaled(acc, cochain_eval(tgt, m, eta, ft, fidx), coeff);
                    } while (next_index(fidx, fdims));
            }
            std::size_t col = flat_index(idx, dims);
            for (std::size_t t = 0; t < tgt_dim; ++t)
                if (acc[t] != 0) {
                    block.at(t, col) = acc[t];
                    nonzero = true;
                }
        } while (next_index(idx, dims));
        if (nonzero) out.blocks[tuple] = std::move(block);
    }
    return out;
}

// ---- module cochain complexes ----------------------------------------------

bool ModuleCochain::is_zero() const {
    for (const auto& [t, b] : blocks)
        if (!b.is_zero()) return false;
    return true;
}

ModuleCochain ModuleCochain::operator-(const ModuleCochain& o) const {
    ModuleCochain out = *this;
    for (const auto& [t, b] : o.blocks) {
        auto it = out.blocks.find(t);
        if (it == out.blocks.end())
            out.blocks[t] = b.scaled(-1);
        else
            it->second = it->second - b;
    }
    return out;
}

namespace {

std::vector<Rational> module_eval(const FinCategory& c, const Module& u, const Module& h,
                                  const ModuleCochain& phi, const std::vector<std::size_t>& tuple,
                                  const std::vector<std::size_t>& idx, std::size_t u_idx) {
    std::vector<Rational> out(h.dim(tuple.back()));
    auto it = phi.blocks.find(tuple);
    if (it == phi.blocks.end()) return out;
    auto dims = hom_dims(c, tuple);
    std::size_t col = u_idx + u.dim(tuple.front()) * flat_index(idx, dims);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = it->second.at(i, col);
    return out;
}

std::vector<Rational> module_eval_ucombo(const FinCategory& c, const Module& u, const Module& h,
                                         const ModuleCochain& phi,
                                         const std::vector<std::size_t>& tuple,
                                         const std::vector<std::size_t>& idx,
                                         const std::vector<Rational>& ucombo) {
    std::vector<Rational> out(h.dim(tuple.back()));
    for (std::size_t l = 0; l < ucombo.size(); ++l)
        if (ucombo[l] != 0) add_scaled(out, module_eval(c, u, h, phi, tuple, idx, l), ucombo[l]);
    return out;
}

std::vector<Rational> module_eval_combo(const FinCategory& c, const Module& u, const Module& h,
                                        const ModuleCochain& phi,
                                        const std::vector<std::size_t>& tuple,
                                        std::vector<std::size_t> idx, std::size_t slot,
                                        const std::vector<Rational>& combo, std::size_t u_idx) {
    std::vector<Rational> out(h.dim(tuple.back()));
    for (std::size_t l = 0; l < combo.size(); ++l) {
        if (combo[l] == 0) continue;
        idx[slot] = l;
        add_scaled(out, module_eval(c, u, h, phi, tuple, idx, u_idx), combo[l]);
    }
    return out;
}

}  // namespace

ModuleCochain module_differential(const FinCategory& c, const Module& u, const Module& h,
                                  const ModuleCochain& phi) {
    int n = phi.degree;
    ModuleCochain out;
    out.degree = n + 1;
    for (const auto& tuple : all_tuples(c.n_objects(), n + 2)) {
        std::size_t tgt = h.dim(tuple.back());
        auto dims = hom_dims(c, tuple);
        std::size_t du = u.dim(tuple.front());
        std::size_t src = du * prod(dims);
        if (tgt == 0 || src == 0) continue;
        QMatrix block(tgt, src);
        bool nonzero = false;
        for (std::size_t uu = 0; uu < du; ++uu) {
            std::vector<std::size_t> idx(dims.size(), 0);
            do {
                std::vector<Rational> acc(tgt);
                // phi(a_2 ... a_{n+1}; a_1 u)
                {
                    std::vector<std::size_t> sub_tuple(tuple.begin() + 1, tuple.end());
                    std::vector<std::size_t> sub_idx(idx.begin() + 1, idx.end());
                    auto au = u.act(tuple[0], tuple[1], unit_vec(dims[0], idx[0]),
                                    unit_vec(du, uu));
                    add_scaled(acc, module_eval_ucombo(c, u, h, phi, sub_tuple, sub_idx, au), 1);
                }
                for (int i = 1; i <= n; ++i) {
                    auto w = c.compose_basis(tuple[i - 1], tuple[i], tuple[i + 1], idx[i - 1],
                                             idx[i]);
                    if (all_zero(w)) continue;
                    std::vector<std::size_t> sub_tuple = tuple;
                    sub_tuple.erase(sub_tuple.begin() + i);
                    std::vector<std::size_t> sub_idx = idx;
                    sub_idx.erase(sub_idx.begin() + i - 1);
                    add_scaled(acc,
                               module_eval_combo(c, u, h, phi, sub_tuple, sub_idx, i - 1, w, uu),
                               parity_sign(i));
                }
                // (-1)^{n+1} a_{n+1} . phi(a_1 ... a_n; u)
                {
                    std::vector<std::size_t> sub_tuple(tuple.begin(), tuple.end() - 1);
                    std::vector<std::size_t> sub_idx(idx.begin(), idx.end() - 1);
                    auto v = module_eval(c, u, h, phi, sub_tuple, sub_idx, uu);
                    if (!all_zero(v)) {
                        auto g = unit_vec(dims[n], idx[n]);
                        add_scaled(acc, h.act(tuple[n], tuple.back(), g, v), parity_sign(n + 1));
                    }
                }
                std::size_t col = uu + du * flat_index(idx, dims);
                for (std::size_t t = 0; t < tgt; ++t)
                    if (acc[t] != 0) {
                        block.at(t, col) = acc[t];
                        nonzero = true;
                    }
            } while (next_index(idx, dims));
        }
        if (nonzero) out.blocks[tuple] = std::move(block);
    }
    return out;
}

std::size_t module_cc_dim(const FinCategory& c, const Module& u, const Module& h, int n) {
    std::size_t total = 0;
    for (const auto& tuple : all_tuples(c.n_objects(), n + 1))
        total += h.dim(tuple.back()) * u.dim(tuple.front()) * tuple_source_dim(c, tuple);
    return total;
}

std::vector<Rational> module_cochain_flatten(const FinCategory& c, const Module& u,
                                             const Module& h, const ModuleCochain& x) {
    std::vector<Rational> v(module_cc_dim(c, u, h, x.degree));
    std::size_t off = 0;
    for (const auto& tuple : all_tuples(c.n_objects(), x.degree + 1)) {
        std::size_t tgt = h.dim(tuple.back());
        std::size_t src = u.dim(tuple.front()) * tuple_source_dim(c, tuple);
        auto it = x.blocks.find(tuple);
        if (it != x.blocks.end())
            for (std::size_t s = 0; s < src; ++s)
                for (std::size_t t = 0; t < tgt; ++t) v[off + s * tgt + t] = it->second.at(t, s);
        off += src * tgt;
    }
    return v;
}

ModuleCochain module_cochain_unflatten(const FinCategory& c, const Module& u, const Module& h,
                                       int n, const std::vector<Rational>& v) {
    ModuleCochain x;
    x.degree = n;
    std::size_t off = 0;
    for (const auto& tuple : all_tuples(c.n_objects(), n + 1)) {
        std::size_t tgt = h.dim(tuple.back());
        std::size_t src = u.dim(tuple.front()) * tuple_source_dim(c, tuple);
        if (src * tgt > 0) {
            QMatrix block(tgt, src);
            bool nonzero = false;
            for (std::size_t s = 0; s < src; ++s)
                for (std::size_t t = 0; t < tgt; ++t) {
                    block.at(t, s) = v[off + s * tgt + t];
                    if (block.at(t, s) != 0) nonzero = true;
                }
            if (nonzero) x.blocks[tuple] = std::move(block);
        }
        off += src * tgt;
    }
    return x;
}

QMatrix module_differential_matrix(const FinCategory& c, const Module& u, const Module& h,
                                   int n) {
    std::size_t dom = module_cc_dim(c, u, h, n), cod = module_cc_dim(c, u, h, n + 1);
    QMatrix d(cod, dom);
    std::size_t off = 0;
    for (const auto& tuple : all_tuples(c.n_objects(), n + 1)) {
        std::size_t tgt = h.dim(tuple.back());
        std::size_t src = u.dim(tuple.front()) * tuple_source_dim(c, tuple);
        for (std::size_t s = 0; s < src; ++s)
            for (std::size_t t = 0; t < tgt; ++t) {
                ModuleCochain basis;
                basis.degree = n;
                QMatrix block(tgt, src);
                block.at(t, s) = 1;
                basis.blocks[tuple] = std::move(block);
                auto col = module_cochain_flatten(c, u, h, module_differential(c, u, h, basis));
                std::size_t j = off + s * tgt + t;
                for (std::size_t i = 0; i < cod; ++i) d.at(i, j) = col[i];
            }
        off += src * tgt;
    }
    return d;
}

// ---- tensor and hom modules -------------------------------------------------

namespace {

struct QuotientData {
    std::vector<std::vector<Rational>> echelon_rows;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> free_cols;

    std::vector<Rational> project(std::vector<Rational> v) const {
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            Rational f = v[pivots[r]];
            if (f == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * echelon_rows[r][j];
        }
        std::vector<Rational> out(free_cols.size());
        for (std::size_t k = 0; k < free_cols.size(); ++k) out[k] = v[free_cols[k]];
        return out;
    }
};

QuotientData make_quotient(std::vector<std::vector<Rational>> relations, std::size_t ambient) {
    QuotientData q;
    if (!relations.empty()) {
        // echelonize relation rows
        std::size_t rows = relations.size(), r = 0;
        for (std::size_t cidx = 0; cidx < ambient && r < rows; ++cidx) {
            std::size_t p = r;
            while (p < rows && relations[p][cidx] == 0) ++p;
            if (p == rows) continue;
            std::swap(relations[p], relations[r]);
            Rational inv = Rational(1) / relations[r][cidx];
            for (std::size_t j = 0; j < ambient; ++j) relations[r][j] *= inv;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r || relations[i][cidx] == 0) continue;
                Rational f = relations[i][cidx];
                for (std::size_t j = 0; j < ambient; ++j) relations[i][j] -= f * relations[r][j];
            }
            q.pivots.push_back(cidx);
            q.echelon_rows.push_back(relations[r]);
            ++r;
        }
    }
    std::vector<bool> is_pivot(ambient, false);
    for (auto p : q.pivots) is_pivot[p] = true;
    for (std::size_t j = 0; j < ambient; ++j)
        if (!is_pivot[j]) q.free_cols.push_back(j);
    return q;
}

}  // namespace

TensorModule tensor_module(const FinCategory& c, const Bimodule& m, const Module& g) {
    std::size_t n = c.n_objects();
    TensorModule out;
    out.mod.init(n);
    out.projection.resize(n);
    out.slot_offset.assign(n, std::vector<std::size_t>(n + 1, 0));
    std::vector<QuotientData> quotients(n);
    for (std::size_t y = 0; y < n; ++y) {
        auto& off = out.slot_offset[y];
        for (std::size_t x = 0; x < n; ++x) off[x + 1] = off[x] + m.dim(x, y) * g.dim(x);
        std::size_t ambient = off[n];
        std::vector<std::vector<Rational>> rels;
        for (std::size_t xp = 0; xp < n; ++xp)
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t fj = 0; fj < c.dim(xp, x); ++fj)
                    for (std::size_t mi = 0; mi < m.dim(x, y); ++mi)
                        for (std::size_t ui = 0; ui < g.dim(xp); ++ui) {
                            std::vector<Rational> rel(ambient);
                            auto fm = m.act_source(xp, x, y, unit_vec(c.dim(xp, x), fj),
                                                   unit_vec(m.dim(x, y), mi));
                            for (std::size_t l = 0; l < fm.size(); ++l)
                                if (fm[l] != 0)
                                    rel[off[xp] + l + m.dim(xp, y) * ui] += fm[l];
                            auto fu = g.act(xp, x, unit_vec(c.dim(xp, x), fj),
                                            unit_vec(g.dim(xp), ui));
                            for (std::size_t l = 0; l < fu.size(); ++l)
                                if (fu[l] != 0)
                                    rel[off[x] + mi + m.dim(x, y) * l] -= fu[l];
                            bool nz = false;
                            for (const auto& e : rel)
                                if (e != 0) nz = true;
                            if (nz) rels.push_back(std::move(rel));
                        }
        quotients[y] = make_quotient(std::move(rels), ambient);
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < quotients[y].free_cols.size(); ++k)
            labels.push_back("t" + std::to_string(k));
        out.mod.set_carrier(y, std::move(labels));
        QMatrix proj(quotients[y].free_cols.size(), ambient);
        for (std::size_t j = 0; j < ambient; ++j) {
            std::vector<Rational> e(ambient);
            e[j] = 1;
            auto pv = quotients[y].project(std::move(e));
            for (std::size_t i = 0; i < pv.size(); ++i) proj.at(i, j) = pv[i];
        }
        out.projection[y] = std::move(proj);
    }
    // induced action: f . [m (x) u] = [(m . f) (x) u] on representatives
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t yp = 0; yp < n; ++yp) {
            std::size_t dh = c.dim(y, yp);
            std::size_t dq = out.mod.dim(y), dqp = out.mod.dim(yp);
            QMatrix act(dqp, dh * dq);
            for (std::size_t fj = 0; fj < dh; ++fj)
                for (std::size_t k = 0; k < dq; ++k) {
                    std::size_t rep = quotients[y].free_cols[k];  // section of the projection
                    // decode the ambient coordinate: slot x, pair (mi, ui)
                    std::size_t x = 0;
                    while (out.slot_offset[y][x + 1] <= rep) ++x;
                    std::size_t local = rep - out.slot_offset[y][x];
                    std::size_t mi = local % m.dim(x, y);
                    std::size_t ui = local / m.dim(x, y);
                    auto mf = m.act_target(x, y, yp, unit_vec(m.dim(x, y), mi),
                                           unit_vec(dh, fj));
                    std::vector<Rational> amb(out.slot_offset[yp][n]);
                    for (std::size_t l = 0; l < mf.size(); ++l)
                        if (mf[l] != 0) amb[out.slot_offset[yp][x] + l + m.dim(x, yp) * ui] = mf[l];
                    auto img = quotients[yp].project(std::move(amb));
                    for (std::size_t i = 0; i < dqp; ++i) act.at(i, fj + dh * k) = img[i];
                }
            out.mod.set_action(y, yp, std::move(act));
        }
    out.mod.finish();
    return out;
}

HomModule hom_module(const FinCategory& c, const Bimodule& m, const Module& g) {
    std::size_t n = c.n_objects();
    HomModule out;
    out.mod.init(n);
    out.basis_embedding.resize(n);
    out.slot_offset.assign(n, std::vector<std::size_t>(n + 1, 0));
    for (std::size_t x = 0; x < n; ++x) {
        auto& off = out.slot_offset[x];
        for (std::size_t y = 0; y < n; ++y) off[y + 1] = off[y] + m.dim(x, y) * g.dim(y);
        std::size_t ambient = off[n];
        // intertwining constraints: phi_{y'}(m . f) = f . phi_y(m)
        std::vector<std::vector<Rational>> rows;
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t yp = 0; yp < n; ++yp)
                for (std::size_t fj = 0; fj < c.dim(y, yp); ++fj)
                    for (std::size_t mi = 0; mi < m.dim(x, y); ++mi) {
                        auto mf = m.act_target(x, y, yp, unit_vec(m.dim(x, y), mi),
                                               unit_vec(c.dim(y, yp), fj));
                        for (std::size_t gp = 0; gp < g.dim(yp); ++gp) {
                            std::vector<Rational> row(ambient);
                            for (std::size_t l = 0; l < mf.size(); ++l)
                                if (mf[l] != 0) row[off[yp] + gp + g.dim(yp) * l] += mf[l];
                            for (std::size_t gi = 0; gi < g.dim(y); ++gi) {
                                auto fg = g.act(y, yp, unit_vec(c.dim(y, yp), fj),
                                                unit_vec(g.dim(y), gi));
                                if (fg[gp] != 0) row[off[y] + gi + g.dim(y) * mi] -= fg[gp];
                            }
                            bool nz = false;
                            for (const auto& e : row)
                                if (e != 0) nz = true;
                            if (nz) rows.push_back(std::move(row));
                        }
                    }
        QMatrix constraint(rows.size(), ambient);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < ambient; ++j) constraint.at(i, j) = rows[i][j];
        auto kernel = ambient == 0 ? std::vector<std::vector<Rational>>{}
                                   : constraint.kernel_basis();
        QMatrix emb(ambient, kernel.size());
        for (std::size_t k = 0; k < kernel.size(); ++k)
            for (std::size_t i = 0; i < ambient; ++i) emb.at(i, k) = kernel[k][i];
        out.basis_embedding[x] = std::move(emb);
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < kernel.size(); ++k) labels.push_back("h" + std::to_string(k));
        out.mod.set_carrier(x, std::move(labels));
    }
    // action of f in hom(x, xh): phi |-> phi o act_source(f, -)
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t xh = 0; xh < n; ++xh) {
            std::size_t dh = c.dim(x, xh);
            std::size_t dx = out.mod.dim(x), dxh = out.mod.dim(xh);
            QMatrix act(dxh, dh * dx);
            for (std::size_t fj = 0; fj < dh; ++fj)
                for (std::size_t k = 0; k < dx; ++k) {
                    std::vector<Rational> psi(out.slot_offset[xh][n]);
                    for (std::size_t y = 0; y < n; ++y)
                        for (std::size_t mh = 0; mh < m.dim(xh, y); ++mh) {
                            auto fm = m.act_source(x, xh, y, unit_vec(dh, fj),
                                                   unit_vec(m.dim(xh, y), mh));
                            for (std::size_t gi = 0; gi < g.dim(y); ++gi) {
                                Rational val = 0;
                                for (std::size_t l = 0; l < fm.size(); ++l)
                                    if (fm[l] != 0)
                                        val += fm[l] *
                                               out.basis_embedding[x].at(
                                                   out.slot_offset[x][y] + gi + g.dim(y) * l, k);
                                if (val != 0)
                                    psi[out.slot_offset[xh][y] + gi + g.dim(y) * mh] = val;
                            }
                        }
                    auto coords = out.basis_embedding[xh].solve(psi);
                    if (!coords)
                        throw validation_error("hom module: action leaves the module (internal)");
                    for (std::size_t i = 0; i < dxh; ++i) act.at(i, fj + dh * k) = (*coords)[i];
                }
            out.mod.set_action(x, xh, std::move(act));
        }
    out.mod.finish();
    return out;
}

CharacteristicClass characteristic_class(const FinCategory& c, const Bimodule& m, const Module& g,
                                         const Cochain& eta, bool dual) {
    if (!is_cocycle(c, m, eta))
        throw validation_error("characteristic_class: eta is not a cocycle");
    int n = eta.degree;
    CharacteristicClass out;
    Module u, h;
    TensorModule tm;
    HomModule hm;
    if (!dual) {
        tm = tensor_module(c, m, g);
        u = g;
        h = tm.mod;
    } else {
        hm = hom_module(c, m, g);
        u = hm.mod;
        h = g;
    }
    ModuleCochain rep;
    rep.degree = n;
    for (const auto& tuple : all_tuples(c.n_objects(), n + 1)) {
        std::size_t x0 = tuple.front(), xn = tuple.back();
        std::size_t tgt = h.dim(xn);
        auto dims = hom_dims(c, tuple);
        std::size_t du = u.dim(x0);
        std::size_t src = du * prod(dims);
        if (tgt == 0 || src == 0) continue;
        QMatrix block(tgt, src);
        bool nonzero = false;
        std::vector<std::size_t> idx(dims.size(), 0);
        bool more = true;
        while (more) {
            auto ev = cochain_eval(c, m, eta, tuple, idx);
            if (!all_zero(ev)) {
                for (std::size_t uu = 0; uu < du; ++uu) {
                    std::vector<Rational> val(tgt);
                    if (!dual) {
                        std::vector<Rational> amb(tm.slot_offset[xn].back());
                        for (std::size_t l = 0; l < ev.size(); ++l)
                            if (ev[l] != 0)
                                amb[tm.slot_offset[xn][x0] + l + m.dim(x0, xn) * uu] = ev[l];
                        val = tm.projection[xn].apply(amb);
                    } else {
                        // apply the x_n-component of the hom-module basis element uu
                        for (std::size_t gp = 0; gp < g.dim(xn); ++gp) {
                            Rational v = 0;
                            for (std::size_t l = 0; l < ev.size(); ++l)
                                if (ev[l] != 0)
                                    v += ev[l] * hm.basis_embedding[x0].at(
                                                     hm.slot_offset[x0][xn] + gp +
                                                         g.dim(xn) * l,
                                                     uu);
                            val[gp] = v;
                        }
                    }
                    std::size_t col = uu + du * flat_index(idx, dims);
                    for (std::size_t t = 0; t < tgt; ++t)
                        if (val[t] != 0) {
                            block.at(t, col) = val[t];
                            nonzero = true;
                        }
                }
            }
            more = next_index(idx, dims);
            if (dims.empty()) break;
        }
        if (nonzero) rep.blocks[tuple] = std::move(block);
    }
    out.representative = rep;
    out.cocycle_certified = module_differential(c, u, h, rep).is_zero();
    if (n == 0) {
        out.vanishes = rep.is_zero();
        if (out.vanishes) out.witness = ModuleCochain{};
        return out;
    }
    QMatrix d = module_differential_matrix(c, u, h, n - 1);
    auto sol = d.solve(module_cochain_flatten(c, u, h, rep));
    out.vanishes = sol.has_value();
    if (sol) out.witness = module_cochain_unflatten(c, u, h, n - 1, *sol);
    return out;
}

std::optional<LiftWitness> module_lift_witness(const FinCategory& c, const Bimodule& m,
                                               const Module& u, const Cochain& eta, int shift) {
    if (eta.degree < 3)
        throw input_error("module_lift_witness: deformation degree must be >= 3");
    auto cls = characteristic_class(c, m, u, eta, false);
    if (!cls.vanishes) return std::nullopt;
    LiftWitness w;
    w.lambda = *cls.witness;
    w.shift = shift;
    return w;
}

}  // namespace obstr
