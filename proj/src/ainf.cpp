#include "obstr/ainf.hpp"

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
    if (len == 0) return {{}};
    std::vector<std::size_t> cur(len, 0);
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

std::vector<std::size_t> ainf_hom_dims(const AInfCategory& a,
                                       const std::vector<std::size_t>& tuple) {
    std::vector<std::size_t> d;
    for (std::size_t i = 0; i + 1 < tuple.size(); ++i) d.push_back(a.dim(tuple[i], tuple[i + 1]));
    return d;
}

// compositions of n into ordered parts drawn from the available arities
void compositions_from(int n, const std::vector<int>& parts, std::vector<int>& cur,
                       std::vector<std::vector<int>>& out) {
    if (n == 0) {
        if (!cur.empty()) out.push_back(cur);
        return;
    }
    for (int p : parts) {
        if (p > n) continue;
        cur.push_back(p);
        compositions_from(n - p, parts, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Rational> AInfCategory::op(int k, const std::vector<std::size_t>& tuple,
                                       const std::vector<std::size_t>& idx) const {
    std::vector<Rational> out(dim(tuple.front(), tuple.back()));
    auto kit = ops.find(k);
    if (kit == ops.end()) return out;
    auto it = kit->second.find(tuple);
    if (it == kit->second.end()) return out;
    std::size_t col = flat_index(idx, ainf_hom_dims(*this, tuple));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = it->second.at(i, col);
    return out;
}

std::vector<Rational> AInfFunctor::component(const AInfCategory& src, const AInfCategory& tgt,
                                             int i, const std::vector<std::size_t>& tuple,
                                             const std::vector<std::size_t>& idx) const {
    std::vector<Rational> out(
        tgt.dim(object_map[tuple.front()], object_map[tuple.back()]));
    auto kit = components.find(i);
    if (kit == components.end()) return out;
    auto it = kit->second.find(tuple);
    if (it == kit->second.end()) return out;
    std::size_t col = flat_index(idx, ainf_hom_dims(src, tuple));
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = it->second.at(j, col);
    return out;
}

AInfCategory ainf_from_linear(const FinCategory& c) {
    AInfCategory a;
    a.objects = c.objects;
    std::size_t n = c.n_objects();
    a.homs.resize(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (const auto& l : c.hom_basis(x, y)) a.homs[a.pair_ix(x, y)].push_back({l, 0});
    for (const auto& tuple : all_tuples(n, 3)) {
        std::size_t d01 = c.dim(tuple[0], tuple[1]), d12 = c.dim(tuple[1], tuple[2]);
        std::size_t tgt = c.dim(tuple[0], tuple[2]);
        if (d01 * d12 * tgt == 0) continue;
        QMatrix block(tgt, d01 * d12);
        bool nonzero = false;
        for (std::size_t j = 0; j < d01; ++j)
            for (std::size_t k = 0; k < d12; ++k) {
                auto v = c.compose_basis(tuple[0], tuple[1], tuple[2], j, k);
                for (std::size_t i = 0; i < tgt; ++i)
                    if (v[i] != 0) {
                        block.at(i, j + d01 * k) = v[i];
                        nonzero = true;
                    }
            }
        if (nonzero) a.ops[2][tuple] = std::move(block);
    }
    return a;
}

Deformation deform(const FinCategory& c, const Bimodule& m, const Cochain& eta, int mdeg,
                   bool require_cocycle) {
    if (mdeg < 3) throw input_error("deform: deformation degree must be >= 3");
    if (eta.degree != mdeg) throw input_error("deform: cocycle degree does not match mdeg");
    if (require_cocycle && !is_cocycle(c, m, eta))
        throw validation_error("deform: eta is not a cocycle");
    std::size_t n = c.n_objects();
    Deformation d;
    d.mdeg = mdeg;
    AInfCategory& a = d.category;
    a.objects = c.objects;
    a.homs.resize(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            auto& h = a.homs[a.pair_ix(x, y)];
            for (const auto& l : c.hom_basis(x, y)) h.push_back({l, 0});
            for (const auto& l : m.basis(x, y)) h.push_back({"M:" + l, 2 - mdeg});
        }
    // m_2: composition on the undeformed part plus the two module actions
    for (const auto& tuple : all_tuples(n, 3)) {
        std::size_t x = tuple[0], y = tuple[1], z = tuple[2];
        std::size_t c01 = c.dim(x, y), m01 = m.dim(x, y);
        std::size_t c12 = c.dim(y, z), m12 = m.dim(y, z);
        std::size_t ctg = c.dim(x, z), mtg = m.dim(x, z);
        std::size_t d01 = c01 + m01, d12 = c12 + m12, tgt = ctg + mtg;
        if (d01 * d12 * tgt == 0) continue;
        QMatrix block(tgt, d01 * d12);
        bool nonzero = false;
        for (std::size_t j = 0; j < d01; ++j)
            for (std::size_t k = 0; k < d12; ++k) {
                std::vector<Rational> out(tgt);
                if (j < c01 && k < c12) {
                    auto v = c.compose_basis(x, y, z, j, k);
                    for (std::size_t i = 0; i < ctg; ++i) out[i] = v[i];
                } else if (j < c01 && k >= c12) {
                    auto v = m.act_source(x, y, z, unit_vec(c01, j), unit_vec(m12, k - c12));
                    for (std::size_t i = 0; i < mtg; ++i) out[ctg + i] = v[i];
                } else if (j >= c01 && k < c12) {
                    auto v = m.act_target(x, y, z, unit_vec(m01, j - c01), unit_vec(c12, k));
                    for (std::size_t i = 0; i < mtg; ++i) out[ctg + i] = v[i];
                }  // M (x) M composes to zero
                for (std::size_t i = 0; i < tgt; ++i)
                    if (out[i] != 0) {
                        block.at(i, j + d01 * k) = out[i];
                        nonzero = true;
                    }
            }
        if (nonzero) a.ops[2][tuple] = std::move(block);
    }
    // m_mdeg = eta on undeformed inputs
    for (const auto& [tuple, eblock] : eta.blocks) {
        std::vector<std::size_t> cdims, ddims;
        for (std::size_t i = 0; i + 1 < tuple.size(); ++i) {
            cdims.push_back(c.dim(tuple[i], tuple[i + 1]));
            ddims.push_back(a.dim(tuple[i], tuple[i + 1]));
        }
        std::size_t ctg = c.dim(tuple.front(), tuple.back());
        std::size_t tgt = a.dim(tuple.front(), tuple.back());
        QMatrix block(tgt, prod(ddims));
        bool nonzero = false;
        std::vector<std::size_t> idx(cdims.size(), 0);
        if (prod(cdims) > 0) do {
                std::size_t src_col = flat_index(idx, cdims);
                std::size_t dst_col = flat_index(idx, ddims);  // cat-part indices coincide
                for (std::size_t i = 0; i < m.dim(tuple.front(), tuple.back()); ++i)
                    if (eblock.at(i, src_col) != 0) {
                        block.at(ctg + i, dst_col) = eblock.at(i, src_col);
                        nonzero = true;
                    }
            } while (next_index(idx, cdims));
        if (nonzero) a.ops[mdeg][tuple] = std::move(block);
    }
    // canonical strict projection onto the undeformed part
    d.can.object_map.resize(n);
    for (std::size_t i = 0; i < n; ++i) d.can.object_map[i] = i;
    for (const auto& tuple : all_tuples(n, 2)) {
        std::size_t x = tuple[0], y = tuple[1];
        std::size_t ctg = c.dim(x, y), dd = a.dim(x, y);
        if (ctg == 0 || dd == 0) continue;
        QMatrix block(ctg, dd);
        for (std::size_t i = 0; i < ctg; ++i) block.at(i, i) = 1;
        d.can.components[1][tuple] = std::move(block);
    }
    return d;
}

namespace {

std::vector<Rational> op_eval_with_combo(const AInfCategory& a, int k,
                                         const std::vector<std::size_t>& tuple,
                                         std::vector<std::size_t> idx, std::size_t slot,
                                         const std::vector<Rational>& combo) {
    std::vector<Rational> out(a.dim(tuple.front(), tuple.back()));
    for (std::size_t l = 0; l < combo.size(); ++l) {
        if (combo[l] == 0) continue;
        idx[slot] = l;
        add_scaled(out, a.op(k, tuple, idx), combo[l]);
    }
    return out;
}

std::vector<int> op_arities(const AInfCategory& a) {
    std::vector<int> ks;
    for (const auto& [k, blocks] : a.ops) ks.push_back(k);
    return ks;
}

std::vector<int> component_arities(const AInfFunctor& f) {
    std::vector<int> ks;
    for (const auto& [k, blocks] : f.components) ks.push_back(k);
    return ks;
}

// apply an operation of the target category multilinearly to combo inputs
std::vector<Rational> op_multi_apply(const AInfCategory& tgt, int q,
                                     const std::vector<std::size_t>& tuple,
                                     const std::vector<std::vector<Rational>>& combos) {
    std::vector<Rational> out(tgt.dim(tuple.front(), tuple.back()));
    std::vector<std::vector<std::size_t>> support(combos.size());
    for (std::size_t u = 0; u < combos.size(); ++u) {
        for (std::size_t l = 0; l < combos[u].size(); ++l)
            if (combos[u][l] != 0) support[u].push_back(l);
        if (support[u].empty()) return out;
    }
    std::vector<std::size_t> pick(combos.size(), 0);
    while (true) {
        Rational coeff = 1;
        std::vector<std::size_t> idx(combos.size());
        for (std::size_t u = 0; u < combos.size(); ++u) {
            idx[u] = support[u][pick[u]];
            coeff *= combos[u][idx[u]];
        }
        add_scaled(out, tgt.op(q, tuple, idx), coeff);
        std::size_t i = 0;
        while (i < pick.size()) {
            if (++pick[i] < support[i].size()) break;
            pick[i] = 0;
            ++i;
        }
        if (i == pick.size()) break;
    }
    return out;
}

}  // namespace

std::vector<AInfViolation> check_ainf_relations(const AInfCategory& a, int up_to) {
    std::vector<AInfViolation> violations;
    auto arities = op_arities(a);
    std::size_t n_obj = a.n_objects();
    for (int n = 1; n <= up_to; ++n) {
        // collect the (r, s, t) terms with both operations present
        std::vector<std::array<int, 2>> terms;  // (r, s); t = n - r - s
        for (int s : arities)
            for (int r = 0; r + s <= n; ++r) {
                int t = n - r - s;
                int outer = r + 1 + t;
                if (std::find(arities.begin(), arities.end(), outer) != arities.end())
                    terms.push_back({r, s});
            }
        if (terms.empty()) continue;
        for (const auto& tuple : all_tuples(n_obj, n + 1)) {
            auto dims = ainf_hom_dims(a, tuple);
            if (prod(dims) == 0 || a.dim(tuple.front(), tuple.back()) == 0) continue;
            bool violated = false;
            std::vector<std::size_t> idx(dims.size(), 0);
            do {
                std::vector<Rational> acc(a.dim(tuple.front(), tuple.back()));
                for (const auto& [r, s] : terms) {
                    int t = n - r - s;
                    std::vector<std::size_t> in_tuple(tuple.begin() + r,
                                                      tuple.begin() + r + s + 1);
                    std::vector<std::size_t> in_idx(idx.begin() + r, idx.begin() + r + s);
                    auto w = a.op(s, in_tuple, in_idx);
                    if (all_zero(w)) continue;
                    std::vector<std::size_t> out_tuple;
                    out_tuple.insert(out_tuple.end(), tuple.begin(), tuple.begin() + r + 1);
                    out_tuple.insert(out_tuple.end(), tuple.begin() + r + s, tuple.end());
                    std::vector<std::size_t> out_idx;
                    out_idx.insert(out_idx.end(), idx.begin(), idx.begin() + r);
                    out_idx.push_back(0);
                    out_idx.insert(out_idx.end(), idx.begin() + r + s, idx.end());
                    int prefix_deg = 0;
                    for (int j = 0; j < r; ++j)
                        prefix_deg += a.deg(tuple[j], tuple[j + 1], idx[j]);
                    long long sgn = r + static_cast<long long>(s) * t +
                                    static_cast<long long>(s) * prefix_deg;
                    add_scaled(acc,
                               op_eval_with_combo(a, r + 1 + t, out_tuple, out_idx, r, w),
                               parity_sign(sgn));
                }
                if (!all_zero(acc)) {
                    violations.push_back({n, tuple});
                    violated = true;
                    break;
                }
            } while (!violated && next_index(idx, dims));
        }
    }
    return violations;
}

AInfCategory tensor_with_klinear(const AInfCategory& a, const FinCategory& icat) {
    std::size_t na = a.n_objects(), ni = icat.n_objects();
    AInfCategory t;
    for (const auto& x : a.objects)
        for (const auto& p : icat.objects) t.objects.push_back("(" + x + "," + p + ")");
    t.homs.resize(na * ni * na * ni);
    auto ob = [&](std::size_t x, std::size_t p) { return x * ni + p; };
    for (std::size_t x = 0; x < na; ++x)
        for (std::size_t p = 0; p < ni; ++p)
            for (std::size_t y = 0; y < na; ++y)
                for (std::size_t q = 0; q < ni; ++q) {
                    auto& h = t.homs[t.pair_ix(ob(x, p), ob(y, q))];
                    for (std::size_t u = 0; u < icat.dim(p, q); ++u)
                        for (std::size_t j = 0; j < a.dim(x, y); ++j)
                            h.push_back({a.homs[a.pair_ix(x, y)][j].label + "*" +
                                             icat.hom_basis(p, q)[u],
                                         a.deg(x, y, j)});
                }
    for (const auto& [k, blocks] : a.ops) {
        for (const auto& tuple_i : all_tuples(ni, static_cast<std::size_t>(k) + 1)) {
            for (const auto& [tuple_a, ablock] : blocks) {
                std::vector<std::size_t> tuple(k + 1);
                for (int j = 0; j <= k; ++j) tuple[j] = ob(tuple_a[j], tuple_i[j]);
                auto dims = ainf_hom_dims(t, tuple);
                std::size_t tgt = t.dim(tuple.front(), tuple.back());
                if (prod(dims) == 0 || tgt == 0) continue;
                auto adims = ainf_hom_dims(a, tuple_a);
                std::size_t atgt = a.dim(tuple_a.front(), tuple_a.back());
                std::size_t itgt = icat.dim(tuple_i.front(), tuple_i.back());
                if (itgt == 0) continue;
                QMatrix block(tgt, prod(dims));
                bool nonzero = false;
                std::vector<std::size_t> idx(dims.size(), 0);
                do {
                    std::vector<std::size_t> xi(k), ui(k);
                    for (int j = 0; j < k; ++j) {
                        std::size_t da = adims[j];
                        xi[j] = idx[j] % da;
                        ui[j] = idx[j] / da;
                    }
                    std::size_t col_a = flat_index(xi, adims);
                    std::vector<Rational> av(atgt);
                    for (std::size_t i = 0; i < atgt; ++i) av[i] = ablock.at(i, col_a);
                    if (!all_zero(av)) {
                        std::vector<Rational> w = icat.identity(tuple_i[0]);
                        if (k >= 1) {
                            w = unit_vec(icat.dim(tuple_i[0], tuple_i[1]), ui[0]);
                            for (int j = 1; j < k; ++j)
                                w = icat.compose(tuple_i[0], tuple_i[j], tuple_i[j + 1], w,
                                                 unit_vec(icat.dim(tuple_i[j], tuple_i[j + 1]),
                                                          ui[j]));
                        }
                        std::size_t col = flat_index(idx, dims);
                        for (std::size_t r1 = 0; r1 < atgt; ++r1)
                            for (std::size_t r2 = 0; r2 < itgt; ++r2) {
                                Rational v = av[r1] * w[r2];
                                if (v != 0) {
                                    block.at(r1 + atgt * r2, col) = v;
                                    nonzero = true;
                                }
                            }
                    }
                } while (next_index(idx, dims));
                if (nonzero) t.ops[k][tuple] = std::move(block);
            }
        }
    }
    return t;
}

namespace {

// the right-hand side of the functor equation at a fixed tuple and multi-index:
// sum over compositions (i_1..i_q) of m_q(f_{i_1} (x) ... (x) f_{i_q})
std::vector<Rational> functor_rhs(const AInfCategory& src, const AInfCategory& tgt,
                                  const AInfFunctor& f, const std::vector<std::size_t>& tuple,
                                  const std::vector<std::size_t>& idx, int n,
                                  bool include_singleton) {
    std::vector<Rational> acc(
        tgt.dim(f.object_map[tuple.front()], f.object_map[tuple.back()]));
    auto comp_ar = component_arities(f);
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions_from(n, comp_ar, cur, comps);
    auto tgt_ar = op_arities(tgt);
    for (const auto& parts : comps) {
        int q = static_cast<int>(parts.size());
        if (q == 1 && !include_singleton) continue;
        if (q > 1 && std::find(tgt_ar.begin(), tgt_ar.end(), q) == tgt_ar.end()) continue;
        // boundaries of the segments
        std::vector<int> cut(q + 1, 0);
        for (int u = 0; u < q; ++u) cut[u + 1] = cut[u] + parts[u];
        // Koszul sign: move f_{i_u} of degree 1-i_u past the earlier inputs
        long long koszul = 0;
        {
            int deg_before = 0;
            for (int u = 0; u < q; ++u) {
                if (u > 0) koszul += static_cast<long long>(1 - parts[u]) * deg_before;
                for (int j = cut[u]; j < cut[u + 1]; ++j)
                    deg_before += src.deg(tuple[j], tuple[j + 1], idx[j]);
            }
        }
        long long sigma = 0;
        for (int u = 1; u <= q - 1; ++u) sigma += static_cast<long long>(q - u) * (parts[u - 1] - 1);
        std::vector<std::vector<Rational>> combos(q);
        bool dead = false;
        for (int u = 0; u < q && !dead; ++u) {
            std::vector<std::size_t> seg_tuple(tuple.begin() + cut[u],
                                               tuple.begin() + cut[u + 1] + 1);
            std::vector<std::size_t> seg_idx(idx.begin() + cut[u], idx.begin() + cut[u + 1]);
            combos[u] = f.component(src, tgt, parts[u], seg_tuple, seg_idx);
            if (all_zero(combos[u])) dead = true;
        }
        if (dead) continue;
        std::vector<Rational> val;
        if (q == 1) {
            val = combos[0];  // m_1 = 0 on minimal categories; singleton only used
                              // when composing along identity-like outer maps
        } else {
            std::vector<std::size_t> img_tuple(q + 1);
            for (int u = 0; u <= q; ++u) img_tuple[u] = f.object_map[tuple[cut[u]]];
            val = op_multi_apply(tgt, q, img_tuple, combos);
        }
        add_scaled(acc, val, parity_sign(sigma + koszul));
    }
    return acc;
}

std::vector<Rational> functor_lhs(const AInfCategory& src, const AInfCategory& tgt,
                                  const AInfFunctor& f, const std::vector<std::size_t>& tuple,
                                  const std::vector<std::size_t>& idx, int n) {
    std::vector<Rational> acc(
        tgt.dim(f.object_map[tuple.front()], f.object_map[tuple.back()]));
    auto src_ar = op_arities(src);
    auto comp_ar = component_arities(f);
    for (int s : src_ar)
        for (int r = 0; r + s <= n; ++r) {
            int t = n - r - s;
            int outer = r + 1 + t;
            if (std::find(comp_ar.begin(), comp_ar.end(), outer) == comp_ar.end()) continue;
            std::vector<std::size_t> in_tuple(tuple.begin() + r, tuple.begin() + r + s + 1);
            std::vector<std::size_t> in_idx(idx.begin() + r, idx.begin() + r + s);
            auto w = src.op(s, in_tuple, in_idx);
            if (all_zero(w)) continue;
            std::vector<std::size_t> out_tuple;
            out_tuple.insert(out_tuple.end(), tuple.begin(), tuple.begin() + r + 1);
            out_tuple.insert(out_tuple.end(), tuple.begin() + r + s, tuple.end());
            std::vector<std::size_t> out_idx;
            out_idx.insert(out_idx.end(), idx.begin(), idx.begin() + r);
            out_idx.push_back(0);
            out_idx.insert(out_idx.end(), idx.begin() + r + s, idx.end());
            int prefix_deg = 0;
            for (int j = 0; j < r; ++j) prefix_deg += src.deg(tuple[j], tuple[j + 1], idx[j]);
            long long sgn = r + static_cast<long long>(s) * t +
                            static_cast<long long>(s) * prefix_deg;
            // f_outer with the composed slot
            std::vector<Rational> val(acc.size());
            for (std::size_t l = 0; l < w.size(); ++l) {
                if (w[l] == 0) continue;
                out_idx[r] = l;
                add_scaled(val, f.component(src, tgt, outer, out_tuple, out_idx), w[l]);
            }
            add_scaled(acc, val, parity_sign(sgn));
        }
    return acc;
}

}  // namespace

std::vector<AInfViolation> check_functor_relations(const AInfCategory& src,
                                                   const AInfCategory& tgt, const AInfFunctor& f,
                                                   int up_to) {
    std::vector<AInfViolation> violations;
    for (int n = 1; n <= up_to; ++n) {
        for (const auto& tuple : all_tuples(src.n_objects(), n + 1)) {
            auto dims = ainf_hom_dims(src, tuple);
            if (prod(dims) == 0) continue;
            if (tgt.dim(f.object_map[tuple.front()], f.object_map[tuple.back()]) == 0) continue;
            bool violated = false;
            std::vector<std::size_t> idx(dims.size(), 0);
            do {
                auto lhs = functor_lhs(src, tgt, f, tuple, idx, n);
                auto rhs = functor_rhs(src, tgt, f, tuple, idx, n, false);
                for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] -= rhs[i];
                if (!all_zero(lhs)) {
                    violations.push_back({n, tuple});
                    violated = true;
                    break;
                }
            } while (!violated && next_index(idx, dims));
        }
    }
    return violations;
}

AInfFunctor strict_inclusion(const FinCategory& c, const Deformation& d) {
    AInfFunctor f;
    std::size_t n = c.n_objects();
    f.object_map.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.object_map[i] = i;
    for (const auto& tuple : all_tuples(n, 2)) {
        std::size_t src_dim = c.dim(tuple[0], tuple[1]);
        std::size_t tgt_dim = d.category.dim(tuple[0], tuple[1]);
        if (src_dim == 0 || tgt_dim == 0) continue;
        QMatrix block(tgt_dim, src_dim);
        for (std::size_t i = 0; i < src_dim; ++i) block.at(i, i) = 1;
        f.components[1][tuple] = std::move(block);
    }
    return f;
}

AInfFunctor strict_from_linear(const FinCategory& src, const FinCategory& tgt,
                               const LinearFunctor& f, const AInfCategory& a_src,
                               const AInfCategory& a_tgt) {
    AInfFunctor out;
    std::size_t n = src.n_objects();
    out.object_map = f.object_map;
    for (const auto& tuple : all_tuples(n, 2)) {
        std::size_t a = tuple[0], b = tuple[1];
        std::size_t fa = f.object_map[a], fb = f.object_map[b];
        std::size_t sc = src.dim(a, b), sd = a_src.dim(a, b);
        std::size_t tc = tgt.dim(fa, fb), td = a_tgt.dim(fa, fb);
        if (sd == 0 || td == 0) continue;
        QMatrix block(td, sd);
        const QMatrix& fm = f.map(a, b, n);
        for (std::size_t j = 0; j < sc; ++j)
            for (std::size_t i = 0; i < tc; ++i) block.at(i, j) = fm.at(i, j);
        // deformed part: the restricted carrier M(Fa, Fb) maps identically
        for (std::size_t j = sc; j < sd; ++j)
            if (tc + (j - sc) < td) block.at(tc + (j - sc), j) = 1;
        out.components[1][tuple] = std::move(block);
    }
    return out;
}

AInfFunctor nullhomotopy_functor(const FinCategory& c, const Bimodule& m, const Cochain& theta,
                                 const Cochain& eta, const Cochain& mu, int mdeg) {
    if (theta.degree != mdeg - 1)
        throw input_error("nullhomotopy_functor: theta must have degree mdeg-1");
    Cochain diff = hochschild_differential(c, m, theta) - (eta - mu);
    if (!diff.is_zero())
        throw input_error("nullhomotopy_functor: d theta != eta - mu");
    Deformation src = deform(c, m, eta, mdeg);
    Deformation tgt = deform(c, m, mu, mdeg);
    AInfFunctor f;
    std::size_t n = c.n_objects();
    f.object_map.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.object_map[i] = i;
    for (const auto& tuple : all_tuples(n, 2)) {
        std::size_t d = src.category.dim(tuple[0], tuple[1]);
        if (d == 0) continue;
        f.components[1][tuple] = QMatrix::identity(d);
    }
    // f_{m-1} = theta landing in the M-summand, zero on deformed inputs
    for (const auto& [tuple, tblock] : theta.blocks) {
        std::vector<std::size_t> cdims, ddims;
        for (std::size_t i = 0; i + 1 < tuple.size(); ++i) {
            cdims.push_back(c.dim(tuple[i], tuple[i + 1]));
            ddims.push_back(src.category.dim(tuple[i], tuple[i + 1]));
        }
        std::size_t ctg = c.dim(tuple.front(), tuple.back());
        std::size_t tgt_dim = tgt.category.dim(tuple.front(), tuple.back());
        if (tgt_dim == 0 || prod(ddims) == 0) continue;
        QMatrix block(tgt_dim, prod(ddims));
        bool nonzero = false;
        std::vector<std::size_t> idx(cdims.size(), 0);
        if (prod(cdims) > 0) do {
                std::size_t src_col = flat_index(idx, cdims);
                std::size_t dst_col = flat_index(idx, ddims);
                for (std::size_t i = 0; i < m.dim(tuple.front(), tuple.back()); ++i)
                    if (tblock.at(i, src_col) != 0) {
                        block.at(ctg + i, dst_col) = tblock.at(i, src_col);
                        nonzero = true;
                    }
            } while (next_index(idx, cdims));
        if (nonzero) f.components[mdeg - 1][tuple] = std::move(block);
    }
    return f;
}

AInfFunctor compose_ainf(const AInfCategory& a, const AInfCategory& b, const AInfCategory& cc,
                         const AInfFunctor& f, const AInfFunctor& g, int up_to_arity) {
    AInfFunctor out;
    out.object_map.resize(a.n_objects());
    for (std::size_t i = 0; i < a.n_objects(); ++i)
        out.object_map[i] = g.object_map[f.object_map[i]];
    auto f_ar = component_arities(f);
    auto g_ar = component_arities(g);
    for (int n = 1; n <= up_to_arity; ++n) {
        std::vector<std::vector<int>> comps;
        std::vector<int> cur;
        compositions_from(n, f_ar, cur, comps);
        for (const auto& tuple : all_tuples(a.n_objects(), n + 1)) {
            auto dims = ainf_hom_dims(a, tuple);
            std::size_t tgt_dim = cc.dim(out.object_map[tuple.front()],
                                         out.object_map[tuple.back()]);
            if (prod(dims) == 0 || tgt_dim == 0) continue;
            QMatrix block(tgt_dim, prod(dims));
            bool nonzero = false;
            std::vector<std::size_t> idx(dims.size(), 0);
            do {
                std::vector<Rational> acc(tgt_dim);
                for (const auto& parts : comps) {
                    int q = static_cast<int>(parts.size());
                    if (std::find(g_ar.begin(), g_ar.end(), q) == g_ar.end()) continue;
                    std::vector<int> cut(q + 1, 0);
                    for (int u = 0; u < q; ++u) cut[u + 1] = cut[u] + parts[u];
                    long long koszul = 0;
                    {
                        int deg_before = 0;
                        for (int u = 0; u < q; ++u) {
                            if (u > 0) koszul += static_cast<long long>(1 - parts[u]) * deg_before;
                            for (int j = cut[u]; j < cut[u + 1]; ++j)
                                deg_before += a.deg(tuple[j], tuple[j + 1], idx[j]);
                        }
                    }
                    long long sigma = 0;
                    for (int u = 1; u <= q - 1; ++u)
                        sigma += static_cast<long long>(q - u) * (parts[u - 1] - 1);
                    std::vector<std::vector<Rational>> combos(q);
                    bool dead = false;
                    for (int u = 0; u < q && !dead; ++u) {
                        std::vector<std::size_t> seg_tuple(tuple.begin() + cut[u],
                                                           tuple.begin() + cut[u + 1] + 1);
                        std::vector<std::size_t> seg_idx(idx.begin() + cut[u],
                                                         idx.begin() + cut[u + 1]);
                        combos[u] = f.component(a, b, parts[u], seg_tuple, seg_idx);
                        if (all_zero(combos[u])) dead = true;
                    }
                    if (dead) continue;
                    // apply g_q multilinearly to the image combos
                    std::vector<std::size_t> img_tuple(q + 1);
                    for (int u = 0; u <= q; ++u) img_tuple[u] = f.object_map[tuple[cut[u]]];
                    std::vector<Rational> val(tgt_dim);
                    std::vector<std::vector<std::size_t>> support(q);
                    bool empty = false;
                    for (int u = 0; u < q; ++u) {
                        for (std::size_t l = 0; l < combos[u].size(); ++l)
                            if (combos[u][l] != 0) support[u].push_back(l);
                        if (support[u].empty()) empty = true;
                    }
                    if (empty) continue;
                    std::vector<std::size_t> pick(q, 0);
                    while (true) {
                        Rational coeff = 1;
                        std::vector<std::size_t> bidx(q);
                        for (int u = 0; u < q; ++u) {
                            bidx[u] = support[u][pick[u]];
                            coeff *= combos[u][bidx[u]];
                        }
                        add_scaled(val, g.component(b, cc, q, img_tuple, bidx), coeff);
                        std::size_t i = 0;
                        while (i < pick.size()) {
                            if (++pick[i] < support[i].size()) break;
                            pick[i] = 0;
                            ++i;
                        }
                        if (i == pick.size()) break;
                    }
                    add_scaled(acc, val, parity_sign(sigma + koszul));
                }
                if (!all_zero(acc)) {
                    std::size_t col = flat_index(idx, dims);
                    for (std::size_t i = 0; i < tgt_dim; ++i)
                        if (acc[i] != 0) {
                            block.at(i, col) = acc[i];
                            nonzero = true;
                        }
                }
            } while (next_index(idx, dims));
            if (nonzero) out.components[n][tuple] = std::move(block);
        }
    }
    return out;
}

TildeF build_tilde_f(const FinCategory& y, const FinCategory& x, const LinearFunctor& f,
                     const Bimodule& m, const Cochain& eta, const Cochain& theta, int mdeg) {
    Bimodule fm = restrict_bimodule(y, x, f, m);
    Cochain feta = pushforward_cocycle(y, x, f, m, eta);
    Cochain dtheta = hochschild_differential(y, fm, theta);
    if (!(dtheta - feta).is_zero())
        throw input_error("build_tilde_f: theta is not a bounding cochain for f*eta");
    Cochain zero;
    zero.degree = mdeg;
    // s: Y -> Y_0 (strict split), h: Y_0 -> Y_{f*eta} (nullhomotopy of -f*eta),
    // then f applied on both summands into X_eta
    Deformation y0 = deform(y, fm, zero, mdeg);
    Deformation yfeta = deform(y, fm, feta, mdeg);
    Deformation target = deform(x, m, eta, mdeg);
    AInfCategory ylin = ainf_from_linear(y);
    AInfFunctor s = strict_inclusion(y, y0);
    AInfFunctor h = nullhomotopy_functor(y, fm, theta.scaled(-1), zero, feta, mdeg);
    AInfFunctor flift = strict_from_linear(y, x, f, yfeta.category, target.category);
    int bound = 2 * mdeg;
    AInfFunctor hs = compose_ainf(ylin, y0.category, yfeta.category, s, h, bound);
    AInfFunctor tilde = compose_ainf(ylin, yfeta.category, target.category, hs, flift, bound);
    TildeF out;
    out.functor = std::move(tilde);
    out.target = std::move(target);
    return out;
}

namespace {

Bimodule obstruction_value_bimodule(const FinCategory& src, const AInfCategory& tgt,
                                    const AInfFunctor& partial, int value_degree,
                                    std::vector<std::vector<std::size_t>>& sub_basis) {
    std::size_t n = src.n_objects();
    Bimodule vb;
    vb.init(n);
    vb.shift = value_degree;
    sub_basis.assign(n * n, {});
    auto F = [&](std::size_t a) { return partial.object_map[a]; };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::vector<std::string> labels;
            for (std::size_t i = 0; i < tgt.dim(F(a), F(b)); ++i)
                if (tgt.deg(F(a), F(b), i) == value_degree) {
                    sub_basis[a * n + b].push_back(i);
                    labels.push_back(tgt.homs[tgt.pair_ix(F(a), F(b))][i].label);
                }
            vb.set_carrier(a, b, labels);
        }
    // actions through f_1 and the target m_2
    for (std::size_t xp = 0; xp < n; ++xp)
        for (std::size_t xx = 0; xx < n; ++xx)
            for (std::size_t yy = 0; yy < n; ++yy) {
                std::size_t dh = src.dim(xp, xx);
                std::size_t dm = sub_basis[xx * n + yy].size();
                std::size_t dout = sub_basis[xp * n + yy].size();
                QMatrix t(dout, dh * dm);
                for (std::size_t fj = 0; fj < dh; ++fj) {
                    auto img = partial.component(ainf_from_linear(src), tgt, 1, {xp, xx},
                                                 {fj});
                    for (std::size_t mi = 0; mi < dm; ++mi) {
                        std::size_t big = sub_basis[xx * n + yy][mi];
                        std::vector<std::vector<Rational>> combos{
                            img, unit_vec(tgt.dim(F(xx), F(yy)), big)};
                        auto v = op_multi_apply(tgt, 2, {F(xp), F(xx), F(yy)}, combos);
                        for (std::size_t o = 0; o < dout; ++o)
                            t.at(o, fj + dh * mi) = v[sub_basis[xp * n + yy][o]];
                    }
                }
                vb.set_act_source(xp, xx, yy, std::move(t));
            }
    for (std::size_t xx = 0; xx < n; ++xx)
        for (std::size_t yy = 0; yy < n; ++yy)
            for (std::size_t yp = 0; yp < n; ++yp) {
                std::size_t dm = sub_basis[xx * n + yy].size();
                std::size_t dh = src.dim(yy, yp);
                std::size_t dout = sub_basis[xx * n + yp].size();
                QMatrix t(dout, dm * dh);
                for (std::size_t mi = 0; mi < dm; ++mi) {
                    std::size_t big = sub_basis[xx * n + yy][mi];
                    for (std::size_t fj = 0; fj < dh; ++fj) {
                        auto img = partial.component(ainf_from_linear(src), tgt, 1, {yy, yp},
                                                     {fj});
                        std::vector<std::vector<Rational>> combos{
                            unit_vec(tgt.dim(F(xx), F(yy)), big), img};
                        auto v = op_multi_apply(tgt, 2, {F(xx), F(yy), F(yp)}, combos);
                        for (std::size_t o = 0; o < dout; ++o)
                            t.at(o, mi + dm * fj) = v[sub_basis[xx * n + yp][o]];
                    }
                }
                vb.set_act_target(xx, yy, yp, std::move(t));
            }
    vb.finish();
    return vb;
}

}  // namespace

ObstructionClass obstruction_class(const FinCategory& src, const AInfCategory& tgt,
                                   const AInfFunctor& partial, int arity) {
    if (arity < 2) throw input_error("obstruction_class: arity must be >= 2");
    AInfCategory srclin = ainf_from_linear(src);
    for (const auto& [k, blocks] : partial.components)
        if (k >= arity)
            throw input_error("obstruction_class: partial functor already has components at or "
                              "above the requested arity");
    auto viol = check_functor_relations(srclin, tgt, partial, arity - 1);
    if (!viol.empty())
        throw input_error("obstruction_class: partial functor violates the equations at arity " +
                          std::to_string(viol.front().arity));

    ObstructionClass out;
    out.arity = arity;
    out.value_degree = 2 - arity;
    std::vector<std::vector<std::size_t>> sub_basis;
    out.value_bimodule = obstruction_value_bimodule(src, tgt, partial, out.value_degree,
                                                    sub_basis);
    std::size_t n = src.n_objects();
    Cochain rep;
    rep.degree = arity;
    rep.shift = out.value_degree;
    for (const auto& tuple : all_tuples(n, arity + 1)) {
        std::vector<std::size_t> dims;
        for (std::size_t i = 0; i + 1 < tuple.size(); ++i)
            dims.push_back(src.dim(tuple[i], tuple[i + 1]));
        const auto& sub = sub_basis[tuple.front() * n + tuple.back()];
        if (prod(dims) == 0 || sub.empty()) continue;
        QMatrix block(sub.size(), prod(dims));
        bool nonzero = false;
        std::vector<std::size_t> idx(dims.size(), 0);
        do {
            auto lhs = functor_lhs(srclin, tgt, partial, tuple, idx, arity);
            auto rhs = functor_rhs(srclin, tgt, partial, tuple, idx, arity, false);
            for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] -= rhs[i];
            if (!all_zero(lhs)) {
                std::size_t col = flat_index(idx, dims);
                for (std::size_t o = 0; o < sub.size(); ++o)
                    if (lhs[sub[o]] != 0) {
                        block.at(o, col) = lhs[sub[o]];
                        nonzero = true;
                    }
                // the defect is concentrated in the value degree
                for (std::size_t i = 0; i < lhs.size(); ++i)
                    if (lhs[i] != 0 &&
                        tgt.deg(partial.object_map[tuple.front()],
                                partial.object_map[tuple.back()], i) != out.value_degree)
                        throw validation_error(
                            "obstruction_class: defect not concentrated in the expected degree");
            }
        } while (next_index(idx, dims));
        if (nonzero) rep.blocks[tuple] = std::move(block);
    }
    out.representative = rep;
    out.cocycle_certified =
        hochschild_differential(src, out.value_bimodule, rep).is_zero();
    return out;
}

std::optional<ExtensionStep> extendable(const FinCategory& src, const AInfCategory& tgt,
                                        const AInfFunctor& partial, int arity) {
    ObstructionClass oc = obstruction_class(src, tgt, partial, arity);
    if (!oc.cocycle_certified)
        throw validation_error("extendable: obstruction failed its cocycle certificate");
    Cochain zero;
    zero.degree = arity;
    zero.shift = oc.value_degree;
    auto delta = cohomologous_witness(src, oc.value_bimodule, oc.representative, zero);
    if (!delta) return std::nullopt;
    // embed delta into a correction of the top component f_{arity-1}
    std::size_t n = src.n_objects();
    std::vector<std::vector<std::size_t>> sub_basis;
    obstruction_value_bimodule(src, tgt, partial, oc.value_degree, sub_basis);
    ExtensionStep step;
    step.delta = *delta;
    step.corrected = partial;
    for (const auto& [tuple, dblock] : delta->blocks) {
        std::vector<std::size_t> dims;
        for (std::size_t i = 0; i + 1 < tuple.size(); ++i)
            dims.push_back(src.dim(tuple[i], tuple[i + 1]));
        std::size_t tgt_dim = tgt.dim(partial.object_map[tuple.front()],
                                      partial.object_map[tuple.back()]);
        const auto& sub = sub_basis[tuple.front() * n + tuple.back()];
        auto& comp = step.corrected.components[arity - 1];
        auto it = comp.find(tuple);
        if (it == comp.end()) {
            QMatrix blank(tgt_dim, prod(dims));
            it = comp.emplace(tuple, std::move(blank)).first;
        }
        for (std::size_t s = 0; s < prod(dims); ++s)
            for (std::size_t o = 0; o < sub.size(); ++o)
                it->second.at(sub[o], s) = it->second.at(sub[o], s) + dblock.at(o, s);
    }
    return step;
}

}  // namespace obstr
