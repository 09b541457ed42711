#include "obstr/fincat.hpp"

#include <algorithm>

namespace obstr {

std::vector<Rational> AlgebraTable::multiply(const std::vector<Rational>& x,
                                             const std::vector<Rational>& y) const {
    std::vector<Rational> out(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (y[j] == 0) continue;
            const auto& prod = mult[i][j];
            for (std::size_t k = 0; k < dim(); ++k)
                if (prod[k] != 0) out[k] += x[i] * y[j] * prod[k];
        }
    }
    return out;
}

void FinCategory::init(std::vector<std::string> objs) {
    objects = std::move(objs);
    hom_labels_.assign(n_objects() * n_objects(), {});
    identity_.assign(n_objects(), {});
    compose_.assign(n_objects() * n_objects() * n_objects(), QMatrix());
}

void FinCategory::set_hom(std::size_t a, std::size_t b, std::vector<std::string> labels) {
    hom_labels_[pair_ix(a, b)] = std::move(labels);
}

void FinCategory::set_identity(std::size_t a, std::vector<Rational> coeffs) {
    identity_[a] = std::move(coeffs);
}

void FinCategory::set_compose(std::size_t a, std::size_t b, std::size_t c, QMatrix tensor) {
    compose_[triple_ix(a, b, c)] = std::move(tensor);
}

void FinCategory::finish() {
    for (std::size_t a = 0; a < n_objects(); ++a) {
        if (identity_[a].size() != dim(a, a)) identity_[a].resize(dim(a, a));
        for (std::size_t b = 0; b < n_objects(); ++b)
            for (std::size_t c = 0; c < n_objects(); ++c) {
                QMatrix& t = compose_[triple_ix(a, b, c)];
                if (t.rows() != dim(a, c) || t.cols() != dim(a, b) * dim(b, c))
                    t = QMatrix(dim(a, c), dim(a, b) * dim(b, c));
            }
    }
}

std::vector<Rational> FinCategory::compose_basis(std::size_t a, std::size_t b, std::size_t c,
                                                 std::size_t j, std::size_t k) const {
    const QMatrix& t = compose_[triple_ix(a, b, c)];
    std::vector<Rational> out(dim(a, c));
    std::size_t col = j + dim(a, b) * k;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = t.at(i, col);
    return out;
}

std::vector<Rational> FinCategory::compose(std::size_t a, std::size_t b, std::size_t c,
                                           const std::vector<Rational>& f,
                                           const std::vector<Rational>& g) const {
    const QMatrix& t = compose_[triple_ix(a, b, c)];
    std::vector<Rational> out(dim(a, c));
    for (std::size_t j = 0; j < dim(a, b); ++j) {
        if (f[j] == 0) continue;
        for (std::size_t k = 0; k < dim(b, c); ++k) {
            if (g[k] == 0) continue;
            std::size_t col = j + dim(a, b) * k;
            for (std::size_t i = 0; i < out.size(); ++i)
                if (t.at(i, col) != 0) out[i] += f[j] * g[k] * t.at(i, col);
        }
    }
    return out;
}

void Bimodule::init(std::size_t n_objects) {
    n_ = n_objects;
    labels_.assign(n_ * n_, {});
    act_source_.assign(n_ * n_ * n_, QMatrix());
    act_target_.assign(n_ * n_ * n_, QMatrix());
}

void Bimodule::set_carrier(std::size_t x, std::size_t y, std::vector<std::string> labels) {
    labels_[pair_ix(x, y)] = std::move(labels);
}

void Bimodule::set_act_source(std::size_t xp, std::size_t x, std::size_t y, QMatrix t) {
    act_source_[triple_ix(xp, x, y)] = std::move(t);
}

void Bimodule::set_act_target(std::size_t x, std::size_t y, std::size_t yp, QMatrix t) {
    act_target_[triple_ix(x, y, yp)] = std::move(t);
}

void Bimodule::finish() {}

std::vector<Rational> Bimodule::act_source(std::size_t xp, std::size_t x, std::size_t y,
                                           const std::vector<Rational>& f,
                                           const std::vector<Rational>& m) const {
    const QMatrix& t = act_source_[triple_ix(xp, x, y)];
    std::vector<Rational> out(dim(xp, y));
    if (t.rows() == 0 || t.cols() == 0) return out;
    std::size_t dh = f.size();
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (f[j] == 0) continue;
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0) continue;
            std::size_t col = j + dh * k;
            for (std::size_t i = 0; i < out.size(); ++i)
                if (t.at(i, col) != 0) out[i] += f[j] * m[k] * t.at(i, col);
        }
    }
    return out;
}

std::vector<Rational> Bimodule::act_target(std::size_t x, std::size_t y, std::size_t yp,
                                           const std::vector<Rational>& m,
                                           const std::vector<Rational>& g) const {
    const QMatrix& t = act_target_[triple_ix(x, y, yp)];
    std::vector<Rational> out(dim(x, yp));
    if (t.rows() == 0 || t.cols() == 0) return out;
    std::size_t dm = m.size();
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k] == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (g[j] == 0) continue;
            std::size_t col = k + dm * j;
            for (std::size_t i = 0; i < out.size(); ++i)
                if (t.at(i, col) != 0) out[i] += m[k] * g[j] * t.at(i, col);
        }
    }
    return out;
}

void Module::init(std::size_t n_objects) {
    n_ = n_objects;
    labels_.assign(n_, {});
    action_.assign(n_ * n_, QMatrix());
}

void Module::set_carrier(std::size_t x, std::vector<std::string> labels) {
    labels_[x] = std::move(labels);
}

void Module::set_action(std::size_t x, std::size_t y, QMatrix t) {
    action_[x * n_ + y] = std::move(t);
}

void Module::finish() {}

std::vector<Rational> Module::act(std::size_t x, std::size_t y, const std::vector<Rational>& f,
                                  const std::vector<Rational>& u) const {
    const QMatrix& t = action_[x * n_ + y];
    std::vector<Rational> out(dim(y));
    if (t.rows() == 0 || t.cols() == 0) return out;
    std::size_t dh = f.size();
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (f[j] == 0) continue;
        for (std::size_t k = 0; k < u.size(); ++k) {
            if (u[k] == 0) continue;
            std::size_t col = j + dh * k;
            for (std::size_t i = 0; i < out.size(); ++i)
                if (t.at(i, col) != 0) out[i] += f[j] * u[k] * t.at(i, col);
        }
    }
    return out;
}

// ---- builders ----------------------------------------------------------

FinCategory build_one_object_category(const AlgebraTable& table) {
    std::size_t d = table.dim();
    if (table.unit.size() != d || table.mult.size() != d)
        throw input_error("algebra table: inconsistent dimensions");
    FinCategory c;
    c.init({"*"});
    c.set_hom(0, 0, table.basis);
    c.set_identity(0, table.unit);
    QMatrix t(d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (table.mult[i][j].size() != d)
                throw input_error("algebra table: malformed product row");
            for (std::size_t k = 0; k < d; ++k) t.at(k, i + d * j) = table.mult[i][j][k];
        }
    c.set_compose(0, 0, 0, std::move(t));
    c.finish();
    auto report = validate_category(c);
    if (!report.ok())
        throw validation_error("algebra table is not associative/unital: " + report.problems.front());
    return c;
}

namespace {

std::string subset_name(const std::vector<int>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

bool subset_leq(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

FinCategory build_cover_category(const CoverSpec& spec) {
    if (spec.charts <= 0) throw input_error("cover spec: needs at least one chart");
    // objects: nonempty subsets of {1..k}, ordered by size then lexicographically
    std::vector<std::vector<int>> subsets;
    for (int mask = 1; mask < (1 << spec.charts); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < spec.charts; ++i)
            if (mask & (1 << i)) s.push_back(i + 1);
        subsets.push_back(std::move(s));
    }
    std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    for (const auto& s : subsets)
        if (!spec.algebras.count(s))
            throw input_error("cover spec: missing algebra for " + subset_name(s));

    auto restriction = [&](const std::vector<int>& i, const std::vector<int>& j) -> QMatrix {
        if (i == j) return QMatrix::identity(spec.algebras.at(i).dim());
        auto it = spec.restrictions.find({i, j});
        if (it == spec.restrictions.end())
            throw input_error("cover spec: missing restriction " + subset_name(i) + " -> " +
                              subset_name(j));
        return it->second;
    };

    // validate restrictions: unital algebra maps, functorial
    for (const auto& i : subsets)
        for (const auto& j : subsets) {
            if (i == j || !subset_leq(i, j)) continue;
            const auto& ai = spec.algebras.at(i);
            const auto& aj = spec.algebras.at(j);
            QMatrix r = restriction(i, j);
            if (r.rows() != aj.dim() || r.cols() != ai.dim())
                throw input_error("cover spec: restriction " + subset_name(i) + " -> " +
                                  subset_name(j) + " has wrong shape");
            if (r.apply(ai.unit) != aj.unit)
                throw validation_error("cover spec: restriction " + subset_name(i) + " -> " +
                                       subset_name(j) + " does not preserve the unit");
            for (std::size_t p = 0; p < ai.dim(); ++p)
                for (std::size_t q = 0; q < ai.dim(); ++q) {
                    std::vector<Rational> ep(ai.dim()), eq(ai.dim());
                    ep[p] = 1;
                    eq[q] = 1;
                    auto lhs = r.apply(ai.multiply(ep, eq));
                    auto rhs = aj.multiply(r.apply(ep), r.apply(eq));
                    if (lhs != rhs)
                        throw validation_error("cover spec: restriction " + subset_name(i) +
                                               " -> " + subset_name(j) + " is not an algebra map");
                }
            for (const auto& k : subsets) {
                if (!subset_leq(j, k) || j == k) continue;
                QMatrix direct = restriction(i, k);
                QMatrix via = restriction(j, k).mul(restriction(i, j));
                if (!(direct == via))
                    throw validation_error("cover spec: restrictions not functorial on " +
                                           subset_name(i) + " <= " + subset_name(j) +
                                           " <= " + subset_name(k));
            }
        }

    FinCategory c;
    std::vector<std::string> names;
    for (const auto& s : subsets) names.push_back(subset_name(s));
    c.init(names);
    std::size_t n = subsets.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (!subset_leq(subsets[a], subsets[b])) continue;
            const auto& alg = spec.algebras.at(subsets[b]);
            std::vector<std::string> labels;
            for (const auto& l : alg.basis) labels.push_back(l + "@" + names[b]);
            c.set_hom(a, b, std::move(labels));
        }
    for (std::size_t a = 0; a < n; ++a) c.set_identity(a, spec.algebras.at(subsets[a]).unit);
    // compose(f: a->b, g: b->c) = res_{b,c}(f) * g in O(U_c)
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (!subset_leq(subsets[a], subsets[b])) continue;
            for (std::size_t cc = 0; cc < n; ++cc) {
                if (!subset_leq(subsets[b], subsets[cc])) continue;
                const auto& algc = spec.algebras.at(subsets[cc]);
                QMatrix r = restriction(subsets[b], subsets[cc]);
                std::size_t db = spec.algebras.at(subsets[b]).dim();
                std::size_t dc = algc.dim();
                QMatrix t(dc, db * dc);
                for (std::size_t j = 0; j < db; ++j) {
                    std::vector<Rational> ej(db);
                    ej[j] = 1;
                    auto rj = r.apply(ej);
                    for (std::size_t k = 0; k < dc; ++k) {
                        std::vector<Rational> ek(dc);
                        ek[k] = 1;
                        auto prod = algc.multiply(rj, ek);
                        for (std::size_t i = 0; i < dc; ++i) t.at(i, j + db * k) = prod[i];
                    }
                }
                c.set_compose(a, b, cc, std::move(t));
            }
        }
    c.finish();
    auto report = validate_category(c);
    if (!report.ok())
        throw validation_error("cover category failed validation: " + report.problems.front());
    return c;
}

FinCategory tensor_category(const FinCategory& c, const FinCategory& d) {
    FinCategory t;
    std::vector<std::string> objs;
    std::size_t nd = d.n_objects();
    for (const auto& a : c.objects)
        for (const auto& i : d.objects) objs.push_back("(" + a + "," + i + ")");
    t.init(objs);
    auto ob = [&](std::size_t a, std::size_t i) { return a * nd + i; };
    for (std::size_t a = 0; a < c.n_objects(); ++a)
        for (std::size_t i = 0; i < nd; ++i)
            for (std::size_t b = 0; b < c.n_objects(); ++b)
                for (std::size_t j = 0; j < nd; ++j) {
                    std::vector<std::string> labels;
                    // pair basis, c-part fastest: index = h + dim_c * u
                    for (std::size_t u = 0; u < d.dim(i, j); ++u)
                        for (std::size_t h = 0; h < c.dim(a, b); ++h)
                            labels.push_back(c.hom_basis(a, b)[h] + "*" + d.hom_basis(i, j)[u]);
                    t.set_hom(ob(a, i), ob(b, j), std::move(labels));
                }
    for (std::size_t a = 0; a < c.n_objects(); ++a)
        for (std::size_t i = 0; i < nd; ++i) {
            std::vector<Rational> id(c.dim(a, a) * d.dim(i, i));
            for (std::size_t u = 0; u < d.dim(i, i); ++u)
                for (std::size_t h = 0; h < c.dim(a, a); ++h)
                    id[h + c.dim(a, a) * u] = c.identity(a)[h] * d.identity(i)[u];
            t.set_identity(ob(a, i), std::move(id));
        }
    for (std::size_t a = 0; a < c.n_objects(); ++a)
        for (std::size_t b = 0; b < c.n_objects(); ++b)
            for (std::size_t cc = 0; cc < c.n_objects(); ++cc)
                for (std::size_t i = 0; i < nd; ++i)
                    for (std::size_t j = 0; j < nd; ++j)
                        for (std::size_t k = 0; k < nd; ++k) {
                            std::size_t dab = c.dim(a, b), dbc = c.dim(b, cc),
                                        dij = d.dim(i, j), djk = d.dim(j, k);
                            std::size_t dac = c.dim(a, cc), dik = d.dim(i, k);
                            QMatrix tt(dac * dik, dab * dij * dbc * djk);
                            for (std::size_t h1 = 0; h1 < dab; ++h1)
                                for (std::size_t u1 = 0; u1 < dij; ++u1)
                                    for (std::size_t h2 = 0; h2 < dbc; ++h2)
                                        for (std::size_t u2 = 0; u2 < djk; ++u2) {
                                            auto pc = c.compose_basis(a, b, cc, h1, h2);
                                            auto pd = d.compose_basis(i, j, k, u1, u2);
                                            std::size_t col = (h1 + dab * u1) +
                                                              dab * dij * (h2 + dbc * u2);
                                            for (std::size_t r1 = 0; r1 < dac; ++r1)
                                                for (std::size_t r2 = 0; r2 < dik; ++r2)
                                                    tt.at(r1 + dac * r2, col) = pc[r1] * pd[r2];
                                        }
                            t.set_compose(ob(a, i), ob(b, j), ob(cc, k), std::move(tt));
                        }
    t.finish();
    return t;
}

Bimodule canonical_bimodule(const FinCategory& c) {
    Bimodule m;
    std::size_t n = c.n_objects();
    m.init(n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) m.set_carrier(x, y, c.hom_basis(x, y));
    for (std::size_t xp = 0; xp < n; ++xp)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                std::size_t dh = c.dim(xp, x), dm = c.dim(x, y);
                QMatrix t(c.dim(xp, y), dh * dm);
                for (std::size_t j = 0; j < dh; ++j)
                    for (std::size_t k = 0; k < dm; ++k) {
                        auto v = c.compose_basis(xp, x, y, j, k);
                        for (std::size_t i = 0; i < v.size(); ++i) t.at(i, j + dh * k) = v[i];
                    }
                m.set_act_source(xp, x, y, std::move(t));
            }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t yp = 0; yp < n; ++yp) {
                std::size_t dm = c.dim(x, y), dh = c.dim(y, yp);
                QMatrix t(c.dim(x, yp), dm * dh);
                for (std::size_t k = 0; k < dm; ++k)
                    for (std::size_t j = 0; j < dh; ++j) {
                        auto v = c.compose_basis(x, y, yp, k, j);
                        for (std::size_t i = 0; i < v.size(); ++i) t.at(i, k + dm * j) = v[i];
                    }
                m.set_act_target(x, y, yp, std::move(t));
            }
    m.finish();
    return m;
}

Bimodule tensor_bimodule(const FinCategory& c, const Bimodule& m, const FinCategory& i) {
    std::size_t nc = c.n_objects(), ni = i.n_objects();
    Bimodule out;
    out.init(nc * ni);
    out.shift = m.shift;
    auto ob = [&](std::size_t a, std::size_t p) { return a * ni + p; };
    for (std::size_t a = 0; a < nc; ++a)
        for (std::size_t p = 0; p < ni; ++p)
            for (std::size_t b = 0; b < nc; ++b)
                for (std::size_t q = 0; q < ni; ++q) {
                    std::vector<std::string> labels;
                    for (std::size_t u = 0; u < i.dim(p, q); ++u)
                        for (std::size_t h = 0; h < m.dim(a, b); ++h)
                            labels.push_back(m.basis(a, b)[h] + "*" + i.hom_basis(p, q)[u]);
                    out.set_carrier(ob(a, p), ob(b, q), std::move(labels));
                }
    // act_source: (f*u).(m*v) = (f.m) * (u v); act_target symmetric
    for (std::size_t ap = 0; ap < nc; ++ap)
        for (std::size_t a = 0; a < nc; ++a)
            for (std::size_t b = 0; b < nc; ++b)
                for (std::size_t pp = 0; pp < ni; ++pp)
                    for (std::size_t p = 0; p < ni; ++p)
                        for (std::size_t q = 0; q < ni; ++q) {
                            std::size_t dh = c.dim(ap, a), di = i.dim(pp, p);
                            std::size_t dm = m.dim(a, b), dj = i.dim(p, q);
                            std::size_t dout = m.dim(ap, b) * i.dim(pp, q);
                            QMatrix t(dout, dh * di * dm * dj);
                            for (std::size_t f = 0; f < dh; ++f)
                                for (std::size_t u = 0; u < di; ++u)
                                    for (std::size_t mm = 0; mm < dm; ++mm)
                                        for (std::size_t v = 0; v < dj; ++v) {
                                            std::vector<Rational> ef(dh), em(dm);
                                            ef[f] = 1;
                                            em[mm] = 1;
                                            auto am = m.act_source(ap, a, b, ef, em);
                                            auto ai = i.compose_basis(pp, p, q, u, v);
                                            std::size_t col = (f + dh * u) + dh * di * (mm + dm * v);
                                            for (std::size_t r1 = 0; r1 < am.size(); ++r1)
                                                for (std::size_t r2 = 0; r2 < ai.size(); ++r2)
                                                    t.at(r1 + m.dim(ap, b) * r2, col) =
                                                        am[r1] * ai[r2];
                                        }
                            out.set_act_source(ob(ap, pp), ob(a, p), ob(b, q), std::move(t));
                        }
    for (std::size_t a = 0; a < nc; ++a)
        for (std::size_t b = 0; b < nc; ++b)
            for (std::size_t bp = 0; bp < nc; ++bp)
                for (std::size_t p = 0; p < ni; ++p)
                    for (std::size_t q = 0; q < ni; ++q)
                        for (std::size_t qp = 0; qp < ni; ++qp) {
                            std::size_t dm = m.dim(a, b), di = i.dim(p, q);
                            std::size_t dh = c.dim(b, bp), dj = i.dim(q, qp);
                            std::size_t dout = m.dim(a, bp) * i.dim(p, qp);
                            QMatrix t(dout, dm * di * dh * dj);
                            for (std::size_t mm = 0; mm < dm; ++mm)
                                for (std::size_t u = 0; u < di; ++u)
                                    for (std::size_t g = 0; g < dh; ++g)
                                        for (std::size_t v = 0; v < dj; ++v) {
                                            std::vector<Rational> eg(dh), em(dm);
                                            eg[g] = 1;
                                            em[mm] = 1;
                                            auto am = m.act_target(a, b, bp, em, eg);
                                            auto ai = i.compose_basis(p, q, qp, u, v);
                                            std::size_t col = (mm + dm * u) + dm * di * (g + dh * v);
                                            for (std::size_t r1 = 0; r1 < am.size(); ++r1)
                                                for (std::size_t r2 = 0; r2 < ai.size(); ++r2)
                                                    t.at(r1 + m.dim(a, bp) * r2, col) =
                                                        am[r1] * ai[r2];
                                        }
                            out.set_act_target(ob(a, p), ob(b, q), ob(bp, qp), std::move(t));
                        }
    out.finish();
    return out;
}

Bimodule restrict_bimodule(const FinCategory& src, const FinCategory& tgt,
                           const LinearFunctor& f, const Bimodule& m) {
    std::size_t n = src.n_objects();
    Bimodule out;
    out.init(n);
    out.shift = m.shift;
    auto F = [&](std::size_t a) { return f.object_map[a]; };
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) out.set_carrier(x, y, m.basis(F(x), F(y)));
    for (std::size_t xp = 0; xp < n; ++xp)
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                std::size_t dh = src.dim(xp, x), dm = m.dim(F(x), F(y));
                QMatrix t(m.dim(F(xp), F(y)), dh * dm);
                for (std::size_t j = 0; j < dh; ++j) {
                    std::vector<Rational> ej(dh);
                    ej[j] = 1;
                    auto fj = f.map(xp, x, n).apply(ej);
                    for (std::size_t k = 0; k < dm; ++k) {
                        std::vector<Rational> ek(dm);
                        ek[k] = 1;
                        auto v = m.act_source(F(xp), F(x), F(y), fj, ek);
                        for (std::size_t i = 0; i < v.size(); ++i) t.at(i, j + dh * k) = v[i];
                    }
                }
                out.set_act_source(xp, x, y, std::move(t));
            }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t yp = 0; yp < n; ++yp) {
                std::size_t dm = m.dim(F(x), F(y)), dh = src.dim(y, yp);
                QMatrix t(m.dim(F(x), F(yp)), dm * dh);
                for (std::size_t j = 0; j < dh; ++j) {
                    std::vector<Rational> ej(dh);
                    ej[j] = 1;
                    auto fj = f.map(y, yp, n).apply(ej);
                    for (std::size_t k = 0; k < dm; ++k) {
                        std::vector<Rational> ek(dm);
                        ek[k] = 1;
                        auto v = m.act_target(F(x), F(y), F(yp), ek, fj);
                        for (std::size_t i = 0; i < v.size(); ++i) t.at(i, k + dm * j) = v[i];
                    }
                }
                out.set_act_target(x, y, yp, std::move(t));
            }
    out.finish();
    return out;
}

Module representable_module(const FinCategory& c, std::size_t x0) {
    Module u;
    std::size_t n = c.n_objects();
    u.init(n);
    for (std::size_t x = 0; x < n; ++x) u.set_carrier(x, c.hom_basis(x0, x));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::size_t dh = c.dim(x, y), du = c.dim(x0, x);
            QMatrix t(c.dim(x0, y), dh * du);
            for (std::size_t j = 0; j < dh; ++j)
                for (std::size_t k = 0; k < du; ++k) {
                    auto v = c.compose_basis(x0, x, y, k, j);  // u then f
                    for (std::size_t i = 0; i < v.size(); ++i) t.at(i, j + dh * k) = v[i];
                }
            u.set_action(x, y, std::move(t));
        }
    u.finish();
    return u;
}

// ---- validation --------------------------------------------------------

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

std::vector<Rational> vec_sub(std::vector<Rational> a, const std::vector<Rational>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

}  // namespace

ValidationReport validate_category(const FinCategory& c) {
    ValidationReport rep;
    std::size_t n = c.n_objects();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t j = 0; j < c.dim(a, b); ++j) {
                auto e = unit_vec(c.dim(a, b), j);
                if (!all_zero(vec_sub(c.compose(a, a, b, c.identity(a), e), e)))
                    rep.problems.push_back("left unit fails at hom(" + c.objects[a] + "," +
                                           c.objects[b] + ") basis " + c.hom_basis(a, b)[j]);
                if (!all_zero(vec_sub(c.compose(a, b, b, e, c.identity(b)), e)))
                    rep.problems.push_back("right unit fails at hom(" + c.objects[a] + "," +
                                           c.objects[b] + ") basis " + c.hom_basis(a, b)[j]);
            }
        }
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc)
                for (std::size_t d = 0; d < n; ++d)
                    for (std::size_t j = 0; j < c.dim(a, b); ++j)
                        for (std::size_t k = 0; k < c.dim(b, cc); ++k)
                            for (std::size_t l = 0; l < c.dim(cc, d); ++l) {
                                auto fg = c.compose_basis(a, b, cc, j, k);
                                auto gh = c.compose_basis(b, cc, d, k, l);
                                auto lhs = c.compose(a, cc, d, fg, unit_vec(c.dim(cc, d), l));
                                auto rhs = c.compose(a, b, d, unit_vec(c.dim(a, b), j), gh);
                                if (!all_zero(vec_sub(lhs, rhs)))
                                    rep.problems.push_back(
                                        "associativity fails on (" + c.hom_basis(a, b)[j] + ", " +
                                        c.hom_basis(b, cc)[k] + ", " + c.hom_basis(cc, d)[l] + ")");
                            }
    return rep;
}

ValidationReport validate_bimodule(const FinCategory& c, const Bimodule& m) {
    ValidationReport rep;
    std::size_t n = c.n_objects();
    // unitality
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t k = 0; k < m.dim(x, y); ++k) {
                auto e = unit_vec(m.dim(x, y), k);
                if (!all_zero(vec_sub(m.act_source(x, x, y, c.identity(x), e), e)))
                    rep.problems.push_back("source action not unital at M(" + c.objects[x] + "," +
                                           c.objects[y] + ")");
                if (!all_zero(vec_sub(m.act_target(x, y, y, e, c.identity(y)), e)))
                    rep.problems.push_back("target action not unital at M(" + c.objects[x] + "," +
                                           c.objects[y] + ")");
            }
    // associativity of each action and commutation of the two
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y) {
                    for (std::size_t j = 0; j < c.dim(a, b); ++j)
                        for (std::size_t k = 0; k < c.dim(b, x); ++k)
                            for (std::size_t u = 0; u < m.dim(x, y); ++u) {
                                auto ej = unit_vec(c.dim(a, b), j);
                                auto ek = unit_vec(c.dim(b, x), k);
                                auto eu = unit_vec(m.dim(x, y), u);
                                auto lhs = m.act_source(a, b, y, ej, m.act_source(b, x, y, ek, eu));
                                auto rhs =
                                    m.act_source(a, x, y, c.compose(a, b, x, ej, ek), eu);
                                if (!all_zero(vec_sub(lhs, rhs)))
                                    rep.problems.push_back("source action not associative");
                            }
                    for (std::size_t u = 0; u < m.dim(a, b); ++u)
                        for (std::size_t j = 0; j < c.dim(b, x); ++j)
                            for (std::size_t k = 0; k < c.dim(x, y); ++k) {
                                auto eu = unit_vec(m.dim(a, b), u);
                                auto ej = unit_vec(c.dim(b, x), j);
                                auto ek = unit_vec(c.dim(x, y), k);
                                auto lhs = m.act_target(a, x, y, m.act_target(a, b, x, eu, ej), ek);
                                auto rhs = m.act_target(a, b, y, eu, c.compose(b, x, y, ej, ek));
                                if (!all_zero(vec_sub(lhs, rhs)))
                                    rep.problems.push_back("target action not associative");
                            }
                    for (std::size_t j = 0; j < c.dim(a, b); ++j)
                        for (std::size_t u = 0; u < m.dim(b, x); ++u)
                            for (std::size_t k = 0; k < c.dim(x, y); ++k) {
                                auto ej = unit_vec(c.dim(a, b), j);
                                auto eu = unit_vec(m.dim(b, x), u);
                                auto ek = unit_vec(c.dim(x, y), k);
                                auto lhs = m.act_target(a, x, y, m.act_source(a, b, x, ej, eu), ek);
                                auto rhs = m.act_source(a, b, y, ej, m.act_target(b, x, y, eu, ek));
                                if (!all_zero(vec_sub(lhs, rhs)))
                                    rep.problems.push_back("bimodule actions do not commute");
                            }
                }
    return rep;
}

ValidationReport validate_module(const FinCategory& c, const Module& u) {
    ValidationReport rep;
    std::size_t n = c.n_objects();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t k = 0; k < u.dim(x); ++k) {
            auto e = unit_vec(u.dim(x), k);
            if (!all_zero(vec_sub(u.act(x, x, c.identity(x), e), e)))
                rep.problems.push_back("module action not unital at " + c.objects[x]);
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                for (std::size_t j = 0; j < c.dim(x, y); ++j)
                    for (std::size_t k = 0; k < c.dim(y, z); ++k)
                        for (std::size_t v = 0; v < u.dim(x); ++v) {
                            auto ej = unit_vec(c.dim(x, y), j);
                            auto ek = unit_vec(c.dim(y, z), k);
                            auto ev = unit_vec(u.dim(x), v);
                            auto lhs = u.act(y, z, ek, u.act(x, y, ej, ev));
                            auto rhs = u.act(x, z, c.compose(x, y, z, ej, ek), ev);
                            if (!all_zero(vec_sub(lhs, rhs)))
                                rep.problems.push_back("module action not associative");
                        }
    return rep;
}

ValidationReport validate_functor(const FinCategory& src, const FinCategory& tgt,
                                  const LinearFunctor& f) {
    ValidationReport rep;
    std::size_t n = src.n_objects();
    if (f.object_map.size() != n) {
        rep.problems.push_back("object map has wrong size");
        return rep;
    }
    for (std::size_t a = 0; a < n; ++a) {
        auto fa = f.object_map[a];
        if (f.map(a, a, n).apply(src.identity(a)) != tgt.identity(fa))
            rep.problems.push_back("functor does not preserve identity of " + src.objects[a]);
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t j = 0; j < src.dim(a, b); ++j)
                    for (std::size_t k = 0; k < src.dim(b, c); ++k) {
                        auto ej = unit_vec(src.dim(a, b), j);
                        auto ek = unit_vec(src.dim(b, c), k);
                        auto lhs = f.map(a, c, n).apply(src.compose_basis(a, b, c, j, k));
                        auto rhs = tgt.compose(f.object_map[a], f.object_map[b], f.object_map[c],
                                               f.map(a, b, n).apply(ej), f.map(b, c, n).apply(ek));
                        if (!all_zero(vec_sub(lhs, rhs)))
                            rep.problems.push_back("functor not compatible with composition");
                    }
    return rep;
}

// ---- stock categories ----------------------------------------------------

AlgebraTable rationals_algebra() {
    AlgebraTable t;
    t.basis = {"1"};
    t.unit = {1};
    t.mult = {{{Rational(1)}}};
    return t;
}

AlgebraTable truncated_polynomial_algebra(int nilpotency) {
    if (nilpotency < 1) throw input_error("truncated polynomial algebra needs x^k with k >= 1");
    AlgebraTable t;
    std::size_t d = static_cast<std::size_t>(nilpotency);
    for (std::size_t i = 0; i < d; ++i)
        t.basis.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x" + std::to_string(i)));
    t.unit.assign(d, 0);
    t.unit[0] = 1;
    t.mult.assign(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d)));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (i + j < d) t.mult[i][j][i + j] = 1;
    return t;
}

AlgebraTable dual_numbers_algebra() {
    auto t = truncated_polynomial_algebra(2);
    t.basis = {"1", "e"};
    return t;
}

FinCategory star_q() { return build_one_object_category(rationals_algebra()); }

FinCategory dual_numbers_category() { return build_one_object_category(dual_numbers_algebra()); }

FinCategory a2_path_category() {
    FinCategory c;
    c.init({"1", "2"});
    c.set_hom(0, 0, {"id1"});
    c.set_hom(1, 1, {"id2"});
    c.set_hom(0, 1, {"a"});
    c.set_identity(0, {Rational(1)});
    c.set_identity(1, {Rational(1)});
    QMatrix m11(1, 1);
    m11.at(0, 0) = 1;
    c.set_compose(0, 0, 0, m11);
    c.set_compose(1, 1, 1, m11);
    c.set_compose(0, 0, 1, m11);  // id1 then a
    c.set_compose(0, 1, 1, m11);  // a then id2
    c.finish();
    return c;
}

FinCategory two_cycle_category() {
    // paths: 1a, eps = alpha.beta in End(a); 1b in End(b); alpha: a->b; beta: b->a
    FinCategory c;
    c.init({"a", "b"});
    c.set_hom(0, 0, {"1a", "eps"});
    c.set_hom(1, 1, {"1b"});
    c.set_hom(0, 1, {"alpha"});
    c.set_hom(1, 0, {"beta"});
    c.set_identity(0, {Rational(1), Rational(0)});
    c.set_identity(1, {Rational(1)});
    QMatrix caa(2, 4);  // End(a) x End(a)
    caa.at(0, 0) = 1;   // 1a.1a
    caa.at(1, 1) = 1;   // eps.1a
    caa.at(1, 2) = 1;   // 1a.eps
    // eps.eps = 0
    c.set_compose(0, 0, 0, caa);
    QMatrix cab(1, 2);  // End(a) x hom(a,b) -> hom(a,b)
    cab.at(0, 0) = 1;   // 1a then alpha
    // eps then alpha = alpha.beta.alpha = 0 (beta.alpha = 0)
    c.set_compose(0, 0, 1, cab);
    QMatrix cba(2, 1);  // hom(a,b) x hom(b,a) -> End(a): alpha then beta = eps
    cba.at(1, 0) = 1;
    c.set_compose(0, 1, 0, cba);
    QMatrix cbb1(1, 1);
    cbb1.at(0, 0) = 1;
    c.set_compose(1, 1, 1, cbb1);
    c.set_compose(0, 1, 1, cbb1);  // alpha then 1b
    QMatrix cb_ab(1, 2);           // hom(b,a) x End(a) -> hom(b,a)
    cb_ab.at(0, 0) = 1;            // beta then 1a
    // beta then eps = beta.alpha.beta = 0
    c.set_compose(1, 0, 0, cb_ab);
    QMatrix cbab(1, 1);  // hom(b,a) x hom(a,b) -> End(b): beta then alpha = 0
    c.set_compose(1, 0, 1, cbab);
    QMatrix cbb_a(1, 1);
    cbb_a.at(0, 0) = 1;
    c.set_compose(1, 1, 0, cbb_a);  // 1b then beta
    c.finish();
    return c;
}

}  // namespace obstr
