#include "obstr/io.hpp"

#include <fstream>

namespace obstr::io {

namespace {

std::size_t find_index(const std::vector<std::string>& v, const std::string& s,
                       const std::string& what) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] == s) return i;
    throw input_error("unknown " + what + ": " + s);
}

std::vector<Rational> coeff_vector(const json& value, const std::vector<std::string>& basis,
                                   const std::string& what) {
    std::vector<Rational> v(basis.size());
    if (value.is_null()) return v;
    if (!value.is_object()) throw input_error("expected an object of coefficients for " + what);
    for (auto it = value.begin(); it != value.end(); ++it)
        v[find_index(basis, it.key(), what + " basis label")] =
            parse_rational(it.value().get<std::string>());
    return v;
}

json coeff_json(const std::vector<Rational>& v, const std::vector<std::string>& basis) {
    json out = json::object();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) out[basis[i]] = rational_str(v[i]);
    return out;
}

std::string pair_key(const std::string& a, const std::string& b) { return a + "|" + b; }

std::pair<std::string, std::string> split_pair(const std::string& key) {
    auto bar = key.find('|');
    if (bar == std::string::npos) throw input_error("malformed hom key (expected 'a|b'): " + key);
    return {key.substr(0, bar), key.substr(bar + 1)};
}

void expect_kind(const json& j, const std::string& kind) {
    if (!j.is_object() || j.value("kind", "") != kind)
        throw input_error("expected a document of kind '" + kind + "'");
}

}  // namespace

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw input_error("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

FinCategory read_category(const json& j) {
    expect_kind(j, "category");
    FinCategory c;
    std::vector<std::string> objects = j.at("objects").get<std::vector<std::string>>();
    c.init(objects);
    std::size_t n = c.n_objects();
    if (j.contains("homs"))
        for (auto it = j["homs"].begin(); it != j["homs"].end(); ++it) {
            auto [a, b] = split_pair(it.key());
            c.set_hom(find_index(objects, a, "object"), find_index(objects, b, "object"),
                      it.value().get<std::vector<std::string>>());
        }
    for (auto it = j.at("identities").begin(); it != j.at("identities").end(); ++it) {
        std::size_t a = find_index(objects, it.key(), "object");
        c.set_identity(a, coeff_vector(it.value(), c.hom_basis(a, a), "identity"));
    }
    c.finish();
    // compose entries; anything omitted stays zero
    std::vector<QMatrix> tensors(n * n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc)
                tensors[c.triple_ix(a, b, cc)] =
                    QMatrix(c.dim(a, cc), c.dim(a, b) * c.dim(b, cc));
    if (j.contains("compose"))
        for (const auto& e : j["compose"]) {
            auto at = e.at("at").get<std::vector<std::string>>();
            if (at.size() != 3) throw input_error("compose entry needs three objects");
            std::size_t a = find_index(objects, at[0], "object");
            std::size_t b = find_index(objects, at[1], "object");
            std::size_t cc = find_index(objects, at[2], "object");
            std::size_t f = find_index(c.hom_basis(a, b), e.at("f").get<std::string>(), "basis");
            std::size_t g = find_index(c.hom_basis(b, cc), e.at("g").get<std::string>(), "basis");
            auto v = coeff_vector(e.at("value"), c.hom_basis(a, cc), "compose value");
            for (std::size_t i = 0; i < v.size(); ++i)
                tensors[c.triple_ix(a, b, cc)].at(i, f + c.dim(a, b) * g) = v[i];
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc)
                c.set_compose(a, b, cc, tensors[c.triple_ix(a, b, cc)]);
    return c;
}

json write_category(const FinCategory& c) {
    json j;
    j["kind"] = "category";
    j["objects"] = c.objects;
    std::size_t n = c.n_objects();
    json homs = json::object(), ids = json::object();
    for (std::size_t a = 0; a < n; ++a) {
        ids[c.objects[a]] = coeff_json(c.identity(a), c.hom_basis(a, a));
        for (std::size_t b = 0; b < n; ++b)
            if (c.dim(a, b) > 0) homs[pair_key(c.objects[a], c.objects[b])] = c.hom_basis(a, b);
    }
    j["homs"] = homs;
    j["identities"] = ids;
    json compose = json::array();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc)
                for (std::size_t f = 0; f < c.dim(a, b); ++f)
                    for (std::size_t g = 0; g < c.dim(b, cc); ++g) {
                        auto v = c.compose_basis(a, b, cc, f, g);
                        json val = coeff_json(v, c.hom_basis(a, cc));
                        if (val.empty()) continue;
                        compose.push_back({{"at", {c.objects[a], c.objects[b], c.objects[cc]}},
                                           {"f", c.hom_basis(a, b)[f]},
                                           {"g", c.hom_basis(b, cc)[g]},
                                           {"value", val}});
                    }
    j["compose"] = compose;
    return j;
}

Bimodule read_bimodule(const json& j, const FinCategory& c) {
    if (j.is_string() && j.get<std::string>() == "self") return canonical_bimodule(c);
    expect_kind(j, "bimodule");
    Bimodule m;
    std::size_t n = c.n_objects();
    m.init(n);
    m.shift = j.value("shift", 0);
    if (j.contains("carrier"))
        for (auto it = j["carrier"].begin(); it != j["carrier"].end(); ++it) {
            auto [a, b] = split_pair(it.key());
            m.set_carrier(find_index(c.objects, a, "object"), find_index(c.objects, b, "object"),
                          it.value().get<std::vector<std::string>>());
        }
    std::vector<QMatrix> source(n * n * n), target(n * n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc) {
                source[m.triple_ix(a, b, cc)] =
                    QMatrix(m.dim(a, cc), c.dim(a, b) * m.dim(b, cc));
                target[m.triple_ix(a, b, cc)] =
                    QMatrix(m.dim(a, cc), m.dim(a, b) * c.dim(b, cc));
            }
    if (j.contains("act_source"))
        for (const auto& e : j["act_source"]) {
            auto at = e.at("at").get<std::vector<std::string>>();
            std::size_t a = find_index(c.objects, at[0], "object");
            std::size_t b = find_index(c.objects, at[1], "object");
            std::size_t cc = find_index(c.objects, at[2], "object");
            std::size_t f = find_index(c.hom_basis(a, b), e.at("f").get<std::string>(), "basis");
            std::size_t mm = find_index(m.basis(b, cc), e.at("m").get<std::string>(), "carrier");
            auto v = coeff_vector(e.at("value"), m.basis(a, cc), "act_source value");
            for (std::size_t i = 0; i < v.size(); ++i)
                source[m.triple_ix(a, b, cc)].at(i, f + c.dim(a, b) * mm) = v[i];
        }
    if (j.contains("act_target"))
        for (const auto& e : j["act_target"]) {
            auto at = e.at("at").get<std::vector<std::string>>();
            std::size_t a = find_index(c.objects, at[0], "object");
            std::size_t b = find_index(c.objects, at[1], "object");
            std::size_t cc = find_index(c.objects, at[2], "object");
            std::size_t mm = find_index(m.basis(a, b), e.at("m").get<std::string>(), "carrier");
            std::size_t g = find_index(c.hom_basis(b, cc), e.at("g").get<std::string>(), "basis");
            auto v = coeff_vector(e.at("value"), m.basis(a, cc), "act_target value");
            for (std::size_t i = 0; i < v.size(); ++i)
                target[m.triple_ix(a, b, cc)].at(i, mm + m.dim(a, b) * g) = v[i];
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc) {
                m.set_act_source(a, b, cc, source[m.triple_ix(a, b, cc)]);
                m.set_act_target(a, b, cc, target[m.triple_ix(a, b, cc)]);
            }
    m.finish();
    return m;
}

json write_bimodule(const FinCategory& c, const Bimodule& m) {
    json j;
    j["kind"] = "bimodule";
    j["shift"] = m.shift;
    std::size_t n = c.n_objects();
    json carrier = json::object();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (m.dim(a, b) > 0) carrier[pair_key(c.objects[a], c.objects[b])] = m.basis(a, b);
    j["carrier"] = carrier;
    json src = json::array(), tgt = json::array();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc) {
                for (std::size_t f = 0; f < c.dim(a, b); ++f)
                    for (std::size_t mm = 0; mm < m.dim(b, cc); ++mm) {
                        std::vector<Rational> ef(c.dim(a, b)), em(m.dim(b, cc));
                        ef[f] = 1;
                        em[mm] = 1;
                        json val = coeff_json(m.act_source(a, b, cc, ef, em), m.basis(a, cc));
                        if (val.empty()) continue;
                        src.push_back({{"at", {c.objects[a], c.objects[b], c.objects[cc]}},
                                       {"f", c.hom_basis(a, b)[f]},
                                       {"m", m.basis(b, cc)[mm]},
                                       {"value", val}});
                    }
                for (std::size_t mm = 0; mm < m.dim(a, b); ++mm)
                    for (std::size_t g = 0; g < c.dim(b, cc); ++g) {
                        std::vector<Rational> em(m.dim(a, b)), eg(c.dim(b, cc));
                        em[mm] = 1;
                        eg[g] = 1;
                        json val = coeff_json(m.act_target(a, b, cc, em, eg), m.basis(a, cc));
                        if (val.empty()) continue;
                        tgt.push_back({{"at", {c.objects[a], c.objects[b], c.objects[cc]}},
                                       {"m", m.basis(a, b)[mm]},
                                       {"g", c.hom_basis(b, cc)[g]},
                                       {"value", val}});
                    }
            }
    j["act_source"] = src;
    j["act_target"] = tgt;
    return j;
}

Module read_module(const json& j, const FinCategory& c) {
    expect_kind(j, "module");
    Module u;
    std::size_t n = c.n_objects();
    u.init(n);
    if (j.contains("carrier"))
        for (auto it = j["carrier"].begin(); it != j["carrier"].end(); ++it)
            u.set_carrier(find_index(c.objects, it.key(), "object"),
                          it.value().get<std::vector<std::string>>());
    std::vector<QMatrix> act(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            act[a * n + b] = QMatrix(u.dim(b), c.dim(a, b) * u.dim(a));
    if (j.contains("action"))
        for (const auto& e : j["action"]) {
            auto at = e.at("at").get<std::vector<std::string>>();
            std::size_t a = find_index(c.objects, at[0], "object");
            std::size_t b = find_index(c.objects, at[1], "object");
            std::size_t f = find_index(c.hom_basis(a, b), e.at("f").get<std::string>(), "basis");
            std::size_t uu = find_index(u.basis(a), e.at("u").get<std::string>(), "carrier");
            auto v = coeff_vector(e.at("value"), u.basis(b), "action value");
            for (std::size_t i = 0; i < v.size(); ++i)
                act[a * n + b].at(i, f + c.dim(a, b) * uu) = v[i];
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) u.set_action(a, b, act[a * n + b]);
    u.finish();
    return u;
}

json write_module(const FinCategory& c, const Module& u) {
    json j;
    j["kind"] = "module";
    std::size_t n = c.n_objects();
    json carrier = json::object();
    for (std::size_t a = 0; a < n; ++a)
        if (u.dim(a) > 0) carrier[c.objects[a]] = u.basis(a);
    j["carrier"] = carrier;
    json action = json::array();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t f = 0; f < c.dim(a, b); ++f)
                for (std::size_t uu = 0; uu < u.dim(a); ++uu) {
                    std::vector<Rational> ef(c.dim(a, b)), eu(u.dim(a));
                    ef[f] = 1;
                    eu[uu] = 1;
                    json val = coeff_json(u.act(a, b, ef, eu), u.basis(b));
                    if (val.empty()) continue;
                    action.push_back({{"at", {c.objects[a], c.objects[b]}},
                                      {"f", c.hom_basis(a, b)[f]},
                                      {"u", u.basis(a)[uu]},
                                      {"value", val}});
                }
    j["action"] = action;
    return j;
}

Cochain read_cochain(const json& j, const FinCategory& c, const Bimodule& m) {
    expect_kind(j, "cochain");
    Cochain x;
    x.degree = j.at("degree").get<int>();
    x.shift = j.value("shift", 0);
    if (x.degree < 0) throw input_error("cochain degree must be non-negative");
    if (j.contains("blocks"))
        for (const auto& e : j["blocks"]) {
            auto at = e.at("at").get<std::vector<std::string>>();
            if (static_cast<int>(at.size()) != x.degree + 1)
                throw input_error("cochain block tuple has wrong length");
            std::vector<std::size_t> tuple;
            for (const auto& o : at) tuple.push_back(find_index(c.objects, o, "object"));
            std::vector<std::string> inputs =
                e.value("inputs", std::vector<std::string>{});
            if (static_cast<int>(inputs.size()) != x.degree)
                throw input_error("cochain block needs exactly degree-many inputs");
            std::vector<std::size_t> dims;
            std::size_t col = 0, stride = 1;
            for (int i = 0; i < x.degree; ++i) {
                std::size_t d = c.dim(tuple[i], tuple[i + 1]);
                std::size_t ix = find_index(c.hom_basis(tuple[i], tuple[i + 1]), inputs[i],
                                            "basis");
                col += stride * ix;
                stride *= d;
                dims.push_back(d);
            }
            auto v = coeff_vector(e.at("value"), m.basis(tuple.front(), tuple.back()),
                                  "cochain value");
            auto it = x.blocks.find(tuple);
            if (it == x.blocks.end()) {
                std::size_t src = 1;
                for (auto d : dims) src *= d;
                it = x.blocks.emplace(tuple, QMatrix(v.size(), src)).first;
            }
            for (std::size_t i = 0; i < v.size(); ++i) it->second.at(i, col) = v[i];
        }
    return x;
}

json write_cochain(const FinCategory& c, const Bimodule& m, const Cochain& x) {
    json j;
    j["kind"] = "cochain";
    j["degree"] = x.degree;
    j["shift"] = x.shift;
    json blocks = json::array();
    for (const auto& [tuple, block] : x.blocks) {
        std::vector<std::size_t> dims;
        for (std::size_t i = 0; i + 1 < tuple.size(); ++i)
            dims.push_back(c.dim(tuple[i], tuple[i + 1]));
        std::size_t src = 1;
        for (auto d : dims) src *= d;
        for (std::size_t s = 0; s < src; ++s) {
            std::vector<Rational> v(block.rows());
            bool nz = false;
            for (std::size_t i = 0; i < block.rows(); ++i) {
                v[i] = block.at(i, s);
                if (v[i] != 0) nz = true;
            }
            if (!nz) continue;
            json at = json::array(), inputs = json::array();
            for (auto o : tuple) at.push_back(c.objects[o]);
            std::size_t rem = s;
            for (std::size_t i = 0; i < dims.size(); ++i) {
                inputs.push_back(c.hom_basis(tuple[i], tuple[i + 1])[rem % dims[i]]);
                rem /= dims[i];
            }
            blocks.push_back({{"at", at},
                              {"inputs", inputs},
                              {"value", coeff_json(v, m.basis(tuple.front(), tuple.back()))}});
        }
    }
    j["blocks"] = blocks;
    return j;
}

LinearFunctor read_linear_functor(const json& j, const FinCategory& src, const FinCategory& tgt) {
    expect_kind(j, "linear_functor");
    LinearFunctor f;
    std::size_t n = src.n_objects();
    f.object_map.resize(n);
    for (auto it = j.at("objects").begin(); it != j.at("objects").end(); ++it)
        f.object_map[find_index(src.objects, it.key(), "object")] =
            find_index(tgt.objects, it.value().get<std::string>(), "object");
    f.hom_map.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            f.hom_map[a * n + b] =
                QMatrix(tgt.dim(f.object_map[a], f.object_map[b]), src.dim(a, b));
    if (j.contains("maps"))
        for (const auto& e : j["maps"]) {
            auto at = e.at("at").get<std::vector<std::string>>();
            std::size_t a = find_index(src.objects, at[0], "object");
            std::size_t b = find_index(src.objects, at[1], "object");
            std::size_t in = find_index(src.hom_basis(a, b), e.at("input").get<std::string>(),
                                        "basis");
            auto v = coeff_vector(e.at("value"),
                                  tgt.hom_basis(f.object_map[a], f.object_map[b]), "functor value");
            for (std::size_t i = 0; i < v.size(); ++i) f.hom_map[a * n + b].at(i, in) = v[i];
        }
    return f;
}

namespace {

AlgebraTable read_algebra(const json& j) {
    AlgebraTable t;
    t.basis = j.at("basis").get<std::vector<std::string>>();
    std::size_t d = t.basis.size();
    t.unit = coeff_vector(j.at("unit"), t.basis, "unit");
    t.mult.assign(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d)));
    if (j.contains("mult"))
        for (const auto& e : j["mult"]) {
            std::size_t l = find_index(t.basis, e.at("left").get<std::string>(), "basis");
            std::size_t r = find_index(t.basis, e.at("right").get<std::string>(), "basis");
            t.mult[l][r] = coeff_vector(e.at("value"), t.basis, "product");
        }
    return t;
}

std::vector<int> parse_subset(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        auto comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(std::stoi(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

CoverSpec read_cover_spec(const json& j) {
    expect_kind(j, "cover");
    CoverSpec spec;
    spec.charts = j.at("charts").get<int>();
    for (auto it = j.at("algebras").begin(); it != j.at("algebras").end(); ++it)
        spec.algebras[parse_subset(it.key())] = read_algebra(it.value());
    if (j.contains("restrictions"))
        for (const auto& e : j["restrictions"]) {
            auto from = parse_subset(e.at("from").get<std::string>());
            auto to = parse_subset(e.at("to").get<std::string>());
            if (!spec.algebras.count(from) || !spec.algebras.count(to))
                throw input_error("cover restriction references unknown chart subset");
            const auto& af = spec.algebras[from];
            const auto& at = spec.algebras[to];
            QMatrix r(at.dim(), af.dim());
            for (const auto& m : e.at("map")) {
                std::size_t in = find_index(af.basis, m.at("input").get<std::string>(), "basis");
                auto v = coeff_vector(m.at("value"), at.basis, "restriction value");
                for (std::size_t i = 0; i < v.size(); ++i) r.at(i, in) = v[i];
            }
            spec.restrictions[{from, to}] = std::move(r);
        }
    return spec;
}

AInfCategory read_ainf_category(const json& j) {
    expect_kind(j, "ainf_category");
    AInfCategory a;
    a.objects = j.at("objects").get<std::vector<std::string>>();
    std::size_t n = a.n_objects();
    a.homs.resize(n * n);
    for (auto it = j.at("homs").begin(); it != j.at("homs").end(); ++it) {
        auto [x, y] = split_pair(it.key());
        auto& h = a.homs[a.pair_ix(find_index(a.objects, x, "object"),
                                   find_index(a.objects, y, "object"))];
        for (const auto& e : it.value())
            h.push_back({e.at("label").get<std::string>(), e.at("degree").get<int>()});
    }
    auto label_index = [&](std::size_t x, std::size_t y, const std::string& l) {
        const auto& h = a.homs[a.pair_ix(x, y)];
        for (std::size_t i = 0; i < h.size(); ++i)
            if (h[i].label == l) return i;
        throw input_error("unknown graded basis label: " + l);
    };
    if (j.contains("ops"))
        for (auto it = j["ops"].begin(); it != j["ops"].end(); ++it) {
            int k = std::stoi(it.key());
            for (const auto& e : it.value()) {
                auto at = e.at("at").get<std::vector<std::string>>();
                std::vector<std::size_t> tuple;
                for (const auto& o : at) tuple.push_back(find_index(a.objects, o, "object"));
                auto inputs = e.at("inputs").get<std::vector<std::string>>();
                if (static_cast<int>(inputs.size()) != k)
                    throw input_error("ainf op block has wrong number of inputs");
                std::vector<std::size_t> dims;
                std::size_t col = 0, stride = 1;
                for (int i = 0; i < k; ++i) {
                    std::size_t d = a.dim(tuple[i], tuple[i + 1]);
                    col += stride * label_index(tuple[i], tuple[i + 1], inputs[i]);
                    stride *= d;
                    dims.push_back(d);
                }
                std::size_t tgt = a.dim(tuple.front(), tuple.back());
                std::vector<Rational> v(tgt);
                for (auto vit = e.at("value").begin(); vit != e.at("value").end(); ++vit)
                    v[label_index(tuple.front(), tuple.back(), vit.key())] =
                        parse_rational(vit.value().get<std::string>());
                auto bit = a.ops[k].find(tuple);
                if (bit == a.ops[k].end()) {
                    std::size_t src = 1;
                    for (auto d : dims) src *= d;
                    bit = a.ops[k].emplace(tuple, QMatrix(tgt, src)).first;
                }
                for (std::size_t i = 0; i < tgt; ++i) bit->second.at(i, col) = v[i];
            }
        }
    return a;
}

json write_ainf_category(const AInfCategory& a) {
    json j;
    j["kind"] = "ainf_category";
    j["objects"] = a.objects;
    std::size_t n = a.n_objects();
    json homs = json::object();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (a.dim(x, y) == 0) continue;
            json h = json::array();
            for (const auto& e : a.homs[a.pair_ix(x, y)])
                h.push_back({{"label", e.label}, {"degree", e.degree}});
            homs[pair_key(a.objects[x], a.objects[y])] = h;
        }
    j["homs"] = homs;
    json ops = json::object();
    for (const auto& [k, blocks] : a.ops) {
        json arr = json::array();
        for (const auto& [tuple, block] : blocks) {
            std::vector<std::size_t> dims;
            for (std::size_t i = 0; i + 1 < tuple.size(); ++i)
                dims.push_back(a.dim(tuple[i], tuple[i + 1]));
            std::size_t src = 1;
            for (auto d : dims) src *= d;
            for (std::size_t s = 0; s < src; ++s) {
                json val = json::object();
                for (std::size_t i = 0; i < block.rows(); ++i)
                    if (block.at(i, s) != 0)
                        val[a.homs[a.pair_ix(tuple.front(), tuple.back())][i].label] =
                            rational_str(block.at(i, s));
                if (val.empty()) continue;
                json at = json::array(), inputs = json::array();
                for (auto o : tuple) at.push_back(a.objects[o]);
                std::size_t rem = s;
                for (std::size_t i = 0; i < dims.size(); ++i) {
                    inputs.push_back(
                        a.homs[a.pair_ix(tuple[i], tuple[i + 1])][rem % dims[i]].label);
                    rem /= dims[i];
                }
                arr.push_back({{"at", at}, {"inputs", inputs}, {"value", val}});
            }
        }
        ops[std::to_string(k)] = arr;
    }
    j["ops"] = ops;
    return j;
}

AInfFunctor read_ainf_functor(const json& j, const AInfCategory& src, const AInfCategory& tgt) {
    expect_kind(j, "ainf_functor");
    AInfFunctor f;
    std::size_t n = src.n_objects();
    f.object_map.resize(n);
    for (auto it = j.at("objects").begin(); it != j.at("objects").end(); ++it) {
        std::size_t a = 0;
        while (a < n && src.objects[a] != it.key()) ++a;
        if (a == n) throw input_error("unknown source object: " + it.key());
        std::size_t b = 0;
        while (b < tgt.n_objects() && tgt.objects[b] != it.value().get<std::string>()) ++b;
        if (b == tgt.n_objects())
            throw input_error("unknown target object: " + it.value().get<std::string>());
        f.object_map[a] = b;
    }
    auto src_label = [&](std::size_t x, std::size_t y, const std::string& l) {
        const auto& h = src.homs[src.pair_ix(x, y)];
        for (std::size_t i = 0; i < h.size(); ++i)
            if (h[i].label == l) return i;
        throw input_error("unknown source basis label: " + l);
    };
    auto tgt_label = [&](std::size_t x, std::size_t y, const std::string& l) {
        const auto& h = tgt.homs[tgt.pair_ix(x, y)];
        for (std::size_t i = 0; i < h.size(); ++i)
            if (h[i].label == l) return i;
        throw input_error("unknown target basis label: " + l);
    };
    if (j.contains("components"))
        for (auto it = j["components"].begin(); it != j["components"].end(); ++it) {
            int k = std::stoi(it.key());
            for (const auto& e : it.value()) {
                auto at = e.at("at").get<std::vector<std::string>>();
                std::vector<std::size_t> tuple;
                for (const auto& o : at) {
                    std::size_t a = 0;
                    while (a < n && src.objects[a] != o) ++a;
                    if (a == n) throw input_error("unknown source object: " + o);
                    tuple.push_back(a);
                }
                auto inputs = e.at("inputs").get<std::vector<std::string>>();
                std::vector<std::size_t> dims;
                std::size_t col = 0, stride = 1;
                for (int i = 0; i < k; ++i) {
                    std::size_t d = src.dim(tuple[i], tuple[i + 1]);
                    col += stride * src_label(tuple[i], tuple[i + 1], inputs[i]);
                    stride *= d;
                    dims.push_back(d);
                }
                std::size_t fa = f.object_map[tuple.front()], fb = f.object_map[tuple.back()];
                std::size_t tgt_dim = tgt.dim(fa, fb);
                auto bit = f.components[k].find(tuple);
                if (bit == f.components[k].end()) {
                    std::size_t srcdim = 1;
                    for (auto d : dims) srcdim *= d;
                    bit = f.components[k].emplace(tuple, QMatrix(tgt_dim, srcdim)).first;
                }
                for (auto vit = e.at("value").begin(); vit != e.at("value").end(); ++vit)
                    bit->second.at(tgt_label(fa, fb, vit.key()), col) =
                        parse_rational(vit.value().get<std::string>());
            }
        }
    return f;
}

json write_ainf_functor(const AInfCategory& src, const AInfCategory& tgt, const AInfFunctor& f) {
    json j;
    j["kind"] = "ainf_functor";
    json objs = json::object();
    for (std::size_t a = 0; a < src.n_objects(); ++a)
        objs[src.objects[a]] = tgt.objects[f.object_map[a]];
    j["objects"] = objs;
    json comps = json::object();
    for (const auto& [k, blocks] : f.components) {
        json arr = json::array();
        for (const auto& [tuple, block] : blocks) {
            std::vector<std::size_t> dims;
            for (std::size_t i = 0; i + 1 < tuple.size(); ++i)
                dims.push_back(src.dim(tuple[i], tuple[i + 1]));
            std::size_t srcdim = 1;
            for (auto d : dims) srcdim *= d;
            std::size_t fa = f.object_map[tuple.front()], fb = f.object_map[tuple.back()];
            for (std::size_t s = 0; s < srcdim; ++s) {
                json val = json::object();
                for (std::size_t i = 0; i < block.rows(); ++i)
                    if (block.at(i, s) != 0)
                        val[tgt.homs[tgt.pair_ix(fa, fb)][i].label] =
                            rational_str(block.at(i, s));
                if (val.empty()) continue;
                json at = json::array(), inputs = json::array();
                for (auto o : tuple) at.push_back(src.objects[o]);
                std::size_t rem = s;
                for (std::size_t i = 0; i < dims.size(); ++i) {
                    inputs.push_back(
                        src.homs[src.pair_ix(tuple[i], tuple[i + 1])][rem % dims[i]].label);
                    rem /= dims[i];
                }
                arr.push_back({{"at", at}, {"inputs", inputs}, {"value", val}});
            }
        }
        comps[std::to_string(k)] = arr;
    }
    j["components"] = comps;
    return j;
}

FinCategory stock_category(const std::string& name) {
    if (name == "dual_numbers") return dual_numbers_category();
    if (name == "star_q") return star_q();
    if (name == "a2") return a2_path_category();
    if (name == "two_cycle") return two_cycle_category();
    throw input_error("unknown stock category: " + name);
}

bool is_stock_category(const std::string& name) {
    return name == "dual_numbers" || name == "star_q" || name == "a2" || name == "two_cycle";
}

}  // namespace obstr::io
