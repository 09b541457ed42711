#include "obstr/hodge.hpp"

#include <algorithm>
#include <sstream>

namespace obstr {

HypersurfaceSpec make_spec(int d, int N, int t) {
    if (d < 1) throw input_error("hypersurface degree must be >= 1");
    if (N < 2) throw input_error("ambient projective dimension must be >= 2");
    return {d, N, t};
}

Integer bott_cohomology(int N, int p, int q, int t) {
    if (p < 0 || p > N || q < 0 || q > N) return 0;
    if (t == 0 && p == q) return 1;
    if (q == 0) {
        if (t > p) return binomial(t + N - p, t) * binomial(t - 1, p);
        return 0;
    }
    if (q == N) {
        if (t < p - N) return binomial(-t + p, -t) * binomial(-t - 1, N - p);
        return 0;
    }
    return 0;
}

Integer jacobian_hilbert(int d, int N, long long m) {
    if (m < 0) return 0;
    Integer total = 0;
    for (int i = 0; i <= N + 1; ++i) {
        long long rem = m - static_cast<long long>(i) * (d - 1);
        if (rem < 0) break;
        Integer term = binomial(N + 1, i) * binomial(rem + N, N);
        total += (i % 2 == 0) ? term : -term;
    }
    return total;
}

Integer capped_monomial_count(int d, int N, long long m) {
    if (m < 0) return 0;
    long long cap = d - 2;
    if (cap < 0) return 0;
    std::vector<Integer> ways(m + 1);
    ways[0] = 1;
    for (int v = 0; v < N + 1; ++v) {
        std::vector<Integer> next(m + 1);
        for (long long deg = 0; deg <= m; ++deg) {
            if (ways[deg] == 0) continue;
            for (long long e = 0; e <= cap && deg + e <= m; ++e) next[deg + e] += ways[deg];
        }
        ways = std::move(next);
    }
    return ways[m];
}

namespace {

Integer h0_forms(int N, int p, int s) { return bott_cohomology(N, p, 0, s); }

// section-strip dimension with the Euler 1-form class at total degree d
Integer strip_dim(int d, int N, int j, int s, bool euler_class) {
    Integer v = h0_forms(N, j, s) - h0_forms(N, j, s - d);
    if (euler_class && j == 1 && s == d) v += 1;
    return v;
}

// h^0-part of the truncated restricted-forms complex (contributes to q = 0)
Integer part_sections(int d, int N, int p, int t) {
    Integer acc = 0;
    for (int j = 0; j <= p; ++j) {
        int s = t - (p - j) * d;
        Integer z = strip_dim(d, N, j, s, true);
        acc += ((p - j) % 2 == 0) ? z : -z;
    }
    return acc;
}

// Jacobian-ring class contributing to q = n - p
Integer part_jacobian(int d, int N, int p, int t) {
    return jacobian_hilbert(d, N, static_cast<long long>(p + 1) * d - t - (N + 1));
}

// top-row part (contributes to q = n); Serre-dual of a section strip
Integer part_top(int d, int N, int p, int t) {
    Integer acc = 0;
    int len = N - p;  // dual strip has offset N - p and twist d - t
    for (int j = 0; j <= len - 1; ++j) {
        int s = (d - t) - (len - j) * d;
        Integer z = strip_dim(d, N, j, s, false);
        acc += ((len - 1 - j) % 2 == 0) ? z : -z;
    }
    if (len >= 2 && t == -(len - 1) * d) acc += (len % 2 == 0) ? 1 : -1;
    return acc;
}

}  // namespace

Integer restricted_form_dim(int d, int N, int p, int q, int s) {
    auto rho = [&](int qq) -> Integer {
        if (qq == 0) return bott_cohomology(N, p, 0, s - d);
        if (qq == N) return bott_cohomology(N, p, N, s);
        return 0;
    };
    Integer t1 = bott_cohomology(N, p, q, s) - rho(q);
    Integer t2 = (q + 1 <= N) ? bott_cohomology(N, p, q + 1, s - d) - rho(q + 1) : 0;
    if (t1 < 0 || t2 < 0)
        throw validation_error("restricted_form_dim: inconsistent restriction sequence");
    return t1 + t2;
}

Integer twisted_hodge_number(const HypersurfaceSpec& spec, int p, int q) {
    int n = spec.n();
    if (p < 0 || p > n || q < 0 || q > n) return 0;
    if (spec.t == 0) {
        if (p + q != n) return p == q ? 1 : 0;
        Integer prim = jacobian_hilbert(spec.d, spec.N, static_cast<long long>(q + 1) * spec.d -
                                                            (spec.N + 1));
        return prim + (p == q ? 1 : 0);
    }
    Integer v = 0;
    if (q == 0) v += part_sections(spec.d, spec.N, p, spec.t);
    if (q == n - p) v += part_jacobian(spec.d, spec.N, p, spec.t);
    if (q == n) v += part_top(spec.d, spec.N, p, spec.t);
    if (v < 0) throw validation_error("twisted_hodge_number: negative dimension (internal)");
    return v;
}

Integer euler_char_twisted(const HypersurfaceSpec& spec, int p) {
    if (p < 0) return 0;
    Integer ambient = 0;
    for (int q = 0; q <= spec.N; ++q) {
        Integer b = bott_cohomology(spec.N, p, q, spec.t);
        ambient += (q % 2 == 0) ? b : -b;
    }
    Integer ambient_shift = 0;
    for (int q = 0; q <= spec.N; ++q) {
        Integer b = bott_cohomology(spec.N, p, q, spec.t - spec.d);
        ambient_shift += (q % 2 == 0) ? b : -b;
    }
    HypersurfaceSpec lower{spec.d, spec.N, spec.t - spec.d};
    return ambient - ambient_shift - euler_char_twisted(lower, p - 1);
}

std::vector<Integer> jacobian_middle_row(int d, int N) {
    if (d < 2) throw input_error("jacobian_middle_row: degree must be >= 2");
    int n = N - 1;
    std::vector<Integer> row;
    for (int q = 0; q <= n; ++q) {
        Integer prim = capped_monomial_count(d, N, static_cast<long long>(q + 1) * d - (N + 1));
        if (n % 2 == 0 && q == n / 2) prim += 1;
        row.push_back(prim);
    }
    return row;
}

Diamond diamond(const HypersurfaceSpec& spec) {
    Diamond out;
    out.spec = spec;
    int n = spec.n();
    out.h.assign(n + 1, std::vector<Integer>(n + 1));
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) out.h[p][q] = twisted_hodge_number(spec, p, q);
    return out;
}

std::string render_diamond(const Diamond& d) {
    int n = d.spec.n();
    std::vector<std::string> rows;
    std::size_t width = 1;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) width = std::max(width, d.at(p, q).str().size());
    std::size_t line_width = (n + 1) * (width + 2);
    for (int s = 2 * n; s >= 0; --s) {
        std::ostringstream line;
        bool first = true;
        for (int p = std::min(n, s); p >= std::max(0, s - n); --p) {
            int q = s - p;
            std::string cell = d.at(p, q).str();
            if (!first) line << "  ";
            first = false;
            std::size_t pad = width - cell.size();
            line << std::string(pad / 2, ' ') << cell << std::string(pad - pad / 2, ' ');
        }
        std::string text = line.str();
        std::size_t margin = text.size() < line_width ? (line_width - text.size()) / 2 : 0;
        rows.push_back(std::string(margin, ' ') + text);
    }
    std::string out;
    for (auto& r : rows) {
        while (!r.empty() && r.back() == ' ') r.pop_back();
        out += r;
        out += "\n";
    }
    return out;
}

Integer hkr_hh_dim(const HypersurfaceSpec& spec, int k) {
    int n = spec.n();
    Integer total = 0;
    HypersurfaceSpec shifted{spec.d, spec.N, spec.t + (spec.N + 1 - spec.d)};
    for (int p = 0; p <= n; ++p) {
        int q = k - p;
        if (q < 0 || q > n) continue;
        total += twisted_hodge_number(shifted, n - p, q);
    }
    return total;
}

namespace {

// HKR summand h^j(X, Lambda^i T_X (X) O(tau))
Integer hkr_piece(const HypersurfaceSpec& spec, int i, int j, int tau) {
    int n = spec.n();
    if (i < 0 || i > n || j < 0 || j > n) return 0;
    HypersurfaceSpec s{spec.d, spec.N, tau + (spec.N + 1 - spec.d)};
    return twisted_hodge_number(s, n - i, j);
}

// h^j(X, Lambda^i T_{P^N}|_X (X) O(tau))
Integer ambient_piece(const HypersurfaceSpec& spec, int i, int j, int tau) {
    if (i < 0 || i > spec.N) return 0;
    return restricted_form_dim(spec.d, spec.N, spec.N - i, j, tau + spec.N + 1);
}

}  // namespace

Integer kernel_dim(const HypersurfaceSpec& spec, int m) {
    if (m < 0) throw input_error("kernel_dim: negative cohomological degree");
    int n = spec.n();
    int t = spec.t;
    Integer total = 0;
    for (int i = std::max(1, m - n); i <= std::min(n, m); ++i) {
        int j_target = m - i;
        // walk the long exact sequence of
        //   0 -> Lambda^i T_X -> Lambda^i T_P|_X -> Lambda^{i-1} T_X (d) -> 0
        // bookkeeping the connecting ranks degree by degree
        Integer ker_alpha = 0, rank_pi = 0;
        for (int jj = 0; jj <= j_target; ++jj) {
            if (jj > 0) {
                ker_alpha = hkr_piece(spec, i - 1, jj - 1, t + spec.d) - rank_pi;
            } else {
                ker_alpha = 0;
            }
            Integer sigma = hkr_piece(spec, i, jj, t);
            if (ker_alpha < 0 || ker_alpha > sigma)
                throw rule_not_applicable("kernel_dim: exact-sequence bookkeeping became "
                                          "inconsistent at piece (" +
                                          std::to_string(i) + "," + std::to_string(jj) + ")");
            if (jj == j_target) {
                total += ker_alpha;
                break;
            }
            Integer rank_alpha = sigma - ker_alpha;
            Integer r = ambient_piece(spec, i, jj, t);
            rank_pi = r - rank_alpha;
            if (rank_pi < 0)
                throw rule_not_applicable("kernel_dim: exact-sequence bookkeeping became "
                                          "inconsistent at piece (" +
                                          std::to_string(i) + "," + std::to_string(jj) + ")");
        }
    }
    return total;
}

std::vector<CatalogEntry> catalog_non_fm(int d, int N, int t_min, int t_max, int m_min,
                                         int m_max) {
    if (t_min > t_max || m_min > m_max) throw input_error("catalog: empty or inverted range");
    int n = N - 1;
    std::vector<CatalogEntry> out;
    for (int t = t_min; t <= t_max; ++t)
        for (int m = m_min; m <= m_max; ++m) {
            if (m < n + 3) continue;  // construction needs m >= dim X + 3
            Integer k = kernel_dim(make_spec(d, N, t), m);
            if (k > 0) out.push_back({t, m, k});
        }
    return out;
}

}  // namespace obstr
