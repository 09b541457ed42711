#pragma once

#include "obstr/qlinalg.hpp"

#include <string>
#include <vector>

namespace obstr {

// kernel rule outside its validated domain; never silently zero
struct rule_not_applicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// smooth degree-d hypersurface X in P^N with twist t; dim X = n = N-1
struct HypersurfaceSpec {
    int d = 0;
    int N = 0;
    int t = 0;
    int n() const { return N - 1; }
};

HypersurfaceSpec make_spec(int d, int N, int t);

// dim H^q(P^N, Omega^p(t)), the classical four-case closed form
Integer bott_cohomology(int N, int p, int q, int t);

// Hilbert function of S/(partials) for a generic degree-d form: monomials of
// degree m in N+1 variables with every exponent <= d-2, by inclusion-exclusion
Integer jacobian_hilbert(int d, int N, long long m);

// the same count by direct dynamic programming; independent oracle
Integer capped_monomial_count(int d, int N, long long m);

// dim H^q(X, Omega^p_P(s)|_X) from the twisted restriction sequence
Integer restricted_form_dim(int d, int N, int p, int q, int s);

Integer twisted_hodge_number(const HypersurfaceSpec& spec, int p, int q);

Integer euler_char_twisted(const HypersurfaceSpec& spec, int p);

// total middle-row Hodge numbers h^{n-q,q} for t = 0, q = 0..n
std::vector<Integer> jacobian_middle_row(int d, int N);

struct Diamond {
    HypersurfaceSpec spec;
    std::vector<std::vector<Integer>> h;  // h[p][q], 0 <= p,q <= n

    const Integer& at(int p, int q) const { return h[p][q]; }
};

Diamond diamond(const HypersurfaceSpec& spec);

// centered text rendering, 2n+1 rows, row p+q = s with p decreasing left to right
std::string render_diamond(const Diamond& d);

// dim HH^k(X, O(t)) via the HKR decomposition
Integer hkr_hh_dim(const HypersurfaceSpec& spec, int k);

// dim ker(f_*: HH^m(X, O(t)) -> HH^m(P^{n+1}, f_* O(t))) for the inclusion of
// the hypersurface, computed piecewise on the HKR decomposition through the
// normal-bundle sequences
Integer kernel_dim(const HypersurfaceSpec& spec, int m);

struct CatalogEntry {
    int t = 0;
    int m = 0;
    Integer dim;
};

std::vector<CatalogEntry> catalog_non_fm(int d, int N, int t_min, int t_max, int m_min, int m_max);

}  // namespace obstr
