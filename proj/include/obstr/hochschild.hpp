#pragma once

#include "obstr/fincat.hpp"

#include <map>
#include <optional>

namespace obstr {

// Hochschild n-cochain with values in a bimodule M: for every object tuple
// (x0,...,xn) a multilinear map hom(x0,x1) (X) ... (X) hom(x_{n-1},xn) -> M(x0,xn).
// Blocks are matrices dim M(x0,xn) x prod(hom dims), source multi-index with the
// first input fastest. Absent blocks are zero.
struct Cochain {
    int degree = 0;
    int shift = 0;
    std::map<std::vector<std::size_t>, QMatrix> blocks;

    bool is_zero() const;
    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain scaled(const Rational& c) const;
};

struct CohomologyClass {
    Cochain representative;
    bool cocycle_certified = false;
};

std::size_t tuple_source_dim(const FinCategory& c, const std::vector<std::size_t>& tuple);

// evaluate on a basis multi-index; returns target coefficient vector
std::vector<Rational> cochain_eval(const FinCategory& c, const Bimodule& m, const Cochain& x,
                                   const std::vector<std::size_t>& tuple,
                                   const std::vector<std::size_t>& idx);

Cochain hochschild_differential(const FinCategory& c, const Bimodule& m, const Cochain& x);

bool is_cocycle(const FinCategory& c, const Bimodule& m, const Cochain& x);

// dim CC^n and the matrix of d: CC^n -> CC^{n+1}
std::size_t cc_dim(const FinCategory& c, const Bimodule& m, int n);
QMatrix differential_matrix(const FinCategory& c, const Bimodule& m, int n);

std::vector<Rational> cochain_flatten(const FinCategory& c, const Bimodule& m, const Cochain& x);
Cochain cochain_unflatten(const FinCategory& c, const Bimodule& m, int n,
                          const std::vector<Rational>& v);

std::size_t hh_dimension(const FinCategory& c, const Bimodule& m, int n);

// some theta with d theta = eta - mu when the classes agree; throws on non-cocycles
std::optional<Cochain> cohomologous_witness(const FinCategory& c, const Bimodule& m,
                                            const Cochain& eta, const Cochain& mu);

// [f, m2] with m2 the composition of c; equals -d f in the pinned convention
Cochain gerstenhaber_bracket_composition(const FinCategory& c, const Bimodule& m, const Cochain& f);

// full Gerstenhaber bracket of two cochains valued in the canonical bimodule
Cochain gerstenhaber_bracket(const FinCategory& c, const Cochain& f, const Cochain& g);

// eta |-> eta u Id on the tensor category c (X) i with values m (X) i
Cochain cup_identity_extend(const FinCategory& c, const Bimodule& m, const Cochain& eta,
                            const FinCategory& i);

// pullback along a linear functor: (f* eta)(y1..yn) = eta(F y1,...,F yn)
Cochain pushforward_cocycle(const FinCategory& src, const FinCategory& tgt,
                            const LinearFunctor& f, const Bimodule& m, const Cochain& eta);

// ---- module cochain complexes (bar-resolution Ext) -----------------------

// n-cochain on a module U with values in a module H: blocks keyed by object
// tuples (x0..xn), matrices dim H(xn) x (dim U(x0) * prod hom dims); the U-index
// is fastest, then the hom inputs in order.
struct ModuleCochain {
    int degree = 0;
    std::map<std::vector<std::size_t>, QMatrix> blocks;

    bool is_zero() const;
    ModuleCochain operator-(const ModuleCochain& o) const;
};

ModuleCochain module_differential(const FinCategory& c, const Module& u, const Module& h,
                                  const ModuleCochain& phi);
std::size_t module_cc_dim(const FinCategory& c, const Module& u, const Module& h, int n);
QMatrix module_differential_matrix(const FinCategory& c, const Module& u, const Module& h, int n);
std::vector<Rational> module_cochain_flatten(const FinCategory& c, const Module& u,
                                             const Module& h, const ModuleCochain& x);
ModuleCochain module_cochain_unflatten(const FinCategory& c, const Module& u, const Module& h,
                                       int n, const std::vector<Rational>& v);

// M (x)_C G as a left module, with the projection onto chosen quotient coordinates
struct TensorModule {
    Module mod;
    // per object y: projection from the ambient (+)_x M(x,y)(x)G(x); ambient index
    // m + dimM(x,y)*u within the x-slot, slots ordered by x with offsets.
    std::vector<QMatrix> projection;
    std::vector<std::vector<std::size_t>> slot_offset;  // per y: offset of slot x
};

TensorModule tensor_module(const FinCategory& c, const Bimodule& m, const Module& g);

// Hom_{C-mod}(M(x,-), G) as a left module; basis vectors are recorded as columns
// in the ambient coordinates (+)_y Hom(M(x,y), G(y)).
struct HomModule {
    Module mod;
    std::vector<QMatrix> basis_embedding;               // per x: ambient_dim x dim
    std::vector<std::vector<std::size_t>> slot_offset;  // per x: offset of slot y
};

HomModule hom_module(const FinCategory& c, const Bimodule& m, const Module& g);

struct CharacteristicClass {
    ModuleCochain representative;
    bool cocycle_certified = false;
    bool vanishes = false;
    std::optional<ModuleCochain> witness;
};

// Yoneda class c_G(eta) in Ext^n(G, M (x) G), or its dual c*_G(eta) in
// Ext^n(Hom(M,G), G); the verdict solves the coboundary equation exactly.
CharacteristicClass characteristic_class(const FinCategory& c, const Bimodule& m, const Module& g,
                                         const Cochain& eta, bool dual);

struct LiftWitness {
    ModuleCochain lambda;  // solves d lambda = c_U(eta)
    int shift = 0;
};

// first-order lifting equation for a module along a degree-m deformation class
std::optional<LiftWitness> module_lift_witness(const FinCategory& c, const Bimodule& m,
                                               const Module& u, const Cochain& eta, int shift);

}  // namespace obstr
