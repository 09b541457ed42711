#pragma once

#include "obstr/hochschild.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace obstr {

struct GradedBasisElem {
    std::string label;
    int degree = 0;
};

// Minimal A-infinity category: graded homs, finitely many operations m_k of
// degree 2-k, m_1 = 0 throughout. Operation blocks are keyed by object tuples
// like Cochain blocks.
struct AInfCategory {
    std::vector<std::string> objects;
    std::vector<std::vector<GradedBasisElem>> homs;  // per pair a*n+b
    std::map<int, std::map<std::vector<std::size_t>, QMatrix>> ops;

    std::size_t n_objects() const { return objects.size(); }
    std::size_t pair_ix(std::size_t a, std::size_t b) const { return a * n_objects() + b; }
    std::size_t dim(std::size_t a, std::size_t b) const { return homs[pair_ix(a, b)].size(); }
    int deg(std::size_t a, std::size_t b, std::size_t i) const {
        return homs[pair_ix(a, b)][i].degree;
    }

    // column of m_k at a basis multi-index; zero when the block is absent
    std::vector<Rational> op(int k, const std::vector<std::size_t>& tuple,
                             const std::vector<std::size_t>& idx) const;
};

// A-infinity functor, components f_i of degree 1-i keyed by source tuples.
struct AInfFunctor {
    std::vector<std::size_t> object_map;
    std::map<int, std::map<std::vector<std::size_t>, QMatrix>> components;

    std::vector<Rational> component(const AInfCategory& src, const AInfCategory& tgt, int i,
                                    const std::vector<std::size_t>& tuple,
                                    const std::vector<std::size_t>& idx) const;
};

struct AInfViolation {
    int arity = 0;
    std::vector<std::size_t> tuple;
};

// A k-linear category viewed as an A-infinity category concentrated in degree 0.
AInfCategory ainf_from_linear(const FinCategory& c);

struct Deformation {
    AInfCategory category;
    AInfFunctor can;  // strict projection onto the undeformed part
    int mdeg = 0;
};

// Square-zero infinitesimal deformation along a degree-m cocycle (m >= 3):
// homs are hom (+) M placed in degree 2-m, m_2 extends composition by the two
// actions, m_m is eta on undeformed inputs.
Deformation deform(const FinCategory& c, const Bimodule& m, const Cochain& eta, int mdeg,
                   bool require_cocycle = true);

std::vector<AInfViolation> check_ainf_relations(const AInfCategory& a, int up_to);

AInfCategory tensor_with_klinear(const AInfCategory& a, const FinCategory& i);

std::vector<AInfViolation> check_functor_relations(const AInfCategory& src,
                                                   const AInfCategory& tgt, const AInfFunctor& f,
                                                   int up_to);

// strict inclusion of the undeformed part,  c -> deform(c, m, eta)
AInfFunctor strict_inclusion(const FinCategory& c, const Deformation& d);

// strict A-infinity functor from a linear functor between the underlying
// categories of two deformations (mapping both summands)
AInfFunctor strict_from_linear(const FinCategory& src, const FinCategory& tgt,
                               const LinearFunctor& f, const AInfCategory& a_src,
                               const AInfCategory& a_tgt);

// functor deform(eta) -> deform(mu) with f_1 = id and f_{m-1} = theta,
// for d theta = eta - mu (verified)
AInfFunctor nullhomotopy_functor(const FinCategory& c, const Bimodule& m, const Cochain& theta,
                                 const Cochain& eta, const Cochain& mu, int mdeg);

// composite g o f of A-infinity functors f: A -> B, g: B -> C
AInfFunctor compose_ainf(const AInfCategory& a, const AInfCategory& b, const AInfCategory& cc,
                         const AInfFunctor& f, const AInfFunctor& g, int up_to_arity);

struct TildeF {
    AInfFunctor functor;  // Y -> deform(X, M, eta)
    Deformation target;
};

// f~ = f o h o s: the strict split into the trivial deformation, the
// nullhomotopy trivialising f*eta, then f applied on both summands.
TildeF build_tilde_f(const FinCategory& y, const FinCategory& x, const LinearFunctor& f,
                     const Bimodule& m, const Cochain& eta, const Cochain& theta, int mdeg);

// Hochschild-cochain data of the arity-i functor-equation defect. The
// representative is valued in the degree-(2-i) graded piece of the target homs
// between the functor images, a bimodule over the source via m_2 and f_1.
struct ObstructionClass {
    Cochain representative;
    int arity = 0;
    int value_degree = 0;  // 2 - arity
    bool cocycle_certified = false;
    Bimodule value_bimodule;  // carrier of the representative, over the source
};

// obstruction of a partial functor with components f_1..f_{i-1} satisfying the
// equations below arity i (verified); source must be k-linear
ObstructionClass obstruction_class(const FinCategory& src, const AInfCategory& tgt,
                                   const AInfFunctor& partial, int arity);

struct ExtensionStep {
    Cochain delta;          // arity i-1 correction with d delta = obstruction
    AInfFunctor corrected;  // components with f_{i-1} replaced by f_{i-1} + delta
};

std::optional<ExtensionStep> extendable(const FinCategory& src, const AInfCategory& tgt,
                                        const AInfFunctor& partial, int arity);

}  // namespace obstr
