#pragma once

#include "obstr/qlinalg.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace obstr {

// A finite-dimensional unital associative Q-algebra given by structure constants.
// mult[i][j] holds the coefficients of e_i * e_j in the chosen basis.
struct AlgebraTable {
    std::vector<std::string> basis;
    std::vector<Rational> unit;
    std::vector<std::vector<std::vector<Rational>>> mult;

    std::size_t dim() const { return basis.size(); }
    std::vector<Rational> multiply(const std::vector<Rational>& x,
                                   const std::vector<Rational>& y) const;
};

struct ValidationReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

// Finite Q-linear category. Composition is stored in diagram order:
// compose(f: a->b, g: b->c) lands in hom(a,c).
class FinCategory {
  public:
    std::vector<std::string> objects;

    std::size_t n_objects() const { return objects.size(); }
    std::size_t dim(std::size_t a, std::size_t b) const { return hom_labels_[pair_ix(a, b)].size(); }
    const std::vector<std::string>& hom_basis(std::size_t a, std::size_t b) const {
        return hom_labels_[pair_ix(a, b)];
    }
    const std::vector<Rational>& identity(std::size_t a) const { return identity_[a]; }

    // coefficients of e_j;ab followed by e_k;bc, as a vector over hom(a,c)
    std::vector<Rational> compose_basis(std::size_t a, std::size_t b, std::size_t c,
                                        std::size_t j, std::size_t k) const;
    std::vector<Rational> compose(std::size_t a, std::size_t b, std::size_t c,
                                  const std::vector<Rational>& f,
                                  const std::vector<Rational>& g) const;

    std::size_t pair_ix(std::size_t a, std::size_t b) const { return a * n_objects() + b; }
    std::size_t triple_ix(std::size_t a, std::size_t b, std::size_t c) const {
        return (a * n_objects() + b) * n_objects() + c;
    }

    // construction API (builders below fill these in)
    void init(std::vector<std::string> objs);
    void set_hom(std::size_t a, std::size_t b, std::vector<std::string> labels);
    void set_identity(std::size_t a, std::vector<Rational> coeffs);
    void set_compose(std::size_t a, std::size_t b, std::size_t c, QMatrix tensor);
    void finish();  // allocates missing zero tensors

  private:
    std::vector<std::vector<std::string>> hom_labels_;
    std::vector<std::vector<Rational>> identity_;
    // per triple (a,b,c): matrix of size dim(a,c) x (dim(a,b)*dim(b,c)),
    // column j + dim(a,b)*k  <->  e_j;ab , e_k;bc
    std::vector<QMatrix> compose_;
};

// k-central bimodule over a FinCategory.
// act_source: hom(x',x) (X) M(x,y) -> M(x',y)   (written x.m in cochain formulas)
// act_target: M(x,y) (X) hom(y,y') -> M(x,y')   (written m.x)
class Bimodule {
  public:
    std::size_t dim(std::size_t x, std::size_t y) const { return labels_[pair_ix(x, y)].size(); }
    const std::vector<std::string>& basis(std::size_t x, std::size_t y) const {
        return labels_[pair_ix(x, y)];
    }
    int shift = 0;  // optional grading shift tag

    std::vector<Rational> act_source(std::size_t xp, std::size_t x, std::size_t y,
                                     const std::vector<Rational>& f,
                                     const std::vector<Rational>& m) const;
    std::vector<Rational> act_target(std::size_t x, std::size_t y, std::size_t yp,
                                     const std::vector<Rational>& m,
                                     const std::vector<Rational>& g) const;

    void init(std::size_t n_objects);
    void set_carrier(std::size_t x, std::size_t y, std::vector<std::string> labels);
    void set_act_source(std::size_t xp, std::size_t x, std::size_t y, QMatrix t);
    void set_act_target(std::size_t x, std::size_t y, std::size_t yp, QMatrix t);
    void finish();

    std::size_t pair_ix(std::size_t a, std::size_t b) const { return a * n_ + b; }
    std::size_t triple_ix(std::size_t a, std::size_t b, std::size_t c) const {
        return (a * n_ + b) * n_ + c;
    }
    std::size_t n_objects() const { return n_; }

  private:
    std::size_t n_ = 0;
    std::vector<std::vector<std::string>> labels_;
    // act_source_[x',x,y]: dim M(x',y) x (dim hom(x',x) * dim M(x,y)), column f + dh*m
    std::vector<QMatrix> act_source_;
    // act_target_[x,y,y']: dim M(x,y') x (dim M(x,y) * dim hom(y,y')), column m + dm*g
    std::vector<QMatrix> act_target_;
};

// Left module: action hom(x,y) (X) U(x) -> U(y).
class Module {
  public:
    std::size_t dim(std::size_t x) const { return labels_[x].size(); }
    const std::vector<std::string>& basis(std::size_t x) const { return labels_[x]; }

    std::vector<Rational> act(std::size_t x, std::size_t y, const std::vector<Rational>& f,
                              const std::vector<Rational>& u) const;

    void init(std::size_t n_objects);
    void set_carrier(std::size_t x, std::vector<std::string> labels);
    void set_action(std::size_t x, std::size_t y, QMatrix t);
    void finish();
    std::size_t n_objects() const { return n_; }

  private:
    std::size_t n_ = 0;
    std::vector<std::vector<std::string>> labels_;
    // action_[x,y]: dim U(y) x (dim hom(x,y) * dim U(x)), column f + dh*u
    std::vector<QMatrix> action_;
};

struct LinearFunctor {
    std::vector<std::size_t> object_map;
    // per source pair (a,b): matrix dim hom_tgt(Fa,Fb) x dim hom_src(a,b)
    std::vector<QMatrix> hom_map;

    const QMatrix& map(std::size_t a, std::size_t b, std::size_t n_src) const {
        return hom_map[a * n_src + b];
    }
};

// ---- builders ----------------------------------------------------------

FinCategory build_one_object_category(const AlgebraTable& table);

struct CoverSpec {
    int charts = 0;
    // key: nonempty subset of {1..charts} as a sorted list
    std::map<std::vector<int>, AlgebraTable> algebras;
    // restriction maps for strict inclusions I < J, as matrices dim O(U_J) x dim O(U_I)
    std::map<std::pair<std::vector<int>, std::vector<int>>, QMatrix> restrictions;
};

FinCategory build_cover_category(const CoverSpec& spec);

FinCategory tensor_category(const FinCategory& c, const FinCategory& d);

// C as a bimodule over itself.
Bimodule canonical_bimodule(const FinCategory& c);
Bimodule tensor_bimodule(const FinCategory& c, const Bimodule& m, const FinCategory& i);

Bimodule restrict_bimodule(const FinCategory& src, const FinCategory& tgt,
                           const LinearFunctor& f, const Bimodule& m);

Module representable_module(const FinCategory& c, std::size_t x0);

// ---- validation --------------------------------------------------------

ValidationReport validate_category(const FinCategory& c);
ValidationReport validate_bimodule(const FinCategory& c, const Bimodule& m);
ValidationReport validate_module(const FinCategory& c, const Module& u);
ValidationReport validate_functor(const FinCategory& src, const FinCategory& tgt,
                                  const LinearFunctor& f);

// ---- stock categories ----------------------------------------------------

AlgebraTable rationals_algebra();
AlgebraTable dual_numbers_algebra();
AlgebraTable truncated_polynomial_algebra(int nilpotency);  // Q[x]/x^k
FinCategory star_q();
FinCategory dual_numbers_category();
FinCategory a2_path_category();
// quiver a <-> b with loop eps = alpha.beta and relation beta.alpha = 0
FinCategory two_cycle_category();

}  // namespace obstr
