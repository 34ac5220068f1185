#pragma once

#include "l1x/spectral.hpp"

namespace l1x {

// A finitely supported scalar sequence on G, i.e. an element of l1(G).
using ScalarSeq = std::map<std::int64_t, cplx>;

double seq_l1_norm(const ScalarSeq& r);

struct TensorSummand {
  ScalarSeq weights;  // r_i
  AlgElement factor;  // b_i
};

// An element of l1(G) (x) B kept in the canonical form sum_g d_g (x) b_g,
// together with the finite representation it was built from. The canonical
// form is the source of truth for equality and for the norm: under the
// identification with the trivial-action crossed product, the projective
// norm is attained there and equals sum_g ||b_g||.
class TensorElement {
 public:
  TensorElement(GroupRef group, AlgebraContext ctx) : group_(std::move(group)), ctx_(std::move(ctx)) {}

  const GroupRef& group() const { return group_; }
  const AlgebraContext& context() const { return ctx_; }
  const std::map<std::int64_t, AlgElement>& canonical() const { return canonical_; }
  const std::vector<TensorSummand>& summands() const { return summands_; }

  double canonical_norm() const;      // sum_g ||b_g||
  double summand_norm_bound() const;  // sum_i ||r_i||_1 ||b_i||, an upper witness

  void set_canonical(std::int64_t g, AlgElement v);  // drops exact zeros

  friend TensorElement canonicalize_tensor(GroupRef group, AlgebraContext ctx,
                                           std::vector<TensorSummand> summands);

 private:
  GroupRef group_;
  AlgebraContext ctx_;
  std::vector<TensorSummand> summands_;
  std::map<std::int64_t, AlgElement> canonical_;
};

// Collapses sum_i r_i (x) b_i to canonical form, b_g = sum_i r_i(g) b_i.
TensorElement canonicalize_tensor(GroupRef group, AlgebraContext ctx,
                                  std::vector<TensorSummand> summands);

// Canonical identification of the trivial-action crossed product with the
// tensor product: sum_g b_g v_g <-> sum_g d_g (x) b_g. Norm preserved exactly
// (both read sum_g ||b_g||).
TensorElement to_tensor(const L1Element& x);                       // requires trivial action
L1Element from_tensor(const TensorElement& t, SystemPtr sys = {});  // builds the system if omitted
TensorElement tensor_involute(const TensorElement& t);

// Inner-action trivialization: phi(sum b_g delta_g) = sum (b_g u_g) v_g, an
// isometric *-isomorphism onto the trivial-action sibling.
L1Element trivialize_inner(const L1Element& x, SystemPtr target = {});
// inverse map: c v_g -> (c u_g*) delta_g
L1Element trivialize_inner_inverse(const L1Element& y, SystemPtr inner_sys);

// The covariant pair on l2(G, C^D): lambda_g the left translations and pi the
// coefficient representation (pi(a) xi)(t) = alpha_{t^-1}(a) xi(t). Hosts the
// inner action Ad lambda on the full matrix algebra over l2(G, C^D).
class HatSystem {
 public:
  const SystemPtr& base() const { return base_; }
  const SystemPtr& hat() const { return hat_; }
  const SystemPtr& hat_trivial() const { return hat_trivial_; }  // trivial-action sibling
  const std::vector<Matrix>& lambdas() const { return lambdas_; }
  int hat_dim() const { return hat_dim_; }

  Matrix pi_of(const AlgElement& a) const;  // block diagonal alpha_{t^-1}(a)

  // worst construction-time defects, for reports
  double lambda_defect() const { return lambda_defect_; }
  double pi_hom_defect() const { return pi_hom_defect_; }
  double pi_star_defect() const { return pi_star_defect_; }
  double pi_isometry_defect() const { return pi_isometry_defect_; }
  double equivariance_defect() const { return equivariance_defect_; }

  friend HatSystem build_hat_system(SystemPtr base);

 private:
  HatSystem() = default;
  SystemPtr base_, hat_, hat_trivial_;
  std::vector<Matrix> lambdas_;
  int hat_dim_ = 0;
  double lambda_defect_ = 0, pi_hom_defect_ = 0, pi_star_defect_ = 0, pi_isometry_defect_ = 0,
         equivariance_defect_ = 0;
};

// Builds lambda and pi and verifies, on a full coefficient basis and all
// group elements: lambda unitary with lambda_g lambda_h = lambda_{gh} exact,
// pi a unital *-homomorphism (1e-12), pi isometric (1e-10), and the
// equivariance lambda_g pi(a) lambda_g* = pi(alpha_g(a)) (1e-12). Throws
// std::runtime_error naming the violated invariant otherwise.
HatSystem build_hat_system(SystemPtr base);

// rho: a delta_g -> pi(a) delta_g, an isometric *-homomorphism into the hat
// system's crossed product.
L1Element embed_regular(const HatSystem& hat, const L1Element& x);

// to_tensor(trivialize_inner(embed_regular(x))): the full embedding chain
// into l1(G) (x) A^.
TensorElement composite_embedding(const HatSystem& hat, const L1Element& x);

}  // namespace l1x
