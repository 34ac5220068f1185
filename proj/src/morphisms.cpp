#include "l1x/morphisms.hpp"

#include <stdexcept>

namespace l1x {

double seq_l1_norm(const ScalarSeq& r) {
  double s = 0;
  for (const auto& [g, c] : r) s += std::abs(c);
  return s;
}

double TensorElement::canonical_norm() const {
  double s = 0;
  for (const auto& [g, v] : canonical_) s += operator_norm(v);
  return s;
}

double TensorElement::summand_norm_bound() const {
  double s = 0;
  for (const auto& t : summands_) s += seq_l1_norm(t.weights) * operator_norm(t.factor);
  return s;
}

void TensorElement::set_canonical(std::int64_t g, AlgElement v) {
  if (!group_.contains(g)) throw std::out_of_range("TensorElement: element not in group");
  if (!(v.context() == ctx_)) throw std::invalid_argument("TensorElement: context mismatch");
  if (operator_norm(v) > 0.0)
    canonical_.insert_or_assign(g, std::move(v));
  else
    canonical_.erase(g);
}

TensorElement canonicalize_tensor(GroupRef group, AlgebraContext ctx,
                                  std::vector<TensorSummand> summands) {
  TensorElement t(group, ctx);
  std::map<std::int64_t, AlgElement> acc;
  for (const auto& s : summands) {
    if (!(s.factor.context() == ctx))
      throw std::invalid_argument("canonicalize_tensor: summand context mismatch");
    for (const auto& [g, c] : s.weights) {
      if (!group.contains(g)) throw std::out_of_range("canonicalize_tensor: element not in group");
      AlgElement term = alg_scale(c, s.factor);
      auto it = acc.find(g);
      if (it == acc.end())
        acc.emplace(g, std::move(term));
      else
        it->second = alg_add(it->second, term);
    }
  }
  for (auto& [g, v] : acc) t.set_canonical(g, std::move(v));
  t.summands_ = std::move(summands);
  return t;
}

TensorElement to_tensor(const L1Element& x) {
  const auto& sys = *x.system();
  if (sys.action.kind() != ActionKind::trivial)
    throw std::invalid_argument("to_tensor: defined on trivial-action systems only");
  std::vector<TensorSummand> summands;
  summands.reserve(x.support().size());
  for (const auto& [g, v] : x.support())
    summands.push_back(TensorSummand{ScalarSeq{{g, cplx(1.0, 0.0)}}, v});
  return canonicalize_tensor(sys.group, sys.context, std::move(summands));
}

L1Element from_tensor(const TensorElement& t, SystemPtr sys) {
  if (!sys) sys = make_system(t.group(), t.context(), StarAction::trivial(t.group()));
  if (!(sys->group == t.group()) || !(sys->context == t.context()) ||
      sys->action.kind() != ActionKind::trivial)
    throw std::invalid_argument("from_tensor: target system does not match tensor shape");
  L1Element x(std::move(sys));
  for (const auto& [g, v] : t.canonical()) x.set(g, v);
  return x;
}

TensorElement tensor_involute(const TensorElement& t) {
  // (d_g (x) b)* = d_{g^-1} (x) b*
  std::vector<TensorSummand> summands;
  summands.reserve(t.canonical().size());
  for (const auto& [g, v] : t.canonical())
    summands.push_back(TensorSummand{ScalarSeq{{t.group().inv(g), cplx(1.0, 0.0)}}, alg_adjoint(v)});
  return canonicalize_tensor(t.group(), t.context(), std::move(summands));
}

L1Element trivialize_inner(const L1Element& x, SystemPtr target) {
  const auto& sys = *x.system();
  if (sys.action.kind() != ActionKind::inner_unitary)
    throw std::invalid_argument("trivialize_inner: action is not inner");
  if (!target) target = trivial_sibling(x.system());
  const auto& u = sys.action.unitaries();
  L1Element out(std::move(target));
  for (const auto& [g, v] : x.support())
    out.set(g, AlgElement(v.context(), v.matrix() * u[static_cast<std::size_t>(g)]));
  return out;
}

L1Element trivialize_inner_inverse(const L1Element& y, SystemPtr inner_sys) {
  if (y.system()->action.kind() != ActionKind::trivial)
    throw std::invalid_argument("trivialize_inner_inverse: input must live in the trivial sibling");
  if (inner_sys->action.kind() != ActionKind::inner_unitary)
    throw std::invalid_argument("trivialize_inner_inverse: target action is not inner");
  const auto& u = inner_sys->action.unitaries();
  L1Element out(std::move(inner_sys));
  for (const auto& [g, v] : y.support())
    out.set(g, AlgElement(v.context(), v.matrix() * u[static_cast<std::size_t>(g)].adjoint()));
  return out;
}

Matrix HatSystem::pi_of(const AlgElement& a) const {
  const auto& sys = *base_;
  const int n = sys.group.order();
  const int d = sys.context.dim();
  Matrix out = Matrix::Zero(hat_dim_, hat_dim_);
  for (int t = 0; t < n; ++t) {
    const std::int64_t tinv = sys.group.inv(t);
    out.block(t * d, t * d, d, d) = apply_action(sys.action, tinv, a).matrix();
  }
  return out;
}

HatSystem build_hat_system(SystemPtr base) {
  if (base->group.is_integer())
    throw std::invalid_argument("build_hat_system: needs a finite group");
  const auto& sys = *base;
  const int n = sys.group.order();
  const int d = sys.context.dim();
  const long long hat_dim = 1LL * n * d;
  if (hat_dim > kMaxGroupOrder * 64LL)
    throw ResourceError("build_hat_system: l2(G, C^D) dimension too large");

  HatSystem hs;
  hs.base_ = base;
  hs.hat_dim_ = static_cast<int>(hat_dim);

  // lambda_g: (lambda_g xi)(t) = xi(g^-1 t), a block permutation
  hs.lambdas_.reserve(n);
  for (int g = 0; g < n; ++g) {
    Matrix L = Matrix::Zero(hat_dim, hat_dim);
    for (int t = 0; t < n; ++t) {
      const int src = static_cast<int>(sys.group.mul(sys.group.inv(g), t));
      for (int i = 0; i < d; ++i) L(t * d + i, src * d + i) = 1.0;
    }
    hs.lambdas_.push_back(std::move(L));
  }

  // exact checks on lambda
  for (int g = 0; g < n; ++g) {
    Matrix prod = hs.lambdas_[g] * hs.lambdas_[g].adjoint();
    const double defect = operator_norm(Matrix(prod - Matrix::Identity(hat_dim, hat_dim)));
    hs.lambda_defect_ = std::max(hs.lambda_defect_, defect);
    if (defect != 0.0)
      throw std::runtime_error("build_hat_system: lambda_" + std::to_string(g) + " not unitary");
    for (int h = 0; h < n; ++h) {
      const int gh = static_cast<int>(sys.group.mul(g, h));
      if (!mat_equal(hs.lambdas_[g] * hs.lambdas_[h], hs.lambdas_[gh]))
        throw std::runtime_error("build_hat_system: lambda_g lambda_h != lambda_gh at (" +
                                 std::to_string(g) + "," + std::to_string(h) + ")");
    }
  }

  // pi is a unital *-homomorphism, isometric, and equivariant for the
  // covariant pair: lambda_g pi(a) lambda_g* = pi(alpha_g(a))
  const auto basis = context_basis(sys.context);
  const Matrix id_hat = Matrix::Identity(hat_dim, hat_dim);
  if (operator_norm(Matrix(hs.pi_of(AlgElement::identity(sys.context)) - id_hat)) > 1e-12)
    throw std::runtime_error("build_hat_system: pi(1) != I");

  for (const auto& e1 : basis) {
    const Matrix p1 = hs.pi_of(e1);
    hs.pi_star_defect_ = std::max(
        hs.pi_star_defect_, operator_norm(Matrix(hs.pi_of(alg_adjoint(e1)) - p1.adjoint())));
    hs.pi_isometry_defect_ = std::max(
        hs.pi_isometry_defect_, std::abs(operator_norm(p1) - operator_norm(e1)));
    for (const auto& e2 : basis) {
      const Matrix lhs = hs.pi_of(alg_mul(e1, e2));
      hs.pi_hom_defect_ =
          std::max(hs.pi_hom_defect_, operator_norm(Matrix(lhs - p1 * hs.pi_of(e2))));
    }
    for (int g = 0; g < n; ++g) {
      const Matrix conj = hs.lambdas_[g] * p1 * hs.lambdas_[g].adjoint();
      const Matrix target = hs.pi_of(apply_action(sys.action, g, e1));
      hs.equivariance_defect_ =
          std::max(hs.equivariance_defect_, operator_norm(Matrix(conj - target)));
    }
  }
  if (hs.pi_hom_defect_ > 1e-12)
    throw std::runtime_error("build_hat_system: pi is not multiplicative");
  if (hs.pi_star_defect_ > 1e-12)
    throw std::runtime_error("build_hat_system: pi does not preserve *");
  if (hs.pi_isometry_defect_ > 1e-10)
    throw std::runtime_error("build_hat_system: pi is not isometric");
  if (hs.equivariance_defect_ > 1e-12)
    throw std::runtime_error("build_hat_system: equivariance fails");

  auto hat_ctx = AlgebraContext::full_matrix(hs.hat_dim_);
  auto hat_action = StarAction::inner_unitary(sys.group, hs.lambdas_);
  hs.hat_ = make_system(sys.group, std::move(hat_ctx), std::move(hat_action));
  hs.hat_trivial_ = trivial_sibling(hs.hat_);
  return hs;
}

L1Element embed_regular(const HatSystem& hat, const L1Element& x) {
  if (!(*x.system() == *hat.base()))
    throw std::invalid_argument("embed_regular: element does not live in the hat's base system");
  L1Element out(hat.hat());
  for (const auto& [g, v] : x.support())
    out.set(g, AlgElement(hat.hat()->context, hat.pi_of(v)));
  return out;
}

TensorElement composite_embedding(const HatSystem& hat, const L1Element& x) {
  return to_tensor(trivialize_inner(embed_regular(hat, x), hat.hat_trivial()));
}

}  // namespace l1x
