#include "l1x/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <numeric>
#include <stdexcept>

namespace l1x {

namespace {

void require_same_context(const AlgElement& a, const AlgElement& b, const char* op) {
  if (!a.same_context(b))
    throw std::invalid_argument(std::string(op) + ": context mismatch");
}

bool is_permutation(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::int64_t lcm_of_cycles(const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  std::vector<char> done(n, 0);
  std::int64_t period = 1;
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::int64_t len = 0;
    for (int j = i; !done[j]; j = sigma[j]) {
      done[j] = 1;
      ++len;
    }
    const std::int64_t step = period / std::gcd(period, len);
    if (step > 1000000000000000LL / len)
      throw std::invalid_argument("sigma order overflows the supported range");
    period = step * len;
  }
  return period;
}

}  // namespace

namespace {
// dense desk-scale guard, matching the spectral dimension cap
constexpr int kMaxContextDim = 4096;
}  // namespace

AlgebraContext AlgebraContext::full_matrix(int d) {
  if (d < 1) throw std::invalid_argument("full_matrix: dimension must be positive");
  if (d > kMaxContextDim) throw std::invalid_argument("full_matrix: dimension exceeds desk-scale cap");
  return AlgebraContext(ContextKind::full_matrix, d, {});
}

AlgebraContext AlgebraContext::diagonal(int n, std::vector<std::string> labels) {
  if (n < 1) throw std::invalid_argument("diagonal: point count must be positive");
  if (n > kMaxContextDim) throw std::invalid_argument("diagonal: point count exceeds desk-scale cap");
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw std::invalid_argument("diagonal: label count does not match point count");
  if (labels.empty()) {
    labels.reserve(n);
    for (int i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  }
  return AlgebraContext(ContextKind::diagonal, n, std::move(labels));
}

std::string AlgebraContext::name() const {
  return is_diagonal() ? "C(X), |X|=" + std::to_string(dim_)
                       : "M_" + std::to_string(dim_);
}

AlgElement::AlgElement(AlgebraContext ctx, Matrix m) : ctx_(std::move(ctx)), mat_(std::move(m)) {
  if (mat_.rows() != ctx_.dim() || mat_.cols() != ctx_.dim())
    throw std::invalid_argument("AlgElement: matrix shape does not match context");
  if (ctx_.is_diagonal()) {
    for (int i = 0; i < mat_.rows(); ++i)
      for (int j = 0; j < mat_.cols(); ++j)
        if (i != j && mat_(i, j) != cplx(0.0, 0.0))
          throw std::invalid_argument("AlgElement: nonzero off-diagonal entry in diagonal context");
  }
}

AlgElement AlgElement::zero(const AlgebraContext& ctx) {
  return AlgElement(ctx, Matrix::Zero(ctx.dim(), ctx.dim()));
}

AlgElement AlgElement::identity(const AlgebraContext& ctx) {
  return AlgElement(ctx, Matrix::Identity(ctx.dim(), ctx.dim()));
}

AlgElement AlgElement::from_diagonal(const AlgebraContext& ctx, const Vector& d) {
  if (d.size() != ctx.dim())
    throw std::invalid_argument("from_diagonal: length does not match context");
  Matrix m = Matrix::Zero(ctx.dim(), ctx.dim());
  m.diagonal() = d;
  return AlgElement(ctx, std::move(m));
}

AlgElement alg_mul(const AlgElement& a, const AlgElement& b) {
  require_same_context(a, b, "alg_mul");
  if (a.context().is_diagonal()) {
    return AlgElement::from_diagonal(a.context(),
                                     a.diag().cwiseProduct(b.diag()));
  }
  return AlgElement(a.context(), a.matrix() * b.matrix());
}

AlgElement alg_add(const AlgElement& a, const AlgElement& b) {
  require_same_context(a, b, "alg_add");
  return AlgElement(a.context(), a.matrix() + b.matrix());
}

AlgElement alg_sub(const AlgElement& a, const AlgElement& b) {
  require_same_context(a, b, "alg_sub");
  return AlgElement(a.context(), a.matrix() - b.matrix());
}

AlgElement alg_scale(cplx c, const AlgElement& a) {
  return AlgElement(a.context(), c * a.matrix());
}

AlgElement alg_adjoint(const AlgElement& a) {
  return AlgElement(a.context(), a.matrix().adjoint());
}

double operator_norm(const Matrix& m) {
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  // exactly diagonal matrices (frequent here: units, deltas, permutation
  // blocks) have |entries| as singular values
  bool diag = m.rows() == m.cols();
  for (Eigen::Index i = 0; diag && i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != cplx(0.0, 0.0)) {
        diag = false;
        break;
      }
  if (diag) return m.diagonal().cwiseAbs().maxCoeff();
  // largest singular value through the Gram matrix; no cancellation at the
  // top of the spectrum, so the sqrt keeps full relative accuracy
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double operator_norm(const AlgElement& a) {
  if (a.context().is_diagonal()) return a.diag().cwiseAbs().maxCoeff();
  return operator_norm(a.matrix());
}

bool mat_equal(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

std::vector<AlgElement> context_basis(const AlgebraContext& ctx) {
  std::vector<AlgElement> out;
  const int d = ctx.dim();
  if (ctx.is_diagonal()) {
    out.reserve(d);
    for (int i = 0; i < d; ++i) {
      Vector v = Vector::Zero(d);
      v(i) = 1.0;
      out.push_back(AlgElement::from_diagonal(ctx, v));
    }
  } else {
    out.reserve(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Matrix m = Matrix::Zero(d, d);
        m(i, j) = 1.0;
        out.emplace_back(ctx, std::move(m));
      }
  }
  return out;
}

StarAction StarAction::trivial(GroupRef g) {
  StarAction a;
  a.kind_ = ActionKind::trivial;
  a.group_ = std::move(g);
  return a;
}

StarAction StarAction::inner_unitary(GroupRef g, std::vector<Matrix> unitaries) {
  if (g.is_integer())
    throw std::invalid_argument("inner_unitary: needs a finite group (one unitary per element)");
  if (static_cast<int>(unitaries.size()) != g.order())
    throw std::invalid_argument("inner_unitary: expected one unitary per group element");
  StarAction a;
  a.kind_ = ActionKind::inner_unitary;
  a.group_ = std::move(g);
  a.unitaries_ = std::move(unitaries);
  return a;
}

StarAction StarAction::point_permutation(GroupRef g, std::vector<std::vector<int>> perms) {
  if (g.is_integer())
    throw std::invalid_argument("point_permutation: needs a finite group; use integer_dynamics for Z");
  if (static_cast<int>(perms.size()) != g.order())
    throw std::invalid_argument("point_permutation: expected one permutation per group element");
  StarAction a;
  a.kind_ = ActionKind::point_permutation;
  a.group_ = std::move(g);
  a.perms_ = std::move(perms);
  return a;
}

StarAction StarAction::integer_dynamics(std::vector<int> sigma) {
  if (!is_permutation(sigma))
    throw std::invalid_argument("integer_dynamics: sigma is not a bijection");
  StarAction a;
  a.kind_ = ActionKind::integer_dynamics;
  a.group_ = integer_group();
  a.sigma_ = std::move(sigma);
  a.period_ = lcm_of_cycles(a.sigma_);
  return a;
}

std::vector<int> StarAction::sigma_power(std::int64_t n) const {
  if (kind_ != ActionKind::integer_dynamics)
    throw std::logic_error("sigma_power: not an integer-dynamics action");
  const int npts = static_cast<int>(sigma_.size());
  std::int64_t r = n % period_;
  if (r < 0) r += period_;
  std::vector<int> p(npts);
  std::iota(p.begin(), p.end(), 0);
  for (std::int64_t s = 0; s < r; ++s) {
    std::vector<int> q(npts);
    for (int i = 0; i < npts; ++i) q[i] = sigma_[p[i]];
    p = std::move(q);
  }
  return p;
}

bool StarAction::operator==(const StarAction& o) const {
  if (kind_ != o.kind_ || !(group_ == o.group_)) return false;
  switch (kind_) {
    case ActionKind::trivial:
      return true;
    case ActionKind::inner_unitary:
      if (unitaries_.size() != o.unitaries_.size()) return false;
      for (std::size_t i = 0; i < unitaries_.size(); ++i)
        if (!mat_equal(unitaries_[i], o.unitaries_[i])) return false;
      return true;
    case ActionKind::point_permutation:
      return perms_ == o.perms_;
    case ActionKind::integer_dynamics:
      return sigma_ == o.sigma_;
  }
  return false;
}

AlgElement apply_action(const StarAction& a, std::int64_t g, const AlgElement& x) {
  switch (a.kind()) {
    case ActionKind::trivial:
      return x;
    case ActionKind::inner_unitary: {
      if (!a.group().contains(g)) throw std::out_of_range("apply_action: element not in group");
      const Matrix& u = a.unitaries()[static_cast<std::size_t>(g)];
      if (u.rows() != x.dim())
        throw std::invalid_argument("apply_action: unitary dimension mismatch");
      return AlgElement(x.context(), u * x.matrix() * u.adjoint());
    }
    case ActionKind::point_permutation: {
      if (!a.group().contains(g)) throw std::out_of_range("apply_action: element not in group");
      const auto& p = a.perms()[static_cast<std::size_t>(g)];
      if (static_cast<int>(p.size()) != x.dim() || !x.context().is_diagonal())
        throw std::invalid_argument("apply_action: permutation needs a matching diagonal context");
      Vector in = x.diag(), out(in.size());
      for (int i = 0; i < in.size(); ++i) out(p[i]) = in(i);
      return AlgElement::from_diagonal(x.context(), out);
    }
    case ActionKind::integer_dynamics: {
      if (static_cast<int>(a.sigma().size()) != x.dim() || !x.context().is_diagonal())
        throw std::invalid_argument("apply_action: dynamics needs a matching diagonal context");
      const auto p = a.sigma_power(g);  // alpha_n(f) = f o sigma^{-n}: out[p[i]] = in[i]
      Vector in = x.diag(), out(in.size());
      for (int i = 0; i < in.size(); ++i) out(p[i]) = in(i);
      return AlgElement::from_diagonal(x.context(), out);
    }
  }
  throw std::logic_error("apply_action: unreachable");
}

ActionValidation validate_action(const StarAction& a, const AlgebraContext& ctx) {
  ActionValidation r;
  auto fail = [&r](std::string msg, double defect) -> ActionValidation& {
    r.ok = false;
    r.message = std::move(msg);
    r.max_defect = std::max(r.max_defect, defect);
    return r;
  };
  auto track = [&r](double defect) { r.max_defect = std::max(r.max_defect, defect); };

  constexpr double kTol = 1e-12;
  const int d = ctx.dim();

  switch (a.kind()) {
    case ActionKind::trivial:
      break;
    case ActionKind::inner_unitary: {
      const auto& u = a.unitaries();
      const int n = a.group().order();
      for (int g = 0; g < n; ++g) {
        if (u[g].rows() != d || u[g].cols() != d) {
          fail("unitary " + std::to_string(g) + " has wrong shape", 0);
          return r;
        }
        const double defect = operator_norm(Matrix(u[g] * u[g].adjoint() - Matrix::Identity(d, d)));
        track(defect);
        if (defect > kTol)
          return fail("u_" + std::to_string(g) + " is not unitary (defect " +
                          std::to_string(defect) + ")",
                      defect);
      }
      for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
          const int gh = static_cast<int>(a.group().mul(g, h));
          const double defect = operator_norm(Matrix(u[g] * u[h] - u[gh]));
          track(defect);
          if (defect > kTol)
            return fail("u is not a homomorphism at (g,h)=(" + std::to_string(g) + "," +
                            std::to_string(h) + ")",
                        defect);
        }
      break;
    }
    case ActionKind::point_permutation: {
      if (!ctx.is_diagonal()) {
        fail("point permutation action needs a diagonal context", 0);
        return r;
      }
      const auto& ps = a.perms();
      const int n = a.group().order();
      for (int g = 0; g < n; ++g) {
        if (static_cast<int>(ps[g].size()) != d || !is_permutation(ps[g])) {
          fail("perm " + std::to_string(g) + " is not a permutation of X", 0);
          return r;
        }
      }
      for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
          const auto& pg = ps[g];
          const auto& ph = ps[h];
          const auto& pgh = ps[a.group().mul(g, h)];
          for (int i = 0; i < d; ++i)
            if (pg[ph[i]] != pgh[i]) {
              fail("perm map is not a homomorphism at (g,h)=(" + std::to_string(g) + "," +
                       std::to_string(h) + ")",
                   1.0);
              return r;
            }
        }
      break;
    }
    case ActionKind::integer_dynamics:
      if (!ctx.is_diagonal() || static_cast<int>(a.sigma().size()) != d) {
        fail("integer dynamics needs a diagonal context over the same point set", 0);
        return r;
      }
      break;  // bijectivity enforced at construction; homomorphism is exact arithmetic
  }

  // functional laws: composition on basis samples, *-preservation and
  // isometry on samples; the per-kind structural checks above are the
  // exhaustive part, so the sample sizes are bounded for large contexts
  std::vector<std::int64_t> sample_elems;
  if (a.group().is_integer()) {
    for (std::int64_t n = -3; n <= 3; ++n) sample_elems.push_back(n);
  } else {
    const int limit = std::min(a.group().order(), 16);
    for (int g = 0; g < limit; ++g) sample_elems.push_back(g);
  }
  auto basis = context_basis(ctx);
  if (basis.size() > 12) basis.erase(basis.begin() + 12, basis.end());
  try {
    for (const auto& e : basis) {
      const double scale = 1.0 + operator_norm(e);
      for (std::int64_t g : sample_elems) {
        AlgElement lhs = apply_action(a, g, alg_adjoint(e));
        AlgElement rhs = alg_adjoint(apply_action(a, g, e));
        const double star_defect = operator_norm(alg_sub(lhs, rhs));
        track(star_defect);
        if (star_defect > kTol * scale)
          return fail("alpha_g does not commute with * at g=" + std::to_string(g), star_defect);
        const double iso_defect =
            std::abs(operator_norm(apply_action(a, g, e)) - operator_norm(e));
        track(iso_defect);
        if (iso_defect > kTol * scale)
          return fail("alpha_g is not isometric at g=" + std::to_string(g), iso_defect);
        for (std::int64_t h : sample_elems) {
          if (g >= 6 || h >= 6) continue;  // pair sampling stays quadratic-small
          const double comp_defect = operator_norm(
              alg_sub(apply_action(a, g, apply_action(a, h, e)),
                      apply_action(a, a.group().mul(g, h), e)));
          track(comp_defect);
          if (comp_defect > kTol * scale)
            return fail("alpha_g alpha_h != alpha_gh at (g,h)=(" + std::to_string(g) + "," +
                            std::to_string(h) + ")",
                        comp_defect);
        }
      }
    }
  } catch (const std::exception& e) {
    // e.g. an inner conjugation leaving the diagonal subalgebra
    return fail(std::string("action does not preserve the context: ") + e.what(), 0);
  }
  return r;
}

}  // namespace l1x
