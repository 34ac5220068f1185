#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "l1x/group.hpp"

namespace l1x {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class ContextKind { full_matrix, diagonal };

// The coefficient *-algebra: all of M_d(C), or the diagonal subalgebra of
// M_n(C) standing for C(X) on a finite point set X.
class AlgebraContext {
 public:
  static AlgebraContext full_matrix(int d);
  static AlgebraContext diagonal(int n, std::vector<std::string> labels = {});

  ContextKind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool is_diagonal() const { return kind_ == ContextKind::diagonal; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string name() const;

  bool operator==(const AlgebraContext& o) const {
    return kind_ == o.kind_ && dim_ == o.dim_;
  }

 private:
  AlgebraContext(ContextKind k, int d, std::vector<std::string> labels)
      : kind_(k), dim_(d), labels_(std::move(labels)) {}
  ContextKind kind_ = ContextKind::full_matrix;
  int dim_ = 1;
  std::vector<std::string> labels_;
};

// An element of the coefficient algebra, stored as a dense D x D complex
// matrix. Diagonal-context elements carry exact zeros off the diagonal and
// every operation below preserves that structurally.
class AlgElement {
 public:
  AlgElement(AlgebraContext ctx, Matrix m);  // validates shape and diagonality
  static AlgElement zero(const AlgebraContext& ctx);
  static AlgElement identity(const AlgebraContext& ctx);
  static AlgElement from_diagonal(const AlgebraContext& ctx, const Vector& d);

  const AlgebraContext& context() const { return ctx_; }
  const Matrix& matrix() const { return mat_; }
  Vector diag() const { return mat_.diagonal(); }
  int dim() const { return ctx_.dim(); }

  bool same_context(const AlgElement& other) const { return ctx_ == other.ctx_; }

 private:
  AlgebraContext ctx_;
  Matrix mat_;
};

AlgElement alg_mul(const AlgElement& a, const AlgElement& b);
AlgElement alg_add(const AlgElement& a, const AlgElement& b);
AlgElement alg_sub(const AlgElement& a, const AlgElement& b);
AlgElement alg_scale(cplx c, const AlgElement& a);
AlgElement alg_adjoint(const AlgElement& a);

// C*-norm of a matrix: largest singular value; max |entry| for diagonal.
double operator_norm(const AlgElement& a);
double operator_norm(const Matrix& m);

// IEEE elementwise equality (so -0 == +0, NaN breaks equality).
bool mat_equal(const Matrix& a, const Matrix& b);

// Basis of the context as a vector space: matrix units E_ij for full
// contexts, point indicators e_i for diagonal ones.
std::vector<AlgElement> context_basis(const AlgebraContext& ctx);

enum class ActionKind { trivial, inner_unitary, point_permutation, integer_dynamics };

// Group action by *-automorphisms of the coefficient algebra.
//   trivial           alpha_g = id
//   inner_unitary     alpha_g = Ad u_g for a unitary representation u
//   point_permutation alpha_g permutes the points of a diagonal context,
//                     new_diag[p_g(i)] = old_diag[i]
//   integer_dynamics  G = Z acting by alpha_n(f) = f o sigma^{-n}
class StarAction {
 public:
  static StarAction trivial(GroupRef g);
  static StarAction inner_unitary(GroupRef g, std::vector<Matrix> unitaries);
  static StarAction point_permutation(GroupRef g, std::vector<std::vector<int>> perms);
  static StarAction integer_dynamics(std::vector<int> sigma);

  ActionKind kind() const { return kind_; }
  const GroupRef& group() const { return group_; }
  const std::vector<Matrix>& unitaries() const { return unitaries_; }
  const std::vector<std::vector<int>>& perms() const { return perms_; }
  const std::vector<int>& sigma() const { return sigma_; }
  std::int64_t sigma_period() const { return period_; }

  // permutation implementing sigma^n (integer_dynamics only)
  std::vector<int> sigma_power(std::int64_t n) const;

  bool operator==(const StarAction& o) const;

 private:
  StarAction() = default;
  ActionKind kind_ = ActionKind::trivial;
  GroupRef group_;
  std::vector<Matrix> unitaries_;
  std::vector<std::vector<int>> perms_;
  std::vector<int> sigma_;
  std::int64_t period_ = 1;
};

AlgElement apply_action(const StarAction& a, std::int64_t g, const AlgElement& x);

struct ActionValidation {
  bool ok = true;
  std::string message;    // violated law and witness
  double max_defect = 0;  // worst defect norm observed
};

// Verifies the action is by *-automorphisms: structural checks per kind
// (unitarity and u_{gh} = u_g u_h within 1e-12, exact permutation
// homomorphism), then alpha_g(a*) = alpha_g(a)* and norm preservation on a
// coefficient basis.
ActionValidation validate_action(const StarAction& a, const AlgebraContext& ctx);

}  // namespace l1x
