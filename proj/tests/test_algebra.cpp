#include <cmath>

#include "doctest.h"
#include "l1x/algebra.hpp"
#include "l1x/random.hpp"

using namespace l1x;

namespace {

// Closed-form singular values of a 2x2 complex matrix, for cross-checking
// operator_norm: s = ||A||_F^2, d = |det A|^2, sigma_max^2 = (s + sqrt(s^2 - 4d))/2.
double svd2_max(const Matrix& m) {
  REQUIRE(m.rows() == 2);
  const double s = m.squaredNorm();
  const double d = std::norm(m.determinant());
  return std::sqrt((s + std::sqrt(std::max(0.0, s * s - 4 * d))) / 2);
}

Matrix random_matrix(int d, Prng& rng) {
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rng.normal_complex();
  return m;
}

}  // namespace

TEST_CASE("algebra arithmetic") {
  auto m2 = AlgebraContext::full_matrix(2);
  AlgElement id = AlgElement::identity(m2);

  Matrix nil = Matrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  AlgElement a(m2, nil);

  CHECK(mat_equal(alg_mul(id, a).matrix(), a.matrix()));
  CHECK(mat_equal(alg_mul(a, a).matrix(), Matrix::Zero(2, 2)));  // nilpotent

  auto dg = AlgebraContext::diagonal(2);
  Vector v(2);
  v << 1.0, -1.0;
  AlgElement d = AlgElement::from_diagonal(dg, v);
  Vector vv = alg_mul(d, d).diag();
  CHECK(vv(0) == cplx(1.0, 0.0));
  CHECK(vv(1) == cplx(1.0, 0.0));
}

TEST_CASE("adjoint") {
  auto m2 = AlgebraContext::full_matrix(2);
  AlgElement i_id(m2, cplx(0, 1) * Matrix::Identity(2, 2));
  CHECK(mat_equal(alg_adjoint(i_id).matrix(), cplx(0, -1) * Matrix::Identity(2, 2)));

  auto dg = AlgebraContext::diagonal(3);
  Vector v(3);
  v << 1.0, 2.0, -3.0;
  AlgElement d = AlgElement::from_diagonal(dg, v);
  CHECK(mat_equal(alg_adjoint(d).matrix(), d.matrix()));

  Matrix n = Matrix::Zero(2, 2);
  n(0, 1) = 1.0;
  Matrix nt = Matrix::Zero(2, 2);
  nt(1, 0) = 1.0;
  CHECK(mat_equal(alg_adjoint(AlgElement(m2, n)).matrix(), nt));
}

TEST_CASE("operator norm") {
  auto m3 = AlgebraContext::full_matrix(3);
  CHECK(operator_norm(AlgElement::identity(m3)) == 1.0);

  auto dg = AlgebraContext::diagonal(2);
  Vector v(2);
  v << cplx(3, 0), cplx(0, -4);
  CHECK(operator_norm(AlgElement::from_diagonal(dg, v)) == 4.0);

  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 2.0;
  auto m2 = AlgebraContext::full_matrix(2);
  CHECK(operator_norm(AlgElement(m2, m)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(operator_norm(AlgElement(m2, m)) == doctest::Approx(svd2_max(m)).epsilon(1e-12));

  // cross-check against the closed form on random 2x2 matrices
  Prng rng(17);
  for (int k = 0; k < 50; ++k) {
    Matrix r = random_matrix(2, rng);
    CHECK(operator_norm(r) == doctest::Approx(svd2_max(r)).epsilon(1e-10));
  }
}

TEST_CASE("operator norm is submultiplicative and satisfies the C* identity") {
  auto m3 = AlgebraContext::full_matrix(3);
  Prng rng(5);
  for (int k = 0; k < 40; ++k) {
    AlgElement a(m3, random_matrix(3, rng));
    AlgElement b(m3, random_matrix(3, rng));
    CHECK(operator_norm(alg_mul(a, b)) <= operator_norm(a) * operator_norm(b) + 1e-9);
    const double lhs = operator_norm(alg_mul(alg_adjoint(a), a));
    const double rhs = operator_norm(a) * operator_norm(a);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("actions") {
  GroupRef c4 = cyclic_group(4);
  auto m2 = AlgebraContext::full_matrix(2);

  SUBCASE("trivial") {
    auto a = StarAction::trivial(c4);
    Prng rng(3);
    AlgElement x(m2, random_matrix(2, rng));
    CHECK(mat_equal(apply_action(a, 2, x).matrix(), x.matrix()));
    CHECK(validate_action(a, m2).ok);
  }

  SUBCASE("inner conjugation by diag(1, i)") {
    std::vector<Matrix> u(4, Matrix::Identity(2, 2));
    const cplx i(0, 1);
    u[1](1, 1) = i;
    u[2](1, 1) = -1;
    u[3](1, 1) = -i;
    auto a = StarAction::inner_unitary(c4, u);
    CHECK(validate_action(a, m2).ok);

    Matrix n = Matrix::Zero(2, 2);
    n(0, 1) = 1.0;
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 1) = -i;
    CHECK(mat_equal(apply_action(a, 1, AlgElement(m2, n)).matrix(), expected));

    // alpha_g alpha_{g^-1} = id
    Prng rng(11);
    AlgElement x(m2, random_matrix(2, rng));
    for (int g = 0; g < 4; ++g) {
      AlgElement back = apply_action(a, g, apply_action(a, c4.inv(g), x));
      CHECK(operator_norm(alg_sub(back, x)) <= 1e-12);
    }
  }

  SUBCASE("non-unitary data fails validation with a unitarity defect") {
    std::vector<Matrix> u(4, Matrix::Identity(2, 2));
    u[1](0, 0) = 2.0;  // breaks unitarity
    auto a = StarAction::inner_unitary(c4, u);
    auto v = validate_action(a, m2);
    CHECK_FALSE(v.ok);
    CHECK(v.message.find("unitary") != std::string::npos);
    CHECK(v.max_defect > 0.5);
  }

  SUBCASE("integer dynamics: swap of two points") {
    auto a = StarAction::integer_dynamics({1, 0});
    auto dg = AlgebraContext::diagonal(2);
    CHECK(validate_action(a, dg).ok);
    Vector f(2);
    f << 1.0, -1.0;
    Vector out = apply_action(a, 1, AlgElement::from_diagonal(dg, f)).diag();
    CHECK(out(0) == cplx(-1.0, 0.0));
    CHECK(out(1) == cplx(1.0, 0.0));
    // alpha_{-1} undoes alpha_1
    Vector back = apply_action(a, -1, apply_action(a, 1, AlgElement::from_diagonal(dg, f))).diag();
    CHECK(back(0) == f(0));
    CHECK(back(1) == f(1));
  }

  SUBCASE("permutation representation validates") {
    GroupRef s3 = symmetric_group(3);
    auto a = StarAction::point_permutation(s3, symmetric_point_perms(3));
    CHECK(validate_action(a, AlgebraContext::diagonal(3)).ok);
    // mismatched sizes are rejected
    auto bad = StarAction::point_permutation(s3, symmetric_point_perms(3));
    CHECK_FALSE(validate_action(bad, AlgebraContext::diagonal(4)).ok);
  }
}

TEST_CASE("action commutes with adjoint") {
  GroupRef c4 = cyclic_group(4);
  auto m2 = AlgebraContext::full_matrix(2);
  std::vector<Matrix> u(4, Matrix::Identity(2, 2));
  const cplx i(0, 1);
  u[1](1, 1) = i;
  u[2](1, 1) = -1;
  u[3](1, 1) = -i;
  auto a = StarAction::inner_unitary(c4, u);

  Prng rng(23);
  for (int k = 0; k < 20; ++k) {
    AlgElement x(m2, random_matrix(2, rng));
    for (int g = 0; g < 4; ++g) {
      AlgElement lhs = apply_action(a, g, alg_adjoint(x));
      AlgElement rhs = alg_adjoint(apply_action(a, g, x));
      CHECK(operator_norm(alg_sub(lhs, rhs)) <= 1e-12);
    }
  }
}

TEST_CASE("context mismatch is rejected") {
  auto m2 = AlgebraContext::full_matrix(2);
  auto m3 = AlgebraContext::full_matrix(3);
  CHECK_THROWS_AS(alg_add(AlgElement::identity(m2), AlgElement::identity(m3)),
                  std::invalid_argument);
  auto dg = AlgebraContext::diagonal(2);
  Matrix off = Matrix::Zero(2, 2);
  off(0, 1) = 1.0;
  CHECK_THROWS_AS(AlgElement(dg, off), std::invalid_argument);
}
