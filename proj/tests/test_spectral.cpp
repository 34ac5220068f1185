#include <cmath>
#include <complex>

#include "doctest.h"
#include "l1x/acceptance.hpp"
#include "l1x/spectral.hpp"

using namespace l1x;

namespace {

constexpr double kPi = 3.14159265358979323846;

SystemPtr scalar_system(GroupRef g) {
  auto triv = StarAction::trivial(g);
  return make_system(std::move(g), AlgebraContext::full_matrix(1), std::move(triv));
}

Matrix random_matrix(int d, Prng& rng) {
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rng.normal_complex();
  return m;
}

// test-only determinant via Gaussian elimination with partial pivoting,
// independent of any eigenvalue machinery
cplx det_oracle(Matrix m) {
  const int n = static_cast<int>(m.rows());
  cplx det = 1.0;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m(r, c)) > std::abs(m(pivot, c))) pivot = r;
    if (std::abs(m(pivot, c)) == 0.0) return 0.0;
    if (pivot != c) {
      m.row(pivot).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    for (int r = c + 1; r < n; ++r) {
      const cplx f = m(r, c) / m(c, c);
      m.row(r).tail(n - c) -= f * m.row(c).tail(n - c);
    }
  }
  return det;
}

}  // namespace

TEST_CASE("left multiplication matrix") {
  SystemPtr z2 = scalar_system(cyclic_group(2));

  SUBCASE("identity element gives the identity matrix") {
    const LeftMultMatrix L = left_mult_matrix(delta(z2, 0));
    CHECK(operator_norm(Matrix(L.mat - Matrix::Identity(2, 2))) <= 1e-14);
  }

  SUBCASE("delta_1 over Z_2 is the swap") {
    const LeftMultMatrix L = left_mult_matrix(delta(z2, 1));
    Matrix swap = Matrix::Zero(2, 2);
    swap(0, 1) = swap(1, 0) = 1.0;
    CHECK(mat_equal(L.mat, swap));
  }

  SUBCASE("linearity and multiplicativity") {
    SystemPtr sys = acceptance::sys_z4_m2_inner();
    const L1Element x = random_element(sys, 31, 0), y = random_element(sys, 31, 1);
    const Matrix lx = left_mult_matrix(x).mat;
    const Matrix ly = left_mult_matrix(y).mat;
    CHECK(operator_norm(Matrix(left_mult_matrix(add(x, y)).mat - lx - ly)) <= 1e-10);
    CHECK(operator_norm(Matrix(left_mult_matrix(convolve(x, y)).mat - lx * ly)) <=
          1e-10 * (1 + operator_norm(lx) * operator_norm(ly)));
  }

  SUBCASE("delta columns are orthonormal") {
    SystemPtr sys = acceptance::sys_d4_perm();
    for (int g = 0; g < 8; ++g) {
      const Matrix L = left_mult_matrix(delta(sys, g)).mat;
      CHECK(operator_norm(Matrix(L.adjoint() * L - Matrix::Identity(L.rows(), L.cols()))) <=
            1e-12);
    }
  }
}

TEST_CASE("dense eigensolver") {
  SUBCASE("diagonal matrix") {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = 1;
    m(1, 1) = 2;
    m(2, 2) = 3;
    auto eigs = eig_general(m);
    std::sort(eigs.begin(), eigs.end(),
              [](cplx a, cplx b) { return a.real() < b.real(); });
    CHECK(std::abs(eigs[0] - cplx(1, 0)) <= 1e-12);
    CHECK(std::abs(eigs[1] - cplx(2, 0)) <= 1e-12);
    CHECK(std::abs(eigs[2] - cplx(3, 0)) <= 1e-12);
  }

  SUBCASE("rotation has eigenvalues +-i") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1;
    m(1, 0) = -1;
    auto eigs = eig_general(m);
    std::sort(eigs.begin(), eigs.end(),
              [](cplx a, cplx b) { return a.imag() < b.imag(); });
    CHECK(std::abs(eigs[0] - cplx(0, -1)) <= 1e-12);
    CHECK(std::abs(eigs[1] - cplx(0, 1)) <= 1e-12);
  }

  SUBCASE("trace and determinant cross-checks on random 8x8 matrices") {
    Prng rng(77);
    for (int k = 0; k < 10; ++k) {
      const Matrix m = random_matrix(8, rng);
      const auto eigs = eig_general(m);
      cplx sum = 0, prod = 1;
      for (const cplx& z : eigs) {
        sum += z;
        prod *= z;
      }
      const cplx tr = m.trace();
      CHECK(std::abs(sum - tr) <= 1e-8 * (1 + std::abs(tr)));
      const cplx dt = det_oracle(m);
      CHECK(std::abs(prod - dt) <= 1e-8 * (1 + std::abs(dt)));
    }
  }

  SUBCASE("defective matrices still certify") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;  // Jordan block
    const auto eigs = eig_general(m);
    for (const cplx& z : eigs) CHECK(std::abs(z) <= 1e-7);
  }
}

TEST_CASE("spectrum of finite systems") {
  SUBCASE("unit element") {
    SystemPtr sys = acceptance::sys_s3_perm();
    const SpectrumResult s = spectrum_finite(unit(sys));
    CHECK(s.eigenvalues.size() == 18);
    for (const cplx& z : s.eigenvalues) CHECK(std::abs(z - cplx(1, 0)) <= 1e-12);
    CHECK(s.deduplicated.size() == 1);
  }

  SUBCASE("delta_1 over Z_n has the n-th roots of unity as spectrum") {
    for (int n : {3, 5, 8}) {
      SystemPtr sys = scalar_system(cyclic_group(n));
      const SpectrumResult s = spectrum_finite(delta(sys, 1));
      std::vector<cplx> expected;
      for (int j = 0; j < n; ++j)
        expected.emplace_back(std::cos(2 * kPi * j / n), std::sin(2 * kPi * j / n));
      CHECK(multiset_match_distance(s.eigenvalues, expected) <= 1e-9);
    }
  }

  SUBCASE("square root of -delta_e has spectrum {i, -i} with multiplicity two") {
    // (Z_2, C(X_2), swap): x = f delta_1 with f = (1, -1) squares to -delta_e
    const DynamicalSystem dyn = analyze_dynamics(2, {1, 0});
    SystemPtr sys = dynamics_system_quotient(dyn);
    REQUIRE(sys->group.order() == 2);
    Vector f(2);
    f << 1.0, -1.0;
    const L1Element x = single_term(sys, 1, AlgElement::from_diagonal(sys->context, f));

    const L1Element xx = convolve(x, x);
    CHECK(equal_within(xx, scale(-1.0, unit(sys)), 1e-12));

    const SpectrumResult s = spectrum_finite(x);
    REQUIRE(s.eigenvalues.size() == 4);
    int plus = 0, minus = 0;
    for (const cplx& z : s.eigenvalues) {
      if (std::abs(z - cplx(0, 1)) <= 1e-9) ++plus;
      if (std::abs(z - cplx(0, -1)) <= 1e-9) ++minus;
    }
    CHECK(plus == 2);
    CHECK(minus == 2);
  }

  SUBCASE("dimension cap raises a resource error") {
    SystemPtr sys = scalar_system(cyclic_group(16));
    CHECK_THROWS_AS(spectrum_finite(delta(sys, 1), 8), ResourceError);
  }
}

TEST_CASE("circulant oracle") {
  SystemPtr z4 = scalar_system(cyclic_group(4));

  SUBCASE("delta_0 and zero") {
    const SpectrumResult s = dft_spectrum_oracle(delta(z4, 0));
    for (const cplx& z : s.eigenvalues) CHECK(std::abs(z - cplx(1, 0)) <= 1e-15);
    const SpectrumResult zero = dft_spectrum_oracle(L1Element(z4));
    for (const cplx& z : zero.eigenvalues) CHECK(std::abs(z) == 0.0);
  }

  SUBCASE("delta_1 + delta_3 over Z_4 gives {2, 0, -2, 0}") {
    const L1Element x = add(delta(z4, 1), delta(z4, 3));
    const SpectrumResult s = dft_spectrum_oracle(x);
    CHECK(multiset_match_distance(
              s.eigenvalues, {cplx(2, 0), cplx(0, 0), cplx(-2, 0), cplx(0, 0)}) <= 1e-12);
  }

  SUBCASE("agrees with left-mult spectra on random elements up to n = 32") {
    for (int n : {2, 7, 16, 32}) {
      SystemPtr sys = scalar_system(cyclic_group(n));
      for (std::uint64_t i = 0; i < 10; ++i) {
        const L1Element x = random_element(sys, 99, i);
        CHECK(multiset_match_distance(spectrum_finite(x).eigenvalues,
                                      dft_spectrum_oracle(x).eigenvalues) <= 1e-9);
      }
    }
  }

  SUBCASE("rejects systems of the wrong shape") {
    CHECK_THROWS_AS(dft_spectrum_oracle(delta(acceptance::sys_z4_m2_inner(), 0)),
                    std::invalid_argument);
  }
}

TEST_CASE("spectral mapping and radius consistency") {
  SystemPtr sys = acceptance::sys_s3_perm();
  for (std::uint64_t i = 0; i < 10; ++i) {
    const L1Element x = random_element(sys, 55, i);
    const auto sx = spectrum_finite(x).eigenvalues;
    const auto sxx = spectrum_finite(convolve(x, x)).eigenvalues;
    std::vector<cplx> squared;
    squared.reserve(sx.size());
    for (const cplx& z : sx) squared.push_back(z * z);
    CHECK(multiset_match_distance(squared, sxx) <= 1e-8 * (1 + l1_norm(x) * l1_norm(x)));

    double max_mod = 0;
    for (const cplx& z : sx) max_mod = std::max(max_mod, std::abs(z));
    const GelfandSequence gf = gelfand_radius(x, 6);
    for (double b : gf.bounds) CHECK(max_mod <= b + 1e-9);
  }
}

TEST_CASE("hermitian and symmetric verification") {
  SUBCASE("passes on a rigidly symmetric instance") {
    const auto v = verify_hermitian(acceptance::sys_z4_m2_inner(), 20, 3, 1e-8);
    CHECK(v.pass);
    CHECK(v.inconclusive == 0);
    CHECK(v.worst_max_imag <= 1e-10);
    CHECK(v.per_sample.size() == 20);
  }

  SUBCASE("coefficient embeddings of real diagonals have real spectra") {
    SystemPtr sys = acceptance::sys_s3_perm();
    Vector f(3);
    f << 1.0, -2.0, 0.5;
    const SpectrumResult s =
        spectrum_finite(embed_coeff(sys, AlgElement::from_diagonal(sys->context, f)));
    CHECK(s.max_imag == 0.0);
  }

  SUBCASE("x x* of a delta is the unit") {
    SystemPtr sys = acceptance::sys_d4_perm();
    const L1Element x = delta(sys, 3);
    const SpectrumResult s = spectrum_finite(convolve(x, involute(x)));
    for (const cplx& z : s.eigenvalues) CHECK(std::abs(z - cplx(1, 0)) <= 1e-12);
  }

  SUBCASE("the zero element has spectrum {0}") {
    SystemPtr sys = acceptance::sys_s3_perm();
    const L1Element zero(sys);
    const SpectrumResult s = spectrum_finite(convolve(zero, involute(zero)));
    CHECK(s.max_modulus == 0.0);
    CHECK(s.deduplicated.size() == 1);
  }

  SUBCASE("symmetric verification on the permutation system") {
    const auto v = verify_symmetric(acceptance::sys_s3_perm(), 20, 3, 1e-8);
    CHECK(v.pass);
    CHECK(v.worst_min_real >= -1e-10);
  }

  SUBCASE("rejects integer systems") {
    const DynamicalSystem dyn = analyze_dynamics(2, {1, 0});
    CHECK_THROWS_AS(verify_hermitian(dynamics_system_integer(dyn), 3, 1, 1e-8),
                    std::invalid_argument);
  }
}

TEST_CASE("gelfand radius") {
  SUBCASE("norm-one group elements") {
    SystemPtr sys = acceptance::sys_s3_perm();
    const GelfandSequence gf = gelfand_radius(delta(sys, 4), 5);
    for (double b : gf.bounds) CHECK(b == 1.0);
  }

  SUBCASE("averaged two-sided shift on l1(Z)") {
    const DynamicalSystem dyn = analyze_dynamics(1, {0});
    SystemPtr sys = dynamics_system_integer(dyn);
    const L1Element x = scale(0.5, add(delta(sys, 1), delta(sys, -1)));
    const GelfandSequence gf = gelfand_radius(x, 6);
    REQUIRE(gf.bounds.size() == 7);
    for (double b : gf.bounds) CHECK(b == 1.0);
  }

  SUBCASE("zero element") {
    SystemPtr sys = scalar_system(cyclic_group(2));
    const GelfandSequence gf = gelfand_radius(L1Element(sys), 3);
    for (double b : gf.bounds) CHECK(b == 0.0);
  }

  SUBCASE("bounds decrease") {
    SystemPtr sys = acceptance::sys_z4_m2_inner();
    const L1Element x = random_element(sys, 8, 0);
    const GelfandSequence gf = gelfand_radius(x, 6);
    for (std::size_t k = 1; k < gf.bounds.size(); ++k)
      CHECK(gf.bounds[k] <= gf.bounds[k - 1] + 1e-12);
  }

  SUBCASE("support growth over Z hits the cap") {
    const DynamicalSystem dyn = analyze_dynamics(1, {0});
    SystemPtr sys = dynamics_system_integer(dyn);
    SampleOptions opt;
    opt.window = 4;
    const L1Element x = random_element(sys, 2, 0, opt);
    CHECK_THROWS_AS(gelfand_radius(x, 10, /*support_cap=*/16), ResourceError);
  }
}

TEST_CASE("evaluation representations") {
  const DynamicalSystem dyn = analyze_dynamics(2, {1, 0});
  SystemPtr sys = dynamics_system_integer(dyn);

  SUBCASE("unit maps to the identity for every omega") {
    for (const auto& r : evaluation_reps(delta(sys, 0), 8)) {
      CHECK(operator_norm(Matrix(r.rep - Matrix::Identity(2, 2))) <= 1e-14);
      CHECK(r.hermitian_defect <= 1e-14);
    }
  }

  SUBCASE("coefficient embeddings have the function values as eigenvalues") {
    Vector f(2);
    f << cplx(2, 0), cplx(-1, 0);
    const L1Element x = single_term(sys, 0, AlgElement::from_diagonal(sys->context, f));
    for (const auto& r : evaluation_reps(x, 4)) {
      CHECK(multiset_match_distance(r.eigenvalues, {cplx(2, 0), cplx(-1, 0)}) <= 1e-12);
    }
  }

  SUBCASE("the symmetric shift is hermitian with eigenvalues +-(omega + conj omega)") {
    const L1Element x = add(delta(sys, 1), delta(sys, -1));
    for (const auto& r : evaluation_reps(x, 16)) {
      CHECK(r.hermitian_defect <= 1e-14);
      CHECK(r.star_defect <= 1e-14);
      const double two_re = 2 * r.omega.real();
      CHECK(multiset_match_distance(r.eigenvalues, {cplx(two_re, 0), cplx(-two_re, 0)}) <= 1e-10);
      CHECK(r.max_imag <= 1e-12);
    }
  }

  SUBCASE("self-adjoint elements give hermitian representations") {
    const DynamicalSystem five = analyze_dynamics(5, {1, 0, 3, 4, 2});
    SystemPtr s5 = dynamics_system_integer(five);
    for (std::uint64_t i = 0; i < 5; ++i) {
      const L1Element x = random_selfadjoint(s5, 21, i);
      const GelfandSequence gf = gelfand_radius(x, 4);
      for (const auto& r : evaluation_reps(x, 16)) {
        CHECK(r.hermitian_defect <= 1e-12);
        CHECK(r.max_imag <= 1e-12);
        CHECK(r.max_modulus <= gf.final_bound + 1e-9);
      }
    }
  }
}

TEST_CASE("quotient regular module decomposes into evaluation representations") {
  // For a period-p point dynamics, the left-mult spectrum of the folded
  // element in l1(Z_p, C(X)) equals the multiset union of the evaluation
  // spectra at the p-th roots of unity. Two independently implemented
  // spectral routes must agree.
  const DynamicalSystem dyn = analyze_dynamics(5, {1, 0, 3, 4, 2});  // period 6
  const SystemPtr zsys = dynamics_system_integer(dyn);
  const SystemPtr qsys = dynamics_system_quotient(dyn);
  const int p = static_cast<int>(dyn.period);

  for (std::uint64_t s = 0; s < 5; ++s) {
    SampleOptions opt;
    opt.window = 2;
    const L1Element x = random_element(zsys, 7, s, opt);

    L1Element folded(qsys);
    for (const auto& [g, v] : x.support()) {
      std::int64_t r = g % p;
      if (r < 0) r += p;
      const AlgElement fv = AlgElement::from_diagonal(qsys->context, v.diag());
      const AlgElement* prev = folded.at(r);
      folded.set(r, prev ? alg_add(*prev, fv) : fv);
    }

    std::vector<cplx> eval_union;
    for (const auto& rep : evaluation_reps(x, p))
      for (const cplx& z : rep.eigenvalues) eval_union.push_back(z);

    CHECK(multiset_match_distance(spectrum_finite(folded).eigenvalues, eval_union) <=
          1e-9 * (1 + l1_norm(x)));
  }
}

TEST_CASE("quotient dynamics systems pass hermitian verification") {
  const DynamicalSystem dyn = analyze_dynamics(5, {1, 0, 3, 4, 2});
  const auto v = verify_hermitian(dynamics_system_quotient(dyn), 20, 11, 1e-8);
  CHECK(v.pass);
  CHECK(v.worst_max_imag <= 1e-10);
}
