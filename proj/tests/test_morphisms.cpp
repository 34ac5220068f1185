#include <cmath>

#include "doctest.h"
#include "l1x/acceptance.hpp"
#include "l1x/morphisms.hpp"

using namespace l1x;

namespace {

Matrix random_matrix(int d, Prng& rng) {
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rng.normal_complex();
  return m;
}

double tensor_distance(const TensorElement& a, const TensorElement& b, const SystemPtr& triv) {
  return l1_norm(sub(from_tensor(a, triv), from_tensor(b, triv)));
}

}  // namespace

TEST_CASE("inner-action trivialization") {
  SystemPtr sys = acceptance::sys_z4_m2_inner();
  SystemPtr triv = trivial_sibling(sys);

  SUBCASE("fixes the unit") {
    CHECK(identical(trivialize_inner(unit(sys), triv), unit(triv)));
  }

  SUBCASE("single terms pick up the unitary") {
    Prng rng(1);
    AlgElement b(sys->context, random_matrix(2, rng));
    const L1Element img = trivialize_inner(single_term(sys, 3, b), triv);
    REQUIRE(img.support().size() == 1);
    REQUIRE(img.at(3) != nullptr);
    Matrix u3 = Matrix::Identity(2, 2);
    u3(1, 1) = cplx(0, -1);
    CHECK(operator_norm(Matrix(img.at(3)->matrix() - b.matrix() * u3)) <= 1e-14);
  }

  SUBCASE("is an isometric *-isomorphism on random elements") {
    for (std::uint64_t i = 0; i < 50; ++i) {
      const L1Element x = random_element(sys, 500, 2 * i);
      const L1Element y = random_element(sys, 500, 2 * i + 1);
      const L1Element px = trivialize_inner(x, triv), py = trivialize_inner(y, triv);
      CHECK(std::abs(l1_norm(px) - l1_norm(x)) <= 1e-12 * l1_norm(x));
      CHECK(equal_within(trivialize_inner(convolve(x, y), triv), convolve(px, py),
                         1e-10 * (1 + l1_norm(x) * l1_norm(y))));
      CHECK(equal_within(trivialize_inner(involute(x), triv), involute(px),
                         1e-10 * (1 + l1_norm(x))));
      CHECK(equal_within(trivialize_inner_inverse(px, sys), x, 1e-12 * (1 + l1_norm(x))));
    }
  }

  SUBCASE("rejects non-inner actions") {
    CHECK_THROWS_AS(trivialize_inner(unit(acceptance::sys_s3_perm())), std::invalid_argument);
  }
}

TEST_CASE("tensor identification") {
  GroupRef g = cyclic_group(3);
  auto ctx = AlgebraContext::full_matrix(2);
  SystemPtr triv = make_system(g, ctx, StarAction::trivial(g));

  SUBCASE("single term is a cross-norm tensor") {
    Prng rng(2);
    AlgElement b(ctx, random_matrix(2, rng));
    const TensorElement t = to_tensor(single_term(triv, 2, b));
    CHECK(t.canonical().size() == 1);
    CHECK(t.canonical_norm() == doctest::Approx(operator_norm(b)).epsilon(1e-14));
    CHECK(t.summand_norm_bound() == doctest::Approx(operator_norm(b)).epsilon(1e-14));
  }

  SUBCASE("zero maps to the empty tensor") {
    CHECK(to_tensor(L1Element(triv)).canonical().empty());
  }

  SUBCASE("round trip is exact") {
    const L1Element x = random_element(triv, 3, 0);
    CHECK(identical(from_tensor(to_tensor(x), triv), x));
  }

  SUBCASE("norm equals the trivial-action l1 norm") {
    for (std::uint64_t i = 0; i < 20; ++i) {
      const L1Element x = random_element(triv, 4, i);
      CHECK(to_tensor(x).canonical_norm() == doctest::Approx(l1_norm(x)).epsilon(1e-14));
    }
  }

  SUBCASE("rejects twisted systems") {
    CHECK_THROWS_AS(to_tensor(unit(acceptance::sys_z4_m2_inner())), std::invalid_argument);
  }
}

TEST_CASE("canonicalization of summand lists") {
  GroupRef g = cyclic_group(4);
  auto ctx = AlgebraContext::full_matrix(2);
  Prng rng(7);
  AlgElement b(ctx, random_matrix(2, rng));

  SUBCASE("single dirac summand") {
    const TensorElement t = canonicalize_tensor(g, ctx, {{ScalarSeq{{2, 1.0}}, b}});
    REQUIRE(t.canonical().size() == 1);
    CHECK(t.canonical().count(2) == 1);
  }

  SUBCASE("spread summand (d_g + d_h) x b") {
    const TensorElement t = canonicalize_tensor(g, ctx, {{ScalarSeq{{0, 1.0}, {3, 1.0}}, b}});
    CHECK(t.canonical().size() == 2);
    CHECK(t.canonical_norm() == doctest::Approx(2 * operator_norm(b)).epsilon(1e-14));
    CHECK(t.summand_norm_bound() == doctest::Approx(2 * operator_norm(b)).epsilon(1e-14));
  }

  SUBCASE("cancellation gives the zero tensor below its representation bound") {
    const TensorElement t = canonicalize_tensor(
        g, ctx, {{ScalarSeq{{1, 1.0}}, b}, {ScalarSeq{{1, 1.0}}, alg_scale(-1.0, b)}});
    CHECK(t.canonical().empty());
    CHECK(t.canonical_norm() == 0.0);
    CHECK(t.summand_norm_bound() == doctest::Approx(2 * operator_norm(b)).epsilon(1e-14));
  }

  SUBCASE("canonical norm never exceeds the representation bound") {
    for (std::uint64_t trial = 0; trial < 30; ++trial) {
      Prng trng(900 + trial);
      std::vector<TensorSummand> summands;
      const int count = 1 + static_cast<int>(trng.next_u64() % 4);
      for (int i = 0; i < count; ++i) {
        ScalarSeq seq;
        const int supp = 1 + static_cast<int>(trng.next_u64() % 3);
        for (int s = 0; s < supp; ++s)
          seq[static_cast<std::int64_t>(trng.next_u64() % 4)] = trng.normal_complex();
        summands.push_back({std::move(seq), AlgElement(ctx, random_matrix(2, trng))});
      }
      const TensorElement t = canonicalize_tensor(g, ctx, std::move(summands));
      CHECK(t.canonical_norm() <= t.summand_norm_bound() + 1e-10);
    }
  }
}

TEST_CASE("hat system construction") {
  SUBCASE("trivial group") {
    GroupRef g = cyclic_group(1);
    SystemPtr sys = make_system(g, AlgebraContext::full_matrix(2), StarAction::trivial(g));
    const HatSystem hat = build_hat_system(sys);
    CHECK(mat_equal(hat.lambdas()[0], Matrix::Identity(2, 2)));
    Prng rng(3);
    AlgElement a(sys->context, random_matrix(2, rng));
    CHECK(mat_equal(hat.pi_of(a), a.matrix()));
  }

  SUBCASE("two-point swap: lambda_1 is the 4x4 block permutation") {
    const DynamicalSystem dyn = analyze_dynamics(2, {1, 0});
    SystemPtr sys = dynamics_system_quotient(dyn);
    const HatSystem hat = build_hat_system(sys);
    REQUIRE(hat.hat_dim() == 4);

    Matrix expected = Matrix::Zero(4, 4);
    // (lambda_1 xi)(t) = xi(t - 1): block (t, t-1) = I_2
    expected(0, 2) = expected(1, 3) = expected(2, 0) = expected(3, 1) = 1.0;
    CHECK(mat_equal(hat.lambdas()[1], expected));
    CHECK(hat.equivariance_defect() == 0.0);
  }

  SUBCASE("pi is unital") {
    SystemPtr sys = acceptance::sys_d4_perm();
    const HatSystem hat = build_hat_system(sys);
    CHECK(operator_norm(Matrix(hat.pi_of(AlgElement::identity(sys->context)) -
                               Matrix::Identity(32, 32))) <= 1e-14);
    CHECK(hat.equivariance_defect() <= 1e-12);
    CHECK(hat.pi_isometry_defect() <= 1e-10);
  }

  SUBCASE("lambda is a group representation, exactly") {
    SystemPtr sys = acceptance::sys_s3_perm();
    const HatSystem hat = build_hat_system(sys);
    const auto& g = sys->group;
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b)
        CHECK(mat_equal(hat.lambdas()[a] * hat.lambdas()[b],
                        hat.lambdas()[static_cast<std::size_t>(g.mul(a, b))]));
  }
}

TEST_CASE("regular embedding") {
  SystemPtr sys = acceptance::sys_z4_m2_inner();
  const HatSystem hat = build_hat_system(sys);

  SUBCASE("unit to unit") {
    CHECK(identical(embed_regular(hat, unit(sys)), unit(hat.hat())));
  }

  SUBCASE("single terms map to pi images") {
    Prng rng(5);
    AlgElement a(sys->context, random_matrix(2, rng));
    const L1Element img = embed_regular(hat, single_term(sys, 2, a));
    REQUIRE(img.support().size() == 1);
    REQUIRE(img.at(2) != nullptr);
    CHECK(mat_equal(img.at(2)->matrix(), hat.pi_of(a)));
  }

  SUBCASE("is an isometric *-homomorphism on random pairs") {
    for (std::uint64_t i = 0; i < 30; ++i) {
      const L1Element x = random_element(sys, 321, 2 * i);
      const L1Element y = random_element(sys, 321, 2 * i + 1);
      const L1Element rx = embed_regular(hat, x), ry = embed_regular(hat, y);
      CHECK(std::abs(l1_norm(rx) - l1_norm(x)) <= 1e-10 * (1 + l1_norm(x)));
      CHECK(equal_within(embed_regular(hat, convolve(x, y)), convolve(rx, ry),
                         1e-10 * (1 + l1_norm(x) * l1_norm(y))));
      CHECK(equal_within(embed_regular(hat, involute(x)), involute(rx),
                         1e-10 * (1 + l1_norm(x))));
    }
  }

  SUBCASE("rejects elements of a different system") {
    CHECK_THROWS_AS(embed_regular(hat, unit(acceptance::sys_s3_perm())), std::invalid_argument);
  }
}

TEST_CASE("composite embedding") {
  SystemPtr sys = acceptance::sys_s3_perm();
  const HatSystem hat = build_hat_system(sys);
  const SystemPtr hat_triv = trivial_sibling(hat.hat());

  SUBCASE("unit maps to d_e x I") {
    const TensorElement t = composite_embedding(hat, unit(sys));
    REQUIRE(t.canonical().size() == 1);
    const auto& [g, v] = *t.canonical().begin();
    CHECK(g == sys->group.identity());
    CHECK(operator_norm(Matrix(v.matrix() - Matrix::Identity(18, 18))) <= 1e-14);
  }

  SUBCASE("preserves norm and involution") {
    for (std::uint64_t i = 0; i < 25; ++i) {
      const L1Element x = random_element(sys, 77, i);
      const TensorElement tx = composite_embedding(hat, x);
      CHECK(std::abs(tx.canonical_norm() - l1_norm(x)) <= 1e-10 * (1 + l1_norm(x)));
      CHECK(tensor_distance(composite_embedding(hat, involute(x)), tensor_involute(tx),
                            hat_triv) <= 1e-10 * (1 + l1_norm(x)));
    }
  }

  SUBCASE("is multiplicative through the pull-back") {
    for (std::uint64_t i = 0; i < 10; ++i) {
      const L1Element x = random_element(sys, 88, 2 * i);
      const L1Element y = random_element(sys, 88, 2 * i + 1);
      const L1Element tx = from_tensor(composite_embedding(hat, x), hat_triv);
      const L1Element ty = from_tensor(composite_embedding(hat, y), hat_triv);
      const L1Element txy = from_tensor(composite_embedding(hat, convolve(x, y)), hat_triv);
      CHECK(equal_within(txy, convolve(tx, ty), 1e-10 * (1 + l1_norm(x) * l1_norm(y))));
    }
  }
}

TEST_CASE("spectra survive the composite embedding") {
  // in finite dimensions the algebra spectrum is preserved under unital
  // embeddings; check containment of the domain spectrum in the codomain one
  std::vector<SystemPtr> systems;
  {
    GroupRef z2 = cyclic_group(2);
    systems.push_back(make_system(z2, AlgebraContext::full_matrix(1), StarAction::trivial(z2)));
    const DynamicalSystem dyn = analyze_dynamics(2, {1, 0});
    systems.push_back(dynamics_system_quotient(dyn));
  }
  for (const auto& sys : systems) {
    const HatSystem hat = build_hat_system(sys);
    const SystemPtr hat_triv = trivial_sibling(hat.hat());
    for (std::uint64_t i = 0; i < 8; ++i) {
      const L1Element x = random_element(sys, 44, i);
      const auto dom = spectrum_finite(x).eigenvalues;
      const auto cod =
          spectrum_finite(from_tensor(composite_embedding(hat, x), hat_triv)).eigenvalues;
      for (const cplx& lam : dom) {
        double best = 1e300;
        for (const cplx& mu : cod) best = std::min(best, std::abs(lam - mu));
        CHECK(best <= 1e-8);
      }
    }
  }
}
