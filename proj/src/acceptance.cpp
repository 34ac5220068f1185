#include "l1x/acceptance.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "l1x/morphisms.hpp"
#include "l1x/report.hpp"

namespace l1x::acceptance {

namespace {

constexpr std::uint64_t kSeed = 1;

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

struct NamedSystem {
  std::string name;
  SystemPtr sys;
};

std::vector<NamedSystem> four_reference_systems() {
  return {{"(Z_4, M_2, inner)", sys_z4_m2_inner()},
          {"(S_3, C(X_3), perm)", sys_s3_perm()},
          {"(H mod 2, C, triv)", sys_h2_scalar()},
          {"(D_4, C(X_4), perm)", sys_d4_perm()}};
}

// ---- criterion 1 and 2: spectra of self-adjoint elements --------------------

CriterionResult criterion_hermitian() {
  CriterionResult r{1, "real spectra of self-adjoint elements (200 samples per system)", true, ""};
  std::ostringstream detail;
  for (const auto& [name, sys] : four_reference_systems()) {
    const auto v = verify_hermitian(sys, 200, kSeed, 1e-8);
    if (!v.pass) r.pass = false;
    detail << name << " worst_imag=" << sci(v.worst_max_imag)
           << (v.pass ? "" : " FAIL") << "; ";
  }
  r.detail = detail.str() + "tol 1e-8";
  return r;
}

CriterionResult criterion_symmetric() {
  CriterionResult r{2, "spectra of x x* in the closed right half line (200 samples per system)",
                    true, ""};
  std::ostringstream detail;
  for (const auto& [name, sys] : four_reference_systems()) {
    const auto v = verify_symmetric(sys, 200, kSeed, 1e-8);
    if (!v.pass) r.pass = false;
    detail << name << " min_real=" << sci(v.worst_min_real)
           << " max_imag=" << sci(v.worst_max_imag) << (v.pass ? "" : " FAIL") << "; ";
  }
  r.detail = detail.str() + "tol 1e-8";
  return r;
}

// ---- criterion 3: inner-action trivialization --------------------------------

CriterionResult criterion_trivialization() {
  CriterionResult r{3, "inner-action trivialization is an isometric *-isomorphism", true, ""};
  std::ostringstream detail;
  const std::vector<NamedSystem> systems = {{"(Z_4, M_2, inner)", sys_z4_m2_inner()},
                                            {"(H mod 2, M_2, inner)", sys_h2_m2_inner()}};
  for (const auto& [name, sys] : systems) {
    const SystemPtr triv = trivial_sibling(sys);
    double iso = 0, hom = 0, star = 0, round = 0;
    for (int i = 0; i < 200; ++i) {
      const L1Element x = random_element(sys, kSeed, 2 * static_cast<std::uint64_t>(i));
      const L1Element y = random_element(sys, kSeed, 2 * static_cast<std::uint64_t>(i) + 1);
      const double nx = l1_norm(x), ny = l1_norm(y);
      const L1Element px = trivialize_inner(x, triv), py = trivialize_inner(y, triv);
      iso = std::max(iso, std::abs(l1_norm(px) - nx) / nx);
      hom = std::max(hom, l1_norm(sub(trivialize_inner(convolve(x, y), triv), convolve(px, py))) /
                              (1.0 + nx * ny));
      star = std::max(star, l1_norm(sub(trivialize_inner(involute(x), triv), involute(px))) /
                                (1.0 + nx));
      round = std::max(round, l1_norm(sub(trivialize_inner_inverse(px, sys), x)) / (1.0 + nx));
    }
    const bool ok = iso <= 1e-12 && hom <= 1e-10 && star <= 1e-10 && round <= 1e-12;
    if (!ok) r.pass = false;
    detail << name << " iso=" << sci(iso) << " hom=" << sci(hom) << " star=" << sci(star)
           << " roundtrip=" << sci(round) << (ok ? "" : " FAIL") << "; ";
  }
  r.detail = detail.str() + "tols 1e-12/1e-10/1e-10/1e-12";
  return r;
}

// ---- criterion 4: covariant pair construction and regular embedding ----------

CriterionResult criterion_hat_system() {
  CriterionResult r{4, "covariant pair construction and isometric regular embedding", true, ""};
  std::ostringstream detail;
  for (const auto& [name, sys] : four_reference_systems()) {
    try {
      const HatSystem hat = build_hat_system(sys);
      double rho_iso = 0;
      for (int i = 0; i < 200; ++i) {
        const L1Element x = random_element(sys, kSeed, static_cast<std::uint64_t>(i));
        const double nx = l1_norm(x);
        rho_iso = std::max(rho_iso, std::abs(l1_norm(embed_regular(hat, x)) - nx) / (1.0 + nx));
      }
      const bool ok = hat.equivariance_defect() <= 1e-12 && rho_iso <= 1e-10;
      if (!ok) r.pass = false;
      detail << name << " equivariance=" << sci(hat.equivariance_defect())
             << " rho_iso=" << sci(rho_iso) << (ok ? "" : " FAIL") << "; ";
    } catch (const std::exception& e) {
      r.pass = false;
      detail << name << " construction failed: " << e.what() << "; ";
    }
  }
  r.detail = detail.str() + "tols 1e-12/1e-10";
  return r;
}

// ---- criterion 5: composite embedding chain -----------------------------------

CriterionResult criterion_composite() {
  CriterionResult r{5, "composite embedding preserves norm and involution", true, ""};
  std::ostringstream detail;
  for (const auto& [name, sys] : four_reference_systems()) {
    const HatSystem hat = build_hat_system(sys);
    const SystemPtr& hat_triv = hat.hat_trivial();
    double norm_defect = 0, star_defect = 0;
    for (int i = 0; i < 200; ++i) {
      const L1Element x = random_element(sys, kSeed, static_cast<std::uint64_t>(i));
      const double nx = l1_norm(x);
      const TensorElement tx = composite_embedding(hat, x);
      norm_defect = std::max(norm_defect, std::abs(tx.canonical_norm() - nx) / (1.0 + nx));
      const L1Element lhs = from_tensor(composite_embedding(hat, involute(x)), hat_triv);
      const L1Element rhs = from_tensor(tensor_involute(tx), hat_triv);
      star_defect = std::max(star_defect, l1_norm(sub(lhs, rhs)) / (1.0 + nx));
    }
    const bool ok = norm_defect <= 1e-10 && star_defect <= 1e-10;
    if (!ok) r.pass = false;
    detail << name << " norm=" << sci(norm_defect) << " star=" << sci(star_defect)
           << (ok ? "" : " FAIL") << "; ";
  }
  r.detail = detail.str() + "tol 1e-10";
  return r;
}

// ---- criterion 6: circulant oracle -------------------------------------------

CriterionResult criterion_oracle() {
  CriterionResult r{6, "left-mult spectra match the circulant oracle on (Z_n, C, triv)", true, ""};
  std::ostringstream detail;
  double worst = 0;
  for (int n : {2, 3, 4, 8, 16}) {
    const SystemPtr sys =
        make_system(cyclic_group(n), AlgebraContext::full_matrix(1), StarAction::trivial(cyclic_group(n)));
    for (int i = 0; i < 50; ++i) {
      const L1Element x = random_element(sys, kSeed, static_cast<std::uint64_t>(i));
      const double d = multiset_match_distance(spectrum_finite(x).eigenvalues,
                                               dft_spectrum_oracle(x).eigenvalues);
      worst = std::max(worst, d);
      if (d > 1e-9) r.pass = false;
    }
  }
  detail << "n in {2,3,4,8,16}, 50 elements each, worst matching distance " << sci(worst)
         << " (tol 1e-9)";
  r.detail = detail.str();
  return r;
}

// ---- criterion 7: exact delta identities --------------------------------------

bool delta_identities_exact(const SystemPtr& sys, std::string& err) {
  const int n = sys->group.order();
  std::vector<L1Element> deltas;
  deltas.reserve(n);
  for (int g = 0; g < n; ++g) deltas.push_back(delta(sys, g));
  for (int g = 0; g < n; ++g) {
    if (l1_norm(deltas[g]) != 1.0) {
      err = sys->name() + ": ||delta_" + std::to_string(g) + "|| != 1";
      return false;
    }
    if (!identical(involute(deltas[g]), deltas[static_cast<std::size_t>(sys->group.inv(g))])) {
      err = sys->name() + ": delta_" + std::to_string(g) + "* != delta_inv";
      return false;
    }
    for (int h = 0; h < n; ++h) {
      if (!identical(convolve(deltas[g], deltas[h]),
                     deltas[static_cast<std::size_t>(sys->group.mul(g, h))])) {
        err = sys->name() + ": delta product fails at (" + std::to_string(g) + "," +
              std::to_string(h) + ")";
        return false;
      }
    }
  }
  return true;
}

bool conjugation_identity(const SystemPtr& sys, double tol, double& worst) {
  const int n = sys->group.order();
  for (int g = 0; g < n; ++g) {
    const L1Element dg = delta(sys, g);
    const L1Element dginv = delta(sys, sys->group.inv(g));
    for (const auto& e : context_basis(sys->context)) {
      const L1Element lhs = convolve(convolve(dg, embed_coeff(sys, e)), dginv);
      const L1Element rhs = embed_coeff(sys, apply_action(sys->action, g, e));
      worst = std::max(worst, l1_norm(sub(lhs, rhs)));
    }
  }
  return worst <= tol;
}

CriterionResult criterion_delta_identities() {
  CriterionResult r{7, "exact delta-element identities and the conjugation law", true, ""};
  std::vector<NamedSystem> systems = four_reference_systems();
  // a wider family with trivial scalar coefficients
  std::vector<GroupRef> extra = {cyclic_group(1),        cyclic_group(2),  cyclic_group(3),
                                 cyclic_group(4),        cyclic_group(8),  cyclic_group(16),
                                 dihedral_group(1),      dihedral_group(2), dihedral_group(3),
                                 dihedral_group(4),      symmetric_group(1), symmetric_group(2),
                                 symmetric_group(3),     symmetric_group(4),
                                 heisenberg_mod_group(2), heisenberg_mod_group(3),
                                 direct_product(cyclic_group(2), dihedral_group(3))};
  for (auto& g : extra) {
    auto name = g.name();
    systems.push_back(
        {name, make_system(g, AlgebraContext::full_matrix(1), StarAction::trivial(g))});
  }
  systems.push_back({"(H mod 2, M_2, inner)", sys_h2_m2_inner()});

  std::string err;
  double worst_conj = 0;
  for (const auto& [name, sys] : systems) {
    if (!delta_identities_exact(sys, err)) {
      r.pass = false;
      r.detail = err;
      return r;
    }
    double w = 0;
    if (!conjugation_identity(sys, 1e-12, w)) {
      r.pass = false;
      r.detail = name + ": conjugation identity defect " + sci(w) + " > 1e-12";
      return r;
    }
    worst_conj = std::max(worst_conj, w);
  }
  r.detail = std::to_string(systems.size()) + " systems, delta identities exact, conjugation defect " +
             sci(worst_conj) + " (tol 1e-12)";
  return r;
}

// ---- criterion 8: integer dynamics evidence ------------------------------------

CriterionResult criterion_dynamics_evidence() {
  CriterionResult r{8, "integer-dynamics evidence: evaluation representations and radius bounds",
                    true, ""};
  const DynamicalSystem dyn = analyze_dynamics(5, {1, 0, 3, 4, 2});  // a 2-cycle and a 3-cycle
  const SystemPtr sys = dynamics_system_integer(dyn);

  double max_herm = 0, max_imag = 0, min_margin = 0;
  bool first = true;
  SampleOptions opt;
  opt.window = 3;
  for (int i = 0; i < 50; ++i) {
    const L1Element x = random_selfadjoint(sys, kSeed, static_cast<std::uint64_t>(i), opt);
    double max_modulus = 0;
    for (const auto& rep : evaluation_reps(x, 64)) {
      max_herm = std::max(max_herm, rep.hermitian_defect);
      max_imag = std::max(max_imag, rep.max_imag);
      max_modulus = std::max(max_modulus, rep.max_modulus);
    }
    const double margin = gelfand_radius(x, 4).final_bound - max_modulus;
    if (first || margin < min_margin) min_margin = margin;
    first = false;
  }
  if (max_herm > 1e-12 || max_imag > 1e-12 || min_margin < -1e-9) r.pass = false;

  // the averaged two-sided shift has spectral radius exactly 1 at every level
  const L1Element w = scale(0.5, add(delta(sys, 1), delta(sys, -1)));
  const GelfandSequence wg = gelfand_radius(w, 6);
  bool wiener_exact = true;
  for (double b : wg.bounds)
    if (b != 1.0) wiener_exact = false;
  if (!wiener_exact) r.pass = false;

  std::ostringstream detail;
  detail << "50 samples, 64 omegas: hermitian_defect=" << sci(max_herm)
         << " max_imag=" << sci(max_imag) << " gelfand_margin=" << sci(min_margin)
         << ", shift-average radius exact through level 6: " << (wiener_exact ? "yes" : "NO");
  r.detail = detail.str();
  return r;
}

// ---- criterion 9: deterministic reports -----------------------------------------

CriterionResult criterion_determinism() {
  CriterionResult r{9, "verification reports are byte-identical across runs", true, ""};
  const ScenarioConfig cfg = parse_config(example_config_json());
  const VerificationReport rep1 = run_scenario(cfg);
  const VerificationReport rep2 = run_scenario(cfg);
  const std::string j1 = report_to_json(rep1), j2 = report_to_json(rep2);
  const std::string c1 = spectra_to_csv(rep1), c2 = spectra_to_csv(rep2);
  r.pass = (j1 == j2) && (c1 == c2);
  r.detail = "example config run twice: JSON " + std::string(j1 == j2 ? "identical" : "DIFFERS") +
             ", CSV " + std::string(c1 == c2 ? "identical" : "DIFFERS") + " (" +
             std::to_string(j1.size()) + " bytes)";
  return r;
}

}  // namespace

SystemPtr sys_z4_m2_inner() {
  GroupRef g = cyclic_group(4);
  const cplx i(0.0, 1.0);
  std::vector<Matrix> u(4, Matrix::Identity(2, 2));
  u[1](1, 1) = i;
  u[2](1, 1) = -1.0;
  u[3](1, 1) = -i;
  auto action = StarAction::inner_unitary(g, std::move(u));
  return make_system(std::move(g), AlgebraContext::full_matrix(2), std::move(action));
}

SystemPtr sys_s3_perm() {
  GroupRef g = symmetric_group(3);
  auto action = StarAction::point_permutation(g, symmetric_point_perms(3));
  return make_system(std::move(g), AlgebraContext::diagonal(3), std::move(action));
}

SystemPtr sys_h2_scalar() {
  GroupRef g = heisenberg_mod_group(2);
  auto action = StarAction::trivial(g);
  return make_system(std::move(g), AlgebraContext::full_matrix(1), std::move(action));
}

SystemPtr sys_d4_perm() {
  GroupRef g = dihedral_group(4);
  auto action = StarAction::point_permutation(g, dihedral_point_perms(4));
  return make_system(std::move(g), AlgebraContext::diagonal(4), std::move(action));
}

SystemPtr sys_h2_m2_inner() {
  GroupRef g = heisenberg_mod_group(2);
  // u(a,b,c) = (-1)^c sz^b sx^a is a genuine unitary representation of the
  // mod-2 group: sz sx = - sx sz absorbs the commutator (0,0,1) -> -1.
  Matrix sx = Matrix::Zero(2, 2), sz = Matrix::Zero(2, 2);
  sx(0, 1) = 1.0;
  sx(1, 0) = 1.0;
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  std::vector<Matrix> u(8, Matrix::Identity(2, 2));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        Matrix m = Matrix::Identity(2, 2);
        if (b) m = sz * m;
        if (a) m = m * sx;
        if (c) m = -m;
        u[(a * 2 + b) * 2 + c] = m;
      }
  auto action = StarAction::inner_unitary(g, std::move(u));
  return make_system(std::move(g), AlgebraContext::full_matrix(2), std::move(action));
}

const char* example_config_json() {
  return R"({
  "system": {
    "group": {"kind": "cyclic", "n": 4},
    "context": {"type": "full", "dim": 2},
    "action": {"type": "inner", "unitaries": [
      [[[1, 0], [0, 0]], [[0, 0], [1, 0]]],
      [[[1, 0], [0, 0]], [[0, 0], [0, 1]]],
      [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]],
      [[[1, 0], [0, 0]], [[0, 0], [0, -1]]]
    ]}
  },
  "checks": [
    "hermitian",
    "symmetric",
    "morphisms",
    {"spectrum-of": [{"g": 1, "matrix": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]}]}
  ],
  "samples": 25,
  "seed": 7,
  "tol": 1e-8,
  "output": {"report": "out/report.json", "spectra_csv": "out/spectra.csv"}
}
)";
}

std::vector<CriterionResult> run_all() {
  std::vector<CriterionResult> out;
  out.push_back(criterion_hermitian());
  out.push_back(criterion_symmetric());
  out.push_back(criterion_trivialization());
  out.push_back(criterion_hat_system());
  out.push_back(criterion_composite());
  out.push_back(criterion_oracle());
  out.push_back(criterion_delta_identities());
  out.push_back(criterion_dynamics_evidence());
  out.push_back(criterion_determinism());
  return out;
}

int run_and_print(std::ostream& os) {
  bool all = true;
  for (const auto& r : run_all()) {
    os << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << ": " << r.name << " | "
       << r.detail << "\n";
    if (!r.pass) all = false;
  }
  os << (all ? "acceptance: all criteria passed\n" : "acceptance: FAILURES present\n");
  return all ? 0 : 1;
}

}  // namespace l1x::acceptance
