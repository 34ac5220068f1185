#pragma once

#include <stdexcept>

#include "l1x/l1.hpp"

namespace l1x {

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EigenSolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The operator y -> x*y on the coefficient-wise basis of l1(G, A): basis
// {E_ij delta_g} for full contexts (N = |G| D^2), {e_i delta_g} for diagonal
// ones (N = |G| D). Basis index = g*stride + local, with matrix units in
// row-major order.
struct LeftMultMatrix {
  Matrix mat;
  int group_order = 0;
  int coeff_dim = 0;
  bool diagonal_context = false;
  int stride() const { return diagonal_context ? coeff_dim : coeff_dim * coeff_dim; }
};

LeftMultMatrix left_mult_matrix(const L1Element& x);

// All eigenvalues (with multiplicity) of a dense complex matrix, via
// Hessenberg reduction and shifted QR (Eigen's complex Schur path). For
// N <= 64 every eigenvalue is certified: a residual vector v is recomputed
// independently and ||(M - lambda I) v|| <= 1e-10 ||M|| is verified.
std::vector<cplx> eig_general(const Matrix& m);

enum class SpectrumMethod { left_mult, dft_oracle, evaluation_rep, gelfand_bound };
const char* to_string(SpectrumMethod m);

struct SpectrumResult {
  std::vector<cplx> eigenvalues;   // raw, with module multiplicity
  std::vector<cplx> deduplicated;  // clustered at tolerance 1e-8
  double max_imag = 0;             // max |Im lambda|
  double min_real = 0;
  double max_modulus = 0;
  SpectrumMethod method = SpectrumMethod::left_mult;
};

SpectrumResult make_spectrum_result(std::vector<cplx> eigs, SpectrumMethod method);

// Exact algebra spectrum of x in a finite-dimensional system: eigenvalues of
// the left multiplication operator.
SpectrumResult spectrum_finite(const L1Element& x, int dim_cap = 4096);

// Independent oracle for (Z_n, C, triv): the circulant eigenvalues
// sum_k x_k omega^k over the n-th roots of unity. No shared code with
// spectrum_finite.
SpectrumResult dft_spectrum_oracle(const L1Element& x);

struct VerifySample {
  std::uint64_t index = 0;
  bool ok = false;
  double normalized_max_imag = 0;
  double normalized_min_real = 0;
  std::string error;  // nonempty when inconclusive
};

struct SpectralVerification {
  std::string check;  // "hermitian" | "symmetric"
  std::uint64_t seed = 0;
  int samples = 0;
  double tol = 0;
  double worst_max_imag = 0;  // max over samples, normalized
  double worst_min_real = 0;  // min over samples, normalized (symmetric)
  std::uint64_t worst_index = 0;
  int inconclusive = 0;
  bool pass = false;
  std::vector<VerifySample> per_sample;
  std::vector<SpectrumResult> spectra;  // aligned with per_sample
};

// For random self-adjoint x: max |Im lambda| / (1 + ||x||) <= tol across all
// samples. Eigensolver failures mark the sample inconclusive and fail the run.
SpectralVerification verify_hermitian(const SystemPtr& sys, int samples, std::uint64_t seed,
                                      double tol, const SampleOptions& opt = {});

// For random x: spectrum of x x* must satisfy min Re >= -tol (1 + ||x||^2)
// and max |Im| <= tol (1 + ||x||^2).
SpectralVerification verify_symmetric(const SystemPtr& sys, int samples, std::uint64_t seed,
                                      double tol, const SampleOptions& opt = {});

struct GelfandSequence {
  std::vector<double> bounds;  // bounds[k] = ||x^(2^k)||^(1/2^k)
  double final_bound = 0;
  int levels = 0;
};

// Decreasing upper bounds on the spectral radius by repeated squaring.
// Works over Z as well; support growth is capped (ResourceError).
GelfandSequence gelfand_radius(const L1Element& x, int max_level,
                               std::size_t support_cap = 1000000);

struct EvaluationRep {
  cplx omega;
  Matrix rep;                  // pi_omega(x), |X| x |X|
  std::vector<cplx> eigenvalues;
  double hermitian_defect = 0;  // ||rep - rep*||
  double star_defect = 0;       // ||pi(x*) - pi(x)*||
  double max_imag = 0;
  double max_modulus = 0;
};

// Finite-dimensional *-representations pi_omega(f delta_n) = diag(f) (omega P)^n
// of an integer-dynamics system, for omega_count points equidistributed on the
// unit circle.
std::vector<EvaluationRep> evaluation_reps(const L1Element& x, int omega_count);

// Greedy optimal-pair matching of two complex multisets; returns the largest
// matched distance (infinity on size mismatch).
double multiset_match_distance(std::vector<cplx> a, std::vector<cplx> b);

}  // namespace l1x
