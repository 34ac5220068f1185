#pragma once

#include <map>
#include <memory>
#include <span>

#include "l1x/algebra.hpp"
#include "l1x/random.hpp"

namespace l1x {

// A C*-dynamical system at desk scale: discrete group, matrix coefficient
// algebra, and an action by *-automorphisms. Immutable once built.
struct CrossedSystem {
  GroupRef group;
  AlgebraContext context;
  StarAction action;

  bool operator==(const CrossedSystem& o) const {
    return group == o.group && context == o.context && action == o.action;
  }
  std::string name() const {
    return "l1(" + group.name() + ", " + context.name() + ")";
  }
};

using SystemPtr = std::shared_ptr<const CrossedSystem>;

// Validates the action against group and context (throws std::invalid_argument
// with the violated law otherwise).
SystemPtr make_system(GroupRef group, AlgebraContext ctx, StarAction action);

// The trivial-action sibling of a system (same group, same coefficients).
SystemPtr trivial_sibling(const SystemPtr& sys);

// A finitely supported map G -> A with the l1 norm. Stored values are
// nonzero; the zero element has empty support.
class L1Element {
 public:
  using Support = std::map<std::int64_t, AlgElement>;

  explicit L1Element(SystemPtr sys) : sys_(std::move(sys)) {}

  const SystemPtr& system() const { return sys_; }
  const Support& support() const { return support_; }
  bool is_zero() const { return support_.empty(); }

  // nullptr when g is not in the support
  const AlgElement* at(std::int64_t g) const;

  // stores v at g, dropping exact zeros
  void set(std::int64_t g, AlgElement v);

  bool same_system(const L1Element& other) const;

 private:
  SystemPtr sys_;
  Support support_;
};

L1Element delta(SystemPtr sys, std::int64_t g);
L1Element unit(SystemPtr sys);
L1Element embed_coeff(SystemPtr sys, const AlgElement& a);
L1Element single_term(SystemPtr sys, std::int64_t g, const AlgElement& a);  // a * delta_g

// Twisted convolution (x y)(g) = sum_k x_k alpha_k(y_{k^-1 g}); values with
// operator norm <= 1e-14 (||x|| ||y|| + 1) are pruned.
L1Element convolve(const L1Element& x, const L1Element& y);

// Same product, keeping every nonzero coefficient. Radius bounds use this:
// pruning genuine tail mass would bias ||x^(2^k)|| downward.
L1Element convolve_exact(const L1Element& x, const L1Element& y);

// Involution x*(g) = alpha_g((x_{g^-1})*).
L1Element involute(const L1Element& x);

double l1_norm(const L1Element& x);

L1Element lin_comb(std::span<const cplx> coeffs, std::span<const L1Element> elems);
L1Element add(const L1Element& x, const L1Element& y);
L1Element sub(const L1Element& x, const L1Element& y);
L1Element scale(cplx c, const L1Element& x);

// ||x - y||_1 <= tol
bool equal_within(const L1Element& x, const L1Element& y, double tol);

// Bitwise equality: same support, same matrices. Used for the identities
// that hold exactly (delta algebra, canonical-form round trips).
bool identical(const L1Element& x, const L1Element& y);

struct SampleOptions {
  int support_size = 0;  // finite groups: 0 = full group
  int window = 3;        // Z: support inside [-window, window]
  double scale = 1.0;
};

// Coefficients have independent standard-normal real and imaginary entries
// (diagonal entries only in diagonal contexts), times scale. Deterministic
// in (seed, index) and order-independent across indices.
L1Element random_element(const SystemPtr& sys, std::uint64_t seed, std::uint64_t index,
                         const SampleOptions& opt = {});

// (y + y*)/2 for a random y; satisfies x* = x exactly.
L1Element random_selfadjoint(const SystemPtr& sys, std::uint64_t seed, std::uint64_t index,
                             const SampleOptions& opt = {});

// Topological dynamics on a finite point set: sigma a permutation of X.
struct DynamicalSystem {
  int points = 0;
  std::vector<int> sigma;
  std::vector<std::vector<int>> orbits;  // cycles of sigma
  std::int64_t period = 1;               // lcm of cycle lengths
};

DynamicalSystem analyze_dynamics(int points, std::vector<int> sigma);

// l1(Z, C(X), alpha) with alpha_n(f) = f o sigma^{-n}. Exact group
// arithmetic; spectra limited to evidence-grade methods.
SystemPtr dynamics_system_integer(const DynamicalSystem& dyn);

// The finite quotient: sigma has order p, so the action factors through Z_p.
// Full spectral support.
SystemPtr dynamics_system_quotient(const DynamicalSystem& dyn);

}  // namespace l1x
