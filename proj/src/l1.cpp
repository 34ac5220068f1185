#include "l1x/l1.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace l1x {

namespace {

void require_same_system(const L1Element& x, const L1Element& y, const char* op) {
  if (!x.same_system(y)) throw std::invalid_argument(std::string(op) + ": system mismatch");
}

}  // namespace

SystemPtr make_system(GroupRef group, AlgebraContext ctx, StarAction action) {
  if (!(action.group() == group))
    throw std::invalid_argument("make_system: action is defined over a different group");
  switch (action.kind()) {
    case ActionKind::trivial:
      break;
    case ActionKind::inner_unitary:
      if (!action.unitaries().empty() && action.unitaries()[0].rows() != ctx.dim())
        throw std::invalid_argument("make_system: unitary dimension does not match context");
      break;
    case ActionKind::point_permutation:
      if (!ctx.is_diagonal())
        throw std::invalid_argument("make_system: permutation action needs a diagonal context");
      break;
    case ActionKind::integer_dynamics:
      if (!ctx.is_diagonal() || static_cast<int>(action.sigma().size()) != ctx.dim())
        throw std::invalid_argument("make_system: dynamics action needs Diagonal(|X|)");
      break;
  }
  auto v = validate_action(action, ctx);
  if (!v.ok) throw std::invalid_argument("make_system: invalid action: " + v.message);
  return std::make_shared<const CrossedSystem>(
      CrossedSystem{std::move(group), std::move(ctx), std::move(action)});
}

SystemPtr trivial_sibling(const SystemPtr& sys) {
  return make_system(sys->group, sys->context, StarAction::trivial(sys->group));
}

const AlgElement* L1Element::at(std::int64_t g) const {
  auto it = support_.find(g);
  return it == support_.end() ? nullptr : &it->second;
}

void L1Element::set(std::int64_t g, AlgElement v) {
  if (!sys_->group.contains(g))
    throw std::out_of_range("L1Element::set: element not in group");
  if (!(v.context() == sys_->context))
    throw std::invalid_argument("L1Element::set: context mismatch");
  if (operator_norm(v) > 0.0)
    support_.insert_or_assign(g, std::move(v));
  else
    support_.erase(g);
}

bool L1Element::same_system(const L1Element& other) const {
  return sys_ == other.sys_ || *sys_ == *other.sys_;
}

L1Element delta(SystemPtr sys, std::int64_t g) {
  L1Element x(sys);
  x.set(g, AlgElement::identity(sys->context));
  return x;
}

L1Element unit(SystemPtr sys) {
  const std::int64_t e = sys->group.identity();
  return delta(std::move(sys), e);
}

L1Element embed_coeff(SystemPtr sys, const AlgElement& a) {
  const std::int64_t e = sys->group.identity();
  return single_term(std::move(sys), e, a);
}

L1Element single_term(SystemPtr sys, std::int64_t g, const AlgElement& a) {
  L1Element x(std::move(sys));
  x.set(g, a);
  return x;
}

namespace {

L1Element convolve_impl(const L1Element& x, const L1Element& y, double prune) {
  require_same_system(x, y, "convolve");
  const auto& sys = *x.system();

  std::map<std::int64_t, AlgElement> acc;
  for (const auto& [k, xv] : x.support()) {
    for (const auto& [h, yv] : y.support()) {
      const std::int64_t g = sys.group.mul(k, h);
      AlgElement term = alg_mul(xv, apply_action(sys.action, k, yv));
      auto it = acc.find(g);
      if (it == acc.end())
        acc.emplace(g, std::move(term));
      else
        it->second = alg_add(it->second, term);
    }
  }

  L1Element out(x.system());
  for (auto& [g, v] : acc) {
    if (operator_norm(v) > prune) out.set(g, std::move(v));
  }
  return out;
}

}  // namespace

L1Element convolve(const L1Element& x, const L1Element& y) {
  return convolve_impl(x, y, 1e-14 * (l1_norm(x) * l1_norm(y) + 1.0));
}

L1Element convolve_exact(const L1Element& x, const L1Element& y) {
  return convolve_impl(x, y, 0.0);
}

L1Element involute(const L1Element& x) {
  const auto& sys = *x.system();
  L1Element out(x.system());
  for (const auto& [h, v] : x.support()) {
    const std::int64_t g = sys.group.inv(h);
    out.set(g, apply_action(sys.action, g, alg_adjoint(v)));
  }
  return out;
}

double l1_norm(const L1Element& x) {
  double s = 0;
  for (const auto& [g, v] : x.support()) s += operator_norm(v);
  return s;
}

L1Element lin_comb(std::span<const cplx> coeffs, std::span<const L1Element> elems) {
  if (coeffs.size() != elems.size())
    throw std::invalid_argument("lin_comb: coefficient/element count mismatch");
  if (elems.empty()) throw std::invalid_argument("lin_comb: empty combination");
  for (std::size_t i = 1; i < elems.size(); ++i) require_same_system(elems[0], elems[i], "lin_comb");

  std::map<std::int64_t, AlgElement> acc;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& [g, v] : elems[i].support()) {
      AlgElement term = alg_scale(coeffs[i], v);
      auto it = acc.find(g);
      if (it == acc.end())
        acc.emplace(g, std::move(term));
      else
        it->second = alg_add(it->second, term);
    }
  }
  L1Element out(elems[0].system());
  for (auto& [g, v] : acc) out.set(g, std::move(v));  // set() drops exact zeros
  return out;
}

L1Element add(const L1Element& x, const L1Element& y) {
  const cplx c[] = {1.0, 1.0};
  const L1Element e[] = {x, y};
  return lin_comb(c, e);
}

L1Element sub(const L1Element& x, const L1Element& y) {
  const cplx c[] = {1.0, -1.0};
  const L1Element e[] = {x, y};
  return lin_comb(c, e);
}

L1Element scale(cplx c, const L1Element& x) {
  const cplx cs[] = {c};
  const L1Element e[] = {x};
  return lin_comb(cs, e);
}

bool equal_within(const L1Element& x, const L1Element& y, double tol) {
  return l1_norm(sub(x, y)) <= tol;
}

bool identical(const L1Element& x, const L1Element& y) {
  if (!x.same_system(y) || x.support().size() != y.support().size()) return false;
  auto it = y.support().begin();
  for (const auto& [g, v] : x.support()) {
    if (it->first != g || !mat_equal(it->second.matrix(), v.matrix())) return false;
    ++it;
  }
  return true;
}

namespace {

AlgElement random_coeff(const AlgebraContext& ctx, Prng& rng, double scl) {
  const int d = ctx.dim();
  if (ctx.is_diagonal()) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = scl * rng.normal_complex();
    return AlgElement::from_diagonal(ctx, v);
  }
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = scl * rng.normal_complex();
  return AlgElement(ctx, std::move(m));
}

}  // namespace

L1Element random_element(const SystemPtr& sys, std::uint64_t seed, std::uint64_t index,
                         const SampleOptions& opt) {
  Prng rng(seed, index);
  L1Element x(sys);

  std::vector<std::int64_t> supp;
  if (sys->group.is_integer()) {
    for (std::int64_t g = -opt.window; g <= opt.window; ++g) supp.push_back(g);
  } else {
    const int n = sys->group.order();
    if (opt.support_size <= 0 || opt.support_size >= n) {
      for (int g = 0; g < n; ++g) supp.push_back(g);
    } else {
      // draw support_size distinct elements, deterministically
      std::vector<int> pool(n);
      for (int i = 0; i < n; ++i) pool[i] = i;
      for (int i = 0; i < opt.support_size; ++i) {
        const int j = i + static_cast<int>(rng.next_u64() % (n - i));
        std::swap(pool[i], pool[j]);
        supp.push_back(pool[i]);
      }
      std::sort(supp.begin(), supp.end());
    }
  }

  for (std::int64_t g : supp) x.set(g, random_coeff(sys->context, rng, opt.scale));
  return x;
}

L1Element random_selfadjoint(const SystemPtr& sys, std::uint64_t seed, std::uint64_t index,
                             const SampleOptions& opt) {
  L1Element y = random_element(sys, seed, index, opt);
  const cplx c[] = {0.5, 0.5};
  const L1Element e[] = {y, involute(y)};
  return lin_comb(c, e);
}

DynamicalSystem analyze_dynamics(int points, std::vector<int> sigma) {
  if (points < 1) throw std::invalid_argument("analyze_dynamics: need at least one point");
  if (static_cast<int>(sigma.size()) != points)
    throw std::invalid_argument("analyze_dynamics: sigma length does not match point count");
  {
    std::vector<char> seen(points, 0);
    for (int v : sigma) {
      if (v < 0 || v >= points || seen[v])
        throw std::invalid_argument("analyze_dynamics: sigma is not a bijection");
      seen[v] = 1;
    }
  }

  DynamicalSystem dyn;
  dyn.points = points;
  dyn.sigma = std::move(sigma);
  std::vector<char> done(points, 0);
  for (int i = 0; i < points; ++i) {
    if (done[i]) continue;
    std::vector<int> orbit;
    for (int j = i; !done[j]; j = dyn.sigma[j]) {
      done[j] = 1;
      orbit.push_back(j);
    }
    const auto len = static_cast<std::int64_t>(orbit.size());
    const std::int64_t step = dyn.period / std::gcd(dyn.period, len);
    if (step > 1000000000000000LL / len)
      throw std::invalid_argument("analyze_dynamics: sigma order overflows the supported range");
    dyn.period = step * len;
    dyn.orbits.push_back(std::move(orbit));
  }
  return dyn;
}

SystemPtr dynamics_system_integer(const DynamicalSystem& dyn) {
  auto ctx = AlgebraContext::diagonal(dyn.points);
  return make_system(integer_group(), ctx, StarAction::integer_dynamics(dyn.sigma));
}

SystemPtr dynamics_system_quotient(const DynamicalSystem& dyn) {
  if (dyn.period > kMaxGroupOrder)
    throw std::invalid_argument("dynamics_system_quotient: sigma order exceeds the group-order cap");
  const int p = static_cast<int>(dyn.period);
  GroupRef zp = cyclic_group(p);
  // perm for k in Z_p is sigma^k; alpha_k(f) = f o sigma^{-k}
  std::vector<std::vector<int>> perms(p, std::vector<int>(dyn.points));
  std::vector<int> pow(dyn.points);
  for (int i = 0; i < dyn.points; ++i) pow[i] = i;
  for (int k = 0; k < p; ++k) {
    perms[k] = pow;
    std::vector<int> next(dyn.points);
    for (int i = 0; i < dyn.points; ++i) next[i] = dyn.sigma[pow[i]];
    pow = std::move(next);
  }
  auto ctx = AlgebraContext::diagonal(dyn.points);
  auto action = StarAction::point_permutation(zp, std::move(perms));
  return make_system(std::move(zp), std::move(ctx), std::move(action));
}

}  // namespace l1x
