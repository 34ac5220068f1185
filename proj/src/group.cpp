#include "l1x/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace l1x {

namespace {

int posmod(std::int64_t a, int n) {
  const std::int64_t r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

void check_order_cap(long long order, const std::string& what) {
  if (order < 1) throw std::invalid_argument(what + ": order must be positive");
  if (order > kMaxGroupOrder) {
    throw std::invalid_argument(what + ": order " + std::to_string(order) +
                                " exceeds the table-size guard of " +
                                std::to_string(kMaxGroupOrder));
  }
}

std::vector<int> invert_perm(const std::vector<int>& p) {
  std::vector<int> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

std::vector<int> compose_perm(const std::vector<int>& p, const std::vector<int>& q) {
  // (p o q)(i) = p(q(i))
  std::vector<int> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
  return r;
}

FiniteGroup finish(FiniteGroup g) {
  auto v = validate_group(g);
  if (!v.ok) throw std::logic_error(g.name + ": builder produced an invalid table: " + v.message);
  return g;
}

}  // namespace

GroupValidation validate_group(const FiniteGroup& G) {
  GroupValidation r;
  const int n = G.order;
  auto fail = [&r](std::string msg, int g, int h, int k) {
    r.ok = false;
    r.message = std::move(msg);
    r.g = g;
    r.h = h;
    r.k = k;
    return r;
  };

  if (n < 1) return fail("order must be positive", -1, -1, -1);
  if (G.table.size() != static_cast<std::size_t>(n) * n)
    return fail("table size does not match order", -1, -1, -1);
  if (G.inverses.size() != static_cast<std::size_t>(n))
    return fail("inverse table size does not match order", -1, -1, -1);
  if (G.identity < 0 || G.identity >= n)
    return fail("identity index out of range", -1, -1, -1);

  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      const int p = G.mul(g, h);
      if (p < 0 || p >= n) return fail("table entry out of range", g, h, -1);
    }

  for (int g = 0; g < n; ++g) {
    if (G.mul(G.identity, g) != g || G.mul(g, G.identity) != g)
      return fail("identity law fails", g, -1, -1);
    if (G.inverses[g] < 0 || G.inverses[g] >= n || G.mul(g, G.inverses[g]) != G.identity)
      return fail("inverse law fails", g, -1, -1);
  }

  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      const int gh = G.mul(g, h);
      for (int k = 0; k < n; ++k) {
        if (G.mul(gh, k) != G.mul(g, G.mul(h, k)))
          return fail("associativity fails", g, h, k);
      }
    }

  return r;
}

GroupRef::GroupRef(FiniteGroup g) : finite_(std::make_shared<const FiniteGroup>(std::move(g))) {}

const FiniteGroup& GroupRef::finite() const {
  if (!finite_) throw std::logic_error("integer group has no Cayley table");
  return *finite_;
}

int GroupRef::order() const { return finite().order; }

void GroupRef::check_element(std::int64_t g) const {
  if (finite_ && (g < 0 || g >= finite_->order))
    throw std::out_of_range("group element index " + std::to_string(g) +
                            " out of range for " + finite_->name);
}

std::int64_t GroupRef::mul(std::int64_t g, std::int64_t h) const {
  if (is_integer()) return g + h;
  check_element(g);
  check_element(h);
  return finite_->mul(static_cast<int>(g), static_cast<int>(h));
}

std::int64_t GroupRef::inv(std::int64_t g) const {
  if (is_integer()) return -g;
  check_element(g);
  return finite_->inverses[static_cast<std::size_t>(g)];
}

bool GroupRef::contains(std::int64_t g) const {
  return is_integer() || (g >= 0 && g < finite_->order);
}

std::string GroupRef::label(std::int64_t g) const {
  if (is_integer()) return std::to_string(g);
  check_element(g);
  const auto& ls = finite_->labels;
  if (static_cast<std::size_t>(g) < ls.size()) return ls[static_cast<std::size_t>(g)];
  return std::to_string(g);
}

bool GroupRef::operator==(const GroupRef& other) const {
  if (is_integer() != other.is_integer()) return false;
  if (is_integer()) return true;
  if (finite_ == other.finite_) return true;
  return finite_->order == other.finite_->order && finite_->identity == other.finite_->identity &&
         finite_->table == other.finite_->table;
}

GroupRef cyclic_group(int n) {
  check_order_cap(n, "cyclic");
  FiniteGroup g;
  g.order = n;
  g.name = "cyclic(" + std::to_string(n) + ")";
  g.identity = 0;
  g.table.resize(static_cast<std::size_t>(n) * n);
  g.inverses.resize(n);
  g.labels.resize(n);
  for (int a = 0; a < n; ++a) {
    g.inverses[a] = (n - a) % n;
    g.labels[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) g.table[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  }
  return GroupRef(finish(std::move(g)));
}

GroupRef dihedral_group(int n) {
  if (n < 1) throw std::invalid_argument("dihedral: n must be positive");
  check_order_cap(2LL * n, "dihedral");
  // indices 0..n-1 are rotations r^j, indices n..2n-1 are reflections s r^j
  FiniteGroup g;
  const int ord = 2 * n;
  g.order = ord;
  g.name = "dihedral(" + std::to_string(n) + ")";
  g.identity = 0;
  g.table.resize(static_cast<std::size_t>(ord) * ord);
  g.inverses.resize(ord);
  g.labels.resize(ord);
  auto rot = [&](int a) { return posmod(a, n); };
  for (int a = 0; a < n; ++a) {
    g.labels[a] = "r" + std::to_string(a);
    g.labels[n + a] = "sr" + std::to_string(a);
    g.inverses[a] = rot(-a);
    g.inverses[n + a] = n + a;  // reflections are involutions
  }
  auto set = [&](int x, int y, int v) { g.table[static_cast<std::size_t>(x) * ord + y] = v; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      set(a, b, rot(a + b));              // r^a r^b = r^(a+b)
      set(a, n + b, n + rot(b - a));      // r^a (s r^b) = s r^(b-a)
      set(n + a, b, n + rot(a + b));      // (s r^a) r^b = s r^(a+b)
      set(n + a, n + b, rot(b - a));      // (s r^a)(s r^b) = r^(b-a)
    }
  return GroupRef(finish(std::move(g)));
}

GroupRef symmetric_group(int n) {
  if (n < 1) throw std::invalid_argument("symmetric: n must be positive");
  if (n > 6) throw std::invalid_argument("symmetric: n > 6 exceeds the table-size guard");
  auto perms = symmetric_point_perms(n);
  const int ord = static_cast<int>(perms.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < ord; ++i) index[perms[i]] = i;

  FiniteGroup g;
  g.order = ord;
  g.name = "symmetric(" + std::to_string(n) + ")";
  g.identity = 0;  // lexicographically first permutation is the identity
  g.table.resize(static_cast<std::size_t>(ord) * ord);
  g.inverses.resize(ord);
  g.labels.resize(ord);
  for (int a = 0; a < ord; ++a) {
    g.inverses[a] = index.at(invert_perm(perms[a]));
    std::string lbl;
    for (int v : perms[a]) lbl += std::to_string(v);
    g.labels[a] = lbl;
    for (int b = 0; b < ord; ++b)
      g.table[static_cast<std::size_t>(a) * ord + b] = index.at(compose_perm(perms[a], perms[b]));
  }
  return GroupRef(finish(std::move(g)));
}

GroupRef heisenberg_mod_group(int n) {
  if (n < 1) throw std::invalid_argument("heisenberg_mod: n must be positive");
  const long long ord = 1LL * n * n * n;
  check_order_cap(ord, "heisenberg_mod");
  // element (a,b,c) stands for the upper triangular matrix
  //   [1 a c; 0 1 b; 0 0 1]  over Z_n, indexed as (a*n + b)*n + c
  FiniteGroup g;
  g.order = static_cast<int>(ord);
  g.name = "heisenberg_mod(" + std::to_string(n) + ")";
  g.identity = 0;
  g.table.resize(static_cast<std::size_t>(ord) * ord);
  g.inverses.resize(ord);
  g.labels.resize(ord);
  auto idx = [n](int a, int b, int c) { return (a * n + b) * n + c; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const int i = idx(a, b, c);
        g.labels[i] = "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
        g.inverses[i] = idx(posmod(-a, n), posmod(-b, n), posmod(1LL * a * b - c, n));
        for (int a2 = 0; a2 < n; ++a2)
          for (int b2 = 0; b2 < n; ++b2)
            for (int c2 = 0; c2 < n; ++c2) {
              const int j = idx(a2, b2, c2);
              const int k = idx(posmod(a + a2, n), posmod(b + b2, n),
                                posmod(0LL + c + c2 + 1LL * a * b2, n));
              g.table[static_cast<std::size_t>(i) * ord + j] = k;
            }
      }
  return GroupRef(finish(std::move(g)));
}

GroupRef direct_product(const GroupRef& a, const GroupRef& b) {
  if (a.is_integer() || b.is_integer())
    throw std::invalid_argument("direct_product: both factors must be finite");
  const FiniteGroup& A = a.finite();
  const FiniteGroup& B = b.finite();
  const long long ord = 1LL * A.order * B.order;
  check_order_cap(ord, "direct_product");

  FiniteGroup g;
  g.order = static_cast<int>(ord);
  g.name = "product(" + A.name + "," + B.name + ")";
  g.table.resize(static_cast<std::size_t>(ord) * ord);
  g.inverses.resize(ord);
  g.labels.resize(ord);
  auto idx = [&B](int x, int y) { return x * B.order + y; };
  g.identity = idx(A.identity, B.identity);
  for (int x = 0; x < A.order; ++x)
    for (int y = 0; y < B.order; ++y) {
      const int i = idx(x, y);
      g.inverses[i] = idx(A.inverses[x], B.inverses[y]);
      g.labels[i] = "(" + (x < static_cast<int>(A.labels.size()) ? A.labels[x] : std::to_string(x)) +
                    "," + (y < static_cast<int>(B.labels.size()) ? B.labels[y] : std::to_string(y)) + ")";
      for (int x2 = 0; x2 < A.order; ++x2)
        for (int y2 = 0; y2 < B.order; ++y2)
          g.table[static_cast<std::size_t>(i) * ord + idx(x2, y2)] = idx(A.mul(x, x2), B.mul(y, y2));
    }
  return GroupRef(finish(std::move(g)));
}

GroupRef integer_group() { return GroupRef(); }

std::vector<std::vector<int>> cyclic_point_perms(int n) {
  std::vector<std::vector<int>> out(n, std::vector<int>(n));
  for (int g = 0; g < n; ++g)
    for (int i = 0; i < n; ++i) out[g][i] = (i + g) % n;
  return out;
}

std::vector<std::vector<int>> dihedral_point_perms(int n) {
  std::vector<std::vector<int>> out(2 * n, std::vector<int>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      out[j][i] = posmod(i + j, n);       // r^j
      out[n + j][i] = posmod(-(i + j), n);  // s r^j
    }
  return out;
}

std::vector<std::vector<int>> symmetric_point_perms(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace l1x
