#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace l1x {

// Dense Cayley tables keep every group operation a table lookup; the order
// cap keeps tables and downstream regular representations at desk scale.
inline constexpr int kMaxGroupOrder = 1024;

// A finite group given by its multiplication table: table[g*order + h] = g*h.
struct FiniteGroup {
  int order = 0;
  std::vector<int> table;  // order x order, row-major
  int identity = 0;
  std::vector<int> inverses;
  std::vector<std::string> labels;  // cosmetic; semantics use indices only
  std::string name;                 // e.g. "cyclic(4)"

  int mul(int g, int h) const {
    return table[static_cast<std::size_t>(g) * order + h];
  }
};

struct GroupValidation {
  bool ok = true;
  std::string message;
  // witness of the first violated law (indices, -1 when unused)
  int g = -1, h = -1, k = -1;
};

// Checks bounds, identity, inverses and full associativity (O(order^3)).
GroupValidation validate_group(const FiniteGroup& G);

// A finite group, or the additive group of integers handled symbolically.
// Elements are table indices for finite groups and signed integers for Z.
class GroupRef {
 public:
  GroupRef() = default;  // integer group
  explicit GroupRef(FiniteGroup g);

  bool is_integer() const { return finite_ == nullptr; }
  bool is_finite() const { return finite_ != nullptr; }
  const FiniteGroup& finite() const;
  int order() const;  // throws for Z

  std::int64_t identity() const { return is_integer() ? 0 : finite_->identity; }
  std::int64_t mul(std::int64_t g, std::int64_t h) const;
  std::int64_t inv(std::int64_t g) const;
  bool contains(std::int64_t g) const;
  std::string label(std::int64_t g) const;
  std::string name() const { return is_integer() ? "Z" : finite_->name; }

  bool operator==(const GroupRef& other) const;

 private:
  void check_element(std::int64_t g) const;
  std::shared_ptr<const FiniteGroup> finite_;
};

GroupRef cyclic_group(int n);
GroupRef dihedral_group(int n);        // order 2n
GroupRef symmetric_group(int n);       // n <= 6
GroupRef heisenberg_mod_group(int n);  // order n^3
GroupRef direct_product(const GroupRef& a, const GroupRef& b);
GroupRef integer_group();

// Defining point permutations aligned with the builders' element indexing:
// perms[g][i] is the image of point i under element g, and g -> perms[g] is a
// homomorphism for the corresponding Cayley table.
std::vector<std::vector<int>> cyclic_point_perms(int n);
std::vector<std::vector<int>> dihedral_point_perms(int n);
std::vector<std::vector<int>> symmetric_point_perms(int n);

}  // namespace l1x
