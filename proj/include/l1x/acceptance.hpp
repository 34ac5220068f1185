#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "l1x/l1.hpp"

namespace l1x::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// The built-in verification suite: every release-gating property with its
// pinned tolerance. Also exposed through the CLI as `selftest`.
std::vector<CriterionResult> run_all();

// Runs the suite, printing one pass/fail line per criterion. Returns 0 when
// everything passed, 1 otherwise.
int run_and_print(std::ostream& os);

// The example configuration shipped in configs/example.json, embedded so the
// suite is self-contained.
const char* example_config_json();

// Reference systems used across the suite and the tests.
SystemPtr sys_z4_m2_inner();   // (Z_4, M_2, Ad diag(1, i))
SystemPtr sys_s3_perm();       // (S_3, Diagonal(3), natural permutations)
SystemPtr sys_h2_scalar();     // (heisenberg_mod(2), C, trivial)
SystemPtr sys_d4_perm();       // (dihedral(4), Diagonal(4), vertex permutations)
SystemPtr sys_h2_m2_inner();   // (heisenberg_mod(2), M_2, Pauli-type unitaries)

}  // namespace l1x::acceptance
