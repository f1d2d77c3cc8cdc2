#ifndef CPVDW_PERMUTATIONS_HPP
#define CPVDW_PERMUTATIONS_HPP

#include <cstdint>
#include <vector>

namespace cpvdw {

// Representatives of the cyclic-order classes entering the j-point trace
// products.  A closed chain H(r_{c0},r_{c1}) H(r_{c1},r_{c2}) ... back to
// r_{c0} is invariant under cyclic rotation of (c0..c_{j-1}) and, by
// reciprocity, under reversal, so only j!/(2j) orderings are distinct
// (1 for j = 2 and 3, (j-1)!/2 for j >= 3).  Each representative is the
// lexicographically smallest member of its class and starts at index 0.
struct PermClassReps {
  int j = 0;
  std::vector<std::vector<int>> reps;
};

// Supported orders: 2 <= j <= 8; outside that range UnsupportedOrder.
PermClassReps perm_class_reps(int j);

std::uint64_t perm_class_count(int j);

std::uint64_t factorial(int n);

} // namespace cpvdw

#endif
