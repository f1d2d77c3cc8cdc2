#include "permutations.hpp"

#include <algorithm>
#include <numeric>

#include "errors.hpp"

namespace cpvdw {

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20)
    throw InvalidArgument("factorial argument out of range");
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k)
    f *= static_cast<std::uint64_t>(k);
  return f;
}

std::uint64_t perm_class_count(int j) {
  if (j < 2 || j > 8)
    throw UnsupportedOrder("cyclic-order classes supported for 2 <= j <= 8");
  if (j == 2)
    return 1;
  return factorial(j - 1) / 2;
}

PermClassReps perm_class_reps(int j) {
  if (j < 2 || j > 8)
    throw UnsupportedOrder("cyclic-order classes supported for 2 <= j <= 8");

  PermClassReps out;
  out.j = j;

  // Rotation freedom pins c0 = 0; reversal maps (0, a1, ..., a_{j-1}) to
  // (0, a_{j-1}, ..., a1), so keeping a1 < a_{j-1} picks exactly one
  // member per class.  j = 2 has a1 == a_{j-1} and a single class.
  std::vector<int> tail(j - 1);
  std::iota(tail.begin(), tail.end(), 1);
  do {
    if (j > 2 && tail.front() > tail.back())
      continue;
    std::vector<int> rep;
    rep.reserve(j);
    rep.push_back(0);
    rep.insert(rep.end(), tail.begin(), tail.end());
    out.reps.push_back(std::move(rep));
  } while (std::next_permutation(tail.begin(), tail.end()));

  return out;
}

} // namespace cpvdw
