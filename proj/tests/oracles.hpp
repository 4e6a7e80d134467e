// Test-only reference computations, deliberately naive and independent of the
// library's fast paths.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace oracles {

/// Leibniz-formula determinant over all permutations.
inline long long leibniz_det(const std::vector<std::vector<long long>>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  long long det = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    long long term = inversions % 2 ? -1 : 1;
    for (int i = 0; i < n; ++i) term *= a[i][perm[i]];
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

/// Every n x n upper-triangular matrix with positive diagonal, product of
/// diagonal m, and 0 <= a_ij < a_jj, built by brute nested search over all
/// diagonals in [1, m].
inline std::vector<std::vector<long long>> naive_hnfs(int n, long long m) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> cur(static_cast<std::size_t>(n) * n, 0);
  std::function<void(int)> fill_off;
  std::function<void(int, long long)> fill_diag = [&](int i, long long prod) {
    if (i == n) {
      if (prod == m) fill_off(0);
      return;
    }
    for (long long d = 1; d <= m; ++d) {
      if (prod * d > m) break;
      cur[i * n + i] = d;
      fill_diag(i + 1, prod * d);
    }
  };
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  fill_off = [&](int s) {
    if (s == static_cast<int>(slots.size())) {
      out.push_back(cur);
      return;
    }
    const auto [i, j] = slots[s];
    for (long long v = 0; v < cur[j * n + j]; ++v) {
      cur[i * n + j] = v;
      fill_off(s + 1);
    }
    cur[i * n + j] = 0;
  };
  fill_diag(0, 1);
  return out;
}

}  // namespace oracles
