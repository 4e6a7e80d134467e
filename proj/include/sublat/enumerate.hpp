// Streaming enumeration of all Hermite normal forms with a given determinant.
#pragma once

#include <cstdint>
#include <vector>

#include "sublat/forms.hpp"

namespace sublat {

/// A contiguous slice of the enumeration: one diagonal and a half-open range
/// of off-diagonal ranks.
struct HnfWorkUnit {
  std::vector<std::int64_t> diag;
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};

/// Number of off-diagonal fillings for a diagonal: prod_j h_j^(j-1).
std::uint64_t off_diagonal_count(const std::vector<std::int64_t>& diag);

/// Single-consumer stream over HNF_n(m).
///
/// Order: diagonals (h_1..h_n) in lexicographic order of divisor compositions
/// of m; for each diagonal, the off-diagonal tuple (h_12, h_13, .., h_1n,
/// h_23, .., h_(n-1)n) runs as an odometer whose last position turns fastest,
/// each h_ij ranging over [0, h_j).
///
///   HnfStream s(3, 4);
///   while (const HnfMatrix* h = s.next()) { ... }
class HnfStream {
 public:
  HnfStream(int n, std::int64_t m);
  /// Stream restricted to a list of work units, consumed in order.
  HnfStream(int n, std::vector<HnfWorkUnit> units);

  /// Advances and returns the next matrix, or nullptr when exhausted. The
  /// pointer stays valid until the following call.
  const HnfMatrix* next();

 private:
  bool start_unit();
  void seek(std::uint64_t rank);
  bool step();

  int n_;
  std::vector<HnfWorkUnit> units_;
  std::size_t unit_ = 0;
  std::uint64_t rank_ = 0;
  bool started_ = false;
  HnfMatrix current_;
  std::vector<std::pair<int, int>> slots_;  // (i, j) in row-major order
};

/// Whole-stream work units, each split into chunks of at most `chunk` ranks.
std::vector<HnfWorkUnit> hnf_work_units(int n, std::int64_t m, std::uint64_t chunk);

/// Consumes the full stream and returns its length.
std::uint64_t hnf_count_stream_check(int n, std::int64_t m);

}  // namespace sublat
