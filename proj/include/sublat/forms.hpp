// Matrix normal forms: Hermite-form validation and invariant factors.
#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sublat/arith.hpp"

namespace sublat {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols);
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);
  IntMatrix(int rows, int cols, std::vector<std::int64_t> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t operator()(int i, int j) const { return entries_[i * cols_ + j]; }
  std::int64_t& operator()(int i, int j) { return entries_[i * cols_ + j]; }
  std::span<const std::int64_t> entries() const { return entries_; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> entries_;
};

/// Upper-triangular matrix with positive diagonal h_j and 0 <= h_ij < h_j above it.
/// Instances come from validate_hnf or from the enumeration stream.
class HnfMatrix {
 public:
  int n() const { return n_; }
  std::int64_t diag(int i) const { return entries_[i * n_ + i]; }
  std::int64_t upper(int i, int j) const { return entries_[i * n_ + j]; }
  std::int64_t operator()(int i, int j) const { return entries_[i * n_ + j]; }
  /// Row-major n*n entries, zeros below the diagonal.
  std::span<const std::int64_t> entries() const { return entries_; }
  std::int64_t determinant() const;
  IntMatrix matrix() const { return IntMatrix(n_, n_, entries_); }

  friend bool operator==(const HnfMatrix&, const HnfMatrix&) = default;

 private:
  friend HnfMatrix validate_hnf(const IntMatrix&);
  friend class HnfStream;
  explicit HnfMatrix(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n, 0) {}

  int n_ = 0;
  std::vector<std::int64_t> entries_;
};

class HnfValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invariant-factor chain d_1 | d_2 | ... | d_n, all positive.
class SmithForm {
 public:
  SmithForm() = default;
  /// Throws std::invalid_argument on nonpositive entries or a broken chain.
  explicit SmithForm(std::vector<std::int64_t> divisors);

  const std::vector<std::int64_t>& divisors() const { return divisors_; }
  std::int64_t operator[](std::size_t i) const { return divisors_[i]; }
  int n() const { return static_cast<int>(divisors_.size()); }
  /// Product of the chain.
  std::int64_t index() const;
  std::string to_string() const;  // "d1,d2,...,dn"

  friend auto operator<=>(const SmithForm&, const SmithForm&) = default;
  friend bool operator==(const SmithForm&, const SmithForm&) = default;

 private:
  std::vector<std::int64_t> divisors_;
};

HnfMatrix validate_hnf(const IntMatrix& m);

/// Smith form by unimodular row/column reduction with smallest-pivot selection.
/// 64-bit arithmetic is tried first and the whole reduction is redone in
/// arbitrary precision if any step would overflow.
SmithForm invariant_factors(const IntMatrix& m);
SmithForm invariant_factors(const HnfMatrix& h);

/// Reusable buffers for repeated reductions of n x n matrices.
class SmithWorkspace {
 public:
  /// Writes d_1..d_n of the square matrix with the given row-major entries.
  void compute(std::span<const std::int64_t> entries, int n, std::span<std::int64_t> out);

 private:
  std::vector<std::int64_t> scratch_;
  std::vector<BigInt> big_;
  std::vector<BigInt> big_out_;
};

/// gcd of all k x k minors; 0 when they all vanish. k = 0 gives 1.
BigInt minor_gcd(const IntMatrix& m, int k);
BigInt minor_gcd(std::span<const std::int64_t> entries, int rows, int cols, int k);
/// True iff the k x k minors have gcd 1; stops at the first witness.
bool minor_gcd_is_one(std::span<const std::int64_t> entries, int rows, int cols, int k);

/// d_k = D_k / D_{k-1}.
SmithForm invariant_factors_via_minors(const IntMatrix& m);

/// D_k(H) = gcd(h1 * D_{k-1}(H'), D_k(H'')) for 1 <= k <= n-1, where H' is the
/// trailing (n-1)x(n-1) block and H'' is H' with the first-row tail on top.
/// `lower` holds D_1(H')..D_{n-1}(H') (D_0 = 1 is implicit); `stacked` holds
/// D_1(H'')..D_{n-1}(H''). D_n(H) = h1 * det(H') is left to the caller.
std::vector<BigInt> dk_incremental(std::int64_t h1, std::span<const BigInt> lower,
                                   std::span<const BigInt> stacked);

/// Result of the n = 2 shortcut: Smith form (p^t, p^(r-t)).
struct Snf2Shortcut {
  std::int64_t prime;  // 1 when the index is 1
  unsigned t;
  SmithForm smith;
};

/// Result of the n = 3 shortcut: Smith form (p^s, p^(t-s), p^(r-t)).
struct Snf3Shortcut {
  std::int64_t prime;  // 1 when the index is 1
  unsigned s;
  unsigned t;
  SmithForm smith;
};

/// Both reject diagonals that are not powers of one common prime.
Snf2Shortcut snf2_direct(const HnfMatrix& h);
Snf3Shortcut snf3_direct(const HnfMatrix& h);

}  // namespace sublat
