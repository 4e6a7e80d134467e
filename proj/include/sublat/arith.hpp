// Exact integer utilities shared by every counting routine.
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sublat {

/// Arbitrary-precision integer used for every count.
using BigInt = boost::multiprecision::cpp_int;

/// Thrown when a fixed-width intermediate would not fit in 64 bits.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_pow(std::int64_t base, unsigned exp);

BigInt big_pow(const BigInt& base, unsigned exp);
std::string to_decimal(const BigInt& value);

bool is_prime(std::int64_t n);

struct PrimePower {
  std::int64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical prime factorization: primes strictly increasing, exponents >= 1.
class Factorization {
 public:
  Factorization() = default;
  explicit Factorization(std::vector<PrimePower> pairs);

  const std::vector<PrimePower>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }
  auto begin() const { return pairs_.begin(); }
  auto end() const { return pairs_.end(); }

  /// Recomposes the factored integer; throws OverflowError past 63 bits.
  std::int64_t value() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<PrimePower> pairs_;
};

/// Trial division up to sqrt(m). Rejects m < 1.
Factorization factorize(std::int64_t m);

/// Nonnegative integer or infinity. Infinity compares above every finite value.
class ExtNat {
 public:
  constexpr ExtNat() = default;
  constexpr explicit ExtNat(std::uint64_t v) : value_(v) {}
  static constexpr ExtNat infinity() {
    ExtNat e;
    e.value_.reset();
    return e;
  }

  constexpr bool is_infinite() const { return !value_.has_value(); }
  constexpr bool is_finite() const { return value_.has_value(); }
  /// Precondition: finite.
  std::uint64_t value() const;

  friend constexpr bool operator==(const ExtNat& a, const ExtNat& b) {
    return a.value_ == b.value_;
  }
  friend constexpr std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
    if (a.is_infinite() || b.is_infinite())
      return a.is_infinite() <=> b.is_infinite();
    return *a.value_ <=> *b.value_;
  }
  friend constexpr ExtNat operator+(const ExtNat& a, const ExtNat& b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return ExtNat(*a.value_ + *b.value_);
  }
  friend std::ostream& operator<<(std::ostream& os, const ExtNat& e);

 private:
  std::optional<std::uint64_t> value_{0};
};

inline ExtNat min(ExtNat a, ExtNat b) { return b < a ? b : a; }

/// Largest t with p^t | m; infinity for m = 0. Sign of m is ignored.
ExtNat ord_p(std::int64_t p, std::int64_t m);

/// Nondecreasing sequence of nonnegative parts.
class Partition {
 public:
  Partition() = default;
  /// Throws std::invalid_argument unless parts are nonnegative and nondecreasing.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int operator[](std::size_t i) const { return parts_[i]; }
  int n() const { return static_cast<int>(parts_.size()); }
  int k() const;

  std::string to_string() const;  // "a1,a2,...,an"

  friend auto operator<=>(const Partition&, const Partition&) = default;
  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// All partitions of k into n nonnegative nondecreasing parts, lexicographic.
std::vector<Partition> partitions(int n, int k);

/// |partitions(n, k)|, by the standard recurrence.
std::uint64_t partition_count(int n, int k);

/// Visits every ordered n-tuple of positive integers with product m, in
/// lexicographic order. The span passed to the visitor is only valid for the
/// duration of the call.
void for_each_divisor_composition(std::int64_t m, int n,
                                  const std::function<void(std::span<const std::int64_t>)>& visit);
std::vector<std::vector<std::int64_t>> divisor_compositions(std::int64_t m, int n);

/// Sorted positive divisors.
std::vector<std::int64_t> divisors(std::int64_t m);

BigInt sigma1(std::int64_t k);
/// Divisor sum of an integer given by its factorization, raised to `power`:
/// sigma1(prod p^(e*power)).
BigInt sigma1(const Factorization& f, unsigned power = 1);
std::int64_t radical(std::int64_t m);
BigInt euler_phi_primepower(std::int64_t p, unsigned s);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

}  // namespace sublat
