// Dense integer polynomials in T and the class-size polynomials g_alpha(T).
#pragma once

#include <initializer_list>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "sublat/arith.hpp"
#include "sublat/census.hpp"

namespace sublat {

/// Dense polynomial over Z, constant term first. No trailing zeros; the zero
/// polynomial has no coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long long> coeffs);

  static IntPoly constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }
  /// c * T^k
  static IntPoly monomial(unsigned k, const BigInt& c = 1);

  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Coefficient of T^k (0 beyond the degree).
  BigInt coeff(int k) const;

  BigInt eval(const BigInt& at) const;

  /// "T^3 + T^2", "T^2 - 2T + 1", "0".
  std::string to_string() const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

inline IntPoly poly_add(const IntPoly& a, const IntPoly& b) { return a + b; }
inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) { return a * b; }
inline BigInt poly_eval(const IntPoly& p, const BigInt& at) { return p.eval(at); }

/// prod over delta_i < beta_i of (T^(beta_i-delta_i) - T^(beta_i-delta_i-1)).
IntPoly tau_poly(const Partition& beta, std::span<const int> delta);

/// Memo of g_alpha(T), keyed by partition. Thread-safe.
class ClassPolyTable {
 public:
  bool lookup(const Partition& alpha, IntPoly& out) const;
  void store(const Partition& alpha, const IntPoly& g);
  std::map<Partition, IntPoly> snapshot() const;
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<Partition, IntPoly> table_;
};

/// Process-wide table used when no explicit one is passed.
ClassPolyTable& default_class_poly_table();

/// g_alpha(T) with g_alpha(p) = f_alpha_p(alpha, p) for every prime p.
IntPoly f_alpha_poly(const Partition& alpha, ClassPolyTable& table = default_class_poly_table());

/// T^((n-1)(r-1)) (T^(n-1) + ... + 1).
IntPoly cocyclic_poly(int n, int r);

/// Sum of g_alpha over all alpha in P(n, r).
IntPoly fn_primepower_poly(int n, int r, ClassPolyTable& table = default_class_poly_table());

struct LeadingTermsReport {
  bool match = false;
  int degree = 0;  // (n-1) r
  IntPoly all_sublattices;
  IntPoly cocyclic;
  std::string detail;
};

/// Whether the total and co-cyclic polynomials both start T^d + T^(d-1), d = (n-1) r.
LeadingTermsReport leading_terms_check(int n, int r, ClassPolyTable& table = default_class_poly_table());

}  // namespace sublat
