// Counting formulas: f_n, g_n, class sizes, and co-cyclic counts.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "sublat/arith.hpp"
#include "sublat/forms.hpp"

namespace sublat {

/// A unimodular-equivalence class is identified by its invariant-factor chain.
using ClassKey = SmithForm;

/// Class -> exact number of sublattices, for one dimension and index.
class CensusTable {
 public:
  CensusTable(int n, std::int64_t m) : n_(n), m_(m) {}

  int n() const { return n_; }
  std::int64_t m() const { return m_; }
  const std::map<ClassKey, BigInt>& counts() const { return counts_; }

  /// Throws std::invalid_argument if the key does not belong to (n, m).
  void add(const ClassKey& key, const BigInt& count);
  /// 0 for absent keys.
  BigInt count(const ClassKey& key) const;
  BigInt total() const;
  std::size_t classes() const { return counts_.size(); }

  friend bool operator==(const CensusTable&, const CensusTable&) = default;

 private:
  int n_;
  std::int64_t m_;
  std::map<ClassKey, BigInt> counts_;
};

// -- whole-index counts ------------------------------------------------------

/// Sum over d_1...d_n = m of d_2 d_3^2 ... d_n^(n-1).
BigInt f_n_recursion(int n, std::int64_t m);
/// Product over p^r || m of prod_{j=1}^{n-1} (p^(j+r) - 1)/(p^j - 1), with the
/// division done once on the full products.
BigInt f_n_closed(int n, std::int64_t m);
/// Number of classes: product of p_n(r_i).
BigInt g_n(int n, std::int64_t m);

// -- prime-power class recursion ---------------------------------------------

/// eta_1..eta_{n-1} followed by eta_n = infinity, and
/// k0 = min{k : r1 < eta_k} (1-based).
struct EtaProfile {
  std::vector<ExtNat> eta;  // eta[k-1] is eta_k, size n
  int k0 = 0;
};

/// `beta` and `delta` have n-1 entries with 0 <= delta_i <= beta_i.
EtaProfile eta_profile(int r1, std::span<const int> beta, std::span<const int> delta);

/// Class exponents implied by (r1, beta, delta) through the eta profile.
std::vector<int> glued_exponents(int r1, std::span<const int> beta, const EtaProfile& profile);

/// All delta in the box prod [0, beta_i] whose glued exponents equal alpha.
/// Empty when sum(alpha) != r1 + sum(beta).
std::vector<std::vector<int>> tset_enumerate(int r1, const Partition& alpha, const Partition& beta);

/// prod over delta_i < beta_i of (p^(beta_i-delta_i) - p^(beta_i-delta_i-1)).
BigInt tau_count(const Partition& beta, std::span<const int> delta, std::int64_t p);

/// Calls `visit(r1, beta, tset)` for every (r1, beta) of the recursion for
/// alpha (n >= 2) whose admissible set is nonempty.
void for_each_recursion_term(
    const Partition& alpha,
    const std::function<void(int r1, const Partition& beta, const std::vector<std::vector<int>>& tset)>& visit);

/// |S_alpha(p)|: number of index-p^k sublattices with invariant factors
/// p^alpha_1 | ... | p^alpha_n. Memoized; safe to call concurrently.
BigInt f_alpha_p(const Partition& alpha, std::int64_t p);

/// n = 2 closed form: p^(r-2t) + p^(r-2t-1) for 2t < r, 1 for 2t = r.
BigInt f_alpha_n2_closed(int t, int r, std::int64_t p);

/// Class size for an arbitrary chain, by multiplicativity over primes.
BigInt f_class(const SmithForm& divisors);

/// Splits a chain into its per-prime exponent partitions.
std::vector<std::pair<std::int64_t, Partition>> prime_components(const SmithForm& divisors);

// -- co-cyclic counts ----------------------------------------------------------

/// f(1,...,1,p^r) = p^((n-1)(r-1)) (p^n - 1)/(p - 1), and 1 for r = 0.
BigInt cocyclic_primepower(int n, std::int64_t p, int r);
/// (m / rad(m))^(n-1) * sigma1(rad(m)^(n-1)).
BigInt cocyclic_general(int n, std::int64_t m);
/// Exact number of co-cyclic sublattices with index at most V.
BigInt cocyclic_cumulative(int n, std::int64_t max_index);

/// Every class of index m with its size from the formulas above.
CensusTable assemble_census(int n, std::int64_t m);

}  // namespace sublat
