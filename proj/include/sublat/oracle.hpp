// Ground truth by exhaustion over HNF_n(m), and the formula-vs-oracle diff.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sublat/census.hpp"

namespace sublat {

enum class SnfMethod { Elimination, Minors };

struct OracleOptions {
  unsigned jobs = 1;
  /// Maximum number of matrices a single enumeration may visit.
  std::uint64_t budget = 10'000'000;
  SnfMethod method = SnfMethod::Elimination;
  /// Matrices per work unit handed to a worker.
  std::uint64_t chunk = 1u << 14;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(int n, std::int64_t m, BigInt estimate, std::uint64_t budget);
  const BigInt& estimate() const { return estimate_; }
  std::uint64_t budget() const { return budget_; }

 private:
  BigInt estimate_;
  std::uint64_t budget_;
};

/// Throws BudgetExceeded when f_n(m) exceeds the budget.
void check_budget(int n, std::int64_t m, std::uint64_t budget);

/// Classifies every H in HNF_n(m) by its invariant factors.
CensusTable census_bruteforce(int n, std::int64_t m, const OracleOptions& opts = {});

/// Number of H in HNF_n(m) with D_{n-1}(H) = 1.
BigInt cocyclic_bruteforce(int n, std::int64_t m, const OracleOptions& opts = {});

/// Number of H in HNF_n(m) (n = 2 or 3, m a prime power) where the direct
/// shortcut disagrees with elimination.
std::uint64_t shortcut_disagreements(int n, std::int64_t m, const OracleOptions& opts = {});

struct ClassComparison {
  SmithForm key;
  BigInt formula;
  BigInt oracle;
  bool match = false;
};

struct NamedCheck {
  std::string name;
  std::string expected;
  std::string observed;
  bool match = false;
};

/// Diff of one (n, m) against every applicable formula.
struct VerifySection {
  int n = 0;
  std::int64_t m = 0;
  std::vector<ClassComparison> classes;
  std::vector<NamedCheck> checks;
  bool all_match() const;
};

struct VerifyReport {
  std::string scope;
  std::vector<VerifySection> sections;
  /// Formula-only identities that need no enumeration.
  std::vector<NamedCheck> checks;
  double elapsed_seconds = 0;
  bool all_match() const;
};

VerifySection verify_index(int n, std::int64_t m, const OracleOptions& opts = {});
/// Sections for m = p^0 .. p^max_r.
VerifyReport verify_prime(int n, std::int64_t p, int max_r, const OracleOptions& opts = {});
VerifyReport verify_single(int n, std::int64_t m, const OracleOptions& opts = {});
/// The full acceptance sweep. The budget in `opts` applies per index.
VerifyReport verify_suite(const OracleOptions& opts = {});

/// Matrix budget used by verify_suite unless overridden.
inline constexpr std::uint64_t kSuiteBudget = 50'000'000;

}  // namespace sublat
