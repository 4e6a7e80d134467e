#include "sublat/census.hpp"

#include <mutex>
#include <stdexcept>

namespace sublat {

void CensusTable::add(const ClassKey& key, const BigInt& count) {
  if (key.n() != n_ || key.index() != m_)
    throw std::invalid_argument("census: key " + key.to_string() + " does not have dimension " + std::to_string(n_) +
                                " and index " + std::to_string(m_));
  counts_[key] += count;
}

BigInt CensusTable::count(const ClassKey& key) const {
  auto it = counts_.find(key);
  return it == counts_.end() ? BigInt(0) : it->second;
}

BigInt CensusTable::total() const {
  BigInt t = 0;
  for (const auto& [k, c] : counts_) t += c;
  return t;
}

namespace {

void check_nm(int n, std::int64_t m) {
  if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
  if (m < 1) throw std::invalid_argument("index m must be >= 1");
}

}  // namespace

BigInt f_n_recursion(int n, std::int64_t m) {
  check_nm(n, m);
  BigInt total = 0;
  for_each_divisor_composition(m, n, [&](std::span<const std::int64_t> d) {
    BigInt term = 1;
    for (int i = 1; i < n; ++i) term *= big_pow(BigInt(d[i]), static_cast<unsigned>(i));
    total += term;
  });
  return total;
}

BigInt f_n_closed(int n, std::int64_t m) {
  check_nm(n, m);
  BigInt result = 1;
  for (const auto& [p, r] : factorize(m)) {
    BigInt num = 1, den = 1;
    const BigInt bp = p;
    for (int j = 1; j <= n - 1; ++j) {
      num *= big_pow(bp, j + r) - 1;
      den *= big_pow(bp, j) - 1;
    }
    if (num % den != 0) throw std::logic_error("f_n_closed: inexact division");
    result *= num / den;
  }
  return result;
}

BigInt g_n(int n, std::int64_t m) {
  check_nm(n, m);
  BigInt result = 1;
  for (const auto& pp : factorize(m)) result *= partition_count(n, static_cast<int>(pp.exponent));
  return result;
}

EtaProfile eta_profile(int r1, std::span<const int> beta, std::span<const int> delta) {
  if (beta.size() != delta.size()) throw std::invalid_argument("eta_profile: beta/delta length mismatch");
  const int len = static_cast<int>(beta.size());  // n - 1
  for (int i = 0; i < len; ++i)
    if (delta[i] < 0 || delta[i] > beta[i]) throw std::invalid_argument("eta_profile: need 0 <= delta_i <= beta_i");
  EtaProfile prof;
  prof.eta.assign(len + 1, ExtNat::infinity());
  for (int k = 0; k < len; ++k) {
    ExtNat e = ExtNat::infinity();
    for (int i = 0; i < k; ++i) e = min(e, ExtNat(static_cast<std::uint64_t>(beta[k] - beta[i] + delta[i])));
    for (int j = k; j < len; ++j) e = min(e, ExtNat(static_cast<std::uint64_t>(delta[j])));
    prof.eta[k] = e;
  }
  const ExtNat r(static_cast<std::uint64_t>(r1));
  prof.k0 = 0;
  for (int k = 0; k <= len; ++k)
    if (r < prof.eta[k]) {
      prof.k0 = k + 1;
      break;
    }
  if (prof.k0 == 0) throw std::logic_error("eta_profile: k0 undefined");
  return prof;
}

std::vector<int> glued_exponents(int r1, std::span<const int> beta, const EtaProfile& prof) {
  const int n = static_cast<int>(beta.size()) + 1;
  const int k0 = prof.k0;
  auto eta = [&](int k) -> int { return k == 0 ? 0 : static_cast<int>(prof.eta[k - 1].value()); };
  auto b = [&](int k) -> int { return k == 0 ? 0 : beta[k - 1]; };
  std::vector<int> alpha(n);
  for (int k = 1; k <= n; ++k) {
    if (k < k0)
      alpha[k - 1] = k == 1 ? eta(1) : b(k - 1) + eta(k) - eta(k - 1);
    else if (k == k0)
      alpha[k - 1] = b(k0 - 1) + r1 - eta(k0 - 1);
    else
      alpha[k - 1] = b(k - 1);
  }
  return alpha;
}

std::vector<std::vector<int>> tset_enumerate(int r1, const Partition& alpha, const Partition& beta) {
  std::vector<std::vector<int>> out;
  if (alpha.n() != beta.n() + 1) throw std::invalid_argument("tset_enumerate: beta must have n-1 parts");
  if (r1 < 0 || alpha.k() != r1 + beta.k()) return out;
  const int len = beta.n();
  std::vector<int> delta(len, 0);
  for (;;) {
    const auto prof = eta_profile(r1, beta.parts(), delta);
    if (glued_exponents(r1, beta.parts(), prof) == alpha.parts()) out.push_back(delta);
    int i = len - 1;
    while (i >= 0 && delta[i] == beta[i]) delta[i--] = 0;
    if (i < 0) break;
    ++delta[i];
  }
  return out;
}

BigInt tau_count(const Partition& beta, std::span<const int> delta, std::int64_t p) {
  if (delta.size() != beta.parts().size()) throw std::invalid_argument("tau_count: length mismatch");
  BigInt t = 1;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (delta[i] < 0 || delta[i] > beta[i]) throw std::invalid_argument("tau_count: need 0 <= delta_i <= beta_i");
    if (delta[i] < beta[i]) {
      const unsigned e = static_cast<unsigned>(beta[i] - delta[i]);
      t *= big_pow(BigInt(p), e) - big_pow(BigInt(p), e - 1);
    }
  }
  return t;
}

void for_each_recursion_term(
    const Partition& alpha,
    const std::function<void(int, const Partition&, const std::vector<std::vector<int>>&)>& visit) {
  const int n = alpha.n();
  if (n < 2) throw std::invalid_argument("for_each_recursion_term: need n >= 2");
  const int k = alpha.k();
  for (int r1 = 0; r1 <= k; ++r1)
    for (const auto& beta : partitions(n - 1, k - r1)) {
      const auto tset = tset_enumerate(r1, alpha, beta);
      if (!tset.empty()) visit(r1, beta, tset);
    }
}

namespace {

struct AlphaMemo {
  std::mutex mu;
  std::map<std::pair<Partition, std::int64_t>, BigInt> values;
};

AlphaMemo& alpha_memo() {
  static AlphaMemo memo;
  return memo;
}

}  // namespace

BigInt f_alpha_p(const Partition& alpha, std::int64_t p) {
  if (alpha.n() < 1) throw std::invalid_argument("f_alpha_p: empty partition");
  if (!is_prime(p)) throw std::invalid_argument("f_alpha_p: " + std::to_string(p) + " is not prime");
  if (alpha.n() == 1) return 1;
  auto& memo = alpha_memo();
  const auto key = std::make_pair(alpha, p);
  {
    std::lock_guard lock(memo.mu);
    if (auto it = memo.values.find(key); it != memo.values.end()) return it->second;
  }
  BigInt total = 0;
  for_each_recursion_term(alpha, [&](int, const Partition& beta, const std::vector<std::vector<int>>& tset) {
    BigInt taus = 0;
    for (const auto& delta : tset) taus += tau_count(beta, delta, p);
    total += f_alpha_p(beta, p) * taus;
  });
  std::lock_guard lock(memo.mu);
  memo.values.emplace(key, total);
  return total;
}

BigInt f_alpha_n2_closed(int t, int r, std::int64_t p) {
  if (t < 0 || 2 * t > r) throw std::invalid_argument("f_alpha_n2_closed: need 0 <= 2t <= r");
  if (2 * t == r) return 1;
  const unsigned e = static_cast<unsigned>(r - 2 * t);
  return big_pow(BigInt(p), e) + big_pow(BigInt(p), e - 1);
}

std::vector<std::pair<std::int64_t, Partition>> prime_components(const SmithForm& divisors) {
  std::vector<std::pair<std::int64_t, Partition>> out;
  if (divisors.n() == 0) return out;
  for (const auto& pp : factorize(divisors[divisors.n() - 1])) {
    std::vector<int> exps;
    for (auto d : divisors.divisors()) exps.push_back(static_cast<int>(ord_p(pp.prime, d).value()));
    out.emplace_back(pp.prime, Partition(std::move(exps)));
  }
  return out;
}

BigInt f_class(const SmithForm& divisors) {
  BigInt result = 1;
  for (const auto& [p, alpha] : prime_components(divisors)) result *= f_alpha_p(alpha, p);
  return result;
}

BigInt cocyclic_primepower(int n, std::int64_t p, int r) {
  if (n < 1 || r < 0) throw std::invalid_argument("cocyclic_primepower: need n >= 1 and r >= 0");
  if (!is_prime(p)) throw std::invalid_argument("cocyclic_primepower: " + std::to_string(p) + " is not prime");
  if (r == 0) return 1;
  const BigInt bp = p;
  return big_pow(bp, static_cast<unsigned>((n - 1) * (r - 1))) * ((big_pow(bp, n) - 1) / (bp - 1));
}

BigInt cocyclic_general(int n, std::int64_t m) {
  check_nm(n, m);
  const auto fac = factorize(m);
  std::vector<PrimePower> rad_pairs;
  std::int64_t rad = 1;
  for (const auto& pp : fac) {
    rad_pairs.push_back({pp.prime, 1});
    rad *= pp.prime;
  }
  return big_pow(BigInt(m / rad), static_cast<unsigned>(n - 1)) *
         sigma1(Factorization(std::move(rad_pairs)), static_cast<unsigned>(n - 1));
}

BigInt cocyclic_cumulative(int n, std::int64_t max_index) {
  if (max_index < 1) throw std::invalid_argument("cocyclic_cumulative: V must be >= 1");
  BigInt total = 0;
  for (std::int64_t m = 1; m <= max_index; ++m) total += cocyclic_general(n, m);
  return total;
}

CensusTable assemble_census(int n, std::int64_t m) {
  check_nm(n, m);
  CensusTable table(n, m);
  const auto fac = factorize(m);
  std::vector<std::vector<Partition>> options;
  for (const auto& pp : fac) options.push_back(partitions(n, static_cast<int>(pp.exponent)));

  std::vector<std::size_t> pick(fac.size(), 0);
  for (;;) {
    std::vector<std::int64_t> d(n, 1);
    BigInt count = 1;
    for (std::size_t q = 0; q < fac.size(); ++q) {
      const auto p = fac.pairs()[q].prime;
      const auto& alpha = options[q][pick[q]];
      for (int i = 0; i < n; ++i) d[i] = checked_mul(d[i], checked_pow(p, static_cast<unsigned>(alpha[i])));
      count *= f_alpha_p(alpha, p);
    }
    table.add(SmithForm(std::move(d)), count);
    std::size_t q = 0;
    while (q < pick.size() && ++pick[q] == options[q].size()) pick[q++] = 0;
    if (q == pick.size()) break;
  }
  return table;
}

}  // namespace sublat
