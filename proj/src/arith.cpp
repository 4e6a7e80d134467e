#include "sublat/arith.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sublat {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("64-bit multiplication overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("64-bit addition overflow");
  return r;
}

std::int64_t checked_pow(std::int64_t base, unsigned exp) {
  std::int64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

BigInt big_pow(const BigInt& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

std::string to_decimal(const BigInt& value) { return value.str(); }

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::int64_t d = 5; d <= n / d; d += 6)
    if (n % d == 0 || n % (d + 2) == 0) return false;
  return true;
}

Factorization::Factorization(std::vector<PrimePower> pairs) : pairs_(std::move(pairs)) {
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    if (!is_prime(pairs_[i].prime))
      throw std::invalid_argument("factorization: " + std::to_string(pairs_[i].prime) + " is not prime");
    if (pairs_[i].exponent == 0) throw std::invalid_argument("factorization: zero exponent");
    if (i > 0 && pairs_[i - 1].prime >= pairs_[i].prime)
      throw std::invalid_argument("factorization: primes must be strictly increasing");
  }
}

std::int64_t Factorization::value() const {
  std::int64_t m = 1;
  for (const auto& pp : pairs_) m = checked_mul(m, checked_pow(pp.prime, pp.exponent));
  return m;
}

Factorization factorize(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("factorize: m must be positive, got " + std::to_string(m));
  std::vector<PrimePower> out;
  auto strip = [&](std::int64_t p) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  };
  strip(2);
  strip(3);
  for (std::int64_t d = 5; d <= m / d; d += 6) {
    strip(d);
    strip(d + 2);
  }
  if (m > 1) out.push_back({m, 1});
  return Factorization(std::move(out));
}

std::uint64_t ExtNat::value() const {
  if (!value_) throw std::logic_error("ExtNat: value() of infinity");
  return *value_;
}

std::ostream& operator<<(std::ostream& os, const ExtNat& e) {
  if (e.is_infinite()) return os << "inf";
  return os << e.value();
}

ExtNat ord_p(std::int64_t p, std::int64_t m) {
  if (p < 2) throw std::invalid_argument("ord_p: p must be prime");
  if (m == 0) return ExtNat::infinity();
  std::uint64_t t = 0;
  while (m % p == 0) {
    m /= p;
    ++t;
  }
  return ExtNat(t);
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw std::invalid_argument("partition: negative part");
    if (i > 0 && parts_[i - 1] > parts_[i])
      throw std::invalid_argument("partition: parts must be nondecreasing");
  }
}

int Partition::k() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::string Partition::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s;
}

namespace {

void extend_partitions(int n, int remaining, int lo, std::vector<int>& cur, std::vector<Partition>& out) {
  const int slot = static_cast<int>(cur.size());
  if (slot == n - 1) {
    if (remaining >= lo) {
      cur.push_back(remaining);
      out.emplace_back(cur);
      cur.pop_back();
    }
    return;
  }
  const int slots_left = n - slot;
  for (int v = lo; v * slots_left <= remaining; ++v) {
    cur.push_back(v);
    extend_partitions(n, remaining - v, v, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions(int n, int k) {
  if (n < 1 || k < 0) throw std::invalid_argument("partitions: need n >= 1 and k >= 0");
  std::vector<Partition> out;
  std::vector<int> cur;
  cur.reserve(n);
  extend_partitions(n, k, 0, cur, out);
  return out;
}

std::uint64_t partition_count(int n, int k) {
  if (k < 0 || n < 0) return 0;
  // p_j(t) = p_{j-1}(t) + p_j(t - j)
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (int j = 1; j <= n; ++j)
    for (int t = j; t <= k; ++t) row[t] += row[t - j];
  return row[k];
}

std::vector<std::int64_t> divisors(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("divisors: m must be positive");
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d <= m / d; ++d) {
    if (m % d) continue;
    small.push_back(d);
    if (d != m / d) large.push_back(m / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

void for_each_divisor_composition(std::int64_t m, int n,
                                  const std::function<void(std::span<const std::int64_t>)>& visit) {
  if (m < 1 || n < 1) throw std::invalid_argument("divisor_compositions: need m >= 1 and n >= 1");
  const auto divs = divisors(m);
  std::vector<std::int64_t> tuple(n);
  auto rec = [&](auto&& self, int slot, std::int64_t rest) -> void {
    if (slot == n - 1) {
      tuple[slot] = rest;
      visit(tuple);
      return;
    }
    for (auto d : divs) {
      if (d > rest) break;
      if (rest % d) continue;
      tuple[slot] = d;
      self(self, slot + 1, rest / d);
    }
  };
  rec(rec, 0, m);
}

std::vector<std::vector<std::int64_t>> divisor_compositions(std::int64_t m, int n) {
  std::vector<std::vector<std::int64_t>> out;
  for_each_divisor_composition(m, n, [&](std::span<const std::int64_t> t) { out.emplace_back(t.begin(), t.end()); });
  return out;
}

BigInt sigma1(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("sigma1: k must be positive");
  BigInt s = 0;
  for (auto d : divisors(k)) s += d;
  return s;
}

BigInt sigma1(const Factorization& f, unsigned power) {
  BigInt s = 1;
  for (const auto& [p, e] : f) {
    // 1 + p + ... + p^(e*power)
    BigInt term = 0, pk = 1;
    for (unsigned i = 0; i <= e * power; ++i) {
      term += pk;
      pk *= p;
    }
    s *= term;
  }
  return s;
}

std::int64_t radical(std::int64_t m) {
  std::int64_t r = 1;
  for (const auto& pp : factorize(m)) r *= pp.prime;
  return r;
}

BigInt euler_phi_primepower(std::int64_t p, unsigned s) {
  if (s == 0) return 1;
  return big_pow(BigInt(p), s - 1) * (p - 1);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

}  // namespace sublat
