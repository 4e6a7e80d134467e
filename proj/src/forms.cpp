#include "sublat/forms.hpp"

#include <algorithm>
#include <numeric>

namespace sublat {

namespace {

// Arithmetic policies for the reduction kernels. The 64-bit policy throws
// OverflowError; the caller then retries with BigInt.
struct CheckedI64 {
  using T = std::int64_t;
  static T mul(T a, T b) { return checked_mul(a, b); }
  static T sub(T a, T b) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("64-bit subtraction overflow");
    return r;
  }
  static T add(T a, T b) { return checked_add(a, b); }
  static T abs(T a) {
    if (a == INT64_MIN) throw OverflowError("64-bit abs overflow");
    return a < 0 ? -a : a;
  }
  static bool is_zero(T a) { return a == 0; }
};

struct Big {
  using T = BigInt;
  static T mul(const T& a, const T& b) { return a * b; }
  static T sub(const T& a, const T& b) { return a - b; }
  static T add(const T& a, const T& b) { return a + b; }
  static T abs(const T& a) { return a < 0 ? T(-a) : a; }
  static bool is_zero(const T& a) { return a == 0; }
};

// In-place reduction of the n x n row-major matrix `a` to its invariant factors.
template <class Ops>
void smith_reduce(typename Ops::T* a, int n, typename Ops::T* out) {
  using T = typename Ops::T;
  auto at = [&](int i, int j) -> T& { return a[i * n + j]; };
  for (int t = 0; t < n; ++t) {
    for (;;) {
      int bi = -1, bj = -1;
      T best{};
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j) {
          if (Ops::is_zero(at(i, j))) continue;
          T v = Ops::abs(at(i, j));
          if (bi < 0 || v < best) {
            best = v;
            bi = i;
            bj = j;
          }
        }
      if (bi < 0) throw SingularMatrixError("invariant_factors: matrix is singular");
      if (bi != t)
        for (int j = t; j < n; ++j) std::swap(at(t, j), at(bi, j));
      if (bj != t)
        for (int i = t; i < n; ++i) std::swap(at(i, t), at(i, bj));

      const T piv = at(t, t);
      bool clean = true;
      for (int i = t + 1; i < n; ++i) {
        if (Ops::is_zero(at(i, t))) continue;
        const T q = at(i, t) / piv;
        if (!Ops::is_zero(q))
          for (int j = t; j < n; ++j) at(i, j) = Ops::sub(at(i, j), Ops::mul(q, at(t, j)));
        if (!Ops::is_zero(at(i, t))) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        if (Ops::is_zero(at(t, j))) continue;
        const T q = at(t, j) / piv;
        if (!Ops::is_zero(q))
          for (int i = t; i < n; ++i) at(i, j) = Ops::sub(at(i, j), Ops::mul(q, at(i, t)));
        if (!Ops::is_zero(at(t, j))) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the remaining block; otherwise fold the offending
      // row into the pivot row and reduce again.
      int bad = -1;
      for (int i = t + 1; i < n && bad < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (!Ops::is_zero(at(i, j) % piv)) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      for (int j = t + 1; j < n; ++j) at(t, j) = Ops::add(at(t, j), at(bad, j));
    }
    out[t] = Ops::abs(at(t, t));
  }
}

// Fraction-free Gaussian elimination on a k x k row-major buffer.
template <class Ops>
typename Ops::T bareiss_det(typename Ops::T* a, int k) {
  using T = typename Ops::T;
  auto at = [&](int i, int j) -> T& { return a[i * k + j]; };
  T prev = 1;
  bool negate = false;
  for (int c = 0; c < k - 1; ++c) {
    if (Ops::is_zero(at(c, c))) {
      int r = c + 1;
      while (r < k && Ops::is_zero(at(r, c))) ++r;
      if (r == k) return T(0);
      for (int j = 0; j < k; ++j) std::swap(at(c, j), at(r, j));
      negate = !negate;
    }
    for (int i = c + 1; i < k; ++i)
      for (int j = c + 1; j < k; ++j)
        at(i, j) = Ops::sub(Ops::mul(at(i, j), at(c, c)), Ops::mul(at(i, c), at(c, j))) / prev;
    prev = at(c, c);
  }
  T d = at(k - 1, k - 1);
  return negate ? T(-d) : d;
}

bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[i] == n - k + i) --i;
  if (i < 0) return false;
  ++idx[i];
  for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  return true;
}

// Visits every k x k minor as (int64 value, or BigInt value when it does not fit).
template <class Visit>
void for_each_minor(std::span<const std::int64_t> entries, int rows, int cols, int k, Visit&& visit) {
  std::vector<int> ri(k), ci(k);
  std::vector<std::int64_t> buf(static_cast<std::size_t>(k) * k);
  std::vector<BigInt> bigbuf;
  std::iota(ri.begin(), ri.end(), 0);
  do {
    std::iota(ci.begin(), ci.end(), 0);
    do {
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) buf[i * k + j] = entries[ri[i] * cols + ci[j]];
      bool fits = true;
      std::int64_t small = 0;
      try {
        small = bareiss_det<CheckedI64>(buf.data(), k);
      } catch (const OverflowError&) {
        fits = false;
      }
      bool keep_going;
      if (fits) {
        keep_going = visit(small, nullptr);
      } else {
        bigbuf.resize(buf.size());
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) bigbuf[i * k + j] = entries[ri[i] * cols + ci[j]];
        const BigInt big = bareiss_det<Big>(bigbuf.data(), k);
        keep_going = visit(0, &big);
      }
      if (!keep_going) return;
    } while (next_combination(ci, cols));
  } while (next_combination(ri, rows));
}

std::int64_t narrow(const BigInt& v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) throw OverflowError(std::string(what) + " does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

}  // namespace

IntMatrix::IntMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols, 0) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("IntMatrix: negative dimension");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

IntMatrix::IntMatrix(int rows, int cols, std::vector<std::int64_t> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows < 0 || cols < 0 || entries_.size() != static_cast<std::size_t>(rows) * cols)
    throw std::invalid_argument("IntMatrix: entry count does not match dimensions");
}

std::int64_t HnfMatrix::determinant() const {
  std::int64_t d = 1;
  for (int i = 0; i < n_; ++i) d = checked_mul(d, diag(i));
  return d;
}

SmithForm::SmithForm(std::vector<std::int64_t> divisors) : divisors_(std::move(divisors)) {
  for (std::size_t i = 0; i < divisors_.size(); ++i) {
    if (divisors_[i] <= 0) throw std::invalid_argument("smith form: invariant factors must be positive");
    if (i > 0 && divisors_[i] % divisors_[i - 1] != 0)
      throw std::invalid_argument("smith form: " + std::to_string(divisors_[i - 1]) + " does not divide " +
                                  std::to_string(divisors_[i]));
  }
}

std::int64_t SmithForm::index() const {
  std::int64_t m = 1;
  for (auto d : divisors_) m = checked_mul(m, d);
  return m;
}

std::string SmithForm::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < divisors_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(divisors_[i]);
  }
  return s;
}

HnfMatrix validate_hnf(const IntMatrix& m) {
  if (m.rows() != m.cols())
    throw HnfValidationError("hnf: matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                             ", expected square");
  const int n = m.rows();
  HnfMatrix h(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto v = m(i, j);
      const std::string where = "h_" + std::to_string(i + 1) + std::to_string(j + 1);
      if (i > j && v != 0) throw HnfValidationError("hnf: not upper-triangular, " + where + " = " + std::to_string(v));
      if (i == j && v <= 0)
        throw HnfValidationError("hnf: diagonal entry " + where + " = " + std::to_string(v) + " is not positive");
      if (i < j && (v < 0 || v >= m(j, j)))
        throw HnfValidationError("hnf: " + where + " = " + std::to_string(v) + " outside [0, h_" +
                                 std::to_string(j + 1) + ") = [0, " + std::to_string(m(j, j)) + ")");
      h.entries_[i * n + j] = v;
    }
  return h;
}

void SmithWorkspace::compute(std::span<const std::int64_t> entries, int n, std::span<std::int64_t> out) {
  if (entries.size() != static_cast<std::size_t>(n) * n || out.size() < static_cast<std::size_t>(n))
    throw std::invalid_argument("invariant_factors: bad buffer sizes");
  scratch_.assign(entries.begin(), entries.end());
  try {
    smith_reduce<CheckedI64>(scratch_.data(), n, out.data());
    return;
  } catch (const OverflowError&) {
  }
  big_.assign(entries.begin(), entries.end());
  big_out_.resize(n);
  smith_reduce<Big>(big_.data(), n, big_out_.data());
  for (int i = 0; i < n; ++i) out[i] = narrow(big_out_[i], "invariant factor");
}

SmithForm invariant_factors(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("invariant_factors: matrix must be square");
  SmithWorkspace ws;
  std::vector<std::int64_t> d(m.rows());
  ws.compute(m.entries(), m.rows(), d);
  return SmithForm(std::move(d));
}

SmithForm invariant_factors(const HnfMatrix& h) {
  SmithWorkspace ws;
  std::vector<std::int64_t> d(h.n());
  ws.compute(h.entries(), h.n(), d);
  return SmithForm(std::move(d));
}

BigInt minor_gcd(std::span<const std::int64_t> entries, int rows, int cols, int k) {
  if (k == 0) return 1;
  if (k < 0 || k > std::min(rows, cols)) throw std::invalid_argument("minor_gcd: k out of range");
  std::int64_t g = 0;
  bool big_mode = false;
  BigInt bg = 0;
  for_each_minor(entries, rows, cols, k, [&](std::int64_t v, const BigInt* big) {
    if (!big_mode && !big) {
      if (v == INT64_MIN) {
        big_mode = true;
        bg = boost::multiprecision::gcd(BigInt(g), BigInt(v));
      } else {
        g = std::gcd(g, v);
      }
    } else {
      if (!big_mode) {
        big_mode = true;
        bg = g;
      }
      bg = boost::multiprecision::gcd(bg, big ? *big : BigInt(v));
    }
    return true;
  });
  return big_mode ? bg : BigInt(g);
}

BigInt minor_gcd(const IntMatrix& m, int k) { return minor_gcd(m.entries(), m.rows(), m.cols(), k); }

bool minor_gcd_is_one(std::span<const std::int64_t> entries, int rows, int cols, int k) {
  if (k == 0) return true;
  if (k < 0 || k > std::min(rows, cols)) throw std::invalid_argument("minor_gcd: k out of range");
  std::int64_t g = 0;
  BigInt bg = 0;
  bool big_mode = false;
  bool one = false;
  for_each_minor(entries, rows, cols, k, [&](std::int64_t v, const BigInt* big) {
    if (!big_mode && !big && v != INT64_MIN) {
      g = std::gcd(g, v);
      one = g == 1;
    } else {
      if (!big_mode) {
        big_mode = true;
        bg = g;
      }
      bg = boost::multiprecision::gcd(bg, big ? *big : BigInt(v));
      one = bg == 1;
    }
    return !one;
  });
  return one;
}

SmithForm invariant_factors_via_minors(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("invariant_factors_via_minors: matrix must be square");
  const int n = m.rows();
  std::vector<std::int64_t> d(n);
  BigInt prev = 1;
  for (int k = 1; k <= n; ++k) {
    BigInt cur = minor_gcd(m, k);
    if (cur == 0) throw SingularMatrixError("invariant_factors_via_minors: matrix is singular");
    d[k - 1] = narrow(cur / prev, "invariant factor");
    prev = std::move(cur);
  }
  return SmithForm(std::move(d));
}

std::vector<BigInt> dk_incremental(std::int64_t h1, std::span<const BigInt> lower, std::span<const BigInt> stacked) {
  if (lower.size() != stacked.size()) throw std::invalid_argument("dk_incremental: length mismatch");
  std::vector<BigInt> out(lower.size());
  for (std::size_t k = 1; k <= lower.size(); ++k) {
    const BigInt prev = k == 1 ? BigInt(1) : lower[k - 2];
    out[k - 1] = boost::multiprecision::gcd(BigInt(h1) * prev, stacked[k - 1]);
  }
  return out;
}

namespace {

// Prime p with every diagonal entry a power of p, plus the exponents.
std::int64_t common_prime(const HnfMatrix& h, std::vector<unsigned>& exps) {
  std::int64_t p = 1;
  for (int i = 0; i < h.n(); ++i)
    if (h.diag(i) > 1) {
      p = factorize(h.diag(i)).pairs().front().prime;
      break;
    }
  exps.assign(h.n(), 0);
  for (int i = 0; i < h.n(); ++i) {
    std::int64_t v = h.diag(i);
    while (p > 1 && v % p == 0) {
      v /= p;
      ++exps[i];
    }
    if (v != 1)
      throw std::invalid_argument("snf shortcut: diagonal entry " + std::to_string(h.diag(i)) +
                                  " is not a power of " + std::to_string(p));
  }
  return p;
}

unsigned finite(const ExtNat& e) { return static_cast<unsigned>(e.value()); }

}  // namespace

Snf2Shortcut snf2_direct(const HnfMatrix& h) {
  if (h.n() != 2) throw std::invalid_argument("snf2_direct: need a 2x2 matrix");
  std::vector<unsigned> r;
  const std::int64_t p = common_prime(h, r);
  const unsigned total = r[0] + r[1];
  if (p == 1) return {1, 0, SmithForm({1, 1})};
  const unsigned t = finite(min(min(ExtNat(r[0]), ExtNat(r[1])), ord_p(p, h.upper(0, 1))));
  return {p, t, SmithForm({checked_pow(p, t), checked_pow(p, total - t)})};
}

Snf3Shortcut snf3_direct(const HnfMatrix& h) {
  if (h.n() != 3) throw std::invalid_argument("snf3_direct: need a 3x3 matrix");
  std::vector<unsigned> r;
  const std::int64_t p = common_prime(h, r);
  const unsigned total = r[0] + r[1] + r[2];
  if (p == 1) return {1, 0, 0, SmithForm({1, 1, 1})};
  const ExtNat r1(r[0]), r2(r[1]), r3(r[2]);
  const ExtNat o12 = ord_p(p, h.upper(0, 1));
  const ExtNat o13 = ord_p(p, h.upper(0, 2));
  const ExtNat o23 = ord_p(p, h.upper(1, 2));
  const ExtNat u = ord_p(p, checked_add(checked_mul(h.upper(0, 1), h.upper(1, 2)),
                                        -checked_mul(h.diag(1), h.upper(0, 2))));
  ExtNat s = r1;
  for (const auto& e : {r2, r3, o12, o13, o23}) s = min(s, e);
  ExtNat t = r1 + r2;
  for (const auto& e : {r2 + r3, r1 + r3, r1 + o23, r3 + o12, u}) t = min(t, e);
  const unsigned si = finite(s), ti = finite(t);
  return {p, si, ti, SmithForm({checked_pow(p, si), checked_pow(p, ti - si), checked_pow(p, total - ti)})};
}

}  // namespace sublat
