#include "sublat/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include "sublat/enumerate.hpp"
#include "sublat/polyalg.hpp"

namespace sublat {

BudgetExceeded::BudgetExceeded(int n, std::int64_t m, BigInt estimate, std::uint64_t budget)
    : std::runtime_error("budget exceeded: HNF_" + std::to_string(n) + "(" + std::to_string(m) + ") has " +
                         estimate.str() + " matrices, budget is " + std::to_string(budget)),
      estimate_(std::move(estimate)),
      budget_(budget) {}

void check_budget(int n, std::int64_t m, std::uint64_t budget) {
  BigInt estimate = f_n_closed(n, m);
  if (estimate > budget) throw BudgetExceeded(n, m, std::move(estimate), budget);
}

namespace {

// Small open tally: the number of distinct keys per enumeration is tiny, so a
// linear scan with a last-hit shortcut beats hashing.
class FlatTally {
 public:
  explicit FlatTally(int width) : width_(width) {}

  void add(const std::int64_t* key) {
    if (!counts_.empty() && std::equal(key, key + width_, keys_.begin() + last_ * width_)) {
      ++counts_[last_];
      return;
    }
    for (std::size_t i = 0; i < counts_.size(); ++i)
      if (std::equal(key, key + width_, keys_.begin() + i * width_)) {
        ++counts_[i];
        last_ = i;
        return;
      }
    keys_.insert(keys_.end(), key, key + width_);
    counts_.push_back(1);
    last_ = counts_.size() - 1;
  }

  void merge_into(std::map<std::vector<std::int64_t>, std::uint64_t>& out) const {
    for (std::size_t i = 0; i < counts_.size(); ++i)
      out[std::vector<std::int64_t>(keys_.begin() + i * width_, keys_.begin() + (i + 1) * width_)] += counts_[i];
  }

 private:
  int width_;
  std::vector<std::int64_t> keys_;
  std::vector<std::uint64_t> counts_;
  std::size_t last_ = 0;
};

// Runs `classify(h, key)` over HNF_n(m) with per-worker tallies merged at the
// end. Classifier objects come from `make()`, one per worker.
template <class MakeClassifier>
std::map<std::vector<std::int64_t>, std::uint64_t> parallel_tally(int n, std::int64_t m, const OracleOptions& opts,
                                                                   int width, MakeClassifier make) {
  check_budget(n, m, opts.budget);
  const auto units = hnf_work_units(n, m, std::max<std::uint64_t>(opts.chunk, 1));
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(units.size())));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<FlatTally> tallies(jobs, FlatTally(width));

  auto worker = [&](unsigned w) {
    try {
      auto classify = make();
      std::vector<std::int64_t> key(width);
      for (;;) {
        const std::size_t u = next.fetch_add(1);
        if (u >= units.size() || failed.load()) break;
        HnfStream stream(n, {units[u]});
        while (const HnfMatrix* h = stream.next()) {
          classify(*h, key.data());
          tallies[w].add(key.data());
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mu);
      if (!error) error = std::current_exception();
      failed = true;
    }
  };

  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);

  std::map<std::vector<std::int64_t>, std::uint64_t> merged;
  for (const auto& t : tallies) t.merge_into(merged);
  return merged;
}

auto snf_classifier(SnfMethod method) {
  return [method]() {
    return [method, ws = SmithWorkspace()](const HnfMatrix& h, std::int64_t* key) mutable {
      if (method == SnfMethod::Elimination) {
        ws.compute(h.entries(), h.n(), std::span<std::int64_t>(key, h.n()));
      } else {
        const auto s = invariant_factors_via_minors(h.matrix());
        std::copy(s.divisors().begin(), s.divisors().end(), key);
      }
    };
  };
}

}  // namespace

CensusTable census_bruteforce(int n, std::int64_t m, const OracleOptions& opts) {
  const auto merged = parallel_tally(n, m, opts, n, snf_classifier(opts.method));
  CensusTable table(n, m);
  for (const auto& [key, count] : merged) table.add(SmithForm(key), count);
  return table;
}

BigInt cocyclic_bruteforce(int n, std::int64_t m, const OracleOptions& opts) {
  if (n == 1) {
    check_budget(n, m, opts.budget);
    return 1;
  }
  const auto merged = parallel_tally(n, m, opts, 1, [] {
    return [](const HnfMatrix& h, std::int64_t* key) {
      key[0] = minor_gcd_is_one(h.entries(), h.n(), h.n(), h.n() - 1) ? 1 : 0;
    };
  });
  auto it = merged.find({1});
  return it == merged.end() ? BigInt(0) : BigInt(it->second);
}

std::uint64_t shortcut_disagreements(int n, std::int64_t m, const OracleOptions& opts) {
  if (n != 2 && n != 3) throw std::invalid_argument("shortcut_disagreements: n must be 2 or 3");
  const auto merged = parallel_tally(n, m, opts, 1, [] {
    return [ws = SmithWorkspace()](const HnfMatrix& h, std::int64_t* key) mutable {
      std::int64_t d[3];
      ws.compute(h.entries(), h.n(), std::span<std::int64_t>(d, h.n()));
      const SmithForm direct = h.n() == 2 ? snf2_direct(h).smith : snf3_direct(h).smith;
      key[0] = std::equal(d, d + h.n(), direct.divisors().begin()) ? 0 : 1;
    };
  });
  auto it = merged.find({1});
  return it == merged.end() ? 0 : it->second;
}

bool VerifySection::all_match() const {
  return std::all_of(classes.begin(), classes.end(), [](const auto& c) { return c.match; }) &&
         std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.match; });
}

bool VerifyReport::all_match() const {
  return std::all_of(sections.begin(), sections.end(), [](const auto& s) { return s.all_match(); }) &&
         std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.match; });
}

namespace {

NamedCheck make_check(std::string name, const BigInt& expected, const BigInt& observed) {
  return {std::move(name), expected.str(), observed.str(), expected == observed};
}

NamedCheck make_flag(std::string name, std::uint64_t failures, std::uint64_t cases) {
  return {std::move(name), "0 of " + std::to_string(cases) + " failing",
          std::to_string(failures) + " of " + std::to_string(cases) + " failing", failures == 0};
}

constexpr std::uint64_t kMinorsCrossCheckLimit = 20'000;

}  // namespace

VerifySection verify_index(int n, std::int64_t m, const OracleOptions& opts) {
  VerifySection sec;
  sec.n = n;
  sec.m = m;
  const BigInt fn = f_n_closed(n, m);
  const CensusTable oracle = census_bruteforce(n, m, opts);
  const CensusTable formula = assemble_census(n, m);

  std::set<SmithForm> keys;
  for (const auto& [k, c] : oracle.counts()) keys.insert(k);
  for (const auto& [k, c] : formula.counts()) keys.insert(k);
  for (const auto& k : keys) {
    ClassComparison row{k, formula.count(k), oracle.count(k), false};
    row.match = row.formula == row.oracle;
    sec.classes.push_back(std::move(row));
  }

  sec.checks.push_back(make_check("stream_cardinality", fn, oracle.total()));
  sec.checks.push_back(make_check("f_n_recursion", fn, f_n_recursion(n, m)));
  sec.checks.push_back(make_check("sum_identity", fn, formula.total()));
  sec.checks.push_back(make_check("class_count", g_n(n, m), BigInt(oracle.classes())));

  std::vector<std::int64_t> cyclic(n, 1);
  cyclic.back() = m;
  const BigInt cocyclic = cocyclic_general(n, m);
  sec.checks.push_back(make_check("cocyclic_class", cocyclic, oracle.count(SmithForm(cyclic))));
  sec.checks.push_back(make_check("cocyclic_bruteforce", cocyclic, cocyclic_bruteforce(n, m, opts)));

  const auto fac = factorize(m);
  if (fac.size() == 1) {
    const auto [p, r] = fac.pairs().front();
    sec.checks.push_back(make_check("cocyclic_primepower", cocyclic, cocyclic_primepower(n, p, static_cast<int>(r))));

    std::uint64_t poly_bad = 0, n2_bad = 0;
    for (const auto& row : sec.classes) {
      const Partition alpha = prime_components(row.key).front().second;
      if (f_alpha_poly(alpha).eval(p) != row.oracle) ++poly_bad;
      if (n == 2 && f_alpha_n2_closed(alpha[0], alpha.k(), p) != row.oracle) ++n2_bad;
    }
    sec.checks.push_back(make_flag("class_polynomials", poly_bad, sec.classes.size()));
    if (n == 2) sec.checks.push_back(make_flag("n2_closed_form", n2_bad, sec.classes.size()));
    if (n == 2 || n == 3)
      sec.checks.push_back(make_flag("snf_shortcut", shortcut_disagreements(n, m, opts),
                                     static_cast<std::uint64_t>(fn)));
  }

  if (fn <= kMinorsCrossCheckLimit) {
    OracleOptions minors = opts;
    minors.method = SnfMethod::Minors;
    const bool same = census_bruteforce(n, m, minors) == oracle;
    sec.checks.push_back({"snf_methods_agree", "true", same ? "true" : "false", same});
  }

  const BigInt siegel = big_pow(BigInt(m), static_cast<unsigned>(n * n));
  sec.checks.push_back({"siegel_bound", "<= " + siegel.str(), fn.str(), fn <= siegel});
  return sec;
}

VerifyReport verify_single(int n, std::int64_t m, const OracleOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep;
  rep.scope = "n=" + std::to_string(n) + " m=" + std::to_string(m);
  rep.sections.push_back(verify_index(n, m, opts));
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

VerifyReport verify_prime(int n, std::int64_t p, int max_r, const OracleOptions& opts) {
  if (!is_prime(p)) throw std::invalid_argument("verify: " + std::to_string(p) + " is not prime");
  if (max_r < 0) throw std::invalid_argument("verify: max-r must be >= 0");
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep;
  rep.scope = "n=" + std::to_string(n) + " p=" + std::to_string(p) + " r<=" + std::to_string(max_r);
  std::int64_t m = 1;
  for (int r = 0; r <= max_r; ++r) {
    rep.sections.push_back(verify_index(n, m, opts));
    if (r < max_r) m = checked_mul(m, p);
  }
  // Sum of class sizes over P(n, r) against f_n(p^r).
  std::uint64_t bad = 0, cases = 0;
  for (int r = 0; r <= max_r; ++r) {
    BigInt sum = 0;
    for (const auto& a : partitions(n, r)) sum += f_alpha_p(a, p);
    ++cases;
    if (sum != f_n_closed(n, checked_pow(p, static_cast<unsigned>(r)))) ++bad;
  }
  rep.checks.push_back(make_flag("partition_sum_identity", bad, cases));
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

namespace {

std::vector<NamedCheck> formula_checks() {
  std::vector<NamedCheck> out;
  const std::int64_t primes5[] = {2, 3, 5, 7, 11};

  {  // both f_n routes
    std::uint64_t bad = 0, cases = 0;
    for (int n = 1; n <= 5; ++n)
      for (std::int64_t m = 1; m <= 300; ++m, ++cases)
        if (f_n_recursion(n, m) != f_n_closed(n, m)) ++bad;
    out.push_back(make_flag("f_n_routes_n<=5_m<=300", bad, cases));
  }
  {  // sum identity over partitions
    std::uint64_t bad = 0, cases = 0;
    for (int n = 1; n <= 4; ++n)
      for (std::int64_t p : {2, 3, 5})
        for (int k = 0; k <= 5; ++k, ++cases) {
          BigInt sum = 0;
          for (const auto& a : partitions(n, k)) sum += f_alpha_p(a, p);
          if (sum != f_n_closed(n, checked_pow(p, static_cast<unsigned>(k)))) ++bad;
        }
    out.push_back(make_flag("class_sum_identity", bad, cases));
  }
  {  // n = 2 closed form vs recursion
    std::uint64_t bad = 0, cases = 0;
    for (std::int64_t p : {2, 3, 5})
      for (int r = 0; r <= 8; ++r)
        for (int t = 0; 2 * t <= r; ++t, ++cases)
          if (f_alpha_p(Partition({t, r - t}), p) != f_alpha_n2_closed(t, r, p)) ++bad;
    out.push_back(make_flag("n2_closed_form_vs_recursion", bad, cases));
  }
  {  // class polynomials
    std::uint64_t bad_eval = 0, eval_cases = 0, bad_sum = 0, sum_cases = 0;
    for (int n = 1; n <= 4; ++n)
      for (int k = 0; k <= 5; ++k) {
        for (const auto& a : partitions(n, k)) {
          const IntPoly g = f_alpha_poly(a);
          for (auto p : primes5) {
            ++eval_cases;
            if (g.eval(p) != f_alpha_p(a, p)) ++bad_eval;
          }
        }
        const IntPoly total = fn_primepower_poly(n, k);
        for (auto p : primes5) {
          ++sum_cases;
          if (total.eval(p) != f_n_closed(n, checked_pow(p, static_cast<unsigned>(k)))) ++bad_sum;
        }
      }
    out.push_back(make_flag("class_polynomial_evaluation", bad_eval, eval_cases));
    out.push_back(make_flag("total_polynomial_evaluation", bad_sum, sum_cases));
  }
  {  // co-cyclic polynomial is the (0,..,0,r) class polynomial
    std::uint64_t bad = 0, cases = 0;
    for (int n = 1; n <= 4; ++n)
      for (int r = 1; r <= 5; ++r, ++cases) {
        std::vector<int> parts(n, 0);
        parts.back() = r;
        if (cocyclic_poly(n, r) != f_alpha_poly(Partition(parts))) ++bad;
      }
    out.push_back(make_flag("cocyclic_polynomial", bad, cases));
  }
  {  // shared leading terms and the degree of the difference
    std::uint64_t bad = 0, cases = 0;
    for (int n = 2; n <= 4; ++n)
      for (int r = 1; r <= 5; ++r, ++cases) {
        const auto rep = leading_terms_check(n, r);
        const IntPoly diff = rep.all_sublattices - rep.cocyclic;
        if (!rep.match || diff.degree() > (n - 1) * r - 2) ++bad;
      }
    out.push_back(make_flag("leading_terms", bad, cases));
  }
  {  // co-cyclic recurrence over n
    std::uint64_t bad = 0, cases = 0;
    for (int n = 2; n <= 5; ++n)
      for (std::int64_t p : {2, 3, 5})
        for (int r = 1; r <= 5; ++r, ++cases) {
          BigInt rhs = big_pow(BigInt(p), r) * cocyclic_primepower(n - 1, p, r) + 1;
          for (int r1 = 1; r1 <= r - 1; ++r1)
            rhs += euler_phi_primepower(p, r - r1) * cocyclic_primepower(n - 1, p, r - r1);
          if (rhs != cocyclic_primepower(n, p, r)) ++bad;
        }
    out.push_back(make_flag("cocyclic_recurrence", bad, cases));
  }
  {  // square-free indices form a single class
    std::uint64_t bad = 0, cases = 0;
    for (int n = 1; n <= 4; ++n)
      for (std::int64_t m = 1; m <= 100; ++m) {
        if (m != radical(m)) continue;
        ++cases;
        if (cocyclic_general(n, m) != f_n_closed(n, m) || g_n(n, m) != 1) ++bad;
      }
    out.push_back(make_flag("square_free_single_class", bad, cases));
  }
  {  // multiplicativity over coprime splits
    std::uint64_t bad = 0, cases = 0;
    for (int n = 1; n <= 3; ++n)
      for (std::int64_t a = 2; a <= 150; ++a)
        for (std::int64_t b = a + 1; a * b <= 300; ++b) {
          if (std::gcd(a, b) != 1) continue;
          ++cases;
          bool ok = f_n_closed(n, a * b) == f_n_closed(n, a) * f_n_closed(n, b) &&
                    g_n(n, a * b) == g_n(n, a) * g_n(n, b);
          const auto ta = assemble_census(n, a), tb = assemble_census(n, b);
          for (const auto& [ka, ca] : ta.counts())
            for (const auto& [kb, cb] : tb.counts()) {
              std::vector<std::int64_t> d(n);
              for (int i = 0; i < n; ++i) d[i] = ka[i] * kb[i];
              if (f_class(SmithForm(d)) != ca * cb) ok = false;
            }
          if (!ok) ++bad;
        }
    out.push_back(make_flag("multiplicativity", bad, cases));
  }
  return out;
}

std::vector<std::pair<int, std::int64_t>> suite_indices() {
  std::set<std::pair<int, std::int64_t>> s;
  for (int n = 1; n <= 3; ++n)
    for (std::int64_t m = 1; m <= 100; ++m) s.insert({n, m});
  for (std::int64_t m = 1; m <= 64; ++m) s.insert({4, m});
  auto powers = [&](int n, std::int64_t p, int max_r) {
    std::int64_t m = 1;
    for (int r = 0; r <= max_r; ++r, m *= p) s.insert({n, m});
  };
  for (std::int64_t p : {2, 3, 5}) powers(2, p, 6);
  for (std::int64_t p : {2, 3}) {
    powers(3, p, 5);
    powers(4, p, 5);
  }
  for (int n = 1; n <= 3; ++n) powers(n, 5, 4);
  return {s.begin(), s.end()};
}

}  // namespace

VerifyReport verify_suite(const OracleOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyReport rep;
  rep.scope = "suite";
  for (const auto& [n, m] : suite_indices()) rep.sections.push_back(verify_index(n, m, opts));
  rep.checks = formula_checks();
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace sublat
