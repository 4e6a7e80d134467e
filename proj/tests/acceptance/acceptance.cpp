// Acceptance sweep: one PASS/FAIL line per criterion, exact integer equality
// throughout. Exit status is the number of failing criteria.
#include <chrono>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "sublat/census.hpp"
#include "sublat/cli.hpp"
#include "sublat/enumerate.hpp"
#include "sublat/oracle.hpp"
#include "sublat/polyalg.hpp"

using namespace sublat;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string first_failure;

  void fail(const std::string& what) {
    if (pass) first_failure = what;
    pass = false;
  }
};

OracleOptions options() {
  OracleOptions o;
  o.jobs = std::max(1u, std::thread::hardware_concurrency());
  o.budget = kSuiteBudget;
  return o;
}

std::string key_str(int n, std::int64_t m) { return "(n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")"; }

SmithForm chain_of(const Partition& alpha, std::int64_t p) {
  std::vector<std::int64_t> d;
  for (int a : alpha.parts()) d.push_back(checked_pow(p, a));
  return SmithForm(d);
}

std::vector<std::pair<int, std::int64_t>> census_scope() {
  std::vector<std::pair<int, std::int64_t>> s;
  for (int n = 1; n <= 3; ++n)
    for (std::int64_t m = 1; m <= 100; ++m) s.emplace_back(n, m);
  for (std::int64_t m : {2, 4, 8, 16, 32}) s.emplace_back(4, m);
  return s;
}

// Exhaustive tables shared by the first two criteria.
std::map<std::pair<int, std::int64_t>, CensusTable> g_oracle;

const CensusTable& oracle_table(int n, std::int64_t m) {
  auto it = g_oracle.find({n, m});
  if (it == g_oracle.end()) it = g_oracle.emplace(std::pair{n, m}, census_bruteforce(n, m, options())).first;
  return it->second;
}

Outcome criterion1() {
  Outcome o;
  std::size_t classes = 0, indices = 0;
  for (const auto& [n, m] : census_scope()) {
    const auto& oracle = oracle_table(n, m);
    const auto formula = assemble_census(n, m);
    if (!(formula == oracle)) o.fail("class table differs at " + key_str(n, m));
    classes += oracle.classes();
    ++indices;
  }
  o.detail = std::to_string(indices) + " indices, " + std::to_string(classes) + " classes";
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::size_t indices = 0;
  for (const auto& [n, m] : census_scope()) {
    const auto& oracle = oracle_table(n, m);
    const BigInt rec = f_n_recursion(n, m), closed = f_n_closed(n, m);
    const BigInt stream = hnf_count_stream_check(n, m);
    if (rec != closed || closed != stream || stream != oracle.total())
      o.fail("f_n routes differ at " + key_str(n, m));
    if (g_n(n, m) != oracle.classes()) o.fail("g_n differs from observed classes at " + key_str(n, m));
    ++indices;
  }
  o.detail = std::to_string(indices) + " indices, three f_n routes and g_n";
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::size_t cases = 0;
  for (std::int64_t p : {2, 3, 5}) {
    std::int64_t q = 1;
    for (int r = 0; r <= 6; ++r, q *= p) {
      const auto oracle = census_bruteforce(2, q, options());
      for (int t = 0; 2 * t <= r; ++t) {
        const BigInt rec = f_alpha_p(Partition({t, r - t}), p);
        const BigInt closed = f_alpha_n2_closed(t, r, p);
        const BigInt seen = oracle.count(chain_of(Partition({t, r - t}), p));
        if (rec != closed || closed != seen)
          o.fail("p=" + std::to_string(p) + " r=" + std::to_string(r) + " t=" + std::to_string(t));
        ++cases;
      }
    }
  }
  o.detail = std::to_string(cases) + " (p, r, t) cases";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::uint64_t matrices = 0;
  for (std::int64_t p : {2, 3}) {
    std::int64_t q = 1;
    for (int r = 0; r <= 4; ++r, q *= p) {
      HnfStream s(3, q);
      while (const HnfMatrix* h = s.next()) {
        if (snf3_direct(*h).smith != invariant_factors(*h)) o.fail("disagreement at index " + std::to_string(q));
        ++matrices;
      }
    }
  }
  o.detail = std::to_string(matrices) + " matrices";
  return o;
}

struct AlphaScope {
  int n;
  std::int64_t p;
  int max_k;
};

const AlphaScope kAlphaScopes[] = {{1, 2, 5}, {2, 2, 5}, {3, 2, 5}, {4, 2, 5}, {1, 3, 5}, {2, 3, 5},
                                   {3, 3, 5}, {4, 3, 5}, {1, 5, 4}, {2, 5, 4}, {3, 5, 4}};

Outcome criterion5() {
  Outcome o;
  std::size_t classes = 0;
  for (const auto& sc : kAlphaScopes) {
    std::int64_t q = 1;
    for (int k = 0; k <= sc.max_k; ++k, q *= sc.p) {
      const auto oracle = census_bruteforce(sc.n, q, options());
      for (const auto& alpha : partitions(sc.n, k)) {
        if (f_alpha_p(alpha, sc.p) != oracle.count(chain_of(alpha, sc.p)))
          o.fail("alpha=(" + alpha.to_string() + ") p=" + std::to_string(sc.p));
        ++classes;
      }
    }
  }
  o.detail = std::to_string(classes) + " classes";
  return o;
}

// prod_{j=1}^{n-1} (T^(j+r) - 1) == f_n(T) * prod_{j=1}^{n-1} (T^j - 1)
bool total_poly_closed_form(int n, int r, const IntPoly& total) {
  IntPoly num{1}, den{1};
  for (int j = 1; j <= n - 1; ++j) {
    num = num * (IntPoly::monomial(j + r) - IntPoly{1});
    den = den * (IntPoly::monomial(j) - IntPoly{1});
  }
  return num == total * den;
}

Outcome criterion6() {
  Outcome o;
  const std::int64_t primes[] = {2, 3, 5, 7, 11};
  ClassPolyTable table;
  std::size_t classes = 0;
  for (const auto& sc : kAlphaScopes) {
    if (sc.p != 2) continue;  // the polynomial does not depend on the prime
    for (int k = 0; k <= sc.max_k; ++k) {
      IntPoly sum;
      for (const auto& alpha : partitions(sc.n, k)) {
        const IntPoly g = f_alpha_poly(alpha, table);
        for (std::int64_t p : primes)
          if (g.eval(p) != f_alpha_p(alpha, p)) o.fail("g(" + alpha.to_string() + ") at p=" + std::to_string(p));
        sum += g;
        ++classes;
      }
      const IntPoly total = fn_primepower_poly(sc.n, k, table);
      if (sum != total) o.fail("class polynomials do not sum to f_n at n=" + std::to_string(sc.n));
      if (!total_poly_closed_form(sc.n, k, total)) o.fail("f_n polynomial not the closed product at n=" + std::to_string(sc.n));
    }
  }
  o.detail = std::to_string(classes) + " class polynomials at 5 primes";
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::size_t cases = 0;
  for (int n = 1; n <= 4; ++n)
    for (std::int64_t m = 1; m <= 64; ++m) {
      const BigInt seen = cocyclic_bruteforce(n, m, options());
      if (cocyclic_general(n, m) != seen) o.fail("general formula at " + key_str(n, m));
      const auto f = factorize(m);
      if (f.pairs().size() <= 1) {
        const BigInt pp = f.empty() ? cocyclic_primepower(n, 2, 0)
                                    : cocyclic_primepower(n, f.pairs()[0].prime, f.pairs()[0].exponent);
        if (pp != seen) o.fail("prime-power formula at " + key_str(n, m));
      }
      ++cases;
    }
  if (f_class(SmithForm({1, 1, 2})) != 7 || cocyclic_bruteforce(3, 2) != 7) o.fail("anchor f(1,1,2)");
  if (f_class(SmithForm({1, 1, 4})) != 28 || cocyclic_bruteforce(3, 4) != 28) o.fail("anchor f(1,1,4)");
  if (f_class(SmithForm({1, 12})) != 24 || cocyclic_bruteforce(2, 12) != 24) o.fail("anchor f(1,12)");
  std::size_t square_free = 0;
  for (std::int64_t m = 1; m <= 100; ++m) {
    if (radical(m) != m) continue;
    for (int n = 1; n <= 4; ++n)
      if (cocyclic_general(n, m) != f_n_closed(n, m) || g_n(n, m) != 1) o.fail("square-free " + key_str(n, m));
    ++square_free;
  }
  o.detail = std::to_string(cases) + " indices exhaustively, 3 anchors, " + std::to_string(square_free) +
             " square-free indices";
  return o;
}

Outcome criterion8() {
  Outcome o;
  ClassPolyTable table;
  for (int n = 2; n <= 4; ++n)
    for (int r = 1; r <= 5; ++r) {
      const auto rep = leading_terms_check(n, r, table);
      if (!rep.match) o.fail("leading terms n=" + std::to_string(n) + " r=" + std::to_string(r));
      if ((rep.all_sublattices - rep.cocyclic).degree() > (n - 1) * r - 2)
        o.fail("difference degree n=" + std::to_string(n) + " r=" + std::to_string(r));
    }
  o.detail = "15 (n, r) pairs";
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::size_t splits = 0;
  for (std::int64_t a = 1; a <= 300; ++a)
    for (std::int64_t b = a; a * b <= 300; ++b) {
      if (gcd64(a, b) != 1) continue;
      for (int n = 1; n <= 3; ++n) {
        if (f_n_closed(n, a * b) != f_n_closed(n, a) * f_n_closed(n, b)) o.fail("f_n " + key_str(n, a * b));
        if (g_n(n, a * b) != g_n(n, a) * g_n(n, b)) o.fail("g_n " + key_str(n, a * b));
        const auto ta = assemble_census(n, a), tb = assemble_census(n, b);
        for (const auto& [ka, ca] : ta.counts())
          for (const auto& [kb, cb] : tb.counts()) {
            std::vector<std::int64_t> d(n);
            for (int i = 0; i < n; ++i) d[i] = ka[i] * kb[i];
            if (f_class(SmithForm(d)) != f_class(ka) * f_class(kb)) o.fail("f_class " + key_str(n, a * b));
          }
      }
      ++splits;
    }
  o.detail = std::to_string(splits) + " coprime splits, n <= 3";
  return o;
}

Outcome criterion10() {
  Outcome o;
  std::ostringstream out1, out8, err;
  const int c1 = run_cli({"verify", "suite", "--jobs", "1"}, out1, err);
  const int c8 = run_cli({"verify", "suite", "--jobs", "8"}, out8, err);
  if (c1 != 0 || c8 != 0) o.fail("suite exit codes " + std::to_string(c1) + ", " + std::to_string(c8));
  if (out1.str() != out8.str()) o.fail("reports differ");
  o.detail = std::to_string(out1.str().size()) + " byte reports";
  return o;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    Outcome (*run)();
  };
  const Entry criteria[] = {
      {1, "formula census equals exhaustive census", criterion1},
      {2, "f_n routes and g_n agree with the stream", criterion2},
      {3, "n = 2 closed form", criterion3},
      {4, "n = 3 Smith shortcut", criterion4},
      {5, "prime-power class recursion", criterion5},
      {6, "class polynomials", criterion6},
      {7, "co-cyclic counts", criterion7},
      {8, "shared leading terms", criterion8},
      {9, "multiplicativity", criterion9},
      {10, "report determinism across worker counts", criterion10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << " [" << o.detail;
    if (!o.pass) std::cout << "; first failure: " << o.first_failure;
    std::cout << "] (" << std::fixed;
    std::cout.precision(1);
    std::cout << secs << " s)" << std::endl;
    if (!o.pass) ++failures;
  }
  return failures;
}
