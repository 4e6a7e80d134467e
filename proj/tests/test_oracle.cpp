#include <doctest.h>

#include "sublat/census.hpp"
#include "sublat/oracle.hpp"

using namespace sublat;

namespace {

SmithForm sf(std::vector<std::int64_t> d) { return SmithForm(std::move(d)); }

}  // namespace

TEST_CASE("exhaustive census examples") {
  const auto t = census_bruteforce(2, 4);
  CHECK(t.classes() == 2);
  CHECK(t.count(sf({1, 4})) == 6);
  CHECK(t.count(sf({2, 2})) == 1);

  const auto t3 = census_bruteforce(3, 4);
  CHECK(t3.count(sf({1, 1, 4})) == 28);
  CHECK(t3.count(sf({1, 2, 2})) == 7);
  CHECK(t3.total() == 35);

  const auto t6 = census_bruteforce(2, 6);
  CHECK(t6.classes() == 1);
  CHECK(t6.count(sf({1, 6})) == 12);
}

TEST_CASE("exhaustive co-cyclic count") {
  CHECK(cocyclic_bruteforce(3, 4) == 28);
  for (std::int64_t p : {2, 3, 5}) CHECK(cocyclic_bruteforce(2, p) == p + 1);
  for (int n = 1; n <= 4; ++n) CHECK(cocyclic_bruteforce(n, 1) == 1);
}

TEST_CASE("budget is enforced before any work") {
  OracleOptions opts;
  opts.budget = 10;
  try {
    census_bruteforce(3, 4, opts);
    FAIL("expected refusal");
  } catch (const BudgetExceeded& e) {
    CHECK(e.estimate() == 35);
    CHECK(e.budget() == 10);
  }
  CHECK_THROWS_AS(cocyclic_bruteforce(3, 4, opts), BudgetExceeded);
  opts.budget = 35;
  CHECK_NOTHROW(census_bruteforce(3, 4, opts));
}

TEST_CASE("tallies are independent of workers, chunking and method") {
  const std::pair<int, std::int64_t> cases[] = {{2, 36}, {3, 24}, {4, 16}, {3, 64}};
  for (const auto& [n, m] : cases) {
    const auto base = census_bruteforce(n, m);
    for (unsigned jobs : {1u, 2u, 8u})
      for (std::uint64_t chunk : {1u, 17u, 1u << 14}) {
        OracleOptions opts;
        opts.jobs = jobs;
        opts.chunk = chunk;
        REQUIRE(census_bruteforce(n, m, opts) == base);
        opts.method = SnfMethod::Minors;
        REQUIRE(census_bruteforce(n, m, opts) == base);
      }
    OracleOptions par;
    par.jobs = 4;
    par.chunk = 5;
    REQUIRE(cocyclic_bruteforce(n, m, par) == cocyclic_bruteforce(n, m));
  }
}

TEST_CASE("shortcuts agree with elimination") {
  for (std::int64_t q : {1, 2, 4, 8, 16, 64, 3, 27, 81, 25, 125})
    CHECK(shortcut_disagreements(2, q) == 0);
  for (std::int64_t q : {1, 2, 4, 8, 16, 3, 9, 27, 81})
    CHECK(shortcut_disagreements(3, q) == 0);
  CHECK_THROWS_AS(shortcut_disagreements(4, 8), std::invalid_argument);
}

TEST_CASE("verification reports") {
  const auto single = verify_single(2, 4);
  CHECK(single.all_match());
  REQUIRE(single.sections.size() == 1);
  CHECK(single.sections[0].classes.size() == 2);

  const auto prime = verify_prime(3, 2, 3);
  CHECK(prime.all_match());
  CHECK(prime.sections.size() == 4);

  const auto composite = verify_single(2, 36);
  CHECK(composite.all_match());

  OracleOptions opts;
  opts.jobs = 3;
  const auto again = verify_single(3, 36, opts);
  CHECK(again.all_match());
  CHECK_THROWS_AS(verify_single(2, 0), std::invalid_argument);
}
