#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "sublat/census.hpp"
#include "sublat/enumerate.hpp"

using namespace sublat;

namespace {

std::vector<std::vector<std::int64_t>> collect(HnfStream& s) {
  std::vector<std::vector<std::int64_t>> out;
  while (const HnfMatrix* h = s.next()) out.emplace_back(h->entries().begin(), h->entries().end());
  return out;
}

std::vector<std::vector<std::int64_t>> collect(int n, std::int64_t m) {
  HnfStream s(n, m);
  return collect(s);
}

}  // namespace

TEST_CASE("stream order for small cases") {
  CHECK(collect(2, 2) == std::vector<std::vector<std::int64_t>>{{1, 0, 0, 2}, {1, 1, 0, 2}, {2, 0, 0, 1}});
  CHECK(collect(1, 7) == std::vector<std::vector<std::int64_t>>{{7}});
  CHECK(collect(3, 2).size() == 7);
  CHECK(collect(2, 1) == std::vector<std::vector<std::int64_t>>{{1, 0, 0, 1}});
}

TEST_CASE("stream counts") {
  CHECK(hnf_count_stream_check(2, 4) == 7);
  CHECK(hnf_count_stream_check(3, 4) == 35);
  CHECK(hnf_count_stream_check(4, 2) == 15);
  CHECK(hnf_count_stream_check(2, 6) == 12);
}

TEST_CASE("stream rejects bad arguments") {
  CHECK_THROWS_AS(HnfStream(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(HnfStream(2, 0), std::invalid_argument);
}

TEST_CASE("stream equals the naive construction") {
  for (int n = 1; n <= 4; ++n)
    for (long long m = 1; m <= (n <= 2 ? 40 : n == 3 ? 16 : 8); ++m) {
      const auto fast = collect(n, m);
      const auto naive = oracles::naive_hnfs(n, m);
      const std::set<std::vector<std::int64_t>> a(fast.begin(), fast.end());
      const std::set<std::vector<long long>> b(naive.begin(), naive.end());
      REQUIRE(a.size() == fast.size());
      REQUIRE(fast.size() == naive.size());
      REQUIRE(std::equal(a.begin(), a.end(), b.begin(), b.end(),
                         [](const auto& x, const auto& y) { return std::equal(x.begin(), x.end(), y.begin(), y.end()); }));
    }
}

TEST_CASE("every streamed matrix is a valid HNF of the right determinant") {
  for (int n = 1; n <= 4; ++n)
    for (std::int64_t m : {1, 6, 12, 16}) {
      HnfStream s(n, m);
      while (const HnfMatrix* h = s.next()) {
        const auto again = validate_hnf(h->matrix());
        REQUIRE(again == *h);
        REQUIRE(h->determinant() == m);
      }
    }
}

TEST_CASE("stream cardinality matches the closed form") {
  for (int n = 1; n <= 4; ++n)
    for (std::int64_t m = 1; m <= (n == 4 ? 100 : 200); ++m)
      REQUIRE(BigInt(hnf_count_stream_check(n, m)) == f_n_closed(n, m));
  for (std::int64_t q : {2, 4, 8, 16, 32, 64, 128, 3, 9, 27, 81, 243, 5, 25, 125})
    for (int n = 2; n <= 4; ++n)
      if (f_n_closed(n, q) <= 30'000'000) REQUIRE(BigInt(hnf_count_stream_check(n, q)) == f_n_closed(n, q));
}

TEST_CASE("stream count is multiplicative over coprime factors") {
  const std::pair<std::int64_t, std::int64_t> pairs[] = {{4, 9}, {8, 3}, {5, 7}, {16, 5}, {9, 25}};
  for (int n = 2; n <= 3; ++n)
    for (const auto& [a, b] : pairs)
      REQUIRE(hnf_count_stream_check(n, a * b) == hnf_count_stream_check(n, a) * hnf_count_stream_check(n, b));
}

TEST_CASE("chunked work units reproduce the full stream") {
  for (int n = 2; n <= 4; ++n)
    for (std::int64_t m : {8, 12, 27})
      for (std::uint64_t chunk : {1u, 3u, 7u, 1000u}) {
        const auto units = hnf_work_units(n, m, chunk);
        for (const auto& u : units) REQUIRE(u.end - u.begin <= chunk);
        HnfStream s(n, units);
        REQUIRE(collect(s) == collect(n, m));
      }
}

TEST_CASE("off-diagonal count") {
  CHECK(off_diagonal_count({2, 3}) == 3);
  CHECK(off_diagonal_count({1, 2, 4}) == 2 * 16);
  CHECK(off_diagonal_count({5}) == 1);
}
