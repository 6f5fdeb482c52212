#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include "doctest.h"
#include "lefschetz/error.hpp"
#include "lefschetz/number_theory.hpp"

using namespace lefschetz;
using boost::multiprecision::cpp_int;

namespace {

cpp_int factorial(int n) {
  cpp_int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

int exact_multinomial_mod(const std::vector<std::int64_t>& parts, int p) {
  std::int64_t top = 0;
  cpp_int den = 1;
  for (auto k : parts) {
    top += k;
    den *= factorial(static_cast<int>(k));
  }
  const cpp_int value = factorial(static_cast<int>(top)) / den;
  return static_cast<int>(value % p);
}

int exact_valuation(const std::vector<std::int64_t>& parts, int p) {
  std::int64_t top = 0;
  cpp_int den = 1;
  for (auto k : parts) {
    top += k;
    den *= factorial(static_cast<int>(k));
  }
  cpp_int value = factorial(static_cast<int>(top)) / den;
  int v = 0;
  while (value % p == 0) {
    value /= p;
    ++v;
  }
  return v;
}

std::int64_t sum(const std::vector<std::int64_t>& parts) {
  std::int64_t s = 0;
  for (auto k : parts) s += k;
  return s;
}

}  // namespace

TEST_CASE("split_mod_p keeps the remainder in (0, p]") {
  CHECK(split_mod_p(12, 5) == PAdicSplit{2, 2});
  CHECK(split_mod_p(9, 5) == PAdicSplit{1, 4});
  CHECK(split_mod_p(10, 5) == PAdicSplit{1, 5});
  CHECK(split_mod_p(3, 5) == PAdicSplit{0, 3});
  for (int p : {2, 3, 5, 7, 11}) {
    for (int d = 1; d <= 200; ++d) {
      const auto s = split_mod_p(d, p);
      CHECK(s.quotient * p + s.remainder == d);
      CHECK(s.remainder > 0);
      CHECK(s.remainder <= p);
      CHECK(s.quotient >= 0);
    }
  }
  CHECK_THROWS_AS(split_mod_p(0, 5), Error);
}

TEST_CASE("multinomial examples") {
  const std::vector<std::int64_t> a{2, 2, 2};
  CHECK(multinomial_mod_p(6, a, 5) == 0);
  CHECK(multinomial_mod_p(6, a, 7) == 90 % 7);
  const std::vector<std::int64_t> c{1, 1, 1, 5};
  CHECK(multinomial_mod_p(8, c, 5) == 1);
  CHECK_FALSE(multinomial_divisible_by_p(8, c, 5));
  const std::vector<std::int64_t> d{1, 2, 2, 5, 5};
  CHECK(multinomial_mod_p(15, d, 5) == 0);
  CHECK(multinomial_divisible_by_p(15, d, 5));
  const std::vector<std::int64_t> e{2, 2, 5, 5};
  CHECK_FALSE(multinomial_divisible_by_p(14, e, 5));
  for (std::int64_t top : {0, 1, 17, 625}) {
    const std::vector<std::int64_t> single{top};
    CHECK(multinomial_mod_p(top, single, 5) == 1);
  }
  const std::vector<std::int64_t> b{1, 1};
  CHECK(multinomial_mod_p(2, b, 2) == 0);
  const std::vector<std::int64_t> bad{1, 1};
  try {
    (void)multinomial_mod_p(3, bad, 5);
    FAIL("expected PartsMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PartsMismatch);
  }
}

TEST_CASE("Lucas multinomial agrees with exact factorials") {
  std::mt19937 rng(5);
  for (int p : {2, 3, 5, 7, 11, 13}) {
    const MultinomialModP table(p);
    for (int trial = 0; trial < 400; ++trial) {
      std::vector<std::int64_t> parts(1 + rng() % 6);
      std::int64_t budget = 60;
      for (auto& k : parts) {
        k = static_cast<std::int64_t>(rng() % 16);
        if (k > budget) k = budget;
        budget -= k;
      }
      const auto top = sum(parts);
      const int lucas = table(top, parts);
      CHECK(lucas == exact_multinomial_mod(parts, p));
      CHECK((lucas == 0) == multinomial_divisible_by_p(top, parts, p));
      CHECK(multinomial_carries(top, parts, p) == exact_valuation(parts, p));
    }
  }
}

TEST_CASE("binomial mod p") {
  const MultinomialModP table(7);
  for (int n = 0; n <= 50; ++n) {
    for (int k = 0; k <= n; ++k) {
      const cpp_int exact = factorial(n) / (factorial(k) * factorial(n - k));
      CHECK(table.binomial(n, k) == static_cast<int>(exact % 7));
    }
  }
  CHECK(table.binomial(3, 5) == 0);
  CHECK(table.binomial(3, -1) == 0);
}

TEST_CASE("multinomial is invariant under permutation of parts") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::int64_t> parts(2 + rng() % 4);
    for (auto& k : parts) k = static_cast<std::int64_t>(rng() % 40);
    const auto top = sum(parts);
    const int before = multinomial_mod_p(top, parts, 3);
    std::shuffle(parts.begin(), parts.end(), rng);
    CHECK(multinomial_mod_p(top, parts, 3) == before);
  }
}

TEST_CASE("prime power interval") {
  CHECK(exists_prime_power_in_open_interval(2, {3, 2}, {3, 1}) == 1);
  CHECK(exists_prime_power_in_open_interval(5, {3, 1}, {4, 1}) == std::nullopt);
  CHECK(exists_prime_power_in_open_interval(3, {8, 1}, {10, 1}) == 2);
  CHECK(exists_prime_power_in_open_interval(5, {3, 1}, {6, 1}) == 1);
  CHECK(exists_prime_power_in_open_interval(5, {5, 1}, {25, 1}) == std::nullopt);
  CHECK(exists_prime_power_in_open_interval(2, {7, 2}, {9, 1}) == 2);
  CHECK(exists_prime_power_in_open_interval(3, {-1, 1}, {2, 1}) == std::nullopt);
  CHECK(exists_prime_power_in_open_interval(3, {-1, 1}, {4, 1}) == 1);
}

TEST_CASE("prime power interval is scale invariant and matches a linear scan") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    const int p = std::array{2, 3, 5, 7}[rng() % 4];
    const std::int64_t lo_num = static_cast<std::int64_t>(rng() % 400);
    const std::int64_t lo_den = 1 + static_cast<std::int64_t>(rng() % 12);
    const std::int64_t hi_num = 1 + static_cast<std::int64_t>(rng() % 800);
    const std::int64_t hi_den = 1 + static_cast<std::int64_t>(rng() % 12);
    const auto base = exists_prime_power_in_open_interval(p, {lo_num, lo_den}, {hi_num, hi_den});
    for (std::int64_t c : {2, 7, 1000003}) {
      CHECK(exists_prime_power_in_open_interval(p, {lo_num * c, lo_den * c}, {hi_num * c, hi_den * c}) ==
            base);
    }
    std::optional<int> scan;
    std::int64_t power = p;
    for (int e = 1; e < 20; ++e, power *= p) {
      if (power * lo_den > lo_num && power * hi_den < hi_num) {
        scan = e;
        break;
      }
    }
    CHECK(base == scan);
  }
}

TEST_CASE("primality") {
  int count = 0;
  for (int n = -3; n < 1000; ++n) count += is_prime(n) ? 1 : 0;
  CHECK(count == 168);
  CHECK(is_prime(65521));
  CHECK_FALSE(is_prime(65535));
}
