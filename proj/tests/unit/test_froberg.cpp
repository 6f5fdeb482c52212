#include <random>

#include "doctest.h"
#include "lefschetz/error.hpp"
#include "lefschetz/froberg.hpp"
#include "lefschetz/rank_oracle.hpp"

using namespace lefschetz;

namespace {

using Series = std::vector<std::int64_t>;

// prod(1 - t^d) / (1 - t)^n by plain polynomial arithmetic, first `len` terms.
Series naive_series(int nvars, const std::vector<int>& forms, int len) {
  Series s(static_cast<std::size_t>(len), 0);
  s[0] = 1;
  for (int d : forms) {
    for (int k = len - 1; k >= d; --k) s[static_cast<std::size_t>(k)] -= s[static_cast<std::size_t>(k - d)];
  }
  for (int v = 0; v < nvars; ++v) {
    for (int k = 1; k < len; ++k) s[static_cast<std::size_t>(k)] += s[static_cast<std::size_t>(k - 1)];
  }
  return s;
}

Series positive_prefix(const Series& s) {
  Series out;
  for (auto v : s) {
    if (v <= 0) break;
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("truncate") {
  const Series s{1, 3, 2, -2, 5};
  const auto t = truncate(s);
  CHECK(t.coefficients == Series{1, 3, 2});
  CHECK(t.cut_value == -2);
  const Series all_positive{1, 2};
  CHECK_FALSE(truncate(all_positive).cut_value.has_value());
}

TEST_CASE("truncate_product examples") {
  const auto two = polynomial_ring_series(2, 10);
  const std::vector<int> f22{2, 2};
  CHECK(truncate_product(two, f22).coefficients == Series{1, 2, 1});
  const auto three = polynomial_ring_series(3, 10);
  const std::vector<int> f2222{2, 2, 2, 2};
  CHECK(truncate_product(three, f2222).coefficients == Series{1, 3, 2});
  const std::vector<int> f9{9};
  const auto kept = truncate_product(three, f9);
  for (std::size_t k = 0; k < 9; ++k) CHECK(kept.coefficients[k] == three[k]);
}

TEST_CASE("froberg_series examples") {
  const std::vector<int> a{2, 2};
  CHECK(froberg_series(2, a).coefficients == Series{1, 2, 1});
  const std::vector<int> b{2, 2, 2, 2};
  CHECK(froberg_series(3, b).coefficients == Series{1, 3, 2});
  const std::vector<int> c{2, 2, 2};
  const auto s = froberg_series(2, c);
  CHECK(s.coefficients == Series{1, 2});
  CHECK(s.cut_value == 0);
  const std::vector<int> too_few{3};
  CHECK_THROWS_AS(froberg_series(2, too_few), Error);
}

TEST_CASE("froberg_series matches naive expansion") {
  std::mt19937 rng(73);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    std::vector<int> forms(static_cast<std::size_t>(n) + rng() % 3);
    int total = 0;
    for (auto& d : forms) {
      d = 1 + static_cast<int>(rng() % 7);
      total += d;
    }
    CHECK(froberg_series(n, forms).coefficients == positive_prefix(naive_series(n, forms, total + 2)));
  }
}

TEST_CASE("check_froberg examples") {
  auto r = check_froberg_n_plus_1(MonomialCI::normalize({2, 2, 2}, 5), 2);
  CHECK(r.equal);
  CHECK(r.computed.coefficients == Series{1, 3, 2});
  CHECK(r.conjectured.coefficients == Series{1, 3, 2});
  r = check_froberg_n_plus_1(MonomialCI::normalize({2, 2}, 2), 2);
  CHECK_FALSE(r.equal);
  CHECK(r.computed.coefficients == Series{1, 2, 1});
  CHECK(r.conjectured.coefficients == Series{1, 2});
}

TEST_CASE("Froberg agreement is equivalent to the WLP of the enlarged algebra") {
  std::mt19937 rng(79);
  for (int trial = 0; trial < 120; ++trial) {
    const int p = std::array{2, 3, 5, 7}[rng() % 4];
    std::vector<int> degrees(1 + rng() % 3);
    for (auto& d : degrees) d = 2 + static_cast<int>(rng() % 6);
    const int e = 1 + static_cast<int>(rng() % 7);
    const auto ci = MonomialCI::normalize(degrees, p);
    auto enlarged = degrees;
    enlarged.push_back(e);
    const bool wlp = verify_wlp(MonomialCI::normalize(enlarged, p));
    INFO(ci.to_string(), " e=", e);
    CHECK(check_froberg_n_plus_1(ci, e).equal == wlp);
  }
}
