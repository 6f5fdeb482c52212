#include <random>

#include "doctest.h"
#include "lefschetz/algebra.hpp"
#include "lefschetz/jordan_type.hpp"
#include "lefschetz/rank_oracle.hpp"

using namespace lefschetz;

TEST_CASE("strings of a single variable") {
  const JordanEngine engine(5);
  const std::vector<int> d{7};
  const auto s = engine.decompose(d);
  CHECK(s.num_strings() == 1);
  CHECK(s.blocks() == std::vector<StringBlock>{{0, 7, 1}});
}

TEST_CASE("pair table in characteristic two") {
  // u + v squares to zero on k[u,v]/(u^2,v^2) in characteristic 2.
  const JordanEngine engine(2);
  const auto table = engine.pair_table(2, 2);
  CHECK(*table == std::vector<StringBlock>{{0, 2, 1}, {1, 2, 1}});
  const JordanEngine odd(3);
  CHECK(*odd.pair_table(2, 2) == std::vector<StringBlock>{{0, 3, 1}, {1, 1, 1}});
}

TEST_CASE("string ranks match every matrix rank") {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 60; ++trial) {
    const int p = std::array{2, 3, 5, 7}[rng() % 4];
    std::vector<int> degrees(1 + rng() % 4);
    for (auto& x : degrees) x = 2 + static_cast<int>(rng() % 6);
    const auto ci = MonomialCI::normalize(degrees, p);
    const auto s = JordanEngine(p).decompose(ci);
    const int t = ci.socle_degree();
    std::int64_t total = 0;
    for (const auto& b : s.blocks()) {
      CHECK(b.start >= 0);
      CHECK(b.start + b.length - 1 <= t);
      // Strings are symmetric about t/2.
      CHECK(s.count(t - (b.start + b.length - 1), b.length) == b.count);
      total += b.count * b.length;
    }
    std::int64_t product = 1;
    for (int d : ci.degrees()) product *= d;
    CHECK(total == product);
    for (int m = 1; m <= t; ++m) {
      for (int i = 0; i + m <= t; ++i) {
        CHECK(s.rank(i, m) == static_cast<std::int64_t>(rank_mod_p(multiplication_matrix(ci, m, i))));
      }
    }
  }
}

TEST_CASE("extend and the last-step shortcut are consistent") {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 120; ++trial) {
    const int p = std::array{2, 3, 5}[rng() % 3];
    std::vector<int> prefix(1 + rng() % 4);
    for (auto& x : prefix) x = 2 + static_cast<int>(rng() % 8);
    const int d = 2 + static_cast<int>(rng() % 8);
    const JordanEngine engine(p);
    const auto base = engine.decompose(prefix);
    auto full_degrees = prefix;
    full_degrees.push_back(d);
    const auto full = engine.decompose(full_degrees);
    CHECK(engine.extend(base, d) == full);
    CHECK(engine.wlp_after_adjoining(base, prefix, d) == full.has_wlp());
    // Degree order does not matter.
    std::shuffle(full_degrees.begin(), full_degrees.end(), rng);
    CHECK(engine.decompose(full_degrees) == full);
  }
}
