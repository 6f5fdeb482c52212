#include "lefschetz/classifier.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <numeric>

#include "lefschetz/error.hpp"
#include "lefschetz/number_theory.hpp"

namespace lefschetz {

std::string to_string(Status status) {
  switch (status) {
    case Status::Holds: return "holds";
    case Status::Fails: return "fails";
    case Status::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

Verdict make(Status status, std::string rule) {
  Verdict v;
  v.status = status;
  v.rule = std::move(rule);
  return v;
}

std::int64_t sum_minus_one(std::span<const int> degrees) {
  std::int64_t s = 0;
  for (int d : degrees) s += d - 1;
  return s;
}

// Calls visit(subset) for every subset of `pool`, larger subsets first and
// lexicographically within a size, until visit returns true.
template <class Visit>
bool for_each_subset_largest_first(const std::vector<int>& pool, Visit&& visit) {
  const int n = static_cast<int>(pool.size());
  for (int k = n; k >= 0; --k) {
    std::vector<int> pick(static_cast<std::size_t>(k));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      std::vector<int> subset;
      subset.reserve(pick.size());
      for (int i : pick) subset.push_back(pool[static_cast<std::size_t>(i)]);
      if (visit(subset)) return true;
      int j = k - 1;
      while (j >= 0 && pick[static_cast<std::size_t>(j)] == n - k + j) --j;
      if (j < 0) break;
      ++pick[static_cast<std::size_t>(j)];
      for (int l = j + 1; l < k; ++l) {
        pick[static_cast<std::size_t>(l)] = pick[static_cast<std::size_t>(l - 1)] + 1;
      }
    }
  }
  return false;
}

}  // namespace

ZeroDivisorPower zero_divisor_power(const MonomialCI& ci, const std::vector<int>& lambda) {
  const int n = ci.num_vars();
  const int p = ci.characteristic();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int i : lambda) {
    if (i < 1 || i > n) {
      throw Error(ErrorCode::InvalidLambda, "index " + std::to_string(i) + " outside 1.." + std::to_string(n));
    }
    if (seen[static_cast<std::size_t>(i - 1)]) {
      throw Error(ErrorCode::InvalidLambda, "index " + std::to_string(i) + " repeated");
    }
    seen[static_cast<std::size_t>(i - 1)] = true;
  }
  std::int64_t total_n = 0;
  for (int d : ci.degrees()) total_n += split_mod_p(d, p).quotient;

  ZeroDivisorPower out;
  out.m = static_cast<int>(total_n - static_cast<std::int64_t>(lambda.size()) + 1);
  out.witness.exponents.assign(static_cast<std::size_t>(n), 0);
  for (int i : lambda) {
    const auto split = split_mod_p(ci.degree(static_cast<std::size_t>(i - 1)), p);
    out.witness.exponents[static_cast<std::size_t>(i - 1)] = static_cast<int>(split.remainder);
    if (split.quotient == 0) out.trivial = true;  // x_i^{d_i} = 0
  }
  return out;
}

std::optional<Certificate> slp_failure_certificate(const MonomialCI& ci) {
  const int n = ci.num_vars();
  const int p = ci.characteristic();
  const int t = ci.socle_degree();
  std::vector<int> pool;
  std::vector<std::int64_t> r(static_cast<std::size_t>(n));
  std::int64_t total_n = 0;
  for (int i = 0; i < n; ++i) {
    const auto split = split_mod_p(ci.degree(static_cast<std::size_t>(i)), p);
    r[static_cast<std::size_t>(i)] = split.remainder;
    total_n += split.quotient;
    if (split.quotient > 0) pool.push_back(i + 1);
  }

  std::optional<Certificate> found;
  for_each_subset_largest_first(pool, [&](const std::vector<int>& lambda) {
    const std::int64_t m = total_n - static_cast<std::int64_t>(lambda.size()) + 1;
    std::int64_t inside = 0, outside = 0;
    std::vector<bool> in(static_cast<std::size_t>(n), false);
    for (int i : lambda) {
      inside += r[static_cast<std::size_t>(i - 1)];
      in[static_cast<std::size_t>(i - 1)] = true;
    }
    for (int i = 0; i < n; ++i) {
      if (!in[static_cast<std::size_t>(i)]) outside += r[static_cast<std::size_t>(i)];
    }
    const bool low_enough = 2 * inside <= t - m * p;
    [[maybe_unused]] const bool alternative =
        inside <= outside - n + (static_cast<std::int64_t>(lambda.size()) - 1) * p;
    assert(low_enough == alternative);
    if (!low_enough) return false;
    const auto zd = zero_divisor_power(ci, lambda);
    found = Certificate{lambda, zd.m, zd.witness, zd.m * p};
    return true;
  });
  return found;
}

Verdict classify_slp(const MonomialCI& ci, bool use_oracle_fallback, const OracleOptions& options) {
  const int n = ci.num_vars();
  if (n == 1) return make(Status::Holds, "slp:one-variable");
  if (n == 2) {
    if (!use_oracle_fallback) return make(Status::Unknown, "none");
    const auto result = verify_slp(ci, false, options);
    Verdict v = make(result.holds ? Status::Holds : Status::Fails, "oracle");
    if (!result.holds) {
      const int m = *result.failing_power;
      const auto report = has_maximal_rank_power(ci, m, options);
      v.oracle_failure = OracleFailure{m, report.first_failure.value_or(0)};
    }
    return v;
  }

  const std::int64_t p = ci.characteristic();
  const std::int64_t t = ci.socle_degree();
  const std::int64_t d1 = ci.degree(0);
  const std::int64_t d2 = ci.degree(1);
  const std::int64_t r1 = split_mod_p(d1, p).remainder;
  const std::int64_t rest = t - (d1 - 1);

  if (t < p) return make(Status::Holds, "slp:socle-below-char");
  if (d1 > p && d2 <= p && rest <= std::min(r1, p - r1)) return make(Status::Holds, "slp:dominant-degree");

  std::string rule;
  if (p == 2) {
    rule = "slp:char-two";
  } else if (d1 > p && d2 <= p && rest > r1) {
    rule = "slp:dominant-excess";
  } else if (d1 > p && d2 <= p && r1 + rest > p) {
    rule = "slp:dominant-overflow";
  } else if (d1 <= p && t >= p) {
    rule = "slp:socle-reaches-char";
  } else if (d2 > p) {
    rule = "slp:two-large-degrees";
  } else {
    throw Error(ErrorCode::InvalidArgument, "no SLP rule matched " + ci.to_string());
  }
  Verdict v = make(Status::Fails, rule);
  v.certificate = slp_failure_certificate(ci);
  return v;
}

Verdict classify_wlp_uniform(int n, int d, int p) {
  if (n < 1 || d < 2) throw Error(ErrorCode::InvalidArgument, "need n >= 1 and d >= 2");
  if (!is_prime(p)) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(p));
  if (n <= 2) return make(Status::Holds, "wlp:two-variables");

  if (n == 3) {
    // Fails iff some p^e (e >= 1) lies strictly inside one of the intervals
    // indexed by k >= 0. Intervals shrink toward 0, so stop once the upper end
    // is at most p.
    const std::int64_t top = d % 2 == 0 ? 3LL * d : 3LL * d - 1;
    const std::int64_t bottom = d % 2 == 0 ? 3LL * d : 3LL * d + 1;
    for (std::int64_t k = 0; top > static_cast<std::int64_t>(p) * (6 * k + 2); ++k) {
      if (exists_prime_power_in_open_interval(p, {bottom, 6 * k + 4}, {top, 6 * k + 2})) {
        return make(Status::Fails, "wlp:uniform-n3");
      }
    }
    return make(Status::Holds, "wlp:uniform-n3");
  }

  if (n == 4) {
    // d = k q + r, q = p^e, 1 <= k <= (p-1)/2, r in {(q-1)/2, (q+1)/2}.
    for (std::int64_t q = 1; q <= d; q *= p) {
      if (q % 2 == 0) continue;  // r would not be an integer
      for (std::int64_t k = 1; 2 * k <= p - 1; ++k) {
        const std::int64_t r = d - k * q;
        if (r == (q - 1) / 2 || r == (q + 1) / 2) return make(Status::Holds, "wlp:uniform-n4");
      }
    }
    return make(Status::Fails, "wlp:uniform-n4");
  }

  const std::int64_t bound = static_cast<std::int64_t>(n) * (d - 1) + 1;
  return make(2LL * p > bound ? Status::Holds : Status::Fails, "wlp:uniform-n5plus");
}

WlpRuleEngine::WlpRuleEngine(int p) : p_(p) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(p));
}

Verdict WlpRuleEngine::classify(std::vector<int> degrees) const {
  std::erase(degrees, 1);
  for (int d : degrees) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "degrees must be positive");
  }
  if (degrees.empty()) throw Error(ErrorCode::EmptyAlgebra, "all degrees were 1");
  std::sort(degrees.begin(), degrees.end(), std::greater<>());
  return classify_sorted(degrees);
}

Verdict WlpRuleEngine::classify_sorted(const std::vector<int>& descending) const {
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(descending); it != memo_.end()) return it->second;
  }
  Verdict v = uncached(descending);
  std::unique_lock lock(mutex_);
  return memo_.emplace(descending, std::move(v)).first->second;
}

Verdict WlpRuleEngine::uncached(const std::vector<int>& desc) const {
  const int n = static_cast<int>(desc.size());
  const std::int64_t p = p_;
  if (n <= 2) return make(Status::Holds, "wlp:two-variables");
  if (desc.front() == desc.back()) return classify_wlp_uniform(n, desc.front(), p_);

  const std::int64_t t = sum_minus_one(desc);
  const std::int64_t big = std::max<std::int64_t>(p, desc.front());
  if (2 * big > t + 1) return make(Status::Holds, "wlp:large-char-or-degree");

  // Multinomial shapes with the largest degree on top.
  {
    const std::int64_t top = desc.front();
    std::vector<std::int64_t> parts;
    for (int i = 1; i < n; ++i) parts.push_back(desc[static_cast<std::size_t>(i)] - 1);
    const std::int64_t others = std::accumulate(parts.begin(), parts.end(), std::int64_t{0});
    if (top == others) {
      if (multinomial_mod_p(top, parts, p_) != 0) return make(Status::Holds, "wlp:multinomial");
      return make(Status::Fails, "wlp:multinomial-divisible");
    }
    if (top + 1 == others && multinomial_mod_p(top + 1, parts, p_) != 0) {
      return make(Status::Holds, "wlp:multinomial-shifted");
    }
  }

  // Lower the two largest degrees by b * p^a while the others stay <= p^a.
  {
    const int rest_max = desc[2];
    const std::int64_t rest_sum = t - (desc[0] - 1) - (desc[1] - 1);
    for (std::int64_t q = p; desc[1] - q >= 2; q *= p) {
      if (rest_max > q) continue;
      for (std::int64_t b = (desc[1] - 2) / q; b >= 1; --b) {
        std::vector<int> reduced(desc);
        reduced[0] -= static_cast<int>(b * q);
        reduced[1] -= static_cast<int>(b * q);
        const bool iff = reduced[0] + reduced[1] >= rest_sum;
        std::sort(reduced.begin(), reduced.end(), std::greater<>());
        const Verdict inner = classify_sorted(reduced);
        if (inner.status == Status::Fails) return make(Status::Fails, "wlp:shift-reduction>" + inner.rule);
        if (inner.status == Status::Holds && iff) {
          return make(Status::Holds, "wlp:shift-reduction>" + inner.rule);
        }
      }
    }
  }

  // A factor x^2 on top of an algebra with odd socle degree and the WLP.
  if (desc.back() == 2) {
    std::vector<int> smaller(desc.begin(), desc.end() - 1);
    if ((t - 1) % 2 == 1) {
      const Verdict inner = classify_sorted(smaller);
      if (inner.status == Status::Holds) return make(Status::Holds, "wlp:adjoin-square>" + inner.rule);
    }
  }

  return make(Status::Unknown, "none");
}

Verdict classify_wlp(const MonomialCI& ci, bool use_oracle_fallback, const OracleOptions& options) {
  const WlpRuleEngine engine(ci.characteristic());
  Verdict v = engine.classify(ci.degrees());
  if (v.status != Status::Unknown || !use_oracle_fallback) return v;
  const auto report = wlp_report(ci, options);
  v = make(report.holds ? Status::Holds : Status::Fails, "oracle");
  if (!report.holds) v.oracle_failure = OracleFailure{1, *report.first_failure};
  return v;
}

}  // namespace lefschetz
