#pragma once

#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "lefschetz/algebra.hpp"
#include "lefschetz/rank_oracle.hpp"

namespace lefschetz {

// Closed-form decisions for the strong and weak Lefschetz properties.
//
// Rule identifiers reported in a Verdict:
//
//   slp:one-variable          one variable always has the SLP
//   slp:socle-below-char      t < p
//   slp:dominant-degree       d_1 > p >= d_i (i >= 2), sum_{i>=2}(d_i-1) <= min(r_1, p-r_1)
//   slp:char-two              p = 2 (n >= 3)
//   slp:dominant-excess       d_1 > p >= d_2, sum_{i>=2}(d_i-1) > r_1
//   slp:dominant-overflow     d_1 > p >= d_2, r_1 + sum_{i>=2}(d_i-1) > p
//   slp:socle-reaches-char    d_1 <= p <= t
//   slp:two-large-degrees     d_2 > p
//   wlp:two-variables         n <= 2
//   wlp:uniform-n3, wlp:uniform-n4, wlp:uniform-n5plus
//   wlp:large-char-or-degree  max(p, d_i) > (t+1)/2
//   wlp:multinomial           d_max = sum of the others' (d_i-1), multinomial nonzero mod p
//   wlp:multinomial-divisible the same shape with the multinomial divisible by p (fails)
//   wlp:multinomial-shifted   d_max + 1 = sum of the others' (d_i-1), multinomial nonzero
//   wlp:shift-reduction>R     the two largest degrees lowered by b*p^a; R decided the result
//   wlp:adjoin-square>R       a factor x^2 on top of an odd-socle algebra decided by R
//   oracle                    exact rank computation
//   none                      no rule applies (status Unknown)

enum class Status { Holds, Fails, Unknown };

std::string to_string(Status status);

/// Index set and power such that l^power * witness = 0 for every linear l
/// while the witness sits low enough to break injectivity.
struct Certificate {
  std::vector<int> lambda;  // 1-based positions in the descending degree tuple
  int m = 0;
  ExponentVector witness;
  int power = 0;  // m * p

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Failing power and degree found by the oracle.
struct OracleFailure {
  int power = 0;
  int degree = 0;

  friend bool operator==(const OracleFailure&, const OracleFailure&) = default;
};

struct Verdict {
  Status status = Status::Unknown;
  std::string rule = "none";
  std::optional<Certificate> certificate;
  std::optional<OracleFailure> oracle_failure;
};

// ---- SLP ----------------------------------------------------------------

/// n = 1 holds; n >= 3 is the complete classification. n = 2 is Unknown
/// unless the oracle fallback is requested, in which case the answer is
/// about s = x_1 + x_2 only.
Verdict classify_slp(const MonomialCI& ci, bool use_oracle_fallback = false,
                     const OracleOptions& options = {});

/// Both sides of the zero-divisor inequality, for the given index set.
struct ZeroDivisorPower {
  int m = 0;
  ExponentVector witness;
  bool trivial = false;  // the witness is itself zero in A
};

/// m = sum N_i - |lambda| + 1 and witness prod_{i in lambda} x_i^{r_i}.
/// lambda holds 1-based positions. Throws InvalidLambda for a repeated or
/// out-of-range position. A position with N_i = 0 puts x_i^{d_i} into the
/// witness, which is then zero in A and the result is flagged trivial.
ZeroDivisorPower zero_divisor_power(const MonomialCI& ci, const std::vector<int>& lambda);

/// First qualifying index set, ordered by decreasing size (so increasing m)
/// and then lexicographically.
std::optional<Certificate> slp_failure_certificate(const MonomialCI& ci);

// ---- WLP ----------------------------------------------------------------

/// Uniform degrees d in n variables.
Verdict classify_wlp_uniform(int n, int d, int p);

/// Fixed precedence: two variables, uniform table, large characteristic or
/// degree, multinomial forms, shift reduction, adjoined square, then the
/// oracle if requested. Without the fallback an undecided tuple is Unknown.
Verdict classify_wlp(const MonomialCI& ci, bool use_oracle_fallback = false,
                     const OracleOptions& options = {});

/// Rule engine with a memo shared across calls and threads. classify_wlp
/// uses a private instance per call.
class WlpRuleEngine {
 public:
  explicit WlpRuleEngine(int p);

  int prime() const noexcept { return p_; }

  /// Rules only; degrees in any order, entries equal to 1 are dropped.
  Verdict classify(std::vector<int> degrees) const;

 private:
  Verdict classify_sorted(const std::vector<int>& descending) const;
  Verdict uncached(const std::vector<int>& descending) const;

  int p_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::vector<int>, Verdict> memo_;
};

}  // namespace lefschetz
