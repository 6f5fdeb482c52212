#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lefschetz/algebra.hpp"
#include "lefschetz/rank_oracle.hpp"

namespace lefschetz {

/// A Hilbert series cut at its first coefficient <= 0. All stored
/// coefficients are positive. cut_value is the coefficient that stopped the
/// series (0 or negative), or nothing if the input ran out first.
struct TruncatedSeries {
  std::vector<std::int64_t> coefficients;
  std::optional<std::int64_t> cut_value;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.coefficients == b.coefficients;
  }
};

/// Cuts a coefficient list at the first entry <= 0.
TruncatedSeries truncate(std::span<const std::int64_t> series);

/// Series of a polynomial ring in nvars variables, 1/(1-t)^nvars, up to
/// and including degree `through`.
std::vector<std::int64_t> polynomial_ring_series(int nvars, int through);

/// [base * prod (1 - t^d)]. The base is given as a finite prefix that is
/// taken to be exact; the product is only formed up to its length.
TruncatedSeries truncate_product(std::span<const std::int64_t> base, std::span<const int> form_degrees);

/// [prod (1 - t^d_i) / (1 - t)^nvars]. Exact, computed far enough that the
/// first non-positive coefficient is always reached. Needs at least nvars
/// forms; with fewer the series never turns non-positive.
TruncatedSeries froberg_series(int nvars, std::span<const int> form_degrees);

struct FrobergCheck {
  bool equal = false;
  TruncatedSeries computed;     // A/(s^e) for A = k[x]/(x_i^d_i)
  TruncatedSeries conjectured;  // n + 1 forms of degrees d_1..d_n, e
};

/// Compares the Hilbert series of A/(s^e) with the conjectured series for
/// n + 1 forms. They agree exactly when A[y]/(y^e) has the WLP.
FrobergCheck check_froberg_n_plus_1(const MonomialCI& ci, int extra_degree,
                                    const OracleOptions& options = {});

}  // namespace lefschetz
