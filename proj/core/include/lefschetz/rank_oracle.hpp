#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lefschetz/algebra.hpp"
#include "lefschetz/modular_linalg.hpp"

namespace lefschetz {

// Ground truth by exact linear algebra. Everything here multiplies by powers
// of s = x_1 + ... + x_n in the monomial basis and computes ranks over F_p.
// For monomial ideals this decides the weak property over every field of
// characteristic p, since s is a weak Lefschetz element whenever one exists.

struct OracleOptions {
  // Refuse to build a matrix side with more basis elements than this.
  std::int64_t dimension_cap = 500'000;
  // Check injectivity only at the top degree floor((t - m) / 2). Injectivity
  // of x -> s^m x propagates downward by duality, so this gives the same
  // verdict; the report then carries a single check.
  bool top_degree_only = false;
  RankOptions rank;
};

struct DegreeCheck {
  int degree = 0;                 // source degree i
  std::int64_t source_dim = 0;    // H(i)
  std::int64_t target_dim = 0;    // H(i + m)
  std::int64_t rank = 0;
  std::int64_t required = 0;      // min(H(i), H(i + m))

  bool ok() const noexcept { return rank == required; }
  friend bool operator==(const DegreeCheck&, const DegreeCheck&) = default;
};

struct RankReport {
  int power = 1;
  std::vector<DegreeCheck> checks;
  std::optional<int> first_failure;
  bool holds = true;
};

/// Matrix of f -> s^m f from A_i to A_{i+m}: columns follow the basis of
/// degree i, rows the basis of degree i+m. m = 0 gives the identity.
SparseMatrixModP multiplication_matrix(const MonomialCI& ci, int m, int degree,
                                       const OracleOptions& options = {});

/// Does multiplication by s^m have maximal rank in every degree? Decided by
/// injectivity for i <= (t - m) / 2. Holds trivially when m > t.
RankReport has_maximal_rank_power(const MonomialCI& ci, int m, const OracleOptions& options = {});

/// The same question answered without the injectivity reduction: every
/// degree 0..t-m is checked against min(H(i), H(i+m)).
RankReport has_maximal_rank_all_degrees(const MonomialCI& ci, int m,
                                        const OracleOptions& options = {});

bool verify_wlp(const MonomialCI& ci, const OracleOptions& options = {});
RankReport wlp_report(const MonomialCI& ci, const OracleOptions& options = {});

struct SlpResult {
  bool holds = true;
  std::optional<int> failing_power;
  // s is only known to be a universal candidate for three or more variables,
  // so for n <= 2 the answer is about s itself.
  bool candidate_specific = false;
  std::vector<RankReport> reports;  // filled when full_report is requested
};

/// Scans m = 1..t in increasing order and stops at the first failure unless
/// full_report is set.
SlpResult verify_slp(const MonomialCI& ci, bool full_report = false,
                     const OracleOptions& options = {});

/// Hilbert function of A/(s^e), trailing zeros trimmed.
std::vector<std::int64_t> quotient_series(const MonomialCI& ci, int e,
                                          const OracleOptions& options = {});

/// Is (c_1 x_1 + ... + c_n x_n)^m * x^alpha zero in A? Coefficients must be
/// nonzero mod p; throws NotABasisElement for an invalid alpha.
bool witness_is_zero(const MonomialCI& ci, std::span<const std::int64_t> coeffs, int m,
                     const ExponentVector& alpha);

}  // namespace lefschetz
