#include "lefschetz/rank_oracle.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "lefschetz/error.hpp"
#include "lefschetz/number_theory.hpp"

namespace lefschetz {

namespace {

// Visits every beta with |beta| = m and beta_j <= caps[j] whose multinomial
// coefficient m!/prod(beta_j!) is nonzero mod p. The coefficient is built as
// binom(m, beta_n) * binom(m - beta_n, beta_{n-1}) * ... so zero branches are
// pruned as soon as a Lucas factor vanishes.
// Returns false if the visitor asked to stop.
bool for_each_expansion_term(std::span<const int> caps, int m, const MultinomialModP& mm,
                             const std::function<bool(std::span<const int>, int)>& visit) {
  const int n = static_cast<int>(caps.size());
  std::vector<int> reach(static_cast<std::size_t>(n) + 1, 0);  // sum of caps[0..j)
  for (std::size_t j = 0; j < caps.size(); ++j) reach[j + 1] = reach[j] + caps[j];
  if (m > reach[static_cast<std::size_t>(n)]) return true;
  std::vector<int> beta(static_cast<std::size_t>(n), 0);
  const int p = mm.prime();
  std::function<bool(int, int, int)> fill = [&](int j, int remaining, int coef) -> bool {
    if (j == 0) {
      beta[0] = remaining;
      return visit(beta, coef);
    }
    const auto uj = static_cast<std::size_t>(j);
    const int lo = std::max(0, remaining - reach[uj]);
    const int hi = std::min(caps[uj], remaining);
    for (int v = lo; v <= hi; ++v) {
      const int b = mm.binomial(remaining, v);
      if (b == 0) continue;
      beta[uj] = v;
      if (!fill(j - 1, remaining - v, static_cast<int>(static_cast<std::int64_t>(coef) * b % p))) {
        return false;
      }
    }
    beta[uj] = 0;
    return true;
  };
  if (n == 0) return m == 0 ? visit(beta, 1) : true;
  // The lower bound on each v keeps what is left within reach of the
  // remaining caps, so variable 0 always fits.
  return fill(n - 1, m, 1);
}

void check_cap(std::int64_t dim, const OracleOptions& options, int degree) {
  if (dim > options.dimension_cap) {
    throw Error(ErrorCode::DimensionCap, "degree " + std::to_string(degree) + " has " +
                                             std::to_string(dim) + " basis elements (cap " +
                                             std::to_string(options.dimension_cap) + ")");
  }
}

SparseMatrixModP build_matrix(const MonomialCI& ci, const MonomialIndexer& indexer,
                              const MultinomialModP& mm, int m, int degree,
                              const OracleOptions& options) {
  const int t = ci.socle_degree();
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "negative power");
  if (degree < 0 || degree + m > t) {
    throw Error(ErrorCode::DegreeOutOfRange,
                "source degree " + std::to_string(degree) + " with power " + std::to_string(m) +
                    " leaves 0.." + std::to_string(t));
  }
  const std::int64_t cols = indexer.count(degree);
  const std::int64_t rows = indexer.count(degree + m);
  check_cap(cols, options, degree);
  check_cap(rows, options, degree + m);

  const auto& degrees = ci.degrees();
  const std::size_t n = degrees.size();
  std::vector<std::vector<MatrixEntry>> columns;
  columns.reserve(static_cast<std::size_t>(cols));
  std::vector<int> caps(n), target(n);
  indexer.for_each(degree, [&](std::span<const int> alpha) {
    for (std::size_t j = 0; j < n; ++j) caps[j] = degrees[j] - 1 - alpha[j];
    std::vector<MatrixEntry> column;
    for_each_expansion_term(caps, m, mm, [&](std::span<const int> beta, int coef) {
      for (std::size_t j = 0; j < n; ++j) target[j] = alpha[j] + beta[j];
      column.push_back({static_cast<std::uint32_t>(indexer.rank(target)),
                        static_cast<Residue>(coef)});
      return true;
    });
    std::sort(column.begin(), column.end(),
              [](const MatrixEntry& a, const MatrixEntry& b) { return a.row < b.row; });
    columns.push_back(std::move(column));
  });
  return SparseMatrixModP::from_columns(static_cast<std::size_t>(rows), ci.characteristic(),
                                        std::move(columns));
}

RankReport run_checks(const MonomialCI& ci, int m, int first, int last, bool injectivity,
                      const OracleOptions& options) {
  RankReport report;
  report.power = m;
  if (first > last) return report;
  const MonomialIndexer indexer(ci);
  const MultinomialModP mm(ci.characteristic());
  for (int i = first; i <= last; ++i) {
    const auto matrix = build_matrix(ci, indexer, mm, m, i, options);
    DegreeCheck check;
    check.degree = i;
    check.source_dim = indexer.count(i);
    check.target_dim = indexer.count(i + m);
    check.rank = static_cast<std::int64_t>(rank_mod_p(matrix, options.rank));
    check.required = injectivity ? check.source_dim : std::min(check.source_dim, check.target_dim);
    if (!check.ok() && !report.first_failure) report.first_failure = i;
    report.checks.push_back(check);
  }
  report.holds = !report.first_failure.has_value();
  return report;
}

}  // namespace

SparseMatrixModP multiplication_matrix(const MonomialCI& ci, int m, int degree,
                                       const OracleOptions& options) {
  const MonomialIndexer indexer(ci);
  const MultinomialModP mm(ci.characteristic());
  return build_matrix(ci, indexer, mm, m, degree, options);
}

RankReport has_maximal_rank_power(const MonomialCI& ci, int m, const OracleOptions& options) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "power must be at least 1");
  const int t = ci.socle_degree();
  if (m > t) {
    RankReport report;
    report.power = m;
    return report;
  }
  const int last = (t - m) / 2;
  return run_checks(ci, m, options.top_degree_only ? last : 0, last, true, options);
}

RankReport has_maximal_rank_all_degrees(const MonomialCI& ci, int m,
                                        const OracleOptions& options) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "power must be at least 1");
  return run_checks(ci, m, 0, ci.socle_degree() - m, false, options);
}

RankReport wlp_report(const MonomialCI& ci, const OracleOptions& options) {
  return has_maximal_rank_power(ci, 1, options);
}

bool verify_wlp(const MonomialCI& ci, const OracleOptions& options) {
  return wlp_report(ci, options).holds;
}

SlpResult verify_slp(const MonomialCI& ci, bool full_report, const OracleOptions& options) {
  SlpResult result;
  result.candidate_specific = ci.num_vars() <= 2;
  for (int m = 1; m <= ci.socle_degree(); ++m) {
    auto report = has_maximal_rank_power(ci, m, options);
    const bool ok = report.holds;
    if (full_report) result.reports.push_back(std::move(report));
    if (!ok && !result.failing_power) {
      result.holds = false;
      result.failing_power = m;
      if (!full_report) break;
    }
  }
  return result;
}

std::vector<std::int64_t> quotient_series(const MonomialCI& ci, int e,
                                          const OracleOptions& options) {
  if (e < 1) throw Error(ErrorCode::InvalidArgument, "power must be at least 1");
  const auto h = hilbert_function(ci);
  const MonomialIndexer indexer(ci);
  const MultinomialModP mm(ci.characteristic());
  std::vector<std::int64_t> series(h.values);
  for (int i = e; i <= h.socle_degree; ++i) {
    const auto matrix = build_matrix(ci, indexer, mm, e, i - e, options);
    series[static_cast<std::size_t>(i)] -= static_cast<std::int64_t>(rank_mod_p(matrix, options.rank));
  }
  while (!series.empty() && series.back() == 0) series.pop_back();
  return series;
}

bool witness_is_zero(const MonomialCI& ci, std::span<const std::int64_t> coeffs, int m,
                     const ExponentVector& alpha) {
  if (!ci.is_basis_element(alpha)) throw Error(ErrorCode::NotABasisElement, to_string(alpha));
  const auto n = static_cast<std::size_t>(ci.num_vars());
  if (coeffs.size() != n) throw Error(ErrorCode::DimensionMismatch, "one coefficient per variable");
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "negative power");
  const PrimeField field(ci.characteristic());
  std::vector<Residue> c(n);
  for (std::size_t j = 0; j < n; ++j) {
    c[j] = field.reduce(coeffs[j]);
    if (c[j] == 0) throw Error(ErrorCode::InvalidArgument, "linear form coefficients must be nonzero mod p");
  }
  std::vector<int> caps(n);
  for (std::size_t j = 0; j < n; ++j) caps[j] = ci.degree(j) - 1 - alpha[j];
  const MultinomialModP mm(ci.characteristic());
  bool zero = true;
  for_each_expansion_term(caps, m, mm, [&](std::span<const int> beta, int coef) {
    Residue term = static_cast<Residue>(coef);
    for (std::size_t j = 0; j < n; ++j) {
      for (int k = 0; k < beta[j]; ++k) term = field.mul(term, c[j]);
    }
    if (term != 0) {
      zero = false;
      return false;
    }
    return true;
  });
  return zero;
}

}  // namespace lefschetz
