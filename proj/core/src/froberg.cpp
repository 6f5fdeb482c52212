#include "lefschetz/froberg.hpp"

#include <numeric>
#include <string>

#include "lefschetz/error.hpp"

namespace lefschetz {

namespace {

void check_degrees(std::span<const int> form_degrees) {
  for (int d : form_degrees) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "form degrees must be positive");
  }
}

// Multiplies in place by (1 - t^d), keeping the length.
void times_one_minus(std::vector<std::int64_t>& series, int d) {
  for (std::size_t i = series.size(); i-- > static_cast<std::size_t>(d);) {
    series[i] -= series[i - static_cast<std::size_t>(d)];
  }
}

}  // namespace

TruncatedSeries truncate(std::span<const std::int64_t> series) {
  TruncatedSeries out;
  for (auto c : series) {
    if (c <= 0) {
      out.cut_value = c;
      break;
    }
    out.coefficients.push_back(c);
  }
  return out;
}

std::vector<std::int64_t> polynomial_ring_series(int nvars, int through) {
  if (nvars < 0 || through < 0) throw Error(ErrorCode::InvalidArgument, "negative size");
  std::vector<std::int64_t> series(static_cast<std::size_t>(through) + 1, 0);
  series[0] = 1;
  // Dividing by (1 - t) is a prefix sum.
  for (int v = 0; v < nvars; ++v) std::partial_sum(series.begin(), series.end(), series.begin());
  return series;
}

TruncatedSeries truncate_product(std::span<const std::int64_t> base, std::span<const int> form_degrees) {
  check_degrees(form_degrees);
  std::vector<std::int64_t> series(base.begin(), base.end());
  for (int d : form_degrees) times_one_minus(series, d);
  return truncate(series);
}

TruncatedSeries froberg_series(int nvars, std::span<const int> form_degrees) {
  if (nvars < 1) throw Error(ErrorCode::InvalidArgument, "need at least one variable");
  check_degrees(form_degrees);
  if (static_cast<int>(form_degrees.size()) < nvars) {
    throw Error(ErrorCode::InvalidArgument, "fewer forms than variables: the series never ends");
  }
  // The numerator has degree sum(d); beyond it the quotient is a polynomial
  // with nonpositive tail, so one more term reaches the cut.
  const int through = std::accumulate(form_degrees.begin(), form_degrees.end(), 0) + 1;
  auto series = polynomial_ring_series(nvars, through);
  for (int d : form_degrees) times_one_minus(series, d);
  return truncate(series);
}

FrobergCheck check_froberg_n_plus_1(const MonomialCI& ci, int extra_degree, const OracleOptions& options) {
  if (extra_degree < 1) throw Error(ErrorCode::InvalidArgument, "extra degree must be positive");
  FrobergCheck check;
  check.computed = truncate(quotient_series(ci, extra_degree, options));
  std::vector<int> forms(ci.degrees());
  forms.push_back(extra_degree);
  check.conjectured = froberg_series(ci.num_vars(), forms);
  check.equal = check.computed == check.conjectured;
  return check;
}

}  // namespace lefschetz
