#include "lefschetz/algebra.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "lefschetz/error.hpp"
#include "lefschetz/number_theory.hpp"

namespace lefschetz {

int ExponentVector::degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0);
}

std::string to_string(const ExponentVector& alpha) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i) out << ',';
    out << alpha[i];
  }
  out << ')';
  return out.str();
}

MonomialCI::MonomialCI(std::vector<int> degrees, int p) : degrees_(std::move(degrees)), p_(p) {
  for (int d : degrees_) socle_degree_ += d - 1;
}

MonomialCI MonomialCI::normalize(std::span<const int> raw_degrees, int p,
                                 NormalizationReport* report) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(p));
  if (p >= (1 << 16)) throw Error(ErrorCode::InvalidArgument, "characteristic must be below 65536");
  std::vector<int> degrees;
  int dropped = 0;
  for (int d : raw_degrees) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "degrees must be positive");
    if (d == 1) {
      ++dropped;
      continue;
    }
    degrees.push_back(d);
  }
  if (degrees.empty()) throw Error(ErrorCode::EmptyAlgebra, "no generator of degree >= 2");
  std::sort(degrees.begin(), degrees.end(), std::greater<>());
  if (report) report->dropped_linear = dropped;
  return MonomialCI(std::move(degrees), p);
}

ExponentVector MonomialCI::socle_monomial() const {
  ExponentVector alpha;
  alpha.exponents.reserve(degrees_.size());
  for (int d : degrees_) alpha.exponents.push_back(d - 1);
  return alpha;
}

bool MonomialCI::is_basis_element(const ExponentVector& alpha) const {
  if (alpha.size() != degrees_.size()) return false;
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (alpha[i] < 0 || alpha[i] >= degrees_[i]) return false;
  }
  return true;
}

std::string MonomialCI::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (i) out << ',';
    out << degrees_[i];
  }
  out << "; p=" << p_ << ')';
  return out.str();
}

int socle_degree(const MonomialCI& ci) { return ci.socle_degree(); }

std::int64_t HilbertFunction::peak() const {
  return values.empty() ? 0 : *std::max_element(values.begin(), values.end());
}

HilbertFunction hilbert_function(std::span<const int> degrees) {
  std::vector<std::int64_t> poly{1};
  for (int d : degrees) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "degrees must be positive");
    // Multiply by 1 + t + ... + t^(d-1) with a sliding window sum.
    std::vector<std::int64_t> next(poly.size() + static_cast<std::size_t>(d) - 1, 0);
    std::int64_t window = 0;
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (i < poly.size() && __builtin_add_overflow(window, poly[i], &window)) {
        throw Error(ErrorCode::HilbertOverflow, "Hilbert function value exceeds 64 bits");
      }
      if (i >= static_cast<std::size_t>(d) && i - static_cast<std::size_t>(d) < poly.size()) {
        window -= poly[i - static_cast<std::size_t>(d)];
      }
      next[i] = window;
    }
    poly = std::move(next);
  }
  HilbertFunction h;
  h.socle_degree = static_cast<int>(poly.size()) - 1;
  h.values = std::move(poly);
  return h;
}

HilbertFunction hilbert_function(const MonomialCI& ci) { return hilbert_function(ci.degrees()); }

bool hilbert_total_matches(const HilbertFunction& h, std::span<const int> degrees) {
  using boost::multiprecision::cpp_int;
  cpp_int total = 0;
  for (auto v : h.values) total += v;
  cpp_int product = 1;
  for (int d : degrees) product *= d;
  return total == product;
}

MonomialIndexer::MonomialIndexer(std::span<const int> degrees)
    : degrees_(degrees.begin(), degrees.end()) {
  for (int d : degrees_) socle_degree_ += d - 1;
  const auto width = static_cast<std::size_t>(socle_degree_) + 1;
  prefix_count_.assign(degrees_.size() + 1, std::vector<std::int64_t>(width, 0));
  prefix_count_[0][0] = 1;
  for (std::size_t j = 0; j < degrees_.size(); ++j) {
    const auto& prev = prefix_count_[j];
    auto& cur = prefix_count_[j + 1];
    std::int64_t window = 0;
    for (std::size_t s = 0; s < width; ++s) {
      if (__builtin_add_overflow(window, prev[s], &window)) {
        throw Error(ErrorCode::HilbertOverflow, "basis count exceeds 64 bits");
      }
      if (s >= static_cast<std::size_t>(degrees_[j])) window -= prev[s - static_cast<std::size_t>(degrees_[j])];
      cur[s] = window;
    }
  }
}

std::int64_t MonomialIndexer::prefix_count(int vars, int sum) const {
  if (sum < 0 || sum > socle_degree_) return 0;
  return prefix_count_[static_cast<std::size_t>(vars)][static_cast<std::size_t>(sum)];
}

std::int64_t MonomialIndexer::count(int degree) const {
  return prefix_count(num_vars(), degree);
}

std::int64_t MonomialIndexer::rank(std::span<const int> exponents) const {
  if (exponents.size() != degrees_.size()) {
    throw Error(ErrorCode::NotABasisElement, "exponent vector has the wrong length");
  }
  int remaining = 0;
  for (std::size_t j = 0; j < degrees_.size(); ++j) {
    if (exponents[j] < 0 || exponents[j] >= degrees_[j]) {
      throw Error(ErrorCode::NotABasisElement, "exponent " + std::to_string(exponents[j]) +
                                                   " out of range for x" + std::to_string(j + 1));
    }
    remaining += exponents[j];
  }
  std::int64_t index = 0;
  for (int j = num_vars() - 1; j >= 0; --j) {
    const int a = exponents[static_cast<std::size_t>(j)];
    for (int v = 0; v < a; ++v) index += prefix_count(j, remaining - v);
    remaining -= a;
  }
  return index;
}

ExponentVector MonomialIndexer::unrank(int degree, std::int64_t index) const {
  if (degree < 0 || degree > socle_degree_) {
    throw Error(ErrorCode::DegreeOutOfRange, std::to_string(degree));
  }
  if (index < 0 || index >= count(degree)) {
    throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  }
  ExponentVector alpha;
  alpha.exponents.assign(degrees_.size(), 0);
  int remaining = degree;
  for (int j = num_vars() - 1; j >= 0; --j) {
    const int top = std::min(degrees_[static_cast<std::size_t>(j)] - 1, remaining);
    for (int v = 0; v <= top; ++v) {
      const std::int64_t c = prefix_count(j, remaining - v);
      if (index < c) {
        alpha.exponents[static_cast<std::size_t>(j)] = v;
        remaining -= v;
        break;
      }
      index -= c;
    }
  }
  return alpha;
}

void MonomialIndexer::for_each(int degree,
                               const std::function<void(std::span<const int>)>& visit) const {
  if (degree < 0 || degree > socle_degree_) return;
  std::vector<int> current(degrees_.size(), 0);
  // Fill variable j (counting down), the outermost loop being the last variable.
  std::function<void(int, int)> fill = [&](int j, int remaining) {
    if (j < 0) {
      if (remaining == 0) visit(current);
      return;
    }
    const int top = std::min(degrees_[static_cast<std::size_t>(j)] - 1, remaining);
    for (int v = 0; v <= top; ++v) {
      if (prefix_count(j, remaining - v) == 0) continue;
      current[static_cast<std::size_t>(j)] = v;
      fill(j - 1, remaining - v);
    }
    current[static_cast<std::size_t>(j)] = 0;
  };
  fill(num_vars() - 1, degree);
}

std::vector<ExponentVector> monomial_basis(const MonomialCI& ci, int degree) {
  if (degree < 0 || degree > ci.socle_degree()) {
    throw Error(ErrorCode::DegreeOutOfRange, std::to_string(degree));
  }
  MonomialIndexer indexer(ci);
  std::vector<ExponentVector> basis;
  basis.reserve(static_cast<std::size_t>(indexer.count(degree)));
  indexer.for_each(degree, [&](std::span<const int> e) {
    basis.push_back(ExponentVector{std::vector<int>(e.begin(), e.end())});
  });
  return basis;
}

std::int64_t basis_index(const MonomialCI& ci, const ExponentVector& alpha) {
  if (!ci.is_basis_element(alpha)) {
    throw Error(ErrorCode::NotABasisElement, to_string(alpha));
  }
  return MonomialIndexer(ci).rank(alpha);
}

}  // namespace lefschetz
