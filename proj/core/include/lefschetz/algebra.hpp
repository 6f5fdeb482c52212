#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace lefschetz {

/// Exponents of a monomial x_1^a_1 ... x_n^a_n. Indexed like the degrees of
/// the algebra it lives in.
struct ExponentVector {
  std::vector<int> exponents;

  int degree() const;
  std::size_t size() const noexcept { return exponents.size(); }
  int operator[](std::size_t i) const { return exponents[i]; }

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
};

std::string to_string(const ExponentVector& alpha);

/// Record of what normalisation removed from the raw input.
struct NormalizationReport {
  int dropped_linear = 0;  // generators x^1, each of which kills its variable
};

/// k[x_1..x_n]/(x_1^d_1, ..., x_n^d_n) over a field of characteristic p.
///
/// Degrees are kept sorted descending with every d_i >= 2, so d_1 is the
/// largest. Instances are immutable.
class MonomialCI {
 public:
  /// Drops 1's, sorts descending, validates p. Throws EmptyAlgebra or
  /// NonPrimeCharacteristic.
  static MonomialCI normalize(std::span<const int> raw_degrees, int p,
                              NormalizationReport* report = nullptr);
  static MonomialCI normalize(std::initializer_list<int> raw_degrees, int p) {
    return normalize(std::span<const int>(raw_degrees.begin(), raw_degrees.size()), p);
  }

  const std::vector<int>& degrees() const noexcept { return degrees_; }
  int degree(std::size_t i) const { return degrees_[i]; }
  int characteristic() const noexcept { return p_; }
  int num_vars() const noexcept { return static_cast<int>(degrees_.size()); }

  /// t = sum(d_i - 1), the top nonzero degree.
  int socle_degree() const noexcept { return socle_degree_; }

  ExponentVector socle_monomial() const;
  bool is_basis_element(const ExponentVector& alpha) const;

  std::string to_string() const;

  friend bool operator==(const MonomialCI&, const MonomialCI&) = default;

 private:
  MonomialCI(std::vector<int> degrees, int p);

  std::vector<int> degrees_;
  int p_ = 2;
  int socle_degree_ = 0;
};

int socle_degree(const MonomialCI& ci);

struct HilbertFunction {
  std::vector<std::int64_t> values;  // H(0) .. H(t)
  int socle_degree = 0;

  std::int64_t operator[](int i) const {
    return i < 0 || i > socle_degree ? 0 : values[static_cast<std::size_t>(i)];
  }
  std::int64_t peak() const;

  friend bool operator==(const HilbertFunction&, const HilbertFunction&) = default;
};

/// Coefficients of prod_i (1 + t + ... + t^(d_i - 1)). Throws HilbertOverflow
/// if a single value does not fit in 64 bits.
HilbertFunction hilbert_function(std::span<const int> degrees);
HilbertFunction hilbert_function(const MonomialCI& ci);

/// sum_i H(i) == prod_i d_i, evaluated with arbitrary precision since the
/// product can exceed 64 bits even when every H(i) fits.
bool hilbert_total_matches(const HilbertFunction& h, std::span<const int> degrees);

/// Ranks and unranks monomials of the algebra within each degree.
///
/// Order inside a degree is graded reverse lexicographic, largest first:
/// compare the last exponent, smaller wins, then the one before it, and so
/// on. For (2,2,2) in degree 1 that gives x1, x2, x3.
class MonomialIndexer {
 public:
  explicit MonomialIndexer(std::span<const int> degrees);
  explicit MonomialIndexer(const MonomialCI& ci) : MonomialIndexer(ci.degrees()) {}

  int num_vars() const noexcept { return static_cast<int>(degrees_.size()); }
  int socle_degree() const noexcept { return socle_degree_; }

  std::int64_t count(int degree) const;

  std::int64_t rank(std::span<const int> exponents) const;
  std::int64_t rank(const ExponentVector& alpha) const { return rank(alpha.exponents); }

  ExponentVector unrank(int degree, std::int64_t index) const;

  /// Calls visit(exponents) for every monomial of the given degree, in order.
  /// The span is only valid during the call.
  void for_each(int degree, const std::function<void(std::span<const int>)>& visit) const;

 private:
  // prefix_count_[j][s]: monomials in the first j variables of total degree s.
  std::int64_t prefix_count(int vars, int sum) const;

  std::vector<int> degrees_;
  int socle_degree_ = 0;
  std::vector<std::vector<std::int64_t>> prefix_count_;
};

/// Checks 0 <= degree <= t and returns the basis in the documented order.
std::vector<ExponentVector> monomial_basis(const MonomialCI& ci, int degree);

/// Position of alpha in monomial_basis(ci, deg alpha). Throws NotABasisElement.
std::int64_t basis_index(const MonomialCI& ci, const ExponentVector& alpha);

}  // namespace lefschetz
