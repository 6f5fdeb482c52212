#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lefschetz {

bool is_prime(std::int64_t n);

/// d = quotient * p + remainder with 0 < remainder <= p.
///
/// Note the remainder is p, never 0, when p divides d. The SLP rules compare
/// min(r, p - r), so the ordinary `d % p` must not be substituted here.
struct PAdicSplit {
  std::int64_t quotient = 0;
  std::int64_t remainder = 0;

  friend bool operator==(const PAdicSplit&, const PAdicSplit&) = default;
};

PAdicSplit split_mod_p(std::int64_t d, std::int64_t p);

/// Base-p digits, least significant first. Zero has no digits.
std::vector<int> base_p_digits(std::int64_t value, int p);

/// Multinomial coefficients reduced mod a small prime by the digit-wise
/// (generalised Lucas) rule. Holds factorial tables for one prime, so it is
/// cheap to query in inner loops.
class MultinomialModP {
 public:
  explicit MultinomialModP(int p);

  int prime() const noexcept { return p_; }

  /// top! / prod(parts!) mod p. Throws PartsMismatch unless sum(parts) == top.
  int operator()(std::int64_t top, std::span<const std::int64_t> parts) const;

  /// binom(n, k) mod p, zero when k is outside [0, n].
  int binomial(std::int64_t n, std::int64_t k) const;

  int inverse(int residue) const { return inverse_[static_cast<std::size_t>(residue)]; }

 private:
  int digit_multinomial(int top_digit, std::span<const int> part_digits) const;

  int p_;
  std::vector<int> factorial_;
  std::vector<int> inverse_factorial_;
  std::vector<int> inverse_;
};

int multinomial_mod_p(std::int64_t top, std::span<const std::int64_t> parts, int p);

/// Number of carries when the parts are added one after another in base p.
/// By Kummer's theorem this is the p-adic valuation of the multinomial.
int multinomial_carries(std::int64_t top, std::span<const std::int64_t> parts, int p);

/// Kummer carry counting; an independent route to multinomial_mod_p == 0.
bool multinomial_divisible_by_p(std::int64_t top, std::span<const std::int64_t> parts, int p);

/// Exact rational num/den with den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// The least e >= 1 with lo < p^e < hi (strict), or nothing. Comparisons are
/// done by 128-bit cross multiplication.
std::optional<int> exists_prime_power_in_open_interval(std::int64_t p, Rational lo, Rational hi);

}  // namespace lefschetz
