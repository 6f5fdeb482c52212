#include "lefschetz/number_theory.hpp"

#include <limits>
#include <numeric>
#include <string>

#include "lefschetz/error.hpp"

namespace lefschetz {

namespace {

void check_parts(std::int64_t top, std::span<const std::int64_t> parts) {
  std::int64_t sum = 0;
  for (auto part : parts) {
    if (part < 0) throw Error(ErrorCode::PartsMismatch, "negative part");
    sum += part;
  }
  if (top < 0 || sum != top) {
    throw Error(ErrorCode::PartsMismatch,
                "parts sum to " + std::to_string(sum) + ", expected " + std::to_string(top));
  }
}

void check_small_prime(std::int64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(p));
  if (p >= (1 << 16)) {
    throw Error(ErrorCode::InvalidArgument, "characteristic must be below 65536");
  }
}

__extension__ using Wide = __int128;

// a * b <=> c * d for non-negative a, c and positive b, d.
int compare_fractions(Wide a, Wide b, Wide c, Wide d) {
  const Wide lhs = a * d;
  const Wide rhs = c * b;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::int64_t f = 5; f * f <= n; f += 6) {
    if (n % f == 0 || n % (f + 2) == 0) return false;
  }
  return true;
}

PAdicSplit split_mod_p(std::int64_t d, std::int64_t p) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "split_mod_p needs d >= 1");
  if (p < 2) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(p));
  const std::int64_t q = (d - 1) / p;
  return {q, d - q * p};
}

std::vector<int> base_p_digits(std::int64_t value, int p) {
  std::vector<int> digits;
  while (value > 0) {
    digits.push_back(static_cast<int>(value % p));
    value /= p;
  }
  return digits;
}

MultinomialModP::MultinomialModP(int p) : p_(p) {
  check_small_prime(p);
  const auto n = static_cast<std::size_t>(p);
  factorial_.assign(n, 1);
  inverse_.assign(n, 0);
  inverse_factorial_.assign(n, 1);
  for (std::size_t i = 1; i < n; ++i) {
    factorial_[i] = static_cast<int>(factorial_[i - 1] * static_cast<std::int64_t>(i) % p);
  }
  if (n > 1) inverse_[1] = 1;
  for (std::size_t i = 2; i < n; ++i) {
    // inv(i) = -(p / i) * inv(p mod i)
    const std::int64_t q = p / static_cast<std::int64_t>(i);
    inverse_[i] = static_cast<int>((p - q) * inverse_[static_cast<std::size_t>(p) % i] % p);
  }
  for (std::size_t i = 1; i < n; ++i) {
    inverse_factorial_[i] = static_cast<int>(
        static_cast<std::int64_t>(inverse_factorial_[i - 1]) * inverse_[i] % p);
  }
}

int MultinomialModP::digit_multinomial(int top_digit, std::span<const int> part_digits) const {
  std::int64_t value = factorial_[static_cast<std::size_t>(top_digit)];
  for (int digit : part_digits) {
    value = value * inverse_factorial_[static_cast<std::size_t>(digit)] % p_;
  }
  return static_cast<int>(value);
}

int MultinomialModP::operator()(std::int64_t top, std::span<const std::int64_t> parts) const {
  check_parts(top, parts);
  std::vector<std::int64_t> rest(parts.begin(), parts.end());
  std::vector<int> digits(parts.size());
  std::int64_t remaining_top = top;
  std::int64_t result = 1;
  while (remaining_top > 0) {
    const int top_digit = static_cast<int>(remaining_top % p_);
    int digit_sum = 0;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      digits[i] = static_cast<int>(rest[i] % p_);
      rest[i] /= p_;
      digit_sum += digits[i];
    }
    // Any carry shows up as a digit mismatch somewhere, and forces p | coefficient.
    if (digit_sum != top_digit) return 0;
    result = result * digit_multinomial(top_digit, digits) % p_;
    remaining_top /= p_;
  }
  return static_cast<int>(result);
}

int MultinomialModP::binomial(std::int64_t n, std::int64_t k) const {
  if (k < 0 || n < 0 || k > n) return 0;
  std::int64_t result = 1;
  while (n > 0 || k > 0) {
    const int nd = static_cast<int>(n % p_);
    const int kd = static_cast<int>(k % p_);
    if (kd > nd) return 0;
    result = result * factorial_[static_cast<std::size_t>(nd)] % p_ *
             inverse_factorial_[static_cast<std::size_t>(kd)] % p_ *
             inverse_factorial_[static_cast<std::size_t>(nd - kd)] % p_;
    n /= p_;
    k /= p_;
  }
  return static_cast<int>(result);
}

int multinomial_mod_p(std::int64_t top, std::span<const std::int64_t> parts, int p) {
  return MultinomialModP(p)(top, parts);
}

int multinomial_carries(std::int64_t top, std::span<const std::int64_t> parts, int p) {
  check_parts(top, parts);
  if (!is_prime(p)) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(p));
  std::vector<int> acc;  // running sum, base-p digits
  int carries = 0;
  for (auto part : parts) {
    const auto digits = base_p_digits(part, p);
    if (acc.size() < digits.size()) acc.resize(digits.size(), 0);
    int carry = 0;
    for (std::size_t k = 0; k < acc.size(); ++k) {
      const int sum = acc[k] + (k < digits.size() ? digits[k] : 0) + carry;
      carry = sum >= p ? 1 : 0;
      acc[k] = sum - carry * p;
      carries += carry;
    }
    if (carry) acc.push_back(carry);
  }
  return carries;
}

bool multinomial_divisible_by_p(std::int64_t top, std::span<const std::int64_t> parts, int p) {
  return multinomial_carries(top, parts, p) > 0;
}

std::optional<int> exists_prime_power_in_open_interval(std::int64_t p, Rational lo, Rational hi) {
  if (p < 2) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(p));
  if (lo.den <= 0 || hi.den <= 0) throw Error(ErrorCode::InvalidArgument, "denominator must be positive");
  if (hi.num <= 0) throw Error(ErrorCode::InvalidArgument, "upper bound must be positive");
  Wide power = p;
  for (int e = 1;; ++e) {
    // Stop once p^e >= hi. The first test keeps the products within 128 bits.
    if (power > hi.num) return std::nullopt;
    if (compare_fractions(power, 1, hi.num, hi.den) >= 0) return std::nullopt;
    if (lo.num < 0 || compare_fractions(power, 1, lo.num, lo.den) > 0) return e;
    power *= p;
  }
}

}  // namespace lefschetz
