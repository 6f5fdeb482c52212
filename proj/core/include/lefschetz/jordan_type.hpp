#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <utility>
#include <vector>

#include "lefschetz/algebra.hpp"

namespace lefschetz {

// Graded Jordan type of multiplication by s = x_1 + ... + x_n.
//
// As a graded module over k[s] the algebra splits into strings
// k[s]/(s^L) shifted to start in degree b. Once the strings are known, the
// rank of s^m : A_i -> A_{i+m} is the number of strings covering both i and
// i + m, so every maximal-rank question about s is answered by counting.
//
// The strings of A = A' (x) k[x]/(x^d) come from those of A' one string at a
// time: a string of length L tensored with k[x]/(x^d) is the two-variable
// algebra k[u,v]/(u^L, v^d) under u + v. Only those small two-variable
// tables need linear algebra; they are built once per (L, d, p) and cached.

struct StringBlock {
  int start = 0;
  int length = 0;
  std::int64_t count = 0;

  friend bool operator==(const StringBlock&, const StringBlock&) = default;
};

class StringDecomposition {
 public:
  StringDecomposition() = default;
  explicit StringDecomposition(int socle_degree);

  int socle_degree() const noexcept { return socle_degree_; }

  std::int64_t count(int start, int length) const;
  void add(int start, int length, std::int64_t count);

  /// Nonzero blocks ordered by (start, length).
  std::vector<StringBlock> blocks() const;

  std::int64_t num_strings() const;

  /// dim A_i, recovered as the number of strings through degree i.
  std::int64_t dimension(int degree) const;

  /// rank of s^m : A_i -> A_{i+m}.
  std::int64_t rank(int degree, int m) const;

  bool maximal_rank_power(int m) const;
  bool has_wlp() const;

  friend bool operator==(const StringDecomposition&, const StringDecomposition&) = default;

 private:
  std::size_t slot(int start, int length) const;

  int socle_degree_ = -1;
  std::vector<std::int64_t> counts_;  // (t + 1) x (t + 1), by start then length - 1
};

/// Builds and caches string decompositions in one characteristic. Safe to
/// share between threads.
class JordanEngine {
 public:
  explicit JordanEngine(int p);

  int prime() const noexcept { return p_; }

  /// Strings of k[u,v]/(u^a, v^b) under u + v.
  std::shared_ptr<const std::vector<StringBlock>> pair_table(int a, int b) const;

  StringDecomposition decompose(std::span<const int> degrees) const;
  StringDecomposition decompose(const MonomialCI& ci) const { return decompose(ci.degrees()); }

  /// Adjoins one variable x with x^d = 0.
  StringDecomposition extend(const StringDecomposition& base, int d) const;

  /// WLP of the algebra obtained by adjoining x^d to the given prefix. Only the
  /// number of strings is needed at the last step: each string of length L
  /// contributes min(L, d), the dimension of its cokernel.
  bool wlp_after_adjoining(const StringDecomposition& prefix, std::span<const int> prefix_degrees,
                           int d) const;

  bool has_wlp(std::span<const int> degrees) const;
  bool has_wlp(const MonomialCI& ci) const { return has_wlp(ci.degrees()); }

 private:
  std::vector<StringBlock> compute_pair_table(int a, int b) const;

  int p_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const std::vector<StringBlock>>> cache_;
};

}  // namespace lefschetz
