#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lefschetz {

using Residue = std::uint32_t;

/// Arithmetic in F_p for p < 2^16, with a precomputed inverse table.
class PrimeField {
 public:
  explicit PrimeField(int p);

  int prime() const noexcept { return static_cast<int>(p_); }
  Residue reduce(std::int64_t v) const {
    const auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const { return (a + b) % p_; }
  Residue sub(Residue a, Residue b) const { return (a + p_ - b) % p_; }
  Residue mul(Residue a, Residue b) const { return (a * b) % p_; }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue inv(Residue a) const { return inverse_[a]; }

 private:
  Residue p_;
  std::vector<Residue> inverse_;
};

struct MatrixEntry {
  std::uint32_t row = 0;
  Residue value = 0;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

/// Column-compressed matrix over F_p. Each column holds its nonzero entries
/// sorted by row, at most one per row, values in [1, p).
class SparseMatrixModP {
 public:
  SparseMatrixModP(std::size_t rows, std::size_t cols, int p);

  /// Validates every invariant; throws InvalidArgument on violation.
  static SparseMatrixModP from_columns(std::size_t rows, int p,
                                       std::vector<std::vector<MatrixEntry>> columns);
  static SparseMatrixModP from_dense(const std::vector<std::vector<std::int64_t>>& dense, int p);
  static SparseMatrixModP identity(std::size_t n, int p);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }
  int prime() const noexcept { return p_; }
  std::size_t nonzeros() const noexcept;

  std::span<const MatrixEntry> column(std::size_t c) const { return columns_[c]; }
  Residue at(std::size_t r, std::size_t c) const;

  friend bool operator==(const SparseMatrixModP&, const SparseMatrixModP&) = default;

 private:
  std::size_t rows_;
  int p_;
  std::vector<std::vector<MatrixEntry>> columns_;
};

struct VectorModP {
  int p = 2;
  std::vector<Residue> entries;

  std::size_t size() const noexcept { return entries.size(); }
  bool is_zero() const;

  friend bool operator==(const VectorModP&, const VectorModP&) = default;
};

struct RankOptions {
  // Below this many rows or columns the dense kernel is used outright.
  std::size_t dense_dimension = 256;
  // Switch to the dense kernel once the active block is this full.
  double dense_density = 0.20;
  // Forces the sparse path regardless of shape; used by the equivalence tests.
  bool force_sparse = false;
};

/// Rank over F_p. Sparse elimination with a minimum-count (Markowitz style)
/// pivot rule, finishing densely when the remaining block fills in. Pivot
/// ties go to the lowest index.
std::size_t rank_mod_p(const SparseMatrixModP& m, const RankOptions& options = {});

/// Straight row-echelon reduction on a dense copy. Reference implementation.
std::size_t dense_rank_mod_p(const SparseMatrixModP& m);

VectorModP apply(const SparseMatrixModP& m, const VectorModP& v);

SparseMatrixModP transpose(const SparseMatrixModP& m);

/// Basis of the right kernel, read off the reduced row-echelon form.
std::vector<VectorModP> kernel_basis(const SparseMatrixModP& m);

}  // namespace lefschetz
