#include "lefschetz/modular_linalg.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "lefschetz/error.hpp"
#include "lefschetz/number_theory.hpp"

namespace lefschetz {

PrimeField::PrimeField(int p) : p_(static_cast<Residue>(p)) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(p));
  if (p >= (1 << 16)) throw Error(ErrorCode::InvalidArgument, "characteristic must be below 65536");
  inverse_.assign(static_cast<std::size_t>(p), 0);
  inverse_[1] = 1;
  for (Residue i = 2; i < p_; ++i) {
    inverse_[i] = static_cast<Residue>(
        static_cast<std::uint64_t>(p_ - p_ / i) * inverse_[p_ % i] % p_);
  }
}

SparseMatrixModP::SparseMatrixModP(std::size_t rows, std::size_t cols, int p)
    : rows_(rows), p_(p), columns_(cols) {
  if (!is_prime(p)) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(p));
}

SparseMatrixModP SparseMatrixModP::from_columns(std::size_t rows, int p,
                                                std::vector<std::vector<MatrixEntry>> columns) {
  SparseMatrixModP m(rows, 0, p);
  for (const auto& col : columns) {
    for (std::size_t k = 0; k < col.size(); ++k) {
      if (col[k].row >= rows) throw Error(ErrorCode::InvalidArgument, "row index out of range");
      if (col[k].value == 0 || col[k].value >= static_cast<Residue>(p)) {
        throw Error(ErrorCode::InvalidArgument, "stored residue must lie in [1, p)");
      }
      if (k > 0 && col[k - 1].row >= col[k].row) {
        throw Error(ErrorCode::InvalidArgument, "column entries must be strictly sorted by row");
      }
    }
  }
  m.columns_ = std::move(columns);
  return m;
}

SparseMatrixModP SparseMatrixModP::from_dense(const std::vector<std::vector<std::int64_t>>& dense,
                                              int p) {
  const std::size_t rows = dense.size();
  const std::size_t cols = rows ? dense[0].size() : 0;
  PrimeField field(p);
  std::vector<std::vector<MatrixEntry>> columns(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (dense[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged dense matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      const Residue v = field.reduce(dense[r][c]);
      if (v) columns[c].push_back({static_cast<std::uint32_t>(r), v});
    }
  }
  return from_columns(rows, p, std::move(columns));
}

SparseMatrixModP SparseMatrixModP::identity(std::size_t n, int p) {
  std::vector<std::vector<MatrixEntry>> columns(n);
  for (std::size_t i = 0; i < n; ++i) columns[i].push_back({static_cast<std::uint32_t>(i), 1});
  return from_columns(n, p, std::move(columns));
}

std::size_t SparseMatrixModP::nonzeros() const noexcept {
  std::size_t total = 0;
  for (const auto& col : columns_) total += col.size();
  return total;
}

Residue SparseMatrixModP::at(std::size_t r, std::size_t c) const {
  const auto& col = columns_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const MatrixEntry& e, std::size_t row) { return e.row < row; });
  return it != col.end() && it->row == r ? it->value : 0;
}

bool VectorModP::is_zero() const {
  return std::all_of(entries.begin(), entries.end(), [](Residue v) { return v == 0; });
}

namespace {

// Row-major dense block with in-place echelon reduction.
class DenseBlock {
 public:
  DenseBlock(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  // Reduces to row-echelon form; returns the pivot column of each pivot row.
  std::vector<std::size_t> echelon(const PrimeField& field, bool reduced) {
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
      std::size_t pivot = rank;
      while (pivot < rows_ && (*this)(pivot, c) == 0) ++pivot;
      if (pivot == rows_) continue;
      if (pivot != rank) {
        std::swap_ranges(row(pivot), row(pivot) + cols_, row(rank));
      }
      Residue* prow = row(rank);
      const Residue scale = field.inv(prow[c]);
      for (std::size_t k = c; k < cols_; ++k) prow[k] = field.mul(prow[k], scale);
      const std::size_t first = reduced ? 0 : rank + 1;
      for (std::size_t r = first; r < rows_; ++r) {
        if (r == rank) continue;
        Residue* target = row(r);
        const Residue factor = target[c];
        if (factor == 0) continue;
        const Residue neg = field.neg(factor);
        for (std::size_t k = c; k < cols_; ++k) {
          if (prow[k]) target[k] = field.add(target[k], field.mul(neg, prow[k]));
        }
      }
      pivots.push_back(c);
      ++rank;
    }
    return pivots;
  }

 private:
  Residue* row(std::size_t r) { return data_.data() + r * cols_; }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

DenseBlock to_dense(const SparseMatrixModP& m) {
  DenseBlock block(m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (const auto& e : m.column(c)) block(e.row, c) = e.value;
  }
  return block;
}

struct RowEntry {
  std::uint32_t col;
  Residue value;
};
using SparseRow = std::vector<RowEntry>;

bool row_has(const SparseRow& row, std::uint32_t col, Residue* value = nullptr) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const RowEntry& e, std::uint32_t c) { return e.col < c; });
  if (it == row.end() || it->col != col) return false;
  if (value) *value = it->value;
  return true;
}

class SparseEliminator {
 public:
  SparseEliminator(const SparseMatrixModP& m, const RankOptions& options)
      : field_(m.prime()), options_(options), rows_(m.rows()), col_rows_(m.cols()),
        col_count_(m.cols(), 0), active_(m.rows(), true) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      for (const auto& e : m.column(c)) {
        rows_[e.row].push_back({static_cast<std::uint32_t>(c), e.value});
        col_rows_[c].push_back(e.row);
      }
      col_count_[c] = m.column(c).size();
      active_nnz_ += m.column(c).size();
      if (col_count_[c]) queue_.insert({col_count_[c], c});
    }
    active_rows_ = m.rows();
  }

  std::size_t run() {
    std::size_t rank = 0;
    while (!queue_.empty()) {
      if (!options_.force_sparse && should_go_dense()) return rank + finish_dense();
      const std::size_t col = queue_.begin()->second;
      const std::uint32_t pivot_row = choose_pivot_row(col);
      eliminate(pivot_row, static_cast<std::uint32_t>(col));
      ++rank;
    }
    return rank;
  }

 private:
  bool should_go_dense() const {
    const double area = static_cast<double>(active_rows_) * static_cast<double>(queue_.size());
    return area > 0 && static_cast<double>(active_nnz_) > options_.dense_density * area;
  }

  std::uint32_t choose_pivot_row(std::size_t col) {
    auto& candidates = col_rows_[col];
    // Drop stale references while scanning.
    std::vector<std::uint32_t> live;
    live.reserve(candidates.size());
    std::uint32_t best = 0;
    std::size_t best_len = SIZE_MAX;
    for (auto r : candidates) {
      if (!active_[r] || !row_has(rows_[r], static_cast<std::uint32_t>(col))) continue;
      if (!live.empty() && live.back() == r) continue;
      live.push_back(r);
    }
    std::sort(live.begin(), live.end());
    live.erase(std::unique(live.begin(), live.end()), live.end());
    for (auto r : live) {
      if (rows_[r].size() < best_len) {
        best_len = rows_[r].size();
        best = r;
      }
    }
    candidates = std::move(live);
    return best;
  }

  void set_count(std::size_t col, std::size_t count) {
    if (col_count_[col]) queue_.erase({col_count_[col], col});
    col_count_[col] = count;
    if (count) queue_.insert({count, col});
  }

  void eliminate(std::uint32_t pivot_row, std::uint32_t col) {
    const SparseRow pivot = rows_[pivot_row];
    Residue pivot_value = 0;
    row_has(pivot, col, &pivot_value);
    const Residue pivot_inv = field_.inv(pivot_value);
    const std::vector<std::uint32_t> targets = col_rows_[col];
    SparseRow merged;
    for (auto r : targets) {
      if (r == pivot_row) continue;
      Residue target_value = 0;
      if (!active_[r] || !row_has(rows_[r], col, &target_value)) continue;
      const Residue factor = field_.neg(field_.mul(target_value, pivot_inv));
      const SparseRow& row = rows_[r];
      merged.clear();
      merged.reserve(row.size() + pivot.size());
      std::size_t i = 0, j = 0;
      while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].col < pivot[j].col)) {
          merged.push_back(row[i++]);
        } else if (i == row.size() || pivot[j].col < row[i].col) {
          // Fill-in.
          const auto c = pivot[j].col;
          merged.push_back({c, field_.mul(factor, pivot[j].value)});
          col_rows_[c].push_back(r);
          set_count(c, col_count_[c] + 1);
          ++j;
        } else {
          const auto c = row[i].col;
          const Residue v = field_.add(row[i].value, field_.mul(factor, pivot[j].value));
          if (v) {
            merged.push_back({c, v});
          } else {
            set_count(c, col_count_[c] - 1);
          }
          ++i;
          ++j;
        }
      }
      active_nnz_ = active_nnz_ - row.size() + merged.size();
      rows_[r].swap(merged);
    }
    for (const auto& e : pivot) set_count(e.col, col_count_[e.col] - 1);
    active_[pivot_row] = false;
    active_nnz_ -= pivot.size();
    --active_rows_;
    col_rows_[col].clear();
  }

  std::size_t finish_dense() {
    std::vector<std::size_t> col_map(col_count_.size(), SIZE_MAX);
    std::size_t width = 0;
    for (const auto& [count, col] : queue_) col_map[col] = width++;
    std::vector<std::uint32_t> live_rows;
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      if (active_[r] && !rows_[r].empty()) live_rows.push_back(r);
    }
    DenseBlock block(live_rows.size(), width);
    for (std::size_t k = 0; k < live_rows.size(); ++k) {
      for (const auto& e : rows_[live_rows[k]]) block(k, col_map[e.col]) = e.value;
    }
    return block.echelon(field_, false).size();
  }

  PrimeField field_;
  RankOptions options_;
  std::vector<SparseRow> rows_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::size_t> col_count_;
  std::vector<bool> active_;
  std::set<std::pair<std::size_t, std::size_t>> queue_;  // (count, column)
  std::size_t active_nnz_ = 0;
  std::size_t active_rows_ = 0;
};

}  // namespace

std::size_t dense_rank_mod_p(const SparseMatrixModP& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // Eliminate along the shorter side.
  if (m.rows() < m.cols()) {
    auto block = to_dense(transpose(m));
    return block.echelon(PrimeField(m.prime()), false).size();
  }
  auto block = to_dense(m);
  return block.echelon(PrimeField(m.prime()), false).size();
}

std::size_t rank_mod_p(const SparseMatrixModP& m, const RankOptions& options) {
  if (m.rows() == 0 || m.cols() == 0 || m.nonzeros() == 0) return 0;
  if (!options.force_sparse) {
    const double density = static_cast<double>(m.nonzeros()) /
                           (static_cast<double>(m.rows()) * static_cast<double>(m.cols()));
    if (std::min(m.rows(), m.cols()) <= options.dense_dimension || density > options.dense_density) {
      return dense_rank_mod_p(m);
    }
  }
  return SparseEliminator(m, options).run();
}

VectorModP apply(const SparseMatrixModP& m, const VectorModP& v) {
  if (v.size() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length " + std::to_string(v.size()) +
                                                  " vs " + std::to_string(m.cols()) + " columns");
  }
  PrimeField field(m.prime());
  VectorModP out{m.prime(), std::vector<Residue>(m.rows(), 0)};
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const Residue x = v.entries[c] % static_cast<Residue>(m.prime());
    if (!x) continue;
    for (const auto& e : m.column(c)) {
      out.entries[e.row] = field.add(out.entries[e.row], field.mul(e.value, x));
    }
  }
  return out;
}

SparseMatrixModP transpose(const SparseMatrixModP& m) {
  std::vector<std::vector<MatrixEntry>> columns(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (const auto& e : m.column(c)) {
      columns[e.row].push_back({static_cast<std::uint32_t>(c), e.value});
    }
  }
  return SparseMatrixModP::from_columns(m.cols(), m.prime(), std::move(columns));
}

std::vector<VectorModP> kernel_basis(const SparseMatrixModP& m) {
  PrimeField field(m.prime());
  auto block = to_dense(m);
  const auto pivots = block.echelon(field, true);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<VectorModP> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    VectorModP v{m.prime(), std::vector<Residue>(m.cols(), 0)};
    v.entries[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      v.entries[pivots[k]] = field.neg(block(k, free));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace lefschetz
