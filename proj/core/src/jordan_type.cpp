#include "lefschetz/jordan_type.hpp"

#include <algorithm>
#include <mutex>
#include <string>

#include "lefschetz/error.hpp"
#include "lefschetz/modular_linalg.hpp"

namespace lefschetz {

StringDecomposition::StringDecomposition(int socle_degree)
    : socle_degree_(socle_degree),
      counts_(static_cast<std::size_t>(socle_degree + 1) * static_cast<std::size_t>(socle_degree + 1), 0) {
  if (socle_degree < 0) throw Error(ErrorCode::InvalidArgument, "negative socle degree");
}

std::size_t StringDecomposition::slot(int start, int length) const {
  return static_cast<std::size_t>(start) * static_cast<std::size_t>(socle_degree_ + 1) +
         static_cast<std::size_t>(length - 1);
}

std::int64_t StringDecomposition::count(int start, int length) const {
  if (start < 0 || length < 1 || start + length - 1 > socle_degree_) return 0;
  return counts_[slot(start, length)];
}

void StringDecomposition::add(int start, int length, std::int64_t count) {
  if (start < 0 || length < 1 || start + length - 1 > socle_degree_) {
    throw Error(ErrorCode::InvalidArgument, "string does not fit in degrees 0..t");
  }
  counts_[slot(start, length)] += count;
}

std::vector<StringBlock> StringDecomposition::blocks() const {
  std::vector<StringBlock> out;
  for (int b = 0; b <= socle_degree_; ++b) {
    for (int len = 1; b + len - 1 <= socle_degree_; ++len) {
      if (const auto c = counts_[slot(b, len)]) out.push_back({b, len, c});
    }
  }
  return out;
}

std::int64_t StringDecomposition::num_strings() const {
  std::int64_t total = 0;
  for (auto c : counts_) total += c;
  return total;
}

std::int64_t StringDecomposition::dimension(int degree) const { return rank(degree, 0); }

std::int64_t StringDecomposition::rank(int degree, int m) const {
  if (degree < 0 || m < 0 || degree + m > socle_degree_) return 0;
  std::int64_t total = 0;
  for (int b = 0; b <= degree; ++b) {
    // Strings starting at b reach degree + m when their length is at least degree + m - b + 1.
    for (int len = degree + m - b + 1; b + len - 1 <= socle_degree_; ++len) {
      total += counts_[slot(b, len)];
    }
  }
  return total;
}

bool StringDecomposition::maximal_rank_power(int m) const {
  for (int i = 0; i + m <= socle_degree_; ++i) {
    if (rank(i, m) != std::min(dimension(i), dimension(i + m))) return false;
  }
  return true;
}

bool StringDecomposition::has_wlp() const { return maximal_rank_power(1); }

JordanEngine::JordanEngine(int p) : p_(p) {
  PrimeField check(p);  // validates p
}

std::vector<StringBlock> JordanEngine::compute_pair_table(int a, int b) const {
  const PrimeField field(p_);
  const int top = a + b - 2;
  auto lo = [&](int k) { return std::max(0, k - (b - 1)); };
  auto width = [&](int k) { return std::min(k, a - 1) - lo(k) + 1; };

  // ranks[i][m] = rank of (u+v)^m from degree i; m = 0 gives dim.
  std::vector<std::vector<std::int64_t>> ranks(static_cast<std::size_t>(top) + 1);
  using Row = std::vector<Residue>;
  for (int i = 0; i <= top; ++i) {
    auto& r = ranks[static_cast<std::size_t>(i)];
    r.assign(static_cast<std::size_t>(top - i) + 1, 0);
    std::vector<Row> span;
    for (int q = 0; q < width(i); ++q) {
      Row e(static_cast<std::size_t>(width(i)), 0);
      e[static_cast<std::size_t>(q)] = 1;
      span.push_back(std::move(e));
    }
    r[0] = static_cast<std::int64_t>(span.size());
    for (int k = i; k < top && !span.empty(); ++k) {
      // Multiply every spanning vector from degree k into degree k + 1.
      const int lo_k = lo(k), lo_next = lo(k + 1);
      const auto w_next = static_cast<std::size_t>(width(k + 1));
      std::vector<Row> image;
      for (const auto& vec : span) {
        Row out(w_next, 0);
        for (std::size_t q = 0; q < vec.size(); ++q) {
          if (!vec[q]) continue;
          const int j = lo_k + static_cast<int>(q);  // u-exponent; v-exponent is k - j
          if (j + 1 <= a - 1) {
            auto& slot = out[static_cast<std::size_t>(j + 1 - lo_next)];
            slot = field.add(slot, vec[q]);
          }
          if (k - j + 1 <= b - 1) {
            auto& slot = out[static_cast<std::size_t>(j - lo_next)];
            slot = field.add(slot, vec[q]);
          }
        }
        image.push_back(std::move(out));
      }
      // Echelon form, rows kept sorted by leading column.
      std::vector<std::pair<std::size_t, Row>> rows;
      for (auto& vec : image) {
        for (const auto& [lead, row] : rows) {
          if (const Residue f = vec[lead]) {
            const Residue neg = field.neg(f);
            for (std::size_t c = lead; c < vec.size(); ++c) {
              if (row[c]) vec[c] = field.add(vec[c], field.mul(neg, row[c]));
            }
          }
        }
        std::size_t lead = 0;
        while (lead < vec.size() && vec[lead] == 0) ++lead;
        if (lead == vec.size()) continue;
        const Residue inv = field.inv(vec[lead]);
        for (std::size_t c = lead; c < vec.size(); ++c) vec[c] = field.mul(vec[c], inv);
        auto pos = std::lower_bound(rows.begin(), rows.end(), lead,
                                    [](const auto& entry, std::size_t l) { return entry.first < l; });
        rows.insert(pos, {lead, std::move(vec)});
      }
      span.clear();
      for (auto& [lead, row] : rows) span.push_back(std::move(row));
      r[static_cast<std::size_t>(k + 1 - i)] = static_cast<std::int64_t>(span.size());
    }
  }

  auto rank_at = [&](int i, int m) -> std::int64_t {
    if (i < 0 || m < 0 || i + m > top) return 0;
    return ranks[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
  };
  // Strings starting at b of length >= m + 1 cover b and b + m but not b - 1.
  auto at_least = [&](int start, int m) { return rank_at(start, m) - rank_at(start - 1, m + 1); };

  std::vector<StringBlock> table;
  for (int start = 0; start <= top; ++start) {
    for (int m = 0; start + m <= top; ++m) {
      const auto exact = at_least(start, m) - at_least(start, m + 1);
      if (exact < 0) throw Error(ErrorCode::InvalidArgument, "inconsistent string counts");
      if (exact) table.push_back({start, m + 1, exact});
    }
  }
  return table;
}

std::shared_ptr<const std::vector<StringBlock>> JordanEngine::pair_table(int a, int b) const {
  if (a < 1 || b < 1) throw Error(ErrorCode::InvalidArgument, "string lengths must be positive");
  const auto key = std::minmax(a, b);
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto table = std::make_shared<const std::vector<StringBlock>>(compute_pair_table(key.first, key.second));
  std::unique_lock lock(mutex_);
  return cache_.emplace(key, std::move(table)).first->second;
}

StringDecomposition JordanEngine::extend(const StringDecomposition& base, int d) const {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "degrees must be positive");
  StringDecomposition out(base.socle_degree() + d - 1);
  for (const auto& block : base.blocks()) {
    const auto table = pair_table(block.length, d);
    for (const auto& piece : *table) {
      out.add(block.start + piece.start, piece.length, block.count * piece.count);
    }
  }
  return out;
}

StringDecomposition JordanEngine::decompose(std::span<const int> degrees) const {
  StringDecomposition current(0);
  current.add(0, 1, 1);  // the field itself
  for (int d : degrees) current = extend(current, d);
  return current;
}

bool JordanEngine::wlp_after_adjoining(const StringDecomposition& prefix,
                                       std::span<const int> prefix_degrees, int d) const {
  std::int64_t strings = 0;
  for (const auto& block : prefix.blocks()) strings += block.count * std::min(block.length, d);
  std::vector<int> all(prefix_degrees.begin(), prefix_degrees.end());
  all.push_back(d);
  return strings == hilbert_function(all).peak();
}

bool JordanEngine::has_wlp(std::span<const int> degrees) const {
  if (degrees.empty()) return true;
  const auto prefix = decompose(degrees.first(degrees.size() - 1));
  return wlp_after_adjoining(prefix, degrees.first(degrees.size() - 1), degrees.back());
}

}  // namespace lefschetz
