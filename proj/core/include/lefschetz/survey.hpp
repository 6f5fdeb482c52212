#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "lefschetz/classifier.hpp"
#include "lefschetz/rank_oracle.hpp"

namespace lefschetz {

// Sweep over all n-variable tuples d_1 <= ... <= d_n in [d_min, d_max]
// (ascending here, so d_1 is the smallest degree) counting where the WLP
// holds beyond the large characteristic/degree bound, and which of the
// sufficient conditions explain it:
//
//   A  WLP holds and max(p, d_n) <= (t + 1) / 2
//   B  in A, and lowering two degrees d_i, d_j by b*p^a (a, b >= 1) while
//      every other degree is <= p^a gives an algebra with the WLP
//   C  in A, and d_n or d_n + 1 equals sum_{i<n}(d_i - 1) with the matching
//      multinomial coefficient nonzero mod p
//   D  in A, d_1 = 2 and the algebra without that factor has the WLP; the
//      strict definitions also require its socle degree to be odd
//
// The remainder is |A \ (B u C u D)|.

enum class SetDefs { Caption, Strict };
enum class WlpEngineKind { Strings, Matrix };

std::string to_string(SetDefs defs);
std::string to_string(WlpEngineKind kind);
SetDefs parse_set_defs(const std::string& text);
WlpEngineKind parse_engine(const std::string& text);

/// Filter on the smallest degree: "all", "d1=K" or "d1>=K".
struct PartitionFilter {
  enum class Kind { All, Equal, AtLeast };
  Kind kind = Kind::All;
  int value = 0;

  static PartitionFilter parse(const std::string& text);
  bool accepts(int smallest) const;
  std::string to_string() const;

  friend bool operator==(const PartitionFilter&, const PartitionFilter&) = default;
};

struct SurveyParams {
  int n = 5;
  int d_min = 2;
  int d_max = 25;
  int p = 5;
  PartitionFilter partition;
  SetDefs set_defs = SetDefs::Strict;
  WlpEngineKind engine = WlpEngineKind::Strings;
  int jobs = 1;
  OracleOptions oracle;  // used by the matrix engine
};

struct SurveyRow {
  SurveyParams params;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::int64_t d = 0;
  std::int64_t remainder = 0;
  std::int64_t tuples_total = 0;
  std::int64_t tuples_skipped = 0;  // dimension cap hit
  std::int64_t rule_decided = 0;    // tuples in the WLP check settled by a closed rule
  double wall_time = 0.0;
};

/// One decided tuple: canonical (descending) degrees, the verdict and the
/// rule or engine that produced it.
struct CacheRecord {
  std::vector<int> degrees;
  int p = 0;
  bool wlp = false;
  std::string rule;

  friend bool operator==(const CacheRecord&, const CacheRecord&) = default;
};

std::string format_cache_line(const CacheRecord& record);
/// Parses "d1,...,dn;p;wlp|nowlp;rule". Returns nothing for a malformed line.
std::optional<CacheRecord> parse_cache_line(const std::string& line);

/// In-memory verdict cache, safe for concurrent use. Records added during a
/// run are kept apart so they can be appended to the cache file afterwards.
class VerdictCache {
 public:
  /// Reads lines until EOF; malformed lines are skipped and described in
  /// the returned warnings.
  std::vector<std::string> load(std::istream& in);

  std::optional<CacheRecord> find(const std::vector<int>& degrees, int p) const;
  void insert(const CacheRecord& record);

  /// Records inserted since construction or the last call, sorted.
  std::vector<CacheRecord> take_new();
  std::size_t size() const;

 private:
  using Key = std::pair<int, std::vector<int>>;
  mutable std::mutex mutex_;
  std::map<Key, CacheRecord> records_;
  std::vector<Key> fresh_;
};

using SurveyProgress = std::function<void(std::int64_t done, std::int64_t total)>;

/// Runs the sweep. Results do not depend on params.jobs or on the cache
/// contents, provided the cache holds correct verdicts. Throws
/// InvalidArgument for bad parameters.
SurveyRow survey(const SurveyParams& params, VerdictCache* cache = nullptr,
                 const SurveyProgress& progress = {});

}  // namespace lefschetz
