#include "lefschetz/survey.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <istream>
#include <sstream>
#include <thread>

#include "lefschetz/error.hpp"
#include "lefschetz/jordan_type.hpp"
#include "lefschetz/number_theory.hpp"

namespace lefschetz {

std::string to_string(SetDefs defs) { return defs == SetDefs::Caption ? "caption" : "strict"; }

std::string to_string(WlpEngineKind kind) { return kind == WlpEngineKind::Strings ? "strings" : "matrix"; }

SetDefs parse_set_defs(const std::string& text) {
  if (text == "caption") return SetDefs::Caption;
  if (text == "strict") return SetDefs::Strict;
  throw Error(ErrorCode::InvalidArgument, "set definitions must be caption or strict, got '" + text + "'");
}

WlpEngineKind parse_engine(const std::string& text) {
  if (text == "strings") return WlpEngineKind::Strings;
  if (text == "matrix") return WlpEngineKind::Matrix;
  throw Error(ErrorCode::InvalidArgument, "engine must be strings or matrix, got '" + text + "'");
}

namespace {

bool parse_int(std::string_view text, int& out) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && !text.empty();
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

PartitionFilter PartitionFilter::parse(const std::string& text) {
  PartitionFilter f;
  if (text == "all") return f;
  std::string_view rest;
  if (text.rfind("d1>=", 0) == 0) {
    f.kind = Kind::AtLeast;
    rest = std::string_view(text).substr(4);
  } else if (text.rfind("d1=", 0) == 0) {
    f.kind = Kind::Equal;
    rest = std::string_view(text).substr(3);
  } else {
    throw Error(ErrorCode::InvalidArgument, "partition must be all, d1=K or d1>=K, got '" + text + "'");
  }
  if (!parse_int(rest, f.value) || f.value < 1) {
    throw Error(ErrorCode::InvalidArgument, "bad partition bound in '" + text + "'");
  }
  return f;
}

bool PartitionFilter::accepts(int smallest) const {
  switch (kind) {
    case Kind::All: return true;
    case Kind::Equal: return smallest == value;
    case Kind::AtLeast: return smallest >= value;
  }
  return false;
}

std::string PartitionFilter::to_string() const {
  switch (kind) {
    case Kind::All: return "all";
    case Kind::Equal: return "d1=" + std::to_string(value);
    case Kind::AtLeast: return "d1>=" + std::to_string(value);
  }
  return "all";
}

std::string format_cache_line(const CacheRecord& record) {
  std::string out;
  for (std::size_t i = 0; i < record.degrees.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(record.degrees[i]);
  }
  out += ';' + std::to_string(record.p) + ';' + (record.wlp ? "wlp" : "nowlp") + ';' + record.rule;
  return out;
}

std::optional<CacheRecord> parse_cache_line(const std::string& line) {
  const auto fields = split(line, ';');
  if (fields.size() != 4 || fields[3].empty()) return std::nullopt;
  CacheRecord r;
  for (auto part : split(fields[0], ',')) {
    int d = 0;
    if (!parse_int(part, d) || d < 2) return std::nullopt;
    r.degrees.push_back(d);
  }
  if (!std::is_sorted(r.degrees.begin(), r.degrees.end(), std::greater<>())) return std::nullopt;
  if (!parse_int(fields[1], r.p) || !is_prime(r.p)) return std::nullopt;
  if (fields[2] == "wlp") {
    r.wlp = true;
  } else if (fields[2] != "nowlp") {
    return std::nullopt;
  }
  r.rule = std::string(fields[3]);
  return r;
}

std::vector<std::string> VerdictCache::load(std::istream& in) {
  std::vector<std::string> warnings;
  std::string line;
  std::size_t number = 0;
  std::lock_guard lock(mutex_);
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    auto record = parse_cache_line(line);
    if (!record) {
      warnings.push_back("cache line " + std::to_string(number) + " ignored: '" + line + "'");
      continue;
    }
    Key key{record->p, record->degrees};
    records_.insert_or_assign(std::move(key), std::move(*record));
  }
  return warnings;
}

std::optional<CacheRecord> VerdictCache::find(const std::vector<int>& degrees, int p) const {
  std::lock_guard lock(mutex_);
  if (auto it = records_.find(Key{p, degrees}); it != records_.end()) return it->second;
  return std::nullopt;
}

void VerdictCache::insert(const CacheRecord& record) {
  std::lock_guard lock(mutex_);
  Key key{record.p, record.degrees};
  if (records_.emplace(key, record).second) fresh_.push_back(std::move(key));
}

std::vector<CacheRecord> VerdictCache::take_new() {
  std::lock_guard lock(mutex_);
  std::sort(fresh_.begin(), fresh_.end());
  std::vector<CacheRecord> out;
  out.reserve(fresh_.size());
  for (const auto& key : fresh_) out.push_back(records_.at(key));
  fresh_.clear();
  return out;
}

std::size_t VerdictCache::size() const {
  std::lock_guard lock(mutex_);
  return records_.size();
}

namespace {

struct Counts {
  std::int64_t a = 0, b = 0, c = 0, d = 0, remainder = 0, total = 0, skipped = 0, rule_decided = 0;

  Counts& operator+=(const Counts& o) {
    a += o.a;
    b += o.b;
    c += o.c;
    d += o.d;
    remainder += o.remainder;
    total += o.total;
    skipped += o.skipped;
    rule_decided += o.rule_decided;
    return *this;
  }
};

std::int64_t socle(std::span<const int> degrees) {
  std::int64_t t = 0;
  for (int d : degrees) t += d - 1;
  return t;
}

class Decider {
 public:
  Decider(const SurveyParams& params, VerdictCache& cache)
      : params_(params), strings_(params.p), rules_(params.p), cache_(cache) {}

  const JordanEngine& strings() const { return strings_; }

  struct Decision {
    std::optional<bool> wlp;  // nothing when the engine hit the dimension cap
    bool by_rule = false;
  };

  // compute() runs the exact engine on the canonical tuple.
  template <class Compute>
  Decision decide(std::vector<int> degrees, Compute&& compute) {
    std::erase(degrees, 1);
    std::sort(degrees.begin(), degrees.end(), std::greater<>());
    if (degrees.size() <= 2) return {true, true};
    if (auto hit = cache_.find(degrees, params_.p)) return {hit->wlp, hit->rule != "oracle"};

    const Verdict rule = rules_.classify(degrees);
    const std::optional<bool> exact = compute(degrees);
    const bool decided = rule.status != Status::Unknown;
    if (exact && decided && *exact != (rule.status == Status::Holds)) {
      std::string text;
      for (int d : degrees) text += std::to_string(d) + ' ';
      throw Error(ErrorCode::InvalidArgument,
                  "rule " + rule.rule + " disagrees with the exact computation on " + text + "p=" +
                      std::to_string(params_.p));
    }
    std::optional<bool> wlp = exact;
    if (!wlp && decided) wlp = rule.status == Status::Holds;
    if (!wlp) return {};
    cache_.insert({degrees, params_.p, *wlp, decided ? rule.rule : std::string("oracle")});
    return {wlp, decided};
  }

  // WLP of an arbitrary (base) tuple.
  std::optional<bool> base_wlp(const std::vector<int>& degrees) {
    return decide(degrees, [&](const std::vector<int>& canonical) { return exact(canonical); }).wlp;
  }

  std::optional<bool> exact(const std::vector<int>& canonical) const {
    if (params_.engine == WlpEngineKind::Strings) return strings_.has_wlp(canonical);
    try {
      return verify_wlp(MonomialCI::normalize(canonical, params_.p), params_.oracle);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DimensionCap) return std::nullopt;
      throw;
    }
  }

 private:
  const SurveyParams& params_;
  JordanEngine strings_;
  WlpRuleEngine rules_;
  VerdictCache& cache_;
};

void prefixes(int length, int lo, int hi, const PartitionFilter& filter, std::vector<int>& cur,
              std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == length) {
    out.push_back(cur);
    return;
  }
  for (int d = cur.empty() ? lo : cur.back(); d <= hi; ++d) {
    if (cur.empty() && !filter.accepts(d)) continue;
    cur.push_back(d);
    prefixes(length, lo, hi, filter, cur, out);
    cur.pop_back();
  }
}

// All tuples extending one ascending prefix by a last degree >= prefix.back().
Counts run_prefix(const SurveyParams& params, Decider& decider, const MultinomialModP& mm,
                  const std::vector<int>& prefix) {
  Counts counts;
  const int n = params.n;
  const int p = params.p;
  std::optional<StringDecomposition> prefix_strings;
  if (params.engine == WlpEngineKind::Strings) prefix_strings = decider.strings().decompose(prefix);

  std::vector<int> tuple(prefix);
  tuple.push_back(0);
  const std::int64_t prefix_socle = socle(prefix);
  std::vector<std::int64_t> parts;
  for (int d : prefix) parts.push_back(d - 1);

  for (int last = prefix.back(); last <= params.d_max; ++last) {
    tuple.back() = last;
    ++counts.total;
    const std::int64_t t = prefix_socle + last - 1;
    if (2 * std::max(p, last) > t + 1) continue;  // large characteristic or degree

    const auto decision = decider.decide(tuple, [&](const std::vector<int>& canonical) -> std::optional<bool> {
      if (prefix_strings) return decider.strings().wlp_after_adjoining(*prefix_strings, prefix, last);
      return decider.exact(canonical);
    });
    if (!decision.wlp) {
      ++counts.skipped;
      continue;
    }
    if (decision.by_rule) ++counts.rule_decided;
    if (!*decision.wlp) continue;
    ++counts.a;

    bool in_c = false;
    if (last == prefix_socle && mm(last, parts) != 0) in_c = true;
    if (last + 1 == prefix_socle && mm(last + 1, parts) != 0) in_c = true;

    bool in_d = false;
    if (tuple.front() == 2) {
      const std::vector<int> rest(tuple.begin() + 1, tuple.end());
      const bool parity = params.set_defs == SetDefs::Caption || socle(rest) % 2 == 1;
      in_d = parity && decider.base_wlp(rest).value_or(false);
    }

    bool in_b = false;
    for (int i = 0; i < n && !in_b; ++i) {
      for (int j = i + 1; j < n && !in_b; ++j) {
        const int small = std::min(tuple[static_cast<std::size_t>(i)], tuple[static_cast<std::size_t>(j)]);
        int others_max = 0;
        for (int k = 0; k < n; ++k) {
          if (k != i && k != j) others_max = std::max(others_max, tuple[static_cast<std::size_t>(k)]);
        }
        for (std::int64_t q = p; q < small && !in_b; q *= p) {
          if (others_max > q) continue;
          for (std::int64_t b = 1; b * q < small && !in_b; ++b) {
            std::vector<int> base(tuple);
            base[static_cast<std::size_t>(i)] -= static_cast<int>(b * q);
            base[static_cast<std::size_t>(j)] -= static_cast<int>(b * q);
            in_b = decider.base_wlp(base).value_or(false);
          }
        }
      }
    }

    counts.b += in_b;
    counts.c += in_c;
    counts.d += in_d;
    counts.remainder += !(in_b || in_c || in_d);
  }
  return counts;
}

}  // namespace

SurveyRow survey(const SurveyParams& params, VerdictCache* cache, const SurveyProgress& progress) {
  if (params.n < 2) throw Error(ErrorCode::InvalidArgument, "survey needs at least two variables");
  if (params.d_min < 2 || params.d_min > params.d_max) {
    throw Error(ErrorCode::InvalidArgument, "need 2 <= d_min <= d_max");
  }
  if (!is_prime(params.p)) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(params.p));
  if (params.jobs < 1) throw Error(ErrorCode::InvalidArgument, "jobs must be positive");

  const auto start = std::chrono::steady_clock::now();
  VerdictCache local;
  VerdictCache& store = cache ? *cache : local;
  Decider decider(params, store);
  const MultinomialModP mm(params.p);

  std::vector<std::vector<int>> items;
  std::vector<int> cur;
  prefixes(params.n - 1, params.d_min, params.d_max, params.partition, cur, items);

  std::vector<Counts> results(items.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::int64_t> done{0};
  std::mutex progress_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= items.size()) return;
      try {
        results[k] = run_prefix(params, decider, mm, items[k]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(items.size());
        return;
      }
      const auto finished = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, static_cast<std::int64_t>(items.size()));
      }
    }
  };

  const int threads = std::min<int>(params.jobs, static_cast<int>(std::max<std::size_t>(items.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  Counts total;
  for (const auto& c : results) total += c;

  SurveyRow row;
  row.params = params;
  row.a = total.a;
  row.b = total.b;
  row.c = total.c;
  row.d = total.d;
  row.remainder = total.remainder;
  row.tuples_total = total.total;
  row.tuples_skipped = total.skipped;
  row.rule_decided = total.rule_decided;
  row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (row.b > row.a || row.c > row.a || row.d > row.a || row.remainder > row.a ||
      row.remainder < row.a - row.b - row.c - row.d) {
    throw Error(ErrorCode::InvalidArgument, "survey counts violate set containment");
  }
  return row;
}

}  // namespace lefschetz
