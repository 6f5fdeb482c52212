#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "lefschetz/error.hpp"
#include "lefschetz/froberg.hpp"

namespace lefschetz::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string join(const std::vector<int>& values, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

std::string join(const std::vector<std::int64_t>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(values[i]);
  }
  return out + "]";
}

// Dumps JSON with a fixed layout so output is byte-stable.
void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

MonomialCI make_ci(const std::string& degrees, int p, NormalizationReport* report = nullptr) {
  const auto raw = parse_int_list(degrees);
  if (raw.empty()) throw Error(ErrorCode::InvalidArgument, "--degrees needs at least one entry");
  for (int d : raw) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "degrees must be positive");
  }
  return MonomialCI::normalize(raw, p, report);
}

json algebra_json(const MonomialCI& ci) {
  return {{"degrees", ci.degrees()}, {"char", ci.characteristic()}};
}

struct Common {
  std::string degrees;
  int p = 0;
  std::string format = "text";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--degrees", c.degrees, "Exponents d1,d2,...,dn")->required();
  sub->add_option("--char", c.p, "Characteristic p (prime)")->required();
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

std::string certificate_text(const Certificate& cert) {
  std::vector<int> lambda(cert.lambda);
  return "lambda={" + join(lambda) + "} m=" + std::to_string(cert.m) + " power=" + std::to_string(cert.power) +
         " witness=" + monomial_text(cert.witness);
}

int verdict_exit(const Verdict& v) {
  switch (v.status) {
    case Status::Holds: return kExitHolds;
    case Status::Fails: return kExitFails;
    case Status::Unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

// ---- classify -------------------------------------------------------------

struct ClassifyArgs {
  Common common;
  std::string property;
  bool oracle_fallback = false;
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  const auto ci = make_ci(a.common.degrees, a.common.p);
  const Verdict v = a.property == "slp" ? classify_slp(ci, a.oracle_fallback) : classify_wlp(ci, a.oracle_fallback);
  const bool candidate_specific = a.property == "slp" && ci.num_vars() == 2 && v.rule == "oracle";

  if (a.common.format == "json") {
    json j = to_json(v);
    j.update(algebra_json(ci));
    j["property"] = a.property;
    j["candidate_specific"] = candidate_specific;
    j["timings"] = {{"total_ms", elapsed_ms(start)}};
    print_json(out, j);
  } else {
    out << "algebra: " << ci.to_string() << '\n';
    out << "property: " << a.property << '\n';
    out << "status: " << to_string(v.status) << '\n';
    out << "rule: " << v.rule << '\n';
    if (v.certificate) out << "certificate: " << certificate_text(*v.certificate) << '\n';
    if (v.oracle_failure) {
      out << "oracle failure: power " << v.oracle_failure->power << " from degree " << v.oracle_failure->degree
          << '\n';
    }
    if (candidate_specific) out << "note: verdict is about s = x1 + x2 only\n";
  }
  return verdict_exit(v);
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  Common common;
  std::string property;
  int power = 0;
  bool full_report = false;
  bool top_degree_only = false;
  std::int64_t dimension_cap = OracleOptions{}.dimension_cap;
};

void report_text(std::ostream& out, const RankReport& r) {
  out << "power " << r.power << ": " << (r.holds ? "maximal rank" : "not maximal rank");
  if (r.first_failure) out << " (first failure in degree " << *r.first_failure << ")";
  out << '\n';
  for (const auto& c : r.checks) {
    out << "  degree " << c.degree << ": " << c.source_dim << " -> " << c.target_dim << " rank " << c.rank
        << " required " << c.required << (c.ok() ? "" : "  FAIL") << '\n';
  }
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  const auto ci = make_ci(a.common.degrees, a.common.p);
  OracleOptions options;
  options.dimension_cap = a.dimension_cap;
  options.top_degree_only = a.top_degree_only;

  json j = algebra_json(ci);
  j["property"] = a.property;
  bool holds = true;
  std::vector<RankReport> reports;
  if (a.property == "wlp" || a.property == "power") {
    const int m = a.property == "wlp" ? 1 : a.power;
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "--power must be at least 1");
    reports.push_back(has_maximal_rank_power(ci, m, options));
    holds = reports.back().holds;
  } else {
    auto result = verify_slp(ci, a.full_report, options);
    holds = result.holds;
    j["candidate_specific"] = result.candidate_specific;
    j["failing_power"] = result.failing_power ? json(*result.failing_power) : json(nullptr);
    if (a.full_report) {
      reports = std::move(result.reports);
    } else if (result.failing_power) {
      reports.push_back(has_maximal_rank_power(ci, *result.failing_power, options));
    }
  }
  j["holds"] = holds;

  if (a.common.format == "json") {
    j["reports"] = json::array();
    for (const auto& r : reports) j["reports"].push_back(to_json(r));
    j["timings"] = {{"total_ms", elapsed_ms(start)}};
    print_json(out, j);
  } else {
    out << "algebra: " << ci.to_string() << '\n';
    out << "property: " << a.property << '\n';
    out << "holds: " << (holds ? "true" : "false") << '\n';
    if (j.contains("failing_power") && !j["failing_power"].is_null()) {
      out << "failing power: " << j["failing_power"].get<int>() << '\n';
    }
    if (j.value("candidate_specific", false)) out << "note: verdict is about s = x1 + x2 only\n";
    for (const auto& r : reports) report_text(out, r);
  }
  return holds ? kExitHolds : kExitFails;
}

// ---- survey ---------------------------------------------------------------

struct SurveyArgs {
  int vars = 5;
  int min_degree = 2;
  int max_degree = 25;
  int p = 0;
  std::string partition = "all";
  std::string set_defs = "strict";
  std::string engine = "strings";
  int jobs = 0;
  std::string out_file;
  std::string cache_file;
  std::string format = "text";
  bool progress = false;
};

int cmd_survey(const SurveyArgs& a, std::ostream& out, std::ostream& err) {
  SurveyParams params;
  params.n = a.vars;
  params.d_min = a.min_degree;
  params.d_max = a.max_degree;
  params.p = a.p;
  params.partition = PartitionFilter::parse(a.partition);
  params.set_defs = parse_set_defs(a.set_defs);
  params.engine = parse_engine(a.engine);
  params.jobs = a.jobs > 0 ? a.jobs : default_jobs();

  VerdictCache cache;
  if (!a.cache_file.empty()) {
    std::ifstream in(a.cache_file);
    if (in) {
      for (const auto& w : cache.load(in)) err << "warning: " << w << '\n';
    }
  }

  SurveyProgress progress;
  if (a.progress) {
    progress = [&err](std::int64_t done, std::int64_t total) {
      if (done == total || done % 256 == 0) err << "\rprefixes " << done << '/' << total << std::flush;
      if (done == total) err << '\n';
    };
  }
  const SurveyRow row = survey(params, &cache, progress);

  if (!a.cache_file.empty()) {
    std::ofstream app(a.cache_file, std::ios::app);
    if (!app) {
      err << "error: cannot append to cache file " << a.cache_file << '\n';
      return kExitIo;
    }
    for (const auto& r : cache.take_new()) app << format_cache_line(r) << '\n';
    if (!app) {
      err << "error: write to cache file " << a.cache_file << " failed\n";
      return kExitIo;
    }
  }
  if (!a.out_file.empty()) {
    std::ofstream file(a.out_file);
    const bool as_json = a.out_file.size() >= 5 && a.out_file.ends_with(".json");
    if (as_json) {
      file << to_json(row).dump(2) << '\n';
    } else {
      file << survey_csv(row) << '\n';
    }
    if (!file) {
      err << "error: cannot write " << a.out_file << '\n';
      return kExitIo;
    }
  }

  if (a.format == "json") {
    print_json(out, to_json(row));
  } else if (a.format == "csv") {
    out << survey_csv(row) << '\n';
  } else {
    out << "tuples: " << row.tuples_total << " (skipped " << row.tuples_skipped << ")\n";
    out << "|A| = " << row.a << "  |B| = " << row.b << "  |C| = " << row.c << "  |D| = " << row.d
        << "  remainder = " << row.remainder << '\n';
    out << "set definitions: " << to_string(params.set_defs) << ", engine: " << to_string(params.engine) << '\n';
  }
  return kExitHolds;
}

// ---- froberg --------------------------------------------------------------

struct FrobergArgs {
  int vars = 0;
  std::string form_degrees;
  int p = 0;
  std::string format = "text";
};

int cmd_froberg(const FrobergArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  const auto forms = parse_int_list(a.form_degrees);
  if (a.vars < 1) throw Error(ErrorCode::InvalidArgument, "--vars must be at least 1");
  if (static_cast<int>(forms.size()) != a.vars + 1) {
    throw Error(ErrorCode::InvalidArgument, "--form-degrees needs exactly vars + 1 entries");
  }
  for (int d : forms) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "form degrees must be positive");
  }
  const std::vector<int> powers(forms.begin(), forms.end() - 1);
  const auto ci = MonomialCI::normalize(powers, a.p);
  const auto check = check_froberg_n_plus_1(ci, forms.back());

  if (a.format == "json") {
    json j = algebra_json(ci);
    j["vars"] = a.vars;
    j["form_degrees"] = forms;
    j["equal"] = check.equal;
    j["computed"] = check.computed.coefficients;
    j["conjectured"] = check.conjectured.coefficients;
    j["timings"] = {{"total_ms", elapsed_ms(start)}};
    print_json(out, j);
  } else {
    out << "computed:    " << join(check.computed.coefficients) << '\n';
    out << "conjectured: " << join(check.conjectured.coefficients) << '\n';
    out << (check.equal ? "equal" : "not equal") << '\n';
  }
  return check.equal ? kExitHolds : kExitFails;
}

// ---- witness --------------------------------------------------------------

struct WitnessArgs {
  Common common;
  std::string lambda;
};

int cmd_witness(const WitnessArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  const auto ci = make_ci(a.common.degrees, a.common.p);
  const auto lambda = parse_int_list(a.lambda);
  const auto zd = zero_divisor_power(ci, lambda);
  const int p = ci.characteristic();
  const int power = zd.m * p;

  bool verified = false;
  if (!zd.trivial) {
    const std::vector<std::int64_t> ones(static_cast<std::size_t>(ci.num_vars()), 1);
    verified = witness_is_zero(ci, ones, power, zd.witness);
  }
  const int deg = zd.witness.degree();
  const bool breaks_injectivity = !zd.trivial && 2 * deg <= ci.socle_degree() - power;

  if (a.common.format == "json") {
    json j = algebra_json(ci);
    j["lambda"] = lambda;
    j["m"] = zd.m;
    j["power"] = power;
    j["witness"] = zd.witness.exponents;
    j["trivial"] = zd.trivial;
    j["verified"] = verified;
    j["breaks_injectivity"] = breaks_injectivity;
    j["timings"] = {{"total_ms", elapsed_ms(start)}};
    print_json(out, j);
  } else {
    out << "m=" << zd.m << " witness " << monomial_text(zd.witness) << " power " << power << '\n';
    if (zd.trivial) {
      out << "trivial: the witness is already zero in the algebra\n";
    } else {
      out << (verified ? "verified" : "NOT verified") << '\n';
      out << (breaks_injectivity ? "the witness degree rules out the SLP\n"
                                 : "the witness degree is too high to rule out the SLP\n");
    }
  }
  return zd.trivial || verified ? kExitHolds : kExitFails;
}

}  // namespace

int default_jobs() {
  if (const char* env = std::getenv("LEFSCHETZ_JOBS")) {
    int v = 0;
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc() && ptr == text.data() + text.size() && v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(',', start);
    const std::string_view part(text.data() + start, (pos == std::string::npos ? text.size() : pos) - start);
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw Error(ErrorCode::InvalidArgument, "not a comma-separated integer list: '" + text + "'");
    }
    out.push_back(v);
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string monomial_text(const ExponentVector& alpha) {
  std::string out;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += "x" + std::to_string(i + 1);
    if (alpha[i] != 1) out += "^" + std::to_string(alpha[i]);
  }
  return out.empty() ? "1" : out;
}

json to_json(const Verdict& v) {
  json j;
  j["status"] = to_string(v.status);
  j["rule"] = v.rule;
  if (v.certificate) {
    j["certificate"] = {{"lambda", v.certificate->lambda},
                        {"m", v.certificate->m},
                        {"power", v.certificate->power},
                        {"witness", v.certificate->witness.exponents}};
  } else {
    j["certificate"] = nullptr;
  }
  if (v.oracle_failure) {
    j["oracle_failure"] = {{"power", v.oracle_failure->power}, {"degree", v.oracle_failure->degree}};
  } else {
    j["oracle_failure"] = nullptr;
  }
  return j;
}

json to_json(const RankReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"degree", c.degree},
                      {"source_dim", c.source_dim},
                      {"target_dim", c.target_dim},
                      {"rank", c.rank},
                      {"required", c.required}});
  }
  return {{"power", r.power},
          {"holds", r.holds},
          {"first_failure", r.first_failure ? json(*r.first_failure) : json(nullptr)},
          {"checks", checks}};
}

json to_json(const SurveyRow& row) {
  const auto& p = row.params;
  return {{"n", p.n},
          {"d_min", p.d_min},
          {"d_max", p.d_max},
          {"p", p.p},
          {"partition", p.partition.to_string()},
          {"set_defs", to_string(p.set_defs)},
          {"engine", to_string(p.engine)},
          {"counts", {{"A", row.a}, {"B", row.b}, {"C", row.c}, {"D", row.d}, {"remainder", row.remainder}}},
          {"tuples_total", row.tuples_total},
          {"tuples_skipped", row.tuples_skipped},
          {"rule_decided", row.rule_decided},
          {"base_wlp", "exact"},
          {"timings", {{"wall_time_s", row.wall_time}}}};
}

std::string survey_csv(const SurveyRow& row) {
  const auto& p = row.params;
  std::ostringstream s;
  s << "n,d_min,d_max,p,partition,set_defs,A,B,C,D,remainder,skipped\n"
    << p.n << ',' << p.d_min << ',' << p.d_max << ',' << p.p << ',' << p.partition.to_string() << ','
    << to_string(p.set_defs) << ',' << row.a << ',' << row.b << ',' << row.c << ',' << row.d << ','
    << row.remainder << ',' << row.tuples_skipped;
  return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lefschetz properties of monomial complete intersections in characteristic p", "lefschetz"};
  app.require_subcommand(1);

  ClassifyArgs classify;
  auto* c = app.add_subcommand("classify", "Decide SLP or WLP by closed-form rules");
  c->add_option("--property", classify.property)->required()->check(CLI::IsMember({"slp", "wlp"}));
  add_common(c, classify.common);
  c->add_flag("--oracle-fallback", classify.oracle_fallback, "Use exact ranks when no rule applies");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Decide by exact rank computation over F_p");
  v->add_option("--property", verify.property)->required()->check(CLI::IsMember({"slp", "wlp", "power"}));
  v->add_option("--power", verify.power, "Power m for --property power");
  add_common(v, verify.common);
  v->add_flag("--full-report", verify.full_report, "Report every power, not just the first failure");
  v->add_flag("--top-degree-only", verify.top_degree_only, "Check injectivity at the middle degree only");
  v->add_option("--dimension-cap", verify.dimension_cap, "Largest basis size per degree");

  SurveyArgs survey_args;
  auto* s = app.add_subcommand("survey", "Count WLP tuples and the conditions that explain them");
  s->add_option("--vars", survey_args.vars, "Number of variables")->required();
  s->add_option("--min-degree", survey_args.min_degree, "Smallest exponent");
  s->add_option("--max-degree", survey_args.max_degree, "Largest exponent")->required();
  s->add_option("--char", survey_args.p, "Characteristic p")->required();
  s->add_option("--partition", survey_args.partition, "all, d1=K or d1>=K (d1 is the smallest degree)");
  s->add_option("--set-defs", survey_args.set_defs, "caption or strict")
      ->check(CLI::IsMember({"caption", "strict"}));
  s->add_option("--engine", survey_args.engine, "strings or matrix")->check(CLI::IsMember({"strings", "matrix"}));
  s->add_option("--jobs", survey_args.jobs, "Worker threads (default: LEFSCHETZ_JOBS or all cores)");
  s->add_option("--out", survey_args.out_file, "Write the row as CSV (or JSON for *.json)");
  s->add_option("--cache", survey_args.cache_file, "Verdict cache to read and append to");
  s->add_option("--format", survey_args.format)->check(CLI::IsMember({"text", "json", "csv"}));
  s->add_flag("--progress", survey_args.progress, "Report progress on stderr");

  FrobergArgs froberg;
  auto* f = app.add_subcommand("froberg", "Compare A/(s^e) with the conjectured series for n+1 forms");
  f->add_option("--vars", froberg.vars, "Number of variables n")->required();
  f->add_option("--form-degrees", froberg.form_degrees, "n + 1 degrees; the last one is e")->required();
  f->add_option("--char", froberg.p, "Characteristic p")->required();
  f->add_option("--format", froberg.format)->check(CLI::IsMember({"text", "json"}));

  WitnessArgs witness;
  auto* w = app.add_subcommand("witness", "Build and check a zero-divisor witness for an index set");
  add_common(w, witness.common);
  w->add_option("--lambda", witness.lambda, "1-based positions in the sorted degrees (may be empty)")
      ->required()
      ->expected(0, 1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*c) return cmd_classify(classify, out);
    if (*v) return cmd_verify(verify, out);
    if (*s) return cmd_survey(survey_args, out, err);
    if (*f) return cmd_froberg(froberg, out);
    if (*w) return cmd_witness(witness, out);
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::DimensionCap:
        err << "error: " << e.what() << '\n';
        out << json{{"error", "DimensionCap"}, {"message", e.what()}}.dump() << '\n';
        return kExitDimensionCap;
      case ErrorCode::NonPrimeCharacteristic:
      case ErrorCode::EmptyAlgebra:
      case ErrorCode::InvalidArgument:
      case ErrorCode::InvalidLambda:
      case ErrorCode::DegreeOutOfRange:
      case ErrorCode::NotABasisElement:
        err << "error: " << e.what() << '\n';
        return kExitUsage;
      default:
        err << "error: " << e.what() << '\n';
        return kExitInternal;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace lefschetz::cli
