#pragma once

// Command-line front end. Kept in a header so the test suite can drive it
// in-process; tools/rcomp.cpp only wires up argv and the real environment.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rcomp/rcomp.hpp"

namespace rcomp::cli {

using json = nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kNumerical = 3,
  kDomain = 4,
};

enum class OutputFormat { Plain, Csv, Json };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "plain") return OutputFormat::Plain;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw Error(ErrorCode::ParseError, "unknown output format '" + s + "' (expected plain, csv or json)");
}

struct CliConfig {
  double abs_tol = 1e-9;
  Bits precision_cap_bits = 512;
  std::size_t table_limit = kDefaultTableLimit;
  OutputFormat output_format = OutputFormat::Plain;
  std::size_t memory_budget_bytes = kDefaultMemoryBudget;
};

inline constexpr const char* kEnvPrefix = "RCOMP_";

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

inline std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

namespace detail {

inline std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  if (!(in >> out) || !(in >> std::ws).eof()) throw Error(ErrorCode::ParseError, "bad value for " + key + ": '" + value + "'");
  return out;
}

inline void apply_setting(CliConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "abs_tol") {
    cfg.abs_tol = parse_number<double>(key, value);
  } else if (key == "precision_cap_bits") {
    cfg.precision_cap_bits = parse_number<long>(key, value);
  } else if (key == "table_limit") {
    cfg.table_limit = parse_number<std::size_t>(key, value);
  } else if (key == "output_format") {
    cfg.output_format = parse_format(value);
  } else if (key == "memory_budget_bytes") {
    cfg.memory_budget_bytes = parse_number<std::size_t>(key, value);
  } else {
    throw Error(ErrorCode::ParseError, "unknown config key '" + key + "'");
  }
}

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{"abs_tol", "precision_cap_bits", "table_limit", "output_format",
                                             "memory_budget_bytes"};
  return keys;
}

inline std::string env_name(const std::string& key) {
  std::string out = kEnvPrefix;
  for (char c : key) out += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

inline void validate(const CliConfig& cfg) {
  if (!(cfg.abs_tol > 0) || !(cfg.abs_tol < 0.5)) throw Error(ErrorCode::ParseError, "abs_tol must lie in (0, 0.5)");
  if (cfg.precision_cap_bits < 64) throw Error(ErrorCode::ParseError, "precision_cap_bits must be at least 64");
  if (cfg.table_limit == 0) throw Error(ErrorCode::ParseError, "table_limit must be positive");
  if (cfg.memory_budget_bytes == 0) throw Error(ErrorCode::ParseError, "memory_budget_bytes must be positive");
}

}  // namespace detail

/// Flat `key = value` lines; `#` starts a comment; unknown keys are errors.
inline void apply_config_file(CliConfig& cfg, std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "config line " + std::to_string(lineno) + ": expected key = value");
    detail::apply_setting(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
}

/// Defaults < config file < environment < flags.
inline CliConfig resolve_config(const std::optional<std::string>& config_path, const EnvLookup& env,
                                const std::map<std::string, std::string>& flags) {
  CliConfig cfg;
  std::optional<std::string> path = config_path;
  if (!path) path = env(std::string(kEnvPrefix) + "CONFIG");
  if (path) {
    std::ifstream in(*path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read config file '" + *path + "'");
    apply_config_file(cfg, in);
  }
  for (const auto& key : detail::config_keys()) {
    if (auto v = env(detail::env_name(key))) detail::apply_setting(cfg, key, *v);
  }
  for (const auto& [key, value] : flags) detail::apply_setting(cfg, key, value);
  detail::validate(cfg);
  return cfg;
}

// Rendering. CSV and plain use 7-decimal fixed point (ties to even); JSON
// uses doubles with round-trip precision.

inline std::string fixed7(const Real& v) { return v.to_fixed(7); }

inline std::string fixed7(double v) { return Real(v, 64).to_fixed(7); }

inline json root_to_json(const RootAnalysis& r) {
  return json{{"sequence", r.series.spec.label()},
              {"m", r.series.cut_index},
              {"gamma", r.gamma.to_double()},
              {"one_minus_gamma", one_minus(r.gamma, MPFR_RNDN).to_double()},
              {"gamma_error", r.gamma_error},
              {"derivative_at_root", r.derivative_at_root.to_double()},
              {"count_constant", r.count_constant.to_double()},
              {"mean_slope", r.mean_slope.to_double()},
              {"precision", r.precision}};
}

inline RootAnalysis root_from_json(const json& j) {
  const Bits p = j.at("precision").get<Bits>();
  const auto series = make_series(parse_sequence_spec(j.at("sequence").get<std::string>()), j.at("m").get<Index>());
  Real gamma = j.contains("one_minus_gamma") ? one_minus(Real(j.at("one_minus_gamma").get<double>(), p), MPFR_RNDN)
                                             : Real(j.at("gamma").get<double>(), p);
  return RootAnalysis{series,
                      std::move(gamma),
                      j.at("gamma_error").get<double>(),
                      Real(j.at("derivative_at_root").get<double>(), p),
                      Real(j.at("count_constant").get<double>(), p),
                      Real(j.at("mean_slope").get<double>(), p),
                      p};
}

inline json row_to_json(const TableRow& row) {
  json j{{"m", row.m},
         {"sequence_label", row.sequence_label},
         {"smallest_part", row.smallest_part.get_str()},
         {"gamma", row.gamma.to_double()},
         {"gamma_error", row.gamma_error},
         {"companion_gamma", nullptr},
         {"companion_error", nullptr},
         {"derived_column", row.derived_column.to_double()}};
  if (row.companion_gamma) j["companion_gamma"] = row.companion_gamma->to_double();
  if (row.companion_error) j["companion_error"] = *row.companion_error;
  return j;
}

inline TableRow row_from_json(const json& j) {
  TableRow row{j.at("m").get<Index>(),
               j.at("sequence_label").get<std::string>(),
               mpz_class(j.at("smallest_part").get<std::string>(), 10),
               Real(j.at("gamma").get<double>(), 64),
               j.at("gamma_error").get<double>(),
               std::nullopt,
               std::nullopt,
               Real(j.at("derived_column").get<double>(), 64)};
  if (!j.at("companion_gamma").is_null()) row.companion_gamma = Real(j.at("companion_gamma").get<double>(), 64);
  if (!j.at("companion_error").is_null()) row.companion_error = j.at("companion_error").get<double>();
  return row;
}

inline json stats_to_json(const RestrictedSeries& series, const CompositionStats& s) {
  json j{{"sequence", series.spec.label()}, {"m", series.cut_index}, {"n", s.n}, {"count", s.count.get_str()},
         {"mean_summands", nullptr}, {"ones_density", nullptr}};
  if (s.mean_summands) j["mean_summands"] = *s.mean_summands;
  if (s.ones_density) j["ones_density"] = *s.ones_density;
  return j;
}

inline CompositionStats stats_from_json(const json& j) {
  CompositionStats s{j.at("n").get<std::size_t>(), mpz_class(j.at("count").get<std::string>(), 10), std::nullopt, std::nullopt};
  if (!j.at("mean_summands").is_null()) s.mean_summands = j.at("mean_summands").get<double>();
  if (!j.at("ones_density").is_null()) s.ones_density = j.at("ones_density").get<double>();
  return s;
}

inline json classification_to_json(const RatioClassification& c) {
  json j{{"numerator", c.numerator.spec.label()},
         {"numerator_m", c.numerator.cut_index},
         {"denominator", c.denominator.spec.label()},
         {"denominator_m", c.denominator.cut_index},
         {"verdict", std::string(to_string(c.verdict))},
         {"root_ratio", c.root_ratio.to_double()},
         {"root_ratio_minus_one", sub(c.root_ratio, Real(1.0, c.root_ratio.precision()), MPFR_RNDN).to_double()},
         {"certified_margin", c.certified_margin},
         {"numerator_gamma", nullptr},
         {"denominator_gamma", nullptr}};
  if (c.numerator_root) j["numerator_gamma"] = c.numerator_root->gamma.to_double();
  if (c.denominator_root) j["denominator_gamma"] = c.denominator_root->gamma.to_double();
  return j;
}

inline RatioClassification classification_from_json(const json& j) {
  const Real minus_one(j.at("root_ratio_minus_one").get<double>(), 128);
  return RatioClassification{make_series(parse_sequence_spec(j.at("numerator").get<std::string>()), j.at("numerator_m").get<Index>()),
                             make_series(parse_sequence_spec(j.at("denominator").get<std::string>()), j.at("denominator_m").get<Index>()),
                             parse_verdict(j.at("verdict").get<std::string>()),
                             add(minus_one, Real(1.0, 128), MPFR_RNDN),
                             j.at("certified_margin").get<double>(),
                             std::nullopt,
                             std::nullopt};
}

namespace detail {

// Ordered key/value record rendered in any of the three formats.
using Record = std::vector<std::pair<std::string, std::string>>;

// RFC 4180 quoting; polynomial labels contain commas.
inline std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline void emit_records(std::ostream& out, OutputFormat fmt, const std::vector<Record>& records,
                         const std::vector<json>& json_records) {
  switch (fmt) {
    case OutputFormat::Json:
      for (const auto& j : json_records) out << j.dump() << "\n";
      return;
    case OutputFormat::Csv:
      if (records.empty()) return;
      for (std::size_t i = 0; i < records.front().size(); ++i) out << (i ? "," : "") << records.front()[i].first;
      out << "\n";
      for (const auto& r : records) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_field(r[i].second);
        out << "\n";
      }
      return;
    case OutputFormat::Plain:
      for (std::size_t k = 0; k < records.size(); ++k) {
        if (k) out << "\n";
        for (const auto& [key, value] : records[k]) out << key << ": " << (value.empty() ? "null" : value) << "\n";
      }
      return;
  }
}

inline std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

inline Record root_record(const RootAnalysis& r) {
  return {{"sequence", r.series.spec.label()},
          {"m", std::to_string(r.series.cut_index)},
          {"gamma", fixed7(r.gamma)},
          {"gamma_error", sci(r.gamma_error)},
          {"derivative_at_root", fixed7(r.derivative_at_root)},
          {"count_constant", fixed7(r.count_constant)},
          {"mean_slope", fixed7(r.mean_slope)}};
}

inline Record row_record(const TableRow& row) {
  return {{"m", std::to_string(row.m)},
          {"sequence_label", row.sequence_label},
          {"smallest_part", row.smallest_part.get_str()},
          {"gamma", fixed7(row.gamma)},
          {"companion_gamma", row.companion_gamma ? fixed7(*row.companion_gamma) : ""},
          {"derived_column", fixed7(row.derived_column)}};
}

inline int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidSpec:
      return kUsage;
    case ErrorCode::Indeterminate:
    case ErrorCode::PrecisionExhausted:
    case ErrorCode::TailNotConverged:
      return kNumerical;
    default:
      return kDomain;
  }
}

inline Index parse_index(const std::string& what, const std::string& text) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (text.empty() || pos != text.size() || text[0] == '-') {
    throw Error(ErrorCode::ParseError, what + " must be a non-negative integer, got '" + text + "'");
  }
  return v;
}

inline std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_index("m", item));
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty m list");
  return out;
}

}  // namespace detail

/// Runs one invocation; returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env = process_env) {
  CLI::App app{"Asymptotics of compositions with restricted Fibonacci, PLRS and polynomial parts", "rcomp"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> tol_flag, format_flag, limit_flag, cap_flag, budget_flag, config_flag;
  bool check_paper = false;
  bool parallel = false;
  app.add_option("--tol", tol_flag, "absolute tolerance for roots (default 1e-9)");
  app.add_option("--format", format_flag, "plain | csv | json");
  app.add_option("--limit", limit_flag, "largest n the count command tabulates (default 2000)");
  app.add_option("--precision-cap", cap_flag, "maximum working precision in bits (default 512)");
  app.add_option("--memory-budget", budget_flag, "byte budget for count tables");
  app.add_option("--config", config_flag, "flat key = value config file");
  app.add_flag("--check-paper", check_paper, "compare table output with the published values");
  app.add_flag("--parallel", parallel, "build table rows on several threads");

  std::string seq, seq2, which, m_text, n_text, extra;
  std::vector<std::string> table_args;
  std::optional<std::string> table_file;

  auto* root_cmd = app.add_subcommand("root", "root gamma_m of sum_{i>=m} x^{H_i} = 1 and asymptotic constants");
  root_cmd->add_option("seq", seq, "sequence spec: fib | plrs:c1,...,cL | poly:a_s,...,a_0 | k<d>")->required();
  root_cmd->add_option("m", m_text, "cut index")->required();

  auto* count_cmd = app.add_subcommand("count", "exact composition count and summand statistics at n");
  count_cmd->add_option("seq", seq, "sequence spec")->required();
  count_cmd->add_option("m", m_text, "cut index")->required();
  count_cmd->add_option("n", n_text, "integer to compose")->required();
  count_cmd->add_option("--table-file", table_file, "load/extend/save the count table at this path");

  auto* table_cmd = app.add_subcommand("table", "regenerate a root table: `table fib M_FROM M_TO` or `table poly SPEC M1,M2,...`");
  table_cmd->add_option("which", which, "fib | poly")->required();
  table_cmd->add_option("args", table_args, "range or polynomial and m list")->required();

  auto* compare_cmd = app.add_subcommand("compare", "classify lim c_num(n)/c_den(n)");
  compare_cmd->add_option("num", seq, "numerator spec")->required();
  compare_cmd->add_option("m", m_text, "cut index (both sequences)")->required();
  compare_cmd->add_option("den", seq2, "denominator spec")->required();

  auto* threshold_cmd = app.add_subcommand("threshold", "smallest m with F_k > P(k) for all k >= m");
  threshold_cmd->add_option("poly", seq, "polynomial spec")->required();

  auto* outpace_cmd = app.add_subcommand("outpace", "smallest n with A_k > B_k on [n, horizon]");
  outpace_cmd->add_option("a", seq, "first spec")->required();
  outpace_cmd->add_option("b", seq2, "second spec")->required();
  outpace_cmd->add_option("horizon", n_text, "last index checked")->required();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    std::map<std::string, std::string> flags;
    if (tol_flag) flags["abs_tol"] = *tol_flag;
    if (format_flag) flags["output_format"] = *format_flag;
    if (limit_flag) flags["table_limit"] = *limit_flag;
    if (cap_flag) flags["precision_cap_bits"] = *cap_flag;
    if (budget_flag) flags["memory_budget_bytes"] = *budget_flag;
    const CliConfig cfg = resolve_config(config_flag, env, flags);
    const RootOptions opts{kDefaultPrecision, cfg.precision_cap_bits};
    const OutputFormat fmt = cfg.output_format;

    if (*root_cmd) {
      const auto series = make_series(parse_sequence_spec(seq), detail::parse_index("m", m_text));
      const RootAnalysis r = find_root(series, cfg.abs_tol, opts);
      detail::emit_records(out, fmt, {detail::root_record(r)}, {root_to_json(r)});
      return kOk;
    }

    if (*count_cmd) {
      const auto series = make_series(parse_sequence_spec(seq), detail::parse_index("m", m_text));
      const std::size_t n = detail::parse_index("n", n_text);
      if (n > cfg.table_limit) {
        throw Error(ErrorCode::NTooLarge, "n=" + std::to_string(n) + " exceeds table_limit " + std::to_string(cfg.table_limit));
      }
      CountTable table{series, 0, {}, {}, {}};
      if (table_file && std::filesystem::exists(*table_file)) {
        std::ifstream in(*table_file);
        table = load_count_table(in);
        if (!(table.series == series)) {
          throw Error(ErrorCode::MismatchedSeries, "table file holds " + table.series.label() + ", not " + series.label());
        }
      }
      const bool grew = table.counts.empty() || table.limit < n;
      extend_count_table(table, std::max(n, table.limit), cfg.memory_budget_bytes);
      if (table_file && grew) {
        std::ofstream o(*table_file);
        save_count_table(table, o);
      }
      CompositionStats stats{n, table.counts[n], std::nullopt, std::nullopt};
      if (table.counts[n] != 0) stats = stats_at(table, n);
      const detail::Record rec{{"sequence", series.spec.label()},
                               {"m", std::to_string(series.cut_index)},
                               {"n", std::to_string(n)},
                               {"count", stats.count.get_str()},
                               {"mean_summands", stats.mean_summands ? fixed7(*stats.mean_summands) : ""},
                               {"ones_density", stats.ones_density ? fixed7(*stats.ones_density) : ""}};
      detail::emit_records(out, fmt, {rec}, {stats_to_json(series, stats)});
      return kOk;
    }

    if (*table_cmd) {
      if (which == "fib") {
        if (table_args.size() != 2) throw Error(ErrorCode::ParseError, "usage: table fib M_FROM M_TO");
        const auto rows = build_table_fibonacci(detail::parse_index("m_from", table_args[0]),
                                                detail::parse_index("m_to", table_args[1]), cfg.abs_tol, opts, parallel);
        std::vector<detail::Record> recs;
        std::vector<json> js;
        for (const auto& row : rows) {
          recs.push_back(detail::row_record(row));
          js.push_back(row_to_json(row));
        }
        detail::emit_records(out, fmt, recs, js);
        if (check_paper) {
          const auto dev = check_fibonacci_table(rows);
          for (const auto& d : dev) {
            err << "deviation m=" << d.m << " " << d.column << ": published " << fixed7(d.expected) << ", computed "
                << Real(d.actual, 64).to_fixed(9) << " (|diff| > " << kFibonacciTableTolerance << ")\n";
          }
          if (!dev.empty()) return kCheckFailed;
          err << "all rows within " << kFibonacciTableTolerance << " of the published table\n";
        }
        return kOk;
      }
      if (which == "poly") {
        if (table_args.size() != 2) throw Error(ErrorCode::ParseError, "usage: table poly SPEC M1,M2,...");
        const SequenceSpec spec = parse_sequence_spec(table_args[0]);
        const auto ms = detail::parse_index_list(table_args[1]);
        const auto rows = build_table_polynomial(spec, ms, cfg.abs_tol, opts, parallel);
        std::vector<detail::Record> recs;
        std::vector<json> js;
        std::vector<PolynomialRowCheck> checks;
        if (check_paper) checks = check_polynomial_table(spec, rows, cfg.abs_tol, opts);
        for (const auto& row : rows) {
          detail::Record rec = detail::row_record(row);
          json j = row_to_json(row);
          if (check_paper) {
            const PolynomialRowCheck* c = nullptr;
            for (const auto& cand : checks) {
              if (cand.m == row.m) c = &cand;
            }
            auto field = [&](const std::string& key, std::optional<std::string> v, json jv) {
              rec.emplace_back(key, v.value_or(""));
              j[key] = v ? jv : json(nullptr);
            };
            field("paper_alpha", c ? std::optional(fixed7(c->reference.alpha)) : std::nullopt, c ? json(c->reference.alpha) : json());
            field("paper_gamma", c ? std::optional(fixed7(c->reference.gamma_p)) : std::nullopt, c ? json(c->reference.gamma_p) : json());
            field("paper_ratio", c ? std::optional(fixed7(c->reference.ratio)) : std::nullopt, c ? json(c->reference.ratio) : json());
            const bool discrepancy = c && !(c->alpha_matches && c->gamma_matches && c->ratio_matches);
            field("discrepancy", c ? std::optional(std::string(discrepancy ? "true" : "false")) : std::nullopt, json(discrepancy));
            const bool shifted = c && c->alpha_index_shift.has_value();
            field("alpha_index_shift", shifted ? std::optional(std::to_string(*c->alpha_index_shift)) : std::nullopt,
                  shifted ? json(*c->alpha_index_shift) : json());
            if (discrepancy) {
              err << "discrepancy m=" << row.m << " " << spec.label() << ": published alpha/gamma/ratio "
                  << fixed7(c->reference.alpha) << "/" << fixed7(c->reference.gamma_p) << "/" << fixed7(c->reference.ratio)
                  << ", recomputed " << fixed7(*row.companion_gamma) << "/" << fixed7(row.gamma) << "/"
                  << fixed7(row.derived_column);
              if (shifted) err << " (published alpha matches recomputed alpha at m" << std::showpos << *c->alpha_index_shift << std::noshowpos << ")";
              err << "\n";
            }
          }
          recs.push_back(std::move(rec));
          js.push_back(std::move(j));
        }
        detail::emit_records(out, fmt, recs, js);
        return kOk;
      }
      throw Error(ErrorCode::ParseError, "table kind must be 'fib' or 'poly', got '" + which + "'");
    }

    if (*compare_cmd) {
      const Index m = detail::parse_index("m", m_text);
      const auto num = make_series(parse_sequence_spec(seq), m);
      const auto den = make_series(parse_sequence_spec(seq2), m);
      const RatioClassification c = classify_ratio_refining(num, den, cfg.abs_tol, opts);
      const detail::Record rec{{"numerator", num.label()},
                               {"denominator", den.label()},
                               {"verdict", std::string(to_string(c.verdict))},
                               {"root_ratio", fixed7(c.root_ratio)},
                               {"certified_margin", detail::sci(c.certified_margin)},
                               {"numerator_gamma", c.numerator_root ? fixed7(c.numerator_root->gamma) : ""},
                               {"denominator_gamma", c.denominator_root ? fixed7(c.denominator_root->gamma) : ""}};
      detail::emit_records(out, fmt, {rec}, {classification_to_json(c)});
      return kOk;
    }

    if (*threshold_cmd) {
      const SequenceSpec spec = parse_sequence_spec(seq);
      const ThresholdCertificate cert = fibonacci_threshold_certificate(spec);
      const detail::Record rec{{"polynomial", spec.label()},
                               {"threshold", std::to_string(cert.threshold)},
                               {"ratio_from", std::to_string(cert.ratio_from)},
                               {"witness", std::to_string(cert.witness)}};
      detail::emit_records(out, fmt, {rec},
                           {json{{"polynomial", spec.label()}, {"threshold", cert.threshold}, {"ratio_from", cert.ratio_from}, {"witness", cert.witness}}});
      return kOk;
    }

    if (*outpace_cmd) {
      const SequenceSpec a = parse_sequence_spec(seq);
      const SequenceSpec b = parse_sequence_spec(seq2);
      const Index horizon = detail::parse_index("horizon", n_text);
      const auto idx = outpacing_index(a, b, horizon);
      const detail::Record rec{{"a", a.label()}, {"b", b.label()}, {"horizon", std::to_string(horizon)},
                               {"index", idx ? std::to_string(*idx) : std::string("none")}};
      detail::emit_records(out, fmt, {rec},
                           {json{{"a", a.label()}, {"b", b.label()}, {"horizon", horizon}, {"index", idx ? json(*idx) : json(nullptr)}}});
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return detail::exit_code_for(e);
  }
  return kUsage;
}

}  // namespace rcomp::cli
