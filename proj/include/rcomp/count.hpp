#pragma once

// Exact composition counts for restricted part sets: the big-integer oracle
// behind every asymptotic statement.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rcomp/error.hpp"
#include "rcomp/real.hpp"
#include "rcomp/sequence.hpp"
#include "rcomp/series.hpp"

namespace rcomp {

inline constexpr std::size_t kDefaultTableLimit = 2000;
inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{1} << 30;
inline constexpr std::size_t kBruteForceMaxN = 30;

/// c(n): compositions of n, w(n): summands summed over all of them, u(n):
/// summands equal to 1 summed over all of them.
struct CountTable {
  RestrictedSeries series;
  std::size_t limit = 0;
  std::vector<mpz_class> counts;
  std::vector<mpz_class> summand_totals;
  std::vector<mpz_class> ones_totals;
};

/// Allowed parts {H_i : i >= m} not exceeding `limit`, ascending.
inline std::vector<std::size_t> parts_up_to(const RestrictedSeries& series, std::size_t limit) {
  std::vector<std::size_t> parts;
  for (TermCursor cur(series.spec, series.cut_index); cur.value() <= limit; cur.advance()) {
    parts.push_back(cur.value().get_ui());
  }
  return parts;
}

/// Upper estimate of table memory: every entry is below 2^n * n, so three
/// arrays need about 3 * sum_n (n/8 + 32) bytes.
inline std::size_t estimated_table_bytes(std::size_t limit) {
  const double n = static_cast<double>(limit) + 1;
  const double bytes = 3.0 * (n * n / 16.0 + 32.0 * n);
  return bytes > 1e19 ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(bytes);
}

/// Grows `table` to `new_limit` with the ordered-sum recurrences
///   c(n) = sum_p c(n-p),  w(n) = sum_p (w(n-p) + c(n-p)),
///   u(n) = sum_p (u(n-p) + [p = 1] c(n-p)).
inline void extend_count_table(CountTable& table, std::size_t new_limit,
                               std::size_t memory_budget = kDefaultMemoryBudget) {
  if (estimated_table_bytes(new_limit) > memory_budget) {
    throw Error(ErrorCode::LimitTooLarge, "table up to n=" + std::to_string(new_limit) + " needs about " +
                                              std::to_string(estimated_table_bytes(new_limit)) +
                                              " bytes, budget is " + std::to_string(memory_budget));
  }
  if (table.counts.empty()) {
    table.counts.emplace_back(1);
    table.summand_totals.emplace_back(0);
    table.ones_totals.emplace_back(0);
    table.limit = 0;
  }
  if (new_limit <= table.limit) return;
  const auto parts = parts_up_to(table.series, new_limit);
  auto& c = table.counts;
  auto& w = table.summand_totals;
  auto& u = table.ones_totals;
  c.reserve(new_limit + 1);
  w.reserve(new_limit + 1);
  u.reserve(new_limit + 1);
  for (std::size_t n = table.limit + 1; n <= new_limit; ++n) {
    mpz_class cn = 0, wn = 0, un = 0;
    for (const std::size_t p : parts) {
      if (p > n) break;
      const std::size_t r = n - p;
      cn += c[r];
      wn += w[r];
      wn += c[r];
      un += u[r];
      if (p == 1) un += c[r];
    }
    c.push_back(std::move(cn));
    w.push_back(std::move(wn));
    u.push_back(std::move(un));
  }
  table.limit = new_limit;
}

inline CountTable build_count_table(const RestrictedSeries& series, std::size_t limit,
                                    std::size_t memory_budget = kDefaultMemoryBudget) {
  CountTable table{series, 0, {}, {}, {}};
  extend_count_table(table, limit, memory_budget);
  return table;
}

/// Statistics of a uniformly random composition of n.
struct CompositionStats {
  std::size_t n = 0;
  mpz_class count;
  std::optional<double> mean_summands;  // w(n)/c(n); absent for n = 0
  std::optional<double> ones_density;   // u(n)/w(n); absent when w(n) = 0
};

namespace detail {

// Correctly rounded a/b as a double.
inline double ratio_to_double(const mpz_class& a, const mpz_class& b) {
  Real num(a, 128), den(b, 128);
  return div(num, den, MPFR_RNDN).to_double();
}

}  // namespace detail

inline CompositionStats stats_at(const CountTable& table, std::size_t n) {
  if (n > table.limit) throw Error(ErrorCode::NTooLarge, "n=" + std::to_string(n) + " exceeds table limit " + std::to_string(table.limit));
  const mpz_class& c = table.counts[n];
  if (c == 0) throw Error(ErrorCode::NoCompositions, "no compositions of " + std::to_string(n) + " with parts from " + table.series.label());
  CompositionStats stats{n, c, std::nullopt, std::nullopt};
  const mpz_class& w = table.summand_totals[n];
  if (n > 0) stats.mean_summands = detail::ratio_to_double(w, c);
  if (w > 0) stats.ones_density = detail::ratio_to_double(table.ones_totals[n], w);
  return stats;
}

/// Counts ordered part sequences summing to n by explicit depth-first
/// enumeration; independent of the recurrence in build_count_table.
inline mpz_class brute_force_count(const RestrictedSeries& series, std::size_t n) {
  if (n > kBruteForceMaxN) {
    throw Error(ErrorCode::NTooLarge, "brute force enumeration is limited to n <= " + std::to_string(kBruteForceMaxN));
  }
  std::vector<std::size_t> parts;
  for (TermCursor cur(series.spec, series.cut_index); cur.value() <= n; cur.advance()) parts.push_back(cur.value().get_ui());

  mpz_class leaves = 0;
  std::function<void(std::size_t)> walk = [&](std::size_t remaining) {
    if (remaining == 0) {
      ++leaves;
      return;
    }
    for (const std::size_t p : parts) {
      if (p > remaining) break;
      walk(remaining - p);
    }
  };
  walk(n);
  return leaves;
}

/// c(n) gamma^{n+1} S'(gamma) - 1, which tends to 0 as n grows.
inline double asymptotic_residual(const CountTable& table, const RootAnalysis& analysis, std::size_t n) {
  if (!(table.series == analysis.series)) {
    throw Error(ErrorCode::MismatchedSeries, "table is for " + table.series.label() + ", root for " + analysis.series.label());
  }
  if (n > table.limit) throw Error(ErrorCode::NTooLarge, "n=" + std::to_string(n) + " exceeds table limit " + std::to_string(table.limit));
  const Bits p = analysis.gamma.precision() + 64;
  const Real gamma = analysis.gamma.with_precision(p);
  Real value = pow(gamma, mpz_class(static_cast<unsigned long>(n + 1)), MPFR_RNDN);
  value = mul(value, table.counts[n], MPFR_RNDN);
  value = mul(value, analysis.derivative_at_root.with_precision(p), MPFR_RNDN);
  return sub(value, Real(1.0, p), MPFR_RNDN).to_double();
}

// Text persistence, one record per n:
//
//   rcomp-count-table 1
//   series <spec-label> <cut-index>
//   limit <N>
//   <n> <c(n)> <w(n)> <u(n)>      (N + 1 lines, n = 0..N, decimal integers)
//
// Readers accept any file whose major version is 1.

inline constexpr int kTableFormatMajor = 1;

inline void save_count_table(const CountTable& table, std::ostream& out) {
  out << "rcomp-count-table " << kTableFormatMajor << "\n";
  out << "series " << table.series.spec.label() << " " << table.series.cut_index << "\n";
  out << "limit " << table.limit << "\n";
  for (std::size_t n = 0; n <= table.limit && n < table.counts.size(); ++n) {
    out << n << " " << table.counts[n].get_str() << " " << table.summand_totals[n].get_str() << " "
        << table.ones_totals[n].get_str() << "\n";
  }
}

inline CountTable load_count_table(std::istream& in) {
  auto fail = [](const std::string& why) -> Error { return Error(ErrorCode::ParseError, "count table: " + why); };
  std::string magic, key, label;
  int major = 0;
  if (!(in >> magic >> major) || magic != "rcomp-count-table") throw fail("missing header");
  if (major != kTableFormatMajor) throw fail("unsupported format version " + std::to_string(major));
  Index cut = 0;
  if (!(in >> key >> label >> cut) || key != "series") throw fail("missing series line");
  std::size_t limit = 0;
  if (!(in >> key >> limit) || key != "limit") throw fail("missing limit line");

  CountTable table{make_series(parse_sequence_spec(label), cut), limit, {}, {}, {}};
  table.counts.reserve(limit + 1);
  for (std::size_t n = 0; n <= limit; ++n) {
    std::size_t index = 0;
    std::string c, w, u;
    if (!(in >> index >> c >> w >> u)) throw fail("truncated at record " + std::to_string(n));
    if (index != n) throw fail("record " + std::to_string(n) + " is labelled " + std::to_string(index));
    try {
      table.counts.emplace_back(c, 10);
      table.summand_totals.emplace_back(w, 10);
      table.ones_totals.emplace_back(u, 10);
    } catch (const std::invalid_argument&) {
      throw fail("bad integer in record " + std::to_string(n));
    }
  }
  return table;
}

}  // namespace rcomp
