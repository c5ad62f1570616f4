// Release gate: one PASS/FAIL line per acceptance criterion.
//
//   acceptance            run every criterion
//   acceptance --only N   run criterion N (exit status reflects that one)
//
// Published constants below are the printed 7-decimal values; tolerances are
// the ones the release checklist pins.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rcomp/rcomp.hpp"

using namespace rcomp;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

RestrictedSeries fib(Index m) { return make_series(SequenceSpec::fibonacci(), m); }

double ratio(const mpz_class& a, const mpz_class& b) {
  if (b == 0) return std::nan("");
  return div(Real(a, 256), Real(b, 256), MPFR_RNDN).to_double();
}

// Compositions of all k <= n. Unlike c(n) this is positive as soon as n
// reaches the smallest part, so sparse part sets still show a trend.
mpz_class cumulative(const CountTable& t, std::size_t n) {
  mpz_class s = 0;
  for (std::size_t k = 0; k <= n; ++k) s += t.counts[k];
  return s;
}

// ---------------------------------------------------------------------------

Outcome table_one() {
  const auto t0 = Clock::now();
  const auto rows = build_table_fibonacci(2, 20, 1e-9);
  const double elapsed = seconds_since(t0);
  const auto dev = check_fibonacci_table(rows, 1e-6);
  std::ostringstream d;
  d << rows.size() << " rows in " << fmt("%.2f", elapsed) << " s";
  for (const auto& x : dev) d << fmt("; m=%d %s published %.7f computed %.9f", static_cast<int>(x.m), x.column.c_str(), x.expected, x.actual);
  return {rows.size() == 19 && dev.empty() && elapsed < 10.0, d.str()};
}

Outcome constants_m2() {
  const auto r = find_root(fib(2), 1e-12);
  const double g = r.gamma.to_double(), d = r.derivative_at_root.to_double(), s = r.mean_slope.to_double();
  const bool ok = std::abs(g - 0.5276126) <= 1e-6 && std::abs(d - 3.3749752) <= 1e-6 && std::abs(s - 0.5615856) <= 1e-6;
  return {ok, fmt("gamma %.10f (|diff| %.1e), S' %.10f (|diff| %.1e), mean_slope %.10f (|diff| %.1e vs 0.5615856)", g,
                  std::abs(g - 0.5276126), d, std::abs(d - 3.3749752), s, std::abs(s - 0.5615856))};
}

Outcome constants_m3() {
  const auto r = find_root(fib(3), 1e-12);
  const double g = r.gamma.to_double(), d = r.derivative_at_root.to_double(), s = r.mean_slope.to_double();
  const bool ok = std::abs(g - 0.6855205) <= 1e-6 && std::abs(d - 4.6054074) <= 1e-6 && std::abs(s - 0.3167463) <= 1e-6;
  return {ok, fmt("gamma %.10f, S' %.10f, mean_slope %.10f", g, d, s)};
}

Outcome table_two_ratios() {
  const auto spec = SequenceSpec::monomial(4);
  const auto rows = build_table_polynomial(spec, {4, 13, 22, 31}, 1e-12, {}, true);
  const auto checks = check_polynomial_table(spec, rows, 1e-12);
  const double r22 = rows[2].derived_column.to_double(), r31 = rows[3].derived_column.to_double();
  const bool ratios_ok = std::abs(r22 - 1.0000273) <= 2e-6 && std::abs(r31 - 1.0000120) <= 2e-6;
  bool shifts_flagged = checks.size() == 4;
  for (std::size_t i = 0; i < 2 && shifts_flagged; ++i) {
    shifts_flagged = !checks[i].alpha_matches && checks[i].alpha_index_shift.has_value();
  }
  std::string d = fmt("m=22 ratio %.7f (published 1.0000273), m=31 ratio %.7f (published 1.0000120)", r22, r31);
  for (const auto& c : checks) {
    d += fmt("; m=%d alpha shift %s", static_cast<int>(c.m),
             c.alpha_index_shift ? std::to_string(*c.alpha_index_shift).c_str() : "none");
  }
  return {ratios_ok && shifts_flagged, d};
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  std::vector<RestrictedSeries> cases{fib(2), fib(3), fib(4), make_series(SequenceSpec::plrs({1, 1, 1}), 1),
                                      make_series(SequenceSpec::plrs({1, 1, 1}), 2), make_series(SequenceSpec::monomial(2), 2)};
  int checked = 0;
  for (const auto& s : cases) {
    const auto t = build_count_table(s, 25);
    for (std::size_t n = 0; n <= 25; ++n, ++checked) {
      if (t.counts[n] != brute_force_count(s, n)) {
        return {false, fmt("%s n=%d: dp %s, enumeration %s", s.label().c_str(), static_cast<int>(n), t.counts[n].get_str().c_str(),
                           brute_force_count(s, n).get_str().c_str())};
      }
    }
  }
  const double elapsed = seconds_since(t0);
  return {elapsed < 60.0, fmt("%d (series, n) pairs agree in %.2f s", checked, elapsed)};
}

// Frozen from the measured decay: at n = 1000 the residual is about 1e-127
// (m = 2) and 1e-84 (m = 3) once gamma is accurate to 1e-100.
constexpr double kResidualBound = 1e-40;

Outcome residuals() {
  std::string d;
  bool ok = true;
  for (Index m : {2, 3}) {
    const auto s = fib(m);
    const auto t = build_count_table(s, 1000);
    const auto r = find_root(s, 1e-100);
    const double r100 = std::abs(asymptotic_residual(t, r, 100));
    const double r1000 = std::abs(asymptotic_residual(t, r, 1000));
    ok = ok && r1000 < r100 && r1000 < kResidualBound;
    d += fmt("%sm=%d |res(100)| %.2e |res(1000)| %.2e", d.empty() ? "" : "; ", static_cast<int>(m), r100, r1000);
  }
  return {ok, d + fmt(" (bound %.0e)", kResidualBound)};
}

Outcome mean_summands() {
  const auto t = build_count_table(fib(2), 1000);
  const double dev100 = std::abs(*stats_at(t, 100).mean_summands / 100.0 - 0.5615856);
  const double dev1000 = std::abs(*stats_at(t, 1000).mean_summands / 1000.0 - 0.5615856);
  return {dev1000 < 1e-2 && dev1000 < dev100, fmt("deviation %.3e at n=100, %.3e at n=1000", dev100, dev1000)};
}

Outcome ones_density() {
  const auto t = build_count_table(fib(2), 1000);
  const double dev100 = std::abs(*stats_at(t, 100).ones_density - 0.5276125);
  const double dev1000 = std::abs(*stats_at(t, 1000).ones_density - 0.5276125);
  return {dev1000 < 1e-2 && dev1000 < dev100, fmt("deviation %.3e at n=100, %.3e at n=1000", dev100, dev1000)};
}

std::vector<std::vector<std::uint64_t>> plrs_family() {
  std::vector<std::vector<std::uint64_t>> out;
  for (std::size_t len = 1; len <= 3; ++len) {
    for (unsigned mask = 0; mask < (1u << len); ++mask) {
      std::vector<std::uint64_t> c(len);
      for (std::size_t i = 0; i < len; ++i) c[i] = (mask >> i) & 1u ? 2 : 1;
      if (c != std::vector<std::uint64_t>{1}) out.push_back(c);
    }
  }
  return out;
}

Outcome plrs_classification() {
  int checked = 0;
  std::string failures;
  for (const auto& c : plrs_family()) {
    const auto spec = SequenceSpec::plrs(c);
    const bool is_fib = c == std::vector<std::uint64_t>{1, 1};
    for (Index m = 2; m <= 6; ++m, ++checked) {
      const auto res = classify_plrs_vs_fibonacci(spec, m);
      const Verdict expected = is_fib ? Verdict::FinitePositive : Verdict::Zero;
      // Empirical trend of the cumulative count ratio from n=200 to n=1000.
      const auto th = build_count_table(make_series(spec, m), 1000);
      const auto tf = build_count_table(fib(m), 1000);
      const double early = ratio(cumulative(th, 200), cumulative(tf, 200));
      const double late = ratio(cumulative(th, 1000), cumulative(tf, 1000));
      const bool trend_ok = is_fib ? (early == 1.0 && late == 1.0) : late < early;
      if (res.verdict() != expected || !res.agrees || !trend_ok) {
        failures += fmt(" %s@%d(%s, ratio %.3e -> %.3e)", spec.label().c_str(), static_cast<int>(m),
                        std::string(to_string(res.verdict())).c_str(), early, late);
      }
    }
  }
  if (!failures.empty()) return {false, "mismatches:" + failures};
  return {true, fmt("%d (PLRS, m) pairs; FINITE_POSITIVE only for c=[1,1]", checked)};
}

Outcome count_ratio_trends() {
  const auto th = build_count_table(make_series(SequenceSpec::plrs({1, 1, 1}), 2), 1000);
  const auto tf = build_count_table(fib(2), 1000);
  const double r200 = ratio(th.counts[200], tf.counts[200]);
  const double r1000 = ratio(th.counts[1000], tf.counts[1000]);
  const bool first = r1000 > 0 && r200 / r1000 >= 10.0;

  const auto tp = build_count_table(make_series(SequenceSpec::monomial(4), 31), 1000);
  const auto tf31 = build_count_table(fib(31), 1000);
  bool increasing = true;
  std::string samples;
  double prev = std::nan("");
  for (std::size_t n = 200; n <= 1000; n += 100) {
    const double r = ratio(tp.counts[n], tf31.counts[n]);
    samples += fmt("%s%s", samples.empty() ? "" : ",", std::isnan(r) ? "undef" : fmt("%.3g", r).c_str());
    if (std::isnan(r) || (n > 200 && !(r > prev))) increasing = false;
    prev = r;
  }
  const std::string d = fmt("c=[1,1,1]/fib at m=2 falls by %.3g from n=200 to 1000; k^4/fib at m=31 (parts >= %s and %s): %s",
                            r200 / r1000, raw_terms(SequenceSpec::monomial(4), 31, 1).front().get_str().c_str(),
                            raw_terms(SequenceSpec::fibonacci(), 31, 1).front().get_str().c_str(), samples.c_str());
  return {first && increasing, d};
}

Outcome threshold_certificate() {
  const auto p = SequenceSpec::monomial(2);
  const auto cert = fibonacci_threshold_certificate(p);
  const auto f = raw_terms(SequenceSpec::fibonacci(), 1, 213);
  const auto q = raw_terms(p, 1, 213);
  bool scan = f[cert.threshold - 2] <= q[cert.threshold - 2];
  for (Index k = 13; k <= 213; ++k) scan = scan && f[k - 1] > q[k - 1];
  // Ratio certificate: past ratio_from, P(k+1)/P(k) < 3/2 <= F_{k+1}/F_k.
  bool ratio_ok = cert.witness >= cert.ratio_from && cert.witness <= 213;
  for (Index k = cert.ratio_from; k < 213; ++k) {
    ratio_ok = ratio_ok && 2 * q[k] < 3 * q[k - 1] && 2 * f[k] >= 3 * f[k - 1];
  }
  const auto out = outpacing_index(SequenceSpec::fibonacci(), p, 200);
  const bool ok = cert.threshold == 13 && scan && ratio_ok && out == std::optional<Index>(13);
  return {ok, fmt("threshold %d (ratio bound from %d, witness %d), outpace %s", static_cast<int>(cert.threshold),
                  static_cast<int>(cert.ratio_from), static_cast<int>(cert.witness), out ? std::to_string(*out).c_str() : "none")};
}

Outcome root_monotonicity() {
  struct Case {
    SequenceSpec spec;
    Index from, to;
  };
  const std::vector<Case> cases{{SequenceSpec::fibonacci(), 2, 25}, {SequenceSpec::plrs({1, 1, 1}), 1, 20},
                                {SequenceSpec::plrs({2}), 1, 15}, {SequenceSpec::monomial(2), 1, 30},
                                {SequenceSpec::monomial(4), 1, 31}};
  for (const auto& c : cases) {
    const auto roots = root_sequence(c.spec, c.from, c.to, 1e-12);
    for (std::size_t i = 1; i < roots.size(); ++i) {
      const bool up = roots[i - 1].gamma_upper() < roots[i].gamma_lower();
      const bool gap_down = one_minus(roots[i].gamma, MPFR_RNDN) < one_minus(roots[i - 1].gamma, MPFR_RNDN);
      if (!up || !gap_down) return {false, fmt("%s not increasing at m=%d", c.spec.label().c_str(), static_cast<int>(c.from + i))};
    }
  }
  const auto trib = root_sequence(SequenceSpec::plrs({1, 1, 1}), 2, 20, 1e-15);
  const auto alpha = root_sequence(SequenceSpec::fibonacci(), 2, 20, 1e-15);
  double prev_gap = 1;
  for (std::size_t i = 0; i < trib.size(); ++i) {
    const double r = div(alpha[i].gamma, trib[i].gamma, MPFR_RNDN).to_double();
    if (!(r < 1.0) || !(1.0 - r < prev_gap)) return {false, fmt("alpha/gamma_H not moving toward 1 at m=%d (%.8f)", static_cast<int>(i + 2), r)};
    prev_gap = 1.0 - r;
  }
  const double first = div(alpha.front().gamma, trib.front().gamma, MPFR_RNDN).to_double();
  const double last = div(alpha.back().gamma, trib.back().gamma, MPFR_RNDN).to_double();
  return {true, fmt("%d specs strictly increasing; alpha_m/gamma_H from %.5f (m=2) to %.5f (m=20)", static_cast<int>(cases.size()), first, last)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> check;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "Fibonacci root table m=2..20 within 1e-6", table_one},
      {2, "Fibonacci m=2 root, S', mean slope within 1e-6", constants_m2},
      {3, "Fibonacci m=3 root, S', mean slope within 1e-6", constants_m3},
      {4, "k^4 ratio column at m=22, 31 within 2e-6; index shift flagged", table_two_ratios},
      {5, "count recurrence equals enumeration for n <= 25", oracle_equivalence},
      {6, "asymptotic residual shrinks, small at n=1000", residuals},
      {7, "mean summands per unit converge to the mean slope", mean_summands},
      {8, "density of ones converges to the root", ones_density},
      {9, "PLRS versus Fibonacci classification, depth <= 3", plrs_classification},
      {10, "count ratio trends", count_ratio_trends},
      {11, "k^2 threshold certificate", threshold_certificate},
      {12, "roots increase in m; alpha_m/gamma_H tends to 1", root_monotonicity},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--only N]\n");
      return 2;
    }
  }
  int failed = 0, ran = 0;
  for (const auto& c : criteria()) {
    if (only && c.id != only) continue;
    ++ran;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  criterion %2d  %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return failed ? 1 : 0;
}
