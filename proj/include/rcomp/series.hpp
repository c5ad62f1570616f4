#pragma once

// Certified evaluation of S_m(x) = sum_{i>=m} x^{H_i} and S_m'(x) on (0, 1),
// and the root of S_m(x) = 1 with the constants of the composition
// asymptotics c(n) ~ gamma^{-n-1} / S_m'(gamma).

#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <optional>
#include <thread>
#include <vector>

#include "rcomp/error.hpp"
#include "rcomp/real.hpp"
#include "rcomp/sequence.hpp"

namespace rcomp {

inline constexpr std::size_t kMaxSeriesTerms = 1'000'000;

/// A sequence with its first cut_index - 1 terms removed.
struct RestrictedSeries {
  SequenceSpec spec;
  Index cut_index;

  std::string label() const { return spec.label() + "@" + std::to_string(cut_index); }

  friend bool operator==(const RestrictedSeries& a, const RestrictedSeries& b) {
    return a.cut_index == b.cut_index && a.spec == b.spec;
  }
};

/// Validates the cut index against the sequence (2 for Fibonacci, 1 for PLRS,
/// the first positive strictly increasing index for polynomials).
inline RestrictedSeries make_series(const SequenceSpec& spec, Index cut_index) {
  const Index floor = min_admissible_index(spec);
  if (cut_index < floor) {
    throw Error(ErrorCode::InadmissibleIndex, "cut index " + std::to_string(cut_index) + " is below " +
                                                  std::to_string(floor) + " for " + spec.label());
  }
  return RestrictedSeries{spec, cut_index};
}

/// Closed interval known to contain a real quantity.
struct CertifiedValue {
  Real lower;
  Real upper;

  Real midpoint() const {
    Real m = add(lower, upper, MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m;
  }
  Real width() const { return sub(upper, lower, MPFR_RNDU); }
  bool contains(const Real& v) const { return lower <= v && v <= upper; }
};

namespace detail {

inline Real checked_point(const Real& x, double abs_tol) {
  if (!(x > 0.0) || !(x < 1.0)) throw Error(ErrorCode::XOutOfRange, "x must lie in (0, 1), got " + x.to_scientific(6));
  const Bits p = std::max(x.precision(), bits_for_tolerance(abs_tol, 24));
  return x.with_precision(p);
}

}  // namespace detail

/// Encloses S_m(x). The partial sum through index I is rounded down for the
/// lower end; the upper end adds the geometric tail sum_{j>H_I} x^j =
/// x^{H_I+1}/(1-x), which dominates the true tail because exponents are
/// distinct integers. Summation stops once that tail is below abs_tol.
inline CertifiedValue evaluate_series(const RestrictedSeries& series, const Real& x_in, double abs_tol,
                                      std::size_t max_terms = kMaxSeriesTerms) {
  const Real x = detail::checked_point(x_in, abs_tol);
  const Bits p = x.precision();
  const Real tol(abs_tol, p);
  const Real gap = one_minus(x, MPFR_RNDD);

  Real lower(p), upper(p);
  TermCursor cur(series.spec, series.cut_index);
  for (std::size_t n = 0; n < max_terms; ++n, cur.advance()) {
    const mpz_class& h = cur.value();
    const Real hi = pow(x, h, MPFR_RNDU);
    lower = add(lower, pow(x, h, MPFR_RNDD), MPFR_RNDD);
    upper = add(upper, hi, MPFR_RNDU);
    const Real tail = div(mul(hi, x, MPFR_RNDU), gap, MPFR_RNDU);
    if (tail <= tol) return CertifiedValue{std::move(lower), add(upper, tail, MPFR_RNDU)};
  }
  throw Error(ErrorCode::TailNotConverged, "series " + series.label() + " at x=" + x.to_scientific(10) +
                                               " did not reach tolerance within " + std::to_string(max_terms) + " terms");
}

inline CertifiedValue evaluate_series(const RestrictedSeries& series, double x, double abs_tol) {
  return evaluate_series(series, Real(x, 64), abs_tol);
}

/// Encloses S_m'(x) = sum_{i>=m} H_i x^{H_i - 1}. Tail after H_I is bounded by
/// sum_{j>=N} j x^{j-1} = x^{N-1} (N/(1-x) + x/(1-x)^2) with N = H_I + 1.
inline CertifiedValue evaluate_series_derivative(const RestrictedSeries& series, const Real& x_in, double abs_tol,
                                                 std::size_t max_terms = kMaxSeriesTerms) {
  const Real x = detail::checked_point(x_in, abs_tol);
  const Bits p = x.precision();
  const Real tol(abs_tol, p);
  const Real gap = one_minus(x, MPFR_RNDD);
  const Real gap_sq = mul(gap, gap, MPFR_RNDD);
  const Real x_over_gap_sq = div(x, gap_sq, MPFR_RNDU);

  Real lower(p), upper(p);
  TermCursor cur(series.spec, series.cut_index);
  for (std::size_t n = 0; n < max_terms; ++n, cur.advance()) {
    const mpz_class& h = cur.value();
    const mpz_class h_minus_one = h - 1;
    lower = add(lower, mul(pow(x, h_minus_one, MPFR_RNDD), h, MPFR_RNDD), MPFR_RNDD);
    upper = add(upper, mul(pow(x, h_minus_one, MPFR_RNDU), h, MPFR_RNDU), MPFR_RNDU);

    const mpz_class next = h + 1;
    const Real lead = div(Real(next, p, MPFR_RNDU), gap, MPFR_RNDU);
    const Real tail = mul(pow(x, h, MPFR_RNDU), add(lead, x_over_gap_sq, MPFR_RNDU), MPFR_RNDU);
    if (tail <= tol) return CertifiedValue{std::move(lower), add(upper, tail, MPFR_RNDU)};
  }
  throw Error(ErrorCode::TailNotConverged, "derivative of " + series.label() + " at x=" + x.to_scientific(10) +
                                               " did not reach tolerance within " + std::to_string(max_terms) + " terms");
}

inline CertifiedValue evaluate_series_derivative(const RestrictedSeries& series, double x, double abs_tol) {
  return evaluate_series_derivative(series, Real(x, 64), abs_tol);
}

struct RootOptions {
  Bits start_bits = kDefaultPrecision;
  Bits cap_bits = 512;
};

/// Root of S_m(x) = 1 and the derived asymptotic constants.
struct RootAnalysis {
  RestrictedSeries series;
  Real gamma;
  double gamma_error = 0;  // |gamma - true root| <= gamma_error
  Real derivative_at_root;
  Real count_constant;  // 1 / S'(gamma)
  Real mean_slope;      // 1 / (gamma S'(gamma))
  Bits precision = 0;

  Real gamma_lower() const { return sub(gamma, Real(gamma_error, gamma.precision()), MPFR_RNDD); }
  Real gamma_upper() const { return add(gamma, Real(gamma_error, gamma.precision()), MPFR_RNDU); }
};

namespace detail {

struct NeedMorePrecision {};

/// +1 if S(x) > 1, -1 if S(x) < 1, 0 if the enclosure cannot separate S(x)
/// from 1 at precision p.
inline int certified_sign(const RestrictedSeries& series, const Real& x, Bits p) {
  for (long e = 16; e + 8 <= p; e *= 2) {
    const CertifiedValue v = evaluate_series(series, x, std::ldexp(1.0, static_cast<int>(-e)));
    if (v.lower > 1.0) return 1;
    if (v.upper < 1.0) return -1;
  }
  const CertifiedValue v = evaluate_series(series, x, std::ldexp(1.0, static_cast<int>(-(p - 8))));
  if (v.lower > 1.0) return 1;
  if (v.upper < 1.0) return -1;
  return 0;
}

class RootSearch {
 public:
  RootSearch(const RestrictedSeries& series, double abs_tol, Bits p)
      : series_(series), abs_tol_(abs_tol), p_(p), lo_(p), hi_(1.0, p) {}

  RootAnalysis run() {
    bracket();
    coarse_bisect();
    const Real target = target_width();
    newton_then_certify(target);
    while (width() > target) bisect_once();
    return finish();
  }

 private:
  Real width() const { return sub(hi_, lo_, MPFR_RNDU); }

  int sign(const Real& x) const {
    const int s = certified_sign(series_, x.with_precision(p_), p_);
    if (s == 0) throw NeedMorePrecision{};
    return s;
  }

  void update(const Real& x, int s) {
    if (s < 0 && x > lo_) lo_ = x;
    if (s > 0 && x < hi_) hi_ = x;
  }

  // Classifies x and narrows the bracket. A point whose sign cannot be
  // separated sits within a few ulps of the root (dyadic roots such as 1/2
  // for P(k) = k do occur), so it is boxed from both sides instead.
  int probe(const Real& x) {
    const int s = certified_sign(series_, x.with_precision(p_), p_);
    if (s != 0) {
      update(x, s);
      return s;
    }
    const Real delta = exp2i(-(p_ - 32), p_);
    const Real left = sub(x, delta, MPFR_RNDN);
    const Real right = add(x, delta, MPFR_RNDN);
    update(left, sign(left));
    update(right, sign(right));
    return 0;
  }

  // S(0) = 0 < 1, so lo starts at 0; hi walks 1/2, 1 - 2^-2, 1 - 2^-4, ...
  void bracket() {
    Real x(0.5, p_);
    for (long k = 2;; k *= 2) {
      if (probe(x) >= 0) return;
      if (k + 16 > p_) throw NeedMorePrecision{};
      x = one_minus(exp2i(-k, p_), MPFR_RNDN);
    }
  }

  // Width giving |gamma error| <= abs_tol and |S(gamma) - 1| <= abs_tol:
  // S' >= S'(root) on the right end of the bracket, and S'(root) > 1.
  Real target_width() {
    const CertifiedValue d = evaluate_series_derivative(series_, hi_, 1e-6);
    Real slope = d.upper;
    if (slope < 1.0) slope = Real(1.0, p_);
    Real target = div(Real(2 * abs_tol_, p_), slope, MPFR_RNDD);
    if (target < exp2i(-(p_ - 24), p_)) throw NeedMorePrecision{};
    return target;
  }

  void bisect_once() {
    Real mid(p_);
    const Real gap_lo = one_minus(lo_, MPFR_RNDN);
    const Real gap_hi = one_minus(hi_, MPFR_RNDN);
    if (gap_lo > mul(gap_hi, Real(4.0, p_), MPFR_RNDN)) {
      // Geometric midpoint in 1 - x when the bracket spans scales near 1.
      Real g = mul(gap_lo, gap_hi, MPFR_RNDN);
      mpfr_sqrt(g.get(), g.get(), MPFR_RNDN);
      mid = one_minus(g, MPFR_RNDN);
    } else {
      mid = add(lo_, hi_, MPFR_RNDN);
      mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    }
    if (!(mid > lo_ && mid < hi_)) throw NeedMorePrecision{};
    probe(mid);
  }

  // Brings the bracket to a width small against the distance to 1.
  void coarse_bisect() {
    for (int i = 0; i < 4096; ++i) {
      const Real scale = mul(one_minus(hi_, MPFR_RNDN), exp2i(-8, p_), MPFR_RNDN);
      if (width() <= scale) return;
      bisect_once();
    }
  }

  // S is increasing and convex on (0, 1), so Newton iterates started right of
  // the root decrease monotonically toward it. The candidate is then boxed by
  // certified signs at candidate +- 0.45 target.
  void newton_then_certify(const Real& target) {
    if (width() <= target) return;
    Real x = hi_;
    const double point_tol = std::max(target.to_double() * 1e-2, std::ldexp(1.0, static_cast<int>(-(p_ - 16))));
    for (int iter = 0; iter < 200; ++iter) {
      const Real f = sub(evaluate_series(series_, x, point_tol).midpoint(), Real(1.0, p_), MPFR_RNDN);
      const Real d = evaluate_series_derivative(series_, x, 1e-6).midpoint();
      const Real step = div(f, d, MPFR_RNDN);
      Real next = sub(x, step, MPFR_RNDN);
      if (!(next > lo_ && next < hi_)) break;
      x = next;
      if (abs(step) < mul(target, Real(0.25, p_), MPFR_RNDN)) break;
    }
    const Real half = mul(target, Real(0.45, p_), MPFR_RNDD);
    const Real left = sub(x, half, MPFR_RNDN);
    const Real right = add(x, half, MPFR_RNDN);
    if (left > lo_ && left < hi_) probe(left);
    if (right > lo_ && right < hi_) probe(right);
  }

  RootAnalysis finish() {
    Real gamma = add(lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(gamma.get(), gamma.get(), 1, MPFR_RNDN);
    const Real half_width = sub(hi_, gamma, MPFR_RNDU);
    const Real below = sub(gamma, lo_, MPFR_RNDU);
    double err = std::max(half_width.to_double(MPFR_RNDU), below.to_double(MPFR_RNDU));

    // Re-certify the final answer at gamma -+ abs_tol.
    const Real tol(abs_tol_, p_);
    const Real left = sub(gamma, tol, MPFR_RNDN);
    const Real right = add(gamma, tol, MPFR_RNDN);
    if (left > 0.0 && sign(left) > 0) throw NeedMorePrecision{};
    if (right < 1.0 && sign(right) < 0) throw NeedMorePrecision{};

    CertifiedValue d = evaluate_series_derivative(series_, gamma, std::min(abs_tol_, 1e-12));
    Real slope = d.midpoint();
    Real count_constant = div(Real(1.0, p_), slope, MPFR_RNDN);
    Real mean_slope = div(count_constant, gamma, MPFR_RNDN);
    return RootAnalysis{series_, std::move(gamma), err, std::move(slope), std::move(count_constant),
                        std::move(mean_slope), p_};
  }

  const RestrictedSeries& series_;
  double abs_tol_;
  Bits p_;
  Real lo_;
  Real hi_;
};

}  // namespace detail

/// Certified root of S_m(x) = 1 in (0, 1) with |gamma - root| <= abs_tol.
/// Precision starts at max(start_bits, what abs_tol needs) and doubles on
/// undecidable signs until cap_bits.
inline RootAnalysis find_root(const RestrictedSeries& series, double abs_tol, const RootOptions& opts = {}) {
  if (!(abs_tol > 0) || !(abs_tol < 0.5)) throw Error(ErrorCode::XOutOfRange, "abs_tol must lie in (0, 0.5)");
  Bits p = std::max(opts.start_bits, bits_for_tolerance(abs_tol, 40));
  if (p > opts.cap_bits) {
    throw Error(ErrorCode::PrecisionExhausted, "tolerance " + std::to_string(abs_tol) + " needs " + std::to_string(p) +
                                                   " bits, cap is " + std::to_string(opts.cap_bits));
  }
  while (true) {
    try {
      return detail::RootSearch(series, abs_tol, p).run();
    } catch (const detail::NeedMorePrecision&) {
      if (p >= opts.cap_bits) {
        throw Error(ErrorCode::PrecisionExhausted, "cannot certify root of " + series.label() + " within " +
                                                       std::to_string(opts.cap_bits) + " bits");
      }
      p = std::min(p * 2, opts.cap_bits);
    }
  }
}

namespace detail {

// Runs fn(i) for i in [0, n) across worker threads; results land by index.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn fn, bool parallel) {
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](std::size_t i) {
    try {
      slots[i].emplace(fn(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const std::size_t workers = parallel ? std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency())) : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) work(i);
      });
    }
  }
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace detail

/// Roots for every cut index in [m_from, m_to], ordered by m. Neighbouring
/// roots are re-solved at tighter tolerance until their certified intervals
/// are disjoint, so the returned gammas are provably strictly increasing.
inline std::vector<RootAnalysis> root_sequence(const SequenceSpec& spec, Index m_from, Index m_to, double abs_tol,
                                               const RootOptions& opts = {}, bool parallel = false) {
  if (m_from > m_to) throw Error(ErrorCode::InadmissibleIndex, "empty cut index range");
  std::vector<RestrictedSeries> all;
  for (Index m = m_from; m <= m_to; ++m) all.push_back(make_series(spec, m));
  auto roots = detail::parallel_map<RootAnalysis>(
      all.size(), [&](std::size_t i) { return find_root(all[i], abs_tol, opts); }, parallel);
  for (std::size_t i = 1; i < roots.size(); ++i) {
    double tol = abs_tol;
    while (!(roots[i - 1].gamma_upper() < roots[i].gamma_lower())) {
      tol *= 1.0 / 65536.0;
      roots[i - 1] = find_root(all[i - 1], tol, opts);
      roots[i] = find_root(all[i], tol, opts);
    }
  }
  return roots;
}

}  // namespace rcomp
