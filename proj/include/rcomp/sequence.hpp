#pragma once

// Part sequences: Fibonacci, positive linear recurrence sequences (PLRS) and
// integer polynomials, plus the outpacing and polynomial-threshold decisions.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcomp/error.hpp"

namespace rcomp {

using Index = std::uint64_t;

enum class SequenceKind { Fibonacci, Plrs, Polynomial };

namespace poly {

// Polynomials with big-integer coefficients, stored lowest degree first.
using Coeffs = std::vector<mpz_class>;

inline mpz_class eval(const Coeffs& p, const mpz_class& x) {
  mpz_class acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline void trim(Coeffs& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

/// Coefficients of q(x) = p(x + 1).
inline Coeffs shift_by_one(const Coeffs& p) {
  Coeffs q = p;
  // Repeated synthetic division by (x - (-1)) is the Taylor shift.
  const std::size_t n = q.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) q[j - 1] += q[j];
  }
  return q;
}

inline Coeffs linear_combination(const mpz_class& a, const Coeffs& p, const mpz_class& b, const Coeffs& q) {
  Coeffs r(std::max(p.size(), q.size()), mpz_class(0));
  for (std::size_t i = 0; i < p.size(); ++i) r[i] += a * p[i];
  for (std::size_t i = 0; i < q.size(); ++i) r[i] += b * q[i];
  trim(r);
  return r;
}

/// Smallest non-negative integer B such that every real root r of p has
/// r < B (Cauchy's bound). For k >= B, p(k) has the sign of its leading
/// coefficient.
inline mpz_class cauchy_bound(const Coeffs& p) {
  Coeffs q = p;
  trim(q);
  if (q.size() <= 1) return 0;
  const mpz_class lead = abs(q.back());
  mpz_class worst = 0;
  for (std::size_t i = 0; i + 1 < q.size(); ++i) worst = std::max(worst, mpz_class(abs(q[i])));
  // |r| <= 1 + worst/lead < 2 + floor(worst/lead)
  mpz_class quotient = worst / lead;
  return quotient + 2;
}

}  // namespace poly

/// Declarative description of a part sequence.
class SequenceSpec {
 public:
  static SequenceSpec fibonacci() { return SequenceSpec(SequenceKind::Fibonacci, {}, {}); }

  /// PLRS coefficients c_1..c_L. The Fibonacci coefficients {1, 1} yield the
  /// Fibonacci kind itself; the all-ones sequence {1} is rejected.
  static SequenceSpec plrs(std::vector<std::uint64_t> coeffs) {
    if (coeffs.empty()) throw Error(ErrorCode::InvalidSpec, "PLRS needs at least one coefficient");
    if (coeffs.front() == 0) throw Error(ErrorCode::InvalidSpec, "PLRS requires c_1 > 0");
    if (coeffs.back() == 0) throw Error(ErrorCode::InvalidSpec, "PLRS requires c_L > 0");
    if (coeffs.size() == 1 && coeffs.front() == 1) {
      throw Error(ErrorCode::InvalidSpec, "PLRS c=[1] is the constant all-ones sequence");
    }
    if (coeffs == std::vector<std::uint64_t>{1, 1}) return fibonacci();
    return SequenceSpec(SequenceKind::Plrs, std::move(coeffs), {});
  }

  /// Integer polynomial, coefficients in degree-descending order a_s..a_0.
  static SequenceSpec polynomial(std::vector<mpz_class> coeffs_desc) {
    if (coeffs_desc.size() < 2) throw Error(ErrorCode::InvalidSpec, "polynomial must have degree >= 1");
    if (coeffs_desc.front() <= 0) throw Error(ErrorCode::InvalidSpec, "polynomial leading coefficient must be positive");
    return SequenceSpec(SequenceKind::Polynomial, {}, std::move(coeffs_desc));
  }

  /// P(k) = k^degree.
  static SequenceSpec monomial(unsigned degree) {
    std::vector<mpz_class> c(degree + 1, mpz_class(0));
    c.front() = 1;
    return polynomial(std::move(c));
  }

  SequenceKind kind() const { return kind_; }
  const std::vector<std::uint64_t>& plrs_coeffs() const { return plrs_; }
  const std::vector<mpz_class>& poly_coeffs() const { return poly_; }

  /// Recurrence depth L (2 for Fibonacci, 0 for polynomials).
  std::size_t depth() const {
    switch (kind_) {
      case SequenceKind::Fibonacci: return 2;
      case SequenceKind::Plrs: return plrs_.size();
      case SequenceKind::Polynomial: return 0;
    }
    return 0;
  }

  std::size_t degree() const { return kind_ == SequenceKind::Polynomial ? poly_.size() - 1 : 0; }

  /// Order of a homogeneous linear recurrence the sequence satisfies
  /// eventually; a degree-s polynomial satisfies one of order s + 1.
  std::size_t recurrence_order() const {
    return kind_ == SequenceKind::Polynomial ? degree() + 1 : depth();
  }

  /// Ascending coefficients for the poly:: helpers.
  poly::Coeffs ascending() const { return poly::Coeffs(poly_.rbegin(), poly_.rend()); }

  std::string label() const {
    std::string out;
    switch (kind_) {
      case SequenceKind::Fibonacci: return "fib";
      case SequenceKind::Plrs:
        out = "plrs:";
        for (std::size_t i = 0; i < plrs_.size(); ++i) out += (i ? "," : "") + std::to_string(plrs_[i]);
        return out;
      case SequenceKind::Polynomial:
        out = "poly:";
        for (std::size_t i = 0; i < poly_.size(); ++i) out += (i ? "," : "") + poly_[i].get_str();
        return out;
    }
    return out;
  }

  friend bool operator==(const SequenceSpec& a, const SequenceSpec& b) {
    return a.kind_ == b.kind_ && a.plrs_ == b.plrs_ && a.poly_ == b.poly_;
  }

 private:
  SequenceSpec(SequenceKind kind, std::vector<std::uint64_t> plrs, std::vector<mpz_class> poly)
      : kind_(kind), plrs_(std::move(plrs)), poly_(std::move(poly)) {}

  SequenceKind kind_;
  std::vector<std::uint64_t> plrs_;
  std::vector<mpz_class> poly_;
};

namespace detail {

[[noreturn]] inline void parse_fail(std::size_t pos, const std::string& reason) {
  throw Error(ErrorCode::ParseError, "at position " + std::to_string(pos) + ": " + reason);
}

// Splits "a,b,c" starting at `offset` in the original text, keeping positions.
inline std::vector<std::pair<std::size_t, std::string_view>> split_list(std::string_view body, std::size_t offset) {
  std::vector<std::pair<std::size_t, std::string_view>> items;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = body.find(',', start);
    const std::string_view item = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (item.empty()) parse_fail(offset + start, "empty list item");
    items.emplace_back(offset + start, item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

}  // namespace detail

/// Parses `fib`, `plrs:c1,...,cL`, `poly:a_s,...,a_0`, or the monomial
/// shorthand `k<d>` (e.g. `k4` for k^4).
inline SequenceSpec parse_sequence_spec(std::string_view text) {
  using detail::parse_fail;
  if (text == "fib") return SequenceSpec::fibonacci();

  if (text.size() >= 2 && text[0] == 'k' && std::all_of(text.begin() + 1, text.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
    unsigned degree = 0;
    const auto res = std::from_chars(text.data() + 1, text.data() + text.size(), degree);
    if (res.ec != std::errc() || degree == 0) parse_fail(1, "monomial degree must be a positive integer");
    return SequenceSpec::monomial(degree);
  }

  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) parse_fail(0, "expected 'fib', 'plrs:...', 'poly:...' or 'k<d>'");
  const std::string_view head = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  if (body.empty()) parse_fail(colon + 1, "missing coefficient list");
  const auto items = detail::split_list(body, colon + 1);

  if (head == "plrs") {
    std::vector<std::uint64_t> coeffs;
    for (const auto& [pos, item] : items) {
      std::uint64_t v = 0;
      const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
      if (res.ec != std::errc() || res.ptr != item.data() + item.size()) {
        parse_fail(pos, "PLRS coefficient '" + std::string(item) + "' is not a non-negative integer");
      }
      coeffs.push_back(v);
    }
    return SequenceSpec::plrs(std::move(coeffs));
  }
  if (head == "poly") {
    std::vector<mpz_class> coeffs;
    for (const auto& [pos, item] : items) {
      std::string_view digits = item;
      if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.remove_prefix(1);
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        parse_fail(pos, "polynomial coefficient '" + std::string(item) + "' is not an integer");
      }
      std::string s(item);
      if (s[0] == '+') s.erase(0, 1);
      coeffs.emplace_back(s, 10);
    }
    return SequenceSpec::polynomial(std::move(coeffs));
  }
  parse_fail(0, "unknown sequence kind '" + std::string(head) + "'");
}

/// Walks H_start, H_{start+1}, ... with exact arithmetic. Terms are the raw
/// sequence values; admissibility is checked by the callers that need it.
class TermCursor {
 public:
  TermCursor(const SequenceSpec& spec, Index start) : spec_(spec), index_(1) {
    if (start < 1) throw Error(ErrorCode::InadmissibleIndex, "sequence indices start at 1");
    switch (spec_.kind()) {
      case SequenceKind::Fibonacci:
        // (F_0, F_1)
        history_ = {mpz_class(0), mpz_class(1)};
        value_ = 1;
        break;
      case SequenceKind::Plrs:
        history_ = {mpz_class(1)};
        value_ = 1;
        break;
      case SequenceKind::Polynomial:
        coeffs_ = spec_.ascending();
        value_ = poly::eval(coeffs_, mpz_class(1));
        break;
    }
    while (index_ < start) advance();
  }

  Index index() const { return index_; }
  const mpz_class& value() const { return value_; }

  void advance() {
    switch (spec_.kind()) {
      case SequenceKind::Fibonacci: {
        mpz_class next = history_[0] + history_[1];
        history_[0] = history_[1];
        history_[1] = next;
        value_ = std::move(next);
        break;
      }
      case SequenceKind::Plrs: {
        // history_ holds H_1..H_n (at most L most recent), newest last.
        const auto& c = spec_.plrs_coeffs();
        const std::size_t n = index_;
        mpz_class next = n < c.size() ? 1 : 0;
        const std::size_t terms = std::min<std::size_t>(n, c.size());
        for (std::size_t j = 1; j <= terms; ++j) {
          if (c[j - 1] != 0) next += history_[history_.size() - j] * c[j - 1];
        }
        history_.push_back(next);
        if (history_.size() > c.size()) history_.pop_front();
        value_ = std::move(next);
        break;
      }
      case SequenceKind::Polynomial:
        value_ = poly::eval(coeffs_, mpz_class(index_ + 1));
        break;
    }
    ++index_;
  }

 private:
  SequenceSpec spec_;
  Index index_;
  mpz_class value_;
  std::deque<mpz_class> history_;
  poly::Coeffs coeffs_;
};

/// Raw H_start..H_{start+count-1}, no admissibility checks.
inline std::vector<mpz_class> raw_terms(const SequenceSpec& spec, Index start, std::size_t count) {
  std::vector<mpz_class> out;
  out.reserve(count);
  TermCursor cur(spec, start);
  for (std::size_t i = 0; i < count; ++i, cur.advance()) out.push_back(cur.value());
  return out;
}

/// Smallest index from which the sequence is positive and strictly increasing.
/// For polynomials the answer is certified: past the Cauchy bounds of
/// P(k) - 1 and of the forward difference P(k+1) - P(k) both stay positive,
/// and below that point every index is checked exactly.
inline Index min_admissible_index(const SequenceSpec& spec) {
  switch (spec.kind()) {
    case SequenceKind::Fibonacci: return 2;
    case SequenceKind::Plrs: return 1;
    case SequenceKind::Polynomial: break;
  }
  const poly::Coeffs p = spec.ascending();
  const poly::Coeffs diff = poly::linear_combination(1, poly::shift_by_one(p), -1, p);
  poly::Coeffs p_minus_one = p;
  p_minus_one[0] -= 1;
  mpz_class bound = std::max({poly::cauchy_bound(diff), poly::cauchy_bound(p_minus_one), mpz_class(1)});
  if (!bound.fits_ulong_p()) throw Error(ErrorCode::InvalidSpec, "polynomial admissibility bound out of range");
  Index i0 = bound.get_ui();
  while (i0 > 1) {
    const mpz_class k(static_cast<unsigned long>(i0 - 1));
    if (poly::eval(p, k) >= 1 && poly::eval(diff, k) > 0) {
      --i0;
    } else {
      break;
    }
  }
  return i0;
}

/// Positive strictly increasing slice of a sequence.
struct SequenceWindow {
  SequenceSpec spec;
  Index start_index;
  std::vector<mpz_class> terms;
};

inline SequenceWindow generate_terms(const SequenceSpec& spec, Index start_index, std::size_t count) {
  if (start_index < 1) throw Error(ErrorCode::InadmissibleIndex, "start index must be positive");
  if (count < 1) throw Error(ErrorCode::InvalidSpec, "count must be positive");
  const Index floor = min_admissible_index(spec);
  if (start_index < floor) {
    if (spec.kind() == SequenceKind::Polynomial) {
      throw Error(ErrorCode::NonIncreasingWindow, spec.label() + " is not positive and strictly increasing from index " +
                                                      std::to_string(start_index) + " (first admissible index " +
                                                      std::to_string(floor) + ")");
    }
    throw Error(ErrorCode::InadmissibleIndex, spec.label() + " windows start at index " + std::to_string(floor));
  }
  return SequenceWindow{spec, start_index, raw_terms(spec, start_index, count)};
}

/// Smallest n <= horizon with A_k > B_k for every n <= k <= horizon (indices
/// from 1, raw values). Empirical over the horizon only.
inline std::optional<Index> outpacing_index(const SequenceSpec& a, const SequenceSpec& b, Index horizon) {
  if (horizon < 1) throw Error(ErrorCode::InvalidSpec, "horizon must be positive");
  const auto ta = raw_terms(a, 1, horizon);
  const auto tb = raw_terms(b, 1, horizon);
  std::optional<Index> result;
  for (Index k = horizon; k >= 1; --k) {
    if (ta[k - 1] > tb[k - 1]) {
      result = k;
    } else {
      break;
    }
  }
  return result;
}

/// Witness data behind certified_fibonacci_threshold.
struct ThresholdCertificate {
  Index threshold;   // smallest m with F_k > P(k) for all k >= m
  Index ratio_from;  // for k >= ratio_from: P(k) > 0, 2P(k+1) < 3P(k), 2F_{k+1} >= 3F_k
  Index witness;     // first k >= ratio_from with F_k > P(k); induction runs from here
};

/// Certifies the polynomial threshold. Past `ratio_from`, F grows by a factor
/// of at least 3/2 per step while P grows by less, so one index with
/// F_k > P(k) there propagates to every later index; everything below the
/// witness is scanned exactly.
inline ThresholdCertificate fibonacci_threshold_certificate(const SequenceSpec& spec) {
  if (spec.kind() != SequenceKind::Polynomial) {
    throw Error(ErrorCode::InvalidSpec, "threshold is defined for polynomial sequences");
  }
  const poly::Coeffs p = spec.ascending();
  const poly::Coeffs ratio_gap = poly::linear_combination(2, poly::shift_by_one(p), -3, p);
  const mpz_class bound = std::max({poly::cauchy_bound(ratio_gap), poly::cauchy_bound(p), mpz_class(3)});
  if (!bound.fits_ulong_p()) throw Error(ErrorCode::InvalidSpec, "threshold bound out of range");
  const Index ratio_from = bound.get_ui();

  // F_k and P(k) for k = 1, 2, ...
  mpz_class f_prev = 0, f = 1;
  Index last_failure = 0;
  Index witness = 0;
  for (Index k = 1;; ++k) {
    const mpz_class pk = poly::eval(p, mpz_class(static_cast<unsigned long>(k)));
    const bool above = f > pk;
    if (!above) last_failure = k;
    if (k >= ratio_from) {
      const mpz_class f_next = f + f_prev;
      // The Fibonacci half of the ratio certificate, checked at the witness
      // (the ratio F_{k+1}/F_k stays in [3/2, 2] for all k >= 3).
      if (above && 2 * f_next >= 3 * f) {
        witness = k;
        break;
      }
    }
    const mpz_class f_next = f + f_prev;
    f_prev = f;
    f = f_next;
  }
  return ThresholdCertificate{last_failure + 1, ratio_from, witness};
}

inline Index certified_fibonacci_threshold(const SequenceSpec& spec) {
  return fibonacci_threshold_certificate(spec).threshold;
}

}  // namespace rcomp
