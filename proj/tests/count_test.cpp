#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "rcomp/rcomp.hpp"

using namespace rcomp;

namespace {

// Memoised c(n) over an explicit part set; shares no code with the library.
mpz_class naive_count(const std::set<unsigned>& parts, unsigned n, std::map<unsigned, mpz_class>& memo) {
  if (n == 0) return 1;
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  mpz_class total = 0;
  for (unsigned p : parts) {
    if (p <= n) total += naive_count(parts, n - p, memo);
  }
  return memo[n] = total;
}

}  // namespace

TEST(Count, PowersOfTwoSequence) {
  const auto table = build_count_table(make_series(SequenceSpec::plrs({2}), 1), 10);
  const std::vector<long> expected{1, 1, 2, 3, 6, 10, 18, 31, 56, 98, 174};
  for (std::size_t n = 0; n <= 10; ++n) EXPECT_EQ(table.counts[n].get_si(), expected[n]) << n;
  EXPECT_EQ(brute_force_count(make_series(SequenceSpec::plrs({2}), 1), 5), 10);
}

TEST(Count, FibonacciAgainstNaiveMemo) {
  const std::set<unsigned> parts{2, 3, 5, 8, 13, 21, 34, 55, 89, 144};
  std::map<unsigned, mpz_class> memo;
  const auto table = build_count_table(make_series(SequenceSpec::fibonacci(), 3), 150);
  for (unsigned n = 0; n <= 150; ++n) EXPECT_EQ(table.counts[n], naive_count(parts, n, memo)) << n;
}

TEST(Count, SummandAndOnesTotals) {
  // Parts {1, 2, 3}: compositions of 3 are 111, 12, 21, 3 -> 8 summands, 5 ones.
  const auto table = build_count_table(make_series(SequenceSpec::fibonacci(), 2), 3);
  EXPECT_EQ(table.counts[3], 4);
  EXPECT_EQ(table.summand_totals[3], 8);
  EXPECT_EQ(table.ones_totals[3], 5);
  const auto s = stats_at(table, 3);
  EXPECT_DOUBLE_EQ(*s.mean_summands, 2.0);
  EXPECT_DOUBLE_EQ(*s.ones_density, 5.0 / 8.0);
}

TEST(Count, EmptyCompositionHasNoMean) {
  const auto table = build_count_table(make_series(SequenceSpec::fibonacci(), 2), 5);
  const auto s = stats_at(table, 0);
  EXPECT_EQ(s.count, 1);
  EXPECT_FALSE(s.mean_summands.has_value());
  EXPECT_FALSE(s.ones_density.has_value());
}

TEST(Count, NoCompositions) {
  const auto table = build_count_table(make_series(SequenceSpec::fibonacci(), 4), 10);  // parts 3, 5, 8
  EXPECT_EQ(table.counts[1], 0);
  EXPECT_EQ(table.counts[4], 0);
  try {
    stats_at(table, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoCompositions);
  }
  const auto s = stats_at(table, 6);
  EXPECT_EQ(s.count, 1);
  EXPECT_DOUBLE_EQ(*s.mean_summands, 2.0);
  EXPECT_FALSE(s.ones_density.has_value() && *s.ones_density != 0.0);
}

TEST(Count, Errors) {
  const auto series = make_series(SequenceSpec::fibonacci(), 2);
  const auto table = build_count_table(series, 20);
  EXPECT_THROW(stats_at(table, 21), Error);
  EXPECT_THROW(brute_force_count(series, kBruteForceMaxN + 1), Error);
  try {
    build_count_table(series, 1000000, 1 << 20);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LimitTooLarge);
  }
  const auto other = find_root(make_series(SequenceSpec::fibonacci(), 3), 1e-9);
  try {
    asymptotic_residual(table, other, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MismatchedSeries);
  }
}

TEST(Count, ExtendMatchesFreshBuild) {
  const auto series = make_series(SequenceSpec::plrs({1, 1, 1}), 2);
  auto grown = build_count_table(series, 40);
  extend_count_table(grown, 120);
  const auto fresh = build_count_table(series, 120);
  EXPECT_EQ(grown.counts, fresh.counts);
  EXPECT_EQ(grown.summand_totals, fresh.summand_totals);
  EXPECT_EQ(grown.ones_totals, fresh.ones_totals);
}

TEST(Count, PersistenceRoundTrip) {
  const auto table = build_count_table(make_series(SequenceSpec::monomial(2), 2), 300);
  std::stringstream buf;
  save_count_table(table, buf);
  const auto loaded = load_count_table(buf);
  EXPECT_EQ(loaded.series, table.series);
  EXPECT_EQ(loaded.limit, table.limit);
  EXPECT_EQ(loaded.counts, table.counts);
  EXPECT_EQ(loaded.summand_totals, table.summand_totals);
  EXPECT_EQ(loaded.ones_totals, table.ones_totals);
}

TEST(Count, LoadRejectsDamagedFiles) {
  for (const std::string text : {"", "rcomp-count-table 2\n", "rcomp-count-table 1\nseries fib 2\nlimit 2\n0 1 0 0\n1 1 1 1\n",
                                 "rcomp-count-table 1\nseries fib 2\nlimit 1\n0 1 0 0\n7 1 1 1\n",
                                 "rcomp-count-table 1\nseries fib 2\nlimit 1\n0 1 0 0\n1 x 1 1\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(load_count_table(in), Error) << text;
  }
}

TEST(Count, ResidualShrinks) {
  const auto series = make_series(SequenceSpec::fibonacci(), 2);
  const auto table = build_count_table(series, 400);
  const auto root = find_root(series, 1e-40);
  EXPECT_LT(std::abs(asymptotic_residual(table, root, 400)), std::abs(asymptotic_residual(table, root, 50)));
  EXPECT_LT(std::abs(asymptotic_residual(table, root, 400)), 1e-20);
}
