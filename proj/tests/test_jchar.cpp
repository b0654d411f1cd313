#include "qcode/jchar.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qcode;

namespace {

oracle::Spectrum as_oracle(const WordSpectrum& s)
{
    oracle::Spectrum out;
    for (const auto& w : s.entries()) out[{w.length, w.rho}] = w.count.convert_to<std::uint64_t>();
    for (const auto& w : s.short_words()) out[{w.length, w.rho}] = w.count.convert_to<std::uint64_t>();
    return out;
}

const GeneratorSpec example4{4, 3, {{1, 1, 2}, {1, 2, 1}, {1, 3, 3}, {2, 1, 3}}};

} // namespace

TEST(JChar, MatchesDirectProductSum)
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const auto v = oracle::random_v(rng, 2 + static_cast<int>(rng() % 2), 2);
        const BinaryDesign d = build_design(GeneratorSpec::from_rows(v));
        const auto rows = oracle::design(v);
        std::vector<int> cols;
        for (int c = 1; c <= static_cast<int>(d.factors()); ++c)
            if (rng() % 2) cols.push_back(c);
        if (cols.empty()) cols.push_back(1);
        long expected = 0;
        for (const auto& row : rows) {
            int prod = 1;
            for (int c : cols) prod *= row[static_cast<std::size_t>(c - 1)];
            expected += prod;
        }
        EXPECT_EQ(j_characteristic(d, ColumnSubset(cols)), expected);
        EXPECT_EQ(aliasing_index(d, ColumnSubset(cols)), Rational(expected < 0 ? -expected : expected, static_cast<long>(rows.size())));
    }
}

TEST(JChar, SubsetValidation)
{
    const BinaryDesign d = build_design(GeneratorSpec(1, 1, {{1}}));
    EXPECT_THROW(ColumnSubset({}), Error);
    EXPECT_THROW(ColumnSubset({0}), Error);
    EXPECT_THROW(ColumnSubset({2, 2}), Error);
    EXPECT_THROW(j_characteristic(d, ColumnSubset({5})), Error);
    EXPECT_EQ(ColumnSubset({3, 1}).indices(), (std::vector<int>{1, 3}));
}

TEST(JChar, FullFactorialHasNoWords)
{
    for (int n = 1; n <= 3; ++n) {
        const WordSpectrum s = spectrum_bruteforce(full_factorial(n), 2 * n);
        EXPECT_TRUE(s.empty());
        EXPECT_FALSE(s.has_short_words());
    }
}

TEST(JChar, SpectrumMatchesBitmaskOracle)
{
    std::mt19937 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const int p = 1 + static_cast<int>(rng() % 3);
        const int n = 1 + static_cast<int>(rng() % 3);
        const auto v = oracle::random_v(rng, n, p);
        const BinaryDesign d = build_design(GeneratorSpec::from_rows(v));
        EXPECT_EQ(as_oracle(spectrum_bruteforce(d, static_cast<int>(d.factors()))), oracle::spectrum(oracle::design(v)))
            << "trial " << trial;
    }
}

TEST(JChar, TruncatedScanMatchesOracle)
{
    const auto v = oracle::Matrix{{1, 2}, {3, 1}, {2, 3}};
    const BinaryDesign d = build_design(GeneratorSpec::from_rows(v));
    EXPECT_EQ(as_oracle(spectrum_bruteforce(d, 4)), oracle::spectrum(oracle::design(v), 4));
}

TEST(JChar, ExampleFourBruteForce)
{
    const BinaryDesign d = build_design(example4);
    const WordSpectrum s = spectrum_bruteforce(d, 14);
    const auto entries = s.entries();
    ASSERT_EQ(entries.size(), 3U);
    EXPECT_EQ(entries[0], (WordClass{6, Rational(1, 2), 168}));
    EXPECT_EQ(entries[1], (WordClass{8, Rational(1), 7}));
    EXPECT_EQ(entries[2], (WordClass{10, Rational(1, 2), 56}));
    EXPECT_FALSE(s.has_short_words());

    const DesignSummary sum = summarize(s, 14);
    EXPECT_EQ(*sum.resolution, Rational(13, 2));
    EXPECT_EQ(sum.resolution_string(), "13/2");
    std::vector<Rational> expected(14, 0);
    expected[5] = 42;
    expected[7] = 7;
    expected[9] = 14;
    EXPECT_EQ(sum.gwlp_from_length_one(), expected);
    EXPECT_EQ(sum.gwlp_mass(), 63);
}

TEST(JChar, ShortWordsAreSeparated)
{
    // Zero row in V: the V column is constant, so single columns alias with the mean.
    const BinaryDesign d = build_design(GeneratorSpec(1, 1, {{0}}));
    const WordSpectrum s = spectrum_bruteforce(d, 4);
    EXPECT_TRUE(s.has_short_words());
    EXPECT_EQ(s.short_words().front(), (WordClass{1, Rational(1), 2}));
}

TEST(JChar, SummaryUsesLargestRhoAtMinimumLength)
{
    WordSpectrum s;
    s.add(4, Rational(1, 4), 3);
    s.add(4, Rational(1, 2), 1);
    s.add(5, Rational(1), 1);
    const DesignSummary sum = summarize(s, 6);
    EXPECT_EQ(*sum.min_length, 4);
    EXPECT_EQ(*sum.resolution, Rational(9, 2));
    EXPECT_EQ(sum.gwlp[1], Rational(3, 16) + Rational(1, 4));
}

TEST(JChar, MissingResolutionRendersScanDepth)
{
    const DesignSummary sum = summarize(WordSpectrum{}, 10, 4);
    EXPECT_FALSE(sum.resolution);
    EXPECT_EQ(sum.resolution_string(), ">4");
}

TEST(JChar, BudgetGuardRefusesUnlessForced)
{
    const BinaryDesign d = build_design(example4);
    ScanOptions tight;
    tight.budget = 1000;
    try {
        spectrum_bruteforce(d, 14, tight);
        FAIL() << "expected a resource error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::resource);
    }
    tight.force = true;
    tight.budget = 1e12;
    EXPECT_NO_THROW(spectrum_bruteforce(d, 3, tight));
}

TEST(JChar, FirstDifferenceNamesTheCell)
{
    WordSpectrum a, b;
    a.add(6, Rational(1, 2), 168);
    b.add(6, Rational(1, 2), 160);
    EXPECT_EQ(first_difference(a, a), "");
    EXPECT_EQ(first_difference(a, b), "length 6, rho 1/2: 168 vs 160");
}
