#pragma once

// Brute-force aliasing analysis of a two-level design: J-characteristics,
// aliasing indices, word spectra, generalized wordlength pattern and
// generalized resolution, read directly off the +-1 matrix.

#include "qcode/design.hpp"
#include "qcode/error.hpp"
#include "qcode/rational.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qcode {

/// A set of distinct 1-based design columns, held in increasing order.
class ColumnSubset {
public:
    explicit ColumnSubset(std::vector<int> indices) : indices_(std::move(indices))
    {
        if (indices_.empty()) fail_input("column subset: empty");
        std::sort(indices_.begin(), indices_.end());
        for (std::size_t k = 0; k < indices_.size(); ++k) {
            if (indices_[k] < 1) fail_input("column subset: index " + std::to_string(indices_[k]) + " is not 1-based");
            if (k > 0 && indices_[k] == indices_[k - 1])
                fail_input("column subset: column " + std::to_string(indices_[k]) + " listed twice");
        }
    }

    [[nodiscard]] const std::vector<int>& indices() const noexcept { return indices_; }
    [[nodiscard]] std::size_t size() const noexcept { return indices_.size(); }

private:
    std::vector<int> indices_;
};

namespace detail {

inline void check_subset(const BinaryDesign& d, const ColumnSubset& s)
{
    for (int c : s.indices())
        if (static_cast<std::size_t>(c) > d.factors())
            fail_input("column subset: index " + std::to_string(c) + " exceeds factors="
                       + std::to_string(d.factors()));
}

/// runs - 2 * popcount(x), with the padding bits of the last word ignored.
inline std::int64_t signed_sum(std::span<const std::uint64_t> x, std::size_t runs)
{
    std::int64_t negatives = 0;
    for (std::size_t w = 0; w + 1 < x.size(); ++w) negatives += std::popcount(x[w]);
    std::uint64_t last = x.back();
    if (runs % 64 != 0) last &= (std::uint64_t{1} << (runs % 64)) - 1;
    negatives += std::popcount(last);
    return static_cast<std::int64_t>(runs) - 2 * negatives;
}

} // namespace detail

/// Sum over runs of the product of the selected columns.
inline std::int64_t j_characteristic(const BinaryDesign& d, const ColumnSubset& s)
{
    detail::check_subset(d, s);
    std::vector<std::uint64_t> acc(d.words_per_column(), 0);
    for (int c : s.indices()) {
        const auto col = d.column_bits(static_cast<std::size_t>(c - 1));
        for (std::size_t w = 0; w < acc.size(); ++w) acc[w] ^= col[w];
    }
    return detail::signed_sum(acc, d.runs());
}

/// |j(s)| / runs.
inline Rational aliasing_index(const BinaryDesign& d, const ColumnSubset& s)
{
    const std::int64_t j = j_characteristic(d, s);
    return make_rational(j < 0 ? -j : j, static_cast<std::int64_t>(d.runs()));
}

// --- word spectra -------------------------------------------------------------

struct WordClass {
    int length;
    Rational rho;
    BigInt count;

    friend bool operator==(const WordClass&, const WordClass&) = default;
};

/// Words aggregated by (length, aliasing index). Words of length 1 or 2
/// (constant or duplicated columns) are kept apart from the pattern proper.
class WordSpectrum {
public:
    void add(int length, const Rational& rho, const BigInt& count = 1)
    {
        if (count == 0) return;
        if (rho <= 0 || rho > 1) fail_input("word spectrum: aliasing index " + to_fraction_string(rho) + " outside (0,1]");
        if (length < 1) fail_input("word spectrum: non-positive length");
        auto& target = length < 3 ? short_words_ : words_;
        target[{length, rho}] += count;
    }

    /// Entries of length >= 3, ordered by (length, rho).
    [[nodiscard]] std::vector<WordClass> entries() const { return flatten(words_); }
    /// Length-1 and length-2 words; nonempty means constant or duplicated columns.
    [[nodiscard]] std::vector<WordClass> short_words() const { return flatten(short_words_); }

    [[nodiscard]] bool empty() const noexcept { return words_.empty(); }
    [[nodiscard]] bool has_short_words() const noexcept { return !short_words_.empty(); }

    [[nodiscard]] BigInt total_words() const
    {
        BigInt total = 0;
        for (const auto& [key, count] : words_) total += count;
        return total;
    }

    friend bool operator==(const WordSpectrum&, const WordSpectrum&) = default;

private:
    using Key = std::pair<int, Rational>;

    static std::vector<WordClass> flatten(const std::map<Key, BigInt>& m)
    {
        std::vector<WordClass> out;
        out.reserve(m.size());
        for (const auto& [key, count] : m) out.push_back({key.first, key.second, count});
        return out;
    }

    std::map<Key, BigInt> words_;
    std::map<Key, BigInt> short_words_;
};

/// First (length, rho) cell where two spectra differ, as text; empty if equal.
inline std::string first_difference(const WordSpectrum& lhs, const WordSpectrum& rhs)
{
    auto describe = [](const std::vector<WordClass>& a, const std::vector<WordClass>& b) -> std::string {
        std::map<std::pair<int, Rational>, std::pair<BigInt, BigInt>> cells;
        for (const auto& w : a) cells[{w.length, w.rho}].first = w.count;
        for (const auto& w : b) cells[{w.length, w.rho}].second = w.count;
        for (const auto& [key, counts] : cells) {
            if (counts.first != counts.second)
                return "length " + std::to_string(key.first) + ", rho " + to_fraction_string(key.second) + ": "
                       + counts.first.str() + " vs " + counts.second.str();
        }
        return {};
    };
    std::string diff = describe(lhs.entries(), rhs.entries());
    if (diff.empty()) {
        diff = describe(lhs.short_words(), rhs.short_words());
        if (!diff.empty()) diff = "short words, " + diff;
    }
    return diff;
}

/// Cost guard for exhaustive scans, in estimated cell reads.
inline constexpr double default_scan_budget = 1e10;

inline double binomial(int n, int k)
{
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Sum over k = 1..max_len of C(factors, k) * runs.
inline double scan_cost(std::size_t runs, std::size_t factors, int max_len)
{
    double cost = 0.0;
    for (int k = 1; k <= max_len; ++k) cost += binomial(static_cast<int>(factors), k);
    return cost * static_cast<double>(runs);
}

struct ScanOptions {
    bool force = false;
    double budget = default_scan_budget;
};

/// Every column subset of size 1..max_len with nonzero J-characteristic,
/// aggregated by (size, rho). Sizes 1 and 2 land in the short-word diagnostic.
inline WordSpectrum spectrum_bruteforce(const BinaryDesign& d, int max_len, ScanOptions opts = {})
{
    const int factors = static_cast<int>(d.factors());
    if (max_len < 1 || max_len > factors)
        fail_input("spectrum: max length " + std::to_string(max_len) + " outside [1, " + std::to_string(factors) + "]");
    const double cost = scan_cost(d.runs(), d.factors(), max_len);
    if (!opts.force && cost > opts.budget)
        fail_resource("spectrum: exhaustive scan needs ~" + std::to_string(static_cast<long double>(cost))
                      + " cell reads, above the budget of " + std::to_string(static_cast<long double>(opts.budget))
                      + " (use the force option to override)");

    const std::size_t words = d.words_per_column();
    const std::size_t runs = d.runs();
    // products[k] is the XOR of the first k chosen columns
    std::vector<std::vector<std::uint64_t>> products(static_cast<std::size_t>(max_len) + 1,
                                                     std::vector<std::uint64_t>(words, 0));
    std::map<std::pair<int, std::uint64_t>, std::uint64_t> tally;

    // depth-first over subsets in lexicographic order
    auto visit = [&](auto&& self, int next, std::size_t depth) -> void {
        for (int c = next; c < factors; ++c) {
            const auto col = d.column_bits(static_cast<std::size_t>(c));
            auto& out = products[depth + 1];
            const auto& in = products[depth];
            for (std::size_t w = 0; w < words; ++w) out[w] = in[w] ^ col[w];
            const std::int64_t j = detail::signed_sum(out, runs);
            if (j != 0) ++tally[{static_cast<int>(depth + 1), static_cast<std::uint64_t>(j < 0 ? -j : j)}];
            if (static_cast<int>(depth + 1) < max_len) self(self, c + 1, depth + 1);
        }
    };
    visit(visit, 0, 0);

    WordSpectrum spectrum;
    for (const auto& [key, count] : tally) {
        const Rational rho = make_rational(static_cast<std::int64_t>(key.second), static_cast<std::int64_t>(runs));
        if (!is_dyadic(rho)) fail_input("spectrum: non-dyadic aliasing index " + to_fraction_string(rho));
        spectrum.add(key.first, rho, count);
    }
    return spectrum;
}

// --- summaries -----------------------------------------------------------------

struct DesignSummary {
    /// A_3 .. A_factors.
    std::vector<Rational> gwlp;
    /// r + 1 - rho_max(r); empty when no word of length >= 3 was found.
    std::optional<Rational> resolution;
    std::optional<Rational> max_rho_at_min_length;
    std::optional<int> min_length;
    /// Longest word length scanned; drives the ">L" rendering of a missing resolution.
    int scanned_length = 0;

    [[nodiscard]] std::string resolution_string() const
    {
        return resolution ? to_fraction_string(*resolution) : ">" + std::to_string(scanned_length);
    }

    /// A_1 .. A_factors (A_1 = A_2 = 0 by construction).
    [[nodiscard]] std::vector<Rational> gwlp_from_length_one() const
    {
        std::vector<Rational> out{Rational(0), Rational(0)};
        out.insert(out.end(), gwlp.begin(), gwlp.end());
        return out;
    }

    [[nodiscard]] Rational gwlp_mass() const
    {
        Rational total = 0;
        for (const auto& a : gwlp) total += a;
        return total;
    }

    friend bool operator==(const DesignSummary&, const DesignSummary&) = default;
};

inline DesignSummary summarize(const WordSpectrum& spectrum, int factors, std::optional<int> scanned_length = {})
{
    DesignSummary s;
    s.scanned_length = scanned_length.value_or(factors);
    s.gwlp.assign(factors >= 3 ? static_cast<std::size_t>(factors - 2) : 0, Rational(0));
    for (const auto& w : spectrum.entries()) {
        if (w.length > factors)
            fail_input("summary: word length " + std::to_string(w.length) + " exceeds factors=" + std::to_string(factors));
        s.gwlp[static_cast<std::size_t>(w.length - 3)] += Rational(w.count) * w.rho * w.rho;
        if (!s.min_length || w.length < *s.min_length) {
            s.min_length = w.length;
            s.max_rho_at_min_length = w.rho;
        } else if (w.length == *s.min_length && w.rho > *s.max_rho_at_min_length) {
            s.max_rho_at_min_length = w.rho;
        }
    }
    if (s.min_length) s.resolution = Rational(*s.min_length + 1) - *s.max_rho_at_min_length;
    return s;
}

} // namespace qcode
