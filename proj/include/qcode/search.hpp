#pragma once

// Exhaustive search over frequency vectors with f_0 = 0 and sum n, ranked by
// generalized resolution or by GWLP.

#include "qcode/error.hpp"
#include "qcode/jchar.hpp"
#include "qcode/rational.hpp"
#include "qcode/theory.hpp"
#include "qcode/z4.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace qcode {

enum class Criterion { max_resolution, gma };

inline Criterion parse_criterion(const std::string& s)
{
    if (s == "max_resolution") return Criterion::max_resolution;
    if (s == "gma") return Criterion::gma;
    fail_input("unknown criterion '" + s + "' (expected max_resolution or gma)");
}

inline std::string to_string(Criterion c) { return c == Criterion::gma ? "gma" : "max_resolution"; }

inline constexpr double default_candidate_budget = 1e8;

struct SearchOptions {
    bool force = false;
    double candidate_budget = default_candidate_budget;
    ScanOptions scan;
};

struct SearchResult {
    FrequencyVector f;
    GeneratorSpec witness;
    TheoryReport report;
};

struct SearchOutcome {
    std::uint64_t candidates = 0;
    std::uint64_t theory_evaluations = 0;
    std::uint64_t oracle_evaluations = 0;  // distinct canonical classes scanned
    std::vector<SearchResult> results;
};

/// C(n + 4^p - 2, 4^p - 2): compositions of n into the 4^p - 1 nonzero cells.
inline double candidate_count(int n, int p)
{
    return binomial(n + static_cast<int>(cell_count(p)) - 2, static_cast<int>(cell_count(p)) - 2);
}

namespace detail {

/// Images of every cell under the 2^p p! column permutations and negations.
inline std::vector<std::vector<std::size_t>> column_transforms(int p)
{
    std::vector<int> perm(static_cast<std::size_t>(p));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::size_t>> out;
    do {
        for (unsigned signs = 0; signs < (1U << p); ++signs) {
            std::vector<std::size_t> image(cell_count(p));
            for (std::size_t c = 0; c < image.size(); ++c) {
                std::size_t code = 0;
                for (int j = 0; j < p; ++j) {
                    int d = cell_digit(c, p, perm[static_cast<std::size_t>(j)]);
                    if ((signs >> j) & 1U) d = (4 - d) & 3;
                    code = code * 4 + static_cast<std::size_t>(d);
                }
                image[c] = code;
            }
            out.push_back(std::move(image));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline std::size_t negate_cell(std::size_t c, int p)
{
    std::size_t code = 0;
    for (int j = 0; j < p; ++j) code = code * 4 + static_cast<std::size_t>((4 - cell_digit(c, p, j)) & 3);
    return code;
}

/// Orbit representative of F under row negation and column permutation/negation.
class CanonicalKey {
public:
    explicit CanonicalKey(int p) : transforms_(column_transforms(p)), rep_(cell_count(p))
    {
        for (std::size_t c = 0; c < rep_.size(); ++c) rep_[c] = std::min(c, negate_cell(c, p));
    }

    [[nodiscard]] std::vector<std::int64_t> operator()(const FrequencyVector& f) const
    {
        std::vector<std::int64_t> best;
        std::vector<std::int64_t> folded(f.size());
        for (const auto& image : transforms_) {
            std::fill(folded.begin(), folded.end(), 0);
            for (std::size_t c = 0; c < f.size(); ++c)
                if (f[c] != 0) folded[rep_[image[c]]] += f[c];
            if (best.empty() || folded < best) best = folded;
        }
        return best;
    }

private:
    std::vector<std::vector<std::size_t>> transforms_;
    std::vector<std::size_t> rep_;
};

/// Calls visit on every composition of n into cells 1 .. size-1, in
/// lexicographically descending order of the count vector.
inline void for_each_composition(int n, std::size_t size, const std::function<void(const std::vector<std::int64_t>&)>& visit)
{
    std::vector<std::int64_t> counts(size, 0);
    auto rec = [&](auto&& self, std::size_t cell, std::int64_t remaining) -> void {
        if (cell + 1 == size) {
            counts[cell] = remaining;
            visit(counts);
            counts[cell] = 0;
            return;
        }
        for (std::int64_t k = remaining; k >= 0; --k) {
            counts[cell] = k;
            self(self, cell + 1, remaining - k);
        }
        counts[cell] = 0;
    };
    if (size >= 2) rec(rec, 1, n);
}

/// Cell codes of the rows of F in ascending order, i.e. the witness V.
inline std::vector<std::size_t> row_cells(const std::vector<std::int64_t>& counts)
{
    std::vector<std::size_t> cells;
    for (std::size_t c = 0; c < counts.size(); ++c)
        for (std::int64_t k = 0; k < counts[c]; ++k) cells.push_back(c);
    return cells;
}

/// What ranking needs from one candidate.
struct Score {
    bool short_words = false;
    DesignSummary summary;
};

/// True if a ranks strictly ahead of b; equal scores fall back to the
/// ascending row-cell lists compared lexicographically.
inline bool ranks_before(Criterion criterion, const Score& a, const std::vector<std::size_t>& fa, const Score& b,
                         const std::vector<std::size_t>& fb)
{
    if (a.short_words != b.short_words) return !a.short_words;
    if (criterion == Criterion::max_resolution) {
        const auto& ra = a.summary.resolution;
        const auto& rb = b.summary.resolution;
        // no word found ranks as unbounded resolution
        if (ra.has_value() != rb.has_value()) return !ra.has_value();
        if (ra && *ra != *rb) return *ra > *rb;
    } else {
        if (a.summary.gwlp != b.summary.gwlp)
            return std::lexicographical_compare(a.summary.gwlp.begin(), a.summary.gwlp.end(), b.summary.gwlp.begin(),
                                                b.summary.gwlp.end());
    }
    return fa < fb;
}

} // namespace detail

inline SearchOutcome search(int n, int p, Criterion criterion, int top, const SearchOptions& opts = {})
{
    if (n < 1) fail_input("search: n must be positive");
    if (p < 1 || p > 3) fail_input("search: p must be in 1..3, got " + std::to_string(p));
    if (top < 1) fail_input("search: top must be positive");
    const double count = candidate_count(n, p);
    if (!opts.force && count > opts.candidate_budget)
        fail_resource("search: " + std::to_string(static_cast<long double>(count)) + " candidate frequency vectors for n="
                      + std::to_string(n) + ", p=" + std::to_string(p) + " exceed the budget of "
                      + std::to_string(static_cast<long double>(opts.candidate_budget)));

    const EquationSystem sys = build_system(p);
    const detail::CanonicalKey canonical(p);
    std::map<std::vector<std::int64_t>, detail::Score> memo;
    const int factors = 2 * (n + p);

    SearchOutcome outcome;
    struct Entry {
        std::vector<std::int64_t> counts;
        std::vector<std::size_t> cells;
        detail::Score score;
    };
    std::vector<Entry> best;
    auto before = [&](const Entry& a, const Entry& b) {
        return detail::ranks_before(criterion, a.score, a.cells, b.score, b.cells);
    };

    detail::for_each_composition(n, cell_count(p), [&](const std::vector<std::int64_t>& counts) {
        ++outcome.candidates;
        const FrequencyVector f(p, counts);
        detail::Score score;
        if (closed_form_preconditions(f)) {
            ++outcome.theory_evaluations;
            score.summary = summarize(closed_form_spectrum(evaluate(f, sys), sys, f), factors);
        } else {
            auto key = canonical(f);
            auto it = memo.find(key);
            if (it == memo.end()) {
                ++outcome.oracle_evaluations;
                const WordSpectrum s = spectrum_bruteforce(build_design(witness_generator(f)), factors, opts.scan);
                it = memo.emplace(std::move(key), detail::Score{s.has_short_words(), summarize(s, factors)}).first;
            }
            score = it->second;
        }

        Entry e{counts, detail::row_cells(counts), std::move(score)};
        if (best.size() == static_cast<std::size_t>(top) && !before(e, best.back())) return;
        best.insert(std::upper_bound(best.begin(), best.end(), e, before), std::move(e));
        if (best.size() > static_cast<std::size_t>(top)) best.pop_back();
    });

    for (const auto& e : best) {
        FrequencyVector f(p, e.counts);
        const Method m = closed_form_preconditions(f) || p < 3 ? Method::theory : Method::bruteforce;
        AnalyzeOptions ao;
        ao.scan = opts.scan;
        TheoryReport report = analyze_frequency(f, m, ao);
        GeneratorSpec witness = witness_generator(f);
        outcome.results.push_back({std::move(f), std::move(witness), std::move(report)});
    }
    return outcome;
}

} // namespace qcode
