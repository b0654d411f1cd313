#pragma once

// The two-level design D = phi(C): all 4^n codewords t.G over Z4, each Z4
// entry expanded to two +-1 columns by the Gray map.

#include "qcode/error.hpp"
#include "qcode/z4.hpp"

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qcode {

/// Largest n whose 2^(2n)-run design we materialize.
inline constexpr int max_design_n = 12;

/// A runs x factors matrix over {+1, -1}, stored column-major with one sign
/// bit per cell (bit set <=> entry is -1).
class BinaryDesign {
public:
    BinaryDesign(std::size_t runs, std::size_t factors)
        : runs_(runs), factors_(factors), words_((runs + 63) / 64),
          bits_(factors * ((runs + 63) / 64), std::uint64_t{0})
    {
    }

    /// From explicit +-1 rows; every row must have the same width.
    static BinaryDesign from_rows(const std::vector<std::vector<int>>& rows)
    {
        if (rows.empty()) fail_input("design: no runs");
        BinaryDesign d(rows.size(), rows.front().size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != d.factors_)
                fail_input("design: run " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size())
                           + " entries, expected " + std::to_string(d.factors_));
            for (std::size_t c = 0; c < d.factors_; ++c) {
                const int v = rows[r][c];
                if (v != 1 && v != -1)
                    fail_input("design: run " + std::to_string(r + 1) + " column " + std::to_string(c + 1)
                               + " is " + std::to_string(v) + ", expected +1 or -1");
                d.set_negative(r, c, v < 0);
            }
        }
        return d;
    }

    [[nodiscard]] std::size_t runs() const noexcept { return runs_; }
    [[nodiscard]] std::size_t factors() const noexcept { return factors_; }
    [[nodiscard]] std::size_t words_per_column() const noexcept { return words_; }

    /// Entry at 0-based (run, column), +1 or -1.
    [[nodiscard]] int at(std::size_t run, std::size_t col) const
    {
        return ((column_bits(col)[run / 64] >> (run % 64)) & 1U) != 0 ? -1 : 1;
    }

    [[nodiscard]] std::span<const std::uint64_t> column_bits(std::size_t col) const
    {
        return {bits_.data() + col * words_, words_};
    }

    void set_negative(std::size_t run, std::size_t col, bool negative)
    {
        std::uint64_t& w = bits_[col * words_ + run / 64];
        const std::uint64_t mask = std::uint64_t{1} << (run % 64);
        w = negative ? (w | mask) : (w & ~mask);
    }

    /// Flip the sign of one column in place.
    void negate_column(std::size_t col)
    {
        for (std::size_t w = 0; w < words_; ++w) bits_[col * words_ + w] ^= ~std::uint64_t{0};
        clear_tail(col);
    }

    [[nodiscard]] std::vector<int> row(std::size_t run) const
    {
        std::vector<int> out(factors_);
        for (std::size_t c = 0; c < factors_; ++c) out[c] = at(run, c);
        return out;
    }

    friend bool operator==(const BinaryDesign&, const BinaryDesign&) = default;

private:
    void clear_tail(std::size_t col)
    {
        if (runs_ % 64 == 0) return;
        bits_[col * words_ + words_ - 1] &= (std::uint64_t{1} << (runs_ % 64)) - 1;
    }

    std::size_t runs_;
    std::size_t factors_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

/// Binary image of the code generated by (V, I_n). Runs follow the base-4
/// value of the coefficient vector t (t_1 most significant); columns are the
/// Gray pairs of the p columns of V followed by those of the n identity
/// columns.
inline BinaryDesign build_design(const GeneratorSpec& g)
{
    const int n = g.n();
    const int p = g.p();
    if (n > max_design_n)
        fail_resource("design: n=" + std::to_string(n) + " exceeds the materialization cap of "
                      + std::to_string(max_design_n) + " (2^" + std::to_string(2 * n) + " runs)");

    const std::size_t runs = std::size_t{1} << (2 * n);
    const int width = n + p;
    BinaryDesign d(runs, static_cast<std::size_t>(2 * width));

    // Incrementing digit t_i (including the 3 -> 0 wrap) adds row i of G to
    // the codeword, so the codeword is updated alongside the odometer.
    std::vector<int> t(static_cast<std::size_t>(n), 0);
    std::vector<Z4> codeword(static_cast<std::size_t>(width));
    for (std::size_t r = 0; r < runs; ++r) {
        for (int j = 0; j < width; ++j) {
            const auto bits = gray_bits(codeword[static_cast<std::size_t>(j)]);
            if (bits[0] != 0) d.set_negative(r, static_cast<std::size_t>(2 * j), true);
            if (bits[1] != 0) d.set_negative(r, static_cast<std::size_t>(2 * j + 1), true);
        }
        for (int i = n - 1; i >= 0; --i) {
            for (int j = 0; j < width; ++j)
                codeword[static_cast<std::size_t>(j)] = codeword[static_cast<std::size_t>(j)] + g.full_at(i, j);
            if (++t[static_cast<std::size_t>(i)] < 4) break;
            t[static_cast<std::size_t>(i)] = 0;
        }
    }
    return d;
}

/// The 4^n x 2n full factorial, i.e. the Gray image of Z4^n.
inline BinaryDesign full_factorial(int n)
{
    if (n < 1 || n > max_design_n) fail_input("full factorial: n out of range");
    const std::size_t runs = std::size_t{1} << (2 * n);
    BinaryDesign d(runs, static_cast<std::size_t>(2 * n));
    for (std::size_t r = 0; r < runs; ++r) {
        for (int i = 0; i < n; ++i) {
            const auto bits = gray_bits(Z4(static_cast<int>((r >> (2 * (n - 1 - i))) & 3)));
            d.set_negative(r, static_cast<std::size_t>(2 * i), bits[0] != 0);
            d.set_negative(r, static_cast<std::size_t>(2 * i + 1), bits[1] != 0);
        }
    }
    return d;
}

/// Column sum of a design column (0 for a balanced column).
inline std::int64_t column_sum(const BinaryDesign& d, std::size_t col)
{
    std::int64_t negatives = 0;
    for (std::uint64_t w : d.column_bits(col)) negatives += std::popcount(w);
    return static_cast<std::int64_t>(d.runs()) - 2 * negatives;
}

} // namespace qcode
