#pragma once

// Z4 arithmetic, Lee weights, the Gray map, generator matrices G = (V, I_n)
// and the frequency-vector summary of V.

#include "qcode/error.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

namespace qcode {

class Z4 {
public:
    constexpr Z4() = default;
    constexpr explicit Z4(int v) : value_(static_cast<std::uint8_t>(((v % 4) + 4) % 4)) {}

    [[nodiscard]] constexpr int value() const noexcept { return value_; }
    [[nodiscard]] constexpr bool is_odd() const noexcept { return (value_ & 1) != 0; }

    friend constexpr Z4 operator+(Z4 a, Z4 b) noexcept { return Z4(a.value_ + b.value_); }
    friend constexpr Z4 operator-(Z4 a, Z4 b) noexcept { return Z4(a.value_ - b.value_); }
    friend constexpr Z4 operator*(Z4 a, Z4 b) noexcept { return Z4(a.value_ * b.value_); }
    friend constexpr Z4 operator-(Z4 a) noexcept { return Z4(-a.value_); }
    friend constexpr bool operator==(Z4, Z4) noexcept = default;

private:
    std::uint8_t value_ = 0;
};

/// Lee weight: 0, 1, 2, 1 for 0, 1, 2, 3.
constexpr int lee_weight(Z4 x) noexcept
{
    constexpr std::array<int, 4> table{0, 1, 2, 1};
    return table[static_cast<std::size_t>(x.value())];
}

/// The two +-1 entries a Z4 symbol expands to.
struct GrayPair {
    int first;
    int second;
    friend constexpr bool operator==(GrayPair, GrayPair) noexcept = default;
};

/// 0 -> (+1,+1), 1 -> (+1,-1), 2 -> (-1,-1), 3 -> (-1,+1).
constexpr GrayPair gray_map(Z4 x) noexcept
{
    constexpr std::array<GrayPair, 4> table{{{1, 1}, {1, -1}, {-1, -1}, {-1, 1}}};
    return table[static_cast<std::size_t>(x.value())];
}

/// Sign bits of gray_map (1 for a -1 entry), for bit-packed storage.
constexpr std::array<std::uint8_t, 2> gray_bits(Z4 x) noexcept
{
    const GrayPair g = gray_map(x);
    return {static_cast<std::uint8_t>(g.first < 0), static_cast<std::uint8_t>(g.second < 0)};
}

// --- row patterns / frequency cells --------------------------------------
//
// A length-p Z4 pattern i is identified with the base-4 integer whose most
// significant digit is i_1, so cells are ordered f_{0..00}, f_{0..01}, ...

constexpr std::size_t cell_count(int p) noexcept { return std::size_t{1} << (2 * p); }

inline std::size_t encode_cell(std::span<const Z4> pattern) noexcept
{
    std::size_t code = 0;
    for (Z4 x : pattern) code = code * 4 + static_cast<std::size_t>(x.value());
    return code;
}

inline std::vector<Z4> decode_cell(std::size_t code, int p)
{
    std::vector<Z4> out(static_cast<std::size_t>(p));
    for (int j = p - 1; j >= 0; --j) {
        out[static_cast<std::size_t>(j)] = Z4(static_cast<int>(code & 3));
        code >>= 2;
    }
    return out;
}

/// Digit j (0-based, most significant first) of a p-digit cell code.
constexpr int cell_digit(std::size_t code, int p, int j) noexcept
{
    return static_cast<int>((code >> (2 * (p - 1 - j))) & 3);
}

/// "013" style label of a pattern.
inline std::string pattern_label(std::span<const Z4> pattern)
{
    std::string s;
    s.reserve(pattern.size());
    for (Z4 x : pattern) s.push_back(static_cast<char>('0' + x.value()));
    return s;
}

inline std::vector<Z4> parse_pattern(const std::string& label)
{
    std::vector<Z4> out;
    out.reserve(label.size());
    for (char c : label) {
        if (c < '0' || c > '3') fail_input("pattern label '" + label + "' has a non-Z4 digit");
        out.emplace_back(c - '0');
    }
    return out;
}

// --- generator matrices ----------------------------------------------------

/// The n x p matrix V of a generator G = (V, I_n). I_n is implied, never stored.
class GeneratorSpec {
public:
    GeneratorSpec(int n, int p, const std::vector<std::vector<int>>& rows) : n_(n), p_(p)
    {
        if (n < 1) fail_input("generator: n must be positive, got " + std::to_string(n));
        if (p < 1) fail_input("generator: p must be positive, got " + std::to_string(p));
        if (rows.size() != static_cast<std::size_t>(n))
            fail_input("generator: V has " + std::to_string(rows.size()) + " rows, expected n=" + std::to_string(n));
        entries_.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(p));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != static_cast<std::size_t>(p))
                fail_input("generator: row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size())
                           + " entries, expected p=" + std::to_string(p));
            for (int v : rows[i]) {
                if (v < 0 || v > 3)
                    fail_input("generator: row " + std::to_string(i + 1) + " has entry " + std::to_string(v)
                               + " outside 0..3");
                entries_.emplace_back(v);
            }
        }
    }

    /// Shape taken from the rows; V must be non-empty.
    static GeneratorSpec from_rows(const std::vector<std::vector<int>>& rows)
    {
        if (rows.empty()) fail_input("generator: V has no rows");
        return GeneratorSpec(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()), rows);
    }

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] int p() const noexcept { return p_; }

    [[nodiscard]] Z4 at(int row, int col) const
    {
        return entries_[static_cast<std::size_t>(row) * static_cast<std::size_t>(p_) + static_cast<std::size_t>(col)];
    }

    [[nodiscard]] std::span<const Z4> row(int i) const
    {
        return {entries_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(p_),
                static_cast<std::size_t>(p_)};
    }

    [[nodiscard]] std::vector<std::vector<int>> rows() const
    {
        std::vector<std::vector<int>> out(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i)
            for (Z4 x : row(i)) out[static_cast<std::size_t>(i)].push_back(x.value());
        return out;
    }

    /// Entry (row, col) of the full generator (V, I_n); col < n + p.
    [[nodiscard]] Z4 full_at(int row, int col) const
    {
        if (col < p_) return at(row, col);
        return Z4(col - p_ == row ? 1 : 0);
    }

    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;

private:
    int n_;
    int p_;
    std::vector<Z4> entries_;
};

// --- frequency vectors -------------------------------------------------------

/// counts[c] = number of rows of V equal to the pattern with cell code c.
class FrequencyVector {
public:
    FrequencyVector(int p, std::vector<std::int64_t> counts) : p_(p), counts_(std::move(counts))
    {
        if (p < 1) fail_input("frequency vector: p must be positive");
        if (counts_.size() != cell_count(p))
            fail_input("frequency vector: expected " + std::to_string(cell_count(p)) + " cells for p="
                       + std::to_string(p) + ", got " + std::to_string(counts_.size()));
        for (std::size_t c = 0; c < counts_.size(); ++c)
            if (counts_[c] < 0) fail_input("frequency vector: cell " + std::to_string(c) + " is negative");
    }

    /// Infers p from a length of 4^p.
    static FrequencyVector from_counts(std::vector<std::int64_t> counts)
    {
        int p = 0;
        std::size_t len = 1;
        while (len < counts.size()) {
            len *= 4;
            ++p;
        }
        if (len != counts.size() || p < 1)
            fail_input("frequency vector: length " + std::to_string(counts.size()) + " is not 4^p for p >= 1");
        return FrequencyVector(p, std::move(counts));
    }

    [[nodiscard]] int p() const noexcept { return p_; }
    [[nodiscard]] std::size_t size() const noexcept { return counts_.size(); }
    [[nodiscard]] std::int64_t operator[](std::size_t cell) const { return counts_[cell]; }
    [[nodiscard]] const std::vector<std::int64_t>& counts() const noexcept { return counts_; }
    [[nodiscard]] std::int64_t total() const { return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0}); }

    friend bool operator==(const FrequencyVector&, const FrequencyVector&) = default;

private:
    int p_;
    std::vector<std::int64_t> counts_;
};

inline FrequencyVector frequency_vector(const GeneratorSpec& g)
{
    std::vector<std::int64_t> counts(cell_count(g.p()), 0);
    for (int i = 0; i < g.n(); ++i) ++counts[encode_cell(g.row(i))];
    return FrequencyVector(g.p(), std::move(counts));
}

/// A V realizing F: the row patterns in ascending cell order.
inline GeneratorSpec witness_generator(const FrequencyVector& f)
{
    std::vector<std::vector<int>> rows;
    for (std::size_t c = 0; c < f.size(); ++c) {
        for (std::int64_t k = 0; k < f[c]; ++k) {
            std::vector<int> row;
            for (Z4 x : decode_cell(c, f.p())) row.push_back(x.value());
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) fail_input("frequency vector: all cells are zero, no generator rows");
    return GeneratorSpec(static_cast<int>(rows.size()), f.p(), rows);
}

} // namespace qcode
