#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library code it is used to check: designs are built entry by entry from
// t.G, spectra come from a plain bitmask loop over column subsets, and
// equation coefficients come from the inner-product closed forms.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using Matrix = std::vector<std::vector<int>>;

inline int lee(int x) { return (x % 4 == 2) ? 2 : (x % 2); }

/// +-1 entries of the Gray image of one Z4 symbol.
inline std::pair<int, int> gray(int x)
{
    switch (((x % 4) + 4) % 4) {
    case 0: return {1, 1};
    case 1: return {1, -1};
    case 2: return {-1, -1};
    default: return {-1, 1};
    }
}

/// Rows of the binary design for G = (V, I_n); run r has t digits base 4, t_1 first.
inline Matrix design(const Matrix& v)
{
    const int n = static_cast<int>(v.size());
    const int p = static_cast<int>(v.front().size());
    Matrix rows;
    for (long r = 0; r < (1L << (2 * n)); ++r) {
        std::vector<int> t(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = static_cast<int>((r >> (2 * (n - 1 - i))) & 3);
        std::vector<int> row;
        for (int j = 0; j < p + n; ++j) {
            int x = 0;
            for (int i = 0; i < n; ++i) {
                const int g = j < p ? v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] : (j - p == i ? 1 : 0);
                x += t[static_cast<std::size_t>(i)] * g;
            }
            const auto [a, b] = gray(x);
            row.push_back(a);
            row.push_back(b);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

/// (length, rho) -> count over every nonempty column subset with nonzero J.
using Spectrum = std::map<std::pair<int, Rational>, std::uint64_t>;

inline Spectrum spectrum(const Matrix& rows, int max_len = 1000)
{
    const int m = static_cast<int>(rows.front().size());
    const long runs = static_cast<long>(rows.size());
    Spectrum out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        const int len = __builtin_popcountll(mask);
        if (len > max_len) continue;
        long j = 0;
        for (const auto& row : rows) {
            int prod = 1;
            for (int c = 0; c < m; ++c)
                if ((mask >> c) & 1U) prod *= row[static_cast<std::size_t>(c)];
            j += prod;
        }
        if (j != 0) ++out[{len, Rational(j < 0 ? -j : j, runs)}];
    }
    return out;
}

/// A_1 .. A_m from a spectrum.
inline std::vector<Rational> gwlp(const Spectrum& s, int m)
{
    std::vector<Rational> a(static_cast<std::size_t>(m), 0);
    for (const auto& [key, count] : s) a[static_cast<std::size_t>(key.first - 1)] += Rational(count) * key.second * key.second;
    return a;
}

/// Cell code -> digits, most significant first.
inline std::vector<int> digits(std::size_t code, int p)
{
    std::vector<int> d(static_cast<std::size_t>(p));
    for (int j = p - 1; j >= 0; --j) {
        d[static_cast<std::size_t>(j)] = static_cast<int>(code % 4);
        code /= 4;
    }
    return d;
}

inline int dot(const std::vector<int>& w, const std::vector<int>& i)
{
    int s = 0;
    for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * i[j];
    return ((s % 4) + 4) % 4;
}

/// k-equation coefficients of type w: lee(w . i) for every cell i.
inline std::vector<int> k_coeffs(const std::vector<int>& w)
{
    const int p = static_cast<int>(w.size());
    std::vector<int> out;
    for (std::size_t c = 0; c < (std::size_t{1} << (2 * p)); ++c) out.push_back(lee(dot(w, digits(c, p))));
    return out;
}

/// a-equation coefficients of type w: (w . i) mod 2.
inline std::vector<int> a_coeffs(const std::vector<int>& w)
{
    const int p = static_cast<int>(w.size());
    std::vector<int> out;
    for (std::size_t c = 0; c < (std::size_t{1} << (2 * p)); ++c) out.push_back(dot(w, digits(c, p)) % 2);
    return out;
}

inline std::vector<int> parse(const std::string& label)
{
    std::vector<int> w;
    for (char c : label) w.push_back(c - '0');
    return w;
}

inline Matrix random_v(std::mt19937& rng, int n, int p)
{
    std::uniform_int_distribution<int> d(0, 3);
    Matrix v(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(p)));
    for (auto& row : v)
        for (auto& x : row) x = d(rng);
    return v;
}

/// Sums over rows with parity (odd,odd,even), (odd,even,odd), (even,odd,odd) all positive.
inline bool meets_p3_conditions(const Matrix& v)
{
    bool a = false, b = false, c = false;
    for (const auto& r : v) {
        const int x = r[0] & 1, y = r[1] & 1, z = r[2] & 1;
        a = a || (x && y && !z);
        b = b || (x && !y && z);
        c = c || (!x && y && z);
    }
    return a && b && c;
}

/// Random p=3 V meeting the conditions (rejection sampling).
inline Matrix random_v_p3(std::mt19937& rng, int n)
{
    for (;;) {
        Matrix v = random_v(rng, n, 3);
        if (meets_p3_conditions(v)) return v;
    }
}

} // namespace oracle
