#pragma once

// Code arithmetic on wordlength equations (k-equations) and aliasing-index
// equations (a-equations) of (1/4)^p-fraction quaternary-code designs.
//
// A k-equation for word type w is a coefficient vector over the 4^p frequency
// cells; the length of the word is sum_i c_i f_i plus the number of V-columns
// it uses. Equations are generated from lower-order ones by the lifting and
// toggling rules below, never from the inner-product closed form (which the
// tests use as an independent oracle).

#include "qcode/error.hpp"
#include "qcode/z4.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qcode {

/// Largest p for which equation systems are materialized (4^6 cells).
inline constexpr int max_system_p = 6;

/// Which of the first 2p design columns a word uses: 0 neither column of
/// pair j, 2 both, 1 or 3 one of the two.
class WordType {
public:
    explicit WordType(std::vector<Z4> entries) : entries_(std::move(entries))
    {
        if (entries_.empty()) fail_input("word type: p must be at least 1");
    }

    static WordType parse(const std::string& label) { return WordType(parse_pattern(label)); }

    static WordType zeros(int p) { return WordType(std::vector<Z4>(static_cast<std::size_t>(p))); }

    static WordType unit(int p, int l, int value)
    {
        WordType w = zeros(p);
        w.entries_.at(static_cast<std::size_t>(l)) = Z4(value);
        return w;
    }

    [[nodiscard]] int p() const noexcept { return static_cast<int>(entries_.size()); }
    [[nodiscard]] Z4 operator[](int j) const { return entries_[static_cast<std::size_t>(j)]; }
    [[nodiscard]] const std::vector<Z4>& entries() const noexcept { return entries_; }
    [[nodiscard]] std::string label() const { return pattern_label(entries_); }

    [[nodiscard]] int lee_sum() const
    {
        int s = 0;
        for (Z4 x : entries_) s += lee_weight(x);
        return s;
    }

    [[nodiscard]] int odd_count() const
    {
        return static_cast<int>(std::count_if(entries_.begin(), entries_.end(), [](Z4 x) { return x.is_odd(); }));
    }

    [[nodiscard]] bool is_zero() const
    {
        return std::all_of(entries_.begin(), entries_.end(), [](Z4 x) { return x.value() == 0; });
    }

    [[nodiscard]] bool all_even() const { return odd_count() == 0; }

    /// Nonzero and either all-even or with first odd entry equal to 1.
    [[nodiscard]] bool is_canonical() const
    {
        if (is_zero()) return false;
        for (Z4 x : entries_)
            if (x.is_odd()) return x.value() == 1;
        return true;
    }

    /// The canonical type with the same equation: every odd entry flipped
    /// 1 <-> 3 when the first odd entry is 3.
    [[nodiscard]] WordType canonical() const
    {
        if (is_canonical()) return *this;
        std::vector<Z4> out = entries_;
        for (Z4& x : out)
            if (x.is_odd()) x = x + Z4(2);
        return WordType(std::move(out));
    }

    [[nodiscard]] std::vector<int> parity() const
    {
        std::vector<int> out;
        out.reserve(entries_.size());
        for (Z4 x : entries_) out.push_back(x.value() & 1);
        return out;
    }

    WordType with_entry(int j, Z4 value) const
    {
        WordType w = *this;
        w.entries_.at(static_cast<std::size_t>(j)) = value;
        return w;
    }

    WordType without_entry(int j) const
    {
        std::vector<Z4> out = entries_;
        out.erase(out.begin() + j);
        return WordType(std::move(out));
    }

    WordType with_inserted(int j, Z4 value) const
    {
        std::vector<Z4> out = entries_;
        out.insert(out.begin() + j, value);
        return WordType(std::move(out));
    }

    friend WordType operator+(const WordType& a, const WordType& b)
    {
        if (a.p() != b.p()) fail_input("word type: mismatched p");
        std::vector<Z4> out(a.entries_.size());
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = a.entries_[j] + b.entries_[j];
        return WordType(std::move(out));
    }

    friend bool operator==(const WordType&, const WordType&) = default;

private:
    std::vector<Z4> entries_;
};

/// Ordering of k-equations: Lee-weight sum, then the vector of entry Lee
/// weights lexicographically, then the entries themselves.
inline bool k_order_less(const WordType& a, const WordType& b)
{
    if (a.lee_sum() != b.lee_sum()) return a.lee_sum() < b.lee_sum();
    for (int j = 0; j < a.p(); ++j) {
        const int la = lee_weight(a[j]);
        const int lb = lee_weight(b[j]);
        if (la != lb) return la < lb;
    }
    return a.label() < b.label();
}

struct KEquation {
    WordType wtype;
    std::vector<std::uint8_t> coeffs;  // in {0,1,2}, one per frequency cell
    int length_constant = 0;           // V-columns used by the word

    [[nodiscard]] int p() const noexcept { return wtype.p(); }

    friend bool operator==(const KEquation&, const KEquation&) = default;
};

struct AEquation {
    std::vector<int> wparity;          // w mod 2
    std::vector<std::uint8_t> coeffs;  // in {0,1}
    int delta = 0;                     // 1 iff the parity vector has even weight

    [[nodiscard]] int p() const noexcept { return static_cast<int>(wparity.size()); }
    [[nodiscard]] int odd_count() const
    {
        return static_cast<int>(std::count(wparity.begin(), wparity.end(), 1));
    }
    [[nodiscard]] std::string label() const
    {
        std::string s;
        for (int b : wparity) s.push_back(static_cast<char>('0' + b));
        return s;
    }

    /// e with rho = 2^-e for an a-equation value a. The floor((a + delta)/2)
    /// term alone undercounts by floor((q-1)/2) for q odd word entries; the
    /// extra term is zero for q <= 2.
    [[nodiscard]] std::int64_t rho_exponent(std::int64_t a) const
    {
        const int q = odd_count();
        return (a + delta) / 2 + (q - 1) / 2;
    }

    friend bool operator==(const AEquation&, const AEquation&) = default;
};

namespace detail {

inline void check_p(int p)
{
    if (p < 1 || p > max_system_p)
        fail_input("equations: p=" + std::to_string(p) + " outside [1, " + std::to_string(max_system_p) + "]");
}

inline void check_position(int l, int limit, const char* what)
{
    if (l < 0 || l > limit)
        fail_input(std::string(what) + ": position " + std::to_string(l) + " outside [0, " + std::to_string(limit) + "]");
}

inline KEquation make_k(WordType w, std::vector<std::uint8_t> coeffs)
{
    const int constant = w.lee_sum();
    return KEquation{std::move(w), std::move(coeffs), constant};
}

} // namespace detail

/// Cellwise Lee-weight addition; the result type is w1 + w2 unless a target
/// type is supplied.
inline KEquation ca_add(const KEquation& k1, const KEquation& k2)
{
    if (k1.p() != k2.p())
        fail_input("ca_add: mismatched p (" + std::to_string(k1.p()) + " vs " + std::to_string(k2.p()) + ")");
    std::vector<std::uint8_t> out(k1.coeffs.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(lee_weight(Z4(k1.coeffs[i] + k2.coeffs[i])));
    return detail::make_k(k1.wtype + k2.wtype, std::move(out));
}

inline KEquation ca_add(const KEquation& k1, const KEquation& k2, const WordType& target)
{
    KEquation k = ca_add(k1, k2);
    if (target.p() != k.p()) fail_input("ca_add: target type has the wrong p");
    k.length_constant = target.lee_sum();
    k.wtype = target;
    return k;
}

inline KEquation zero_equation(int p)
{
    detail::check_p(p);
    return detail::make_k(WordType::zeros(p), std::vector<std::uint8_t>(cell_count(p), 0));
}

/// Word type e_l: coefficient lee_weight(i_l).
inline KEquation basis_single_one(int p, int l)
{
    detail::check_p(p);
    detail::check_position(l, p - 1, "basis_single_one");
    std::vector<std::uint8_t> coeffs(cell_count(p));
    for (std::size_t c = 0; c < coeffs.size(); ++c)
        coeffs[c] = static_cast<std::uint8_t>(lee_weight(Z4(cell_digit(c, p, l))));
    return detail::make_k(WordType::unit(p, l, 1), std::move(coeffs));
}

/// Word type 2 e_l: coefficient 2 where i_l is odd.
inline KEquation basis_single_two(int p, int l)
{
    detail::check_p(p);
    detail::check_position(l, p - 1, "basis_single_two");
    std::vector<std::uint8_t> coeffs(cell_count(p));
    for (std::size_t c = 0; c < coeffs.size(); ++c)
        coeffs[c] = static_cast<std::uint8_t>((cell_digit(c, p, l) & 1) != 0 ? 2 : 0);
    return detail::make_k(WordType::unit(p, l, 2), std::move(coeffs));
}

/// Inserts a 0 at position l of the word type; the new frequency index is
/// summed over, so every cell (i_<l, s, i_>=l) inherits the coefficient of i.
inline KEquation lift_insert_zero(const KEquation& k, int l)
{
    const int p = k.p();
    detail::check_p(p + 1);
    detail::check_position(l, p, "lift_insert_zero");
    const int q = p + 1;
    std::vector<std::uint8_t> coeffs(cell_count(q));
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
        // drop digit l of the (p+1)-digit code
        const int shift = 2 * (q - 1 - l);
        const std::size_t high = c >> (shift + 2);
        const std::size_t low = c & ((std::size_t{1} << shift) - 1);
        coeffs[c] = k.coeffs[(high << shift) | low];
    }
    return detail::make_k(k.wtype.with_inserted(l, Z4(0)), std::move(coeffs));
}

/// From the all-ones type 1_p to (1, 3, ..., 3) of length p+1: cell
/// (s, i_1..i_{p-1}, i_p + s) inherits the coefficient of i.
inline KEquation lift_all_odd(const KEquation& k)
{
    const int p = k.p();
    for (int j = 0; j < p; ++j)
        if (k.wtype[j].value() != 1) fail_input("lift_all_odd: word type " + k.wtype.label() + " is not all ones");
    detail::check_p(p + 1);
    std::vector<std::uint8_t> coeffs(cell_count(p + 1));
    for (std::size_t c = 0; c < cell_count(p); ++c) {
        const std::size_t head = c >> 2;  // i_1 .. i_{p-1}
        const int last = static_cast<int>(c & 3);
        for (int s = 0; s < 4; ++s) {
            const std::size_t target = (((static_cast<std::size_t>(s) << (2 * (p - 1))) | head) << 2)
                                       | static_cast<std::size_t>((last + s) & 3);
            coeffs[target] = k.coeffs[c];
        }
    }
    std::vector<Z4> w(static_cast<std::size_t>(p + 1), Z4(3));
    w[0] = Z4(1);
    return detail::make_k(WordType(std::move(w)), std::move(coeffs));
}

/// k (+) k_{2 e_l}: entry l of the word type moves by 2 (1 <-> 3, 0 <-> 2).
inline KEquation toggle_entry(const KEquation& k, int l)
{
    detail::check_position(l, k.p() - 1, "toggle_entry");
    return ca_add(k, basis_single_two(k.p(), l));
}

/// Type 1_p directly: coefficient 1 on odd digit sums, 2 on sums = 2 mod 4,
/// 0 on sums = 0 mod 4.
inline KEquation all_odd_closed_form(int p)
{
    detail::check_p(p);
    std::vector<std::uint8_t> coeffs(cell_count(p));
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
        int sum = 0;
        for (int j = 0; j < p; ++j) sum += cell_digit(c, p, j);
        coeffs[c] = static_cast<std::uint8_t>(lee_weight(Z4(sum)));
    }
    return detail::make_k(WordType(std::vector<Z4>(static_cast<std::size_t>(p), Z4(1))), std::move(coeffs));
}

/// The aliasing-index equation of a word with at least one odd entry:
/// coefficient 1 on cells whose digits at the odd positions of w sum to an
/// odd number.
inline AEquation a_equation(const WordType& w)
{
    if (w.all_even()) fail_input("a_equation: " + w.label() + " is a complete word: aliasing index is 1");
    const int p = w.p();
    AEquation a;
    a.wparity = w.parity();
    a.coeffs.resize(cell_count(p));
    for (std::size_t c = 0; c < a.coeffs.size(); ++c) {
        int sum = 0;
        for (int j = 0; j < p; ++j)
            if (a.wparity[static_cast<std::size_t>(j)] != 0) sum += cell_digit(c, p, j);
        a.coeffs[c] = static_cast<std::uint8_t>(sum & 1);
    }
    a.delta = (w.odd_count() % 2 == 0) ? 1 : 0;
    return a;
}

/// All canonical word types of length p in k-equation order.
inline std::vector<WordType> canonical_wordtypes(int p)
{
    detail::check_p(p);
    std::vector<WordType> out;
    for (std::size_t c = 1; c < cell_count(p); ++c) {
        WordType w(decode_cell(c, p));
        if (w.is_canonical()) out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end(), k_order_less);
    return out;
}

/// Nonzero parity vectors of length p: odd count, then lexicographic.
inline std::vector<std::vector<int>> a_order(int p)
{
    detail::check_p(p);
    std::vector<std::vector<int>> out;
    for (std::size_t m = 1; m < (std::size_t{1} << p); ++m) {
        std::vector<int> v(static_cast<std::size_t>(p));
        for (int j = 0; j < p; ++j) v[static_cast<std::size_t>(j)] = static_cast<int>((m >> (p - 1 - j)) & 1);
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        const auto wa = std::count(a.begin(), a.end(), 1);
        const auto wb = std::count(b.begin(), b.end(), 1);
        return wa != wb ? wa < wb : a < b;
    });
    return out;
}

struct EquationSystem {
    int p = 0;
    std::vector<WordType> k_order;
    std::vector<KEquation> k_equations;  // row r of C is k_equations[r].coeffs
    std::vector<std::vector<int>> a_order;
    std::vector<AEquation> a_equations;  // row r of B

    [[nodiscard]] std::vector<int> constants() const
    {
        std::vector<int> out;
        for (const auto& k : k_equations) out.push_back(k.length_constant);
        return out;
    }

    [[nodiscard]] std::vector<int> deltas() const
    {
        std::vector<int> out;
        for (const auto& a : a_equations) out.push_back(a.delta);
        return out;
    }

    [[nodiscard]] std::vector<std::vector<int>> c_matrix() const
    {
        std::vector<std::vector<int>> out;
        for (const auto& k : k_equations) out.emplace_back(k.coeffs.begin(), k.coeffs.end());
        return out;
    }

    [[nodiscard]] std::vector<std::vector<int>> b_matrix() const
    {
        std::vector<std::vector<int>> out;
        for (const auto& a : a_equations) out.emplace_back(a.coeffs.begin(), a.coeffs.end());
        return out;
    }

    [[nodiscard]] std::size_t k_index(const std::string& label) const
    {
        for (std::size_t r = 0; r < k_order.size(); ++r)
            if (k_order[r].label() == label) return r;
        fail_input("equation system: no k-equation for type " + label);
    }

    /// Row of the a-equation for the parity class of w.
    [[nodiscard]] std::size_t a_index(const WordType& w) const
    {
        const auto par = w.parity();
        for (std::size_t r = 0; r < a_order.size(); ++r)
            if (a_order[r] == par) return r;
        fail_input("equation system: no a-equation for type " + w.label());
    }
};

namespace detail {

using EquationTable = std::map<std::string, KEquation>;

/// Equation of a canonical type of length p from the canonical equations of
/// length p-1, following the rule chain.
inline KEquation derive_canonical(const WordType& w, const EquationTable& lower, EquationTable& same)
{
    const int p = w.p();
    const auto nonzero =
        std::count_if(w.entries().begin(), w.entries().end(), [](Z4 x) { return x.value() != 0; });

    if (nonzero == 1) {
        for (int l = 0; l < p; ++l) {
            if (w[l].value() == 1) return basis_single_one(p, l);
            if (w[l].value() == 2) return basis_single_two(p, l);
        }
    }
    for (int l = 0; l < p; ++l)
        if (w[l].value() == 0) return lift_insert_zero(lower.at(w.without_entry(l).label()), l);
    for (int l = 0; l < p; ++l) {
        if (w[l].value() == 2) {
            const WordType base = w.with_entry(l, Z4(0));
            auto it = same.find(base.label());
            if (it == same.end()) it = same.emplace(base.label(), derive_canonical(base, lower, same)).first;
            return toggle_entry(it->second, l);
        }
    }
    // all odd, first entry 1: (1,3,...,3) from 1_{p-1}, then toggle back to 1
    KEquation k = lift_all_odd(lower.at(std::string(static_cast<std::size_t>(p - 1), '1')));
    for (int l = 1; l < p; ++l)
        if (w[l].value() == 1) k = toggle_entry(k, l);
    return k;
}

inline EquationTable canonical_table(int p)
{
    EquationTable table;
    if (p == 1) {
        table.emplace("1", basis_single_one(1, 0));
        table.emplace("2", basis_single_two(1, 0));
        return table;
    }
    const EquationTable lower = canonical_table(p - 1);
    for (const auto& w : canonical_wordtypes(p)) {
        if (!table.contains(w.label())) table.emplace(w.label(), derive_canonical(w, lower, table));
    }
    return table;
}

} // namespace detail

/// The k-equation of any nonzero word type. Non-canonical types (first odd
/// entry 3) come from their canonical representative with every odd entry
/// toggled.
inline KEquation k_equation(const WordType& w)
{
    if (w.is_zero()) fail_input("k_equation: the zero word type has no equation");
    detail::check_p(w.p());
    const auto table = detail::canonical_table(w.p());
    KEquation k = table.at(w.canonical().label());
    if (!w.is_canonical())
        for (int l = 0; l < w.p(); ++l)
            if (w[l].is_odd()) k = toggle_entry(k, l);
    return k;
}

inline EquationSystem build_system(int p)
{
    detail::check_p(p);
    EquationSystem sys;
    sys.p = p;
    sys.k_order = canonical_wordtypes(p);
    const auto table = detail::canonical_table(p);
    for (const auto& w : sys.k_order) sys.k_equations.push_back(table.at(w.label()));
    sys.a_order = a_order(p);
    for (const auto& par : sys.a_order) {
        std::vector<Z4> w;
        for (int b : par) w.emplace_back(b);
        sys.a_equations.push_back(a_equation(WordType(std::move(w))));
    }
    return sys;
}

} // namespace qcode
