#pragma once

// Design properties from the frequency vector alone: K = CF and A = BF, the
// closed-form word spectrum of (1/64)th-fraction designs, end-to-end analysis
// with the brute-force oracle as a cross-check, and the periodic family
// F_t = F_0 + t (0, 1, ..., 1).

#include "qcode/design.hpp"
#include "qcode/equations.hpp"
#include "qcode/error.hpp"
#include "qcode/jchar.hpp"
#include "qcode/rational.hpp"
#include "qcode/z4.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qcode {

struct EquationValues {
    std::vector<std::int64_t> k;  // one per row of C
    std::vector<std::int64_t> a;  // one per row of B
};

inline EquationValues evaluate(const FrequencyVector& f, const EquationSystem& sys)
{
    if (f.p() != sys.p)
        fail_input("evaluate: frequency vector has p=" + std::to_string(f.p()) + ", system has p="
                   + std::to_string(sys.p));
    EquationValues v;
    v.k.reserve(sys.k_equations.size());
    for (const auto& eq : sys.k_equations) {
        std::int64_t s = 0;
        for (std::size_t c = 0; c < eq.coeffs.size(); ++c) s += eq.coeffs[c] * f[c];
        v.k.push_back(s);
    }
    v.a.reserve(sys.a_equations.size());
    for (const auto& eq : sys.a_equations) {
        std::int64_t s = 0;
        for (std::size_t c = 0; c < eq.coeffs.size(); ++c) s += eq.coeffs[c] * f[c];
        v.a.push_back(s);
    }
    return v;
}

/// Aliasing index of each a-equation row.
inline std::vector<Rational> class_rhos(const EquationValues& v, const EquationSystem& sys)
{
    std::vector<Rational> out;
    out.reserve(v.a.size());
    for (std::size_t r = 0; r < v.a.size(); ++r)
        out.push_back(pow2_neg(static_cast<std::uint64_t>(sys.a_equations[r].rho_exponent(v.a[r]))));
    return out;
}

// --- (1/64)th fractions ----------------------------------------------------------

/// The three parity sums that must be positive for the closed-form spectrum:
/// rows with (odd, odd, even), (odd, even, odd) and (even, odd, odd) parity.
inline std::array<std::int64_t, 3> closed_form_condition_sums(const FrequencyVector& f)
{
    if (f.p() != 3) fail_input("closed-form spectrum: requires p=3, got p=" + std::to_string(f.p()));
    std::array<std::int64_t, 3> sums{0, 0, 0};
    for (std::size_t c = 0; c < f.size(); ++c) {
        const int i = cell_digit(c, 3, 0) & 1;
        const int j = cell_digit(c, 3, 1) & 1;
        const int k = cell_digit(c, 3, 2) & 1;
        if (i && j && !k) sums[0] += f[c];
        if (i && !j && k) sums[1] += f[c];
        if (!i && j && k) sums[2] += f[c];
    }
    return sums;
}

inline bool closed_form_preconditions(const FrequencyVector& f)
{
    if (f.p() != 3) return false;
    const auto s = closed_form_condition_sums(f);
    return s[0] > 0 && s[1] > 0 && s[2] > 0;
}

/// One class of words sharing an aliasing index: its parity vector and the
/// k-equation types whose lengths each carry a quarter of the words.
struct AliasingClass {
    std::string parity;
    std::array<std::string, 4> types;
};

/// Classes (a)-(g) followed by the seven complete-word types (h).
inline const std::array<AliasingClass, 7>& p3_aliasing_classes()
{
    static const std::array<AliasingClass, 7> classes{{
        {"100", {"100", "120", "102", "122"}},
        {"010", {"010", "210", "012", "212"}},
        {"001", {"001", "201", "021", "221"}},
        {"110", {"110", "130", "112", "132"}},
        {"101", {"101", "103", "121", "123"}},
        {"011", {"011", "013", "211", "213"}},
        {"111", {"111", "113", "131", "133"}},
    }};
    return classes;
}

inline const std::array<std::string, 7>& p3_complete_types()
{
    static const std::array<std::string, 7> types{"200", "020", "002", "220", "202", "022", "222"};
    return types;
}

/// Word spectrum of a p=3 design from its K and A values: each class with
/// index rho holds 8/rho^2 words split evenly over its four lengths, plus
/// seven complete words.
inline WordSpectrum closed_form_spectrum(const EquationValues& v, const EquationSystem& sys, const FrequencyVector& f)
{
    if (sys.p != 3) fail_input("closed-form spectrum: requires p=3, got p=" + std::to_string(sys.p));
    if (!closed_form_preconditions(f)) {
        const auto s = closed_form_condition_sums(f);
        throw Error(ErrorKind::precondition,
                    "closed-form spectrum: parity sums (" + std::to_string(s[0]) + ", " + std::to_string(s[1]) + ", "
                        + std::to_string(s[2]) + ") are not all positive; use the brute-force method instead");
    }
    const auto rhos = class_rhos(v, sys);

    WordSpectrum spectrum;
    for (const auto& cls : p3_aliasing_classes()) {
        const std::size_t a_row = sys.a_index(WordType::parse(cls.parity));
        const Rational& rho = rhos[a_row];
        const Rational total = Rational(8) / (rho * rho);
        const BigInt quarter = boost::multiprecision::numerator(Rational(total / 4));
        for (const auto& label : cls.types) {
            const std::size_t row = sys.k_index(label);
            const auto length = v.k[row] + sys.k_equations[row].length_constant;
            spectrum.add(static_cast<int>(length), rho, quarter);
        }
    }
    for (const auto& label : p3_complete_types()) {
        const std::size_t row = sys.k_index(label);
        spectrum.add(static_cast<int>(v.k[row] + sys.k_equations[row].length_constant), Rational(1), 1);
    }
    return spectrum;
}

// --- end-to-end analysis -------------------------------------------------------

enum class Method { theory, bruteforce, both };

inline std::string to_string(Method m)
{
    switch (m) {
    case Method::theory: return "theory";
    case Method::bruteforce: return "bruteforce";
    case Method::both: return "both";
    }
    return "?";
}

inline Method parse_method(const std::string& s)
{
    if (s == "theory") return Method::theory;
    if (s == "bruteforce") return Method::bruteforce;
    if (s == "both") return Method::both;
    fail_input("unknown method '" + s + "' (expected theory, bruteforce or both)");
}

struct TheoryReport {
    int n = 0;
    int p = 0;
    BigInt runs = 0;
    std::size_t factors = 0;
    Method method = Method::theory;
    std::optional<EquationValues> values;  // present when p <= max_system_p
    std::vector<Rational> rhos;            // per a-equation row
    WordSpectrum spectrum;
    DesignSummary summary;
    bool preconditions_met = false;
    /// Where the spectrum came from: "theory" or "bruteforce".
    std::string spectrum_source;
};

struct AnalyzeOptions {
    std::optional<int> max_length;  // brute-force scan depth, defaults to all factors
    ScanOptions scan;
};

namespace detail {

/// Every oracle word length must be K_w + |w| for some canonical type w.
inline void check_lengths_against_k(const WordSpectrum& spectrum, const EquationValues& v, const EquationSystem& sys)
{
    std::vector<bool> allowed(1, false);
    for (std::size_t r = 0; r < v.k.size(); ++r) {
        const auto len = static_cast<std::size_t>(v.k[r] + sys.k_equations[r].length_constant);
        if (len >= allowed.size()) allowed.resize(len + 1, false);
        allowed[len] = true;
    }
    for (const auto& w : spectrum.entries()) {
        const auto len = static_cast<std::size_t>(w.length);
        if (len >= allowed.size() || !allowed[len])
            throw Error(ErrorKind::mismatch, "analyze: brute-force word of length " + std::to_string(w.length)
                                                 + " matches no k-equation length");
    }
}

} // namespace detail

inline TheoryReport analyze_frequency(const FrequencyVector& f, Method method, const AnalyzeOptions& opts = {})
{
    if (f.total() < 1) fail_input("analyze: frequency vector is all zero");
    TheoryReport rep;
    rep.n = static_cast<int>(f.total());
    rep.p = f.p();
    rep.runs = BigInt(1) << (2 * rep.n);
    rep.factors = static_cast<std::size_t>(2 * (rep.n + rep.p));
    rep.method = method;
    rep.preconditions_met = closed_form_preconditions(f);

    std::optional<EquationSystem> sys;
    if (rep.p <= max_system_p) {
        sys = build_system(rep.p);
        rep.values = evaluate(f, *sys);
        rep.rhos = class_rhos(*rep.values, *sys);
    }

    const bool want_theory = method != Method::bruteforce;
    const bool want_oracle = method != Method::theory || rep.p < 3;
    if (want_theory && rep.p > 3)
        fail_input("analyze: the theory path covers p <= 3, got p=" + std::to_string(rep.p));
    const int max_len = opts.max_length.value_or(static_cast<int>(rep.factors));

    std::optional<WordSpectrum> theory;
    if (want_theory && rep.p == 3) theory = closed_form_spectrum(*rep.values, *sys, f);

    std::optional<WordSpectrum> oracle;
    if (want_oracle) {
        const BinaryDesign d = build_design(witness_generator(f));
        oracle = spectrum_bruteforce(d, max_len, opts.scan);
        if (want_theory && rep.p < 3 && max_len == static_cast<int>(rep.factors))
            detail::check_lengths_against_k(*oracle, *rep.values, *sys);
    }

    if (theory && oracle) {
        if (max_len != static_cast<int>(rep.factors))
            fail_input("analyze: method=both needs the full scan depth");
        const std::string diff = first_difference(*theory, *oracle);
        if (!diff.empty())
            throw Error(ErrorKind::mismatch, "analyze: theory and brute-force spectra differ at " + diff
                                                 + " (theory vs brute force)");
    }

    if (theory) {
        rep.spectrum = *theory;
        rep.spectrum_source = "theory";
        rep.summary = summarize(rep.spectrum, static_cast<int>(rep.factors));
    } else {
        rep.spectrum = *oracle;
        rep.spectrum_source = "bruteforce";
        rep.summary = summarize(rep.spectrum, static_cast<int>(rep.factors), max_len);
    }
    return rep;
}

inline TheoryReport analyze(const GeneratorSpec& g, Method method, const AnalyzeOptions& opts = {})
{
    return analyze_frequency(frequency_vector(g), method, opts);
}

// --- periodicity -----------------------------------------------------------------

struct PeriodicFamily {
    FrequencyVector f0;
    std::int64_t t = 0;
    FrequencyVector ft;
    int r0 = 0;
    Rational rho0;
    Rational resolution0;
    std::int64_t predicted_r = 0;
    Rational predicted_rho;
    Rational predicted_resolution;
    EquationValues values0;
    EquationValues values_t;
};

/// F_t = F_0 + t on every nonzero cell, with the predicted resolution and a
/// structural check that every k-value moves by 64t and every a-value by 32t.
inline PeriodicFamily periodic_extend(const FrequencyVector& f0, std::int64_t t)
{
    if (f0.p() != 3) fail_input("extend: requires p=3, got p=" + std::to_string(f0.p()));
    if (t < 0) fail_input("extend: t must be nonnegative");
    if (!closed_form_preconditions(f0))
        throw Error(ErrorKind::precondition, "extend: F0 does not satisfy the closed-form spectrum conditions");

    const EquationSystem sys = build_system(3);
    std::vector<std::int64_t> counts = f0.counts();
    for (std::size_t c = 1; c < counts.size(); ++c) counts[c] += t;

    PeriodicFamily fam{f0, t, FrequencyVector(3, std::move(counts)), 0, 0, 0, 0, 0, 0, {}, {}};
    fam.values0 = evaluate(f0, sys);
    fam.values_t = evaluate(fam.ft, sys);
    for (std::size_t r = 0; r < fam.values0.k.size(); ++r)
        if (fam.values_t.k[r] - fam.values0.k[r] != 64 * t)
            throw Error(ErrorKind::mismatch, "extend: k-value of " + sys.k_order[r].label() + " moved by "
                                                 + std::to_string(fam.values_t.k[r] - fam.values0.k[r]));
    for (std::size_t r = 0; r < fam.values0.a.size(); ++r)
        if (fam.values_t.a[r] - fam.values0.a[r] != 32 * t)
            throw Error(ErrorKind::mismatch, "extend: a-value of class " + sys.a_equations[r].label() + " moved by "
                                                 + std::to_string(fam.values_t.a[r] - fam.values0.a[r]));

    const DesignSummary s0 = summarize(closed_form_spectrum(fam.values0, sys, f0), 2 * (static_cast<int>(f0.total()) + 3));
    fam.r0 = *s0.min_length;
    fam.rho0 = *s0.max_rho_at_min_length;
    fam.resolution0 = *s0.resolution;
    fam.predicted_r = fam.r0 + 64 * t;
    fam.predicted_rho = fam.rho0 < 1 ? fam.rho0 * pow2_neg(static_cast<std::uint64_t>(16 * t)) : Rational(1);
    fam.predicted_resolution = Rational(fam.predicted_r + 1) - fam.predicted_rho;
    return fam;
}

} // namespace qcode
