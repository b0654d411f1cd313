#pragma once

// Golden data (the printed matrices and worked examples, transcribed once into
// data/golden) and the verification run that regenerates everything and
// diffs it against them. Golden files are only ever read.

#include "qcode/equations.hpp"
#include "qcode/error.hpp"
#include "qcode/io.hpp"
#include "qcode/theory.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

namespace qcode {

/// FNV-1a, 64-bit, as 16 lowercase hex digits.
inline std::string fnv1a64(const std::string& s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Digits of each C row concatenated, rows joined by newlines, then "|", then B likewise.
inline std::string matrix_checksum(const std::vector<std::vector<int>>& c, const std::vector<std::vector<int>>& b)
{
    auto rows = [](const std::vector<std::vector<int>>& m) {
        std::string s;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r) s.push_back('\n');
            for (int v : m[r]) s += std::to_string(v);
        }
        return s;
    };
    return fnv1a64(rows(c) + "|" + rows(b));
}

struct GoldenMatrices {
    int p = 0;
    std::vector<std::string> k_order;
    std::vector<std::vector<int>> c;
    std::vector<std::string> a_order;
    std::vector<std::vector<int>> b;
    std::vector<int> constants;  // p=3 only
    std::vector<int> deltas;     // p=3 only
};

inline std::string golden_dir_default()
{
#ifdef QCODE_DATA_DIR
    return std::string(QCODE_DATA_DIR) + "/golden";
#else
    return "data/golden";
#endif
}

/// Loads matrices_p<p>.json and checks its transcription checksum.
inline GoldenMatrices load_golden_matrices(int p, const std::string& dir = golden_dir_default())
{
    const std::string path = dir + "/matrices_p" + std::to_string(p) + ".json";
    const Json j = parse_json(read_text_file(path), path);
    GoldenMatrices g;
    try {
        g.p = j.at("p").get<int>();
        g.k_order = j.at("K_order").get<std::vector<std::string>>();
        g.c = j.at("C").get<std::vector<std::vector<int>>>();
        g.a_order = j.at("A_order").get<std::vector<std::string>>();
        g.b = j.at("B").get<std::vector<std::vector<int>>>();
        if (j.contains("constants")) g.constants = j.at("constants").get<std::vector<int>>();
        if (j.contains("deltas")) g.deltas = j.at("deltas").get<std::vector<int>>();
        const std::string expected = j.at("checksum").get<std::string>();
        const std::string got = matrix_checksum(g.c, g.b);
        if (got != expected)
            fail_input(path + ": transcription checksum " + got + " does not match recorded " + expected);
    } catch (const nlohmann::json::exception& e) {
        fail_input(path + ": " + e.what());
    }
    if (g.p != p) fail_input(path + ": records p=" + std::to_string(g.p));
    return g;
}

inline Json load_golden_examples(const std::string& dir = golden_dir_default())
{
    const std::string path = dir + "/examples.json";
    return parse_json(read_text_file(path), path);
}

// --- verification ------------------------------------------------------------------------

struct VerifyItem {
    std::string name;
    bool ok = true;
    std::vector<std::string> diffs;  // itemized, capped
};

struct VerifyReport {
    int p = 0;
    std::vector<VerifyItem> items;

    [[nodiscard]] bool ok() const
    {
        for (const auto& i : items)
            if (!i.ok) return false;
        return true;
    }
};

namespace detail {

inline constexpr std::size_t max_listed_diffs = 20;

inline void note(VerifyItem& item, const std::string& diff)
{
    item.ok = false;
    if (item.diffs.size() < max_listed_diffs) item.diffs.push_back(diff);
}

inline VerifyItem diff_matrix(const std::string& name, const std::vector<std::string>& labels,
                              const std::vector<std::vector<int>>& expected, const std::vector<std::vector<int>>& got)
{
    VerifyItem item{name, true, {}};
    if (expected.size() != got.size())
        note(item, "row count: expected " + std::to_string(expected.size()) + ", got " + std::to_string(got.size()));
    for (std::size_t r = 0; r < std::min(expected.size(), got.size()); ++r) {
        const std::string label = r < labels.size() ? labels[r] : std::to_string(r);
        if (expected[r].size() != got[r].size()) {
            note(item, "row " + label + ": width expected " + std::to_string(expected[r].size()) + ", got "
                           + std::to_string(got[r].size()));
            continue;
        }
        for (std::size_t c = 0; c < expected[r].size(); ++c)
            if (expected[r][c] != got[r][c])
                note(item, "row " + label + " cell " + std::to_string(c) + ": expected " + std::to_string(expected[r][c])
                               + ", got " + std::to_string(got[r][c]));
    }
    return item;
}

template <class T>
VerifyItem diff_list(const std::string& name, const std::vector<T>& expected, const std::vector<T>& got)
{
    VerifyItem item{name, true, {}};
    if (expected.size() != got.size())
        note(item, "length: expected " + std::to_string(expected.size()) + ", got " + std::to_string(got.size()));
    for (std::size_t i = 0; i < std::min(expected.size(), got.size()); ++i) {
        if (expected[i] != got[i]) {
            std::string e, g;
            if constexpr (std::is_same_v<T, std::string>) {
                e = expected[i];
                g = got[i];
            } else {
                e = std::to_string(expected[i]);
                g = std::to_string(got[i]);
            }
            note(item, "index " + std::to_string(i) + ": expected " + e + ", got " + g);
        }
    }
    return item;
}

inline VerifyItem check(const std::string& name, bool ok, const std::string& detail_text)
{
    VerifyItem item{name, true, {}};
    if (!ok) note(item, detail_text);
    return item;
}

inline std::vector<std::string> labels_of(const std::vector<WordType>& ws)
{
    std::vector<std::string> out;
    for (const auto& w : ws) out.push_back(w.label());
    return out;
}

inline std::vector<std::string> a_labels(const EquationSystem& sys)
{
    std::vector<std::string> out;
    for (const auto& a : sys.a_equations) out.push_back(a.label());
    return out;
}

inline std::vector<int> to_ints(const std::vector<std::uint8_t>& v) { return {v.begin(), v.end()}; }

inline std::vector<std::string> partition_labels(const KEquation& k, int value)
{
    std::vector<std::string> out;
    for (std::size_t c = 0; c < k.coeffs.size(); ++c)
        if (k.coeffs[c] == value) out.push_back(pattern_label(decode_cell(c, k.p())));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::string> sorted(std::vector<std::string> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace detail

/// Regenerates C, B, constants and deltas for p and diffs them against the
/// golden files; for p = 2 and 3 also re-runs the worked examples for that p.
inline VerifyReport verify(int p, const std::string& dir = golden_dir_default())
{
    if (p < 1 || p > 3) fail_input("verify: p must be 1, 2 or 3");
    using namespace detail;
    VerifyReport rep;
    rep.p = p;

    const GoldenMatrices g = load_golden_matrices(p, dir);
    const EquationSystem sys = build_system(p);
    rep.items.push_back(diff_list("K_order", g.k_order, labels_of(sys.k_order)));
    rep.items.push_back(diff_matrix("C", g.k_order, g.c, sys.c_matrix()));
    rep.items.push_back(diff_list("A_order", g.a_order, a_labels(sys)));
    rep.items.push_back(diff_matrix("B", g.a_order, g.b, sys.b_matrix()));
    if (!g.constants.empty()) rep.items.push_back(diff_list("constants", g.constants, sys.constants()));
    if (!g.deltas.empty()) rep.items.push_back(diff_list("deltas", g.deltas, sys.deltas()));

    const Json ex = load_golden_examples(dir);

    if (p == 2) {
        const Json& e1 = ex.at("example1");
        const KEquation sum = ca_add(k_equation(WordType::parse("10")), k_equation(WordType::parse("02")));
        rep.items.push_back(diff_list("example1 k10", e1.at("k10").get<std::vector<int>>(),
                                      to_ints(k_equation(WordType::parse("10")).coeffs)));
        rep.items.push_back(diff_list("example1 k02", e1.at("k02").get<std::vector<int>>(),
                                      to_ints(k_equation(WordType::parse("02")).coeffs)));
        rep.items.push_back(diff_list("example1 k10+k02", e1.at("k10_plus_k02").get<std::vector<int>>(), to_ints(sum.coeffs)));
        rep.items.push_back(diff_list("example1 k10+k02 = k12", to_ints(k_equation(WordType::parse("12")).coeffs),
                                      to_ints(sum.coeffs)));

        const Json& e2 = ex.at("example2");
        const KEquation k11 = k_equation(WordType::parse("11"));
        for (int v = 0; v <= 2; ++v) {
            const std::string key = "C" + std::to_string(v);
            rep.items.push_back(diff_list("example2 " + key, sorted(e2.at(key).get<std::vector<std::string>>()),
                                          partition_labels(k11, v)));
        }
    }

    if (p == 3) {
        const Json& e4 = ex.at("example4");
        const GeneratorSpec gen = generator_from_json(e4, "example4");
        const FrequencyVector f = frequency_vector(gen);
        std::vector<std::int64_t> nonzero;
        for (std::size_t c = 0; c < f.size(); ++c)
            if (f[c] != 0) nonzero.push_back(static_cast<std::int64_t>(c));
        rep.items.push_back(diff_list("example4 F", e4.at("F_nonzero_cells").get<std::vector<std::int64_t>>(), nonzero));

        const BinaryDesign d = build_design(gen);
        rep.items.push_back(check("example4 size",
                                  d.runs() == e4.at("runs").get<std::size_t>() && d.factors() == e4.at("factors").get<std::size_t>(),
                                  "design is " + std::to_string(d.runs()) + " x " + std::to_string(d.factors())));

        const EquationValues v = evaluate(f, sys);
        rep.items.push_back(diff_list("example4 K (as printed)", e4.at("K").get<std::vector<std::int64_t>>(), v.k));
        rep.items.push_back(diff_list("example4 A", e4.at("A").get<std::vector<std::int64_t>>(), v.a));

        const TheoryReport r = analyze(gen, Method::both);
        std::vector<std::string> want_spec, got_spec;
        for (const auto& w : e4.at("spectrum"))
            want_spec.push_back(std::to_string(w.at("length").get<int>()) + ":" + w.at("rho").get<std::string>() + ":"
                                + std::to_string(w.at("count").get<std::uint64_t>()));
        for (const auto& w : r.spectrum.entries())
            got_spec.push_back(std::to_string(w.length) + ":" + to_fraction_string(w.rho) + ":" + w.count.str());
        rep.items.push_back(diff_list("example4 spectrum (theory = brute force)", want_spec, got_spec));

        std::vector<std::string> gwlp;
        for (const auto& a : r.summary.gwlp_from_length_one()) gwlp.push_back(to_fraction_string(a));
        std::vector<std::string> want_gwlp;
        for (const auto& a : e4.at("gwlp_from_length_1")) want_gwlp.push_back(std::to_string(a.get<int>()) + "/1");
        rep.items.push_back(diff_list("example4 GWLP", want_gwlp, gwlp));
        rep.items.push_back(check("example4 resolution", r.summary.resolution_string() == e4.at("resolution").get<std::string>(),
                                  "got " + r.summary.resolution_string()));

        const Json& e5 = ex.at("example5");
        const PeriodicFamily fam = periodic_extend(f, e5.at("t").get<std::int64_t>());
        rep.items.push_back(diff_list("example5 Ft", e5.at("Ft").get<std::vector<std::int64_t>>(), fam.ft.counts()));
        rep.items.push_back(check("example5 r", fam.predicted_r == e5.at("r").get<std::int64_t>(),
                                  "got " + std::to_string(fam.predicted_r)));
        rep.items.push_back(check("example5 rho", to_fraction_string(fam.predicted_rho) == e5.at("rho").get<std::string>(),
                                  "got " + to_fraction_string(fam.predicted_rho)));
        const std::string dec = to_decimal_string(fam.predicted_resolution, 7);
        rep.items.push_back(check("example5 resolution", dec == e5.at("resolution_7dp").get<std::string>(), "got " + dec));
    }

    const auto counts = ex.at("canonical_type_counts");
    const std::string key = std::to_string(p);
    if (counts.contains(key))
        rep.items.push_back(check("canonical type count", canonical_wordtypes(p).size() == counts.at(key).get<std::size_t>(),
                                  "got " + std::to_string(canonical_wordtypes(p).size())));
    return rep;
}

inline Json verify_json(const VerifyReport& rep)
{
    Json j;
    j["p"] = rep.p;
    j["ok"] = rep.ok();
    Json items = Json::array();
    for (const auto& i : rep.items) {
        Json e;
        e["name"] = i.name;
        e["ok"] = i.ok;
        e["diffs"] = i.diffs;
        items.push_back(std::move(e));
    }
    j["items"] = std::move(items);
    return j;
}

inline std::string verify_text(const VerifyReport& rep)
{
    std::string out;
    for (const auto& i : rep.items) {
        out += std::string(i.ok ? "ok    " : "FAIL  ") + i.name + "\n";
        for (const auto& d : i.diffs) out += "        " + d + "\n";
    }
    out += std::string(rep.ok() ? "verify p=" : "verify FAILED p=") + std::to_string(rep.p) + "\n";
    return out;
}

} // namespace qcode
