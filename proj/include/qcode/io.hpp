#pragma once

// File formats and report rendering for the command-line front end.
//
//   generator   JSON object {"n": 4, "p": 3, "V": [[1,1,2], ...]}; n and p optional
//   frequency   JSON array of 4^p nonnegative integers
//   design      text: "runs=R factors=M" header, then one comma-separated +1/-1 row per run
//
// Reports are nlohmann::ordered_json so key order is fixed, and every
// rational is a "num/den" string.

#include "qcode/design.hpp"
#include "qcode/equations.hpp"
#include "qcode/error.hpp"
#include "qcode/jchar.hpp"
#include "qcode/rational.hpp"
#include "qcode/search.hpp"
#include "qcode/theory.hpp"
#include "qcode/z4.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace qcode {

using Json = nlohmann::ordered_json;

// --- raw files -------------------------------------------------------------------

inline std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_input("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Writes to stdout when path is empty or "-".
inline void write_text_file(const std::string& path, const std::string& content)
{
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail_input("cannot open '" + path + "' for writing");
    out << content;
    if (!out) fail_input("failed writing '" + path + "'");
}

inline Json parse_json(const std::string& text, const std::string& source)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // byte offset -> line:column
        const std::size_t at = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(at), '\n');
        const auto nl = text.rfind('\n', at == 0 ? 0 : at - 1);
        const std::size_t col = nl == std::string::npos ? at + 1 : at - nl;
        fail_input(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON parse error: " + e.what());
    }
}

// --- generators and frequency vectors ----------------------------------------------

namespace detail {

inline int json_int(const Json& j, const std::string& what)
{
    if (!j.is_number_integer()) fail_input(what + " must be an integer");
    return j.get<int>();
}

} // namespace detail

inline GeneratorSpec generator_from_json(const Json& j, const std::string& source = "generator")
{
    if (!j.is_object() || !j.contains("V")) fail_input(source + ": expected an object with a \"V\" matrix");
    const Json& v = j.at("V");
    if (!v.is_array() || v.empty()) fail_input(source + ": \"V\" must be a non-empty array of rows");
    std::vector<std::vector<int>> rows;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_array()) fail_input(source + ": V row " + std::to_string(i + 1) + " is not an array");
        std::vector<int> row;
        for (std::size_t c = 0; c < v[i].size(); ++c)
            row.push_back(detail::json_int(v[i][c], source + ": V[" + std::to_string(i + 1) + "][" + std::to_string(c + 1) + "]"));
        rows.push_back(std::move(row));
    }
    const int n = j.contains("n") ? detail::json_int(j.at("n"), source + ": \"n\"") : static_cast<int>(rows.size());
    const int p = j.contains("p") ? detail::json_int(j.at("p"), source + ": \"p\"") : static_cast<int>(rows.front().size());
    return GeneratorSpec(n, p, rows);
}

inline Json generator_to_json(const GeneratorSpec& g)
{
    Json j;
    j["n"] = g.n();
    j["p"] = g.p();
    j["V"] = g.rows();
    return j;
}

inline FrequencyVector frequency_from_json(const Json& j, const std::string& source = "frequency vector")
{
    if (!j.is_array()) fail_input(source + ": expected a JSON array of 4^p integers");
    std::vector<std::int64_t> counts;
    for (std::size_t c = 0; c < j.size(); ++c) {
        if (!j[c].is_number_integer()) fail_input(source + ": entry " + std::to_string(c) + " is not an integer");
        counts.push_back(j[c].get<std::int64_t>());
    }
    return FrequencyVector::from_counts(std::move(counts));
}

// --- design text format ------------------------------------------------------------

inline std::string design_to_text(const BinaryDesign& d)
{
    std::string out = "runs=" + std::to_string(d.runs()) + " factors=" + std::to_string(d.factors()) + "\n";
    out.reserve(out.size() + d.runs() * d.factors() * 3);
    for (std::size_t r = 0; r < d.runs(); ++r) {
        for (std::size_t c = 0; c < d.factors(); ++c) {
            if (c > 0) out.push_back(',');
            out += d.at(r, c) < 0 ? "-1" : "1";
        }
        out.push_back('\n');
    }
    return out;
}

inline BinaryDesign design_from_text(const std::string& text, const std::string& source = "design")
{
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto where = [&] { return source + ":" + std::to_string(lineno) + ": "; };

    std::size_t runs = 0;
    std::size_t factors = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (std::sscanf(line.c_str(), " runs=%zu factors=%zu", &runs, &factors) != 2)
            fail_input(where() + "expected header 'runs=R factors=M'");
        break;
    }
    if (runs == 0 || factors == 0) fail_input(source + ": missing or empty header");

    BinaryDesign d(runs, factors);
    std::size_t r = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (r == runs) fail_input(where() + "more than " + std::to_string(runs) + " runs");
        std::istringstream cells(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(cells, cell, ',')) {
            cell.erase(0, cell.find_first_not_of(" \t"));
            cell.erase(cell.find_last_not_of(" \t") + 1);
            if (c == factors) fail_input(where() + "more than " + std::to_string(factors) + " entries");
            if (cell == "1" || cell == "+1") d.set_negative(r, c, false);
            else if (cell == "-1") d.set_negative(r, c, true);
            else fail_input(where() + "entry " + std::to_string(c + 1) + " is '" + cell + "', expected +1 or -1");
            ++c;
        }
        if (c != factors)
            fail_input(where() + std::to_string(c) + " entries, expected " + std::to_string(factors));
        ++r;
    }
    if (r != runs) fail_input(source + ": " + std::to_string(r) + " runs, header says " + std::to_string(runs));
    return d;
}

// --- input sniffing ------------------------------------------------------------------

using DesignInput = std::variant<GeneratorSpec, FrequencyVector, BinaryDesign>;

/// A design text file, a frequency-vector array or a generator object.
inline DesignInput load_design_input(const std::string& path)
{
    const std::string text = read_text_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) fail_input(path + ": empty file");
    if (text.compare(first, 5, "runs=") == 0) return design_from_text(text, path);
    const Json j = parse_json(text, path);
    if (j.is_array()) return frequency_from_json(j, path);
    return generator_from_json(j, path);
}

inline GeneratorSpec load_generator(const std::string& path)
{
    return generator_from_json(parse_json(read_text_file(path), path), path);
}

inline FrequencyVector load_frequency(const std::string& path)
{
    const std::string text = read_text_file(path);
    const Json j = parse_json(text, path);
    if (j.is_object()) return frequency_vector(generator_from_json(j, path));
    return frequency_from_json(j, path);
}

// --- JSON reports ----------------------------------------------------------------------

inline std::string rational_json(const Rational& r) { return to_fraction_string(r); }

inline Json rationals_json(const std::vector<Rational>& rs)
{
    Json a = Json::array();
    for (const auto& r : rs) a.push_back(rational_json(r));
    return a;
}

inline Json word_classes_json(const std::vector<WordClass>& ws)
{
    Json a = Json::array();
    for (const auto& w : ws) {
        Json e;
        e["length"] = w.length;
        e["rho"] = rational_json(w.rho);
        // counts past 64 bits are written as decimal strings
        if (w.count <= std::numeric_limits<std::uint64_t>::max())
            e["count"] = w.count.convert_to<std::uint64_t>();
        else
            e["count"] = w.count.str();
        a.push_back(std::move(e));
    }
    return a;
}

inline Json summary_json(const DesignSummary& s)
{
    Json j;
    j["gwlp"] = rationals_json(s.gwlp_from_length_one());
    j["resolution"] = s.resolution_string();
    j["resolution_decimal"] = s.resolution ? Json(to_decimal_string(*s.resolution, 7)) : Json(nullptr);
    j["min_length"] = s.min_length ? Json(*s.min_length) : Json(nullptr);
    j["rho_at_min_length"] = s.max_rho_at_min_length ? Json(rational_json(*s.max_rho_at_min_length)) : Json(nullptr);
    j["scanned_length"] = s.scanned_length;
    return j;
}

inline Json report_json(const TheoryReport& rep, const std::optional<EquationSystem>& sys = {})
{
    Json j;
    j["n"] = rep.n;
    j["p"] = rep.p;
    j["runs"] = rep.runs.str();
    j["factors"] = rep.factors;
    j["method"] = to_string(rep.method);
    j["spectrum_source"] = rep.spectrum_source;
    j["preconditions_met"] = rep.preconditions_met;
    if (rep.values) {
        if (sys) {
            Json order = Json::array();
            for (const auto& w : sys->k_order) order.push_back(w.label());
            j["K_order"] = std::move(order);
        }
        j["K"] = rep.values->k;
        if (sys) {
            Json order = Json::array();
            for (const auto& a : sys->a_equations) order.push_back(a.label());
            j["A_order"] = std::move(order);
        }
        j["A"] = rep.values->a;
        j["rhos"] = rationals_json(rep.rhos);
    } else {
        j["K"] = nullptr;
        j["A"] = nullptr;
    }
    j["spectrum"] = word_classes_json(rep.spectrum.entries());
    j["short_words"] = word_classes_json(rep.spectrum.short_words());
    const Json s = summary_json(rep.summary);
    for (const auto& [k, v] : s.items()) j[k] = v;
    return j;
}

/// Report for a bare design matrix, where only the oracle applies.
inline Json design_report_json(const BinaryDesign& d, const WordSpectrum& spectrum, const DesignSummary& summary)
{
    Json j;
    j["runs"] = std::to_string(d.runs());
    j["factors"] = d.factors();
    j["method"] = "bruteforce";
    j["spectrum_source"] = "bruteforce";
    j["spectrum"] = word_classes_json(spectrum.entries());
    j["short_words"] = word_classes_json(spectrum.short_words());
    const Json s = summary_json(summary);
    for (const auto& [k, v] : s.items()) j[k] = v;
    return j;
}

inline Json matrices_json(const EquationSystem& sys)
{
    Json j;
    j["p"] = sys.p;
    Json k_order = Json::array();
    for (const auto& w : sys.k_order) k_order.push_back(w.label());
    j["K_order"] = std::move(k_order);
    j["C"] = sys.c_matrix();
    Json a_order = Json::array();
    for (const auto& a : sys.a_equations) a_order.push_back(a.label());
    j["A_order"] = std::move(a_order);
    j["B"] = sys.b_matrix();
    j["constants"] = sys.constants();
    j["deltas"] = sys.deltas();
    return j;
}

inline Json search_json(const SearchOutcome& o, int n, int p, Criterion criterion)
{
    Json j;
    j["n"] = n;
    j["p"] = p;
    j["criterion"] = to_string(criterion);
    j["candidates"] = o.candidates;
    j["theory_evaluations"] = o.theory_evaluations;
    j["oracle_classes"] = o.oracle_evaluations;
    Json results = Json::array();
    for (const auto& r : o.results) {
        Json e;
        e["F"] = r.f.counts();
        e["K"] = r.report.values ? Json(r.report.values->k) : Json(nullptr);
        e["A"] = r.report.values ? Json(r.report.values->a) : Json(nullptr);
        e["gwlp"] = rationals_json(r.report.summary.gwlp_from_length_one());
        e["resolution"] = r.report.summary.resolution_string();
        e["spectrum_source"] = r.report.spectrum_source;
        e["short_words"] = r.report.spectrum.has_short_words();
        e["witness_V"] = r.witness.rows();
        results.push_back(std::move(e));
    }
    j["results"] = std::move(results);
    return j;
}

inline Json extend_json(const PeriodicFamily& fam)
{
    Json j;
    j["t"] = fam.t;
    j["F0"] = fam.f0.counts();
    j["Ft"] = fam.ft.counts();
    j["n0"] = fam.f0.total();
    j["nt"] = fam.ft.total();
    j["r0"] = fam.r0;
    j["rho0"] = rational_json(fam.rho0);
    j["resolution0"] = rational_json(fam.resolution0);
    j["K0"] = fam.values0.k;
    j["Kt"] = fam.values_t.k;
    j["A0"] = fam.values0.a;
    j["At"] = fam.values_t.a;
    j["r"] = fam.predicted_r;
    j["rho"] = rational_json(fam.predicted_rho);
    j["resolution"] = rational_json(fam.predicted_resolution);
    j["resolution_decimal"] = to_decimal_string(fam.predicted_resolution, 7);
    return j;
}

// --- text renderings ---------------------------------------------------------------------

inline std::string join_ints(const std::vector<std::int64_t>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

inline std::string spectrum_text(const WordSpectrum& spectrum)
{
    std::ostringstream out;
    for (const auto& w : spectrum.entries())
        out << "  length " << std::setw(3) << w.length << "  rho " << std::setw(10) << to_fraction_string(w.rho)
            << "  count " << w.count << "\n";
    for (const auto& w : spectrum.short_words())
        out << "  short  " << std::setw(3) << w.length << "  rho " << std::setw(10) << to_fraction_string(w.rho)
            << "  count " << w.count << "\n";
    return out.str();
}

inline std::string summary_text(const DesignSummary& s)
{
    std::ostringstream out;
    out << "gwlp: (";
    const auto g = s.gwlp_from_length_one();
    for (std::size_t i = 0; i < g.size(); ++i) out << (i ? "," : "") << to_fraction_string(g[i]);
    out << ")\nresolution: " << s.resolution_string();
    if (s.resolution) out << " (" << to_decimal_string(*s.resolution, 7) << ")";
    out << "\n";
    return out.str();
}

inline std::string report_text(const TheoryReport& rep)
{
    std::ostringstream out;
    out << "n=" << rep.n << " p=" << rep.p << " runs=" << rep.runs.str() << " factors=" << rep.factors
        << " method=" << to_string(rep.method) << " spectrum=" << rep.spectrum_source
        << " preconditions=" << (rep.preconditions_met ? "met" : "not met") << "\n";
    if (rep.values) {
        out << "K: " << join_ints(rep.values->k) << "\n";
        out << "A: " << join_ints(rep.values->a) << "\n";
    }
    out << "spectrum:\n" << spectrum_text(rep.spectrum) << summary_text(rep.summary);
    return out.str();
}

/// Row label, then the coefficients in fixed-width columns.
inline std::string matrices_text(const EquationSystem& sys)
{
    std::ostringstream out;
    out << "C (" << sys.k_equations.size() << " x " << cell_count(sys.p) << ")\n";
    for (const auto& k : sys.k_equations) {
        out << std::setw(sys.p + 1) << k.wtype.label() << " +" << k.length_constant << " |";
        for (auto c : k.coeffs) out << ' ' << static_cast<int>(c);
        out << "\n";
    }
    out << "B (" << sys.a_equations.size() << " x " << cell_count(sys.p) << ")\n";
    for (const auto& a : sys.a_equations) {
        out << std::setw(sys.p + 1) << a.label() << " d" << a.delta << " |";
        for (auto c : a.coeffs) out << ' ' << static_cast<int>(c);
        out << "\n";
    }
    return out.str();
}

inline std::string search_text(const SearchOutcome& o)
{
    std::ostringstream out;
    out << "candidates=" << o.candidates << " theory=" << o.theory_evaluations << " oracle_classes=" << o.oracle_evaluations
        << "\n";
    int rank = 1;
    for (const auto& r : o.results) {
        out << "#" << rank++ << " resolution " << r.report.summary.resolution_string() << "  rows";
        for (int i = 0; i < r.witness.n(); ++i) out << ' ' << pattern_label(r.witness.row(i));
        out << "\n  " << summary_text(r.report.summary);
    }
    return out.str();
}

inline std::string extend_text(const PeriodicFamily& fam)
{
    std::ostringstream out;
    out << "t=" << fam.t << " n0=" << fam.f0.total() << " nt=" << fam.ft.total() << "\n";
    out << "Ft: " << join_ints(fam.ft.counts()) << "\n";
    out << "r0=" << fam.r0 << " rho0=" << to_fraction_string(fam.rho0) << "\n";
    out << "r=" << fam.predicted_r << " rho=" << to_fraction_string(fam.predicted_rho)
        << " resolution=" << to_fraction_string(fam.predicted_resolution) << " ("
        << to_decimal_string(fam.predicted_resolution, 7) << ")\n";
    return out.str();
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace qcode
