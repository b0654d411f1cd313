// qcode: construct, analyze and search quaternary-code designs.

#include "qcode/qcode.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <variant>

namespace {

using namespace qcode;

struct Config {
    std::string input;
    std::string output;
    std::string method = "theory";
    std::string format = "json";
    std::string criterion = "max_resolution";
    std::string golden_dir = golden_dir_default();
    int p = 0;
    int n = 0;
    std::int64_t t = 0;
    int top = 10;
    std::optional<int> max_length;
    std::optional<double> force_budget;
};

bool text_format(const Config& cfg) { return cfg.format == "text"; }

ScanOptions scan_options(const Config& cfg)
{
    ScanOptions s;
    if (cfg.force_budget) {
        s.force = true;
        s.budget = *cfg.force_budget;
    }
    return s;
}

int cmd_construct(const Config& cfg)
{
    const GeneratorSpec g = load_generator(cfg.input);
    const BinaryDesign d = build_design(g);
    write_text_file(cfg.output, design_to_text(d));
    if (!cfg.output.empty() && cfg.output != "-")
        std::cerr << "runs=" << d.runs() << " factors=" << d.factors() << "\n";
    return 0;
}

int cmd_analyze(const Config& cfg)
{
    const Method method = parse_method(cfg.method);
    AnalyzeOptions opts;
    opts.max_length = cfg.max_length;
    opts.scan = scan_options(cfg);
    const DesignInput in = load_design_input(cfg.input);

    if (const auto* d = std::get_if<BinaryDesign>(&in)) {
        if (method != Method::bruteforce)
            fail_input("analyze: a design matrix file only supports --method bruteforce (no generator to apply theory to)");
        const int len = cfg.max_length.value_or(static_cast<int>(d->factors()));
        const WordSpectrum s = spectrum_bruteforce(*d, len, opts.scan);
        const DesignSummary summary = summarize(s, static_cast<int>(d->factors()), len);
        if (text_format(cfg))
            write_text_file(cfg.output, "runs=" + std::to_string(d->runs()) + " factors=" + std::to_string(d->factors())
                                            + "\nspectrum:\n" + spectrum_text(s) + summary_text(summary));
        else
            write_text_file(cfg.output, dump(design_report_json(*d, s, summary)));
        return 0;
    }

    const FrequencyVector f =
        std::holds_alternative<GeneratorSpec>(in) ? frequency_vector(std::get<GeneratorSpec>(in)) : std::get<FrequencyVector>(in);
    const TheoryReport rep = analyze_frequency(f, method, opts);
    std::optional<EquationSystem> sys;
    if (f.p() <= max_system_p) sys = build_system(f.p());
    write_text_file(cfg.output, text_format(cfg) ? report_text(rep) : dump(report_json(rep, sys)));
    return 0;
}

int cmd_matrices(const Config& cfg)
{
    const EquationSystem sys = build_system(cfg.p);
    write_text_file(cfg.output, text_format(cfg) ? matrices_text(sys) : dump(matrices_json(sys)));
    return 0;
}

int cmd_verify(const Config& cfg)
{
    const VerifyReport rep = verify(cfg.p, cfg.golden_dir);
    write_text_file(cfg.output, text_format(cfg) ? verify_text(rep) : dump(verify_json(rep)));
    return rep.ok() ? 0 : 1;
}

int cmd_search(const Config& cfg)
{
    const Criterion criterion = parse_criterion(cfg.criterion);
    SearchOptions opts;
    opts.scan = scan_options(cfg);
    if (cfg.force_budget) {
        opts.force = true;
        opts.candidate_budget = *cfg.force_budget;
    }
    const SearchOutcome o = search(cfg.n, cfg.p, criterion, cfg.top, opts);
    write_text_file(cfg.output, text_format(cfg) ? search_text(o) : dump(search_json(o, cfg.n, cfg.p, criterion)));
    return 0;
}

int cmd_extend(const Config& cfg)
{
    const PeriodicFamily fam = periodic_extend(load_frequency(cfg.input), cfg.t);
    write_text_file(cfg.output, text_format(cfg) ? extend_text(fam) : dump(extend_json(fam)));
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Two-level designs from quaternary codes: construction, aliasing, theory and search"};
    app.require_subcommand(1, 1);
    Config cfg;

    auto add_output = [&](CLI::App* sub) {
        sub->add_option("-o,--output", cfg.output, "Output file (default: stdout)");
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    };
    auto add_budget = [&](CLI::App* sub) {
        sub->add_option("--force-budget", cfg.force_budget,
                        "Override the resource guard with this budget (scan cost in cell reads; search candidates)");
    };

    auto* construct = app.add_subcommand("construct", "Build the +-1 design matrix of a generator");
    construct->add_option("-i,--input", cfg.input, "Generator JSON file")->required();
    add_output(construct);

    auto* analyze = app.add_subcommand("analyze", "Word spectrum, GWLP and resolution of a design");
    analyze->add_option("-i,--input", cfg.input, "Generator JSON, frequency-vector JSON or design text file")->required();
    analyze->add_option("--method", cfg.method, "theory, bruteforce or both")
        ->check(CLI::IsMember({"theory", "bruteforce", "both"}));
    analyze->add_option("--max-length", cfg.max_length, "Longest word scanned by brute force");
    add_budget(analyze);
    add_output(analyze);

    auto* matrices = app.add_subcommand("matrices", "Print the C and B matrices for p");
    matrices->add_option("--p", cfg.p, "Number of V columns")->required()->check(CLI::Range(1, max_system_p));
    add_output(matrices);

    auto* verify_cmd = app.add_subcommand("verify", "Check generated matrices and worked examples against golden data");
    verify_cmd->add_option("--p", cfg.p, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
    verify_cmd->add_option("--golden-dir", cfg.golden_dir, "Directory holding the golden files");
    add_output(verify_cmd);

    auto* search_cmd = app.add_subcommand("search", "Rank every frequency vector of a given size");
    search_cmd->add_option("--n", cfg.n, "Rows of V")->required()->check(CLI::PositiveNumber);
    search_cmd->add_option("--p", cfg.p, "Columns of V")->required()->check(CLI::Range(1, 3));
    search_cmd->add_option("--criterion", cfg.criterion, "max_resolution or gma")
        ->check(CLI::IsMember({"max_resolution", "gma"}));
    search_cmd->add_option("--top", cfg.top, "Number of results")->check(CLI::PositiveNumber);
    add_budget(search_cmd);
    add_output(search_cmd);

    auto* extend = app.add_subcommand("extend", "Predict the resolution of F_t = F_0 + t(0,1,...,1)");
    extend->add_option("-i,--input", cfg.input, "Frequency-vector or generator JSON file (p=3)")->required();
    extend->add_option("--t", cfg.t, "Shift")->required()->check(CLI::NonNegativeNumber);
    add_output(extend);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*construct) return cmd_construct(cfg);
        if (*analyze) return cmd_analyze(cfg);
        if (*matrices) return cmd_matrices(cfg);
        if (*verify_cmd) return cmd_verify(cfg);
        if (*search_cmd) return cmd_search(cfg);
        if (*extend) return cmd_extend(cfg);
    } catch (const Error& e) {
        const std::string sub = app.get_subcommands().front()->get_name();
        std::cerr << "qcode " << sub << ": " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "qcode: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
