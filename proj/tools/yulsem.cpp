// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <yulsem/analysis.hpp>
#include <yulsem/bigstep.hpp>
#include <yulsem/evm.hpp>
#include <yulsem/harness.hpp>
#include <yulsem/objects.hpp>
#include <yulsem/parser.hpp>
#include <yulsem/smallstep.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace yulsem;

namespace
{
constexpr int exit_regular = 0;
constexpr int exit_host_error = 1;
constexpr int exit_external = 2;
constexpr int exit_fuel = 3;

struct RunFlags
{
    std::string file;
    std::string semantics = "small";
    uint64_t gas_limit = default_gas_limit;
    std::optional<uint64_t> fuel;
    bool opt = false;
    bool trace = false;
    bool pretty = false;
    bool json = false;
    bool no_check = false;
    bool time = false;
};

std::string read_file(const std::string& path)
{
    std::ifstream in{path, std::ios::binary};
    if (!in)
        throw HostError{"cannot open " + path};
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// A parsed input file: a bare block or an object.
struct Program
{
    std::string source;
    std::optional<YulObject> object;
    Block block;
};

Program load(const std::string& path, const Dialect& dialect)
{
    Program p;
    p.source = read_file(path);
    if (is_object_source(p.source))
    {
        p.object = parse_object(p.source, dialect);
        p.block = p.object->code;
    }
    else
        p.block = parse_program(p.source, dialect);
    return p;
}

void print_diagnostic(const std::string& file, const ParseError& e)
{
    std::cerr << file << ":" << e.what() << "\n";
}

std::string trace_line(const TraceEvent& ev, bool pretty_text)
{
    if (pretty_text)
    {
        std::ostringstream os;
        os << std::setw(8) << ev.step << "  " << std::left << std::setw(14) << ev.rule << std::right
           << " depth=" << ev.depth << " gas=" << ev.gas << "  " << ev.focus;
        return os.str();
    }
    return nlohmann::json{{"step", ev.step}, {"rule", ev.rule}, {"focus", ev.focus}, {"depth", ev.depth},
        {"gas", ev.gas}}
        .dump();
}

nlohmann::json report_json(const Outcome& o, const std::string& engine)
{
    nlohmann::json storage = nlohmann::json::object();
    for (const auto& [k, v] : o.g.storage)
        storage[k.to_hex()] = v.to_hex();
    nlohmann::json j;
    j["engine"] = engine;
    j["status"] = o.status == Status::finished ? "finished" : "fuel-exhausted";
    j["mode"] = o.status == Status::finished ? to_string(o.result) : "fuel-exhausted";
    j["steps"] = o.steps;
    j["gasUsed"] = o.g.gas_limit - o.g.gas_remaining;
    j["gasRemaining"] = o.g.gas_remaining;
    j["storage"] = std::move(storage);
    j["memory"] = to_hex(o.g.memory);
    j["returndata"] = to_hex(o.g.returndata);
    j["chargeCount"] = o.g.charge_count;
    return j;
}

void print_report(const nlohmann::json& r, bool json)
{
    if (json)
    {
        std::cout << r.dump() << "\n";
        return;
    }
    for (const auto& [key, value] : r.items())
        std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
}

int exit_code(const Outcome& o)
{
    if (o.status == Status::fuel_exhausted)
        return exit_fuel;
    return o.is_external() ? exit_external : exit_regular;
}

bool report_analysis(const std::string& file, const Block& block, const Dialect& dialect, bool json)
{
    const auto errors = analyze(block, dialect);
    if (json)
    {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& e : errors)
            arr.push_back(to_json(e));
        std::cout << nlohmann::json{{"file", file}, {"errors", arr}}.dump() << "\n";
    }
    else
        for (const auto& e : errors)
            std::cerr << file << ":" << e.span.line << ":" << e.span.column << ": " << to_string(e.kind) << ": "
                      << e.message << "\n";
    return errors.empty();
}

int cmd_parse(const std::string& file, bool json)
{
    const ObjectDialect dialect{GasTable::from_environment()};
    const Program p = load(file, dialect);
    if (p.object)
        std::cout << (json ? object_to_json(*p.object).dump(2) : pretty(*p.object)) << "\n";
    else
        std::cout << (json ? ast_to_json(p.block).dump(2) : pretty(p.block)) << "\n";
    return 0;
}

int cmd_check(const std::string& file, bool json)
{
    const ObjectDialect dialect{GasTable::from_environment()};
    const Program p = load(file, dialect);
    return report_analysis(file, p.block, dialect, json) ? 0 : 1;
}

Outcome execute(const Dialect& dialect, const Block& block, GlobalState g, const RunFlags& f)
{
    if (f.semantics == "big")
    {
        Outcome out;
        run_with_stack([&] {
            BigStep engine{dialect, EvalOptions{f.fuel, default_depth_limit, nullptr}};
            out = engine.run(block, std::move(g));
        });
        return out;
    }
    SmallStepOptions so;
    so.fuel = f.fuel;
    so.collapse_frames = f.opt;
    if (f.trace)
        so.trace = [&f](const TraceEvent& ev) { std::cout << trace_line(ev, f.pretty) << "\n"; };
    Machine m{dialect, so};
    m.inject(block, std::move(g));
    return m.run();
}

int cmd_run(const RunFlags& f)
{
    if (f.semantics != "big" && f.semantics != "small")
        throw HostError{"--semantics must be big or small"};
    if (f.trace && f.semantics == "big")
        throw HostError{"--trace requires --semantics small"};
    const GasTable table = GasTable::from_environment();
    const ObjectDialect parse_dialect{table};
    const Program p = load(f.file, parse_dialect);
    if (!f.no_check && !report_analysis(f.file, p.block, parse_dialect, false))
        return exit_host_error;

    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    if (p.object)
    {
        const ObjectRunner runner = [&](const Dialect& d, const Block& b, GlobalState g) {
            return execute(d, b, std::move(g), f);
        };
        out = run_object(*p.object, parse_dialect.initial_state(f.gas_limit), runner, table).outcome;
    }
    else
    {
        const EvmDialect dialect{table};
        out = execute(dialect, p.block, dialect.initial_state(f.gas_limit), f);
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    auto report = report_json(out, f.semantics);
    if (f.time)
        report["wallTimeSeconds"] = elapsed.count();
    print_report(report, f.json);
    return exit_code(out);
}

std::pair<uint64_t, uint64_t> parse_range(const std::string& text)
{
    const auto dots = text.find("..");
    try
    {
        if (dots == std::string::npos)
        {
            const uint64_t n = std::stoull(text);
            return {n, n};
        }
        return {std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
    }
    catch (const std::exception&)
    {
        throw HostError{"malformed seed range '" + text + "', expected A..B"};
    }
}

void write_repro(const std::filesystem::path& dir, const std::string& stem, const Block& program,
    const DiffVerdict& verdict)
{
    std::filesystem::create_directories(dir);
    std::ofstream{dir / (stem + ".yul")} << pretty(program) << "\n";
    std::ofstream{dir / (stem + ".verdict.json")} << to_json(verdict).dump(2) << "\n";
}

struct DiffFlags
{
    std::vector<std::string> files;
    std::string seeds;
    unsigned jobs = 1;
    uint64_t fuel = 1'000'000;
    uint64_t gas_limit = default_gas_limit;
    std::string out_dir = "repros";
    bool json = false;
    bool no_shrink = false;
    std::string inject_bug;
};

int cmd_diff(const DiffFlags& f)
{
    const EvmDialect dialect{GasTable::from_environment()};
    DiffOptions options;
    options.fuel = f.fuel;
    options.gas_limit = f.gas_limit;
    if (f.inject_bug == "left-to-right-args")
        options.small_arg_order = ArgOrder::left_to_right;
    else if (!f.inject_bug.empty())
        throw HostError{"unknown --inject-bug '" + f.inject_bug + "'"};

    uint64_t failures = 0;
    for (const auto& file : f.files)
    {
        const Block program = parse_program(read_file(file), dialect);
        if (!report_analysis(file, program, dialect, false))
            return exit_host_error;
        const DiffVerdict v = diff_one(program, dialect, options);
        if (f.json)
        {
            auto j = to_json(v);
            j["file"] = file;
            std::cout << j.dump() << "\n";
        }
        else
            std::cout << file << ": " << to_string(v.verdict) << (v.field.empty() ? "" : " (" + v.field + ")")
                      << "\n";
        failures += v.failing() ? 1 : 0;
    }

    if (!f.seeds.empty())
    {
        const auto [first, last] = parse_range(f.seeds);
        const DiffSummary s = run_seeds(first, last, GenConfig{}, dialect, options, f.jobs);
        for (const auto& r : s.results)
        {
            if (f.json)
                std::cout << nlohmann::json{{"seed", r.seed}, {"verdict", to_string(r.verdict)}, {"field", r.field}}
                                 .dump()
                          << "\n";
            if (!r.failure)
                continue;
            ++failures;
            const Block program = f.no_shrink ? r.failure->program : shrink(r.failure->program, dialect, options);
            const DiffVerdict v = diff_one(program, dialect, options);
            const std::string stem = "seed-" + std::to_string(r.seed);
            write_repro(f.out_dir, stem, program, v);
            std::cerr << "seed " << r.seed << ": " << to_string(r.verdict) << " (" << r.field
                      << "), repro: " << (std::filesystem::path{f.out_dir} / (stem + ".yul")).string() << "\n";
        }
        const std::string line = std::to_string(s.agree) + " agree, " + std::to_string(s.disagree) + " disagree, " +
                                 std::to_string(s.both_nonterminating) + " both-nonterminating-at-fuel, " +
                                 std::to_string(s.host_error) + " host-error";
        (f.json ? std::cerr : std::cout) << line << "\n";
    }
    return failures == 0 ? 0 : 1;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Executable operational semantics for Yul"};
    app.require_subcommand(1);

    std::string parse_file;
    bool parse_json = false;
    auto* parse = app.add_subcommand("parse", "Parse a file and print it canonically");
    parse->add_option("file", parse_file)->required();
    parse->add_flag("--json", parse_json, "Print the AST as JSON");

    std::string check_file;
    bool check_json = false;
    auto* check = app.add_subcommand("check", "Run the static checks");
    check->add_option("file", check_file)->required();
    check->add_flag("--json", check_json, "Print diagnostics as JSON");

    RunFlags run_flags;
    auto add_run_options = [&run_flags](CLI::App* cmd) {
        cmd->add_option("file", run_flags.file)->required();
        cmd->add_option("--semantics", run_flags.semantics, "big or small")->capture_default_str();
        cmd->add_option("--gas-limit", run_flags.gas_limit, "Gas limit")->capture_default_str();
        cmd->add_option("--fuel", run_flags.fuel, "Step budget");
        cmd->add_flag("--opt", run_flags.opt, "Collapse redundant frames");
        cmd->add_flag("--pretty", run_flags.pretty, "Human-readable trace");
        cmd->add_flag("--json", run_flags.json, "Machine-readable report");
        cmd->add_flag("--no-check", run_flags.no_check, "Skip the static checks");
        cmd->add_flag("--time", run_flags.time, "Include wall time in the report");
    };
    auto* run = app.add_subcommand("run", "Evaluate a program");
    add_run_options(run);
    run->add_flag("--trace", run_flags.trace, "Stream small-step reductions as JSON lines");
    auto* trace = app.add_subcommand("trace", "Evaluate with the small-step machine, printing every step");
    add_run_options(trace);

    DiffFlags diff_flags;
    auto* diff = app.add_subcommand("diff", "Compare big-step and small-step evaluation");
    diff->add_option("files", diff_flags.files, "Programs to compare");
    diff->add_option("--seeds", diff_flags.seeds, "Generated seed range A..B");
    diff->add_option("--jobs", diff_flags.jobs, "Worker threads")->capture_default_str();
    diff->add_option("--fuel", diff_flags.fuel, "Step budget per engine")->capture_default_str();
    diff->add_option("--gas-limit", diff_flags.gas_limit, "Gas limit")->capture_default_str();
    diff->add_option("--out", diff_flags.out_dir, "Directory for repro files")->capture_default_str();
    diff->add_flag("--json", diff_flags.json, "Stream verdicts as JSON lines");
    diff->add_flag("--no-shrink", diff_flags.no_shrink, "Write failing programs unshrunk");
    diff->add_option("--inject-bug", diff_flags.inject_bug, "Test fixture: left-to-right-args")->group("");

    uint64_t gen_seed = 0;
    auto* gen = app.add_subcommand("gen", "Print the program generated for a seed");
    gen->add_option("seed", gen_seed)->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (parse->parsed())
            return cmd_parse(parse_file, parse_json);
        if (check->parsed())
            return cmd_check(check_file, check_json);
        if (run->parsed())
            return cmd_run(run_flags);
        if (trace->parsed())
        {
            run_flags.trace = true;
            run_flags.semantics = "small";
            return cmd_run(run_flags);
        }
        if (diff->parsed())
            return cmd_diff(diff_flags);
        if (gen->parsed())
        {
            GenConfig cfg;
            cfg.seed = gen_seed;
            std::cout << pretty(generate(cfg, EvmDialect{})) << "\n";
            return 0;
        }
    }
    catch (const ParseError& e)
    {
        const std::string& file = parse->parsed() ? parse_file : check->parsed() ? check_file : run_flags.file;
        print_diagnostic(file, e);
        return exit_host_error;
    }
    catch (const HostError& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_host_error;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_host_error;
    }
    return 0;
}
