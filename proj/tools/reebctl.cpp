// reebctl: command-line front end for graph validation, Morse plan
// assembly, surface realization, Reeb extraction and verification.
//
// Exit codes: 0 pass/feasible, 2 infeasible, 3 malformed input,
// 4 internal invariant failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reeb/reeb.hpp"
#include "reeb/testing/suites.hpp"

namespace {

namespace fs = std::filesystem;
using namespace reeb;

constexpr int kPass = 0;
constexpr int kInfeasible = 2;
constexpr int kMalformed = 3;
constexpr int kInvariant = 4;

struct Options {
    std::string input;
    std::string out;
    std::string dir;
    std::optional<int> dim;
    std::uint64_t seed = 20240607;
    bool full = false;
};

void emit(const Options& opt, const std::string& text)
{
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out, std::ios::binary);
    if (!f)
        throw StructuralError("cannot write '" + opt.out + "'");
    f << text;
}

LabeledGraph load_graph(const std::string& path, const Options& opt)
{
    auto g = graph_from_json(read_json_file(path));
    if (opt.dim)
        g.dimension = *opt.dim;
    return g;
}

int report_code(const HypothesisReport& r)
{
    if (r.feasible())
        return kPass;
    return r.structural() ? kMalformed : kInfeasible;
}

void print_violations(const HypothesisReport& r)
{
    for (const auto& v : r.violations)
        std::cerr << v.rule << ": " << v.message << "\n";
}

int cmd_validate(const Options& opt)
{
    auto g = load_graph(opt.input, opt);
    auto r = validate_hypotheses(g);
    emit(opt, dump(to_json(r)));
    print_violations(r);
    return report_code(r);
}

int cmd_synth(const Options& opt)
{
    auto g = load_graph(opt.input, opt);
    auto result = synthesize_good_function(g);
    if (auto* inf = std::get_if<Infeasible>(&result)) {
        emit(opt, dump(Json{{"feasible", false}, {"witness", inf->witness}}));
        std::cerr << "infeasible: " << inf->witness << "\n";
        return kInfeasible;
    }
    emit(opt, dump(to_json(with_heights(g, std::get<std::vector<std::int64_t>>(result)))));
    return kPass;
}

/// Assembles the plan or reports why it cannot be.
std::optional<MorsePlan> plan_or_report(const LabeledGraph& g, int& code)
{
    auto result = assemble(g);
    if (auto* r = std::get_if<HypothesisReport>(&result)) {
        print_violations(*r);
        code = report_code(*r);
        return std::nullopt;
    }
    code = kPass;
    return std::get<MorsePlan>(std::move(result));
}

int cmd_plan(const Options& opt)
{
    int code = kPass;
    auto plan = plan_or_report(load_graph(opt.input, opt), code);
    if (plan)
        emit(opt, dump(to_json(*plan)));
    return code;
}

int cmd_realize(const Options& opt)
{
    int code = kPass;
    auto plan = plan_or_report(load_graph(opt.input, opt), code);
    if (!plan)
        return code;
    auto surface = realize_surface(*plan);
    Json out = to_json(surface.mesh);
    if (opt.full) {
        Json levels = Json::array();
        for (const auto& [h, value] : surface.levels)
            levels.push_back({{"mesh_height", h}, {"value", io::number(value)}});
        out["levels"] = std::move(levels);
    }
    emit(opt, dump(out));
    return kPass;
}

int cmd_reeb(const Options& opt)
{
    auto mesh = mesh_from_json(read_json_file(opt.input));
    emit(opt, dump(to_json(compute_reeb(mesh))));
    return kPass;
}

int cmd_export_dot(const Options& opt)
{
    auto j = read_json_file(opt.input);
    if (j.contains("triangles")) {
        emit(opt, to_dot(compute_reeb(mesh_from_json(j))));
        return kPass;
    }
    auto g = graph_from_json(j);
    if (opt.dim)
        g.dimension = *opt.dim;
    emit(opt, to_dot(g));
    return kPass;
}

int verify_one(const std::string& path, const Options& opt, Json& out)
{
    auto report = verify_graph(load_graph(path, opt));
    out = to_json(report, opt.full);
    if (report.failed_invariant)
        std::cerr << path << ": invariant failure '" << *report.failed_invariant << "'\n";
    if (report.hypotheses)
        print_violations(*report.hypotheses);
    return exit_code(report.verdict());
}

int cmd_verify(const Options& opt)
{
    if (opt.dir.empty()) {
        Json out;
        int code = verify_one(opt.input, opt, out);
        emit(opt, dump(out));
        return code;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(opt.dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    Json results = Json::array();
    int worst = kPass;
    for (const auto& f : files) {
        Json one;
        int code;
        try {
            code = verify_one(f.string(), opt, one);
        } catch (const Error& e) {
            code = kMalformed;
            one = Json{{"verdict", "malformed"}, {"message", e.what()}};
        }
        worst = std::max(worst, code);
        results.push_back({{"file", f.filename().string()}, {"exit", code}, {"report", one}});
    }
    emit(opt, dump(Json{{"schema_version", schema_version}, {"results", results}}));
    return worst;
}

int cmd_selftest(const Options& opt)
{
    using namespace reeb::testing;
    std::vector<SuiteResult> results{snf_suite(opt.seed), synthesis_suite(opt.seed + 1),
                                     surface_roundtrip_suite(opt.seed + 2), reeb_oracle_suite(opt.seed + 3)};
    Json out;
    out["schema_version"] = schema_version;
    out["seed"] = opt.seed;
    out["suites"] = Json::array();
    bool ok = true;
    for (const auto& r : results) {
        Json j{{"name", r.name}, {"cases", r.cases}, {"failures", r.failures}, {"passed", r.passed()}};
        if (!r.first_failure.empty())
            j["first_failure"] = r.first_failure;
        if (opt.full)
            j["seconds"] = r.seconds;
        out["suites"].push_back(std::move(j));
        ok = ok && r.passed();
    }
    out["passed"] = ok;
    emit(opt, dump(out));
    return ok ? kPass : kInvariant;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Reeb graph realization toolkit"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input)
            sub->add_option("input", opt.input, "input JSON file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "write the result here instead of standard output");
        sub->add_option("--dim", opt.dim, "override the graph dimension")->check(CLI::Range(2, 64));
        sub->add_flag("--full", opt.full, "include timings and auxiliary data");
    };

    struct Entry {
        const char* name;
        const char* help;
        int (*run)(const Options&);
    };
    const Entry entries[] = {
        {"validate", "check the realization hypotheses", cmd_validate},
        {"synth-g", "synthesize integer heights satisfying the hypotheses", cmd_synth},
        {"plan", "assemble the Morse function plan", cmd_plan},
        {"realize2d", "triangulate the plan of a dimension-2 graph", cmd_realize},
        {"reeb", "extract the Reeb graph of a mesh", cmd_reeb},
        {"export-dot", "write a graph (or the Reeb graph of a mesh) as DOT", cmd_export_dot},
    };
    std::vector<std::pair<CLI::App*, int (*)(const Options&)>> commands;
    for (const auto& e : entries) {
        auto* sub = app.add_subcommand(e.name, e.help);
        add_common(sub, true);
        commands.emplace_back(sub, e.run);
    }
    auto* verify = app.add_subcommand("verify", "run every applicable verification stage");
    verify->add_option("input", opt.input, "graph JSON file")->check(CLI::ExistingFile);
    verify->add_option("--dir", opt.dir, "verify every .json file in a directory")->check(CLI::ExistingDirectory);
    verify->add_option("--out", opt.out, "write the report here instead of standard output");
    verify->add_option("--dim", opt.dim, "override the graph dimension")->check(CLI::Range(2, 64));
    verify->add_flag("--full", opt.full, "include stage timings");
    commands.emplace_back(verify, cmd_verify);
    auto* selftest = app.add_subcommand("selftest", "run the seeded property suites");
    selftest->add_option("--seed", opt.seed, "seed for the random suites");
    selftest->add_option("--out", opt.out, "write the summary here instead of standard output");
    selftest->add_flag("--full", opt.full, "include suite timings");
    commands.emplace_back(selftest, cmd_selftest);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kMalformed;
    }
    if (verify->parsed() && opt.input.empty() == opt.dir.empty()) {
        std::cerr << "verify: give exactly one of an input file or --dir\n";
        return kMalformed;
    }

    try {
        for (const auto& [sub, run] : commands)
            if (sub->parsed())
                return run(opt);
    } catch (const InvariantError& e) {
        std::cerr << "invariant failure '" << e.id() << "': " << e.what() << "\n";
        return kInvariant;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
    }
    return kMalformed;
}
