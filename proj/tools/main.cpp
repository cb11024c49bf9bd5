#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "documents.hpp"
#include "effdiff/errors.hpp"
#include "suites.hpp"

namespace {

using namespace effdiff;
using namespace effdiff::cli;

enum Exit { ok = 0, failed = 1, usage = 2, aborted = 3 };

std::string read_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write '" + path + "'");
    out << text;
}

// A config file is either a config document or bare JSON.
RunConfig load_config(const std::string& path) {
    std::string text = read_text(path);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return RunConfig::from_json(parse_document("effdiff/1 config\n" + text).body);
    Document doc = parse_document(text);
    if (doc.kind != "config") throw DomainError("'" + path + "' is not a config document");
    return RunConfig::from_json(doc.body);
}

struct RunArgs {
    std::string proc, input, verify, config, output;
    std::uint64_t budget = 0, pool = 0, scan_cap = 0, seed = 0;
    bool seed_set = false;
};

int cmd_run(const RunArgs& a) {
    if (!a.verify.empty()) {
        Document doc = parse_document(read_text(a.verify));
        if (doc.kind != "result") throw DomainError("--verify needs a result document");
        auto fails = verify_result(doc.proc, doc.body);
        for (const auto& f : fails) std::cout << "FAIL " << f << "\n";
        if (fails.empty()) std::cout << "PASS " << doc.proc << " result replays\n";
        return fails.empty() ? ok : failed;
    }
    if (a.proc.empty() || a.input.empty()) throw CLI::ValidationError("run", "needs PROCEDURE and INPUT, or --verify RESULT");
    RunConfig cfg = a.config.empty() ? RunConfig{} : load_config(a.config);
    if (a.budget) cfg.budget_bits = a.budget;
    if (a.pool) cfg.witness_pool_size = a.pool;
    if (a.scan_cap) cfg.scan_cap = a.scan_cap;
    if (a.seed_set) cfg.seed = a.seed;
    Document in = parse_document(read_text(a.input));
    if (in.kind != "input") throw DomainError("'" + a.input + "' is not an input document");
    if (in.proc != a.proc) throw DomainError("input document is for '" + in.proc + "', not '" + a.proc + "'");
    Json result = run_procedure(a.proc, in.body, cfg);
    write_text(a.output, write_document({"result", a.proc, result}));
    return ok;
}

int cmd_verify(const std::string& suite, const suites::SuiteConfig& cfg) {
    std::vector<suites::Report> reports;
    if (suite == "all")
        for (const auto& name : suites::suite_names()) reports.push_back(suites::run_suite(name, cfg));
    else
        reports.push_back(suites::run_suite(suite, cfg));
    std::cout << suites::format_reports(reports, cfg);
    for (const auto& r : reports)
        if (!r.pass()) return failed;
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact differential algebra kernel and bound calculus"};
    app.require_subcommand(1);

    BoundRequest breq;
    std::string fn_d, fn_f;
    auto* bound = app.add_subcommand("bound", "Print or evaluate a catalogue bound");
    bound->add_option("name", breq.name, "Catalogue name")->required();
    bound->add_option("args", breq.args, "Arguments: naturals, or bodies in i for function slots");
    bound->add_option("--D", fn_d, "Function D as an expression in i");
    bound->add_option("--F", fn_f, "Function F as an expression in i");
    bound->add_flag("--eval", breq.eval, "Evaluate exactly within the budget");
    bound->add_flag("--symbolic", breq.symbolic, "Print the unfolded expression");
    bound->add_option("--budget", breq.budget_bits, "Bit budget for evaluation");

    RunArgs rargs;
    auto* run = app.add_subcommand("run", "Run a kernel procedure on an input document");
    run->add_option("procedure", rargs.proc, "Procedure name")->check(CLI::IsMember(procedure_names()));
    run->add_option("input", rargs.input, "Input document, or - for stdin");
    run->add_option("--verify", rargs.verify, "Replay a result document");
    run->add_option("--config", rargs.config, "Config document");
    run->add_option("--budget", rargs.budget, "Bit budget");
    run->add_option("--pool", rargs.pool, "Witness pool size");
    run->add_option("--scan-cap", rargs.scan_cap, "Stream scan cap");
    run->add_option("--seed", rargs.seed, "Seed")->each([&](const std::string&) { rargs.seed_set = true; });
    run->add_option("-o,--output", rargs.output, "Result document path");

    std::string suite;
    suites::SuiteConfig scfg;
    auto* verify = app.add_subcommand("verify", "Run property suites");
    std::vector<std::string> choices = suites::suite_names();
    choices.emplace_back("all");
    verify->add_option("suite", suite, "Suite name or all")->required()->check(CLI::IsMember(choices));
    verify->add_option("--seed", scfg.seed, "Seed for randomized checks");
    verify->add_option("--budget", scfg.budget_bits, "Bit budget");
    verify->add_option("--pool", scfg.witness_pool_size, "Witness pool size");
    verify->add_option("--scan-cap", scfg.scan_cap, "Stream scan cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*bound) {
            if (!fn_d.empty()) breq.functions.push_back(fn_d);
            if (!fn_f.empty()) breq.functions.push_back(fn_f);
            std::cout << bound_command(breq);
            return ok;
        }
        if (*run) return cmd_run(rargs);
        return cmd_verify(suite, scfg);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const Aborted& e) {
        std::cerr << "aborted: " << e.what() << "\n";
        std::cout << e.transcript;
        if (!e.transcript.empty() && e.transcript.back() != '\n') std::cout << "\n";
        return aborted;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const ContractViolation& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return failed;
    }
}
