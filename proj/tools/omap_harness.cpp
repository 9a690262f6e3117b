// Scenario runner and schedule fuzzer.
//
//   omap-harness run <file> [--depth D] [--dump-ledger PATH] [--verbose]
//   omap-harness fuzz --count N --seed S [--depth D] [--verbose]
//
// Exit codes: 0 pass, 1 expectation failure, 2 invariant violation, 3 parse error.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "omap/harness.hpp"

namespace {

int run_file(const std::string& path, std::optional<std::size_t> depth,
             const std::string& dump_path, bool verbose) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << '\n';
        return omap::exit_code::kParse;
    }
    omap::Scenario sc;
    try {
        sc = omap::parse_scenario(in);
    } catch (const omap::ScenarioParseError& e) {
        std::cerr << path << ": " << e.what() << '\n';
        return omap::exit_code::kParse;
    }
    const omap::RunResult r = omap::run_scenario(sc, omap::RunOptions{depth});
    for (const auto& line : r.trace) std::cout << line << '\n';
    for (const auto& f : r.failures) std::cerr << path << ": " << f << '\n';
    if (!dump_path.empty()) {
        std::ofstream out(dump_path);
        out << r.ledger_dump;
        if (verbose) std::cerr << "ledger written to " << dump_path << '\n';
    }
    return r.exit_code;
}

int fuzz(std::uint64_t count, std::uint64_t seed, std::size_t depth, bool verbose) {
    const auto t0 = std::chrono::steady_clock::now();
    const omap::FuzzReport rep = omap::run_random_schedules(count, seed, depth);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << rep.to_string();
    if (verbose) std::cerr << "elapsed " << secs << " s\n";
    return rep.ok() ? omap::exit_code::kPass : omap::exit_code::kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-asset exchange ledger: scenario runner and schedule fuzzer"};
    app.require_subcommand(1);
    bool verbose = false;
    std::size_t depth = 16;
    app.add_flag("--verbose,-v", verbose, "Diagnostics on stderr");

    auto* run = app.add_subcommand("run", "Run a scenario file");
    std::string file;
    std::string dump_path;
    run->add_option("file", file, "Scenario file")->required();
    auto* run_depth = run->add_option("--depth", depth, "Merkle tree depth")
                          ->check(CLI::Range(1, 32));
    run->add_option("--dump-ledger", dump_path, "Write the final ledger leaves to this path");
    run->add_flag("--verbose,-v", verbose, "Diagnostics on stderr");

    auto* fz = app.add_subcommand("fuzz", "Randomized exchange schedules");
    std::uint64_t count = 1000;
    std::uint64_t seed = 1;
    fz->add_option("--count", count, "Number of sessions")->check(CLI::PositiveNumber);
    fz->add_option("--seed", seed, "Master seed");
    fz->add_option("--depth", depth, "Merkle tree depth")->check(CLI::Range(1, 32));
    fz->add_flag("--verbose,-v", verbose, "Diagnostics on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : omap::exit_code::kParse;
    }

    if (run->parsed()) {
        std::optional<std::size_t> d;
        if (run_depth->count() > 0) d = depth;
        return run_file(file, d, dump_path, verbose);
    }
    return fuzz(count, seed, depth, verbose);
}
