#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "commands.hpp"
#include "sseq/error.hpp"

namespace fs = std::filesystem;
using namespace sseq::cli;

namespace {

constexpr int kExitError = 2;

void report(const sseq::Error& e, const fs::path& fallback) {
    auto where = e.loc().str();
    if (where.empty()) where = fmt::format("{}:0:0", fallback.string());
    fmt::print(std::cerr, "{}: error: {}: {}\n", where, sseq::errc_name(e.code()), e.detail());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adams spectral sequence dataset tools", "sseq"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML config file; flags override it");

    Common common;
    std::string out_path;
    app.add_option("--data-dir", common.data_dir, "Dataset directory")->envname("SSEQ_DATA_DIR");
    app.add_option("--out", out_path, "Write output here instead of stdout");
    app.add_option("--seed", common.seeds, "Extra staircase rows as NAME=PATH (ss csv format)");

    auto* validate = app.add_subcommand("validate", "Load and cross-check everything in the data directory");

    QueryArgs q;
    auto* query = app.add_subcommand("query", "Basis, names, d2 and staircase status in one bidegree");
    query->add_option("name", q.name, "Spectrum")->required();
    query->add_option("stem", q.stem)->required();
    query->add_option("s", q.s)->required();
    query->add_option("vec", q.vec, "Index vector such as 0,2");

    ChartArgs ch;
    auto* chart = app.add_subcommand("chart", "Per-stem differential tables");
    chart->add_option("name", ch.name, "Spectrum")->required();
    chart->add_option("--stem", ch.stems, "Stem or stem range, e.g. 123 or 122:127")->required();
    chart->add_option("--s-range", ch.s_range, "Adams filtration range, e.g. 8:25");
    chart->add_option("--format", ch.format, "text, csv or svg")->check(CLI::IsMember({"text", "csv", "svg"}));
    chart->add_flag("--indices", ch.indices, "Print index vectors instead of generator names");

    DeduceArgs d;
    auto* deduce = app.add_subcommand("deduce", "Search the values of d_r(x) for contradictions");
    deduce->add_option("name", d.name, "Spectrum, or X__Y__Z:leg")->required();
    deduce->add_option("stem", d.stem)->required();
    deduce->add_option("s", d.s)->required();
    deduce->add_option("x", d.x, "Index vector of x")->required();
    deduce->add_option("r", d.r)->required()->check(CLI::Range(0, 1000));
    deduce->add_option("--max-depth", d.max_depth, "Nested hypothesis depth")->check(CLI::Range(1, 16));
    deduce->add_option("--budget", d.budget, "Insertions per propagation")->check(CLI::NonNegativeNumber);
    deduce->add_flag("--inverse", d.inverse, "x is hit by a d_r; find its source");

    CheckArgs ck;
    auto* check = app.add_subcommand("check-proofs", "Replay proof tables and summarize the checks");
    check->add_option("paths", ck.paths, "Proof part files in order (default: those in the data directory)");
    check->add_option("--format", ck.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
    check->add_option("--budget", ck.budget, "Insertions per propagation")->check(CLI::NonNegativeNumber);
    check->add_flag("--no-replay", [&](std::int64_t) { ck.replay = false; }, "Skip contradiction replays");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        fmt::print(std::cerr, "<command line>:1:1: error: {}: {}\n", e.get_name(), e.what());
        return kExitError;
    }

    std::unique_ptr<std::ofstream> file;
    if (!out_path.empty()) {
        file = std::make_unique<std::ofstream>(out_path, std::ios::binary);
        if (!*file) {
            fmt::print(std::cerr, "{}:0:0: error: MissingFile: cannot open for writing\n", out_path);
            return kExitError;
        }
    }
    std::ostream& out = file ? *file : std::cout;

    try {
        if (*validate) return cmd_validate(common, out, std::cerr);
        if (*query) return cmd_query(common, q, out);
        if (*chart) return cmd_chart(common, ch, out, std::cerr);
        if (*deduce) return cmd_deduce(common, d, out, std::cerr);
        if (*check) return cmd_check_proofs(common, ck, out, std::cerr);
    } catch (const sseq::Error& e) {
        report(e, common.data_dir);
    } catch (const fs::filesystem_error& e) {
        fmt::print(std::cerr, "{}:0:0: error: {}\n", e.path1().string(), e.code().message());
    } catch (const std::exception& e) {
        fmt::print(std::cerr, "{}:0:0: error: {}\n", common.data_dir.string(), e.what());
    }
    return kExitError;
}
