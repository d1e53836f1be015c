#include "world.hpp"

#include <algorithm>
#include <future>

#include <fmt/format.h>

#include "sseq/naming.hpp"

namespace fs = std::filesystem;

namespace sseq::cli {

std::string format_finding(const Finding& f) {
    auto where = f.loc.str();
    return where.empty() ? f.message : fmt::format("{}: {}", where, f.message);
}

namespace {

Finding from_error(const Error& e, const fs::path& fallback) {
    SourceLoc loc = e.loc();
    if (loc.file.empty()) loc.file = fallback.string();
    return {loc, fmt::format("{}: {}", errc_name(e.code()), e.detail())};
}

}  // namespace

Loaded load_spectra(const fs::path& dir, const std::vector<std::string>& names) {
    Loaded out;
    auto load_one = [&dir](const std::string& name, std::shared_ptr<const SpectrumData> ring) {
        return std::make_shared<const SpectrumData>(load_spectrum(dir, name, std::move(ring)));
    };
    for (const auto& n : names) {
        if (!is_ring_name(n)) continue;
        try {
            out.spectra[n] = load_one(n, nullptr);
        } catch (const Error& e) {
            out.errors.push_back(from_error(e, spectrum_files(dir, n).generators));
        }
    }
    std::vector<std::pair<std::string, std::future<std::shared_ptr<const SpectrumData>>>> jobs;
    for (const auto& n : names) {
        if (is_ring_name(n)) continue;
        auto it = out.spectra.find(ring_of(n));
        if (it == out.spectra.end()) {
            out.errors.push_back({{spectrum_files(dir, n).generators.string(), 0, 0},
                                  fmt::format("MissingFile: ring {} of {} is not loaded", ring_of(n), n)});
            continue;
        }
        jobs.emplace_back(n, std::async(std::launch::async, load_one, n, it->second));
    }
    for (auto& [n, job] : jobs) {
        try {
            out.spectra[n] = job.get();
        } catch (const Error& e) {
            out.errors.push_back(from_error(e, spectrum_files(dir, n).generators));
        }
    }
    return out;
}

std::optional<std::pair<std::string, std::string>> map_endpoints(const fs::path& file) {
    std::string f = file.filename().string();
    if (!f.starts_with("map_") || !f.ends_with(".csv")) return std::nullopt;
    std::string body = f.substr(4, f.size() - 8);
    auto p = body.find("_to_");
    if (p == std::string::npos || p == 0 || p + 4 >= body.size()) return std::nullopt;
    return std::pair{body.substr(0, p), body.substr(p + 4)};
}

StaircaseLoad load_staircase(const SpectrumData& sp, const fs::path& ss_file, const std::vector<SsRow>& extra,
                             bool mirrors) {
    std::vector<SsRow> rows = load_ss(ss_file);
    size_t from_file = rows.size();
    rows.insert(rows.end(), extra.begin(), extra.end());
    auto built = build(SsState::adams(sp), rows, BuildOptions{mirrors, true}, &sp);
    StaircaseLoad out{std::move(built.state), {}};
    for (const auto& v : built.report.violations) {
        auto it = std::find_if(rows.begin(), rows.begin() + static_cast<long>(from_file), [&](const SsRow& r) {
            return r.stem == v.loc.deg.stem && r.s == v.loc.deg.s && r.level == v.level;
        });
        int line = it == rows.begin() + static_cast<long>(from_file) ? 0 : static_cast<int>(it - rows.begin()) + 2;
        out.findings.push_back({{ss_file.string(), line, line ? 1 : 0}, v.message});
    }
    return out;
}

World load_world(const fs::path& dir, const WorldOptions& opts) {
    Dataset data(dir);
    auto names = data.spectrum_names();
    auto loaded = load_spectra(dir, names);
    auto check = [&](std::vector<Finding>& problems) {
        if (opts.strict && !problems.empty()) {
            const auto& f = problems.front();
            fail(Errc::CrossValidation, f.message, f.loc);
        }
    };
    check(loaded.errors);

    std::map<std::string, std::vector<SsRow>> seeded;
    for (const auto& [name, file] : opts.seeds) {
        if (!loaded.spectra.count(name))
            fail(Errc::NotFound, fmt::format("seed file names unknown spectrum {}", name), {file, 0, 0});
        auto rows = load_ss(file);
        seeded[name].insert(seeded[name].end(), rows.begin(), rows.end());
    }

    World w;
    for (const auto& [name, sp] : loaded.spectra) {
        w.spectra[name] = sp;
        auto path = data.ss_path(name);
        const auto& extra = seeded[name];
        if (!path) {
            auto built = build(SsState::adams(*sp), extra, {}, sp.get());
            w.states.emplace(name, std::move(built.state));
            continue;
        }
        auto st = load_staircase(*sp, *path, extra);
        check(st.findings);
        w.states.emplace(name, std::move(st.state));
    }

    for (const auto& file : data.map_files()) {
        auto ends = map_endpoints(file);
        if (!ends) continue;
        auto src = w.spectra.find(ends->first);
        auto dst = w.spectra.find(ends->second);
        if (src == w.spectra.end() || dst == w.spectra.end()) continue;
        auto map = std::make_shared<const MapData>(
            load_map(file, ends->first, ends->second, dst->second->arity()));
        MapShift shift;
        try {
            shift = infer_shift(*map, *src->second, *dst->second);
        } catch (const Error& e) {
            throw e.located({file.string(), 0, 0});
        }
        w.maps.push_back({ends->first, ends->second, map, shift});
    }

    for (const auto& name : data.cofseq_names()) {
        auto path = *data.cofseq_path(name);
        CofseqAst seq;
        try {
            seq = parse_cofseq_name(name);
        } catch (const Error& e) {
            throw e.located({path.string(), 0, 0});
        }
        auto rows = load_cofseq(path);
        SsState empty(name, SsState::Geometry{3, 0, seq.drops}, dims_from_cofseq_rows(rows, seq.drops));
        auto built = build_cofseq(std::move(empty), rows);
        if (opts.strict && !built.report.ok())
            fail(Errc::Contradiction, built.report.violations.front().message, {path.string(), 0, 0});
        w.states.emplace(name, std::move(built.state));
    }

    if (fs::path nc = dir / kNullCompositionsFile; fs::exists(nc))
        w.null_compositions = parse_null_compositions(read_file(nc), nc.string());
    return w;
}

}  // namespace sseq::cli
