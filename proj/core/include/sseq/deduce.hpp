#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sseq/algebra.hpp"
#include "sseq/formats.hpp"
#include "sseq/ss.hpp"

namespace sseq {

// A pair of attaching-map keywords whose composite is null, e.g. eta,nu.
struct NullComposition {
    std::string first;
    std::string second;
};

std::vector<NullComposition> parse_null_compositions(std::string_view text, const std::string& file = {});

// Everything propagation may look at. States are keyed by the name used in proof rows:
// a spectrum name for Adams staircases, "X__Y__Z" for extension staircases.
struct World {
    struct MapLink {
        std::string source;
        std::string target;
        std::shared_ptr<const MapData> map;
        MapShift shift;
    };

    std::map<std::string, SsState> states;
    std::map<std::string, std::shared_ptr<const SpectrumData>> spectra;
    std::vector<MapLink> maps;
    std::vector<NullComposition> null_compositions;

    SsState& state(const std::string& name);
    const SsState& state(const std::string& name) const;
    const SpectrumData* spectrum(const std::string& name) const;
};

struct Hypothesis {
    std::string subject;
    Loc loc;
    IndexSet x;
    int r = 2;
    IndexSet value;
};

struct PropagateOptions {
    int budget = 10000;
    bool degree_reasons = true;  // G
    bool xy_rule = true;         // XY
    int xy_candidate_cap = 8;
};

struct PropagateResult {
    enum class Status { Consistent, Contradiction, BudgetExhausted };
    Status status = Status::Consistent;
    std::string explanation;  // proof text for a contradiction
    int insertions = 0;

    bool consistent() const { return status == Status::Consistent; }
};

// Inserts h and closes under Leibniz, naturality along AF-0 maps, degree reasons, XX and XY
// until nothing new appears. Works in place; callers branch on copies.
PropagateResult propagate(World& world, const Hypothesis& h, const PropagateOptions& opts = {});

// Coset representatives of possible d_r(x), zero first then lexicographic.
std::vector<IndexSet> candidates(const SsState& state, const Loc& loc, const IndexSet& x, int r);
bool degree_reason_trivial(const SsState& state, const Loc& loc, const IndexSet& x, int r);

// Possible sources of a class y known to be hit by a d_r: representatives of Z_{r-1}/Z_r at the source.
std::vector<IndexSet> source_candidates(const SsState& state, const Loc& loc, const IndexSet& y, int r);

struct DeduceOptions {
    int max_depth = 3;
    int max_r = 20;
    PropagateOptions propagate;
};

struct DeduceResult {
    enum class Status { Deduced, Inconclusive };
    Status status = Status::Inconclusive;
    IndexSet value;
    std::vector<ProofRow> trace;  // ids start at 1
    int survivors = 0;

    bool deduced() const { return status == Status::Deduced; }
};

// Depth-first search over candidate values of d_r(x); concludes only when exactly one survives.
DeduceResult deduce(const World& world, const std::string& subject, const Loc& loc, const IndexSet& x, int r,
                    const DeduceOptions& opts = {});
// Inverse mode: y is hit by some d_r; enumerate sources (TI/DI rows keyed by y's degree).
DeduceResult deduce_source(const World& world, const std::string& subject, const Loc& loc, const IndexSet& y, int r,
                           const DeduceOptions& opts = {});

// Products that must vanish by a null composition: a target of an a-extension
// may not support a b-extension. One message per violation.
std::vector<std::string> null_composition_violations(const World& world);

// Adds every uncovered basis direction as an undetermined d_{r_min} so that degree reasons
// and candidate filtering see the whole E2 page.
void cover_all(SsState& state);

// Name used in proof rows for a state location: the spectrum, or "X__Y__Z:iC".
std::string subject_label(const World& world, const std::string& subject, const Loc& loc);

}  // namespace sseq
