#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sseq/deduce.hpp"
#include "sseq/formats.hpp"

namespace sseq {

struct ProofNode {
    ProofRow row;
    std::vector<ProofNode> children;

    bool is_branch() const { return row.reason == Reason::T || row.reason == Reason::TI; }
    bool is_conclusion() const { return row.reason == Reason::D || row.reason == Reason::DI; }
};

// Stack reconstruction of the nesting encoded by the depth column. Throws MalformedNesting.
std::vector<ProofNode> build_forest(std::span<const ProofRow> rows);

// "(depth,reason)" pairs in pre-order, e.g. "(0,D)[(1,T)[(2,T)],(1,T)]".
std::string shape(const ProofNode& node);

// Element references "X (stem,s) [i,j]" found in free text.
struct ElementRef {
    std::string name;
    BiDegree deg;
    IndexSet idx;
};
std::vector<ElementRef> extract_refs(std::string_view info);

enum class CheckStatus { Ok, Failed, Skipped };
enum class FailureKind { None, Mismatch, IncompleteEnumeration, NotReplayable, DegreeError, BadReference, Nesting, Parse };

std::string_view status_name(CheckStatus s);
std::string_view failure_name(FailureKind k);

struct NodeCheck {
    long long id = 0;
    Reason reason = Reason::D;
    CheckStatus status = CheckStatus::Ok;
    FailureKind failure = FailureKind::None;
    std::string message;
};

struct VerifyReport {
    std::vector<NodeCheck> checks;

    int count(CheckStatus s) const;
    int failures() const { return count(CheckStatus::Failed); }
};

struct VerifyOptions {
    bool replay_contradictions = true;
    PropagateOptions propagate;
};

// Checks one tree against the world; never throws on a failed check.
VerifyReport verify_node(const ProofNode& node, const World& world, const VerifyOptions& opts = {});

struct ReplaySummary {
    long long rows = 0;
    long long blocks = 0;
    std::array<long long, kReasonCount> by_reason{};
    std::map<std::string, long long> by_failure;  // keyed by failure_name
    long long ok = 0;
    long long failed = 0;
    long long skipped = 0;
    std::vector<std::string> errors;  // parse problems and failed checks, "id: message"

    std::string text() const;
    std::string csv() const;
};

// Streams proof files block by block; a block ends at a depth-0 D/DI row or a standalone depth-0 leaf.
ReplaySummary replay(std::span<const std::filesystem::path> parts, const World& world, const VerifyOptions& opts = {});
ReplaySummary replay_rows(std::span<const ProofRow> rows, const World& world, const VerifyOptions& opts = {});

}  // namespace sseq
