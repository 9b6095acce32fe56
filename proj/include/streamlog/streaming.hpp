#pragma once

#include <functional>
#include <map>

#include "streamlog/chase.hpp"
#include "streamlog/pipeline.hpp"

namespace streamlog {

struct StreamStats {
    std::uint64_t nextCalls = 0;   // scan probes while routing demand
    std::uint64_t getCalls = 0;    // facts actually pulled by a scan
    std::uint64_t sourceFacts = 0; // database facts injected
    std::uint64_t fires = 0;       // candidate facts run through the firing condition
    std::uint64_t admissions = 0;
    std::uint64_t blocks = 0;
    std::uint64_t freezesOnBlocked = 0;   // freezes after a blocked candidate
    std::uint64_t freezesOnAdmitted = 0;  // freezes of already admitted facts
    std::map<std::uint32_t, std::uint64_t> admittedPerResIt;
    bool answeredEarly = false;

    std::uint64_t freezes() const { return freezesOnBlocked + freezesOnAdmitted; }
    std::string toString() const;  // key=value lines
};

struct StreamTraceEvent {
    enum class Kind { Inject, Read, Fire, Admit, Block, Freeze };
    Kind kind;
    std::string scope;  // scan label: rule id, source predicate, "query"
    Atom fact;
    std::uint32_t resIt = 0;

    std::string toString() const;  // "EVENT rule=<id> fact=<fact> resIt=<n>"
};

using TraceSink = std::function<void(const StreamTraceEvent&)>;

enum class StreamRouting { Demand, RoundRobin, DepthFirst, Random };

StreamRouting parseStreamRouting(const std::string& text);  // demand|rr|dfs|rand:SEED
                                                            // (seed parsed separately)

struct StreamOptions {
    FiringKind firing = FiringKind::Homomorphism;
    HeadCheckMode headCheck = HeadCheckMode::PerAtom;
    bool paranoidHash = false;
    // The pseudocode freezes a fact after the firing-condition branch whether
    // or not it was admitted; turning this off freezes blocked facts only.
    bool freezeAdmitted = true;
    StreamRouting routing = StreamRouting::Demand;
    std::uint64_t seed = 0;  // for StreamRouting::Random
    std::optional<std::uint32_t> maxResOverride;
    TraceSink trace;
};

struct StreamResult {
    bool answer = false;
    bool exhausted = false;  // ran out of work without answering
    std::uint32_t maxRes = 0;
    StreamStats stats;
    Instance admitted;  // union of the scan buffers, in admission order
    bool fragmentWarning = false;
    std::string fragmentNote;
};

// Pull-based streaming chase: compiles the pipeline, feeds the database
// through the source scans and drives reads until the query is answered or
// every inbox drains. Fact-level resumption: a fact with unfrozen nulls and
// resIt + 1 < maxRes is frozen and re-offered to the firing condition.
StreamResult chaseStreaming(const Instance& db, const Program& prog, const BCQ& q,
                            const StreamOptions& opts, NullFactory& nulls);

}  // namespace streamlog
