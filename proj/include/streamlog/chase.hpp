#pragma once

#include <optional>

#include "streamlog/firing.hpp"
#include "streamlog/homomorphism.hpp"
#include "streamlog/program.hpp"

namespace streamlog {

enum class ChaseVariant { Oblivious, Parsimonious, Isomorphic };

std::string variantName(ChaseVariant v);

// Trigger processing order. rr serves the rules cyclically in program order
// with per-rule FIFO queues; dfs serves the newest discovered trigger first;
// rand draws uniformly from the pending triggers with a seeded generator.
struct RoutingPolicy {
    enum class Kind { RoundRobin, DepthFirst, Random };
    Kind kind = Kind::RoundRobin;
    std::uint64_t seed = 0;

    // "rr" | "dfs" | "rand:SEED"
    static RoutingPolicy parse(const std::string& text);
    std::string toString() const;
};

struct ChaseConfig {
    ChaseVariant variant = ChaseVariant::Isomorphic;
    // Admitted fires allowed before stopping. Mandatory for the oblivious
    // chase on programs with existentials, which need not terminate.
    std::optional<std::uint64_t> budget;
    RoutingPolicy routing;
    HeadCheckMode headCheck = HeadCheckMode::PerAtom;
};

struct ChaseStats {
    std::uint64_t firesAttempted = 0;
    std::uint64_t firesAdmitted = 0;
    std::uint64_t factsAdmitted = 0;
    std::uint64_t blocked = 0;  // candidate facts rejected by the firing condition
    std::vector<std::size_t> factsPerResumption;

    std::string toString() const;
};

struct ChaseResult {
    Instance instance;
    bool truncated = false;  // budget hit with work pending
    ChaseStats stats;
};

// One chase round over db. Facts added by this round carry resIt = resTag.
ChaseResult chaseBatch(const Instance& db, const Program& prog, const ChaseConfig& cfg,
                       NullFactory& nulls, std::uint32_t resTag = 0);

// Resumption: iterations-many rounds, freezing the instance between rounds
// (and, per the definition, before the first). iterations = 0 returns db.
ChaseResult chaseResumed(const Instance& db, const Program& prog, std::uint32_t iterations,
                         const ChaseConfig& cfg, NullFactory& nulls);

}  // namespace streamlog
