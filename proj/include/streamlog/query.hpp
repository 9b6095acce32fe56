#pragma once

#include "streamlog/streaming.hpp"

namespace streamlog {

// Boolean conjunctive query over a materialized instance: true iff some
// homomorphism sends every query atom onto a stored fact (query variables
// may land on constants or labelled nulls).
bool bcqEntails(const Instance& inst, const BCQ& q);

enum class EngineKind { Batch, Stream };

struct AnswerOptions {
    EngineKind engine = EngineKind::Batch;

    // Batch: chase variant + resumption rounds (default maxRes(q)).
    ChaseVariant variant = ChaseVariant::Parsimonious;
    std::optional<std::uint32_t> resumptions;
    std::optional<std::uint64_t> budget;
    RoutingPolicy routing;
    HeadCheckMode headCheck = HeadCheckMode::PerAtom;

    // Stream:
    StreamOptions stream;
};

struct AnswerResult {
    bool answer = false;
    bool truncated = false;  // batch budget hit; answer may be incomplete
    std::uint32_t resumptions = 0;
    ChaseStats batchStats;
    StreamStats streamStats;
    bool fragmentWarning = false;
    std::string fragmentNote;
};

AnswerResult answer(const Instance& db, const Program& prog, const BCQ& q,
                    const AnswerOptions& opts, NullFactory& nulls);

}  // namespace streamlog
