#include "streamlog/query.hpp"

namespace streamlog {

bool bcqEntails(const Instance& inst, const BCQ& q) {
    return findHomomorphism(q.atoms, inst).has_value();
}

AnswerResult answer(const Instance& db, const Program& prog, const BCQ& q,
                    const AnswerOptions& opts, NullFactory& nulls) {
    AnswerResult out;
    if (opts.engine == EngineKind::Stream) {
        StreamOptions sopts = opts.stream;
        StreamResult r = chaseStreaming(db, prog, q, sopts, nulls);
        out.answer = r.answer;
        out.resumptions = r.maxRes;
        out.streamStats = r.stats;
        out.fragmentWarning = r.fragmentWarning;
        out.fragmentNote = r.fragmentNote;
        return out;
    }

    ChaseConfig cfg;
    cfg.variant = opts.variant;
    cfg.budget = opts.budget;
    cfg.routing = opts.routing;
    cfg.headCheck = opts.headCheck;
    std::uint32_t rounds = opts.resumptions.value_or(maxRes(q));
    ChaseResult r = chaseResumed(db, prog, rounds, cfg, nulls);
    out.answer = bcqEntails(r.instance, q);
    out.truncated = r.truncated;
    out.resumptions = rounds;
    out.batchStats = r.stats;
    return out;
}

}  // namespace streamlog
