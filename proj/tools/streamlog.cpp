// streamlog: classify rule sets, materialize chases, answer BCQs.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "streamlog/fragment.hpp"
#include "streamlog/parser.hpp"
#include "streamlog/query.hpp"

using namespace streamlog;

namespace {

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct InputArgs {
    std::string programPath;
    std::string factsPath;                // optional .facts file
    std::vector<std::string> csvSpecs;    // pred=path.csv
    std::string queryText;                // inline query
    std::string queryPath;                // or a file holding one
};

void addInputOptions(CLI::App* cmd, InputArgs& in, bool wantQuery) {
    cmd->add_option("program", in.programPath, "rule file (.dlgp)")->required();
    cmd->add_option("database", in.factsPath, "database file (.facts)");
    cmd->add_option("--facts", in.csvSpecs,
                    "CSV ingestion, pred=path.csv (repeatable)");
    if (wantQuery) {
        cmd->add_option("-q,--query", in.queryText, "inline query '? :- atom1, ..., atomn.'");
        cmd->add_option("--query-file", in.queryPath, "file holding the query");
    }
}

Program loadProgram(const InputArgs& in) { return parseProgram(readFile(in.programPath)); }

Instance loadDatabase(const InputArgs& in, Program& prog) {
    Instance db;
    if (!in.factsPath.empty())
        for (Fact& f : parseFacts(readFile(in.factsPath), prog.signature))
            db.insert(std::move(f));
    for (const std::string& spec : in.csvSpecs) {
        std::size_t eq = spec.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--facts wants pred=path.csv, got '" + spec + "'");
        std::string pred = spec.substr(0, eq);
        std::string path = spec.substr(eq + 1);
        for (Fact& f : parseCsvFacts(pred, readFile(path), prog.signature))
            db.insert(std::move(f));
    }
    return db;
}

BCQ loadQuery(const InputArgs& in, Program& prog) {
    if (!in.queryText.empty() && !in.queryPath.empty())
        throw std::runtime_error("give either --query or --query-file, not both");
    if (!in.queryText.empty()) return parseQuery(in.queryText, prog.signature);
    if (!in.queryPath.empty()) return parseQuery(readFile(in.queryPath), prog.signature);
    throw std::runtime_error("a query is required (--query or --query-file)");
}

ChaseVariant parseVariant(const std::string& name) {
    if (name == "ochase") return ChaseVariant::Oblivious;
    if (name == "pchase") return ChaseVariant::Parsimonious;
    if (name == "ichase") return ChaseVariant::Isomorphic;
    throw std::runtime_error("unknown variant '" + name + "' (want ochase|pchase|ichase)");
}

HeadCheckMode parseHeadCheck(const std::string& name) {
    if (name == "per-atom") return HeadCheckMode::PerAtom;
    if (name == "conjunction") return HeadCheckMode::Conjunction;
    throw std::runtime_error("unknown head check '" + name + "' (want per-atom|conjunction)");
}

std::uint64_t routingSeed(const std::string& routing, std::uint64_t fallback) {
    std::size_t colon = routing.find(':');
    if (colon == std::string::npos) return fallback;
    return std::stoull(routing.substr(colon + 1));
}

bool envTrace() {
    const char* v = std::getenv("STREAMLOG_TRACE");
    return v != nullptr && std::string(v) == "1";
}

int runClassify(const InputArgs& in) {
    Program prog = loadProgram(in);
    FragmentReport rep = classifyProgram(prog);
    std::cout << rep.toString();
    if (rep.isProtected) return 0;
    if (rep.isWarded) return 3;
    return 4;
}

struct ChaseArgs {
    std::string variant = "ichase";
    std::uint64_t budget = 0;
    bool hasBudget = false;
    std::uint32_t resumptions = 1;
    std::string routing = "rr";
    std::string headCheck = "per-atom";
    bool stats = false;
    std::uint64_t seed = 0;
};

int runChase(const InputArgs& in, const ChaseArgs& args) {
    Program prog = loadProgram(in);
    Instance db = loadDatabase(in, prog);
    ChaseConfig cfg;
    cfg.variant = parseVariant(args.variant);
    if (args.hasBudget) cfg.budget = args.budget;
    cfg.routing = RoutingPolicy::parse(args.routing);
    if (cfg.routing.kind == RoutingPolicy::Kind::Random && args.routing == "rand")
        cfg.routing.seed = args.seed;
    cfg.headCheck = parseHeadCheck(args.headCheck);

    NullFactory nulls;
    ChaseResult r = chaseResumed(db, prog, args.resumptions, cfg, nulls);
    std::cout << r.instance.toString();
    if (r.truncated) std::cerr << "warning: budget hit, chase truncated\n";
    if (args.stats) {
        std::cout << "truncated=" << (r.truncated ? "true" : "false") << "\n";
        std::cout << "facts=" << r.instance.size() << "\n";
        std::cout << r.stats.toString();
    }
    return 0;
}

struct AnswerArgs {
    std::string engine = "batch";
    std::string variant = "pchase";
    std::string firing = "hom";
    std::string headCheck = "per-atom";
    std::string routing;  // default depends on the engine
    bool paranoid = false;
    bool noFreezeAdmitted = false;
    std::uint32_t maxResOverride = 0;
    bool hasMaxRes = false;
    std::uint32_t resumptions = 0;
    bool hasResumptions = false;
    std::uint64_t budget = 0;
    bool hasBudget = false;
    bool stats = false;
    bool trace = false;
    std::uint64_t seed = 0;
};

AnswerResult runAnswerOnce(const Program& prog, const Instance& db, const BCQ& q,
                           const AnswerArgs& args, NullFactory& nulls) {
    AnswerOptions opts;
    if (args.engine == "batch") {
        opts.engine = EngineKind::Batch;
        opts.variant = parseVariant(args.variant);
        if (args.hasResumptions) opts.resumptions = args.resumptions;
        if (args.hasMaxRes) opts.resumptions = args.maxResOverride;
        if (args.hasBudget) opts.budget = args.budget;
        opts.routing = RoutingPolicy::parse(args.routing.empty() ? "rr" : args.routing);
        if (opts.routing.kind == RoutingPolicy::Kind::Random && args.routing == "rand")
            opts.routing.seed = args.seed;
        opts.headCheck = parseHeadCheck(args.headCheck);
    } else if (args.engine == "stream") {
        opts.engine = EngineKind::Stream;
        if (args.firing == "hom")
            opts.stream.firing = FiringKind::Homomorphism;
        else if (args.firing == "iso")
            opts.stream.firing = FiringKind::Isomorphism;
        else
            throw std::runtime_error("unknown firing '" + args.firing + "' (want hom|iso)");
        opts.stream.headCheck = parseHeadCheck(args.headCheck);
        opts.stream.paranoidHash = args.paranoid;
        opts.stream.freezeAdmitted = !args.noFreezeAdmitted;
        opts.stream.routing = parseStreamRouting(args.routing.empty() ? "demand" : args.routing);
        opts.stream.seed = routingSeed(args.routing, args.seed);
        if (args.hasMaxRes) opts.stream.maxResOverride = args.maxResOverride;
        if (args.trace || envTrace())
            opts.stream.trace = [](const StreamTraceEvent& ev) {
                std::cerr << ev.toString() << "\n";
            };
    } else {
        throw std::runtime_error("unknown engine '" + args.engine + "' (want batch|stream)");
    }
    return answer(db, prog, q, opts, nulls);
}

int runAnswer(const InputArgs& in, const AnswerArgs& args) {
    Program prog = loadProgram(in);
    Instance db = loadDatabase(in, prog);
    BCQ q = loadQuery(in, prog);
    NullFactory nulls;
    AnswerResult r = runAnswerOnce(prog, db, q, args, nulls);
    if (r.fragmentWarning) std::cerr << "warning: " << r.fragmentNote << "\n";
    if (r.truncated) std::cerr << "warning: budget hit, answer may be incomplete\n";
    std::cout << (r.answer ? "true" : "false") << "\n";
    if (args.stats) {
        std::cout << "resumptions=" << r.resumptions << "\n";
        if (args.engine == "stream")
            std::cout << r.streamStats.toString();
        else
            std::cout << r.batchStats.toString();
    }
    return r.answer ? 0 : 1;
}

// One side of a diff: a chase variant spec like ochase@500, pchase,
// ichase_r@2, stream-hom, stream-iso.
struct DiffSide {
    bool stream = false;
    FiringKind firing = FiringKind::Homomorphism;
    ChaseVariant variant = ChaseVariant::Parsimonious;
    std::uint32_t resumptions = 1;
    bool resumptionsFromQuery = false;
    std::optional<std::uint64_t> budget;
    std::string spec;
};

DiffSide parseDiffSide(const std::string& spec) {
    DiffSide side;
    side.spec = spec;
    std::string base = spec;
    std::optional<std::uint64_t> at;
    std::size_t pos = spec.find('@');
    if (pos != std::string::npos) {
        base = spec.substr(0, pos);
        at = std::stoull(spec.substr(pos + 1));
    }
    if (base == "stream-hom" || base == "stream-iso") {
        side.stream = true;
        side.firing = base == "stream-hom" ? FiringKind::Homomorphism : FiringKind::Isomorphism;
        return side;
    }
    bool resumed = base.size() > 2 && base.rfind("_r") == base.size() - 2;
    if (resumed) base = base.substr(0, base.size() - 2);
    side.variant = parseVariant(base);
    if (side.variant == ChaseVariant::Oblivious) {
        if (at) side.budget = *at;
    } else if (resumed) {
        if (at)
            side.resumptions = static_cast<std::uint32_t>(*at);
        else
            side.resumptionsFromQuery = true;
    }
    return side;
}

int runDiff(const InputArgs& in, const std::vector<std::string>& variantSpecs,
            const std::string& routing, std::uint64_t seed) {
    Program prog = loadProgram(in);
    Instance db = loadDatabase(in, prog);
    BCQ q = loadQuery(in, prog);
    if (variantSpecs.size() < 2) throw std::runtime_error("--variants wants at least two");

    std::vector<bool> answers;
    std::vector<Instance> instances;
    for (const std::string& spec : variantSpecs) {
        DiffSide side = parseDiffSide(spec);
        NullFactory nulls;  // fresh session per variant
        if (side.stream) {
            StreamOptions sopts;
            sopts.firing = side.firing;
            if (!routing.empty()) {
                sopts.routing = parseStreamRouting(routing);
                sopts.seed = routingSeed(routing, seed);
            }
            StreamResult r = chaseStreaming(db, prog, q, sopts, nulls);
            answers.push_back(r.answer);
            if (!r.answer) {
                instances.push_back(r.admitted);
            } else {
                // Answered early: rerun to exhaustion (round-robin drains
                // every scan) so the containment report sees the full buffers.
                StreamOptions full = sopts;
                full.routing = StreamRouting::RoundRobin;
                full.maxResOverride = maxRes(q);
                NullFactory nulls2;
                BCQ unsat;
                unsat.atoms.push_back(Atom{"__unsat__", {Term::constant("a")}});
                StreamResult rf = chaseStreaming(db, prog, unsat, full, nulls2);
                instances.push_back(rf.admitted);
            }
        } else {
            ChaseConfig cfg;
            cfg.variant = side.variant;
            cfg.budget = side.budget;
            if (!routing.empty()) {
                cfg.routing = RoutingPolicy::parse(routing);
                if (cfg.routing.kind == RoutingPolicy::Kind::Random && routing == "rand")
                    cfg.routing.seed = seed;
            }
            std::uint32_t rounds =
                side.resumptionsFromQuery ? maxRes(q) : side.resumptions;
            ChaseResult r = chaseResumed(db, prog, rounds, cfg, nulls);
            answers.push_back(bcqEntails(r.instance, q));
            instances.push_back(std::move(r.instance));
        }
        std::cout << "variant[" << spec << "] answer=" << (answers.back() ? "true" : "false")
                  << " facts=" << instances.back().size() << "\n";
    }

    bool agree = true;
    for (bool a : answers) agree = agree && a == answers.front();
    std::cout << "agreement=" << (agree ? "true" : "false") << "\n";
    for (std::size_t i = 0; i < instances.size(); ++i)
        for (std::size_t j = 0; j < instances.size(); ++j) {
            if (i == j) continue;
            std::cout << "contained[" << variantSpecs[i] << " in " << variantSpecs[j]
                      << "]=" << (embedsInto(instances[i], instances[j]) ? "true" : "false")
                      << "\n";
        }
    return agree ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"streaming chase engine for existential rules"};
    app.require_subcommand(1);

    InputArgs classifyIn, chaseIn, answerIn, diffIn;
    ChaseArgs chaseArgs;
    AnswerArgs answerArgs;
    std::vector<std::string> diffVariants;
    std::string diffRouting;
    std::uint64_t diffSeed = 0;

    CLI::App* classifyCmd = app.add_subcommand("classify", "fragment membership of a rule set");
    addInputOptions(classifyCmd, classifyIn, false);

    CLI::App* chaseCmd = app.add_subcommand("chase", "materialize a chase");
    addInputOptions(chaseCmd, chaseIn, false);
    chaseCmd->add_option("--variant", chaseArgs.variant, "ochase|pchase|ichase");
    auto* budgetOpt = chaseCmd->add_option("--budget", chaseArgs.budget, "admitted-fire budget");
    chaseCmd->add_option("--resumptions", chaseArgs.resumptions, "chase rounds (default 1)");
    chaseCmd->add_option("--routing", chaseArgs.routing, "rr|dfs|rand:SEED");
    chaseCmd->add_option("--head-check", chaseArgs.headCheck, "per-atom|conjunction");
    chaseCmd->add_flag("--stats", chaseArgs.stats, "print chase statistics");
    chaseCmd->add_option("--seed", chaseArgs.seed, "seed for rand routing");

    CLI::App* answerCmd = app.add_subcommand("answer", "answer a boolean conjunctive query");
    addInputOptions(answerCmd, answerIn, true);
    answerCmd->add_option("--engine", answerArgs.engine, "batch|stream");
    answerCmd->add_option("--variant", answerArgs.variant, "batch: ochase|pchase|ichase");
    answerCmd->add_option("--firing", answerArgs.firing, "stream: hom|iso");
    answerCmd->add_option("--head-check", answerArgs.headCheck, "per-atom|conjunction");
    answerCmd->add_option("--routing", answerArgs.routing,
                          "batch: rr|dfs|rand:SEED; stream: demand|rr|dfs|rand:SEED");
    answerCmd->add_flag("--paranoid-hash", answerArgs.paranoid,
                        "verify canonical facts on hash hits");
    answerCmd->add_flag("--no-freeze-admitted", answerArgs.noFreezeAdmitted,
                        "freeze only blocked facts");
    auto* maxResOpt =
        answerCmd->add_option("--max-res", answerArgs.maxResOverride, "resumption bound");
    auto* resOpt =
        answerCmd->add_option("--resumptions", answerArgs.resumptions, "batch chase rounds");
    auto* ansBudget = answerCmd->add_option("--budget", answerArgs.budget, "batch fire budget");
    answerCmd->add_flag("--stats", answerArgs.stats, "print statistics");
    answerCmd->add_flag("--trace", answerArgs.trace, "stream: event trace on stderr");
    answerCmd->add_option("--seed", answerArgs.seed, "seed for rand routing");

    CLI::App* diffCmd = app.add_subcommand("diff", "compare chase variants on one input");
    addInputOptions(diffCmd, diffIn, true);
    diffCmd->add_option("--variants", diffVariants,
                        "two or more of ochase@B, pchase[_r[@N]], ichase[_r[@N]], "
                        "stream-hom, stream-iso")
        ->delimiter(',');
    diffCmd->add_option("--routing", diffRouting, "routing for every side");
    diffCmd->add_option("--seed", diffSeed, "seed for rand routing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (classifyCmd->parsed()) return runClassify(classifyIn);
        if (chaseCmd->parsed()) {
            chaseArgs.hasBudget = budgetOpt->count() > 0;
            return runChase(chaseIn, chaseArgs);
        }
        if (answerCmd->parsed()) {
            answerArgs.hasMaxRes = maxResOpt->count() > 0;
            answerArgs.hasResumptions = resOpt->count() > 0;
            answerArgs.hasBudget = ansBudget->count() > 0;
            return runAnswer(answerIn, answerArgs);
        }
        if (diffCmd->parsed()) return runDiff(diffIn, diffVariants, diffRouting, diffSeed);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
