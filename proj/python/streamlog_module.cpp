// Python bindings for the streamlog core: parsing, classification, chase
// materialization and query answering.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "streamlog/fragment.hpp"
#include "streamlog/parser.hpp"
#include "streamlog/query.hpp"

namespace py = pybind11;
using namespace streamlog;

namespace {

ChaseVariant variantFromName(const std::string& name) {
    if (name == "ochase") return ChaseVariant::Oblivious;
    if (name == "pchase") return ChaseVariant::Parsimonious;
    if (name == "ichase") return ChaseVariant::Isomorphic;
    throw std::invalid_argument("unknown variant '" + name + "'");
}

std::vector<std::string> instanceLines(const Instance& inst) {
    std::vector<std::string> out;
    out.reserve(inst.size());
    for (const Fact& f : inst.facts()) out.push_back(f.atom.toString());
    return out;
}

Instance buildDb(Program& prog, const std::string& factsText) {
    Instance db;
    for (Fact& f : parseFacts(factsText, prog.signature)) db.insert(std::move(f));
    return db;
}

py::dict classifyDict(const Program& prog) {
    FragmentReport rep = classifyProgram(prog);
    py::dict d;
    d["shy"] = rep.isShy;
    d["warded"] = rep.isWarded;
    d["protected"] = rep.isProtected;
    py::list ahj;
    for (const auto& [rule, var] : rep.ahjRules) ahj.append(py::make_tuple(rule, var));
    d["ahj"] = ahj;
    py::list affected;
    for (const Position& p : rep.affected) affected.append(p.toString());
    d["affected"] = affected;
    return d;
}

}  // namespace

PYBIND11_MODULE(_streamlog, m) {
    m.doc() = "streaming chase engine for existential rules";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<Program>(m, "Program")
        .def("__str__", &Program::toString)
        .def_property_readonly("rule_ids", [](const Program& p) {
            std::vector<std::string> ids;
            for (const TGD& r : p.rules) ids.push_back(r.id);
            return ids;
        });

    m.def("parse_program", [](const std::string& text) { return parseProgram(text); },
          py::arg("text"));

    m.def("classify", [](const std::string& programText) {
        return classifyDict(parseProgram(programText));
    }, py::arg("program"));

    m.def("classify_report", [](const std::string& programText) {
        return classifyProgram(parseProgram(programText)).toString();
    }, py::arg("program"));

    m.def("chase",
          [](const std::string& programText, const std::string& factsText,
             const std::string& variant, std::uint32_t resumptions,
             std::optional<std::uint64_t> budget, const std::string& routing) {
              Program prog = parseProgram(programText);
              Instance db = buildDb(prog, factsText);
              ChaseConfig cfg;
              cfg.variant = variantFromName(variant);
              cfg.budget = budget;
              cfg.routing = RoutingPolicy::parse(routing);
              NullFactory nulls;
              ChaseResult r = chaseResumed(db, prog, resumptions, cfg, nulls);
              py::dict d;
              d["facts"] = instanceLines(r.instance);
              d["truncated"] = r.truncated;
              d["fires_attempted"] = r.stats.firesAttempted;
              d["fires_admitted"] = r.stats.firesAdmitted;
              d["blocked"] = r.stats.blocked;
              d["facts_per_resumption"] = r.stats.factsPerResumption;
              return d;
          },
          py::arg("program"), py::arg("facts"), py::arg("variant") = "ichase",
          py::arg("resumptions") = 1, py::arg("budget") = std::nullopt,
          py::arg("routing") = "rr");

    m.def("answer",
          [](const std::string& programText, const std::string& factsText,
             const std::string& queryText, const std::string& engine,
             const std::string& variant, const std::string& firing,
             std::optional<std::uint32_t> resumptions, std::optional<std::uint64_t> budget,
             const std::string& headCheck, bool paranoidHash, bool freezeAdmitted,
             std::optional<std::uint32_t> maxRes, const std::string& routing,
             std::uint64_t seed) {
              Program prog = parseProgram(programText);
              Instance db = buildDb(prog, factsText);
              BCQ q = parseQuery(queryText, prog.signature);
              AnswerOptions opts;
              opts.engine = engine == "stream" ? EngineKind::Stream : EngineKind::Batch;
              opts.variant = variantFromName(variant);
              opts.resumptions = resumptions;
              opts.budget = budget;
              opts.headCheck = headCheck == "conjunction" ? HeadCheckMode::Conjunction
                                                          : HeadCheckMode::PerAtom;
              opts.stream.firing =
                  firing == "iso" ? FiringKind::Isomorphism : FiringKind::Homomorphism;
              opts.stream.headCheck = opts.headCheck;
              opts.stream.paranoidHash = paranoidHash;
              opts.stream.freezeAdmitted = freezeAdmitted;
              opts.stream.maxResOverride = maxRes;
              opts.stream.seed = seed;
              if (opts.engine == EngineKind::Stream)
                  opts.stream.routing = parseStreamRouting(routing.empty() ? "demand" : routing);
              else if (!routing.empty())
                  opts.routing = RoutingPolicy::parse(routing);
              NullFactory nulls;
              AnswerResult r = answer(db, prog, q, opts, nulls);
              py::dict d;
              d["answer"] = r.answer;
              d["truncated"] = r.truncated;
              d["resumptions"] = r.resumptions;
              d["fragment_warning"] = r.fragmentWarning;
              if (opts.engine == EngineKind::Stream) {
                  d["fires"] = r.streamStats.fires;
                  d["admissions"] = r.streamStats.admissions;
                  d["blocks"] = r.streamStats.blocks;
                  d["freezes"] = r.streamStats.freezes();
              } else {
                  d["fires"] = r.batchStats.firesAttempted;
                  d["admissions"] = r.batchStats.factsAdmitted;
                  d["blocks"] = r.batchStats.blocked;
              }
              return d;
          },
          py::arg("program"), py::arg("facts"), py::arg("query"),
          py::arg("engine") = "batch", py::arg("variant") = "pchase",
          py::arg("firing") = "hom", py::arg("resumptions") = std::nullopt,
          py::arg("budget") = std::nullopt, py::arg("head_check") = "per-atom",
          py::arg("paranoid_hash") = false, py::arg("freeze_admitted") = true,
          py::arg("max_res") = std::nullopt, py::arg("routing") = "",
          py::arg("seed") = 0);

    m.def("stream_trace",
          [](const std::string& programText, const std::string& factsText,
             const std::string& queryText, const std::string& firing,
             std::optional<std::uint32_t> maxRes) {
              Program prog = parseProgram(programText);
              Instance db = buildDb(prog, factsText);
              BCQ q = parseQuery(queryText, prog.signature);
              std::vector<std::string> events;
              StreamOptions opts;
              opts.firing = firing == "iso" ? FiringKind::Isomorphism
                                            : FiringKind::Homomorphism;
              opts.maxResOverride = maxRes;
              opts.trace = [&events](const StreamTraceEvent& ev) {
                  events.push_back(ev.toString());
              };
              NullFactory nulls;
              StreamResult r = chaseStreaming(db, prog, q, opts, nulls);
              return py::make_tuple(r.answer, events);
          },
          py::arg("program"), py::arg("facts"), py::arg("query"),
          py::arg("firing") = "iso", py::arg("max_res") = std::nullopt);
}
