#include "commands.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <random>

#include <fmt/format.h>

#include "wedder/arith.hpp"
#include "wedder/continuants.hpp"
#include "wedder/element.hpp"
#include "wedder/gui.hpp"
#include "wedder/pe2.hpp"

namespace wedder::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

FiniteRingPtr finite_ring(const json& inst) { return make_finite_ring(inst.at("ring").get<std::string>()); }

std::vector<Elem> parse_tuple(const FiniteRing& R, const json& list) {
    std::vector<Elem> out;
    for (const auto& s : list) out.push_back(R.parse(s.get<std::string>()));
    return out;
}

json format_tuple(const FiniteRing& R, const std::vector<Elem>& t) {
    json out = json::array();
    for (Elem x : t) out.push_back(R.format(x));
    return out;
}

std::uint64_t seed_of(const json& inst) { return inst.value("seed", std::uint64_t{1}); }

// ---------------------------------------------------------------- continuants

Outcome continuant_eval(const json& inst) {
    auto ring = make_ring(inst.at("ring").get<std::string>());
    ElementArith r{ring};
    std::vector<RingElement> a;
    for (const auto& s : inst.at("tuple")) a.push_back(RingElement::parse(ring, s.get<std::string>()));
    auto q = build_quad(r, a);
    json res;
    for (auto [key, seq] : {std::pair{"P", &q.P}, std::pair{"Q", &q.Q}, std::pair{"Pop", &q.Pop},
                            std::pair{"Qop", &q.Qop}}) {
        json col = json::array();
        for (std::size_t i = 1; i < seq->size(); ++i) col.push_back((*seq)[i].to_string());  // k = 0..K
        res[key] = col;
    }
    return {true, "evaluated", res, json::object()};
}

template <class A>
void merge_identities(std::vector<IdentityResult>& acc, const std::vector<IdentityResult>& now) {
    for (std::size_t i = 0; i < acc.size(); ++i)
        if (acc[i].pass && !now[i].pass) acc[i] = now[i];
}

Outcome continuant_identities(const json& inst) {
    const int k = inst.at("k").get<int>();
    if (k < 1) throw UsageError("--k must be at least 1");
    auto ring = make_ring(inst.at("ring").get<std::string>());
    std::vector<IdentityResult> acc;
    for (const auto& n : identity_names()) acc.push_back({n, true, -1});
    bool structure = true;
    json first_failure;
    std::uint64_t tested = 0;
    const auto t0 = Clock::now();
    if (auto F = std::dynamic_pointer_cast<const FreeRing>(ring)) {
        if (F->variables().size() < static_cast<std::size_t>(k))
            throw UsageError(fmt::format("{} has fewer than {} variables", F->descriptor(), k));
        FreeArith fa;
        std::vector<FreePoly> vars;
        for (int i = 0; i < k; ++i) vars.push_back(F->var(static_cast<unsigned>(i)));
        auto q = build_quad(fa, vars);
        acc = check_identities(fa, q);
        structure = check_structure(fa, q);
        tested = 1;
    } else {
        auto R = std::dynamic_pointer_cast<const FiniteRing>(ring);
        FiniteArith fa(*R);
        std::mt19937_64 rng(seed_of(inst));
        const auto samples = inst.value("samples", std::uint64_t{10000});
        for (; tested < samples; ++tested) {
            std::vector<Elem> a;
            for (int i = 0; i < k; ++i) a.push_back(rng() % R->size());
            auto q = build_quad(fa, a);
            auto now = check_identities(fa, q);
            const bool st = check_structure(fa, q);
            if ((!all_pass<FiniteArith>(now) || !st) && first_failure.is_null()) first_failure = format_tuple(*R, a);
            merge_identities<FiniteArith>(acc, now);
            structure = structure && st;
        }
    }
    json res;
    res["identities"] = json::array();
    bool pass = structure;
    for (const auto& x : acc) {
        res["identities"].push_back({{"name", x.name}, {"pass", x.pass}, {"first_failing_k", x.first_failing_k}});
        pass = pass && x.pass;
    }
    res["structure"] = structure;
    if (!first_failure.is_null()) res["first_failing_tuple"] = first_failure;
    return {pass, pass ? "identities-hold" : "identity-failure", res, {{"tested", tested}, {"elapsed_ms", ms_since(t0)}}};
}

// ---------------------------------------------------------------- pe2

json matrix_json(const FiniteRing& R, const pe2::M2& m) {
    return json::array({R.format(m[0]), R.format(m[1]), R.format(m[2]), R.format(m[3])});
}

Outcome pe2_reduce(const json& inst) {
    auto R = finite_ring(inst);
    auto w = pe2::parse_word(*R, inst.at("word").get<std::string>());
    auto n = pe2::normalize(*R, w);
    json res{{"normal_form", pe2::format_word(*R, n.word())},
             {"a", format_tuple(*R, n.a)},
             {"r", R->format(n.r)},
             {"s", R->format(n.s)},
             {"ord_of_word", pe2::ord_of_word(n).str()},
             {"matrix", matrix_json(*R, pe2::word_matrix(*R, w))}};
    return {true, "reduced", res, json::object()};
}

Outcome pe2_ord(const json& inst) {
    const bool all = inst.value("all", false);
    const bool has_word = inst.contains("word");
    if (!all && !has_word) throw UsageError("pe2 ord needs --all or --word");
    const auto t0 = Clock::now();
    pe2::Group G(finite_ring(inst));
    auto t = pe2::compute_ord(G);
    json res{{"order", G.size()}, {"max", t.max().str()}};
    std::map<int, std::uint64_t> dist;
    for (int r : t.rank) ++dist[r];
    json d = json::array();
    for (auto [r, c] : dist) d.push_back({{"ord", pe2::OrdValue::from_rank(r).str()}, {"count", c}});
    res["distribution"] = d;
    if (has_word) {
        auto w = pe2::parse_word(G.ring(), inst.at("word").get<std::string>());
        res["word_ord"] = t.ord(G.word_index(w)).str();
    }
    return {true, "computed", res, {{"layers", t.layers}, {"elapsed_ms", ms_since(t0)}}};
}

Outcome pe2_groups(const json& inst) {
    const auto t0 = Clock::now();
    pe2::Group G(finite_ring(inst));
    auto s = pe2::subgroup_lattice_checks(G);
    auto t = pe2::compute_ord(G);
    auto sr = pe2::stable_range_report(G.ring(), &G, &t);
    json res{{"pe_order", s.pe_order},
             {"pe1_order", s.pe1_order},
             {"pe2_order", s.pe2_order},
             {"pe1_index", s.pe1_index},
             {"pe2_is_derived", s.pe2_is_derived},
             {"pe2_perfect", s.pe2_perfect},
             {"pe2_simple", s.pe2_simple},
             {"pe2_conjugacy_classes", s.pe2_conjugacy_classes},
             {"sr1", sr.sr1},
             {"q3_witnesses", sr.q3_witnesses},
             {"max_ord", t.max().str()},
             {"equivalences_hold", sr.equivalences_hold}};
    return {sr.equivalences_hold, "computed", res, {{"elapsed_ms", ms_since(t0)}}};
}

// ---------------------------------------------------------------- gui

json cert_json(const FiniteRing& R, const gui::WitnessCertificate& c) {
    json j{{"ring", c.ring},
           {"k", c.k},
           {"tuple", format_tuple(R, c.tuple)},
           {"verdict", gui::to_string(c.verdict)},
           {"normalization", {{"left", R.format(c.normalization.left)}, {"right", R.format(c.normalization.right)}}},
           {"normalized", format_tuple(R, c.normalized)},
           {"strategy", gui::to_string(c.strategy)},
           {"seed", c.seed}};
    if (c.witness) j["witness"] = R.format(*c.witness);
    return j;
}

gui::WitnessCertificate cert_from_json(const FiniteRing& R, const json& j) {
    gui::WitnessCertificate c;
    c.ring = j.at("ring").get<std::string>();
    c.k = j.at("k").get<int>();
    c.tuple = parse_tuple(R, j.at("tuple"));
    c.verdict = gui::parse_verdict(j.at("verdict").get<std::string>());
    if (j.contains("witness")) c.witness = R.parse(j.at("witness").get<std::string>());
    c.normalization.left = R.parse(j.at("normalization").at("left").get<std::string>());
    c.normalization.right = R.parse(j.at("normalization").at("right").get<std::string>());
    c.normalized = parse_tuple(R, j.at("normalized"));
    c.strategy = gui::parse_strategy(j.at("strategy").get<std::string>());
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

json search_stats(const gui::SearchStats& s) {
    return {{"tested", s.tuples}, {"candidates", s.candidates}, {"orbit_reps", s.orbit_reps}, {"elapsed_ms", s.elapsed_ms}};
}

Outcome gui_check(const json& inst) {
    auto R = finite_ring(inst);
    const auto strategy = gui::parse_strategy(inst.value("strategy", std::string("subfield-first")));
    if (inst.contains("tuple")) {
        auto t = parse_tuple(*R, inst.at("tuple"));
        if (t.empty()) throw UsageError("--tuple needs at least one element");
        if (inst.contains("k") && inst.at("k").get<std::size_t>() != t.size() + 1)
            throw UsageError("--k must be one more than the tuple length");
        auto c = gui::certify_tuple(*R, t, strategy, seed_of(inst));
        const bool pass = c.verdict == gui::VerdictKind::Witness;
        return {pass, gui::to_string(c.verdict), cert_json(*R, c), search_stats(c.stats)};
    }
    gui::GuiOptions o;
    o.strategy = strategy;
    if (inst.contains("samples")) o.samples = inst.at("samples").get<std::uint64_t>();
    o.seed = seed_of(inst);
    o.shards = inst.value("shards", 1u);
    o.shard_id = inst.value("shard_id", 0u);
    if (inst.contains("max_tuples")) o.max_tuples = inst.at("max_tuples").get<std::uint64_t>();
    auto rep = gui::check_gui(*R, inst.at("k").get<int>(), o);
    json res{{"ring", rep.ring},
             {"k", rep.k},
             {"verdict", gui::to_string(rep.verdict)},
             {"mode", o.samples ? "sampled" : "exhaustive"},
             {"shards", o.shards},
             {"shard_id", o.shard_id}};
    if (rep.counterexample) res["counterexample"] = cert_json(*R, *rep.counterexample);
    return {rep.pass, gui::to_string(rep.verdict), res, search_stats(rep.stats)};
}

Outcome gui_bone(const json& inst, const Context& ctx) {
    const unsigned n = inst.at("n").get<unsigned>();
    if (n < 2 || n > 5) throw UsageError("--n must be between 2 and 5");
    gui::BoneOptions o;
    if (inst.contains("samples")) o.samples = inst.at("samples").get<std::uint64_t>();
    o.seed = seed_of(inst);
    o.jobs = ctx.jobs;
    o.shards = inst.value("shards", 1u);
    o.shard_id = inst.value("shard_id", 0u);
    o.use_btwo = inst.value("use_btwo", true);
    if (o.shards == 0 || o.shard_id >= o.shards) throw UsageError("bad shard selection");
    auto rep = gui::verify_prop_Bone(n, o);
    json cases = json::array();
    std::uint64_t pairs = 0;
    for (const auto& c : rep.cases) {
        cases.push_back({{"rank", c.rank},
                         {"pairs", c.pairs},
                         {"via_lift", c.via_btwo},
                         {"via_scan", c.via_scan},
                         {"failures", c.failures}});
        pairs += c.pairs;
    }
    json res{{"n", n}, {"k", 3}, {"exhaustive", rep.exhaustive}, {"cases", cases}};
    if (rep.failure) {
        auto M = make_finite_ring(fmt::format("mat({},gf(2))", n));
        res["failure"] = {{"B", M->format(rep.failure->first)}, {"C", M->format(rep.failure->second)}};
    }
    std::string verdict = "failure";
    if (rep.pass) verdict = rep.exhaustive ? "exhaustive-pass" : o.samples ? "sampled-pass" : "shard-pass";
    return {rep.pass, verdict, res, {{"tested", pairs}, {"elapsed_ms", rep.elapsed_ms}}};
}

Outcome gui_bounds(const json& inst) {
    auto d = gui::density_bounds(inst.at("n").get<unsigned>(), inst.at("q").get<std::uint64_t>());
    json res{{"gl_order", d.gl_order.str()},
             {"ratio", d.ratio.str()},
             {"f_n", d.f_n.str()},
             {"equal", d.equal},
             {"bound_applicable", d.bound_applicable},
             {"bound_holds", d.bound_holds},
             {"measure_argument", d.measure_argument}};
    if (d.enumerated) res["enumerated"] = *d.enumerated;
    const bool pass = d.equal && d.enumerated.value_or(true) && (!d.bound_applicable || (d.bound_holds && d.measure_argument));
    return {pass, pass ? "bounds-hold" : "bounds-fail", res, json::object()};
}

Outcome gui_classify(const json& inst) {
    auto R = finite_ring(inst);
    auto a = gui::artinian_classifier(*R);
    json res{{"factors", a.factors}, {"offending", a.offending}, {"satisfies3", a.satisfies3}};
    if (a.direct) res["direct"] = *a.direct;
    const bool pass = !a.direct || *a.direct == a.satisfies3;
    return {pass, a.satisfies3 ? "satisfies-3" : "fails-3", res, json::object()};
}

Outcome gui_probe(const json& inst) {
    auto S = finite_ring(inst);
    const auto t0 = Clock::now();
    auto p = gui::conjecture_Affn_probe(S, inst.at("n").get<unsigned>(), inst.value("samples", std::uint64_t{10000}),
                                        seed_of(inst));
    json res{{"ring", p.ring}, {"base_two", p.base_two}, {"exhaustive", p.exhaustive},
             {"counterexamples", p.counterexamples}};
    if (p.first_counterexample) res["first_counterexample"] = format_tuple(*make_finite_ring(p.ring), *p.first_counterexample);
    const bool pass = p.counterexamples == 0;
    return {pass, pass ? "no-counterexample" : "counterexample", res,
            {{"tested", p.tested}, {"elapsed_ms", ms_since(t0)}}};
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

const char* const kCommands[] = {"continuant eval", "continuant identities", "pe2 reduce", "pe2 ord", "pe2 groups",
                                 "gui check",       "gui bone",              "gui bounds", "gui classify", "gui probe"};

}  // namespace

bool known_command(const std::string& command) {
    for (const char* c : kCommands)
        if (command == c) return true;
    return false;
}

Outcome run_command(const std::string& command, const json& inst, const Context& ctx) {
    if (command == "continuant eval") return continuant_eval(inst);
    if (command == "continuant identities") return continuant_identities(inst);
    if (command == "pe2 reduce") return pe2_reduce(inst);
    if (command == "pe2 ord") return pe2_ord(inst);
    if (command == "pe2 groups") return pe2_groups(inst);
    if (command == "gui check") return gui_check(inst);
    if (command == "gui bone") return gui_bone(inst, ctx);
    if (command == "gui bounds") return gui_bounds(inst);
    if (command == "gui classify") return gui_classify(inst);
    if (command == "gui probe") return gui_probe(inst);
    throw UsageError("unknown command '" + command + "'");
}

json make_artifact(const std::string& command, const json& instance, const Outcome& outcome, const Context& ctx) {
    json prov{{"version", kVersion}, {"jobs", ctx.jobs}, {"timestamp", utc_now()}};
    prov["seed"] = instance.contains("seed") ? instance.at("seed") : json(nullptr);
    if (instance.contains("strategy")) prov["strategy"] = instance.at("strategy");
    return {{"schema", kSchema},  {"command", command},       {"instance", instance}, {"verdict", outcome.verdict},
            {"pass", outcome.pass}, {"result", outcome.result}, {"stats", outcome.stats}, {"provenance", prov}};
}

std::string manifest_hash(const json& artifact) {
    json m{{"schema", artifact.at("schema")},
           {"command", artifact.at("command")},
           {"instance", artifact.at("instance")},
           {"version", artifact.at("provenance").at("version")}};
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : m.dump()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return fmt::format("{:016x}", h);
}

std::string sanitize(const std::string& text) {
    std::string out;
    for (char ch : text) {
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-')
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        else if (!out.empty() && out.back() != '_')
            out += '_';
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out.empty() ? "none" : out;
}

std::filesystem::path store_artifact(const json& artifact, const std::filesystem::path& out_dir) {
    const auto& inst = artifact.at("instance");
    const std::string ring = inst.contains("ring") ? inst.at("ring").get<std::string>() : "none";
    auto dir = out_dir / "certs" / sanitize(ring) / sanitize(artifact.at("command").get<std::string>());
    std::filesystem::create_directories(dir);
    auto path = dir / (manifest_hash(artifact) + ".json");
    std::ofstream(path) << artifact.dump(2) << '\n';
    return path;
}

ReplayResult replay(const json& artifact, const Context& ctx) {
    std::string command, verdict;
    json inst, result;
    bool pass = false;
    try {
        if (artifact.at("schema").get<std::string>() != kSchema) return {ReplayStatus::SchemaError, "unknown schema"};
        command = artifact.at("command").get<std::string>();
        inst = artifact.at("instance");
        verdict = artifact.at("verdict").get<std::string>();
        result = artifact.at("result");
        pass = artifact.at("pass").get<bool>();
    } catch (const json::exception& e) {
        return {ReplayStatus::SchemaError, e.what()};
    }
    if (!known_command(command)) return {ReplayStatus::SchemaError, "unknown command '" + command + "'"};

    if (command == "gui check" && inst.contains("tuple")) {
        gui::WitnessCertificate c;
        FiniteRingPtr R;
        try {
            R = finite_ring(inst);
            c = cert_from_json(*R, result);
        } catch (const std::exception& e) {
            return {ReplayStatus::SchemaError, e.what()};
        }
        if (gui::to_string(c.verdict) != verdict || c.tuple != parse_tuple(*R, inst.at("tuple")))
            return {ReplayStatus::Diverged, "certificate body disagrees with its instance"};
        if (!gui::verify_certificate(*R, c))
            return {ReplayStatus::Diverged, verdict == "witness" ? "witness does not verify" : "reverse scan found a witness"};
        return {ReplayStatus::Identical, verdict == "witness" ? "witness re-verified" : "reverse unit scan found no witness"};
    }

    Outcome now = run_command(command, inst, ctx);
    if (now.verdict != verdict || now.pass != pass) return {ReplayStatus::Diverged, "verdict " + now.verdict + " differs"};
    if (now.result != result) return {ReplayStatus::Diverged, "result body differs"};
    return {ReplayStatus::Identical, "re-run reproduced the verdict " + verdict};
}

}  // namespace wedder::cli
