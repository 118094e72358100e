#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "commands.hpp"
#include "suite.hpp"
#include "wedder/ring.hpp"

namespace {

using wedder::cli::json;
namespace fs = std::filesystem;

struct Globals {
    unsigned jobs = 1;
    std::uint64_t seed = 1;
    double timeout_secs = 0;
    std::string out_dir;
    bool no_store = false;
};

fs::path out_dir(const Globals& g) {
    if (!g.out_dir.empty()) return g.out_dir;
    if (const char* env = std::getenv("WEDDER_OUT_DIR")) return env;
    return "wedder-out";
}

std::vector<std::string> split_list(const std::string& text) { return wedder::split_top_level(text); }

void start_watchdog(double secs) {
    if (secs <= 0) return;
    std::thread([secs] {
        std::this_thread::sleep_for(std::chrono::duration<double>(secs));
        std::fprintf(stderr, "timeout after %.0f s\n", secs);
        std::fflush(stdout);
        std::_Exit(1);
    }).detach();
}

int run_report(const Globals& g, const std::string& suite_name, const std::vector<int>& only, bool skip_full5) {
    if (suite_name != "paper-core") throw wedder::cli::UsageError("unknown suite '" + suite_name + "'");
    wedder::suite::SuiteOptions o;
    o.jobs = g.jobs;
    o.seed = g.seed;
    o.full_bone5 = !skip_full5;
    std::vector<wedder::suite::Criterion> done;
    for (int id = 1; id <= 13; ++id) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        done.push_back(wedder::suite::run_criterion(id, o));
        std::cout << wedder::suite::format_line(done.back()) << std::endl;
    }
    json bundle{{"schema", "wedder.report/1"}, {"suite", suite_name}, {"version", wedder::cli::kVersion},
                {"seed", g.seed}, {"criteria", json::array()}};
    std::string csv = "id,title,pass,as_expected,elapsed_s,budget_s\n";
    bool all_pass = true;
    for (const auto& c : done) {
        json clauses = json::array();
        for (const auto& cl : c.clauses)
            clauses.push_back({{"name", cl.name}, {"pass", cl.pass}, {"unattainable", cl.unattainable},
                               {"reason", cl.reason}, {"detail", cl.detail}});
        bundle["criteria"].push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass()}, {"as_expected", c.as_expected()},
                                      {"elapsed_s", c.elapsed_s}, {"budget_s", c.budget_s}, {"clauses", clauses}});
        csv += fmt::format("{},\"{}\",{},{},{:.3f},{:.0f}\n", c.id, c.title, c.pass(), c.as_expected(), c.elapsed_s,
                           c.budget_s);
        all_pass = all_pass && c.pass();
    }
    if (!g.no_store) {
        const auto dir = out_dir(g) / "reports";
        fs::create_directories(dir);
        std::ofstream(dir / (suite_name + ".json")) << bundle.dump(2) << '\n';
        std::ofstream(dir / (suite_name + ".csv")) << csv;
        std::cerr << "report: " << (dir / (suite_name + ".json")).string() << '\n';
    }
    return all_pass ? 0 : 1;
}

int run_replay(const Globals& g, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw wedder::cli::UsageError("cannot read " + path);
    json artifact;
    try {
        artifact = json::parse(in);
    } catch (const json::exception& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return 2;
    }
    auto r = wedder::cli::replay(artifact, {g.jobs});
    switch (r.status) {
        case wedder::cli::ReplayStatus::Identical: std::cout << "identical: " << r.message << '\n'; return 0;
        case wedder::cli::ReplayStatus::Diverged: std::cout << "corrupted: " << r.message << '\n'; return 1;
        default: std::cerr << "schema error: " << r.message << '\n'; return 2;
    }
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Noncommutative continuants, PE(2,R) words and unit-translate searches over finite rings", "wedder"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
    app.add_option("--seed", g.seed, "Seed for sampled checks");
    app.add_option("--timeout-secs", g.timeout_secs, "Abort with exit code 1 after this many seconds");
    app.add_option("--out-dir", g.out_dir, "Artifact directory (default $WEDDER_OUT_DIR or ./wedder-out)");
    app.add_flag("--no-store", g.no_store, "Print artifacts without writing them");

    std::string ring, tuple, word, strategy = "subfield-first", suite_name, cert;
    int k = 0;
    unsigned n = 0, shards = 1, shard_id = 0;
    std::uint64_t q = 0, samples = 0, max_tuples = 0;
    bool all = false, exhaustive = false, no_btwo = false, skip_full5 = false;
    std::vector<int> criteria;

    auto* cont = app.add_subcommand("continuant", "Continuant polynomials");
    cont->require_subcommand(1);
    auto* c_eval = cont->add_subcommand("eval", "P, Q and their opposites for a tuple");
    c_eval->add_option("--ring", ring, "Ring descriptor, e.g. free(a,b,c) or mat(2,gf(3))")->required();
    c_eval->add_option("--tuple", tuple, "Comma-separated elements a(1),...,a(k)")->required();
    auto* c_ids = cont->add_subcommand("identities", "Check the continuant identities");
    c_ids->add_option("--ring", ring)->required();
    c_ids->add_option("--k", k, "Tuple length")->required();
    c_ids->add_option("--samples", samples, "Random tuples over a finite ring (default 10000)");

    auto* pe = app.add_subcommand("pe2", "PE(2,R) words");
    pe->require_subcommand(1);
    auto* p_red = pe->add_subcommand("reduce", "Normal form of a word");
    p_red->add_option("--ring", ring)->required();
    p_red->add_option("--word", word, "e.g. e(1),t(2),m(1,2),j")->required();
    auto* p_ord = pe->add_subcommand("ord", "Exact ord by exhaustive search");
    p_ord->add_option("--ring", ring)->required();
    p_ord->add_option("--word", word, "Report the ord of this element");
    p_ord->add_flag("--all", all, "Report the full distribution");
    auto* p_grp = pe->add_subcommand("groups", "Subgroup orders, perfectness, simplicity, stable range");
    p_grp->add_option("--ring", ring)->required();

    auto* gu = app.add_subcommand("gui", "Unit-translate intersection property ((k))");
    gu->require_subcommand(1);
    auto* g_chk = gu->add_subcommand("check", "Search ((k)) over a finite ring or for one tuple");
    g_chk->add_option("--ring", ring)->required();
    g_chk->add_option("--k", k, "Property index");
    g_chk->add_option("--tuple", tuple, "Check only s(1),...,s(k-1)");
    auto* ex = g_chk->add_flag("--exhaustive", exhaustive, "Every tuple (default)");
    g_chk->add_option("--samples", samples, "Random tuples instead of exhaustion")->excludes(ex);
    g_chk->add_option("--strategy", strategy, "subfield-first, full-scan or sampling");
    g_chk->add_option("--shards", shards, "Number of shards")->check(CLI::PositiveNumber);
    g_chk->add_option("--shard-id", shard_id, "This shard");
    g_chk->add_option("--max-tuples", max_tuples, "Exhaustion limit on |R|^(k-1)");
    auto* g_bone = gu->add_subcommand("bone", "((3)) for mat(n,gf(2)) by corner lifts and scans");
    g_bone->add_option("--n", n, "Matrix size, 2 to 5")->required();
    g_bone->add_option("--samples", samples, "Random C instead of all");
    g_bone->add_option("--shards", shards)->check(CLI::PositiveNumber);
    g_bone->add_option("--shard-id", shard_id);
    g_bone->add_flag("--no-lift", no_btwo, "Scan every case");
    auto* g_bnd = gu->add_subcommand("bounds", "Unit density of mat(n,gf(q))");
    g_bnd->add_option("--n", n)->required();
    g_bnd->add_option("--q", q)->required();
    auto* g_cls = gu->add_subcommand("classify", "((3)) for a semisimple product by its simple factors");
    g_cls->add_option("--ring", ring)->required();
    auto* g_prb = gu->add_subcommand("probe", "Search mat(n,S) for ((3)) counterexamples");
    g_prb->add_option("--ring", ring, "Base ring S")->required();
    g_prb->add_option("--n", n)->required();
    g_prb->add_option("--samples", samples, "Random tuples when exhaustion is too large (default 10000)");

    auto* rep = app.add_subcommand("report", "Run an acceptance suite and write a bundle");
    rep->add_option("--suite", suite_name, "Suite name (paper-core)")->required();
    rep->add_option("--criteria", criteria, "Only these criterion ids")->delimiter(',');
    rep->add_flag("--skip-full-bone5", skip_full5, "Skip exhaustive mat(5,gf(2))");
    auto* rpl = app.add_subcommand("replay", "Re-verify a stored certificate");
    rpl->add_option("--certificate", cert, "Certificate path")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    start_watchdog(g.timeout_secs);

    if (rep->parsed()) return run_report(g, suite_name, criteria, skip_full5);
    if (rpl->parsed()) return run_replay(g, cert);

    std::string command;
    json inst;
    if (!ring.empty()) inst["ring"] = ring;
    auto tuple_list = [&] { return json(split_list(tuple)); };
    if (c_eval->parsed()) {
        command = "continuant eval";
        inst["tuple"] = tuple_list();
    } else if (c_ids->parsed()) {
        command = "continuant identities";
        inst["k"] = k;
        inst["seed"] = g.seed;
        if (samples) inst["samples"] = samples;
    } else if (p_red->parsed()) {
        command = "pe2 reduce";
        inst["word"] = word;
    } else if (p_ord->parsed()) {
        command = "pe2 ord";
        if (!word.empty()) inst["word"] = word;
        if (all) inst["all"] = true;
    } else if (p_grp->parsed()) {
        command = "pe2 groups";
    } else if (g_chk->parsed()) {
        command = "gui check";
        inst["strategy"] = strategy;
        inst["seed"] = g.seed;
        if (!tuple.empty()) {
            inst["tuple"] = tuple_list();
            if (k) inst["k"] = k;
        } else {
            if (!k) throw wedder::cli::UsageError("gui check needs --k or --tuple");
            inst["k"] = k;
            if (samples) inst["samples"] = samples;
            if (shards != 1) {
                inst["shards"] = shards;
                inst["shard_id"] = shard_id;
            }
            if (max_tuples) inst["max_tuples"] = max_tuples;
        }
    } else if (g_bone->parsed()) {
        command = "gui bone";
        inst["ring"] = fmt::format("mat({},gf(2))", n);
        inst["n"] = n;
        if (samples) {
            inst["samples"] = samples;
            inst["seed"] = g.seed;
        }
        if (shards != 1) {
            inst["shards"] = shards;
            inst["shard_id"] = shard_id;
        }
        if (no_btwo) inst["use_btwo"] = false;
    } else if (g_bnd->parsed()) {
        command = "gui bounds";
        inst["ring"] = fmt::format("mat({},gf({}))", n, q);
        inst["n"] = n;
        inst["q"] = q;
    } else if (g_cls->parsed()) {
        command = "gui classify";
    } else if (g_prb->parsed()) {
        command = "gui probe";
        inst["n"] = n;
        inst["seed"] = g.seed;
        if (samples) inst["samples"] = samples;
    }

    const wedder::cli::Context ctx{g.jobs};
    auto outcome = wedder::cli::run_command(command, inst, ctx);
    auto artifact = wedder::cli::make_artifact(command, inst, outcome, ctx);
    std::cout << artifact.dump(2) << std::endl;
    if (!g.no_store) std::cerr << "certificate: " << wedder::cli::store_artifact(artifact, out_dir(g)).string() << '\n';
    return outcome.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const wedder::cli::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const wedder::RingError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return 2;
}
