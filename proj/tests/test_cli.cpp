#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "commands.hpp"
#include "suite.hpp"

using namespace wedder;
using namespace wedder::cli;

namespace {

json artifact_for(const std::string& command, const json& inst) {
    Context ctx;
    return make_artifact(command, inst, run_command(command, inst, ctx), ctx);
}

json without_clock(json a) {
    a["provenance"].erase("timestamp");
    a["stats"].erase("elapsed_ms");
    return a;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("path pieces") {
    CHECK(sanitize("mat(2,gf(3))") == "mat_2_gf_3");
    CHECK(sanitize("prod(gf(2),mat(2,gf(3)))") == "prod_gf_2_mat_2_gf_3");
    CHECK(sanitize("gui check") == "gui_check");
    CHECK(sanitize("()") == "none");
}

TEST_CASE("identical manifests give identical bodies") {
    const json inst{{"ring", "mat(2,gf(3))"}, {"k", 3}, {"samples", 500}, {"seed", 9}, {"strategy", "sampling"}};
    auto a = artifact_for("gui check", inst);
    auto b = artifact_for("gui check", inst);
    CHECK(manifest_hash(a) == manifest_hash(b));
    CHECK(without_clock(a).dump() == without_clock(b).dump());
    auto other = inst;
    other["seed"] = 10;
    CHECK(manifest_hash(artifact_for("gui check", other)) != manifest_hash(a));
    CHECK(manifest_hash(a).size() == 16);
}

TEST_CASE("artifacts land under certs/ring/command") {
    const auto dir = std::filesystem::temp_directory_path() / "wedder_cli_test";
    std::filesystem::remove_all(dir);
    auto a = artifact_for("gui bounds", {{"ring", "mat(2,gf(4))"}, {"n", 2}, {"q", 4}});
    auto path = store_artifact(a, dir);
    CHECK(path.parent_path() == dir / "certs" / "mat_2_gf_4" / "gui_bounds");
    std::ifstream in(path);
    CHECK(json::parse(in) == a);
    std::filesystem::remove_all(dir);
}

TEST_CASE("witness replay is a direct re-check") {
    auto a = artifact_for("gui check", {{"ring", "mat(2,gf(3))"}, {"tuple", {"[[1,0],[0,0]]", "[[0,1],[1,0]]"}}});
    REQUIRE(a["verdict"] == "witness");
    CHECK(a["pass"] == true);
    CHECK(replay(a, {}).status == ReplayStatus::Identical);

    auto forged = a;
    forged["result"]["witness"] = "[[0,0],[0,0]]";
    CHECK(replay(forged, {}).status == ReplayStatus::Diverged);

    auto swapped = a;
    swapped["result"]["tuple"][0] = "[[2,0],[0,0]]";
    CHECK(replay(swapped, {}).status == ReplayStatus::Diverged);
}

TEST_CASE("exhausted failure replay rescans") {
    auto a = artifact_for("gui check", {{"ring", "mat(2,gf(2))"}, {"tuple", {"[[1,0],[0,0]]", "[[0,1],[0,0]]"}}});
    REQUIRE(a["verdict"] == "exhausted-failure");
    CHECK(a["pass"] == false);
    CHECK(replay(a, {}).status == ReplayStatus::Identical);

    // Claiming exhaustion for a tuple that has a witness is caught.
    auto b = artifact_for("gui check", {{"ring", "mat(2,gf(2))"}, {"tuple", {"[[1,0],[0,0]]", "[[1,0],[0,0]]"}}});
    REQUIRE(b["verdict"] == "witness");
    b["verdict"] = "exhausted-failure";
    b["result"]["verdict"] = "exhausted-failure";
    b["result"].erase("witness");
    CHECK(replay(b, {}).status == ReplayStatus::Diverged);
}

TEST_CASE("aggregate replay re-runs") {
    auto sampled = artifact_for("gui check", {{"ring", "mat(3,gf(2))"}, {"k", 3}, {"samples", 300}, {"seed", 4}});
    CHECK(sampled["verdict"] == "sampled-pass");
    CHECK(replay(sampled, {}).status == ReplayStatus::Identical);

    auto bone = artifact_for("gui bone", {{"ring", "mat(3,gf(2))"}, {"n", 3}});
    CHECK(bone["verdict"] == "exhaustive-pass");
    CHECK(replay(bone, {2}).status == ReplayStatus::Identical);
    bone["result"]["cases"][1]["pairs"] = 1;
    CHECK(replay(bone, {}).status == ReplayStatus::Diverged);
}

TEST_CASE("schema errors") {
    auto a = artifact_for("gui bounds", {{"ring", "mat(2,gf(2))"}, {"n", 2}, {"q", 2}});
    auto wrong = a;
    wrong["schema"] = "other/1";
    CHECK(replay(wrong, {}).status == ReplayStatus::SchemaError);
    auto missing = a;
    missing.erase("result");
    CHECK(replay(missing, {}).status == ReplayStatus::SchemaError);
    auto unknown = a;
    unknown["command"] = "gui nothing";
    CHECK(replay(unknown, {}).status == ReplayStatus::SchemaError);
    auto garbled = artifact_for("gui check", {{"ring", "mat(2,gf(3))"}, {"tuple", {"[[1,0],[0,0]]"}}});
    garbled["result"]["witness"] = "[[1,0]]";
    CHECK(replay(garbled, {}).status == ReplayStatus::SchemaError);
}

TEST_CASE("shard union matches the unsharded scan") {
    const json base{{"ring", "mat(3,gf(2))"}, {"k", 3}};
    auto whole = run_command("gui check", base, {});
    CHECK(whole.verdict == "exhaustive-pass");
    bool all = true;
    std::uint64_t reps = 0;
    for (unsigned i = 0; i < 4; ++i) {
        auto inst = base;
        inst["shards"] = 4;
        inst["shard_id"] = i;
        auto part = run_command("gui check", inst, {});
        all = all && part.pass;
        reps += part.stats["orbit_reps"].get<std::uint64_t>();
    }
    CHECK(all == whole.pass);
    CHECK(reps == whole.stats["orbit_reps"].get<std::uint64_t>());

    // A failing ring fails in exactly the shards holding a bad representative.
    const json bad{{"ring", "mat(2,gf(2))"}, {"k", 3}};
    CHECK_FALSE(run_command("gui check", bad, {}).pass);
    bool any_fail = false;
    for (unsigned i = 0; i < 3; ++i) {
        auto inst = bad;
        inst["shards"] = 3;
        inst["shard_id"] = i;
        any_fail = any_fail || !run_command("gui check", inst, {}).pass;
    }
    CHECK(any_fail);
}

TEST_CASE("other commands") {
    auto eval = run_command("continuant eval", {{"ring", "free(a,b,c)"}, {"tuple", {"a", "b", "c"}}}, {});
    CHECK(eval.result["Q"][3] == "a + c + c*b*a");
    CHECK(eval.result["Q"][0] == "1");
    auto ids = run_command("continuant identities", {{"ring", "free(a1,a2,a3,a4,a5)"}, {"k", 5}}, {});
    CHECK(ids.pass);
    CHECK(ids.result["identities"].size() == 7);
    CHECK_THROWS_AS(run_command("continuant identities", {{"ring", "free(a,b)"}, {"k", 3}}, {}), UsageError);

    auto red = run_command("pe2 reduce", {{"ring", "gf(5)"}, {"word", "e(2),e(0),e(4)"}}, {});
    CHECK(red.result["normal_form"] == "e(1),m(1,1)");
    auto ord = run_command("pe2 ord", {{"ring", "zmod(4)"}, {"all", true}}, {});
    CHECK(ord.result["max"] == "2");
    CHECK_THROWS_AS(run_command("pe2 ord", {{"ring", "gf(3)"}}, {}), UsageError);
    auto grp = run_command("pe2 groups", {{"ring", "gf(4)"}}, {});
    CHECK(grp.result["pe2_order"] == 60);
    CHECK(grp.result["pe2_simple"] == true);

    auto cls = run_command("gui classify", {{"ring", "prod(gf(2),gf(4))"}}, {});
    CHECK(cls.verdict == "fails-3");
    CHECK(cls.pass);
    auto probe = run_command("gui probe", {{"ring", "gf(3)"}, {"n", 2}}, {});
    CHECK(probe.verdict == "no-counterexample");
    CHECK(probe.result["exhaustive"] == true);
    CHECK_THROWS_AS(run_command("gui bone", {{"n", 6}}, {}), UsageError);
    CHECK_THROWS_AS(run_command("gui check", {{"ring", "gf(4)"}, {"tuple", {"1"}}, {"k", 5}}, {}), UsageError);
    CHECK_THROWS_AS(run_command("nothing", json::object(), {}), UsageError);
}

TEST_CASE("criterion bookkeeping") {
    suite::Criterion c{99, "synthetic", 10, 1, {}};
    c.clauses.push_back({"holds", true, false, "", ""});
    CHECK(c.pass());
    CHECK(c.as_expected());
    c.clauses.push_back({"cannot hold", false, true, "reason", ""});
    CHECK_FALSE(c.pass());
    CHECK(c.as_expected());
    c.clauses.back().pass = true;  // an unattainable clause passing is itself a surprise
    CHECK_FALSE(c.as_expected());
    c.clauses.back().pass = false;
    c.elapsed_s = 11;
    CHECK_FALSE(c.as_expected());
    CHECK(suite::format_line(c).find("over the time limit") != std::string::npos);

    auto fib = suite::run_criterion(2, {});
    CHECK(fib.pass());
    CHECK(suite::format_line(fib).rfind("PASS  2", 0) == 0);
    CHECK_THROWS(suite::run_criterion(14, {}));
}

}  // TEST_SUITE
