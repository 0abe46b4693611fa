#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "printers.hpp"
#include "syzmod/json_io.hpp"
#include "syzmod/parser.hpp"

using namespace syzmod;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = std::string(SYZMOD_CLI) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const char* file) { return std::string(SYZMOD_DATA) + "/" + file; }

std::string write_temp(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / ("syzmod_cli_test_" + name);
    std::ofstream(path) << body;
    return path.string();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

// ---- expression grammar ----

TEST(Parser, ConstructorsAndWhitespace) {
    EXPECT_EQ(to_string(parse_expr("O")), to_string(line(0)));
    EXPECT_EQ(to_string(parse_expr(" O( -2 ) ")), to_string(line(-2)));
    EXPECT_EQ(to_string(parse_expr("syz( O(3) , 3 )")), to_string(syz(line(3), 3)));
    EXPECT_EQ(to_string(parse_expr("dual(syz(sum(O(2),2),4))")),
              to_string(dual(syz(direct_sum({{line(2), 2}}), 4))));
    EXPECT_EQ(to_string(parse_expr("twist(dual(O(1)), 2)")), to_string(twist(dual(line(1)), 2)));
    EXPECT_EQ(to_string(parse_expr("tensor(O(1), syz(O(1),3))")), to_string(tensor(line(1), syz(line(1), 3))));
}

TEST(Parser, SumMultiplicities) {
    EXPECT_EQ(to_string(parse_expr("sum(O(1), 3, O(-1))")), to_string(direct_sum({{line(1), 3}, {line(-1), 1}})));
    EXPECT_EQ(to_string(parse_expr("sum(O(1), O(2), 2)")), to_string(direct_sum({{line(1), 1}, {line(2), 2}})));
}

TEST(Parser, ErrorsCarryColumn) {
    const std::vector<std::pair<std::string, std::string>> bad{
        {"O(3", "column 4"},
        {"syz(O(3))", "column 9"},
        {"foo(O)", "column 1"},
        {"O(3) O", "column 6"},
        {"twist(O, x)", "expected an integer"},
        {"", "expected a name"},
    };
    for (const auto& [text, where] : bad) {
        try {
            parse_expr(text);
            ADD_FAILURE() << "accepted: " << text;
        } catch (const ParseError& e) {
            EXPECT_TRUE(contains(e.what(), where)) << text << " -> " << e.what();
        }
    }
}

TEST(Parser, OpaqueNeedsRegistry) {
    EXPECT_THROW(parse_expr("opaque(L)"), ParseError);
    BundleRegistry reg;
    auto b = std::make_shared<OpaqueBundle>();
    b->name = "L";
    b->rank = 1;
    b->h = CohomologyTable::unknown(2);
    b->h_dual = CohomologyTable::unknown(2);
    reg.emplace("L", b);
    EXPECT_NO_THROW(parse_expr("dual(opaque(L))", &reg));
    EXPECT_THROW(parse_expr("opaque(M)", &reg), ParseError);
}

TEST(Parser, TensorWithoutLineFactorIsParseError) {
    EXPECT_THROW(parse_expr("tensor(syz(O(1),3), syz(O(1),3))"), ParseError);
}

// ---- input files ----

TEST(Input, ShippedFilesLoad) {
    const auto p2 = projective_space(2);
    const auto split = load_input_file(data("split_rank2.json"), p2);
    EXPECT_FALSE(split.variety);
    ASSERT_EQ(split.bundles.count("F"), 1u);
    EXPECT_EQ(split.bundles.at("F")->rank, 2);
    EXPECT_EQ(split.bundles.at("F")->h_dual[0], DimEntry::unknown());

    const auto quintic = load_input_file(data("quintic_line.json"), calabi_yau_quintic());
    EXPECT_EQ(quintic.bundles.at("L")->h[0], DimEntry::exact(125));

    const auto custom = load_input_file(data("custom_p2.json"), std::nullopt);
    ASSERT_TRUE(custom.variety);
    EXPECT_EQ(custom.variety->n, 2);
    EXPECT_EQ(custom.variety->name, "P2-by-hand");
    Resolver r(*custom.variety);
    const auto f = r.facts(parse_expr("opaque(L3)", &custom.bundles));
    EXPECT_EQ(f.chern->total().str(), "1 + 3h");
}

TEST(Input, RejectsMalformedDocuments) {
    const auto p2 = projective_space(2);
    EXPECT_THROW(load_input(Json::parse(R"({"bundles": [], "extra": 1})"), p2), ParseError);
    EXPECT_THROW(load_input(Json::parse(R"({"bundles": [{"name": "L", "rank": 1, "colour": 2}]})"), p2), ParseError);
    EXPECT_THROW(load_input(Json::parse(R"({"bundles": [{"name": "L", "rank": 0}]})"), p2), ParseError);
    EXPECT_THROW(load_input(Json::parse(R"({"bundles": [{"name": "L", "rank": 1, "h": [1, 0]}]})"), p2), ParseError);
    EXPECT_THROW(load_input(Json::parse(R"j({"omega": "O(-3)"})j"), p2), ParseError);
    EXPECT_THROW(load_input(Json::parse(R"({"bundles": [{"name": "L", "rank": 1}]})"), std::nullopt), PreconditionError);
    EXPECT_THROW(load_input_file("/nonexistent/syzmod.json", p2), PreconditionError);
}

TEST(ExitCodes, Mapping) {
    EXPECT_EQ(exit_code(ErrorKind::Usage), 1);
    EXPECT_EQ(exit_code(ErrorKind::Unknown), 2);
    EXPECT_EQ(exit_code(ErrorKind::Inconsistent), 3);
    EXPECT_EQ(exit_code(ErrorKind::Internal), 4);
    EXPECT_EQ(ParseError("x").kind(), ErrorKind::Usage);
    EXPECT_EQ(UnknownBlockedError("x").kind(), ErrorKind::Unknown);
    EXPECT_EQ(InconsistencyError("slot", "rule", "x").kind(), ErrorKind::Inconsistent);
    EXPECT_EQ(InternalError("x").kind(), ErrorKind::Internal);
}

// ---- the binary ----

TEST(Cli, DescribeLineBundle) {
    const CliRun r = run("describe --variety P2 --bundle 'O(3)'");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "(10, 0, 0)"));
    EXPECT_TRUE(contains(r.out, "in_U = true, in_V = false"));
    EXPECT_TRUE(contains(r.out, "h^2(F*) = 0         fails"));
}

TEST(Cli, SyzygyOfPlaneCubic) {
    const CliRun r = run("syzygy --variety P2 --bundle 'O(3)' -w 3");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "1 - 3h + 9h^2"));
    EXPECT_TRUE(contains(r.out, "(0, 7, 0)"));
    EXPECT_TRUE(contains(r.out, "LocallyClosedEmbedding"));
    EXPECT_TRUE(contains(r.out, "generic-W assumption"));
}

TEST(Cli, ModuliOfPlaneCubic) {
    const CliRun r = run("moduli --variety P2 --bundle 'O(3)' -w 3 --format json");
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["w"], 3);
    EXPECT_EQ(j["membership"]["in_U"], true);
    EXPECT_TRUE(contains(r.out, "24"));
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("describe --variety P2 --bundle 'O(3'").code, 1);
    EXPECT_EQ(run("describe --variety P1 --bundle O").code, 1);
    EXPECT_EQ(run("frobnicate").code, 1);
    EXPECT_EQ(run("syzygy --variety P2 --bundle 'O(3)' -w 2").code, 1);
    EXPECT_EQ(run("tower --variety P2 --start 'O(3)' --policy max-grassmann --steps 2").code, 2);
    EXPECT_EQ(run("tower --variety P2 --start 'O(3)' --policy fixed -w 3 --require-v").code, 0);

    const std::string bad = write_temp("bad.json", R"({"bundles": [{"name": "L", "rank": 1, "chern": [1, 3], "h": [9, 0, 0]}]})");
    const CliRun r = run("describe --variety P2 --input " + bad + " --bundle 'opaque(L)'", true);
    EXPECT_EQ(r.code, 3);
    EXPECT_TRUE(contains(r.out, "HRR gives 10")) << r.out;

    // a file that defines its own variety conflicts with --variety
    EXPECT_EQ(run("describe --variety P2 --input " + data("custom_p2.json") + " --bundle O").code, 1);

    const std::string extra = write_temp("extra.json", R"({"bundles": [], "extra": 1})");
    EXPECT_EQ(run("describe --variety P2 --input " + extra + " --bundle O").code, 1);
}

TEST(Cli, VerifyPasses) {
    const CliRun r = run("verify");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_FALSE(contains(r.out, "FAIL"));
}

TEST(Cli, OpaqueFromShippedInput) {
    const CliRun r = run("describe --variety P2 --input " + data("split_rank2.json") + " --bundle 'opaque(F)' --format json");
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["facts"]["rank"], 2);
    const CliRun q = run("moduli --variety CY3-quintic --input " + data("quintic_line.json") + " --bundle 'opaque(L)' -w 5");
    EXPECT_EQ(q.code, 0);
    EXPECT_TRUE(contains(q.out, "600"));
}

TEST(Cli, JsonOutputIsCanonical) {
    const std::vector<std::string> cmds{
        "describe --variety P3 --bundle 'syz(O(1),4)' --format json",
        "syzygy --variety P2 --bundle 'O(3)' -w 3 --format json",
        "moduli --variety P3 --bundle 'O(2)' -w 9 --format json",
        "tower --variety P3 --start 'O(1)' --steps 2 --format json",
        "describe --input " + data("custom_p2.json") + " --bundle 'opaque(L3)' --format json",
    };
    for (const auto& c : cmds) {
        const CliRun r = run(c);
        ASSERT_EQ(r.code, 0) << c;
        EXPECT_EQ(canonical_dump(Json::parse(r.out)), r.out) << c;
        EXPECT_EQ(run(c).out, r.out) << "not deterministic: " << c;
    }
}

TEST(Json, InProcessRoundTrip) {
    Resolver r(projective_space(2));
    const auto res = build_syzygy(r, line(3), 3);
    const Json j = to_json(res);
    const std::string text = canonical_dump(j);
    EXPECT_EQ(canonical_dump(Json::parse(text)), text);
    EXPECT_TRUE(to_json(DimEntry::unknown())["value"].is_null());
    EXPECT_EQ(to_json(DimEntry::at_least(8))["at_least"], 8);
}
