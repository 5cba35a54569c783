#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "arcmodel/cli.hpp"
#include "json.hpp"

using namespace arcmodel;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(RunConfig cfg)
{
    std::ostringstream out, err;
    Result r;
    r.code = run(cfg, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string data(const std::string& name) { return std::string(ARCMODEL_DATA_DIR) + "/" + name; }

RunConfig config(const std::string& command, const std::string& input = "", const std::string& ring = "")
{
    RunConfig cfg;
    cfg.command = command;
    cfg.input = input.empty() ? "" : data(input);
    cfg.ring = ring;
    return cfg;
}

std::string scratch_file(const std::string& name, const std::string& text)
{
    auto path = std::filesystem::temp_directory_path() / ("arcmodel_cli_" + name);
    std::ofstream(path) << text;
    return path.string();
}

bool contains(const std::string& haystack, const std::string& needle) { return haystack.find(needle) != std::string::npos; }

} // namespace

TEST(Cli, DefaultsAreDocumented)
{
    RunConfig cfg;
    EXPECT_EQ(cfg.r, 1u);
    EXPECT_EQ(cfg.seed, 0u);
    EXPECT_EQ(cfg.trials, 100u);
}

TEST(Cli, ModelOfExample)
{
    auto res = invoke(config("model", "example.arc"));
    ASSERT_EQ(res.code, 0) << res.err;
    auto j = nlohmann::json::parse(res.out);
    EXPECT_EQ(j["schema"], "arcmodel.model/1");
    EXPECT_EQ(j["d"], 1);
    EXPECT_EQ(j["variables"].size(), 6u);
    EXPECT_EQ(j["equations"].size(), 4u);

    auto cfg = config("model", "example.arc");
    cfg.format = "ideal";
    auto ideal = invoke(cfg);
    ASSERT_EQ(ideal.code, 0);
    EXPECT_EQ(ideal.out.rfind("R = QQ[", 0), 0u) << ideal.out;

    cfg.format = "latex";
    EXPECT_EQ(invoke(cfg).code, exit_status::input_error);
}

TEST(Cli, ModelToFile)
{
    auto cfg = config("model", "example.arc");
    cfg.output = (std::filesystem::temp_directory_path() / "arcmodel_cli_model.json").string();
    auto res = invoke(cfg);
    ASSERT_EQ(res.code, 0);
    EXPECT_TRUE(res.out.empty());
    std::ifstream in(cfg.output);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(nlohmann::json::parse(ss.str())["n"], 2);
}

TEST(Cli, DefectOfGraph)
{
    auto res = invoke(config("defect", "graph.arc"));
    ASSERT_EQ(res.code, 0);
    EXPECT_TRUE(contains(res.out, "d = 0"));
    EXPECT_TRUE(contains(res.out, "trivial model"));
    auto ex = invoke(config("defect", "example.arc"));
    EXPECT_EQ(ex.out, "d = 1\n");
}

TEST(Cli, CheckReportsDefect)
{
    auto res = invoke(config("check", "cusp.arc"));
    ASSERT_EQ(res.code, 0) << res.err;
    EXPECT_TRUE(contains(res.out, "d = 3"));
}

TEST(Cli, RoundtripExample)
{
    auto cfg = config("roundtrip", "example.arc", "F2[e]/e^2");
    cfg.trials = 200;
    cfg.seed = 42;
    auto res = invoke(cfg);
    EXPECT_EQ(res.code, 0) << res.out << res.err;
    EXPECT_TRUE(contains(res.out, "inverse(forward(def)) = def: 200/200"));
    EXPECT_TRUE(contains(res.out, "forward(inverse(pt)) = pt: 200/200"));
    EXPECT_TRUE(contains(res.out, "deg q != d: 0"));
}

TEST(Cli, RoundtripIsDeterministic)
{
    auto cfg = config("roundtrip", "two_equations.arc", "F3[e]/e^3");
    cfg.trials = 12;
    cfg.seed = 7;
    cfg.threads = 1;
    auto one = invoke(cfg);
    cfg.threads = 3;
    auto three = invoke(cfg);
    EXPECT_EQ(one.code, 0);
    EXPECT_EQ(one.out, three.out);
    EXPECT_EQ(one.out, invoke(cfg).out);
}

TEST(Cli, LiftPrintsOneRecordPerLevel)
{
    auto cfg = config("lift", "example.arc", "Q[e]/e^3");
    cfg.seed = 3;
    auto res = invoke(cfg);
    ASSERT_EQ(res.code, 0) << res.err;
    EXPECT_TRUE(contains(res.out, "level 2"));
    EXPECT_TRUE(contains(res.out, "level 3"));
    EXPECT_TRUE(contains(res.out, "PASS"));
}

TEST(Cli, OracleExample)
{
    auto cfg = config("oracle", "example.arc", "F2[e]/e^2");
    cfg.precision = 3;
    auto res = invoke(cfg);
    EXPECT_EQ(res.code, 0) << res.out << res.err;
    EXPECT_TRUE(contains(res.out, "deformations: 64"));
    cfg.dump = true;
    auto dumped = invoke(cfg);
    EXPECT_TRUE(contains(dumped.out, "# model points"));
}

TEST(Cli, PrepareSeries)
{
    auto cfg = config("prepare", "", "Q[e]/e^2");
    cfg.series = "[e, (2 + e), 1]";
    auto res = invoke(cfg);
    ASSERT_EQ(res.code, 0) << res.err;
    EXPECT_TRUE(contains(res.out, "d = 1"));
    cfg.series = "[e, 0, 1";
    EXPECT_EQ(invoke(cfg).code, exit_status::input_error);
}

TEST(Cli, InputErrorsExitTwo)
{
    EXPECT_EQ(invoke(config("defect", "missing.arc")).code, exit_status::input_error);
    EXPECT_EQ(invoke(config("frobnicate", "example.arc")).code, exit_status::input_error);
    EXPECT_EQ(invoke(config("roundtrip", "example.arc")).code, exit_status::input_error) << "ring is required";

    RunConfig off;
    off.command = "check";
    off.input = scratch_file("off.arc", "field: Q\nnx: 2\nny: 1\np1: y1*x2 + x1^2\narc.x1: [1]\narc.x2: [0, 1]\n"
                                        "arc.y1: []\nprecision: 8\n");
    auto res = invoke(off);
    EXPECT_EQ(res.code, exit_status::input_error);
    EXPECT_TRUE(contains(res.err, "not zero")) << res.err;

    RunConfig degenerate;
    degenerate.command = "defect";
    degenerate.input = scratch_file("degenerate.arc", "field: Q\nnx: 1\nny: 1\np1: y1^2 - x1^2\narc.x1: []\n"
                                                      "arc.y1: []\nprecision: 8\n");
    EXPECT_EQ(invoke(degenerate).code, exit_status::input_error);
}

TEST(Cli, ResourceRefusalsExitThree)
{
    auto big = config("oracle", "example.arc", "F2[e]/e^2");
    big.precision = 13;
    auto res = invoke(big);
    EXPECT_EQ(res.code, exit_status::refused) << res.err;
    EXPECT_TRUE(contains(res.err, "2^24"));

    auto rt = config("roundtrip", "example.arc", "F2[e]/e^2");
    rt.precision = 100;
    EXPECT_EQ(invoke(rt).code, exit_status::refused);

    auto q = config("oracle", "example.arc", "Q[e]/e^2");
    q.precision = 2;
    EXPECT_EQ(invoke(q).code, exit_status::refused);
}

TEST(Cli, ErrorKindMapping)
{
    EXPECT_EQ(exit_code(ErrorKind::obstructed_lift), 2);
    EXPECT_EQ(exit_code(ErrorKind::inconsistent_input), 2);
    EXPECT_EQ(exit_code(ErrorKind::arc_in_degeneracy_locus), 2);
    EXPECT_EQ(exit_code(ErrorKind::parse), 2);
    EXPECT_EQ(exit_code(ErrorKind::refused), 3);
    EXPECT_EQ(exit_code(ErrorKind::precision_exhausted), 3);
    EXPECT_EQ(exit_code(ErrorKind::not_enumerable), 3);
}
