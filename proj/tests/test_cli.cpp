#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace suslin;
using namespace testing_support;
using nlohmann::json;

namespace {

struct CliRun {
    int code;
    std::string out;
    json j() const { return json::parse(out); }
};

std::string quote(const std::string& s) {
    std::string r = "'";
    for (char c : s) r += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return r + "'";
}

CliRun cli(const std::vector<std::string>& args) {
    std::string cmd = SUSLIN_CLI;
    for (const auto& a : args) cmd += " " + quote(a);
    cmd += " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_file(const std::string& name, const std::string& content) {
    const std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << content;
    return path;
}

const std::string kCtx = R"({"p": 3, "modulus": [["x", 2]], "extra_valuations": [], "degree_bound": 4, "seed": 0})";

TEST(Cli, QnCheck) {
    const std::string path = write_file("ctx.json", kCtx);
    const CliRun r = cli({"qn-check", "--ctx", path, "t1 - x^2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.j()["status"], "pass");
    const CliRun bad = cli({"qn-check", "--ctx", path, "t1 - x"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_EQ(bad.j()["violation"]["condition"], 1);
}

TEST(Cli, VerifyMu) {
    const CliRun r = cli({"verify", "mu"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.j()["status"], "pass");
    EXPECT_TRUE(r.j()["counterexample"].is_null());
}

TEST(Cli, VerifyH0) {
    const CliRun r = cli({"verify", "h0", "--ctx", kCtx, "--bound", "3"});
    EXPECT_EQ(r.code, 0);
    const json j = r.j();
    EXPECT_EQ(j["details"]["oracle_group"], "Z + Z/3");
    EXPECT_EQ(j["scale"]["degree_bound"], 3);
    EXPECT_EQ(j["check"], "h0");
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli({"verify", "h0", "--bogus"}).code, 2);
    EXPECT_EQ(cli({"frobnicate"}).code, 2);
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"qn-check", "--ctx", "{\"p\": 4, \"modulus\": [[\"x\", 1]]}", "t"}).code, 2);
    EXPECT_EQ(cli({"qn-check", "--ctx", "{not json", "t"}).code, 2);
    EXPECT_EQ(cli({"qn-check", "--ctx", kCtx, "t1 - y"}).code, 2);
    EXPECT_EQ(cli({"qn-check", "--ctx", kCtx, "t1 - 5*x"}).code, 2);
    EXPECT_EQ(cli({"qn-check", "t1"}).code, 2);
    EXPECT_EQ(cli({"boundary", "face", "t - x^2", "--ctx", kCtx, "--j", "2"}).code, 2);
    EXPECT_EQ(cli({"verify", "h0", "--ctx", kCtx, "--format", "xml"}).code, 2);
    EXPECT_EQ(cli({"qn-check", "--ctx", "/nonexistent/ctx.json", "t"}).code, 2);
}

TEST(Cli, Deterministic) {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"verify", "chain", "--ctx", kCtx, "--samples", "8", "--seed", "5"},
          std::vector<std::string>{"verify", "h1", "--ctx", kCtx, "--samples", "6", "--seed", "5"},
          std::vector<std::string>{"verify", "monoid", "--ctx", kCtx, "--samples", "20"},
          std::vector<std::string>{"verify", "h0", "--ctx", kCtx, "--bound", "2", "--samples", "10", "--format", "text"}}) {
        const CliRun a = cli(args), b = cli(args);
        EXPECT_EQ(a.code, 0) << a.out;
        EXPECT_EQ(a.out, b.out);
    }
    const CliRun s1 = cli({"verify", "chain", "--ctx", kCtx, "--samples", "4", "--seed", "1"});
    EXPECT_EQ(s1.j()["scale"]["seed"], 1);
}

TEST(Cli, RoundTripPolynomials) {
    const CliRun r = cli({"rho", "--ctx", kCtx, "t1^2*t2 + x^2*t1"});
    ASSERT_EQ(r.code, 0);
    const json j = r.j();
    EXPECT_EQ(j["exponents"], json::array({1, 0}));
    EXPECT_EQ(T(j["rho"].get<std::string>(), 3, 2), T("t1*t2 + x^2", 3));
    EXPECT_EQ(T(j["input"].get<std::string>(), 3, 2), T("t1^2*t2 + x^2*t1", 3));

    const CliRun f = cli({"factor-q1", "--ctx", kCtx, "(t - x^2)*(t - 2*x^2)"});
    ASSERT_EQ(f.code, 0);
    const json fj = f.j();
    TPoly prod = T(fj["unit"].get<std::string>(), 3, 1);
    for (const auto& g : fj["factors"]) prod *= T(g["poly"].get<std::string>(), 3, 1).pow(g["mult"].get<unsigned>());
    EXPECT_EQ(prod, T("(t - x^2)*(t - 2*x^2)", 3));
}

TEST(Cli, RoundTripDivisors) {
    const auto c = context_from_json(json::parse(kCtx));
    const CliRun r = cli({"boundary", "face", "t - x^2", "--ctx", kCtx, "--j", "1", "--eps", "0"});
    ASSERT_EQ(r.code, 0);
    const Divisor d = divisor_from_json(r.j()["face"]["vertical"], PrimeField(3));
    EXPECT_EQ(d, Divisor(Pl("x - 1", 3)) + Divisor(Pl("x + 1", 3)));
    EXPECT_TRUE(r.j()["face"]["dominant"].is_null());

    const CliRun z = cli({"boundary", "z-part", "t - x^2", "--ctx", kCtx, "--eps", "inf"});
    EXPECT_EQ(divisor_from_json(z.j()["z_part"], PrimeField(3)), 2 * Divisor(Place::infinity()));

    const CliRun dl = cli({"boundary", "delta", "t - x^2", "--ctx", kCtx});
    EXPECT_EQ(divisor_from_json(dl.j()["delta"], PrimeField(3)), principal_divisor(R("1 - x^2", 3)));

    const CliRun d2 = cli({"boundary", "delta", "(t2 - x^2)*(t2 - 2*x^2)", "t1*(t2 - x^2)*(t2 - 2*x^2) + x^4*(t2 - 1)", "--ctx", kCtx});
    ASSERT_EQ(d2.code, 0) << d2.out;
    const json q = d2.j()["delta"];
    EXPECT_EQ(QFraction::of(T(q["num"].get<std::string>(), 3, 1), T(q["den"].get<std::string>(), 3, 1)),
              delta_n(QFraction::of(T("(t2 - x^2)*(t2 - 2*x^2)", 3), T("t1*(t2 - x^2)*(t2 - 2*x^2) + x^4*(t2 - 1)", 3)), c));
    EXPECT_EQ(to_json(context_from_json(to_json(c))), to_json(c));
}

TEST(Cli, NqnCheck) {
    EXPECT_EQ(cli({"nqn-check", "t1*t2 - x^2", "t1 - x^2", "--ctx", kCtx}).code, 1);
    EXPECT_EQ(cli({"nqn-check", "t - x^2", "--ctx", kCtx}).code, 0);
}

TEST(Cli, PicOracle) {
    const std::string Z = R"({"places": [{"poly": "x - 1", "mult": 3}, {"infinity": true, "mult": -3}]})";
    const CliRun r = cli({"pic-oracle", "--ctx", kCtx, "--divisor", Z});
    ASSERT_EQ(r.code, 0);
    const json j = r.j();
    EXPECT_EQ(j["group"], "Z + Z/3");
    EXPECT_EQ(j["invariant_factors"], json::array({3}));
    const RatFunc g = parse_ratfunc(j["witness"].get<std::string>(), PrimeField(3));
    const auto c = context_from_json(json::parse(kCtx));
    EXPECT_TRUE(is_in_G(g, c));
    EXPECT_EQ(principal_divisor(g), divisor_from_json(json::parse(Z), PrimeField(3)));
    EXPECT_EQ(cli({"pic-oracle", "--ctx", kCtx, "--divisor", R"({"places": [{"poly": "x"}]})"}).code, 2);
}

TEST(Cli, ComposeAndModulusCheck) {
    const std::string d2 = R"({"p": 3, "modulus": [["x", 2]]})", d1 = R"({"p": 3, "modulus": [["x", 1]]})";
    const std::string G = R"({"source": )" + d2 + R"(, "target": )" + d1 + R"(, "cycles": [{"poly": "y - x^2", "coeff": 1}]})";
    const std::string Gt = R"({"source": )" + d1 + R"(, "target": )" + d2 + R"(, "cycles": [{"poly": "x - y^2", "coeff": 1}]})";
    const std::string path = write_file("graph.json", G);
    EXPECT_EQ(cli({"modulus-check", path}).code, 0);
    const std::string bad = R"({"source": )" + d1 + R"(, "target": )" + d1 + R"(, "cycles": [{"poly": "y - x^2"}]})";
    const CliRun b = cli({"modulus-check", bad});
    EXPECT_EQ(b.code, 1);
    EXPECT_TRUE(b.j().contains("violation"));

    const CliRun c = cli({"compose", Gt, path});
    ASSERT_EQ(c.code, 0) << c.out;
    const Correspondence back = correspondence_from_json(c.j()["composite"]);
    EXPECT_EQ(back, 2 * diagonal(ctx(3, "x")));
    EXPECT_EQ(cli({"compose", path, path}).code, 2);
}

TEST(Cli, TextFormat) {
    const CliRun r = cli({"qn-check", "--ctx", kCtx, "t1*t2 - x^2", "--format", "text"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("status: pass"), std::string::npos);
    EXPECT_NE(r.out.find("input: t1*t2 - x^2"), std::string::npos);
}

TEST(Cli, ExtraVerifyTargets) {
    EXPECT_EQ(cli({"verify", "prec", "--samples", "50"}).code, 0);
    EXPECT_EQ(cli({"verify", "correspondence", "--samples", "3"}).code, 0);
}

}  // namespace
