#include "sidv/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <sstream>

using namespace sidv;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("sidv_cli_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

RunConfig make(const std::string& cmd, std::initializer_list<std::string> kv, const fs::path& out) {
    RunConfig c;
    c.command = cmd;
    for (auto& s : kv) c.apply(s);
    c.set("out_dir", out.string());
    return c;
}

int run(const RunConfig& c, std::string* err = nullptr) {
    std::ostringstream log, e;
    int rc = runCommand(c, log, e);
    if (err) *err = e.str();
    return rc;
}

}  // namespace

TEST(Rational, Parse) {
    EXPECT_EQ(parseRational("2/3"), Rational(2, 3));
    EXPECT_EQ(parseRational("-4/6"), Rational(-2, 3));
    EXPECT_EQ(parseRational(" 7 "), Rational(7));
    EXPECT_EQ(parseRational("0.25"), Rational(1, 4));
    EXPECT_EQ(parseRational("-1.5"), Rational(-3, 2));
    EXPECT_EQ(parseRational("+.5"), Rational(1, 2));
    EXPECT_THROW(parseRational("1/0"), ConfigError);
    EXPECT_THROW(parseRational("abc"), ConfigError);
    EXPECT_THROW(parseRational("1e3"), ConfigError);
    EXPECT_EQ(formatRational(Rational(-2, 3)), "-2/3");
    EXPECT_EQ(formatRational(Rational(4, 2)), "2");
}

TEST(RationalProperty, FormatParseRoundTrip) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> num(-100000, 100000), den(1, 100000);
    for (int i = 0; i < 100; ++i) {
        Rational r(num(rng), den(rng));
        r.canonicalize();
        EXPECT_EQ(parseRational(formatRational(r)), r);
    }
}

TEST(Format, SeventeenDigitsRoundTrip) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> d(-1e6, 1e6);
    for (int i = 0; i < 100; ++i) {
        double v = d(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        EXPECT_EQ(std::stod(formatDouble(v)), v);
    }
    EXPECT_EQ(formatDouble(0.1), "0.10000000000000001");
}

TEST(Csv, QuotingAndLayout) {
    EXPECT_EQ(csvQuote("plain"), "plain");
    EXPECT_EQ(csvQuote("a,b"), "\"a,b\"");
    EXPECT_EQ(csvQuote("say \"hi\""), "\"say \"\"hi\"\"\"");
    fs::path d = scratch("csv");
    fs::create_directories(d);
    {
        CsvWriter w(d / "x.csv", {"k=v"}, {"a", "b"});
        w.row(std::vector<double>{1.0 / 3, 2});
        w.row(std::vector<std::string>{"x,y", "z"});
        EXPECT_THROW(w.row(std::vector<double>{1}), std::logic_error);
    }
    EXPECT_EQ(slurp(d / "x.csv"), "# k=v\r\na,b\r\n0.33333333333333331,2\r\n\"x,y\",z\r\n");
}

TEST(Config, FileAndOverrides) {
    fs::path d = scratch("cfg");
    fs::create_directories(d);
    std::ofstream(d / "run.cfg") << "# comment\nnx = 128\n\ntend=0.5  # trailing\n";
    RunConfig c;
    c.loadFile(d / "run.cfg");
    EXPECT_EQ(c.integer("nx", 0), 128);
    EXPECT_EQ(c.real("tend", 0), 0.5);
    c.apply("nx=64");
    EXPECT_EQ(c.integer("nx", 0), 64);
    EXPECT_EQ(c.real("missing", 3), 3);
    c.set("eps", "2/3");
    EXPECT_EQ(c.rational("eps", 0), Rational(2, 3));
    EXPECT_NEAR(c.real("eps", 0), 2.0 / 3, 1e-16);
    c.set("bad", "x1");
    EXPECT_THROW(c.real("bad", 0), ConfigError);
    EXPECT_THROW(c.integer("tend", 0), ConfigError);
    EXPECT_THROW(c.flag("bad", false), ConfigError);
    EXPECT_THROW(c.apply("novalue"), ConfigError);
    std::ofstream(d / "broken.cfg") << "ok=1\nbroken\n";
    RunConfig b;
    EXPECT_THROW(b.loadFile(d / "broken.cfg"), ConfigError);
    EXPECT_THROW(b.loadFile(d / "absent.cfg"), ConfigError);
}

TEST(Config, EnvironmentOverridesFileNotCommandLine) {
    RunConfig c;
    c.set("out_dir", "from_file");
    setenv("SIDV_OUT_DIR", "from_env", 1);
    applyEnvironment(c);
    EXPECT_EQ(outputDir(c), "from_env");
    c.apply("out_dir=from_cli");
    EXPECT_EQ(outputDir(c), "from_cli");
    unsetenv("SIDV_OUT_DIR");
    RunConfig e;
    applyEnvironment(e);
    EXPECT_EQ(outputDir(e), "sidv_out");
}

TEST(ConfigProperty, JsonRoundTrip) {
    std::mt19937 rng(13);
    const std::string alphabet = "abcxyz_019=,/ .\"\\-";
    std::uniform_int_distribution<int> nKeys(0, 8), len(1, 10), ch(0, static_cast<int>(alphabet.size()) - 1);
    for (int i = 0; i < 100; ++i) {
        RunConfig c;
        c.command = i % 2 ? "simulate" : "miura lift";
        int n = nKeys(rng);
        for (int k = 0; k < n; ++k) {
            std::string key = "k" + std::to_string(k), val;
            for (int j = len(rng); j > 0; --j) val += alphabet[ch(rng)];
            c.set(key, val);
        }
        auto j = nlohmann::json::parse(c.toJson().dump());
        EXPECT_EQ(RunConfig::fromJson(j), c);
    }
    EXPECT_THROW(RunConfig::fromJson(nlohmann::json{{"settings", 3}}), ConfigError);
}

TEST(Specs, SolutionsAndPotentials) {
    auto s = parseSolution("kink:c=2,x0=1");
    EXPECT_EQ(s.kind(), SolutionKind::Kink);
    EXPECT_EQ(s.params().c, 2);
    EXPECT_EQ(*s.params().eps, Rational(2, 3));
    EXPECT_EQ(*parseSolution("sech2:eps=1,a=1").params().a, Rational(1));
    EXPECT_THROW(parseSolution("kink:speed=2"), ConfigError);
    EXPECT_THROW(parseSolution("nosuch"), ConfigError);
    EXPECT_EQ(parsePotential("const:w=-1")(3, 0), -1);
    EXPECT_NEAR(parsePotential("selfsimilar")(3, 0.5), 1, 1e-15);
    EXPECT_THROW(parsePotential("soliton:c=-1"), ConfigError);
    EXPECT_THROW(parsePotential("const:v=1"), ConfigError);
}

TEST(Commands, ExitCodes) {
    fs::path d = scratch("codes");
    std::string err;
    EXPECT_EQ(run(make("catalog", {"solution=sech2:c=1"}, d / "ok")), kPass);
    EXPECT_EQ(run(make("catalog", {"solution=sech2:c=1", "tol=1e-30"}, d / "tight")), kCheckFailure);
    EXPECT_EQ(run(make("catalog", {"solution=bogus"}, d / "bad"), &err), kConfigError);
    EXPECT_NE(err.find("\"exitCode\":2"), std::string::npos);
    EXPECT_TRUE(fs::exists(d / "bad" / "error.json"));
    EXPECT_EQ(run(make("nosuch", {}, d / "cmd")), kConfigError);
    // sech2 with c < 0 is rejected by the catalog
    EXPECT_EQ(run(make("simulate", {"init=sech2:c=-1"}, d / "inv")), kConfigError);
    // the direct form needs u bounded away from 0
    EXPECT_EQ(run(make("simulate", {"init=sech2:c=1", "ufloor=1e-3", "nx=64", "tend=0.01"}, d / "rt"), &err),
              kRuntimeError);
    EXPECT_NE(err.find("\"exitCode\":3"), std::string::npos);
    EXPECT_EQ(run(make("miura lift", {"w=soliton:c=2", "coeff=1,1"}, d / "lift")), kConfigError);
    EXPECT_EQ(run(make("verify", {"suite=lax"}, d / "v")), kPass);
    EXPECT_EQ(run(make("verify", {"suite=nope"}, d / "v2")), kConfigError);
}

TEST(Commands, SimulateWritesManifestThatReparses) {
    fs::path d = scratch("sim");
    RunConfig c = make("simulate", {"init=sech2:c=1", "nx=128", "tend=0.05", "integrals=H0,H1,H2"}, d);
    ASSERT_EQ(run(c), kPass);
    auto m = nlohmann::json::parse(slurp(d / "manifest.json"));
    EXPECT_EQ(RunConfig::fromJson(m["config"]), c);
    EXPECT_TRUE(m["exact"]["solvesEquation"].get<bool>());
    EXPECT_LE(m["integrals"]["H0"]["maxDrift"].get<double>(), 1e-4);
    std::string csv = slurp(d / "trajectory.csv");
    EXPECT_EQ(csv.rfind("# command=simulate\r\n", 0), 0u);
    EXPECT_NE(csv.find("\r\nt,x,u\r\n"), std::string::npos);
}

TEST(Commands, Deterministic) {
    fs::path a = scratch("detA"), b = scratch("detB");
    for (auto& d : {a, b}) {
        ASSERT_EQ(run(make("weak-test", {"phis=3", "seed=5", "eps=0,1"}, d)), kPass);
        ASSERT_EQ(run(make("simulate", {"nx=64", "tend=0.02"}, d / "s")), kPass);
    }
    EXPECT_EQ(slurp(a / "residuals.csv"), slurp(b / "residuals.csv"));
    EXPECT_EQ(slurp(a / "s" / "trajectory.csv"), slurp(b / "s" / "trajectory.csv"));
    fs::path c = scratch("detC");
    ASSERT_EQ(run(make("weak-test", {"phis=3", "seed=6", "eps=0,1"}, c)), kPass);
    EXPECT_NE(slurp(a / "residuals.csv"), slurp(c / "residuals.csv"));
}

TEST(Commands, MiuraMapOfKinkMatchesSoliton) {
    fs::path d = scratch("map");
    ASSERT_EQ(run(make("catalog", {"solution=kink:c=2", "nx=2048"}, d / "cat")), kPass);
    EXPECT_EQ(run(make("miura map", {"input=" + (d / "cat" / "catalog.csv").string(), "compare=soliton:c=2",
                                     "tol=1e-5"},
                       d / "map")),
              kPass);
    EXPECT_EQ(run(make("miura kernel", {"w=const:w=1", "target=kernelExp:c1=1,c2=1"}, d / "k")), kPass);
}
