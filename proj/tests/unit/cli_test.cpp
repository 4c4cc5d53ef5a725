#include <gtest/gtest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/cli.hpp"
#include "cli/csv.hpp"
#include "cli/svg.hpp"

namespace fs = std::filesystem;
using namespace arbsim::cli;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("arbsim_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_args(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "arbsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return rc;
}

}  // namespace

TEST(CliArgs, FlagsOverrideDefaults) {
  const CliConfig c = parse_args({"fee-sweep", "--seed", "42", "--runs", "10"}, std::nullopt);
  EXPECT_EQ(c.command, Command::fee_sweep);
  EXPECT_EQ(c.master_seed, 42u);
  EXPECT_EQ(c.settings.integer("sweep.runs"), 10u);
  EXPECT_EQ(c.settings.number("gbm.sigma"), 0.001);
}

TEST(CliArgs, UnknownFlagNamesTheFlag) {
  try {
    parse_args({"walk", "--bogus"}, std::nullopt);
    FAIL() << "expected a usage error";
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("--bogus"), std::string::npos);
  }
}

TEST(CliArgs, FlagsOnlyExistWhereTheyApply) {
  EXPECT_THROW(parse_args({"walk", "--alpha", "1.02"}, std::nullopt), UsageError);
  EXPECT_THROW(parse_args({"gbm", "--set", "arb.alpha=1.02"}, std::nullopt), UsageError);
  EXPECT_THROW(parse_args({}, std::nullopt), UsageError);
  EXPECT_THROW(parse_args({"frobnicate"}, std::nullopt), UsageError);
}

TEST(CliArgs, ConfigFileBareKeyResolves) {
  const fs::path dir = scratch("cfg");
  std::ofstream(dir / "hit.cfg") << "# thresholds\nsigma = 0.02\nhit.runs = 50   # short\n\nwalk.p_up=0.55\n";
  const CliConfig c = parse_args({"hit-sweep", "--config", (dir / "hit.cfg").string()}, std::nullopt);
  EXPECT_EQ(c.settings.number("walk.sigma"), 0.02);
  EXPECT_EQ(c.settings.integer("hit.runs"), 50u);
  EXPECT_EQ(c.settings.number("walk.p_up"), 0.55);
}

TEST(CliArgs, ConfigFileRejectsUnknownKeys) {
  const fs::path dir = scratch("cfg_bad");
  std::ofstream(dir / "a.cfg") << "gbm.volatility = 0.1\n";
  EXPECT_THROW(parse_args({"gbm", "--config", (dir / "a.cfg").string()}, std::nullopt), UsageError);
  std::ofstream(dir / "b.cfg") << "just some words\n";
  EXPECT_THROW(parse_args({"gbm", "--config", (dir / "b.cfg").string()}, std::nullopt), UsageError);
  EXPECT_THROW(parse_args({"gbm", "--config", (dir / "missing.cfg").string()}, std::nullopt), UsageError);
}

TEST(CliArgs, BareKeyResolution) {
  Settings s(Command::policy_sim);
  EXPECT_EQ(s.resolve("fee"), "policy.fee");
  EXPECT_THROW(s.resolve("x"), UsageError);
  Settings a(Command::arb_step);
  EXPECT_EQ(a.resolve("fee"), "fee.fee");
  EXPECT_THROW(a.resolve("gbm.fee"), UsageError);
}

TEST(CliArgs, SeedPrecedence) {
  const fs::path dir = scratch("seed");
  std::ofstream(dir / "s.cfg") << "seed = 7\n";
  const std::string cfg = (dir / "s.cfg").string();

  EXPECT_EQ(parse_args({"walk"}, std::nullopt).master_seed, 1u);
  EXPECT_EQ(parse_args({"walk"}, std::string("99")).master_seed, 99u);
  EXPECT_EQ(parse_args({"walk", "--config", cfg}, std::string("99")).master_seed, 7u);
  EXPECT_EQ(parse_args({"walk", "--config", cfg, "--seed", "5"}, std::string("99")).master_seed, 5u);
  EXPECT_THROW(parse_args({"walk"}, std::string("abc")), UsageError);
  EXPECT_THROW(parse_args({"walk", "--seed", "-3"}, std::nullopt), UsageError);
}

TEST(CliArgs, NamedFlagBeatsSet) {
  const CliConfig c = parse_args({"gbm", "--sigma", "0.004", "--set", "gbm.sigma=0.002"}, std::nullopt);
  EXPECT_EQ(c.settings.number("gbm.sigma"), 0.004);
  const CliConfig d = parse_args({"gbm", "--set", "sigma=0.002", "--set", "mu=0.0001"}, std::nullopt);
  EXPECT_EQ(d.settings.number("gbm.sigma"), 0.002);
  EXPECT_EQ(d.settings.number("gbm.mu"), 0.0001);
}

TEST(CliArgs, HelpIsNotAnError) {
  std::string out;
  EXPECT_EQ(run_args({"--help"}, &out), 0);
  EXPECT_NE(out.find("fee-sweep"), std::string::npos);
  EXPECT_EQ(run_args({"arb-step", "--help"}, &out), 0);
  EXPECT_NE(out.find("--alpha"), std::string::npos);
}

TEST(CliFormat, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 111.89628529661586, 1e-300, 15000.0, -2.5}) {
    const std::string s = format_number(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
  }
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(1000.0), "1000");
}

TEST(CliFormat, CsvRowWidthChecked) {
  CsvTable t({"a", "b"});
  t.row().add(1.0);
  EXPECT_THROW(t.render("x"), std::logic_error);
}

TEST(CliFormat, SvgIsWellFormedEnough) {
  Plot p{"t <1>", "x", "y", true, true, {Series{"s", {1, 10, 100}, {2, 20, 0}, {0.5, 1, 1}, false}}};
  const std::string svg = render_svg(p);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("t &lt;1&gt;"), std::string::npos);
  EXPECT_EQ(svg.find("nan"), std::string::npos);
}

TEST(CliDispatch, GbmZeroStepsWritesOneRow) {
  const fs::path dir = scratch("gbm0");
  ASSERT_EQ(run_args({"gbm", "--steps", "0", "-o", dir.string()}), 0);
  const std::string csv = slurp(dir / "gbm.csv");
  EXPECT_EQ(csv.substr(csv.find('\n') + 1), "step,price\n0,1\n");
  EXPECT_EQ(csv.rfind("# arbsim gbm seed=1 ", 0), 0u);
}

TEST(CliDispatch, ArbStepPrintsWorkedExample) {
  const fs::path dir = scratch("arb");
  std::string out;
  ASSERT_EQ(run_args({"arb-step", "--alpha", "1.02", "--fee", "0.005", "-o", dir.string()}, &out), 0);
  EXPECT_NE(out.find("flashloan 111.896"), std::string::npos) << out;
  EXPECT_NE(out.find("profit 0.83054"), std::string::npos) << out;
  EXPECT_NE(out.find("fee 0.55948"), std::string::npos) << out;
  EXPECT_TRUE(fs::exists(dir / "arb-step.csv"));
  EXPECT_FALSE(fs::exists(dir / "arb-step.svg"));
}

TEST(CliDispatch, ExitCodes) {
  std::string err;
  EXPECT_EQ(run_args({"walk", "--bogus"}, nullptr, &err), 1);
  EXPECT_NE(err.find("--bogus"), std::string::npos);
  EXPECT_EQ(run_args({"walk", "--sigma", "-1", "-o", scratch("neg").string()}), 1);
  EXPECT_EQ(run_args({"walk", "--sigma", "abc", "-o", scratch("nan").string()}), 1);

  const fs::path blocker = scratch("io") / "file";
  std::ofstream(blocker) << "x";
  EXPECT_EQ(run_args({"walk", "-o", (blocker / "sub").string()}, nullptr, &err), 2);
}

TEST(CliDispatch, NoPartialFileOnFailure) {
  const fs::path dir = scratch("partial");
  fs::create_directories(dir / "walk.csv");  // a directory where the file should go
  EXPECT_EQ(run_args({"walk", "-o", dir.string()}), 2);
  EXPECT_FALSE(fs::exists(dir / "walk.csv.tmp"));
}

TEST(CliDispatch, FeeSweepIsThreadIndependentAndReplayable) {
  const fs::path a = scratch("sweep_a"), b = scratch("sweep_b"), c = scratch("sweep_c");
  const std::vector<std::string> base{"fee-sweep", "--runs", "8", "--steps", "200", "--fees", "0.001,0.002,0.003,0.005"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> v = base;
    v.insert(v.end(), extra.begin(), extra.end());
    return v;
  };
  ASSERT_EQ(run_args(with({"--threads", "1", "-o", a.string(), "--jsonl", "--plot"})), 0);
  ASSERT_EQ(run_args(with({"--threads", "3", "-o", b.string(), "--jsonl"})), 0);
  EXPECT_EQ(slurp(a / "fee-sweep.csv"), slurp(b / "fee-sweep.csv"));
  EXPECT_EQ(slurp(a / "fee-sweep.jsonl"), slurp(b / "fee-sweep.jsonl"));
  EXPECT_TRUE(fs::exists(a / "fee-sweep.svg"));
  EXPECT_TRUE(fs::exists(a / "fee-sweep-frequency.svg"));

  ASSERT_EQ(run_args({"fee-sweep", "--config", (a / "fee-sweep.csv").string(), "-o", c.string()}), 0);
  EXPECT_EQ(slurp(a / "fee-sweep.csv"), slurp(c / "fee-sweep.csv"));
  EXPECT_THROW(parse_args({"gbm", "--config", (a / "fee-sweep.csv").string()}, std::nullopt), UsageError);
}

TEST(CliDispatch, HitSweepAndPolicySim) {
  const fs::path dir = scratch("misc");
  std::string out;
  ASSERT_EQ(run_args({"hit-sweep", "--runs", "200", "-o", dir.string()}, &out), 0);
  EXPECT_NE(out.find("power law: exponent"), std::string::npos);
  const std::string hit = slurp(dir / "hit-sweep.csv");
  EXPECT_NE(hit.find("delta_p,mean_steps,std_error,censored_fraction\n"), std::string::npos);

  ASSERT_EQ(run_args({"policy-sim", "--runs", "4", "--steps", "100", "-o", dir.string()}, &out), 0);
  const std::string pol = slurp(dir / "policy-sim.csv");
  EXPECT_NE(pol.find("\nadaptive,"), std::string::npos);
  EXPECT_NE(pol.find("\nstatic,"), std::string::npos);
  EXPECT_EQ(run_args({"policy-sim", "--policy", "magic", "-o", dir.string()}), 1);
}
