#include <gtest/gtest.h>

#include <filesystem>

#include "ergo/runner.hpp"

using namespace ergo;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "ergo_runner_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

RunConfig make(std::string command, std::string sub = "") {
  RunConfig c;
  c.command = std::move(command);
  c.sub = std::move(sub);
  return c;
}

}  // namespace

TEST(RunConfig, RoundTrip) {
  RunConfig c = make("container", "compute");
  c.graph = "petersen";
  c.seed = 99;
  c.threads = 3;
  c.sig = {2, 3};
  c.set = {0, 4, 9};
  c.alpha = "1/3";
  c.big_c = 1e19;
  c.threshold = 2.5;
  c.record_timing = true;
  const auto j = c.to_json();
  const auto back = RunConfig::from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.to_json().dump(), j.dump());
  EXPECT_EQ(RunConfig::from_json(nlohmann::json::object()).to_json().dump(), RunConfig{}.to_json().dump());
}

TEST(RunConfig, RejectsBadKeys) {
  EXPECT_THROW(RunConfig::from_json(nlohmann::json{{"bogus", 1}}), InvalidArgument);
  EXPECT_THROW(RunConfig::from_json(nlohmann::json{{"n", "ten"}}), InvalidArgument);
  EXPECT_THROW(RunConfig::from_json(nlohmann::json::array()), InvalidArgument);
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(run(make("nope")).exit_code, kExitInvalid);
  EXPECT_EQ(run(make("construct", "unital")).exit_code, kExitOk);
  auto bad_q = make("construct", "unital");
  bad_q.q = 4;
  EXPECT_EQ(run(bad_q).exit_code, kExitInvalid);

  auto budget = make("alpha", "exact");
  budget.graph = "gnp";
  budget.n = 60;
  budget.p = 0.5;
  budget.budget = 5;
  const auto b = run(budget);
  EXPECT_EQ(b.exit_code, kExitBudget);
  EXPECT_EQ(b.verdict["kind"], "budget");

  auto failed = make("alpha", "verify");
  failed.graph = "petersen";
  failed.s = 5;
  const auto f = run(failed);
  EXPECT_EQ(f.exit_code, kExitFailed);
  EXPECT_EQ(f.verdict["holds"], false);

  auto io = make("spectrum");
  io.input = scratch("missing.txt").string();
  EXPECT_EQ(run(io).exit_code, kExitIo);

  auto unwritable = make("construct", "named");
  unwritable.graph = "petersen";
  unwritable.output = (scratch("no_such_dir") / "x.txt").string();
  EXPECT_EQ(execute(unwritable).exit_code, kExitIo);
}

TEST(Run, VerdictShape) {
  auto c = make("exponents", "targets");
  c.family = "multipartite";
  c.sig = {2, 2};
  const auto r = run(c);
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.verdict["command"], "exponents targets");
  EXPECT_EQ(r.verdict["status"], "ok");
  EXPECT_EQ(r.verdict["exponent"], "5/11");
  EXPECT_EQ(r.verdict["log_power"], "3");
  EXPECT_EQ(r.verdict.dump().find('\n'), std::string::npos);
}

TEST(Run, UnitalArtifact) {
  auto c = make("construct", "unital");
  c.q = 3;
  c.output = scratch("u3.txt").string();
  const auto r = execute(c);
  ASSERT_EQ(r.exit_code, kExitOk);
  const auto inc = parse_bipartite(read_file(c.output));
  EXPECT_EQ(inc.x_count(), 63u);
  EXPECT_EQ(inc.y_count(), 28u);
  EXPECT_FALSE(std::filesystem::exists(c.output + ".tmp"));
}

TEST(Run, ContainerRoundTripThroughFiles) {
  auto c = make("container", "compute");
  c.graph = "clebsch";
  c.pattern = "C4";
  c.seed = 11;
  c.output = scratch("cert.json").string();
  ASSERT_EQ(execute(c).exit_code, kExitOk);
  auto r = make("container", "reconstruct");
  r.graph = "clebsch";
  r.pattern = "C4";
  r.cert = c.output;
  const auto res = run(r);
  EXPECT_EQ(res.exit_code, kExitOk);
  EXPECT_EQ(res.verdict["matches"], true);

  // A tampered fingerprint is caught.
  auto j = nlohmann::json::parse(read_file(c.output));
  auto t = j["T"].get<std::vector<Vertex>>();
  t.push_back(15);
  t.push_back(14);
  j["T"] = t;
  write_file_atomic(scratch("bad.json"), j.dump());
  r.cert = scratch("bad.json").string();
  EXPECT_NE(run(r).exit_code, kExitOk);

  r.pattern = "K3";  // ex differs from the certificate's
  r.cert = c.output;
  EXPECT_EQ(run(r).exit_code, kExitInvalid);
}

TEST(Run, ExplicitContainerSet) {
  auto c = make("container", "compute");
  c.graph = "petersen";
  c.pattern = "K3";
  c.set = {0, 1, 2, 3, 4};
  EXPECT_EQ(run(c).exit_code, kExitInvalid);  // no d
  c.d = 5;
  c.threshold = 1;
  const auto r = run(c);
  EXPECT_EQ(r.exit_code, kExitOk);
  EXPECT_EQ(r.verdict["s"], 5);
  c.set = {0, 99};
  EXPECT_EQ(run(c).exit_code, kExitInvalid);
}

TEST(Run, ThreadCountNeverChangesOutput) {
  std::vector<RunConfig> configs;
  auto bv = make("container", "batch-verify");
  bv.n = 40;
  bv.p = 0.3;
  bv.trials = 40;
  bv.seed = 5;
  configs.push_back(bv);
  auto rt = make("random-turan");
  rt.n = 10;
  rt.p = 0.6;
  rt.trials = 12;
  rt.seed = 8;
  configs.push_back(rt);
  auto dens = make("certify-density");
  dens.graph = "clebsch";
  dens.density_delta = 0.1;
  dens.density_gamma = 4;
  configs.push_back(dens);
  for (auto cfg : configs) {
    cfg.output = scratch("det.json").string();
    cfg.threads = 1;
    const auto a = run(cfg);
    cfg.threads = 8;
    const auto b = run(cfg);
    EXPECT_EQ(a.verdict.dump(), b.verdict.dump()) << cfg.command;
    ASSERT_EQ(a.artifacts.size(), b.artifacts.size());
    for (std::size_t i = 0; i < a.artifacts.size(); ++i) EXPECT_EQ(a.artifacts[i].content, b.artifacts[i].content);
  }
}

TEST(Run, TimingOnlyWhenAsked) {
  auto c = make("sparsify");
  c.graph = "petersen";
  c.s = 5;
  c.p = 0.8;
  EXPECT_FALSE(run(c).verdict.contains("micros"));
  c.record_timing = true;
  EXPECT_TRUE(run(c).verdict.contains("micros"));
}

TEST(Run, CsvReport) {
  auto c = make("mv-pipeline");
  c.q = 2;
  c.format = "csv";
  c.output = scratch("mv.csv").string();
  const auto r = run(c);
  ASSERT_EQ(r.exit_code, kExitOk);
  ASSERT_EQ(r.artifacts.size(), 1u);
  EXPECT_EQ(r.artifacts[0].content.substr(0, 10), "seed,n,s,p");
  c.format = "xml";
  EXPECT_EQ(run(c).exit_code, kExitInvalid);
}

TEST(Run, SparsifyParamsAndExponents) {
  auto c = make("sparsify", "params");
  c.n = 1000;
  c.preset = "kt";
  c.t = 3;
  const auto kt = run(c);
  c.preset = "k3";
  EXPECT_EQ(run(c).verdict.dump(), kt.verdict.dump());
  c.preset.clear();
  c.beta = "1/3";
  c.theta = "1/3";
  EXPECT_EQ(run(c).exit_code, kExitInvalid);

  auto e = make("exponents", "targets");
  e.family = "kt";
  e.t = 4;
  EXPECT_EQ(run(e).verdict["exponent"], "1/3");
  e.family = "k3";
  e.alpha = "1/2";
  EXPECT_EQ(run(e).exit_code, kExitInvalid);
}
