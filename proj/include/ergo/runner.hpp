#pragma once

// Batch front end: one RunConfig fully determines a run.  run() computes the
// verdict and artifacts in memory; execute() also writes the artifacts
// atomically.  Worker count never reaches an artifact or a verdict.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ergo/constructions.hpp"
#include "ergo/containers.hpp"
#include "ergo/error.hpp"
#include "ergo/graph_io.hpp"
#include "ergo/independence.hpp"
#include "ergo/parallel.hpp"
#include "ergo/pattern.hpp"
#include "ergo/pipelines.hpp"
#include "ergo/rational.hpp"
#include "ergo/spectral.hpp"
#include "ergo/unital.hpp"

namespace ergo {

enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitInvalid = 2, kExitBudget = 3, kExitIo = 4 };

struct RunConfig {
  std::string command;  // construct, spectrum, certify-density, container, ...
  std::string sub;      // unital | mv | named | gnp, compute | reconstruct | batch-verify, ...
  std::string graph = "gnp";  // graph source: gnp, mv, file or a named graph
  std::string input;
  std::string output;
  std::string cert;
  std::uint64_t seed = 0;
  std::size_t threads = 0;   // 0: ERGO_THREADS or 1
  std::uint64_t budget = 0;  // 0: the operation's default
  std::uint64_t samples = 0; // 0: the operation's default
  std::size_t n = 0;
  double p = 0.5;
  std::string pattern = "K3";
  std::uint32_t q = 3;
  std::size_t r = 2;               // overlay parts
  std::vector<std::size_t> sig;    // multipartite signature
  std::size_t s = 0;
  std::size_t trials = 1;
  double d = 0;                    // container d; 0 draws one
  double threshold = -1;           // container r; negative draws one
  std::vector<Vertex> set;         // container S; empty draws one
  std::size_t u_size = 0;          // goodness |U|; 0 takes all of X
  std::string mode;
  std::string family;
  std::string preset;
  std::string alpha = "0", beta, theta;
  std::int64_t t = 3;
  double c = 1e-3;
  double big_c = 1;
  double big_t = 0;
  double density_delta = 0, density_beta = 0, density_theta = 0, density_gamma = 0;
  double tol = 0;
  bool record_timing = false;
  std::string format = "json";

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["sub"] = sub;
    j["graph"] = graph;
    j["input"] = input;
    j["output"] = output;
    j["cert"] = cert;
    j["seed"] = seed;
    j["threads"] = threads;
    j["budget"] = budget;
    j["samples"] = samples;
    j["n"] = n;
    j["p"] = p;
    j["pattern"] = pattern;
    j["q"] = q;
    j["r"] = r;
    j["sig"] = sig;
    j["s"] = s;
    j["trials"] = trials;
    j["d"] = d;
    j["threshold"] = threshold;
    j["set"] = set;
    j["u_size"] = u_size;
    j["mode"] = mode;
    j["family"] = family;
    j["preset"] = preset;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["theta"] = theta;
    j["t"] = t;
    j["c"] = c;
    j["C"] = big_c;
    j["T"] = big_t;
    j["density_delta"] = density_delta;
    j["density_beta"] = density_beta;
    j["density_theta"] = density_theta;
    j["density_gamma"] = density_gamma;
    j["tol"] = tol;
    j["record_timing"] = record_timing;
    j["format"] = format;
    return j;
  }

  // Missing keys keep their defaults; unknown keys are rejected.
  static RunConfig from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
    RunConfig c;
    const auto known = c.to_json();
    for (auto it = j.begin(); it != j.end(); ++it)
      if (!known.contains(it.key())) throw InvalidArgument("unknown config key \"" + it.key() + "\"");
    auto get = [&](const char* key, auto& field) {
      if (!j.contains(key)) return;
      try {
        j.at(key).get_to(field);
      } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("config key \"") + key + "\": " + e.what());
      }
    };
    get("command", c.command);
    get("sub", c.sub);
    get("graph", c.graph);
    get("input", c.input);
    get("output", c.output);
    get("cert", c.cert);
    get("seed", c.seed);
    get("threads", c.threads);
    get("budget", c.budget);
    get("samples", c.samples);
    get("n", c.n);
    get("p", c.p);
    get("pattern", c.pattern);
    get("q", c.q);
    get("r", c.r);
    get("sig", c.sig);
    get("s", c.s);
    get("trials", c.trials);
    get("d", c.d);
    get("threshold", c.threshold);
    get("set", c.set);
    get("u_size", c.u_size);
    get("mode", c.mode);
    get("family", c.family);
    get("preset", c.preset);
    get("alpha", c.alpha);
    get("beta", c.beta);
    get("theta", c.theta);
    get("t", c.t);
    get("c", c.c);
    get("C", c.big_c);
    get("T", c.big_t);
    get("density_delta", c.density_delta);
    get("density_beta", c.density_beta);
    get("density_theta", c.density_theta);
    get("density_gamma", c.density_gamma);
    get("tol", c.tol);
    get("record_timing", c.record_timing);
    get("format", c.format);
    return c;
  }

  std::size_t worker_count() const { return threads ? threads : default_thread_count(); }
};

struct Artifact {
  std::string path;
  std::string content;
};

struct RunResult {
  int exit_code = kExitOk;
  nlohmann::ordered_json verdict;  // one line on stdout
  std::vector<Artifact> artifacts;
};

namespace detail {

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

inline Graph load_graph(const RunConfig& cfg) {
  if (!cfg.input.empty()) return parse_graph(read_file(cfg.input));
  if (cfg.graph == "gnp") {
    if (cfg.n == 0) throw InvalidArgument("gnp needs --n");
    return gnp(cfg.n, cfg.p, cfg.seed);
  }
  if (cfg.graph == "mv") return mv_partite_graph(hermitian_unital(cfg.q), cfg.r, cfg.seed).graph;
  if (cfg.graph == "file") throw InvalidArgument("graph source \"file\" needs --input");
  return named_graph(cfg.graph);
}

inline VertexSet checked_set(std::size_t n, const std::vector<Vertex>& members, const char* what) {
  for (Vertex x : members)
    if (x >= n) throw InvalidArgument(std::string(what) + " vertex " + std::to_string(x) + " out of range");
  return VertexSet::of(n, members);
}

inline nlohmann::ordered_json graph_summary(const Graph& g) {
  return {{"label", g.label()}, {"n", g.vertex_count()}, {"m", g.edge_count()}, {"max_degree", g.max_degree()}};
}

inline std::uint64_t budget_or(const RunConfig& cfg, std::uint64_t fallback) { return cfg.budget ? cfg.budget : fallback; }
inline std::uint64_t samples_or(const RunConfig& cfg, std::uint64_t fallback) { return cfg.samples ? cfg.samples : fallback; }

inline void add_artifact(RunResult& res, const RunConfig& cfg, const std::string& suffix, std::string content) {
  if (cfg.output.empty()) return;
  res.artifacts.push_back({cfg.output + suffix, std::move(content)});
}

inline RunResult run_construct(const RunConfig& cfg) {
  RunResult res;
  auto& v = res.verdict;
  if (cfg.sub == "unital") {
    const auto inc = hermitian_unital(cfg.q);
    const auto mode = cfg.q <= kMaxExhaustiveUnitalQ ? CheckMode::exhaustive : CheckMode::sampled;
    const auto rep = verify_unital_properties(inc, cfg.q, mode, cfg.seed, samples_or(cfg, 20000));
    v["q"] = cfg.q;
    v["X"] = inc.x_count();
    v["Y"] = inc.y_count();
    v["incidences"] = inc.incidence_count();
    auto props = nlohmann::ordered_json::array();
    for (const auto& pc : rep.properties)
      props.push_back({{"name", pc.name}, {"passed", pc.passed}, {"mode", to_string(pc.mode)}, {"checked", pc.checked}});
    v["properties"] = std::move(props);
    v["passed"] = rep.passed();
    if (!rep.passed()) res.exit_code = kExitFailed;
    add_artifact(res, cfg, "", emit_bipartite(inc) + "\n");
    return res;
  }
  if (cfg.sub == "mv") {
    const auto ov = mv_partite_graph(hermitian_unital(cfg.q), cfg.r, cfg.seed);
    v = graph_summary(ov.graph);
    v["q"] = cfg.q;
    v["r"] = cfg.r;
    if (cfg.q <= 5) {
      const bool free = !contains_pattern(ov.graph, Pattern::clique(cfg.r + 2));
      v["clique_free"] = free;
      if (!free) res.exit_code = kExitFailed;
    }
    add_artifact(res, cfg, "", emit_graph(ov.graph) + "\n");
    add_artifact(res, cfg, ".parts", ov.parts.to_text(hermitian_unital(cfg.q)) + "\n");
    return res;
  }
  Graph g;
  if (cfg.sub == "named") {
    g = named_graph(cfg.graph == "gnp" ? "" : cfg.graph);
  } else if (cfg.sub == "gnp") {
    if (cfg.n == 0) throw InvalidArgument("gnp needs --n");
    g = gnp(cfg.n, cfg.p, cfg.seed);
  } else {
    throw InvalidArgument("construct needs one of unital, mv, named, gnp");
  }
  v = graph_summary(g);
  add_artifact(res, cfg, "", emit_graph(g) + "\n");
  return res;
}

inline RunResult run_spectrum(const RunConfig& cfg) {
  EigenMethod method = EigenMethod::automatic;
  if (cfg.mode == "dense") method = EigenMethod::dense;
  else if (cfg.mode == "iterative") method = EigenMethod::iterative;
  else if (!cfg.mode.empty() && cfg.mode != "auto") throw InvalidArgument("spectrum mode must be auto, dense or iterative");
  const Graph g = load_graph(cfg);
  RunResult res;
  res.verdict = certify_spectrum(g, cfg.tol > 0 ? cfg.tol : -1, method).to_json();
  add_artifact(res, cfg, "", dump(res.verdict));
  return res;
}

inline RunResult run_certify_density(const RunConfig& cfg) {
  const Graph g = load_graph(cfg);
  DensityMode mode = g.vertex_count() <= kMaxExhaustiveDensityVertices ? DensityMode::exhaustive : DensityMode::sampled;
  if (cfg.mode == "exhaustive") mode = DensityMode::exhaustive;
  else if (cfg.mode == "sampled") mode = DensityMode::sampled;
  else if (!cfg.mode.empty()) throw InvalidArgument("density mode must be exhaustive or sampled");
  const auto rep = verify_local_density(g, cfg.density_delta, cfg.density_beta, cfg.density_theta, cfg.density_gamma,
                                        mode, samples_or(cfg, 1000), cfg.seed, cfg.worker_count());
  RunResult res;
  res.verdict = rep.to_json();
  if (!rep.passed()) res.exit_code = kExitFailed;
  add_artifact(res, cfg, "", dump(res.verdict));
  return res;
}

inline ContainerParams params_from_cert(const nlohmann::json& j, const ExFunction& ex_fn) {
  ContainerParams params;
  params.d = j.at("d").get<double>();
  params.r = j.at("r").get<double>();
  params.ex_fn = ex_fn;
  if (j.at("order").is_array()) params.order = j.at("order").get<std::vector<Vertex>>();
  return params;
}

inline RunResult run_container(const RunConfig& cfg) {
  const Graph g = load_graph(cfg);
  const Pattern p = parse_pattern(cfg.pattern);
  const auto ex_fn = admissible_ex(p);
  const std::size_t n = g.vertex_count();
  RunResult res;
  auto& v = res.verdict;
  if (cfg.sub == "compute") {
    ContainerInstance inst;
    if (cfg.set.empty()) {
      inst = random_container_instance(g, p, ex_fn, cfg.seed);
    } else {
      inst.s = checked_set(n, cfg.set, "S");
      inst.params.ex_fn = ex_fn;
      inst.params.r = 0;
    }
    if (cfg.d > 0) inst.params.d = cfg.d;
    if (cfg.threshold >= 0) inst.params.r = cfg.threshold;
    if (!(inst.params.d > 0)) throw InvalidArgument("container compute with an explicit S needs --d");
    const auto cert = compute_container(g, inst.s, p, inst.params);
    const auto check = check_container(cert, inst.s);
    auto art = cert.to_json();
    art["S"] = inst.s.members();
    art["passed"] = check.passed();
    v = {{"s", cert.s},           {"S_h", cert.s_h.size()}, {"T", cert.t.size()},
         {"C", cert.c.size()},    {"K", cert.k},            {"max_t", cert.max_t},
         {"passed", check.passed()}};
    if (!check.passed()) {
      v["failures"] = check.failures();
      res.exit_code = kExitFailed;
    }
    add_artifact(res, cfg, "", dump(art));
    return res;
  }
  if (cfg.sub == "reconstruct") {
    if (cfg.cert.empty()) throw InvalidArgument("container reconstruct needs --cert");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(cfg.cert));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("certificate: ") + e.what());
    }
    VertexSet s_h, t, c;
    std::size_t s = 0;
    ContainerParams params;
    try {
      if (j.at("n").get<std::size_t>() != n) throw InvalidArgument("certificate is for a different graph size");
      s_h = checked_set(n, j.at("S_h").get<std::vector<Vertex>>(), "S_h");
      t = checked_set(n, j.at("T").get<std::vector<Vertex>>(), "T");
      c = checked_set(n, j.at("C").get<std::vector<Vertex>>(), "C");
      s = j.at("s").get<std::size_t>();
      params = params_from_cert(j, ex_fn);
      if (j.at("ex").get<double>() != ex_fn(s)) throw InvalidArgument("certificate ex does not match the pattern");
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("certificate: ") + e.what());
    }
    const auto rebuilt = reconstruct_container(g, s_h, t, s, params);
    v = {{"C", rebuilt.size()}, {"matches", rebuilt == c}};
    if (!(rebuilt == c)) res.exit_code = kExitFailed;
    add_artifact(res, cfg, "", dump({{"C", rebuilt.members()}, {"matches", rebuilt == c}}));
    return res;
  }
  if (cfg.sub == "batch-verify") {
    const auto rep = batch_verify_containers(g, p, cfg.trials, cfg.seed, cfg.worker_count());
    v = {{"trials", rep.trials}, {"passed", rep.passed}, {"reconstructed", rep.reconstructed}};
    if (rep.passed != rep.trials) res.exit_code = kExitFailed;
    add_artifact(res, cfg, "", dump(rep.to_json()));
    return res;
  }
  throw InvalidArgument("container needs one of compute, reconstruct, batch-verify");
}

inline RunResult run_goodness(const RunConfig& cfg) {
  const auto inc = hermitian_unital(cfg.q);
  const auto parts = random_partition(inc, cfg.r, cfg.seed);
  VertexSet u(inc.x_count());
  if (cfg.u_size == 0) {
    for (Vertex x = 0; x < inc.x_count(); ++x) u.insert(x);
  } else {
    if (cfg.u_size > inc.x_count()) throw InvalidArgument("--u-size exceeds |X|");
    SplitMix64 rng(derive_seed(cfg.seed, 1));
    const auto perm = random_permutation(inc.x_count(), rng);
    for (std::size_t i = 0; i < cfg.u_size; ++i) u.insert(perm[i]);
  }
  RunResult res;
  res.verdict = goodness_check(inc, parts, u, cfg.r).to_json();
  add_artifact(res, cfg, "", dump(res.verdict));
  return res;
}

inline RunResult run_js_params(const RunConfig& cfg) {
  const auto js = js_parameters(cfg.q, cfg.s);
  RunResult res;
  res.verdict = {{"q", js.q},         {"s", js.s},           {"a", js.a},
                 {"a_real", js.a_real}, {"keep_p", js.keep_p}, {"log2_count_bound", js.log2_count_bound}};
  add_artifact(res, cfg, "", dump(res.verdict));
  return res;
}

inline ExponentPair preset_pair(const RunConfig& cfg) {
  if (cfg.preset == "k3") return preset_k3();
  if (cfg.preset == "k4") return preset_k4();
  if (cfg.preset == "kt") return preset_kt(cfg.t);
  if (!cfg.preset.empty()) throw InvalidArgument("preset must be k3, k4 or kt");
  if (cfg.beta.empty() || cfg.theta.empty()) throw InvalidArgument("give --preset or both --beta and --theta");
  return {Rational::parse(cfg.beta), Rational::parse(cfg.theta)};
}

inline void emit_report(RunResult& res, const RunConfig& cfg, const PipelineReport& rep) {
  res.verdict = rep.to_json();
  if (cfg.format == "csv")
    add_artifact(res, cfg, "", PipelineReport::csv_header() + "\n" + rep.csv_row() + "\n");
  else if (cfg.format == "json")
    add_artifact(res, cfg, "", dump(res.verdict));
  else
    throw InvalidArgument("format must be json or csv");
}

inline RunResult run_sparsify(const RunConfig& cfg) {
  RunResult res;
  if (cfg.sub == "params") {
    if (cfg.n == 0) throw InvalidArgument("sparsify params needs --n");
    const auto pair = preset_pair(cfg);
    const auto sp = theorem13_params(Rational::parse(cfg.alpha), pair.beta, pair.theta, cfg.n, cfg.c);
    res.verdict = sp.to_json();
    add_artifact(res, cfg, "", dump(res.verdict));
    return res;
  }
  if (!cfg.sub.empty() && cfg.sub != "run") throw InvalidArgument("sparsify takes run (default) or params");
  const Graph g = load_graph(cfg);
  SparsifyOptions opt;
  opt.enumeration_budget = budget_or(cfg, opt.enumeration_budget);
  opt.falsify_samples = samples_or(cfg, opt.falsify_samples);
  opt.record_timing = cfg.record_timing;
  const auto out = sparsify_delete(g, parse_pattern(cfg.pattern), cfg.s, cfg.p, cfg.seed, opt);
  emit_report(res, cfg, out.report);
  if (out.report.verdict == "budget-exceeded") res.exit_code = kExitBudget;
  return res;
}

inline RunResult run_mv_pipeline(const RunConfig& cfg) {
  MVPipelineOptions opt;
  opt.budget = budget_or(cfg, opt.budget);
  opt.samples = samples_or(cfg, opt.samples);
  opt.record_timing = cfg.record_timing;
  auto sig = cfg.sig;
  if (sig.empty()) sig.assign(cfg.r, 1);
  const auto out = theorem14_pipeline(cfg.q, cfg.r, sig, cfg.seed, opt);
  RunResult res;
  emit_report(res, cfg, out.report);
  if (out.report.verdict == "budget-exceeded") res.exit_code = kExitBudget;
  return res;
}

inline RunResult run_alpha(const RunConfig& cfg) {
  const Graph g = load_graph(cfg);
  const Pattern p = parse_pattern(cfg.pattern);
  RunResult res;
  auto& v = res.verdict;
  if (cfg.sub == "exact") {
    const auto best = max_pattern_free_exact(g, p, budget_or(cfg, kDefaultNodeBudget));
    v = {{"alpha", best.size()}, {"set", best.members()}, {"exact", true}};
  } else if (cfg.sub == "greedy") {
    const auto best = max_pattern_free_greedy(g, p, cfg.seed);
    v = {{"lower_bound", best.size()}, {"set", best.members()}, {"exact", false}};
  } else if (cfg.sub == "verify") {
    if (cfg.s == 0) throw InvalidArgument("alpha verify needs --s");
    VerifyMode mode = VerifyMode::exact;
    if (cfg.mode == "falsify") mode = VerifyMode::falsify;
    else if (!cfg.mode.empty() && cfg.mode != "exact") throw InvalidArgument("verify mode must be exact or falsify");
    const auto av = verify_alpha_upper(g, p, cfg.s, mode, samples_or(cfg, 1000), cfg.seed,
                                       budget_or(cfg, kDefaultNodeBudget));
    v = {{"s", cfg.s}, {"holds", av.holds}, {"mode", mode == VerifyMode::exact ? "exact" : "falsify"}};
    if (mode == VerifyMode::falsify) v["samples"] = av.samples;
    if (av.witness) v["witness"] = av.witness->members();
    if (!av.holds) res.exit_code = kExitFailed;
  } else {
    throw InvalidArgument("alpha needs one of exact, greedy, verify");
  }
  add_artifact(res, cfg, "", dump(v));
  return res;
}

inline RunResult run_random_turan(const RunConfig& cfg) {
  if (cfg.n == 0) throw InvalidArgument("random-turan needs --n");
  const auto st = random_turan_experiment(cfg.n, cfg.p, cfg.trials, cfg.seed, budget_or(cfg, 20'000'000),
                                          cfg.worker_count());
  RunResult res;
  res.verdict = st.to_json();
  add_artifact(res, cfg, "", dump(res.verdict));
  return res;
}

inline RunResult run_c4_bounds(const RunConfig& cfg) {
  if (cfg.n < 2) throw InvalidArgument("c4-bounds needs --n >= 2");
  const double n = static_cast<double>(cfg.n);
  RunResult res;
  auto& v = res.verdict;
  v["n"] = cfg.n;
  v["kks_threshold"] = kks_threshold(n);
  v["entropy_term"] = kks_entropy_term(n);
  v["p_lower"] = std::pow(n, -1.0 / 3.0) * std::pow(std::log(n), 8.0 / 3.0);
  auto fm = c4_first_moment_log(n, cfg.p, cfg.big_c).to_json();
  fm["p"] = cfg.p;
  fm["C"] = cfg.big_c;
  v["first_moment"] = std::move(fm);
  if (cfg.big_t > 0) v["kks_log_bound"] = {{"T", cfg.big_t}, {"value", kks_log_bound(n, cfg.big_t)}};
  add_artifact(res, cfg, "", dump(v));
  return res;
}

inline RunResult run_exponents(const RunConfig& cfg) {
  RunResult res;
  auto& v = res.verdict;
  if (cfg.sub == "targets") {
    ExponentTarget e;
    if (cfg.family == "multipartite") {
      e = target_multipartite(cfg.sig);
    } else {
      const Rational alpha = Rational::parse(cfg.alpha);
      if (cfg.family == "k3") e = target_k3(alpha);
      else if (cfg.family == "k4") e = target_k4(alpha);
      else if (cfg.family == "kt") e = target_kt(alpha, cfg.t);
      else if (cfg.family == "general") {
        const auto pair = preset_pair(cfg);
        e = target_general(alpha, pair.beta, pair.theta);
      } else {
        throw InvalidArgument("family must be k3, k4, kt, multipartite or general");
      }
    }
    v = {{"family", cfg.family}, {"exponent", e.exponent.to_string()}, {"log_power", e.log_power.to_string()},
         {"exponent_value", e.exponent.to_double()}};
  } else if (cfg.sub == "fit") {
    if (cfg.input.empty()) throw InvalidArgument("exponents fit needs --input with \"n value\" lines");
    std::vector<std::pair<double, double>> pts;
    std::istringstream in(read_file(cfg.input));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      double x = 0, y = 0;
      if (!(ls >> x >> y)) throw FormatError("bad fit line \"" + line + "\"");
      pts.emplace_back(x, y);
    }
    const auto f = exponent_fit(pts);
    v = {{"points", pts.size()}, {"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}};
  } else {
    throw InvalidArgument("exponents needs targets or fit");
  }
  add_artifact(res, cfg, "", dump(v));
  return res;
}

inline RunResult dispatch(const RunConfig& cfg) {
  const auto& c = cfg.command;
  if (c == "construct") return run_construct(cfg);
  if (c == "spectrum") return run_spectrum(cfg);
  if (c == "certify-density") return run_certify_density(cfg);
  if (c == "container") return run_container(cfg);
  if (c == "goodness") return run_goodness(cfg);
  if (c == "js-params") return run_js_params(cfg);
  if (c == "sparsify") return run_sparsify(cfg);
  if (c == "mv-pipeline") return run_mv_pipeline(cfg);
  if (c == "alpha") return run_alpha(cfg);
  if (c == "random-turan") return run_random_turan(cfg);
  if (c == "c4-bounds") return run_c4_bounds(cfg);
  if (c == "exponents") return run_exponents(cfg);
  throw InvalidArgument("unknown command \"" + c + "\"");
}

inline RunResult failure(int code, const char* kind, const std::string& reason) {
  RunResult res;
  res.exit_code = code;
  res.verdict = {{"status", "error"}, {"kind", kind}, {"reason", reason}};
  return res;
}

}  // namespace detail

// Never throws on library errors: each maps to an exit code and a structured
// reason.  Artifacts are only produced by successful or failed-check runs.
inline RunResult run(const RunConfig& cfg) {
  RunResult res;
  try {
    res = detail::dispatch(cfg);
  } catch (const InvalidArgument& e) {
    res = detail::failure(kExitInvalid, "invalid-config", e.what());
  } catch (const FormatError& e) {
    res = detail::failure(kExitInvalid, "format", e.what());
  } catch (const BudgetExceeded& e) {
    res = detail::failure(kExitBudget, "budget", e.what());
  } catch (const IoError& e) {
    res = detail::failure(kExitIo, "io", e.what());
  } catch (const InvariantViolation& e) {
    res = detail::failure(kExitFailed, "invariant", e.what());
  } catch (const ConvergenceError& e) {
    res = detail::failure(kExitFailed, "convergence", e.what());
  }
  nlohmann::ordered_json head;
  head["command"] = cfg.sub.empty() ? cfg.command : cfg.command + " " + cfg.sub;
  head["seed"] = cfg.seed;
  if (!res.verdict.contains("status"))
    head["status"] = res.exit_code == kExitOk ? "ok" : (res.exit_code == kExitBudget ? "budget" : "failed");
  head.update(res.verdict);
  res.verdict = std::move(head);
  return res;
}

// run() plus atomic artifact writes.  A write failure turns into exit code 4.
inline RunResult execute(const RunConfig& cfg) {
  RunResult res = run(cfg);
  try {
    for (const auto& a : res.artifacts) write_file_atomic(a.path, a.content);
  } catch (const IoError& e) {
    res.exit_code = kExitIo;
    res.artifacts.clear();
    res.verdict["status"] = "error";
    res.verdict["kind"] = "io";
    res.verdict["reason"] = e.what();
  }
  return res;
}

}  // namespace ergo
