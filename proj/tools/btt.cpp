// Copyright 2026 The btt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// btt: generate, solve, cluster and verify bad-triangle transversal instances.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "btt/btt.hpp"

using namespace btt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitVerify = 4;
constexpr int kExitInternal = 1;

struct Config {
  std::string command;
  std::string input;
  std::string gen;
  std::string alg;
  std::string mode = "auto";
  std::string out;
  double eps = 0.1;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::size_t node_budget = 2'000'000;
  std::size_t cc_node_budget = 50'000'000;
  std::size_t max_triangles = 50000;
  std::size_t mwu_iterations = 0;
  bool timing = false;

  // cluster
  std::string cover;
  std::string cover_alg;
  std::string csv;
  bool exact_expectation = false;

  // generate
  std::string map_out;

  // verify
  bool tables = false;
  bool survey = false;
  bool hexagram = false;
  bool gap = false;
  int survey_n = 8;
  std::size_t survey_count = 200;
  double survey_p = 0.5;
};

std::size_t worker_count() {
  if (const char* env = std::getenv("BTT_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw InputError("BTT_WORKERS must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

// Runs fn(i) for i in [0, count) on the worker pool. Results must be stored by
// index so output does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t count, Fn fn) {
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// key=value pairs after the generator name, e.g. "random:n=9,p=0.5".
std::map<std::string, std::string> parse_params(const std::string& s) {
  std::map<std::string, std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("generator parameter '" + item + "' is not key=value");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long r = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw InputError("parameter " + key + " expects an integer, got '" + v + "'");
  }
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw InputError("parameter " + key + " expects a number, got '" + v + "'");
  }
}

Json gadget_to_json(const GadgetMap& m) {
  Json j;
  j["theorem_mode"] = m.theorem_mode;
  Json hex = Json::array();
  for (const auto& h : m.hexagrams) hex.push_back({{"inner", h.inner}, {"crowns", h.crowns}});
  j["hexagrams"] = std::move(hex);
  Json cl = Json::array();
  for (const auto& c : m.clauses) cl.push_back({{"node", c.node}, {"crowns", c.crowns}});
  j["clauses"] = std::move(cl);
  return j;
}

// Unsigned graph for the vertex-cover reduction: "n <count>" then "u v" lines.
std::pair<int, std::vector<std::pair<NodeId, NodeId>>> read_unsigned_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::string line;
  int n = -1;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a)) continue;
    if (!(ls >> b)) throw InputError("line " + std::to_string(lineno) + ": expected two fields");
    if (n < 0) {
      if (a != "n") throw InputError("line " + std::to_string(lineno) + ": expected header 'n <count>'");
      n = static_cast<int>(to_long("n", b));
      continue;
    }
    edges.emplace_back(static_cast<NodeId>(to_long("u", a)), static_cast<NodeId>(to_long("v", b)));
  }
  if (n < 0) throw InputError(path + ": missing header");
  return {n, edges};
}

struct Generated {
  SignedGraph<Rational> graph;
  std::optional<Json> gadget;
  Json spec;
};

Generated generate(const std::string& text, std::uint64_t default_seed) {
  auto colon = text.find(':');
  std::string name = text.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  Generated out;
  out.spec["name"] = name;
  if (name == "figure2") {
    out.graph = gen_figure2<Rational>();
  } else if (name == "gap") {
    int n = static_cast<int>(to_long("gap", rest));
    out.spec["n"] = n;
    out.graph = gen_integrality_gap<Rational>(n);
  } else if (name == "hexagram") {
    auto [g, map] = gen_hexagram<Rational>();
    out.graph = std::move(g);
    out.gadget = gadget_to_json(map);
  } else if (name == "random") {
    auto p = parse_params(rest);
    RandomGraphSpec spec;
    spec.seed = default_seed;
    for (const auto& [k, v] : p) {
      if (k == "n") {
        spec.n = static_cast<int>(to_long(k, v));
      } else if (k == "p") {
        spec.p_positive = to_double(k, v);
      } else if (k == "count") {
        spec.positive_count = static_cast<std::size_t>(to_long(k, v));
      } else if (k == "density") {
        spec.complete = false;
        spec.density = to_double(k, v);
      } else if (k == "wmax") {
        spec.weight_max = static_cast<int>(to_long(k, v));
      } else if (k == "wden") {
        spec.weight_den = static_cast<int>(to_long(k, v));
      } else if (k == "seed") {
        spec.seed = static_cast<std::uint64_t>(to_long(k, v));
      } else {
        throw InputError("unknown random generator parameter '" + k + "'");
      }
    }
    out.spec["n"] = spec.n;
    out.spec["p"] = spec.p_positive;
    if (spec.positive_count) out.spec["count"] = *spec.positive_count;
    out.spec["complete"] = spec.complete;
    if (!spec.complete) out.spec["density"] = spec.density;
    out.spec["wmax"] = spec.weight_max;
    out.spec["wden"] = spec.weight_den;
    out.spec["seed"] = spec.seed;
    out.graph = gen_random<Rational>(spec);
  } else if (name == "vc") {
    auto [n, edges] = read_unsigned_graph(rest);
    out.spec["file"] = rest;
    out.graph = gen_vc_reduction<Rational>(n, edges);
  } else if (name == "hardness") {
    bool relaxed = false;
    std::string path = rest;
    if (auto c = rest.rfind(":relaxed"); c != std::string::npos && c + 8 == rest.size()) {
      relaxed = true;
      path = rest.substr(0, c);
    }
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    auto f = parse_dimacs_2cnf(in);
    out.spec["file"] = path;
    out.spec["relaxed"] = relaxed;
    auto [g, map] = gen_hardness_reduction<Rational>(f, relaxed ? FormulaMode::relaxed : FormulaMode::theorem);
    out.graph = std::move(g);
    out.gadget = gadget_to_json(map);
  } else {
    throw InputError("unknown generator '" + name + "' (figure2, gap:N, hexagram, random:..., vc:FILE, hardness:FILE)");
  }
  return out;
}

SignedGraph<Rational> load_graph(const Config& cfg) {
  if (cfg.input.empty() == cfg.gen.empty()) throw InputError("give exactly one of --input and --gen");
  if (!cfg.input.empty()) return read_edge_list_file<Rational>(cfg.input);
  return generate(cfg.gen, cfg.seed).graph;
}

bool use_rational(const Config& cfg, std::size_t n) {
  if (cfg.mode == "rational") return true;
  if (cfg.mode == "float") return false;
  return n <= 50;
}

Json config_json(const Config& cfg, bool rational) {
  Json j;
  j["command"] = cfg.command;
  if (!cfg.input.empty()) j["input"] = cfg.input;
  if (!cfg.gen.empty()) j["gen"] = cfg.gen;
  if (!cfg.alg.empty()) j["alg"] = cfg.alg;
  j["mode"] = rational ? "rational" : "float";
  j["eps"] = cfg.eps;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["node_budget"] = cfg.node_budget;
  if (!cfg.cover.empty()) j["cover"] = cfg.cover;
  if (!cfg.cover_alg.empty()) j["cover_alg"] = cfg.cover_alg;
  return j;
}

void emit(const Config& cfg, const Json& doc) {
  std::string text = doc.dump(2) + "\n";
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw InputError("cannot write " + cfg.out);
  f << text;
}

struct Stats {
  double mean = 0;
  double stderr_ = 0;
  double min = 0;
  double max = 0;
};

Stats stats_of(const std::vector<double>& v) {
  Stats s;
  if (v.empty()) return s;
  double sum = 0, sq = 0;
  s.min = s.max = v[0];
  for (double d : v) {
    sum += d;
    sq += d * d;
    s.min = std::min(s.min, d);
    s.max = std::max(s.max, d);
  }
  double n = static_cast<double>(v.size());
  s.mean = sum / n;
  s.stderr_ = v.size() > 1 ? std::sqrt(std::max(0.0, (sq - n * s.mean * s.mean) / (n - 1)) / n) : 0.0;
  return s;
}

Json stats_json(const Stats& s, std::size_t trials) {
  return {{"trials", trials}, {"mean", s.mean}, {"stderr", s.stderr_}, {"min", s.min}, {"max", s.max}};
}

ExactOptions exact_options(const Config& cfg) {
  ExactOptions o;
  o.node_budget = cfg.node_budget;
  o.max_triangles = cfg.max_triangles;
  return o;
}

// Produces the cover for `alg`; fills `extra` with algorithm-specific fields.
template <class W>
RoundingOutcome<W> cover_by(const Config& cfg, const std::string& alg, const SignedGraph<W>& g,
                            const std::vector<BadTriangle>& tris, Json& extra) {
  std::span<const BadTriangle> span(tris);
  ExactLpOptions lp_opts;
  lp_opts.max_constraints = cfg.max_triangles;
  if (alg == "3approx") return standard_three_approx(g, span);
  if (alg == "kriv") return krivelevich(g, span, lp_opts);
  if (alg == "exact") {
    auto res = exact_btt(g, span, exact_options(cfg));
    extra["nodes_explored"] = res.nodes_explored;
    extra["nodes_pruned"] = res.nodes_pruned;
    RoundingOutcome<W> o;
    o.cover = *res.cover;
    o.algorithm = "exact";
    o.lower_bound = res.value;
    return o;
  }
  auto lp = solve_exact(g, span, lp_opts);
  extra["lp_objective"] = num_json(lp.primal.objective);
  if (alg == "det2") return round_deterministic(g, tris, lp.primal, lp.lower);
  if (alg == "sweep2") return derandomized_sweep(g, tris, lp.primal, lp.lower);
  if (alg == "rand2") return round_randomized(g, tris, lp.primal, cfg.seed, lp.lower);
  throw InputError("algorithm '" + alg + "' does not produce a cover");
}

template <class W>
Json solve_typed(const Config& cfg, const SignedGraph<W>& g) {
  auto tris = enumerate_bad_triangles(g);
  Json r;
  r["graph"] = {{"n", g.num_nodes()},
                {"num_edges", g.num_edges()},
                {"complete", g.complete()},
                {"weighted", !g.unweighted()},
                {"bad_triangles", tris.size()}};
  std::span<const BadTriangle> span(tris);
  if (cfg.alg == "lp-exact" || cfg.alg == "lp-mwu") {
    LpSolution<W> sol;
    if (cfg.alg == "lp-exact") {
      ExactLpOptions o;
      o.max_constraints = cfg.max_triangles;
      sol = solve_exact(g, span, o);
    } else {
      MwuOptions o;
      o.max_iterations = cfg.mwu_iterations;
      sol = solve_mwu(g, span, cfg.eps, o);
    }
    r["lp"] = lp_to_json(g, span, sol);
    r["feasible"] = check_fractional_feasibility<W>(span, sol.primal, g.num_edges(), W(0));
    return r;
  }
  Json extra = Json::object();
  auto out = cover_by(cfg, cfg.alg, g, tris, extra);
  Json res = outcome_to_json(g, span, out);
  r["algorithm"] = res["algorithm"];
  r["cover"] = res["cover"];
  r["lower_bound"] = res["lower_bound"];
  r["certified_ratio"] = res["certified_ratio"];
  if (res.contains("threshold")) r["threshold"] = res["threshold"];
  if (res.contains("seed")) r["rand_seed"] = res["seed"];
  for (auto& [k, v] : extra.items()) r[k] = v;
  if (cfg.alg == "rand2" && cfg.trials > 1) {
    auto lp = solve_exact(g, span);
    std::vector<double> costs(cfg.trials);
    parallel_for(cfg.trials, [&](std::size_t t) {
      auto o = round_randomized(g, tris, lp.primal, SplitMix64::split(cfg.seed, t), lp.lower);
      costs[t] = NumTraits<W>::to_double(o.cover.cost());
    });
    r["trial_costs"] = stats_json(stats_of(costs), cfg.trials);
  }
  return r;
}

int cmd_solve(const Config& cfg) {
  static const std::vector<std::string> algs{"3approx", "kriv", "det2", "rand2", "sweep2", "exact", "lp-exact", "lp-mwu"};
  if (std::find(algs.begin(), algs.end(), cfg.alg) == algs.end()) {
    throw InputError("solve does not support --alg " + cfg.alg);
  }
  auto t0 = std::chrono::steady_clock::now();
  auto g = load_graph(cfg);
  bool rational = use_rational(cfg, g.num_nodes());
  Json doc = document("solve");
  doc["config"] = config_json(cfg, rational);
  Json r = rational ? solve_typed(cfg, g) : solve_typed(cfg, convert_graph<double>(g));
  for (auto& [k, v] : r.items()) doc[k] = v;
  if (cfg.timing) {
    doc["wall_time_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  emit(cfg, doc);
  return kExitOk;
}

template <class W>
EdgeCover<W> supplied_cover(const Config& cfg, const SignedGraph<W>& g, Json& info) {
  if (!cfg.cover.empty() && !cfg.cover_alg.empty()) throw InputError("give at most one of --cover and --cover-alg");
  if (!cfg.cover.empty()) {
    Json j;
    try {
      if (cfg.cover == "-") {
        j = Json::parse(std::cin);
      } else {
        std::ifstream in(cfg.cover);
        if (!in) throw InputError("cannot open " + cfg.cover);
        j = Json::parse(in);
      }
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("cover JSON: ") + e.what());
    }
    info["source"] = cfg.cover == "-" ? "stdin" : cfg.cover;
    return cover_from_json(g, j);
  }
  std::string alg = cfg.cover_alg.empty() ? "exact" : cfg.cover_alg;
  info["source"] = alg;
  auto tris = enumerate_bad_triangles(g);
  Json extra;
  return cover_by(cfg, alg, g, tris, extra).cover;
}

template <class W>
Json cluster_typed(const Config& cfg, const SignedGraph<W>& g) {
  Json r;
  r["graph"] = {{"n", g.num_nodes()}, {"num_edges", g.num_edges()}, {"complete", g.complete()}};
  if (cfg.alg == "exact") {
    ExactCcOptions o;
    o.node_budget = cfg.cc_node_budget;
    auto res = exact_cc(g, o);
    r["clustering"] = clustering_to_json(*res.clustering);
    r["disagreements"] = num_json(res.value);
    r["nodes_explored"] = res.nodes_explored;
    return r;
  }
  std::optional<EdgeCover<W>> cover;
  if (cfg.alg == "cover-pivot" || cfg.alg == "flip-pivot") {
    Json info;
    cover = supplied_cover(cfg, g, info);
    if (!is_feasible_cover(g, *cover)) throw VerificationError("supplied cover misses a bad triangle");
    info["size"] = cover->size();
    info["cost"] = num_json(cover->cost());
    r["cover"] = info;
  } else if (!cfg.cover.empty() || !cfg.cover_alg.empty()) {
    throw InputError("--alg pivot takes no cover");
  }
  auto run = [&](std::uint64_t seed) {
    if (cfg.alg == "pivot") return standard_pivot(g, seed);
    if (cfg.alg == "cover-pivot") return cover_pivot(g, *cover, seed);
    return match_flip_pivot(g, *cover, seed);
  };
  std::vector<PivotTrace<W>> traces(cfg.trials);
  parallel_for(cfg.trials, [&](std::size_t t) { traces[t] = run(cfg.trials == 1 ? cfg.seed : SplitMix64::split(cfg.seed, t)); });
  std::vector<double> d(cfg.trials);
  for (std::size_t t = 0; t < cfg.trials; ++t) d[t] = NumTraits<W>::to_double(traces[t].disagreements);
  r["clustering"] = clustering_to_json(traces[0].clustering);
  r["disagreements"] = num_json(traces[0].disagreements);
  Stats s = stats_of(d);
  r["statistics"] = stats_json(s, cfg.trials);
  if (cover) {
    double factor = cfg.alg == "cover-pivot" ? 1.5 : 2.0;
    double bound = factor * static_cast<double>(cover->size());
    r["bound"] = {{"factor", factor}, {"value", bound}, {"mean_within_3se", s.mean <= bound + 3 * s.stderr_}};
    if (cfg.exact_expectation && cfg.alg == "cover-pivot") {
      r["exact_expectation"] = exact_expected_disagreements(g, *cover).get_str();
    }
  }
  if (!cfg.csv.empty()) {
    std::ofstream f(cfg.csv, std::ios::binary);
    if (!f) throw InputError("cannot write " + cfg.csv);
    f << "trial,seed,disagreements,clusters\n";
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      f << t << "," << (cfg.trials == 1 ? cfg.seed : SplitMix64::split(cfg.seed, t)) << ","
        << NumTraits<W>::to_string(traces[t].disagreements) << "," << traces[t].clustering.num_clusters() << "\n";
    }
  }
  return r;
}

int cmd_cluster(const Config& cfg) {
  static const std::vector<std::string> algs{"pivot", "cover-pivot", "flip-pivot", "exact"};
  if (std::find(algs.begin(), algs.end(), cfg.alg) == algs.end()) {
    throw InputError("cluster does not support --alg " + cfg.alg);
  }
  if (cfg.trials < 1) throw InputError("--trials must be at least 1");
  auto t0 = std::chrono::steady_clock::now();
  auto g = load_graph(cfg);
  bool rational = use_rational(cfg, g.num_nodes());
  Json doc = document("cluster");
  doc["config"] = config_json(cfg, rational);
  Json r = rational ? cluster_typed(cfg, g) : cluster_typed(cfg, convert_graph<double>(g));
  for (auto& [k, v] : r.items()) doc[k] = v;
  if (cfg.timing) {
    doc["wall_time_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  emit(cfg, doc);
  return kExitOk;
}

int cmd_generate(const Config& cfg) {
  if (cfg.gen.empty()) throw InputError("generate needs --gen");
  auto gen = generate(cfg.gen, cfg.seed);
  std::ostringstream text;
  write_edge_list(text, gen.graph);
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text.str();
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw InputError("cannot write " + cfg.out);
    f << text.str();
  }
  if (!cfg.map_out.empty()) {
    if (!gen.gadget) throw InputError("--map only applies to hexagram and hardness generators");
    Json doc = document("gadget-map");
    doc["config"] = config_json(cfg, true);
    doc["spec"] = gen.spec;
    doc["map"] = *gen.gadget;
    std::ofstream f(cfg.map_out, std::ios::binary);
    if (!f) throw InputError("cannot write " + cfg.map_out);
    f << doc.dump(2) << "\n";
  }
  return kExitOk;
}

Json check(const std::string& name, bool pass, Json details) {
  return {{"name", name}, {"pass", pass}, {"details", std::move(details)}};
}

SurveyReport<Rational> parallel_survey(const std::vector<SurveyInstance<Rational>>& inst, const ExactOptions& opts) {
  const std::size_t chunks = std::min(worker_count(), std::max<std::size_t>(inst.size(), 1));
  std::vector<SurveyReport<Rational>> parts(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    std::size_t lo = inst.size() * c / chunks, hi = inst.size() * (c + 1) / chunks;
    parts[c] = ratio_survey<Rational>(std::span<const SurveyInstance<Rational>>(inst.data() + lo, hi - lo), opts);
  });
  SurveyReport<Rational> rep;
  for (auto& p : parts) {
    for (auto i : p.counterexample_rows) rep.counterexample_rows.push_back(i + rep.rows.size());
    rep.violations += p.violations;
    rep.counterexamples += p.counterexamples;
    rep.errors += p.errors;
    for (auto& row : p.rows) rep.rows.push_back(std::move(row));
  }
  return rep;
}

int cmd_verify(const Config& cfg) {
  if (!cfg.tables && !cfg.survey && !cfg.hexagram && !cfg.gap) {
    throw InputError("verify needs at least one of --tables, --survey, --hexagram, --gap");
  }
  Json doc = document("verify");
  doc["config"] = config_json(cfg, true);
  Json checks = Json::array();
  if (cfg.tables) {
    auto rep = verify_charging_tables();
    checks.push_back(check("tables", rep.ok() && rep.matched_cells == 31, charging_to_json(rep)));
  }
  if (cfg.gap) {
    Json rows = Json::array();
    bool ok = true;
    for (int n = 3; n <= 8; ++n) {
      auto g = gen_integrality_gap<Rational>(n);
      auto lp = solve_exact(g).primal.objective;
      auto opt = exact_btt(g).value;
      bool row_ok = lp == frac(n, 2) && opt == n - 1;
      ok = ok && row_ok;
      rows.push_back({{"n", n}, {"lp", lp.get_str()}, {"opt", opt.get_str()}, {"pass", row_ok}});
    }
    checks.push_back(check("integrality-gap", ok, rows));
  }
  if (cfg.hexagram) {
    auto [g, map] = gen_hexagram<Rational>();
    ExactOptions o = exact_options(cfg);
    o.enumerate_all = true;
    auto res = exact_btt_positive_only(g, o);
    std::vector<std::vector<EdgeId>> got;
    for (const auto& c : res.optima) got.push_back(c.ids());
    std::sort(got.begin(), got.end());
    std::vector<std::vector<EdgeId>> want{map.teeth_edges(g, 0, 0), map.teeth_edges(g, 0, 1)};
    std::sort(want.begin(), want.end());
    Json optima = Json::array();
    for (const auto& c : res.optima) optima.push_back(cover_to_json(g, c)["edges"]);
    checks.push_back(check("hexagram", res.value == 9 && got == want && !res.optima_truncated,
                           {{"optimum", res.value.get_str()},
                            {"num_optima", res.optima.size()},
                            {"optima", optima},
                            {"nodes_explored", res.nodes_explored}}));
  }
  if (cfg.survey) {
    std::vector<SurveyInstance<Rational>> inst;
    for (std::size_t i = 0; i < cfg.survey_count; ++i) {
      RandomGraphSpec spec;
      spec.n = cfg.survey_n;
      spec.p_positive = cfg.survey_p;
      spec.seed = SplitMix64::split(cfg.seed, i);
      inst.push_back({"survey-" + std::to_string(i), spec.seed, gen_random<Rational>(spec)});
    }
    auto rep = parallel_survey(inst, exact_options(cfg));
    Rational lo(0), hi(0);
    bool first = true;
    for (const auto& row : rep.rows) {
      if (!row.ratio) continue;
      if (first || *row.ratio < lo) lo = *row.ratio;
      if (first || *row.ratio > hi) hi = *row.ratio;
      first = false;
    }
    if (!cfg.csv.empty()) {
      std::ofstream f(cfg.csv, std::ios::binary);
      if (!f) throw InputError("cannot write " + cfg.csv);
      write_survey_csv(f, rep, cfg.timing);
    }
    checks.push_back(check("survey", rep.violations == 0 && rep.errors == 0,
                           {{"instances", rep.rows.size()},
                            {"violations", rep.violations},
                            {"errors", rep.errors},
                            {"counterexamples", rep.counterexamples},
                            {"min_ratio", lo.get_str()},
                            {"max_ratio", hi.get_str()}}));
  }
  bool all = true;
  for (const auto& c : checks) all = all && c["pass"].get<bool>();
  doc["checks"] = checks;
  doc["pass"] = all;
  emit(cfg, doc);
  return all ? kExitOk : kExitVerify;
}

void add_common(CLI::App* app, Config& cfg) {
  app->add_option("--input", cfg.input, "Edge-list file");
  app->add_option("--gen", cfg.gen, "Generator: figure2, gap:N, hexagram, random:k=v,..., vc:FILE, hardness:FILE[:relaxed]");
  app->add_option("--seed", cfg.seed, "Seed");
  app->add_option("--out", cfg.out, "Output file (default stdout)");
  app->add_option("--mode", cfg.mode, "Number mode")->check(CLI::IsMember({"auto", "rational", "float"}));
  app->add_option("--node-budget", cfg.node_budget, "Branch-and-bound node budget");
  app->add_option("--max-triangles", cfg.max_triangles, "Bad-triangle cap for LP and exact search");
  app->add_flag("--timing", cfg.timing, "Record wall time (output is then not reproducible)");
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Bad-triangle transversal and correlation clustering tools"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Write a generated instance as an edge list");
  add_common(gen, cfg);
  gen->add_option("--map", cfg.map_out, "Gadget map JSON sidecar");

  auto* solve = app.add_subcommand("solve", "Compute a cover or an LP solution");
  add_common(solve, cfg);
  solve->add_option("--alg", cfg.alg, "Algorithm")
      ->required()
      ->check(CLI::IsMember({"3approx", "kriv", "det2", "rand2", "sweep2", "exact", "lp-exact", "lp-mwu"}));
  solve->add_option("--eps", cfg.eps, "MWU accuracy");
  solve->add_option("--trials", cfg.trials, "rand2 repetitions for cost statistics");
  solve->add_option("--mwu-iterations", cfg.mwu_iterations, "MWU iteration cap (0 = default)");

  auto* cluster = app.add_subcommand("cluster", "Run a pivot clustering");
  add_common(cluster, cfg);
  cluster->add_option("--alg", cfg.alg, "Algorithm")
      ->required()
      ->check(CLI::IsMember({"pivot", "cover-pivot", "flip-pivot", "exact"}));
  cluster->add_option("--cover", cfg.cover, "Cover JSON from solve ('-' for stdin)");
  cluster->add_option("--cover-alg", cfg.cover_alg, "Compute the cover in-process with this solve algorithm");
  cluster->add_option("--trials", cfg.trials, "Independent runs");
  cluster->add_option("--csv", cfg.csv, "Per-trial CSV");
  cluster->add_flag("--exact-expectation", cfg.exact_expectation, "Exhaustive expectation (n <= 12)");
  cluster->add_option("--cc-node-budget", cfg.cc_node_budget, "Exact clustering node budget");

  auto* verify = app.add_subcommand("verify", "Built-in checks with a pass/fail report");
  verify->add_flag("--tables", cfg.tables, "Recompute the charging tables");
  verify->add_flag("--gap", cfg.gap, "Integrality gap family, n = 3..8");
  verify->add_flag("--hexagram", cfg.hexagram, "Positive-only optima of the hexagram");
  verify->add_flag("--survey", cfg.survey, "OPT_CC / OPT_delta on random complete graphs");
  verify->add_option("--n", cfg.survey_n, "Survey graph size");
  verify->add_option("--count", cfg.survey_count, "Survey instance count");
  verify->add_option("--p", cfg.survey_p, "Survey positive probability");
  verify->add_option("--seed", cfg.seed, "Survey seed");
  verify->add_option("--csv", cfg.csv, "Survey CSV");
  verify->add_option("--out", cfg.out, "Report file (default stdout)");
  verify->add_option("--node-budget", cfg.node_budget, "Branch-and-bound node budget");
  verify->add_flag("--timing", cfg.timing, "Include runtimes in the survey CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*gen) {
      cfg.command = "generate";
      return cmd_generate(cfg);
    }
    if (*solve) {
      cfg.command = "solve";
      return cmd_solve(cfg);
    }
    if (*cluster) {
      cfg.command = "cluster";
      return cmd_cluster(cfg);
    }
    cfg.command = "verify";
    return cmd_verify(cfg);
  } catch (const InputError& e) {
    std::cerr << "btt: input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BudgetExhausted& e) {
    std::cerr << "btt: budget exhausted: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const CapacityError& e) {
    std::cerr << "btt: capacity: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ConvergenceError& e) {
    std::cerr << "btt: iteration cap reached: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const VerificationError& e) {
    std::cerr << "btt: verification failed: " << e.what() << "\n";
    return kExitVerify;
  } catch (const std::exception& e) {
    std::cerr << "btt: error: " << e.what() << "\n";
    return kExitInternal;
  }
}
