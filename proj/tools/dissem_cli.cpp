// dissem: one-round and multi-round coded dissemination from the command line.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dissem/bounds.hpp"
#include "dissem/errors.hpp"
#include "dissem/experiment.hpp"
#include "dissem/generator.hpp"
#include "dissem/multiround.hpp"
#include "dissem/one_round.hpp"
#include "dissem/protocol_sim.hpp"
#include "dissem/serialize.hpp"

namespace fs = std::filesystem;
using namespace dissem;

namespace {

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("DISSEM_SEED");
  if (!env || !*env) return 0;
  std::size_t pos = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(env, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || env[pos] != '\0') throw InputError(std::string("DISSEM_SEED is not an integer: ") + env);
  return v;
}

Strategy parse_strategy(const std::string& s) {
  if (s == "exact") return Strategy::exact;
  if (s == "flood") return Strategy::flood;
  if (s == "random") return Strategy::random;
  throw InputError("unknown strategy \"" + s + "\" (exact, flood, random)");
}

std::string node_name(std::size_t l) { return "v" + std::to_string(l + 1); }

std::string list_vectors(const FieldMatrix& m) {
  if (m.rows() == 0) return "-";
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) out += "; ";
    out += format_combination(m.row(r));
  }
  return out;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

struct SolveArgs {
  std::string instance;
  bool exact = false;
  bool heuristic = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> cap;
  std::size_t iterations = 64;
  bool json = false;
  std::string out;
};

int cmd_solve(const SolveArgs& a) {
  const auto inst = load_instance(a.instance);
  if (!inst.has_requests()) std::cerr << "note: no node requests anything\n";
  const auto seed = resolve_seed(a.seed);
  ExactCaps caps;
  if (a.cap) caps.node_budget = *a.cap;
  OneRoundResult res;
  if (a.heuristic) {
    res = solve_heuristic(inst, seed, a.iterations);
  } else if (a.exact) {
    res = solve_exact(inst, caps);
  } else {
    try {
      res = solve_exact(inst, caps);
    } catch (const SearchCapExceeded& e) {
      std::cerr << "warning: " << e.what() << "; using the heuristic\n";
      res = solve_heuristic(inst, seed, a.iterations);
    }
  }
  if (!check_condition(inst, res.scheme.per_node)) throw std::logic_error("solver returned an invalid scheme");
  if (!a.out.empty()) write_text_file(a.out, scheme_to_json(as_multiround(res.scheme)).dump(2) + "\n");
  if (a.json) {
    print_json(one_round_to_json(inst, res));
    return 0;
  }
  std::cout << "tau: " << res.tau << "\n";
  std::cout << "method: " << (res.method == SolveMethod::exact ? "exact" : "heuristic") << "\n\n";
  std::cout << "node  rank  coding vectors\n";
  for (std::size_t l = 0; l < inst.node_count(); ++l) {
    std::printf("%-5s %-5zu %s\n", node_name(l).c_str(), res.scheme.per_node[l].rows(),
                list_vectors(res.scheme.per_node[l]).c_str());
  }
  bool header = false;
  for (std::size_t l = 0; l < inst.node_count(); ++l) {
    for (auto eta : inst.request(l).items()) {
      if (!header) {
        std::cout << "\ndecode\nnode  symbol  from\n";
        header = true;
      }
      const auto d = decode(inst, res.scheme, l, eta);
      std::string terms;
      for (std::size_t i = 0; i < d.received.size(); ++i) {
        if (d.alpha[i] == 0) continue;
        if (!terms.empty()) terms += " + ";
        if (d.alpha[i] != 1) terms += std::to_string(d.alpha[i]) + "*";
        terms += node_name(d.received[i].sender) + "[" + std::to_string(d.received[i].index + 1) + "]";
      }
      const auto own = format_combination(d.beta);
      if (own != "0") terms += (terms.empty() ? "" : " + ") + own;
      std::printf("%-5s %-7s %s\n", node_name(l).c_str(), ("x" + std::to_string(eta + 1)).c_str(),
                  terms.c_str());
    }
  }
  return 0;
}

int cmd_bounds(const std::string& path, bool json) {
  const auto inst = load_instance(path);
  const auto b = compute_bounds(inst);
  if (json) {
    print_json(bounds_to_json(b));
    return 0;
  }
  auto show = [&](const std::optional<std::size_t>& v, const std::string& name) {
    if (v) return std::to_string(*v);
    for (const auto& [k, note] : b.notes) {
      if (k == name) return note;
    }
    return std::string("n/a");
  };
  std::cout << "dmax: " << show(b.dmax, "dmax") << "\n";
  if (!b.bipartite) {
    std::cout << "alpha: n/a: not bipartite\nminrank2: n/a: not bipartite\nclique_cover: n/a: not bipartite\n"
              << "partition: n/a: not bipartite\n";
  } else {
    std::cout << "alpha: " << show(b.alpha, "alpha") << "\n"
              << "minrank2: " << show(b.minrank2, "minrank2") << "\n"
              << "clique_cover: " << show(b.clique_cover, "clique_cover") << "\n";
    if (b.alpha && b.minrank2 && b.clique_cover) {
      std::cout << "sandwich: " << *b.alpha << " <= " << *b.minrank2 << " <= " << *b.clique_cover << "\n";
    }
    if (b.partition) {
      std::cout << "partition: " << b.partition->minrank_sum << (b.partition->greedy ? " (greedy)" : "") << "\n"
                << "partition_clique_cover: " << b.partition->clique_cover_sum << "\n";
    } else {
      std::cout << "partition: " << show(std::nullopt, "partition") << "\n";
    }
  }
  std::cout << "lower_bound: " << b.lower() << "\n";
  return 0;
}

int cmd_multiround(const std::string& path, std::optional<std::size_t> rounds, const std::string& strategy,
                   std::optional<std::uint64_t> seed_flag, std::optional<std::uint64_t> cap, const std::string& out) {
  const auto inst = load_instance(path);
  RoundOptions opts;
  opts.strategy = parse_strategy(strategy);
  opts.seed = resolve_seed(seed_flag);
  if (cap) opts.caps.node_budget = *cap;
  const auto r = rounds ? *rounds : required_rounds(inst);
  const auto s = schedule(inst, r, opts);
  const auto t = execute(inst, s);
  if (!t.all_satisfied()) throw std::logic_error("schedule failed its own simulation");
  for (std::size_t i = 0; i < s.fallback_rounds.size(); ++i) {
    if (s.fallback_rounds[i]) std::cerr << "warning: round " << i + 1 << " used the heuristic\n";
  }
  const auto j = scheme_to_json(s);
  if (!out.empty()) write_text_file(out, j.dump(2) + "\n");
  print_json(j);
  return 0;
}

int cmd_simulate(const std::string& inst_path, const std::string& scheme_path, bool json) {
  const auto inst = load_instance(inst_path);
  const auto s = load_scheme(scheme_path);
  if (!s.rounds.empty() && s.rounds.front().size() != inst.node_count()) {
    throw InputError(scheme_path + ": scheme has " + std::to_string(s.rounds.front().size()) +
                     " nodes, instance has " + std::to_string(inst.node_count()));
  }
  const auto t = execute(inst, s);
  if (json) {
    print_json(transcript_to_json(t));
    return 0;
  }
  std::cout << "rounds: " << t.rounds.size() << "\n";
  std::size_t sent = 0;
  for (const auto& r : t.rounds) sent += r.size();
  std::cout << "transmissions: " << sent << "\n";
  for (const auto& rec : t.recovery) {
    std::cout << node_name(rec.node) << " x" << rec.symbol + 1 << ": "
              << (rec.satisfied ? "recovered" : "NOT recovered") << "\n";
  }
  std::cout << "all requests satisfied: " << (t.all_satisfied() ? "yes" : "no") << "\n";
  return 0;
}

int cmd_gen(GenParams p, std::optional<std::uint64_t> seed_flag, const std::string& dir) {
  p.seed = resolve_seed(seed_flag);
  const auto corpus = generate_corpus(p);
  fs::create_directories(dir);
  const auto width = std::to_string(std::max<std::size_t>(p.count, 1)).size();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto name = std::to_string(i + 1);
    name.insert(0, width - name.size(), '0');
    write_text_file((fs::path(dir) / ("instance_" + name + ".json")).string(),
                    instance_to_json(corpus[i]).dump(2) + "\n");
  }
  std::cout << "wrote " << corpus.size() << " instances to " << dir << "\n";
  return 0;
}

int cmd_experiment(GenParams p, std::optional<std::uint64_t> seed_flag, const std::string& strategy,
                   const std::string& csv, bool json) {
  p.seed = resolve_seed(seed_flag);
  RoundOptions opts;
  opts.strategy = parse_strategy(strategy);
  opts.seed = p.seed;
  const auto rep = run_experiment(p, opts);
  if (!csv.empty()) write_text_file(csv, format_csv(rep));
  for (const auto& f : rep.failures) std::cerr << "instance " << f.index + 1 << " excluded: " << f.message << "\n";
  if (json) {
    Json j;
    j["format"] = kFormatVersion;
    j["params"] = {{"nodes", p.nodes}, {"symbols", p.symbols}, {"diameter", p.diameter},
                   {"count", p.count}, {"seed", p.seed}, {"strategy", strategy}};
    Json rows = Json::array();
    for (const auto& r : rep.rows) {
      rows.push_back({{"index", r.index + 1}, {"rounds", r.rounds}, {"tau", r.tau}, {"dmax", r.dmax},
                      {"ratio", r.ratio.value()}, {"fallback", r.fallback}});
    }
    j["instances"] = rows;
    j["excluded"] = rep.failures.size();
    j["histogram"] = {{"range", {"[1,1.2)", "[1.2,1.4)", "[1.4,1.6)", "[1.6,1.8)", "[1.8,2.0)", "[2.0,inf)"}},
                      {"count", rep.counts},
                      {"percent", rep.percent}};
    print_json(j);
    return 0;
  }
  std::cout << "instances: " << rep.rows.size() << " (excluded " << rep.failures.size() << ")\n\n";
  std::cout << format_table(rep);
  if (!rep.rows.empty()) std::cout << "\n" << format_csv(rep);
  return 0;
}

int cmd_check(const std::string& path) {
  const auto inst = load_instance(path);
  std::cout << "ok: " << inst.node_count() << " nodes, " << inst.net().edges().size() << " edges, "
            << inst.symbol_count() << " symbols over GF(" << inst.field() << ")\n";
  std::cout << "feasible: " << (inst.feasible() ? "yes" : "no") << "\n";
  std::cout << "bipartite: " << (is_bipartite(inst) ? "yes" : "no") << "\n";
  const auto r0 = solvability_index(inst.net());
  std::cout << "solvability index: " << (r0 ? std::to_string(*r0) : "none (not strongly connected)") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coded data dissemination over directed networks"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* c_solve = app.add_subcommand("solve", "Minimum one-round transmissions for an instance");
  c_solve->add_option("instance", solve.instance, "Instance JSON")->required();
  auto* f_exact = c_solve->add_flag("--exact", solve.exact, "Exact search only (exit 3 past the cap)");
  auto* f_heur = c_solve->add_flag("--heuristic", solve.heuristic, "Randomized greedy only");
  f_exact->excludes(f_heur);
  c_solve->add_option("--seed", solve.seed, "Heuristic seed (default: DISSEM_SEED or 0)");
  c_solve->add_option("--cap", solve.cap, "Exact search node budget");
  c_solve->add_option("--iterations", solve.iterations, "Heuristic restarts")->capture_default_str();
  c_solve->add_flag("--json", solve.json, "Print the result as JSON");
  c_solve->add_option("--out", solve.out, "Write the scheme JSON here");

  std::string b_path;
  bool b_json = false;
  auto* c_bounds = app.add_subcommand("bounds", "Lower and upper bounds");
  c_bounds->add_option("instance", b_path, "Instance JSON")->required();
  c_bounds->add_flag("--json", b_json, "Print the report as JSON");

  std::string m_path;
  std::optional<std::size_t> m_rounds;
  std::string m_strategy = "exact";
  std::optional<std::uint64_t> m_seed;
  std::optional<std::uint64_t> m_cap;
  std::string m_out;
  auto* c_multi = app.add_subcommand("multiround", "Round-by-round schedule");
  c_multi->add_option("instance", m_path, "Instance JSON")->required();
  c_multi->add_option("--rounds,-r", m_rounds, "Rounds (default: solvability index)");
  c_multi->add_option("--strategy", m_strategy, "exact, flood or random (seeded random restarts per round)")->capture_default_str();
  c_multi->add_option("--seed", m_seed, "Seed for random and fallback rounds");
  c_multi->add_option("--cap", m_cap, "Exact search node budget per round");
  c_multi->add_option("--out", m_out, "Write the scheme JSON here");

  std::string s_inst;
  std::string s_scheme;
  bool s_json = false;
  auto* c_sim = app.add_subcommand("simulate", "Run a scheme and report what every node recovers");
  c_sim->add_option("instance", s_inst, "Instance JSON")->required();
  c_sim->add_option("scheme", s_scheme, "Scheme JSON")->required();
  c_sim->add_flag("--json", s_json, "Print the transcript as JSON");

  GenParams g;
  std::optional<std::uint64_t> g_seed;
  std::string g_out;
  auto* c_gen = app.add_subcommand("gen", "Random instances with a fixed solvability index");
  c_gen->add_option("--nodes,-k", g.nodes)->capture_default_str();
  c_gen->add_option("--symbols,-n", g.symbols)->capture_default_str();
  c_gen->add_option("--diameter,-d", g.diameter)->capture_default_str();
  c_gen->add_option("--count,-c", g.count)->capture_default_str();
  c_gen->add_option("--field", g.field)->capture_default_str();
  c_gen->add_option("--seed", g_seed);
  c_gen->add_option("--out", g_out, "Output directory")->required();

  GenParams e;
  std::optional<std::uint64_t> e_seed;
  std::string e_strategy = "exact";
  std::string e_csv;
  bool e_json = false;
  e.count = 50;
  auto* c_exp = app.add_subcommand("experiment", "Histogram of scheduled tau over dmax");
  c_exp->add_option("--nodes,-k", e.nodes)->capture_default_str();
  c_exp->add_option("--symbols,-n", e.symbols)->capture_default_str();
  c_exp->add_option("--diameter,-d", e.diameter)->capture_default_str();
  c_exp->add_option("--count,-c", e.count)->capture_default_str();
  c_exp->add_option("--seed", e_seed);
  c_exp->add_option("--strategy", e_strategy, "exact, flood or random (seeded random restarts per round)")->capture_default_str();
  c_exp->add_option("--csv", e_csv, "Write per-instance rows here");
  c_exp->add_flag("--json", e_json, "Print the report as JSON");

  std::string k_path;
  auto* c_check = app.add_subcommand("check", "Validate an instance file");
  c_check->add_option("instance", k_path, "Instance JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (c_solve->parsed()) return cmd_solve(solve);
    if (c_bounds->parsed()) return cmd_bounds(b_path, b_json);
    if (c_multi->parsed()) return cmd_multiround(m_path, m_rounds, m_strategy, m_seed, m_cap, m_out);
    if (c_sim->parsed()) return cmd_simulate(s_inst, s_scheme, s_json);
    if (c_gen->parsed()) return cmd_gen(g, g_seed, g_out);
    if (c_exp->parsed()) return cmd_experiment(e, e_seed, e_strategy, e_csv, e_json);
    if (c_check->parsed()) return cmd_check(k_path);
  } catch (const RoundsTooFew& err) {
    std::cerr << "error: " << err.what() << " (r0 = " << err.required_rounds() << ")\n";
    return err.exit_code();
  } catch (const IllegalTransmission& err) {
    std::cerr << "error: " << err.what() << "\n";
    return err.exit_code();
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return err.exit_code();
  } catch (const fs::filesystem_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 1;
}
