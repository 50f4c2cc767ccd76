// occur-lab: command-line front end for the unification and SLD tooling.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "occurlab/corpus.hpp"
#include "occurlab/differential.hpp"
#include "occurlab/iterms.hpp"
#include "occurlab/mma.hpp"
#include "occurlab/mma_minus.hpp"
#include "occurlab/parser.hpp"
#include "occurlab/robinson.hpp"
#include "occurlab/sld.hpp"

namespace {

using namespace occurlab;
using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "occur-lab.trace/1";

enum Exit : int { kHolds = 0, kFails = 1, kUsage = 2, kUnknown = 3 };

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  std::size_t bound = kDefaultEnumerationBound;
  std::vector<std::string> argv;
};

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "@path" reads the equations from a file.
std::string argument_text(const std::string& arg) { return arg.starts_with("@") ? read_file(arg.substr(1)) : arg; }

EquationSet equations_arg(const std::string& arg) { return parse_equations(argument_text(arg)); }

Json document(const Globals& g, const std::string& command) {
  Json doc;
  doc["schema"] = kSchema;
  doc["command"] = command;
  doc["args"] = g.argv;
  doc["seed"] = g.seed;
  return doc;
}

void emit(Json& doc, const Stopwatch& clock) {
  doc["timing"] = {{"elapsed_ms", clock.ms()}};
  std::cout << doc.dump(2) << "\n";
}

Json step_json(const Action& a, const EquationSet& after) {
  Json s;
  s["action"] = std::string(action_number(a.kind));
  s["name"] = std::string(action_name(a.kind));
  s["position"] = a.position + 1;
  if (a.var && a.term) s["binding"] = render(*a.var) + "/" + render(*a.term);
  if (!a.occurrences.empty()) s["occurrences"] = a.occurrences.size();
  s["state"] = render(after);
  return s;
}

Json steps_json(const Trace& t) {
  Json steps = Json::array();
  for (std::size_t i = 0; i < t.actions.size(); ++i) steps.push_back(step_json(t.actions[i], t.states[i]));
  return steps;
}

void print_trace(const Trace& t) {
  std::cout << "   " << render(t.initial) << "\n";
  for (std::size_t i = 0; i < t.actions.size(); ++i) {
    const Action& a = t.actions[i];
    std::cout << std::setw(3) << i + 1 << ". (" << action_number(a.kind) << ") " << action_name(a.kind) << " @"
              << a.position + 1;
    if (a.var && a.term) std::cout << " " << render(*a.var) << "/" << render(*a.term);
    std::cout << "\n     => {" << render(t.states[i]) << "}\n";
  }
}

Strategy strategy_arg(const std::string& name, std::uint64_t seed) {
  return name == "random" ? Strategy::random(seed) : Strategy::from_name(name);
}

SelectionRule rule_arg(const std::string& name, std::uint64_t seed) {
  return name == "random" ? SelectionRule::random(seed) : SelectionRule::from_name(name);
}

int verdict_exit(Verdict v) { return v == Verdict::Yes ? kHolds : v == Verdict::No ? kFails : kUnknown; }

// ---------------------------------------------------------------------------

struct UnifyArgs {
  std::string eqs;
  std::string algo = "mma";
  std::string strategy = "leftmost";
  std::string mode = "restricted";
  std::size_t fuel = kDefaultFuel;
};

int cmd_unify_robinson(const Globals& g, const EquationSet& e, const Stopwatch& clock) {
  std::vector<Term> ls;
  std::vector<Term> rs;
  for (const Equation& eq : e) {
    ls.push_back(eq.lhs);
    rs.push_back(eq.rhs);
  }
  const Term a = Term::compound("eqs", ls);
  const Term h = Term::compound("eqs", rs);
  const RobinsonResult r = unify_robinson(a, h, {}, pair_choice::first(), true);
  const char* outcome = r.outcome == RobinsonOutcome::Success ? "success"
                        : r.outcome == RobinsonOutcome::Clash ? "clash"
                                                              : "occur-check";
  if (g.json) {
    Json doc = document(g, "unify");
    doc["algo"] = "robinson";
    doc["initial"] = render(std::span<const Equation>(e));
    Json steps = Json::array();
    for (const RobinsonState& s : r.history) steps.push_back({{"theta", render(s.theta)}});
    doc["steps"] = steps;
    doc["final"] = render(r.state.theta);
    doc["status"] = outcome;
    emit(doc, clock);
  } else {
    for (std::size_t i = 0; i < r.history.size(); ++i) std::cout << std::setw(3) << i << ". " << render(r.history[i].theta) << "\n";
    std::cout << "status: " << outcome << "\n";
    if (r.success()) std::cout << "mgu: " << render(r.state.theta) << "\n";
  }
  return r.success() ? kHolds : kFails;
}

int cmd_unify(const Globals& g, const UnifyArgs& u) {
  Stopwatch clock;
  const EquationSet e = equations_arg(u.eqs);
  if (u.algo == "robinson") return cmd_unify_robinson(g, e, clock);
  const Strategy strategy = strategy_arg(u.strategy, g.seed);
  Trace t;
  if (u.algo == "mma") {
    t = run(e, strategy, u.fuel);
  } else {
    const MinusMode mode = u.mode == "unrestricted" ? MinusMode::Unrestricted : MinusMode::Restricted;
    t = run_minus(e, strategy, mode, u.fuel);
  }
  std::optional<Substitution> mgu;
  if ((t.status == RunStatus::Solved || t.status == RunStatus::SemiSolved) && is_solved(t.final_eqs())) {
    mgu = extract_mgu(t.final_eqs());
  }
  if (g.json) {
    Json doc = document(g, "unify");
    doc["algo"] = u.algo;
    doc["strategy"] = t.strategy;
    if (u.algo == "mma-minus") doc["mode"] = u.mode;
    doc["initial"] = render(std::span<const Equation>(e));
    doc["steps"] = steps_json(t);
    doc["final"] = render(t.final_eqs());
    doc["status"] = std::string(status_name(t.status));
    if (mgu) doc["mgu"] = render(*mgu);
    emit(doc, clock);
  } else {
    print_trace(t);
    std::cout << "status: " << status_name(t.status) << "\n";
    if (mgu) std::cout << "mgu: " << render(*mgu) << "\n";
  }
  switch (t.status) {
    case RunStatus::Solved:
    case RunStatus::SemiSolved: return kHolds;
    case RunStatus::FuelExhausted: return kUnknown;
    default: return kFails;
  }
}

int cmd_nsto(const Globals& g, const std::string& arg) {
  Stopwatch clock;
  const EquationSet e = equations_arg(arg);
  const RunGraphSummary s = enumerate_runs(e, g.bound);
  const Verdict v = s.any_occur_halt ? Verdict::No : s.exhausted ? Verdict::Unknown : Verdict::Yes;
  if (g.json) {
    Json doc = document(g, "nsto");
    doc["initial"] = render(std::span<const Equation>(e));
    doc["bound"] = g.bound;
    doc["verdict"] = std::string(verdict_name(v));
    doc["states"] = s.states;
    doc["any_occur_halt"] = s.any_occur_halt;
    doc["any_clash"] = s.any_clash;
    doc["any_success"] = s.any_success;
    Json mgus = Json::array();
    for (const Substitution& m : s.mgus) mgus.push_back(render(m));
    doc["mgus"] = mgus;
    emit(doc, clock);
  } else {
    std::cout << "nsto: " << verdict_name(v) << " (" << s.states << " states)\n";
  }
  return verdict_exit(v);
}

int cmd_ocf_run(const Globals& g, const std::string& arg) {
  Stopwatch clock;
  const EquationSet e = equations_arg(arg);
  const OcfSearch s = exists_ocf_run(e, g.bound);
  const char* kind = s.kind == OcfSearch::Kind::Found ? "found" : s.kind == OcfSearch::Kind::None ? "none" : "unknown";
  if (g.json) {
    Json doc = document(g, "ocf-run");
    doc["initial"] = render(std::span<const Equation>(e));
    doc["bound"] = g.bound;
    doc["result"] = kind;
    doc["states"] = s.states;
    if (s.witness) {
      doc["steps"] = steps_json(*s.witness);
      doc["final"] = render(s.witness->final_eqs());
      doc["status"] = std::string(status_name(s.witness->status));
    }
    emit(doc, clock);
  } else {
    std::cout << "ocf-run: " << kind << " (" << s.states << " states)\n";
    if (s.witness) {
      print_trace(*s.witness);
      std::cout << "status: " << status_name(s.witness->status) << "\n";
    }
  }
  return s.kind == OcfSearch::Kind::Found ? kHolds : s.kind == OcfSearch::Kind::None ? kFails : kUnknown;
}

int cmd_iequiv(const Globals& g, const std::string& a, const std::string& b, std::size_t depth) {
  Stopwatch clock;
  const EquationSet e1 = equations_arg(a);
  const EquationSet e2 = equations_arg(b);
  const bool eq = i_equivalent(e1, e2, depth);
  if (g.json) {
    Json doc = document(g, "iequiv");
    doc["left"] = render(std::span<const Equation>(e1));
    doc["right"] = render(std::span<const Equation>(e2));
    doc["depth"] = depth;
    doc["i_equivalent"] = eq;
    emit(doc, clock);
  } else {
    std::cout << "i-equivalent: " << (eq ? "yes" : "no") << " (depth " << depth << ")\n";
  }
  return eq ? kHolds : kFails;
}

struct DeriveArgs {
  std::string program;
  std::string query;
  std::string rule = "leftmost";
  std::size_t depth = 30;
  std::string engine = "mma";
  bool report = false;
  bool single = false;
};

Json tree_json(const DerivationTree& t) {
  Json nodes = Json::array();
  for (std::size_t id = 0; id < t.nodes.size(); ++id) {
    const DerivationNode& n = t.nodes[id];
    Json j;
    j["id"] = id;
    j["depth"] = n.depth;
    j["parent"] = n.parent ? Json(*n.parent) : Json(nullptr);
    j["query"] = render(std::span<const Atom>(n.query));
    j["selected"] = n.selected ? Json(*n.selected + 1) : Json(nullptr);
    j["status"] = std::string(node_status_name(n.status));
    Json branches = Json::array();
    for (const Branch& b : n.branches) {
      Json bj;
      bj["clause"] = b.unification.clause_index + 1;
      bj["eqs"] = render(std::span<const Equation>(b.unification.eqs));
      bj["outcome"] = std::string(outcome_name(b.outcome));
      if (b.mgu) bj["mgu"] = render(*b.mgu);
      if (b.child) bj["child"] = *b.child;
      branches.push_back(bj);
    }
    j["branches"] = branches;
    nodes.push_back(j);
  }
  return nodes;
}

Json report_json(const InvariantReport& r) {
  Json j;
  j["precondition_ok"] = r.precondition_ok;
  j["all_atoms_linear"] = r.all_atoms_linear ? Json(*r.all_atoms_linear) : Json("unknown");
  j["first_args_ground"] = r.first_args_ground ? Json(*r.first_args_ground) : Json("unknown");
  j["all_available_nsto"] = std::string(verdict_name(r.all_available_nsto));
  j["all_have_ocf_run"] = std::string(verdict_name(r.all_have_ocf_run));
  j["nodes"] = r.nodes;
  j["atoms"] = r.atoms;
  j["unifications"] = r.unifications;
  return j;
}

std::string tri(const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : "unknown"; }

int cmd_derive(const Globals& g, const DeriveArgs& d) {
  Stopwatch clock;
  NameSupply supply;
  const Program program = parse_program(read_file(d.program), supply);
  const Query q = parse_query(d.query, supply);
  DeriveOptions opts{rule_arg(d.rule, g.seed), d.depth, engine_from_name(d.engine), d.single};
  const DerivationTree t = derive(q, program, opts);
  std::optional<InvariantReport> rep;
  if (d.report) rep = check_derivation_invariants(t, g.bound);

  std::size_t success = 0, failure = 0, open = 0;
  for (const DerivationNode& n : t.nodes) {
    success += n.status == NodeStatus::Success;
    failure += n.status == NodeStatus::Failure;
    open += n.status == NodeStatus::Open;
  }
  const char* result = t.has_success() ? "success" : t.finitely_failed() ? "finite-failure" : "bound-reached";
  if (g.json) {
    Json doc = document(g, "derive");
    doc["rule"] = t.rule;
    doc["engine"] = std::string(engine_name(t.engine));
    doc["depth"] = d.depth;
    doc["initial"] = render(std::span<const Atom>(q));
    doc["nodes"] = tree_json(t);
    doc["status"] = result;
    if (rep) doc["report"] = report_json(*rep);
    emit(doc, clock);
  } else {
    std::cout << "query:   " << render(std::span<const Atom>(q)) << "\n"
              << "rule:    " << t.rule << "   engine: " << engine_name(t.engine) << "   depth: " << d.depth << "\n"
              << "nodes:   " << t.nodes.size() << "   success: " << success << "   failure: " << failure
              << "   open: " << open << "\n"
              << "result:  " << result << "\n";
    if (rep) {
      std::cout << "\n"
                << std::left << std::setw(22) << "property" << "value\n"
                << std::setw(22) << "precondition" << (rep->precondition_ok ? "ok" : "violated") << "\n"
                << std::setw(22) << "all atoms linear" << tri(rep->all_atoms_linear) << "\n"
                << std::setw(22) << "first args ground" << tri(rep->first_args_ground) << "\n"
                << std::setw(22) << "all available nsto" << verdict_name(rep->all_available_nsto) << "\n"
                << std::setw(22) << "all have ocf run" << verdict_name(rep->all_have_ocf_run) << "\n"
                << std::setw(22) << "unifications" << rep->unifications << "\n";
    }
  }
  if (t.has_success()) return kHolds;
  return t.finitely_failed() ? kFails : kUnknown;
}

struct TheoremArgs {
  std::size_t count = 1000;
  std::size_t fuel = kTheoremFuel;
};

int cmd_theorem_test(const Globals& g, const TheoremArgs& a) {
  Stopwatch clock;
  TheoremTestOptions opts;
  opts.count = a.count;
  opts.seed = g.seed;
  opts.fuel = a.fuel;
  opts.bound = g.bound;
  const TheoremTestReport r = theorem_test(opts);
  if (g.json) {
    Json doc = document(g, "theorem-test");
    doc["count"] = a.count;
    doc["generated"] = r.generated;
    doc["accepted"] = r.accepted;
    doc["rejected"] = r.rejected;
    doc["unknown"] = r.unknown;
    doc["runs"] = r.runs;
    doc["terminated"] = r.terminated;
    doc["correct"] = r.correct;
    doc["incorrect"] = r.incorrect;
    doc["under_sampled"] = r.under_sampled;
    if (r.counterexample) {
      doc["counterexample"] = render(std::span<const Equation>(*r.counterexample));
      doc["counterexample_schedule"] = *r.counterexample_schedule;
    }
    emit(doc, clock);
  } else {
    std::cout << "sets: " << r.accepted << " accepted of " << r.generated << " generated (" << r.rejected
              << " without an occur-check free run, " << r.unknown << " unknown)\n"
              << "runs: " << r.runs << "   terminated: " << r.terminated << "   correct: " << r.correct
              << "   incorrect: " << r.incorrect << "\n";
    if (r.counterexample) {
      std::cout << "counterexample (" << *r.counterexample_schedule
                << "): " << render(std::span<const Equation>(*r.counterexample)) << "\n";
    }
  }
  if (r.incorrect > 0) return kFails;
  return r.accepted < a.count ? kUnknown : kHolds;
}

int cmd_corpus(const Globals& g, const std::string& action, const std::string& name) {
  if (action == "list") {
    if (g.json) {
      Json doc = Json::array();
      for (const CorpusEntry& e : corpus_entries()) doc.push_back({{"name", e.name}, {"summary", e.summary}});
      std::cout << doc.dump(2) << "\n";
    } else {
      for (const CorpusEntry& e : corpus_entries()) std::cout << std::left << std::setw(10) << e.name << e.summary << "\n";
    }
    return kHolds;
  }
  if (name.empty()) throw CLI::ValidationError("corpus show", "missing entry name");
  const CorpusEntry& e = corpus_entry(name);
  if (g.json) {
    std::cout << Json{{"name", e.name}, {"summary", e.summary}, {"text", e.text}}.dump(2) << "\n";
  } else {
    std::cout << e.text;
  }
  return kHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"occur-lab: unification with and without the occur-check, and SLD derivations"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  for (int i = 1; i < argc; ++i) g.argv.emplace_back(argv[i]);
  app.add_flag("--json", g.json, "Machine-readable output on stdout");
  app.add_option("--seed", g.seed, "Seed for random strategies and rules")->capture_default_str();
  app.add_option("--bound", g.bound, "State bound for exhaustive searches")->capture_default_str();

  UnifyArgs u;
  auto* unify = app.add_subcommand("unify", "Run one unification algorithm on an equation set");
  unify->add_option("equations", u.eqs, "Equations, or @file")->required();
  unify->add_option("--algo", u.algo)->check(CLI::IsMember({"robinson", "mma", "mma-minus"}))->capture_default_str();
  unify->add_option("--strategy", u.strategy, "leftmost|rightmost|bind-eager|adversarial|random|random:N")
      ->capture_default_str();
  unify->add_option("--mode", u.mode)->check(CLI::IsMember({"restricted", "unrestricted"}))->capture_default_str();
  unify->add_option("--fuel", u.fuel)->capture_default_str();

  std::string eqs_arg;
  auto* nsto = app.add_subcommand("nsto", "Decide whether no run performs the occur-check");
  nsto->add_option("equations", eqs_arg, "Equations, or @file")->required();
  auto* ocf = app.add_subcommand("ocf-run", "Search for a run that never performs the occur-check");
  ocf->add_option("equations", eqs_arg, "Equations, or @file")->required();

  std::string eqs2_arg;
  std::size_t iequiv_depth = kDefaultUnfoldDepth;
  auto* iequiv = app.add_subcommand("iequiv", "Compare two equation sets over rational trees");
  iequiv->add_option("left", eqs_arg)->required();
  iequiv->add_option("right", eqs2_arg)->required();
  iequiv->add_option("--depth", iequiv_depth)->capture_default_str();

  DeriveArgs d;
  auto* der = app.add_subcommand("derive", "Build a bounded SLD tree");
  der->add_option("program", d.program, "Program file")->required()->check(CLI::ExistingFile);
  der->add_option("query", d.query)->required();
  der->add_option("--rule", d.rule, "leftmost|rightmost|round-robin|random|random:N")->capture_default_str();
  der->add_option("--depth", d.depth)->capture_default_str();
  der->add_option("--engine", d.engine)->check(CLI::IsMember({"mma", "mma-minus"}))->capture_default_str();
  der->add_flag("--report", d.report, "Check the derivation invariants");
  der->add_flag("--single", d.single, "Follow the first unifying clause only");

  TheoremArgs ta;
  auto* thm = app.add_subcommand("theorem-test", "Differential test of the variant without occur-check");
  thm->add_option("--count", ta.count)->capture_default_str();
  thm->add_option("--fuel", ta.fuel)->capture_default_str();

  std::string corpus_action;
  std::string corpus_name;
  auto* corpus = app.add_subcommand("corpus", "Embedded example programs");
  corpus->add_option("action", corpus_action)->required()->check(CLI::IsMember({"list", "show"}));
  corpus->add_option("name", corpus_name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*unify) return cmd_unify(g, u);
    if (*nsto) return cmd_nsto(g, eqs_arg);
    if (*ocf) return cmd_ocf_run(g, eqs_arg);
    if (*iequiv) return cmd_iequiv(g, eqs_arg, eqs2_arg, iequiv_depth);
    if (*der) return cmd_derive(g, d);
    if (*thm) return cmd_theorem_test(g, ta);
    if (*corpus) return cmd_corpus(g, corpus_action, corpus_name);
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
