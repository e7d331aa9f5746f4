#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "chc2vmt/horn.hpp"
#include "chc2vmt/oracle.hpp"
#include "chc2vmt/sysgen.hpp"
#include "chc2vmt/translate.hpp"
#include "chc2vmt/vmt.hpp"

namespace {

using namespace chc2vmt;

// Exit codes: 0 ok, 1 parse/validation, 2 nonlinear clause,
// 3 unsupported sort/logic, 4 oracle discrepancy, 5 budget exhausted.
constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitNonlinear = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitDiscrepancy = 4;
constexpr int kExitBudget = 5;

int exit_code_for(ErrKind k) {
  switch (k) {
    case ErrKind::NonlinearClause:
      return kExitNonlinear;
    case ErrKind::UnsupportedSort:
    case ErrKind::UnsupportedLogic:
      return kExitUnsupported;
    case ErrKind::BudgetExceeded:
      return kExitBudget;
    default:
      return kExitParse;
  }
}

struct RunConfig {
  std::string input = "-";
  std::string output;          // empty: stdout
  bool simplify = false;
  std::optional<std::string> query;
  std::string domain = "-8:8";
  int depth = 8;
  int k = 0;
  int random_count = 0;        // 0: check the input file
  std::uint64_t seed = 1;
  std::size_t max_facts = 1u << 20;
  std::size_t max_states = 1u << 21;
  std::string mutate_drop;     // "D:K": drop frame conjunct K of disjunct D
};

struct Input {
  std::string label;
  std::string text;
};

Input read_input(const std::string &path) {
  if (path == "-" || path.empty()) {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return {"<stdin>", ss.str()};
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(path + ": cannot read");
  std::ostringstream ss;
  ss << f.rdbuf();
  return {path, ss.str()};
}

void write_output(const RunConfig &cfg, const std::string &text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw std::runtime_error(cfg.output + ": cannot write");
  f << text;
}

bool parse_int64(const std::string &s, std::int64_t &out) {
  try {
    std::size_t used = 0;
    out = std::stoll(s, &used);
    return used == s.size() && !s.empty();
  } catch (...) {
    return false;
  }
}

Domain parse_domain(const std::string &s) {
  std::size_t colon = s.find(':');
  std::int64_t lo, hi;
  if (colon == std::string::npos || !parse_int64(s.substr(0, colon), lo) ||
      !parse_int64(s.substr(colon + 1), hi))
    throw std::runtime_error("malformed --domain, expected LO:HI");
  if (lo > hi) throw std::runtime_error("--domain bounds out of order");
  if (hi - lo + 1 > Domain::kMaxSize)
    throw std::runtime_error("--domain spans more than " +
                             std::to_string(Domain::kMaxSize) + " values");
  return Domain(lo, hi);
}

TransitionSystem prepare(const RunConfig &cfg, const HornSystem &sys) {
  TransitionSystem ts = translate_system(sys);
  if (cfg.simplify) ts = simplify_inline(ts);
  return ts;
}

void apply_mutate_drop(const RunConfig &cfg, TransitionSystem &ts) {
  std::size_t colon = cfg.mutate_drop.find(':');
  std::int64_t d, k;
  if (colon == std::string::npos ||
      !parse_int64(cfg.mutate_drop.substr(0, colon), d) ||
      !parse_int64(cfg.mutate_drop.substr(colon + 1), k))
    throw std::runtime_error("malformed --mutate-drop, expected DISJUNCT:CONJUNCT");
  if (d < 0 || d >= static_cast<std::int64_t>(ts.disjuncts.size()))
    throw std::runtime_error("--mutate-drop disjunct out of range");
  std::vector<TermPtr> frame = conjuncts_of(ts.disjuncts[d].frame);
  if (k < 0 || k >= static_cast<std::int64_t>(frame.size()))
    throw std::runtime_error("--mutate-drop frame conjunct out of range");
  frame.erase(frame.begin() + k);
  ts.disjuncts[d].frame = mk_and(std::move(frame));
}

int report_error(const Input &in, const Error &e) {
  Diagnostic d{e.kind(), e.span(), e.what()};
  std::cerr << "error: " << render_diag(in.label, in.text, d) << "\n";
  return exit_code_for(e.kind());
}

int cmd_translate(const RunConfig &cfg) {
  Input in = read_input(cfg.input);
  try {
    HornSystem sys = load_horn_text(in.text, cfg.query);
    write_output(cfg, emit_vmt(prepare(cfg, sys)));
  } catch (const Error &e) {
    return report_error(in, e);
  }
  return kExitOk;
}

int cmd_bmc(const RunConfig &cfg) {
  Input in = read_input(cfg.input);
  try {
    HornSystem sys = load_horn_text(in.text, cfg.query);
    write_output(cfg, emit_bmc(prepare(cfg, sys), cfg.k));
  } catch (const Error &e) {
    return report_error(in, e);
  }
  return kExitOk;
}

int cmd_stats(const RunConfig &cfg) {
  Input in = read_input(cfg.input);
  try {
    HornSystem sys = load_horn_text(in.text, cfg.query);
    TransitionSystem ts = prepare(cfg, sys);
    int sum_arity = 0;
    for (const Relation &r : sys.relations) sum_arity += r.arity();
    std::ostringstream out;
    out << "relations=" << sys.relations.size() << "\n"
        << "sum_arity=" << sum_arity << "\n"
        << "clauses=" << sys.clauses.size() << "\n"
        << "state_vars=" << ts.state_vars.size() << "\n"
        << "inputs=" << ts.input_vars.size() << "\n"
        << "disjuncts=" << ts.disjuncts.size() << "\n";
    write_output(cfg, out.str());
  } catch (const Error &e) {
    return report_error(in, e);
  }
  return kExitOk;
}

struct CheckOutcome {
  TransitionSystem ts;
  EquivalenceReport rep;
};

CheckOutcome check_one(const RunConfig &cfg, const HornSystem &sys,
                       const Domain &dom, const OracleLimits &limits) {
  CheckOutcome o;
  o.ts = prepare(cfg, sys);
  ReachOptions ropts;
  if (!cfg.mutate_drop.empty()) {
    apply_mutate_drop(cfg, o.ts);
    ropts.permissive_unset = true;  // mutants may read never-written places
  }
  o.rep = check_equivalence(sys, o.ts, dom, cfg.depth, ropts, limits);
  return o;
}

int cmd_check(const RunConfig &cfg) {
  Domain dom(0, 1);
  try {
    dom = parse_domain(cfg.domain);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  OracleLimits limits{cfg.max_facts, cfg.max_states};

  if (cfg.random_count > 0) {
    std::ostringstream out;
    int failures = 0;
    for (int i = 0; i < cfg.random_count; ++i) {
      std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
      HornSystem sys = random_system(seed);
      try {
        CheckOutcome o = check_one(cfg, sys, dom, limits);
        out << "system " << i << " seed=" << seed << " facts="
            << o.rep.facts.size() << " discrepancies=" << o.rep.discrepancies
            << (o.rep.ok() ? " ok" : " FAIL") << "\n";
        if (!o.rep.ok()) {
          ++failures;
          for (const FactReport &fr : o.rep.facts)
            if (fr.status != FactStatus::Ok)
              out << fact_report_line(o.ts, fr) << "\n";
        }
      } catch (const Error &e) {
        std::cerr << "error: seed " << seed << ": " << e.what() << "\n";
        return exit_code_for(e.kind());
      }
    }
    out << "systems=" << cfg.random_count << " failures=" << failures << "\n";
    write_output(cfg, out.str());
    return failures == 0 ? kExitOk : kExitDiscrepancy;
  }

  Input in = read_input(cfg.input);
  try {
    HornSystem sys = load_horn_text(in.text, cfg.query);
    CheckOutcome o = check_one(cfg, sys, dom, limits);
    std::ostringstream out;
    for (const FactReport &fr : o.rep.facts)
      out << fact_report_line(o.ts, fr) << "\n";
    out << "property " << (o.rep.property_holds ? "holds" : "violated") << "\n"
        << "facts=" << o.rep.facts.size()
        << " discrepancies=" << o.rep.discrepancies << "\n";
    write_output(cfg, out.str());
    return o.rep.ok() ? kExitOk : kExitDiscrepancy;
  } catch (const Error &e) {
    return report_error(in, e);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Linear constrained Horn clauses to VMT transition systems"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_input = [&](CLI::App *sub) {
    sub->add_option("input", cfg.input, "SMT-LIB HORN file, or - for stdin");
    sub->add_option("--query", cfg.query,
                    "use this declared 0-ary relation as the query target");
    sub->add_flag("--simplify", cfg.simplify,
                  "inline place=input guard equalities");
  };

  CLI::App *tr = app.add_subcommand("translate", "emit the VMT rendering");
  add_input(tr);
  tr->add_option("-o", cfg.output, "write to file instead of stdout");

  CLI::App *ck = app.add_subcommand(
      "check", "compare bounded derivation against bounded reachability");
  add_input(ck);
  ck->add_option("-o", cfg.output, "write to file instead of stdout");
  ck->add_option("--domain", cfg.domain, "value range LO:HI (default -8:8)");
  ck->add_option("--depth", cfg.depth, "bound on derivation depth / steps");
  ck->add_option("--random", cfg.random_count,
                 "check N seeded random systems instead of a file");
  ck->add_option("--seed", cfg.seed, "base seed for --random");
  ck->add_option("--max-facts", cfg.max_facts, "fact budget");
  ck->add_option("--max-states", cfg.max_states, "state budget");
  ck->add_option("--mutate-drop", cfg.mutate_drop,
                 "testing hook: drop frame conjunct K of disjunct D (D:K)");

  CLI::App *bm = app.add_subcommand("bmc", "emit a k-step unrolling");
  add_input(bm);
  bm->add_option("-o", cfg.output, "write to file instead of stdout");
  bm->add_option("--k", cfg.k, "number of transition steps")->required();

  CLI::App *st = app.add_subcommand("stats", "print size counters");
  add_input(st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (tr->parsed()) return cmd_translate(cfg);
    if (ck->parsed()) return cmd_check(cfg);
    if (bm->parsed()) return cmd_bmc(cfg);
    if (st->parsed()) return cmd_stats(cfg);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
