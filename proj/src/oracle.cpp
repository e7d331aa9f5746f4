#include "chc2vmt/oracle.hpp"

#include <algorithm>
#include <deque>

namespace chc2vmt {

Domain::Domain(std::int64_t lo_, std::int64_t hi_) : lo(lo_), hi(hi_) {
  assert(lo <= hi);
  assert(hi - lo + 1 <= kMaxSize);
}

std::size_t ConcreteStateHash::operator()(const ConcreteState &s) const {
  std::size_t h = 1469598103934665603ull;  // FNV-1a
  for (std::int64_t v : s.vals) {
    for (int b = 0; b < 8; ++b) {
      h ^= static_cast<std::size_t>(v >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return h;
}

namespace {

[[noreturn]] void eval_fail(ErrKind k, const char *msg) {
  throw Error(k, {0, 0}, msg);
}

std::int64_t read_var(const std::vector<std::int64_t> *table, int ix,
                      const char *what) {
  if (table == nullptr || ix < 0 || ix >= static_cast<int>(table->size()))
    eval_fail(ErrKind::UnassignedVariable,
              "variable has no binding in this environment");
  std::int64_t v = (*table)[ix];
  if (v == ConcreteState::kUnset)
    throw Error(ErrKind::UnsetRead,
                {0, 0}, std::string(what) + " read before first write");
  return v;
}

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    eval_fail(ErrKind::EvalOverflow, "arithmetic exceeds evaluation range");
  return r;
}

std::int64_t sub_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    eval_fail(ErrKind::EvalOverflow, "arithmetic exceeds evaluation range");
  return r;
}

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    eval_fail(ErrKind::EvalOverflow, "arithmetic exceeds evaluation range");
  return r;
}

}  // namespace

std::int64_t eval_ground(const TermPtr &t, const Env &env) {
  switch (t->kind()) {
    case TermKind::BoolLit:
      return t->bool_value() ? 1 : 0;
    case TermKind::IntLit: {
      const mpz_class &v = t->int_value();
      if (!v.fits_slong_p())
        eval_fail(ErrKind::EvalOverflow, "literal exceeds evaluation range");
      return static_cast<std::int64_t>(v.get_si());
    }
    case TermKind::BoundVar: {
      if (env.var_slots == nullptr)
        eval_fail(ErrKind::UnassignedVariable,
                  "clause variable outside a clause environment");
      auto it = env.var_slots->find(t->var_name());
      if (it == env.var_slots->end())
        eval_fail(ErrKind::UnassignedVariable,
                  "clause variable has no binding");
      return read_var(env.slots, it->second, "clause variable");
    }
    case TermKind::StateVar:
      return read_var(env.state, t->index(), "place");
    case TermKind::PrimedStateVar:
      eval_fail(ErrKind::UnassignedVariable,
                "primed variable in an evaluated term");
    case TermKind::InputVar:
      return read_var(env.inputs, t->index(), "input");
    case TermKind::RelAtom:
      eval_fail(ErrKind::UnassignedVariable,
                "relation atom in an evaluated term");
    case TermKind::App:
      break;
  }

  const std::vector<TermPtr> &args = t->args();
  auto ev = [&](std::size_t i) { return eval_ground(args[i], env); };
  switch (t->op()) {
    case Op::And:
      for (std::size_t i = 0; i < args.size(); ++i)
        if (ev(i) == 0) return 0;
      return 1;
    case Op::Or:
      for (std::size_t i = 0; i < args.size(); ++i)
        if (ev(i) != 0) return 1;
      return 0;
    case Op::Not:
      return ev(0) == 0 ? 1 : 0;
    case Op::Implies:
      for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (ev(i) == 0) return 1;
      return ev(args.size() - 1);
    case Op::Ite:
      return ev(0) != 0 ? ev(1) : ev(2);
    case Op::Add: {
      std::int64_t acc = ev(0);
      for (std::size_t i = 1; i < args.size(); ++i)
        acc = add_checked(acc, ev(i));
      return acc;
    }
    case Op::Sub: {
      std::int64_t acc = ev(0);
      for (std::size_t i = 1; i < args.size(); ++i)
        acc = sub_checked(acc, ev(i));
      return acc;
    }
    case Op::Mul: {
      std::int64_t acc = ev(0);
      for (std::size_t i = 1; i < args.size(); ++i)
        acc = mul_checked(acc, ev(i));
      return acc;
    }
    case Op::Neg:
      return sub_checked(0, ev(0));
    case Op::Lt: return ev(0) < ev(1) ? 1 : 0;
    case Op::Le: return ev(0) <= ev(1) ? 1 : 0;
    case Op::Gt: return ev(0) > ev(1) ? 1 : 0;
    case Op::Ge: return ev(0) >= ev(1) ? 1 : 0;
    case Op::Eq: {
      std::int64_t first = ev(0);
      for (std::size_t i = 1; i < args.size(); ++i)
        if (ev(i) != first) return 0;
      return 1;
    }
    case Op::Distinct: {
      std::vector<std::int64_t> vs(args.size());
      for (std::size_t i = 0; i < args.size(); ++i) vs[i] = ev(i);
      for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
          if (vs[i] == vs[j]) return 0;
      return 1;
    }
  }
  eval_fail(ErrKind::UnassignedVariable, "unhandled operator");
}

namespace {

//! Iterates all value vectors for the given sorts over dom.
//! `fixed[i]` pins slot i; calls fn(values) for each combination.
template <typename Fn>
void enumerate_values(const Domain &dom, const std::vector<Sort> &sorts,
                      const std::vector<std::optional<std::int64_t>> &fixed,
                      Fn &&fn) {
  std::vector<std::int64_t> vals(sorts.size());
  std::vector<std::size_t> free_slots;
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    if (fixed[i])
      vals[i] = *fixed[i];
    else
      free_slots.push_back(i);
  }
  // odometer over the free slots
  std::vector<std::int64_t> cur(free_slots.size());
  auto lo_of = [&](std::size_t k) {
    return sorts[free_slots[k]] == Sort::Bool ? 0 : dom.lo;
  };
  auto hi_of = [&](std::size_t k) {
    return sorts[free_slots[k]] == Sort::Bool ? 1 : dom.hi;
  };
  for (std::size_t k = 0; k < free_slots.size(); ++k) cur[k] = lo_of(k);
  for (;;) {
    for (std::size_t k = 0; k < free_slots.size(); ++k)
      vals[free_slots[k]] = cur[k];
    fn(vals);
    std::size_t k = 0;
    for (; k < free_slots.size(); ++k) {
      if (cur[k] < hi_of(k)) {
        ++cur[k];
        break;
      }
      cur[k] = lo_of(k);
    }
    if (k == free_slots.size()) break;
  }
}

struct CompiledClause {
  const HornClause *clause;
  std::vector<Sort> qvar_sorts;
  std::unordered_map<std::string, int> slot_of;  // qvar name -> slot
  // body atom arg handling: plain-variable positions bind from the fact
  // tuple, everything else is checked by evaluation afterwards
  std::vector<int> bind_slot;      // per body-arg: slot or -1
  std::vector<TermPtr> check_arg;  // per body-arg: term or null
};

CompiledClause compile_clause(const HornClause &cl) {
  CompiledClause cc;
  cc.clause = &cl;
  for (std::size_t i = 0; i < cl.qvars.size(); ++i) {
    cc.qvar_sorts.push_back(cl.qvars[i].sort);
    cc.slot_of.emplace(cl.qvars[i].name, static_cast<int>(i));
  }
  if (cl.body_atom) {
    for (const TermPtr &arg : cl.body_atom->args()) {
      if (arg->kind() == TermKind::BoundVar) {
        cc.bind_slot.push_back(cc.slot_of.at(arg->var_name()));
        cc.check_arg.push_back(nullptr);
      } else {
        cc.bind_slot.push_back(-1);
        cc.check_arg.push_back(arg);
      }
    }
  }
  return cc;
}

}  // namespace

DeriveResult derive(const HornSystem &sys, const Domain &dom, int max_depth,
                    const OracleLimits &limits) {
  DeriveResult res;
  if (max_depth < 1) return res;

  std::vector<CompiledClause> compiled;
  compiled.reserve(sys.clauses.size());
  for (const HornClause &cl : sys.clauses) compiled.push_back(compile_clause(cl));

  // frontier[r]: tuples of relation r first derived in the previous round
  std::vector<std::vector<std::vector<std::int64_t>>> frontier(
      sys.relations.size());

  auto fire = [&](const CompiledClause &cc,
                  const std::vector<std::int64_t> &slots, int depth,
                  std::vector<std::vector<std::vector<std::int64_t>>> &next) {
    const HornClause &cl = *cc.clause;
    Env env;
    env.var_slots = &cc.slot_of;
    env.slots = &slots;
    if (eval_ground(cl.constraint, env) == 0) return;
    const Relation &hr = sys.relations[cl.head->index()];
    std::vector<std::int64_t> tuple(hr.arity());
    for (int i = 0; i < hr.arity(); ++i) {
      tuple[i] = eval_ground(cl.head->args()[i], env);
      if (!dom.contains(hr.param_sorts[i], tuple[i])) return;  // pruned
    }
    FactKey key{hr.index, tuple};
    if (res.facts.emplace(std::move(key), depth).second) {
      if (res.facts.size() > limits.max_facts)
        throw Error(ErrKind::BudgetExceeded, {0, 0},
                    "fact budget exceeded (" +
                        std::to_string(limits.max_facts) + ")");
      next[hr.index].push_back(std::move(tuple));
    }
  };

  // round 1: fact clauses
  {
    std::vector<std::vector<std::vector<std::int64_t>>> next(
        sys.relations.size());
    for (const CompiledClause &cc : compiled) {
      if (cc.clause->body_atom) continue;
      std::vector<std::optional<std::int64_t>> fixed(cc.qvar_sorts.size());
      enumerate_values(dom, cc.qvar_sorts, fixed,
                       [&](const std::vector<std::int64_t> &slots) {
                         fire(cc, slots, 1, next);
                       });
    }
    bool any = std::any_of(next.begin(), next.end(),
                           [](const auto &v) { return !v.empty(); });
    if (any) res.rounds = 1;
    frontier = std::move(next);
  }

  for (int depth = 2; depth <= max_depth; ++depth) {
    std::vector<std::vector<std::vector<std::int64_t>>> next(
        sys.relations.size());
    bool any = false;
    for (const CompiledClause &cc : compiled) {
      if (!cc.clause->body_atom) continue;
      int rel = cc.clause->body_atom->index();
      for (const std::vector<std::int64_t> &fact : frontier[rel]) {
        std::vector<std::optional<std::int64_t>> fixed(cc.qvar_sorts.size());
        bool consistent = true;
        for (std::size_t i = 0; i < fact.size() && consistent; ++i) {
          int slot = cc.bind_slot[i];
          if (slot < 0) continue;
          if (fixed[slot] && *fixed[slot] != fact[i])
            consistent = false;  // same variable, two positions, different values
          else
            fixed[slot] = fact[i];
        }
        if (!consistent) continue;
        enumerate_values(
            dom, cc.qvar_sorts, fixed,
            [&](const std::vector<std::int64_t> &slots) {
              Env env;
              env.var_slots = &cc.slot_of;
              env.slots = &slots;
              for (std::size_t i = 0; i < fact.size(); ++i)
                if (cc.check_arg[i] &&
                    eval_ground(cc.check_arg[i], env) != fact[i])
                  return;
              fire(cc, slots, depth, next);
            });
      }
    }
    for (const auto &v : next) any = any || !v.empty();
    if (any) res.rounds = depth;
    frontier = std::move(next);
    if (!any) break;
  }
  return res;
}

namespace {

//! Disjunct lowered to an executable form: one assignment per primed
//! variable. Frame copies preserve Unset; update expressions read their
//! operands (Unset there is a write-before-read violation).
struct CompiledDisjunct {
  const TransitionDisjunct *src;
  TermPtr guard;
  std::vector<int> used_inputs;  // ascending input indices
  struct Assign {
    int target;
    enum Kind { SetTrue, SetFalse, Copy, Expr } kind;
    int copy_from = -1;
    TermPtr rhs;
  };
  std::vector<Assign> assigns;
  std::vector<int> unconstrained;  // ordinals with no assignment
};

void collect_inputs(const TermPtr &t, std::vector<int> &out) {
  if (t->kind() == TermKind::InputVar) {
    out.push_back(t->index());
    return;
  }
  for (const TermPtr &a : t->args()) collect_inputs(a, out);
}

CompiledDisjunct compile_disjunct(const TransitionSystem &ts,
                                  const TransitionDisjunct &d) {
  CompiledDisjunct cd;
  cd.src = &d;
  cd.guard = d.guard;

  std::vector<bool> assigned(ts.state_vars.size(), false);
  auto add = [&](CompiledDisjunct::Assign a) {
    assert(!assigned[a.target] && "state variable assigned twice");
    assigned[a.target] = true;
    cd.assigns.push_back(std::move(a));
  };

  auto lower = [&](const TermPtr &part, bool is_frame) {
    for (const TermPtr &c : conjuncts_of(part)) {
      if (c->kind() == TermKind::PrimedStateVar) {
        add({c->index(), CompiledDisjunct::Assign::SetTrue, -1, nullptr});
      } else if (c->kind() == TermKind::App && c->op() == Op::Not &&
                 c->args()[0]->kind() == TermKind::PrimedStateVar) {
        add({c->args()[0]->index(), CompiledDisjunct::Assign::SetFalse, -1,
             nullptr});
      } else if (c->kind() == TermKind::App && c->op() == Op::Eq &&
                 c->args().size() == 2 &&
                 c->args()[0]->kind() == TermKind::PrimedStateVar) {
        const TermPtr &rhs = c->args()[1];
        if (is_frame) {
          assert(rhs->kind() == TermKind::StateVar &&
                 "frame right-hand side must be a state variable");
          add({c->args()[0]->index(), CompiledDisjunct::Assign::Copy,
               rhs->index(), nullptr});
        } else {
          add({c->args()[0]->index(), CompiledDisjunct::Assign::Expr, -1, rhs});
        }
      } else {
        assert(false && "disjunct conjunct is not an assignment shape");
      }
    }
  };
  lower(d.update, false);
  lower(d.frame, true);

  for (const StateVar &v : ts.state_vars)
    if (!assigned[v.ordinal]) cd.unconstrained.push_back(v.ordinal);

  collect_inputs(d.guard, cd.used_inputs);
  for (const auto &a : cd.assigns)
    if (a.rhs) collect_inputs(a.rhs, cd.used_inputs);
  std::sort(cd.used_inputs.begin(), cd.used_inputs.end());
  cd.used_inputs.erase(
      std::unique(cd.used_inputs.begin(), cd.used_inputs.end()),
      cd.used_inputs.end());
  return cd;
}

}  // namespace

ReachResult reach(const TransitionSystem &ts, const Domain &dom, int max_steps,
                  const ReachOptions &opts, const OracleLimits &limits) {
  ReachResult res;

  std::vector<CompiledDisjunct> compiled;
  compiled.reserve(ts.disjuncts.size());
  for (const TransitionDisjunct &d : ts.disjuncts)
    compiled.push_back(compile_disjunct(ts, d));

  const std::size_t nvars = ts.state_vars.size();
  std::vector<ConcreteState> frontier;

  auto admit = [&](ConcreteState s, int depth,
                   std::vector<ConcreteState> &next,
                   const ConcreteState *pred) {
    auto [it, fresh] = res.states.emplace(std::move(s), depth);
    if (!fresh) return;
    if (res.states.size() > limits.max_states)
      throw Error(ErrKind::BudgetExceeded, {0, 0},
                  "state budget exceeded (" +
                      std::to_string(limits.max_states) + ")");
    if (opts.record_edges && pred)
      res.edges.emplace_back(*pred, it->first);
    next.push_back(it->first);
  };

  {
    std::vector<ConcreteState> seed;
    ConcreteState init;
    init.vals.assign(nvars, 0);
    for (const StateVar &v : ts.state_vars)
      if (v.kind == StateVar::Kind::Place) init.vals[v.ordinal] = ConcreteState::kUnset;
    if (!opts.enumerate_initial_places) {
      admit(std::move(init), 0, seed, nullptr);
    } else {
      std::vector<Sort> place_sorts;
      std::vector<int> place_ords;
      for (const StateVar &v : ts.state_vars)
        if (v.kind == StateVar::Kind::Place) {
          place_sorts.push_back(v.sort);
          place_ords.push_back(v.ordinal);
        }
      std::vector<std::optional<std::int64_t>> fixed(place_sorts.size());
      enumerate_values(dom, place_sorts, fixed,
                       [&](const std::vector<std::int64_t> &vals) {
                         ConcreteState s = init;
                         for (std::size_t i = 0; i < place_ords.size(); ++i)
                           s.vals[place_ords[i]] = vals[i];
                         admit(std::move(s), 0, seed, nullptr);
                       });
    }
    frontier = std::move(seed);
  }

  std::vector<std::int64_t> input_vals(ts.input_vars.size(), 0);
  std::vector<Sort> input_sorts;
  for (const InputVar &iv : ts.input_vars) input_sorts.push_back(iv.sort);

  for (int depth = 0; depth < max_steps && !frontier.empty(); ++depth) {
    std::vector<ConcreteState> next;
    for (const ConcreteState &state : frontier) {
      for (const CompiledDisjunct &cd : compiled) {
        // enumerate only the inputs this disjunct mentions
        std::vector<Sort> sorts;
        for (int ix : cd.used_inputs) sorts.push_back(input_sorts[ix]);
        std::vector<std::optional<std::int64_t>> fixed(sorts.size());
        enumerate_values(dom, sorts, fixed, [&](const std::vector<std::int64_t>
                                                    &vals) {
          for (std::size_t i = 0; i < vals.size(); ++i)
            input_vals[cd.used_inputs[i]] = vals[i];
          Env env;
          env.state = &state.vals;
          env.inputs = &input_vals;
          ConcreteState succ;
          succ.vals.assign(nvars, ConcreteState::kUnset);
          try {
            if (eval_ground(cd.guard, env) == 0) return;
            for (const auto &a : cd.assigns) {
              switch (a.kind) {
                case CompiledDisjunct::Assign::SetTrue:
                  succ.vals[a.target] = 1;
                  break;
                case CompiledDisjunct::Assign::SetFalse:
                  succ.vals[a.target] = 0;
                  break;
                case CompiledDisjunct::Assign::Copy:
                  succ.vals[a.target] = state.vals[a.copy_from];
                  break;
                case CompiledDisjunct::Assign::Expr: {
                  std::int64_t v = eval_ground(a.rhs, env);
                  if (!dom.contains(ts.state_vars[a.target].sort, v))
                    return;  // out-of-domain successor value: pruned
                  succ.vals[a.target] = v;
                  break;
                }
              }
            }
          } catch (const Error &e) {
            if (e.kind() == ErrKind::UnsetRead && opts.permissive_unset) {
              ++res.unset_skips;
              return;
            }
            throw;
          }
          if (cd.unconstrained.empty()) {
            admit(std::move(succ), depth + 1, next, &state);
          } else {
            // a (mutated) disjunct that leaves variables unconstrained:
            // every domain value is a legal successor
            std::vector<Sort> usorts;
            for (int o : cd.unconstrained) usorts.push_back(ts.state_vars[o].sort);
            std::vector<std::optional<std::int64_t>> ufixed(usorts.size());
            enumerate_values(dom, usorts, ufixed,
                             [&](const std::vector<std::int64_t> &uvals) {
                               ConcreteState s2 = succ;
                               for (std::size_t i = 0; i < uvals.size(); ++i)
                                 s2.vals[cd.unconstrained[i]] = uvals[i];
                               admit(std::move(s2), depth + 1, next, &state);
                             });
          }
        });
      }
    }
    if (!next.empty()) res.rounds = depth + 1;
    frontier = std::move(next);
  }
  return res;
}

std::map<FactKey, int> witnessed_facts(const TransitionSystem &ts,
                                       const Domain &dom,
                                       const ReachResult &r) {
  std::map<FactKey, int> out;
  for (const auto &[state, depth] : r.states) {
    for (const Relation &rel : ts.relations) {
      if (state.vals[ts.flag_ordinal(rel.index)] != 1) continue;
      std::vector<Sort> sorts = rel.param_sorts;
      std::vector<std::optional<std::int64_t>> fixed(sorts.size());
      bool possible = true;
      for (int i = 0; i < rel.arity(); ++i) {
        std::int64_t v = state.vals[ts.place_ordinal(rel.index, i + 1)];
        if (v == ConcreteState::kUnset) continue;  // wildcard: any value
        if (!dom.contains(sorts[i], v)) { possible = false; break; }
        fixed[i] = v;
      }
      if (!possible) continue;
      enumerate_values(dom, sorts, fixed,
                       [&](const std::vector<std::int64_t> &tuple) {
                         FactKey key{rel.index, tuple};
                         auto [it, fresh] = out.emplace(std::move(key), depth);
                         if (!fresh && depth < it->second) it->second = depth;
                       });
    }
  }
  return out;
}

EquivalenceReport check_equivalence(const HornSystem &sys,
                                    const TransitionSystem &ts,
                                    const Domain &dom, int bound,
                                    const ReachOptions &ropts,
                                    const OracleLimits &limits) {
  EquivalenceReport rep;
  rep.derive_result = derive(sys, dom, bound, limits);
  rep.reach_result = reach(ts, dom, bound, ropts, limits);
  std::map<FactKey, int> reached = witnessed_facts(ts, dom, rep.reach_result);

  int qflag = ts.flag_ordinal(ts.query_relation);
  for (const auto &[state, depth] : rep.reach_result.states) {
    (void)depth;
    if (state.vals[qflag] == 1) {
      rep.property_holds = false;
      break;
    }
  }

  auto d_it = rep.derive_result.facts.begin();
  auto r_it = reached.begin();
  auto push = [&](const FactKey &key, int dd, int rd) {
    FactReport fr;
    fr.fact = key;
    fr.derive_depth = dd;
    fr.reach_depth = rd;
    if (dd < 0)
      fr.status = FactStatus::NotDerived;
    else if (rd < 0)
      fr.status = FactStatus::NotReached;
    else if (dd != rd)
      fr.status = FactStatus::DepthMismatch;
    else
      fr.status = FactStatus::Ok;
    if (fr.status != FactStatus::Ok) ++rep.discrepancies;
    rep.facts.push_back(std::move(fr));
  };
  while (d_it != rep.derive_result.facts.end() || r_it != reached.end()) {
    if (r_it == reached.end() ||
        (d_it != rep.derive_result.facts.end() && d_it->first < r_it->first)) {
      push(d_it->first, d_it->second, -1);
      ++d_it;
    } else if (d_it == rep.derive_result.facts.end() ||
               r_it->first < d_it->first) {
      push(r_it->first, -1, r_it->second);
      ++r_it;
    } else {
      push(d_it->first, d_it->second, r_it->second);
      ++d_it;
      ++r_it;
    }
  }
  return rep;
}

std::string fact_report_line(const TransitionSystem &ts, const FactReport &fr) {
  const Relation &rel = ts.relations[fr.fact.first];
  std::string line = "fact " + rel.name + "(";
  for (std::size_t i = 0; i < fr.fact.second.size(); ++i) {
    if (i) line += ",";
    if (rel.param_sorts[i] == Sort::Bool)
      line += fr.fact.second[i] ? "true" : "false";
    else
      line += std::to_string(fr.fact.second[i]);
  }
  line += ") derive=";
  line += fr.derive_depth < 0 ? "-" : std::to_string(fr.derive_depth);
  line += " reach=";
  line += fr.reach_depth < 0 ? "-" : std::to_string(fr.reach_depth);
  line += " ";
  switch (fr.status) {
    case FactStatus::Ok: line += "ok"; break;
    case FactStatus::DepthMismatch: line += "depth-mismatch"; break;
    case FactStatus::NotReached: line += "not-reached"; break;
    case FactStatus::NotDerived: line += "not-derived"; break;
  }
  return line;
}

}  // namespace chc2vmt
