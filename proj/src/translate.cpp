#include "chc2vmt/translate.hpp"

#include <algorithm>
#include <unordered_map>

namespace chc2vmt {

TermPtr TransitionDisjunct::formula() const {
  std::vector<TermPtr> parts;
  for (const TermPtr &t : {guard, update, frame})
    for (const TermPtr &c : conjuncts_of(t)) parts.push_back(c);
  return mk_and(std::move(parts));
}

int TransitionSystem::flag_ordinal(int relation) const {
  assert(relation >= 0 && relation < static_cast<int>(relations.size()));
  return relation;  // flags come first, in relation order
}

int TransitionSystem::place_ordinal(int relation, int place_index) const {
  assert(place_index >= 1 && place_index <= relations[relation].arity());
  int base = static_cast<int>(relations.size());
  for (int r = 0; r < relation; ++r) base += relations[r].arity();
  return base + place_index - 1;
}

int TransitionSystem::input_index(int clause_id, const std::string &var) const {
  for (const InputVar &iv : input_vars) {
    if (iv.clause_id > clause_id) break;  // sorted by (clause, binder order)
    if (iv.clause_id == clause_id && iv.var_name == var) return iv.index;
  }
  return -1;
}

void build_state_vars(const HornSystem &sys, TransitionSystem &ts) {
  ts.state_vars.clear();
  ts.input_vars.clear();
  for (const Relation &r : sys.relations) {
    StateVar v;
    v.kind = StateVar::Kind::RelFlag;
    v.relation = r.index;
    v.sort = Sort::Bool;
    v.ordinal = static_cast<int>(ts.state_vars.size());
    v.name = "flag." + r.name;
    ts.state_vars.push_back(std::move(v));
  }
  for (const Relation &r : sys.relations) {
    for (int i = 1; i <= r.arity(); ++i) {
      StateVar v;
      v.kind = StateVar::Kind::Place;
      v.relation = r.index;
      v.place_index = i;
      v.sort = r.param_sorts[i - 1];
      v.ordinal = static_cast<int>(ts.state_vars.size());
      v.name = "place." + r.name + "." + std::to_string(i);
      ts.state_vars.push_back(std::move(v));
    }
  }
  for (const HornClause &cl : sys.clauses) {
    for (const QVar &q : cl.qvars) {
      InputVar iv;
      iv.clause_id = cl.id;
      iv.var_name = q.name;
      iv.sort = q.sort;
      iv.index = static_cast<int>(ts.input_vars.size());
      iv.name = "in." + std::to_string(cl.id) + "." + q.name;
      ts.input_vars.push_back(std::move(iv));
    }
  }
}

TermPtr translate_term(const TransitionSystem &ts, int clause_id,
                       const TermPtr &t) {
  switch (t->kind()) {
    case TermKind::BoolLit:
    case TermKind::IntLit:
      return t;
    case TermKind::BoundVar: {
      int ix = ts.input_index(clause_id, t->var_name());
      assert(ix >= 0 && "clause variable without an input");
      return Term::mk_input(ix, t->sort());
    }
    case TermKind::RelAtom: {
      int rel = t->index();
      std::vector<TermPtr> conj;
      conj.push_back(Term::mk_state(ts.flag_ordinal(rel), Sort::Bool));
      for (std::size_t i = 0; i < t->args().size(); ++i) {
        int po = ts.place_ordinal(rel, static_cast<int>(i) + 1);
        conj.push_back(mk_eq(Term::mk_state(po, ts.state_vars[po].sort),
                             translate_term(ts, clause_id, t->args()[i])));
      }
      return mk_and(std::move(conj));
    }
    case TermKind::App: {
      std::vector<TermPtr> args;
      args.reserve(t->args().size());
      for (const TermPtr &a : t->args())
        args.push_back(translate_term(ts, clause_id, a));
      return Term::mk_app(t->op(), std::move(args));
    }
    case TermKind::StateVar:
    case TermKind::PrimedStateVar:
    case TermKind::InputVar:
      assert(false && "clause term already mentions transition-system variables");
      return t;
  }
  return t;
}

TermPtr prime(const TermPtr &t) {
  switch (t->kind()) {
    case TermKind::StateVar:
      return Term::mk_primed(t->index(), t->sort());
    case TermKind::PrimedStateVar:
      assert(false && "prime applied twice");
      return t;
    case TermKind::App: {
      std::vector<TermPtr> args;
      args.reserve(t->args().size());
      for (const TermPtr &a : t->args()) args.push_back(prime(a));
      return Term::mk_app(t->op(), std::move(args));
    }
    default:
      return t;
  }
}

TermPtr preserve(const TransitionSystem &ts, const std::vector<int> &ordinals) {
  std::vector<int> sorted = ordinals;
  std::sort(sorted.begin(), sorted.end());
  std::vector<TermPtr> eqs;
  eqs.reserve(sorted.size());
  for (int o : sorted) {
    Sort s = ts.state_vars[o].sort;
    eqs.push_back(mk_eq(Term::mk_primed(o, s), Term::mk_state(o, s)));
  }
  return mk_and(std::move(eqs));
}

TransitionDisjunct translate_clause(const TransitionSystem &ts,
                                    const HornClause &clause) {
  assert(clause.head && clause.head->kind() == TermKind::RelAtom);
  TransitionDisjunct d;
  d.source_clause = clause.id;

  std::vector<TermPtr> guard_parts;
  if (clause.body_atom)
    for (const TermPtr &c :
         conjuncts_of(translate_term(ts, clause.id, clause.body_atom)))
      guard_parts.push_back(c);
  for (const TermPtr &c :
       conjuncts_of(translate_term(ts, clause.id, clause.constraint)))
    guard_parts.push_back(c);
  d.guard = mk_and(std::move(guard_parts));

  d.update = prime(translate_term(ts, clause.id, clause.head));

  int head_rel = clause.head->index();
  std::vector<int> owned;
  owned.push_back(ts.flag_ordinal(head_rel));
  for (int i = 1; i <= ts.relations[head_rel].arity(); ++i)
    owned.push_back(ts.place_ordinal(head_rel, i));
  std::vector<int> rest;
  for (const StateVar &v : ts.state_vars)
    if (std::find(owned.begin(), owned.end(), v.ordinal) == owned.end())
      rest.push_back(v.ordinal);
  d.frame = preserve(ts, rest);
  return d;
}

TransitionSystem translate_system(const HornSystem &sys) {
  TransitionSystem ts;
  ts.relations = sys.relations;
  ts.query_relation = sys.query_relation;
  build_state_vars(sys, ts);

  std::vector<TermPtr> off;
  for (const Relation &r : sys.relations)
    off.push_back(mk_not(Term::mk_state(ts.flag_ordinal(r.index), Sort::Bool)));
  ts.init = mk_and(std::move(off));
  ts.property =
      mk_not(Term::mk_state(ts.flag_ordinal(sys.query_relation), Sort::Bool));

  for (const HornClause &cl : sys.clauses)
    ts.disjuncts.push_back(translate_clause(ts, cl));
  return ts;
}

namespace {

TermPtr subst_inputs(const TermPtr &t,
                     const std::unordered_map<int, TermPtr> &map) {
  if (t->kind() == TermKind::InputVar) {
    auto it = map.find(t->index());
    return it == map.end() ? t : it->second;
  }
  if (t->args().empty()) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args().size());
  for (const TermPtr &a : t->args()) args.push_back(subst_inputs(a, map));
  if (t->kind() == TermKind::App) return Term::mk_app(t->op(), std::move(args));
  return t;
}

}  // namespace

TransitionSystem simplify_inline(const TransitionSystem &ts) {
  TransitionSystem out = ts;
  for (TransitionDisjunct &d : out.disjuncts) {
    std::vector<TermPtr> conj = conjuncts_of(d.guard);
    std::unordered_map<int, TermPtr> map;  // input index -> place variable
    std::vector<bool> drop(conj.size(), false);
    for (std::size_t i = 0; i < conj.size(); ++i) {
      const TermPtr &c = conj[i];
      if (c->kind() != TermKind::App || c->op() != Op::Eq ||
          c->args().size() != 2)
        continue;
      const TermPtr &lhs = c->args()[0];
      const TermPtr &rhs = c->args()[1];
      if (lhs->kind() != TermKind::StateVar ||
          out.state_vars[lhs->index()].kind != StateVar::Kind::Place)
        continue;
      if (rhs->kind() != TermKind::InputVar || map.count(rhs->index()))
        continue;
      map.emplace(rhs->index(), lhs);
      drop[i] = true;
    }
    if (map.empty()) continue;
    std::vector<TermPtr> kept;
    for (std::size_t i = 0; i < conj.size(); ++i)
      if (!drop[i]) kept.push_back(subst_inputs(conj[i], map));
    d.guard = mk_and(std::move(kept));
    d.update = subst_inputs(d.update, map);
  }
  return out;
}

}  // namespace chc2vmt
