#include "chc2vmt/term.hpp"

#include <algorithm>

namespace chc2vmt {

const char *sort_name(Sort s) { return s == Sort::Bool ? "Bool" : "Int"; }

const char *op_name(Op op) {
  switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Neg: return "-";
    case Op::Mul: return "*";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::Eq: return "=";
    case Op::Distinct: return "distinct";
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Not: return "not";
    case Op::Implies: return "=>";
    case Op::Ite: return "ite";
  }
  return "?";
}

namespace {

struct TermAccess : Term {
  // Term's constructor is private; this gives the factories a door in.
  static std::shared_ptr<Term> blank() {
    return std::shared_ptr<Term>(new TermAccess());
  }
};

Sort app_result_sort(Op op, const std::vector<TermPtr> &args) {
  auto all_int = [&] {
    return std::all_of(args.begin(), args.end(),
                       [](const TermPtr &a) { return a->sort() == Sort::Int; });
  };
  auto all_bool = [&] {
    return std::all_of(args.begin(), args.end(),
                       [](const TermPtr &a) { return a->sort() == Sort::Bool; });
  };
  auto all_same = [&] {
    return std::all_of(args.begin(), args.end(), [&](const TermPtr &a) {
      return a->sort() == args[0]->sort();
    });
  };
  switch (op) {
    case Op::Add:
    case Op::Mul:
    case Op::Sub:
      assert(args.size() >= 2 && all_int());
      return Sort::Int;
    case Op::Neg:
      assert(args.size() == 1 && all_int());
      return Sort::Int;
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge:
      assert(args.size() == 2 && all_int());
      return Sort::Bool;
    case Op::Eq:
    case Op::Distinct:
      assert(args.size() >= 2 && all_same());
      return Sort::Bool;
    case Op::And:
    case Op::Or:
      assert(args.size() >= 2 && all_bool());
      return Sort::Bool;
    case Op::Implies:
      assert(args.size() >= 2 && all_bool());
      return Sort::Bool;
    case Op::Not:
      assert(args.size() == 1 && all_bool());
      return Sort::Bool;
    case Op::Ite:
      assert(args.size() == 3 && args[0]->sort() == Sort::Bool &&
             args[1]->sort() == args[2]->sort());
      return args[1]->sort();
  }
  assert(false && "unhandled op");
  return Sort::Bool;
}

}  // namespace

#define BLANK(var) auto var = TermAccess::blank()

TermPtr Term::mk_bool(bool v) {
  BLANK(t);
  t->kind_ = TermKind::BoolLit;
  t->sort_ = Sort::Bool;
  t->bval_ = v;
  return t;
}

TermPtr Term::mk_int(mpz_class v) {
  BLANK(t);
  t->kind_ = TermKind::IntLit;
  t->sort_ = Sort::Int;
  t->ival_ = std::move(v);
  return t;
}

TermPtr Term::mk_bound(std::string name, Sort sort) {
  BLANK(t);
  t->kind_ = TermKind::BoundVar;
  t->sort_ = sort;
  t->name_ = std::move(name);
  return t;
}

TermPtr Term::mk_state(int ordinal, Sort sort) {
  assert(ordinal >= 0);
  BLANK(t);
  t->kind_ = TermKind::StateVar;
  t->sort_ = sort;
  t->index_ = ordinal;
  return t;
}

TermPtr Term::mk_primed(int ordinal, Sort sort) {
  assert(ordinal >= 0);
  BLANK(t);
  t->kind_ = TermKind::PrimedStateVar;
  t->sort_ = sort;
  t->index_ = ordinal;
  return t;
}

TermPtr Term::mk_input(int input_index, Sort sort) {
  assert(input_index >= 0);
  BLANK(t);
  t->kind_ = TermKind::InputVar;
  t->sort_ = sort;
  t->index_ = input_index;
  return t;
}

TermPtr Term::mk_app(Op op, std::vector<TermPtr> args) {
  Sort s = app_result_sort(op, args);
  BLANK(t);
  t->kind_ = TermKind::App;
  t->sort_ = s;
  t->op_ = op;
  t->args_ = std::move(args);
  return t;
}

TermPtr Term::mk_rel_atom(const Relation &rel, std::vector<TermPtr> args) {
  assert(static_cast<int>(args.size()) == rel.arity());
  for (std::size_t i = 0; i < args.size(); ++i)
    assert(args[i]->sort() == rel.param_sorts[i]);
  BLANK(t);
  t->kind_ = TermKind::RelAtom;
  t->sort_ = Sort::Bool;
  t->index_ = rel.index;
  t->args_ = std::move(args);
  return t;
}

#undef BLANK

TermPtr mk_and(std::vector<TermPtr> conjuncts) {
  if (conjuncts.empty()) return Term::mk_bool(true);
  if (conjuncts.size() == 1) return conjuncts[0];
  return Term::mk_app(Op::And, std::move(conjuncts));
}

TermPtr mk_not(TermPtr t) { return Term::mk_app(Op::Not, {std::move(t)}); }

TermPtr mk_eq(TermPtr a, TermPtr b) {
  return Term::mk_app(Op::Eq, {std::move(a), std::move(b)});
}

std::vector<TermPtr> conjuncts_of(const TermPtr &t) {
  std::vector<TermPtr> out;
  if (t->kind() == TermKind::BoolLit && t->bool_value()) return out;
  if (t->kind() == TermKind::App && t->op() == Op::And) {
    for (const TermPtr &a : t->args()) {
      std::vector<TermPtr> sub = conjuncts_of(a);
      out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
  }
  out.push_back(t);
  return out;
}

bool term_equal(const TermPtr &a, const TermPtr &b) {
  if (a.get() == b.get()) return true;
  if (a->kind() != b->kind() || a->sort() != b->sort()) return false;
  switch (a->kind()) {
    case TermKind::BoolLit:
      return a->bool_value() == b->bool_value();
    case TermKind::IntLit:
      return a->int_value() == b->int_value();
    case TermKind::BoundVar:
      return a->var_name() == b->var_name();
    case TermKind::StateVar:
    case TermKind::PrimedStateVar:
    case TermKind::InputVar:
      return a->index() == b->index();
    case TermKind::App:
      if (a->op() != b->op()) return false;
      break;
    case TermKind::RelAtom:
      if (a->index() != b->index()) return false;
      break;
  }
  if (a->args().size() != b->args().size()) return false;
  for (std::size_t i = 0; i < a->args().size(); ++i)
    if (!term_equal(a->args()[i], b->args()[i])) return false;
  return true;
}

bool contains_rel_atom(const TermPtr &t) {
  if (t->kind() == TermKind::RelAtom) return true;
  for (const TermPtr &a : t->args())
    if (contains_rel_atom(a)) return true;
  return false;
}

void collect_bound_vars(const TermPtr &t, std::vector<std::string> &out) {
  if (t->kind() == TermKind::BoundVar) {
    if (std::find(out.begin(), out.end(), t->var_name()) == out.end())
      out.push_back(t->var_name());
    return;
  }
  for (const TermPtr &a : t->args()) collect_bound_vars(a, out);
}

}  // namespace chc2vmt
