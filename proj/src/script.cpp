#include "chc2vmt/script.hpp"

#include <cctype>

namespace chc2vmt {

namespace {

bool is_numeral(const std::string &s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void fail(ErrKind k, const SExpr &at, const std::string &msg) {
  throw Error(k, at.span, msg);
}

void expect_sort(const TermPtr &t, Sort s, const SExpr &at) {
  if (t->sort() != s)
    fail(ErrKind::SortMismatch, at,
         std::string("expected ") + sort_name(s) + ", got " +
             sort_name(t->sort()));
}

}  // namespace

std::optional<Sort> sort_of_name(std::string_view name) {
  if (name == "Bool") return Sort::Bool;
  if (name == "Int") return Sort::Int;
  return std::nullopt;
}

const TermPtr *Scope::lookup(const std::string &name) const {
  auto it = vars_.find(name);
  return it == vars_.end() ? nullptr : &it->second;
}

TermPtr parse_term(const SExpr &e, const Scope &scope,
                   const std::vector<Relation> &relations,
                   const std::unordered_map<std::string, int> &rels) {
  if (e.is_atom) {
    const std::string &a = e.atom;
    if (a == "true") return Term::mk_bool(true);
    if (a == "false") return Term::mk_bool(false);
    if (is_numeral(a)) return Term::mk_int(mpz_class(a));
    if (const TermPtr *bound = scope.lookup(a)) return *bound;
    if (auto it = rels.find(a); it != rels.end()) {
      const Relation &r = relations[it->second];
      if (r.arity() != 0)
        fail(ErrKind::ArityMismatch, e,
             "relation " + r.name + " expects " + std::to_string(r.arity()) +
                 " arguments, got 0");
      return Term::mk_rel_atom(r, {});
    }
    fail(ErrKind::UnknownIdentifier, e, "unknown identifier '" + a + "'");
  }

  if (e.children.empty())
    fail(ErrKind::UnknownIdentifier, e, "empty application");
  const SExpr &head = e.children[0];
  if (!head.is_atom)
    fail(ErrKind::UnknownIdentifier, head, "expected an operator or relation");
  const std::string &op = head.atom;
  const std::size_t argc = e.children.size() - 1;

  if (op == "forall" || op == "exists")
    fail(ErrKind::NestedQuantifier, e,
         "quantifier not allowed inside a clause body or head");

  if (op == "!") {
    // attribute wrapper; only :named payloads appear here, skip them
    if (argc < 1) fail(ErrKind::ArityMismatch, e, "! expects a term");
    return parse_term(e.children[1], scope, relations, rels);
  }

  if (op == "let") {
    if (argc != 2 || e.children[1].is_atom)
      fail(ErrKind::ArityMismatch, e, "let expects a binding list and a body");
    Scope inner = scope;  // bindings evaluate in the outer scope
    for (const SExpr &b : e.children[1].children) {
      if (b.is_atom || b.children.size() != 2 || !b.children[0].is_atom)
        fail(ErrKind::ArityMismatch, b, "malformed let binding");
      inner.bind(b.children[0].atom,
                 parse_term(b.children[1], scope, relations, rels));
    }
    return parse_term(e.children[2], inner, relations, rels);
  }

  auto parse_args = [&](std::size_t from = 1) {
    std::vector<TermPtr> args;
    for (std::size_t i = from; i < e.children.size(); ++i)
      args.push_back(parse_term(e.children[i], scope, relations, rels));
    return args;
  };
  auto need_argc = [&](bool ok, const char *what) {
    if (!ok)
      fail(ErrKind::ArityMismatch, e,
           std::string(op) + " applied to " + std::to_string(argc) +
               " arguments, expected " + what);
  };
  auto ints = [&](std::vector<TermPtr> args) {
    for (std::size_t i = 0; i < args.size(); ++i)
      expect_sort(args[i], Sort::Int, e.children[i + 1]);
    return args;
  };
  auto bools = [&](std::vector<TermPtr> args) {
    for (std::size_t i = 0; i < args.size(); ++i)
      expect_sort(args[i], Sort::Bool, e.children[i + 1]);
    return args;
  };
  auto same_sorted = [&](std::vector<TermPtr> args) {
    for (std::size_t i = 1; i < args.size(); ++i)
      expect_sort(args[i], args[0]->sort(), e.children[i + 1]);
    return args;
  };

  if (op == "+" || op == "*") {
    need_argc(argc >= 2, ">= 2");
    return Term::mk_app(op == "+" ? Op::Add : Op::Mul, ints(parse_args()));
  }
  if (op == "-") {
    need_argc(argc >= 1, ">= 1");
    if (argc == 1) {
      const SExpr &arg = e.children[1];
      if (arg.is_atom && is_numeral(arg.atom))  // (- k): negative literal
        return Term::mk_int(-mpz_class(arg.atom));
      return Term::mk_app(Op::Neg, ints(parse_args()));
    }
    return Term::mk_app(Op::Sub, ints(parse_args()));
  }
  if (op == "<" || op == "<=" || op == ">" || op == ">=") {
    need_argc(argc == 2, "2");
    Op o = op == "<" ? Op::Lt : op == "<=" ? Op::Le : op == ">" ? Op::Gt : Op::Ge;
    return Term::mk_app(o, ints(parse_args()));
  }
  if (op == "=" || op == "distinct") {
    need_argc(argc >= 2, ">= 2");
    return Term::mk_app(op == "=" ? Op::Eq : Op::Distinct,
                        same_sorted(parse_args()));
  }
  if (op == "and" || op == "or") {
    if (argc == 0) return Term::mk_bool(op == "and");
    std::vector<TermPtr> args = bools(parse_args());
    if (argc == 1) return args[0];
    return Term::mk_app(op == "and" ? Op::And : Op::Or, std::move(args));
  }
  if (op == "=>") {
    need_argc(argc >= 2, ">= 2");
    return Term::mk_app(Op::Implies, bools(parse_args()));
  }
  if (op == "not") {
    need_argc(argc == 1, "1");
    return Term::mk_app(Op::Not, bools(parse_args()));
  }
  if (op == "ite") {
    need_argc(argc == 3, "3");
    std::vector<TermPtr> args = parse_args();
    expect_sort(args[0], Sort::Bool, e.children[1]);
    if (args[1]->sort() != args[2]->sort())
      fail(ErrKind::SortMismatch, e.children[3], "ite branches differ in sort");
    return Term::mk_app(Op::Ite, std::move(args));
  }

  if (auto it = rels.find(op); it != rels.end()) {
    const Relation &r = relations[it->second];
    if (static_cast<int>(argc) != r.arity())
      fail(ErrKind::ArityMismatch, e,
           "relation " + r.name + " expects " + std::to_string(r.arity()) +
               " arguments, got " + std::to_string(argc));
    std::vector<TermPtr> args = parse_args();
    for (int i = 0; i < r.arity(); ++i)
      expect_sort(args[i], r.param_sorts[i], e.children[i + 1]);
    return Term::mk_rel_atom(r, std::move(args));
  }

  fail(ErrKind::UnknownIdentifier, head, "unknown identifier '" + op + "'");
}

RawScript parse_script(const std::vector<SExpr> &script) {
  RawScript raw;
  std::unordered_map<std::string, int> seen;
  bool have_logic = false;
  for (const SExpr &cmd : script) {
    if (cmd.is_atom || cmd.children.empty() || !cmd.children[0].is_atom)
      throw Error(ErrKind::UnsupportedCommand, cmd.span, "malformed command");
    const std::string &name = cmd.children[0].atom;
    const std::size_t argc = cmd.children.size() - 1;

    if (name == "set-logic") {
      if (argc != 1 || !cmd.children[1].is_atom)
        fail(ErrKind::UnsupportedCommand, cmd, "malformed set-logic");
      if (have_logic)
        fail(ErrKind::UnsupportedCommand, cmd, "repeated set-logic");
      if (cmd.children[1].atom != "HORN")
        fail(ErrKind::UnsupportedLogic, cmd.children[1],
             "unsupported logic '" + cmd.children[1].atom + "', expected HORN");
      raw.logic = cmd.children[1].atom;
      have_logic = true;
    } else if (name == "declare-fun") {
      if (argc != 3 || !cmd.children[1].is_atom || cmd.children[2].is_atom)
        fail(ErrKind::UnsupportedCommand, cmd, "malformed declare-fun");
      const std::string &rel = cmd.children[1].atom;
      const SExpr &ret = cmd.children[3];
      if (!ret.is_atom || ret.atom != "Bool")
        fail(ErrKind::UnsupportedSort, ret,
             "uninterpreted functions are not supported; codomain must be Bool");
      Relation r;
      r.name = rel;
      for (const SExpr &s : cmd.children[2].children) {
        std::optional<Sort> srt =
            s.is_atom ? sort_of_name(s.atom) : std::nullopt;
        if (!srt)
          fail(ErrKind::UnsupportedSort, s,
               "unsupported sort '" + print_sexpr(s) + "' (Bool and Int only)");
        r.param_sorts.push_back(*srt);
      }
      if (seen.count(rel))
        fail(ErrKind::DuplicateRelation, cmd.children[1],
             "relation '" + rel + "' declared twice");
      r.index = static_cast<int>(raw.relations.size());
      seen.emplace(rel, r.index);
      raw.relations.push_back(std::move(r));
    } else if (name == "assert") {
      if (argc != 1)
        fail(ErrKind::UnsupportedCommand, cmd, "malformed assert");
      raw.asserts.push_back(cmd.children[1]);
    } else if (name == "check-sat") {
      raw.saw_check_sat = true;
    } else if (name == "set-info" || name == "exit") {
      // ignored
    } else {
      fail(ErrKind::UnsupportedCommand, cmd.children[0],
           "unsupported command '" + name + "'");
    }
  }
  if (!have_logic)
    throw Error(ErrKind::UnsupportedLogic, {0, 0},
                "missing (set-logic HORN)");
  return raw;
}

RawScript parse_script_text(std::string_view src) {
  return parse_script(parse_sexprs(lex(src)));
}

}  // namespace chc2vmt
