#include "chc2vmt/horn.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace chc2vmt {

namespace {

bool is_call(const SExpr &e, const char *name) {
  return !e.is_atom && !e.children.empty() && e.children[0].is_atom &&
         e.children[0].atom == name;
}

std::vector<QVar> parse_binders(const SExpr &binders) {
  if (binders.is_atom)
    throw Error(ErrKind::ArityMismatch, binders.span,
                "expected a sorted-variable list");
  std::vector<QVar> qvars;
  for (const SExpr &b : binders.children) {
    if (b.is_atom || b.children.size() != 2 || !b.children[0].is_atom ||
        !b.children[1].is_atom)
      throw Error(ErrKind::ArityMismatch, b.span, "malformed sorted variable");
    std::optional<Sort> s = sort_of_name(b.children[1].atom);
    if (!s)
      throw Error(ErrKind::UnsupportedSort, b.children[1].span,
                  "unsupported sort '" + b.children[1].atom +
                      "' (Bool and Int only)");
    // Repeated names shadow (the later binding wins, per SMT-LIB); keep one
    // entry so per-clause variable names stay unique.
    auto it = std::find_if(qvars.begin(), qvars.end(),
                           [&](const QVar &q) { return q.name == b.children[0].atom; });
    if (it != qvars.end())
      it->sort = *s;
    else
      qvars.push_back({b.children[0].atom, *s});
  }
  return qvars;
}

//! Splits a parsed body into relation atoms and interpreted conjuncts,
//! recursing through nested `and` only.
void split_body(const TermPtr &t, const Span &at, std::vector<TermPtr> &atoms,
                std::vector<TermPtr> &constraint) {
  if (t->kind() == TermKind::RelAtom) {
    atoms.push_back(t);
    return;
  }
  if (t->kind() == TermKind::App && t->op() == Op::And) {
    for (const TermPtr &a : t->args()) split_body(a, at, atoms, constraint);
    return;
  }
  if (contains_rel_atom(t))
    throw Error(ErrKind::RelationAtomUnderNonConjunctiveContext, at,
                "relation atom occurs under a non-conjunctive operator");
  if (t->kind() == TermKind::BoolLit && t->bool_value()) return;
  constraint.push_back(t);
}

}  // namespace

std::optional<HornClause> clausify(const SExpr &asserted,
                                   const std::vector<Relation> &relations) {
  std::unordered_map<std::string, int> rels;
  for (const Relation &r : relations) rels.emplace(r.name, r.index);

  HornClause cl;
  cl.span = asserted.span;
  const SExpr *matrix = &asserted;
  bool negated_exists = false;

  if (is_call(asserted, "forall")) {
    if (asserted.children.size() != 3)
      throw Error(ErrKind::ArityMismatch, asserted.span, "malformed forall");
    cl.qvars = parse_binders(asserted.children[1]);
    matrix = &asserted.children[2];
  } else if (is_call(asserted, "not") && asserted.children.size() == 2 &&
             is_call(asserted.children[1], "exists")) {
    // (not (exists (vars) body)) is the query shape: body => false.
    const SExpr &ex = asserted.children[1];
    if (ex.children.size() != 3)
      throw Error(ErrKind::ArityMismatch, ex.span, "malformed exists");
    cl.qvars = parse_binders(ex.children[1]);
    matrix = &ex.children[2];
    negated_exists = true;
  }

  Scope scope;
  for (const QVar &q : cl.qvars) scope.bind(q.name, Term::mk_bound(q.name, q.sort));

  const SExpr *head_expr = nullptr;
  std::vector<TermPtr> atoms, constraint;

  if (negated_exists) {
    split_body(parse_term(*matrix, scope, relations, rels), matrix->span,
               atoms, constraint);
  } else if (is_call(*matrix, "=>")) {
    if (matrix->children.size() < 3)
      throw Error(ErrKind::ArityMismatch, matrix->span, "malformed =>");
    // (=> b1 .. bn h): everything before the last position is body.
    for (std::size_t i = 1; i + 1 < matrix->children.size(); ++i)
      split_body(parse_term(matrix->children[i], scope, relations, rels),
                 matrix->children[i].span, atoms, constraint);
    head_expr = &matrix->children.back();
  } else {
    head_expr = matrix;  // fact clause: empty body
  }

  if (head_expr != nullptr) {
    if (head_expr->is_atom && head_expr->atom == "false") {
      cl.head = nullptr;
    } else if (head_expr->is_atom && head_expr->atom == "true" &&
               cl.qvars.empty() && atoms.empty() && constraint.empty()) {
      return std::nullopt;  // (assert true): no clause
    } else {
      TermPtr h = parse_term(*head_expr, scope, relations, rels);
      if (h->kind() != TermKind::RelAtom)
        throw Error(ErrKind::HeadNotAtomOrFalse, head_expr->span,
                    "clause head must be a relation atom or false");
      cl.head = h;
    }
  }

  if (atoms.size() > 1)
    throw Error(ErrKind::NonlinearClause, asserted.span,
                "clause has " + std::to_string(atoms.size()) +
                    " body atoms; only linear clauses are supported");
  if (!atoms.empty()) cl.body_atom = atoms[0];
  cl.constraint = mk_and(std::move(constraint));
  return cl;
}

HornSystem clausify_script(const RawScript &raw) {
  HornSystem sys;
  sys.relations = raw.relations;
  for (const SExpr &a : raw.asserts) {
    std::optional<HornClause> cl = clausify(a, sys.relations);
    if (!cl) continue;
    cl->id = static_cast<int>(sys.clauses.size());
    sys.clauses.push_back(std::move(*cl));
  }
  return sys;
}

void check_linear(const HornSystem &sys) {
  for (const HornClause &cl : sys.clauses) {
    if (cl.body_atom && cl.body_atom->kind() != TermKind::RelAtom)
      throw Error(ErrKind::NonlinearClause, cl.span,
                  "body atom is not a relation atom");
    if (cl.constraint && contains_rel_atom(cl.constraint))
      throw Error(ErrKind::NonlinearClause, cl.span,
                  "relation atom hidden inside the clause constraint");
    if (cl.head) {
      for (const TermPtr &a : cl.head->args())
        if (contains_rel_atom(a))
          throw Error(ErrKind::NonlinearClause, cl.span,
                      "relation atom inside a head argument");
    }
  }
}

void normalize_query(HornSystem &sys,
                     const std::optional<std::string> &designated) {
  if (sys.query_relation < 0) {
    if (designated) {
      auto it = std::find_if(
          sys.relations.begin(), sys.relations.end(),
          [&](const Relation &r) { return r.name == *designated; });
      if (it == sys.relations.end())
        throw Error(ErrKind::UnknownIdentifier, {0, 0},
                    "designated query relation '" + *designated +
                        "' is not declared");
      if (it->arity() != 0)
        throw Error(ErrKind::ArityMismatch, {0, 0},
                    "designated query relation '" + *designated +
                        "' must be 0-ary");
      sys.query_relation = it->index;
    } else {
      std::unordered_set<std::string> names;
      for (const Relation &r : sys.relations) names.insert(r.name);
      std::string name = "q.U";
      for (int suffix = 1; names.count(name); ++suffix)
        name = "q.U." + std::to_string(suffix);
      Relation u;
      u.name = name;
      u.index = static_cast<int>(sys.relations.size());
      sys.query_relation = u.index;
      sys.relations.push_back(std::move(u));
    }
  }
  const Relation &u = sys.relations[sys.query_relation];
  for (HornClause &cl : sys.clauses)
    if (cl.head_is_false()) cl.head = Term::mk_rel_atom(u, {});
}

namespace {

void free_vars_ok(const TermPtr &t, const HornClause &cl,
                  std::vector<Diagnostic> &out) {
  std::vector<std::string> names;
  collect_bound_vars(t, names);
  for (const std::string &n : names) {
    bool found = std::any_of(cl.qvars.begin(), cl.qvars.end(),
                             [&](const QVar &q) { return q.name == n; });
    if (!found)
      out.push_back({ErrKind::UnknownIdentifier, cl.span,
                     "clause " + std::to_string(cl.id) +
                         " mentions unquantified variable '" + n + "'"});
  }
}

}  // namespace

std::vector<Diagnostic> validate(const HornSystem &sys) {
  std::vector<Diagnostic> out;
  auto complain = [&](const HornClause &cl, const std::string &msg) {
    out.push_back({ErrKind::SortMismatch, cl.span,
                   "clause " + std::to_string(cl.id) + ": " + msg});
  };

  for (std::size_t i = 0; i < sys.relations.size(); ++i)
    if (sys.relations[i].index != static_cast<int>(i))
      out.push_back({ErrKind::DuplicateRelation, {0, 0},
                     "relation table index mismatch at " + std::to_string(i)});
  if (sys.query_relation < 0 ||
      sys.query_relation >= static_cast<int>(sys.relations.size()))
    out.push_back({ErrKind::UnknownIdentifier, {0, 0},
                   "query relation is not set"});
  else if (sys.query().arity() != 0)
    out.push_back({ErrKind::ArityMismatch, {0, 0},
                   "query relation must be 0-ary"});

  for (std::size_t i = 0; i < sys.clauses.size(); ++i) {
    const HornClause &cl = sys.clauses[i];
    if (cl.id != static_cast<int>(i))
      complain(cl, "id not dense/in input order");
    if (!cl.head)
      complain(cl, "head not normalized to a relation atom");
    else if (cl.head->kind() != TermKind::RelAtom)
      complain(cl, "head is not a relation atom");
    if (cl.body_atom && cl.body_atom->kind() != TermKind::RelAtom)
      complain(cl, "body atom is not a relation atom");
    if (!cl.constraint)
      complain(cl, "constraint missing (use literal true)");
    else {
      if (cl.constraint->sort() != Sort::Bool)
        complain(cl, "constraint is not Bool");
      if (contains_rel_atom(cl.constraint))
        complain(cl, "constraint contains a relation atom");
    }
    std::unordered_set<std::string> seen;
    for (const QVar &q : cl.qvars)
      if (!seen.insert(q.name).second)
        complain(cl, "duplicate quantified variable '" + q.name + "'");
    for (const TermPtr &t : {cl.body_atom, cl.constraint, cl.head})
      if (t) free_vars_ok(t, cl, out);
    for (const TermPtr &atom : {cl.body_atom, cl.head}) {
      if (!atom || atom->kind() != TermKind::RelAtom) continue;
      int ri = atom->index();
      if (ri < 0 || ri >= static_cast<int>(sys.relations.size())) {
        complain(cl, "relation index out of range");
        continue;
      }
      const Relation &r = sys.relations[ri];
      if (static_cast<int>(atom->args().size()) != r.arity())
        complain(cl, "atom arity differs from relation " + r.name);
      else
        for (int k = 0; k < r.arity(); ++k)
          if (atom->args()[k]->sort() != r.param_sorts[k])
            complain(cl, "argument " + std::to_string(k + 1) + " of " +
                             r.name + " has the wrong sort");
    }
  }
  return out;
}

HornSystem load_horn_text(std::string_view src,
                          const std::optional<std::string> &designated) {
  RawScript raw = parse_script_text(src);
  HornSystem sys = clausify_script(raw);
  check_linear(sys);
  normalize_query(sys, designated);
  std::vector<Diagnostic> diags = validate(sys);
  if (!diags.empty())
    throw Error(diags[0].kind, diags[0].span, diags[0].message);
  return sys;
}

}  // namespace chc2vmt
