#include "chc2vmt/vmt.hpp"

#include "chc2vmt/sexpr.hpp"

namespace chc2vmt {

namespace {

//! Names a variable occurrence; the two emitters differ only here.
struct Namer {
  const TransitionSystem &ts;
  int step = -1;  // BMC step index, or -1 for VMT current/next naming

  std::string state(int ordinal) const {
    const std::string &n = ts.state_vars[ordinal].name;
    return step < 0 ? quote_symbol(n) : quote_symbol(n + "@" + std::to_string(step));
  }
  std::string primed(int ordinal) const {
    const std::string &n = ts.state_vars[ordinal].name;
    return step < 0 ? quote_symbol(n + ".next")
                    : quote_symbol(n + "@" + std::to_string(step + 1));
  }
  std::string input(int index) const {
    const std::string &n = ts.input_vars[index].name;
    return step < 0 ? quote_symbol(n) : quote_symbol(n + "@" + std::to_string(step));
  }
};

void print_term_rec(const TermPtr &t, const Namer &nm, std::string &out) {
  switch (t->kind()) {
    case TermKind::BoolLit:
      out += t->bool_value() ? "true" : "false";
      return;
    case TermKind::IntLit: {
      const mpz_class &v = t->int_value();
      if (v < 0)
        out += "(- " + mpz_class(-v).get_str() + ")";
      else
        out += v.get_str();
      return;
    }
    case TermKind::StateVar:
      out += nm.state(t->index());
      return;
    case TermKind::PrimedStateVar:
      out += nm.primed(t->index());
      return;
    case TermKind::InputVar:
      out += nm.input(t->index());
      return;
    case TermKind::BoundVar:
    case TermKind::RelAtom:
      assert(false && "untranslated term in emission");
      out += "<?>";
      return;
    case TermKind::App:
      break;
  }
  out += '(';
  out += op_name(t->op());
  for (const TermPtr &a : t->args()) {
    out += ' ';
    print_term_rec(a, nm, out);
  }
  out += ')';
}

std::string term_str(const TermPtr &t, const Namer &nm) {
  std::string out;
  print_term_rec(t, nm, out);
  return out;
}

bool has_mul(const TermPtr &t) {
  if (t->kind() == TermKind::App && t->op() == Op::Mul) return true;
  for (const TermPtr &a : t->args())
    if (has_mul(a)) return true;
  return false;
}

const char *sort_str(Sort s) { return s == Sort::Bool ? "Bool" : "Int"; }

}  // namespace

std::string print_term(const TransitionSystem &ts, const TermPtr &t) {
  Namer nm{ts};
  return term_str(t, nm);
}

std::string emit_vmt(const TransitionSystem &ts) {
  Namer nm{ts};
  std::string out;

  for (const StateVar &v : ts.state_vars)
    out += "(declare-fun " + nm.state(v.ordinal) + " () " + sort_str(v.sort) +
           ")\n";
  for (const StateVar &v : ts.state_vars)
    out += "(declare-fun " + nm.primed(v.ordinal) + " () " + sort_str(v.sort) +
           ")\n";
  for (const InputVar &iv : ts.input_vars)
    out += "(declare-fun " + nm.input(iv.index) + " () " + sort_str(iv.sort) +
           ")\n";

  for (const StateVar &v : ts.state_vars)
    out += "(define-fun .sv" + std::to_string(v.ordinal) + " () " +
           sort_str(v.sort) + " (! " + nm.state(v.ordinal) + " :next " +
           nm.primed(v.ordinal) + "))\n";

  out += "(define-fun .init () Bool (! " + term_str(ts.init, nm) +
         " :init true))\n";

  out += "(define-fun .trans () Bool (!\n";
  if (ts.disjuncts.empty()) {
    out += "  false\n";
  } else if (ts.disjuncts.size() == 1) {
    out += "  " + term_str(ts.disjuncts[0].formula(), nm) + "\n";
  } else {
    out += "  (or\n";
    for (std::size_t i = 0; i < ts.disjuncts.size(); ++i) {
      out += "    " + term_str(ts.disjuncts[i].formula(), nm);
      out += i + 1 < ts.disjuncts.size() ? "\n" : ")\n";
    }
  }
  out += "  :trans true))\n";

  out += "(define-fun .prop () Bool (! " + term_str(ts.property, nm) +
         " :invar-property 0))\n";
  return out;
}

std::string emit_bmc(const TransitionSystem &ts, int k) {
  if (k < 0)
    throw Error(ErrKind::InvalidK, {0, 0},
                "unrolling depth must be nonnegative, got " + std::to_string(k));

  bool bool_place = false;
  for (const StateVar &v : ts.state_vars)
    bool_place |= v.kind == StateVar::Kind::Place && v.sort == Sort::Bool;
  bool mul = has_mul(ts.init) || has_mul(ts.property);
  for (const TransitionDisjunct &d : ts.disjuncts)
    for (const TermPtr &t : {d.guard, d.update, d.frame}) mul = mul || has_mul(t);

  std::string out;
  out += std::string("(set-logic ") + (bool_place || mul ? "ALL" : "QF_LIA") +
         ")\n";

  for (int t = 0; t <= k; ++t) {
    Namer nm{ts, t};
    for (const StateVar &v : ts.state_vars)
      out += "(declare-fun " + nm.state(v.ordinal) + " () " +
             sort_str(v.sort) + ")\n";
  }
  for (int t = 0; t < k; ++t) {
    Namer nm{ts, t};
    for (const InputVar &iv : ts.input_vars)
      out += "(declare-fun " + nm.input(iv.index) + " () " +
             sort_str(iv.sort) + ")\n";
  }

  {
    Namer nm{ts, 0};
    out += "(assert " + term_str(ts.init, nm) + ")\n";
  }
  for (int t = 0; t < k; ++t) {
    Namer nm{ts, t};
    std::string trans;
    if (ts.disjuncts.empty()) {
      trans = "false";
    } else if (ts.disjuncts.size() == 1) {
      trans = term_str(ts.disjuncts[0].formula(), nm);
    } else {
      trans = "(or";
      for (const TransitionDisjunct &d : ts.disjuncts)
        trans += " " + term_str(d.formula(), nm);
      trans += ")";
    }
    out += "(assert " + trans + ")\n";
  }
  {
    Namer nm{ts, k};
    out += "(assert (not " + term_str(ts.property, nm) + "))\n";
  }
  out += "(check-sat)\n";
  return out;
}

}  // namespace chc2vmt
