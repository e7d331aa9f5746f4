#ifndef CHC2VMT_SCRIPT_HPP_
#define CHC2VMT_SCRIPT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "chc2vmt/sexpr.hpp"
#include "chc2vmt/term.hpp"

namespace chc2vmt {

//! Result of reading a HORN-fragment script: declared relations plus the
//! asserted formulas, still in s-expression form (quantifier prefixes are
//! peeled later, by clausify).
struct RawScript {
  std::string logic;
  std::vector<Relation> relations;
  std::vector<SExpr> asserts;
  bool saw_check_sat = false;
};

//! Recognized commands: set-logic, declare-fun (Bool codomain only),
//! assert, check-sat, set-info, exit. Anything else is an error.
RawScript parse_script(const std::vector<SExpr> &script);

//! Variables visible while parsing a term: quantified variables bound to
//! BoundVar terms, let-bindings bound to their (eagerly substituted) bodies.
class Scope {
 public:
  void bind(const std::string &name, TermPtr t) { vars_[name] = std::move(t); }
  const TermPtr *lookup(const std::string &name) const;

 private:
  std::unordered_map<std::string, TermPtr> vars_;
};

//! Parses one quantifier-free formula/term. Relation symbols resolve
//! through `rels` (name -> index into `relations`); relation atoms are
//! allowed anywhere Bool is (the conjunctive-position restriction is
//! enforced by clausify, which sees the final clause shape). `let` is
//! substituted eagerly; `(! t :named x)` unwraps to t; quantifiers are
//! rejected here (NestedQuantifier).
TermPtr parse_term(const SExpr &e, const Scope &scope,
                   const std::vector<Relation> &relations,
                   const std::unordered_map<std::string, int> &rels);

//! Convenience end-to-end text entry: lex + parse_sexprs + parse_script.
RawScript parse_script_text(std::string_view src);

std::optional<Sort> sort_of_name(std::string_view name);

}  // namespace chc2vmt

#endif
