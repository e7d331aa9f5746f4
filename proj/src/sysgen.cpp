#include "chc2vmt/sysgen.hpp"

#include <algorithm>
#include <cassert>

namespace chc2vmt {

namespace {

//! Thin wrapper so draws stay deterministic across standard libraries
//! (std::uniform_int_distribution is not pinned by the standard).
struct Rng {
  std::mt19937_64 eng;

  std::uint64_t raw() { return eng(); }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    assert(lo <= hi);
    return lo + static_cast<std::int64_t>(
                    raw() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(double p) { return raw() % 10000 < static_cast<std::uint64_t>(p * 10000); }
};

struct ClauseVars {
  std::vector<QVar> qvars;

  std::string fresh(Sort s) {
    std::string name = "v" + std::to_string(qvars.size());
    qvars.push_back({name, s});
    return name;
  }
  std::vector<int> of_sort(Sort s) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < qvars.size(); ++i)
      if (qvars[i].sort == s) out.push_back(static_cast<int>(i));
    return out;
  }
  TermPtr var(int i) const { return Term::mk_bound(qvars[i].name, qvars[i].sort); }
};

TermPtr int_expr(Rng &rng, const GenConfig &cfg, const ClauseVars &vars) {
  std::vector<int> ints = vars.of_sort(Sort::Int);
  std::int64_t c = rng.range(cfg.coeff_lo, cfg.coeff_hi);
  if (ints.empty()) return Term::mk_int(c);
  TermPtr v = vars.var(ints[rng.range(0, ints.size() - 1)]);
  switch (rng.range(0, 4)) {
    case 0: return Term::mk_int(c);
    case 1: return v;
    case 2: return Term::mk_app(Op::Add, {v, Term::mk_int(c)});
    case 3: return Term::mk_app(Op::Sub, {v, Term::mk_int(c)});
    default:
      if (rng.chance(0.25))
        return Term::mk_app(Op::Mul, {Term::mk_int(c), v});
      return Term::mk_app(Op::Add, {v, Term::mk_int(c)});
  }
}

TermPtr bool_expr(Rng &rng, const ClauseVars &vars) {
  std::vector<int> bools = vars.of_sort(Sort::Bool);
  if (bools.empty() || rng.chance(0.4)) return Term::mk_bool(rng.chance(0.5));
  return vars.var(bools[rng.range(0, bools.size() - 1)]);
}

TermPtr head_arg(Rng &rng, const GenConfig &cfg, const ClauseVars &vars, Sort s) {
  return s == Sort::Bool ? bool_expr(rng, vars) : int_expr(rng, cfg, vars);
}

TermPtr constraint_atom(Rng &rng, const GenConfig &cfg, const ClauseVars &vars) {
  std::vector<int> ints = vars.of_sort(Sort::Int);
  std::vector<int> bools = vars.of_sort(Sort::Bool);
  if (!bools.empty() && (ints.empty() || rng.chance(0.2))) {
    TermPtr b = vars.var(bools[rng.range(0, bools.size() - 1)]);
    return rng.chance(0.5) ? b : mk_not(b);
  }
  if (ints.empty()) return nullptr;
  TermPtr lhs = vars.var(ints[rng.range(0, ints.size() - 1)]);
  TermPtr rhs = int_expr(rng, cfg, vars);
  Op cmp;
  switch (rng.range(0, 5)) {
    case 0: cmp = Op::Lt; break;
    case 1: cmp = Op::Le; break;
    case 2: cmp = Op::Gt; break;
    case 3: cmp = Op::Ge; break;
    case 4: cmp = Op::Eq; break;
    default: cmp = Op::Distinct; break;
  }
  TermPtr atom = Term::mk_app(cmp, {lhs, rhs});
  return rng.chance(0.2) ? mk_not(atom) : atom;
}

}  // namespace

HornSystem random_system(std::uint64_t seed, const GenConfig &cfg) {
  Rng rng{std::mt19937_64(seed)};
  HornSystem sys;

  int nrel = static_cast<int>(rng.range(1, cfg.max_relations));
  int places_left = cfg.max_total_places;
  for (int r = 0; r < nrel; ++r) {
    Relation rel;
    rel.name = "R" + std::to_string(r);
    rel.index = r;
    int arity = static_cast<int>(rng.range(0, std::min(cfg.max_arity, places_left)));
    places_left -= arity;
    for (int i = 0; i < arity; ++i)
      rel.param_sorts.push_back(rng.chance(cfg.bool_place_prob) ? Sort::Bool
                                                                : Sort::Int);
    sys.relations.push_back(std::move(rel));
  }

  int nclauses = static_cast<int>(rng.range(1, cfg.max_clauses));
  bool want_query = rng.chance(cfg.query_clause_prob);
  for (int c = 0; c < nclauses; ++c) {
    HornClause cl;
    cl.id = c;
    ClauseVars vars;

    bool is_query = want_query && c == nclauses - 1 && nclauses > 1;
    bool is_fact = c == 0 || (!is_query && rng.chance(0.35));

    if (!is_fact) {
      const Relation &br = sys.relations[rng.range(0, nrel - 1)];
      std::vector<TermPtr> args;
      for (int i = 0; i < br.arity(); ++i) {
        Sort s = br.param_sorts[i];
        if (rng.chance(0.12) && s == Sort::Int) {
          args.push_back(Term::mk_int(rng.range(cfg.coeff_lo, cfg.coeff_hi)));
        } else if (rng.chance(0.12) && !vars.of_sort(s).empty()) {
          std::vector<int> same = vars.of_sort(s);
          args.push_back(vars.var(same[rng.range(0, same.size() - 1)]));
        } else {
          args.push_back(Term::mk_bound(vars.fresh(s), s));
        }
      }
      cl.body_atom = Term::mk_rel_atom(br, std::move(args));
    } else {
      int extra = static_cast<int>(rng.range(0, 2));
      for (int i = 0; i < extra; ++i) vars.fresh(Sort::Int);
    }
    if (rng.chance(0.3)) vars.fresh(Sort::Int);
    if (rng.chance(0.1)) vars.fresh(Sort::Bool);

    std::vector<TermPtr> constraint;
    int natoms = static_cast<int>(rng.range(0, 2));
    for (int i = 0; i < natoms; ++i)
      if (TermPtr a = constraint_atom(rng, cfg, vars)) constraint.push_back(a);
    cl.constraint = mk_and(std::move(constraint));

    if (!is_query) {
      const Relation &hr = sys.relations[rng.range(0, nrel - 1)];
      std::vector<TermPtr> args;
      for (int i = 0; i < hr.arity(); ++i)
        args.push_back(head_arg(rng, cfg, vars, hr.param_sorts[i]));
      cl.head = Term::mk_rel_atom(hr, std::move(args));
    }
    cl.qvars = std::move(vars.qvars);
    sys.clauses.push_back(std::move(cl));
  }

  normalize_query(sys);
  assert(validate(sys).empty());
  return sys;
}

}  // namespace chc2vmt
