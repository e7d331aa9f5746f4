#include "chc2vmt/diag.hpp"

namespace chc2vmt {

LineCol line_col_at(std::string_view src, std::size_t offset) {
  LineCol lc;
  if (offset > src.size()) offset = src.size();
  for (std::size_t i = 0; i < offset; ++i) {
    if (src[i] == '\n') {
      ++lc.line;
      lc.col = 1;
    } else {
      ++lc.col;
    }
  }
  return lc;
}

const char *err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::UnterminatedString: return "UnterminatedString";
    case ErrKind::IllegalCharacter: return "IllegalCharacter";
    case ErrKind::UnbalancedParens: return "UnbalancedParens";
    case ErrKind::UnexpectedEOF: return "UnexpectedEOF";
    case ErrKind::UnsupportedLogic: return "UnsupportedLogic";
    case ErrKind::UnsupportedSort: return "UnsupportedSort";
    case ErrKind::UnsupportedCommand: return "UnsupportedCommand";
    case ErrKind::DuplicateRelation: return "DuplicateRelation";
    case ErrKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrKind::ArityMismatch: return "ArityMismatch";
    case ErrKind::SortMismatch: return "SortMismatch";
    case ErrKind::HeadNotAtomOrFalse: return "HeadNotAtomOrFalse";
    case ErrKind::NestedQuantifier: return "NestedQuantifier";
    case ErrKind::RelationAtomUnderNonConjunctiveContext:
      return "RelationAtomUnderNonConjunctiveContext";
    case ErrKind::NonlinearClause: return "NonlinearClause";
    case ErrKind::InvalidK: return "InvalidK";
    case ErrKind::UnassignedVariable: return "UnassignedVariable";
    case ErrKind::UnsetRead: return "UnsetRead";
    case ErrKind::BudgetExceeded: return "BudgetExceeded";
    case ErrKind::EvalOverflow: return "EvalOverflow";
  }
  return "Unknown";
}

std::string render_diag(std::string_view file, std::string_view src,
                        const Diagnostic &d) {
  std::string out(file);
  if (d.span.begin != 0 || d.span.end != 0) {
    LineCol lc = line_col_at(src, d.span.begin);
    out += ":" + std::to_string(lc.line) + ":" + std::to_string(lc.col);
  }
  out += ": " + d.message;
  return out;
}

}  // namespace chc2vmt
