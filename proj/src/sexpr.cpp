#include "chc2vmt/sexpr.hpp"

#include <cctype>

namespace chc2vmt {

namespace {

bool is_symbol_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '~': case '!': case '@': case '$': case '%': case '^': case '&':
    case '*': case '_': case '-': case '+': case '=': case '<': case '>':
    case '.': case '?': case '/': case ':':
      return true;
    default:
      return false;
  }
}

}  // namespace

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> toks;
  std::size_t i = 0;
  const std::size_t n = src.size();
  while (i < n) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
    } else if (c == ';') {
      while (i < n && src[i] != '\n') ++i;
    } else if (c == '(') {
      toks.push_back({TokKind::LParen, "(", {i, i + 1}});
      ++i;
    } else if (c == ')') {
      toks.push_back({TokKind::RParen, ")", {i, i + 1}});
      ++i;
    } else if (c == '"') {
      std::size_t start = i;
      ++i;
      std::string body;
      bool closed = false;
      while (i < n) {
        if (src[i] == '"') {
          if (i + 1 < n && src[i + 1] == '"') {  // "" escape
            body += '"';
            i += 2;
          } else {
            ++i;
            closed = true;
            break;
          }
        } else {
          body += src[i++];
        }
      }
      if (!closed)
        throw Error(ErrKind::UnterminatedString, {start, n},
                    "unterminated string literal");
      toks.push_back({TokKind::String, std::move(body), {start, i}});
    } else if (c == '|') {
      std::size_t start = i;
      ++i;
      std::string body;
      bool closed = false;
      while (i < n) {
        if (src[i] == '|') {
          ++i;
          closed = true;
          break;
        }
        if (src[i] == '\\')
          throw Error(ErrKind::IllegalCharacter, {i, i + 1},
                      "backslash inside quoted symbol");
        body += src[i++];
      }
      if (!closed)
        throw Error(ErrKind::UnterminatedString, {start, n},
                    "unterminated quoted symbol");
      toks.push_back({TokKind::Atom, std::move(body), {start, i}});
    } else if (is_symbol_char(c)) {
      std::size_t start = i;
      while (i < n && is_symbol_char(src[i])) ++i;
      toks.push_back({TokKind::Atom, std::string(src.substr(start, i - start)),
                      {start, i}});
    } else {
      throw Error(ErrKind::IllegalCharacter, {i, i + 1},
                  std::string("illegal character '") + c + "'");
    }
  }
  return toks;
}

SExpr SExpr::make_atom(std::string text, Span sp) {
  SExpr e;
  e.is_atom = true;
  e.atom = std::move(text);
  e.span = sp;
  return e;
}

SExpr SExpr::make_list(std::vector<SExpr> kids, Span sp) {
  SExpr e;
  e.is_atom = false;
  e.children = std::move(kids);
  e.span = sp;
  return e;
}

std::vector<SExpr> parse_sexprs(const std::vector<Token> &toks) {
  std::vector<SExpr> top;
  // Stack of open lists; each entry remembers where its '(' was.
  std::vector<std::pair<std::vector<SExpr>, std::size_t>> stack;
  auto emit = [&](SExpr e) {
    if (stack.empty())
      top.push_back(std::move(e));
    else
      stack.back().first.push_back(std::move(e));
  };
  for (const Token &t : toks) {
    switch (t.kind) {
      case TokKind::LParen:
        stack.emplace_back(std::vector<SExpr>{}, t.span.begin);
        break;
      case TokKind::RParen: {
        if (stack.empty())
          throw Error(ErrKind::UnbalancedParens, t.span,
                      "close paren without matching open");
        auto [kids, open] = std::move(stack.back());
        stack.pop_back();
        emit(SExpr::make_list(std::move(kids), {open, t.span.end}));
        break;
      }
      case TokKind::Atom:
        emit(SExpr::make_atom(t.text, t.span));
        break;
      case TokKind::String:
        // set-info payloads; keep the quoted rendering so printing round-trips.
        {
          std::string quoted = "\"";
          for (char c : t.text) {
            quoted += c;
            if (c == '"') quoted += '"';
          }
          quoted += '"';
          emit(SExpr::make_atom(std::move(quoted), t.span));
        }
        break;
    }
  }
  if (!stack.empty()) {
    std::size_t open = stack.back().second;
    throw Error(ErrKind::UnexpectedEOF, {open, open + 1},
                "unclosed parenthesis");
  }
  return top;
}

bool is_simple_symbol(std::string_view name) {
  if (name.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!is_symbol_char(c)) return false;
  return true;
}

std::string quote_symbol(std::string_view name) {
  if (is_simple_symbol(name)) return std::string(name);
  std::string out = "|";
  out += name;
  out += '|';
  return out;
}

std::string print_sexpr(const SExpr &e) {
  if (e.is_atom) {
    if (!e.atom.empty() && e.atom[0] == '"') return e.atom;  // string literal
    return quote_symbol(e.atom);
  }
  std::string out = "(";
  for (std::size_t i = 0; i < e.children.size(); ++i) {
    if (i) out += ' ';
    out += print_sexpr(e.children[i]);
  }
  out += ')';
  return out;
}

bool sexpr_equal(const SExpr &a, const SExpr &b) {
  if (a.is_atom != b.is_atom) return false;
  if (a.is_atom) return a.atom == b.atom;
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!sexpr_equal(a.children[i], b.children[i])) return false;
  return true;
}

}  // namespace chc2vmt
