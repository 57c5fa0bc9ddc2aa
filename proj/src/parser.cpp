#include "lincost/parser.hpp"

#include <cctype>
#include <functional>

namespace lincost {

namespace {

struct Token {
  enum class Kind { Ident, Keyword, Number, Punct, End };
  Kind kind;
  std::string text;
  int line, col;
};

const std::set<std::string> kKeywords = {"fun", "let",  "in",   "case", "of",
                                         "if",  "then", "else", "true", "false",
                                         "tick"};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;
  Token cur;

  explicit Lexer(const std::string& s) : src(s) { advance(); }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }

  void bump(char ch) {
    if (ch == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    while (pos < src.size()) {
      char ch = src[pos];
      if (isspace(static_cast<unsigned char>(ch))) {
        bump(ch);
      } else if (ch == '(' && pos + 1 < src.size() && src[pos + 1] == '*') {
        int open_line = line, open_col = col;
        bump('(');
        bump('*');
        int depth = 1;
        while (depth > 0) {
          if (pos >= src.size()) throw ParseError("unterminated comment", open_line, open_col);
          if (src[pos] == '(' && pos + 1 < src.size() && src[pos + 1] == '*') {
            bump('(');
            bump('*');
            ++depth;
          } else if (src[pos] == '*' && pos + 1 < src.size() && src[pos + 1] == ')') {
            bump('*');
            bump(')');
            --depth;
          } else {
            bump(src[pos]);
          }
        }
      } else {
        break;
      }
    }
  }

  static bool ident_start(char c) {
    return isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '%';
  }
  static bool ident_char(char c) {
    return isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '$' ||
           c == '%';
  }

  void advance() {
    skip_ws();
    cur.line = line;
    cur.col = col;
    if (pos >= src.size()) {
      cur = {Token::Kind::End, "", line, col};
      return;
    }
    char ch = src[pos];
    if (ident_start(ch)) {
      std::string t;
      while (pos < src.size() && ident_char(src[pos])) {
        t += src[pos];
        bump(src[pos]);
      }
      cur = {kKeywords.count(t) ? Token::Kind::Keyword : Token::Kind::Ident, t, cur.line,
             cur.col};
      return;
    }
    if (isdigit(static_cast<unsigned char>(ch))) {
      std::string t;
      while (pos < src.size() &&
             (isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '/')) {
        t += src[pos];
        bump(src[pos]);
      }
      cur = {Token::Kind::Number, t, cur.line, cur.col};
      return;
    }
    // multi-char punctuation
    if (ch == ':' && pos + 1 < src.size() && src[pos + 1] == ':') {
      bump(':');
      bump(':');
      cur = {Token::Kind::Punct, "::", cur.line, cur.col};
      return;
    }
    if (ch == '-' && pos + 1 < src.size() && src[pos + 1] == '>') {
      bump('-');
      bump('>');
      cur = {Token::Kind::Punct, "->", cur.line, cur.col};
      return;
    }
    if (ch == '[' && pos + 1 < src.size() && src[pos + 1] == ']') {
      bump('[');
      bump(']');
      cur = {Token::Kind::Punct, "[]", cur.line, cur.col};
      return;
    }
    std::string single(1, ch);
    if (std::string("()[],=|-").find(ch) == std::string::npos)
      fail("unexpected character '" + single + "'");
    bump(ch);
    cur = {Token::Kind::Punct, single, cur.line, cur.col};
  }
};

struct Parser {
  Lexer lex;

  explicit Parser(const std::string& s) : lex(s) {}

  [[noreturn]] void fail(const std::string& msg) {
    std::string got = lex.cur.kind == Token::Kind::End ? "end of input" : "'" + lex.cur.text + "'";
    throw ParseError(msg + ", got " + got, lex.cur.line, lex.cur.col);
  }

  bool at_punct(const std::string& p) const {
    return lex.cur.kind == Token::Kind::Punct && lex.cur.text == p;
  }
  bool at_kw(const std::string& k) const {
    return lex.cur.kind == Token::Kind::Keyword && lex.cur.text == k;
  }
  void eat_punct(const std::string& p) {
    if (!at_punct(p)) fail("expected '" + p + "'");
    lex.advance();
  }
  void eat_kw(const std::string& k) {
    if (!at_kw(k)) fail("expected '" + k + "'");
    lex.advance();
  }
  std::string eat_ident() {
    if (lex.cur.kind != Token::Kind::Ident) fail("expected identifier");
    std::string t = lex.cur.text;
    // '%' is reserved for generated names; only the canonical "%n" form is
    // accepted back (so pretty-printed normal forms re-parse).
    if (t.find('%') != std::string::npos) {
      bool canonical = t.size() > 1 && t[0] == '%' &&
                       t.find_first_not_of("0123456789", 1) == std::string::npos;
      if (!canonical) fail("'%' is reserved for generated names");
    }
    lex.advance();
    return t;
  }

  Rat eat_rational() {
    bool neg = false;
    if (at_punct("-")) {
      neg = true;
      lex.advance();
    }
    if (lex.cur.kind != Token::Kind::Number) fail("expected rational literal");
    auto q = rat_parse(lex.cur.text);
    if (!q) fail("malformed rational '" + lex.cur.text + "'");
    lex.advance();
    return neg ? Rat(-*q) : *q;
  }

  ExprPtr with_loc(ExprPtr e, int line, int col) {
    auto m = std::const_pointer_cast<Expr>(e);
    m->line = line;
    m->col = col;
    return m;
  }

  ExprPtr parse_expr() {
    int line = lex.cur.line, col = lex.cur.col;
    if (at_kw("let")) {
      lex.advance();
      std::string x = eat_ident();
      eat_punct("=");
      ExprPtr bound = parse_expr();
      eat_kw("in");
      ExprPtr body = parse_expr();
      return with_loc(mk_let(std::move(x), std::move(bound), std::move(body)), line, col);
    }
    if (at_kw("fun")) {
      lex.advance();
      std::string f = eat_ident();
      std::string x = eat_ident();
      eat_punct("=");
      ExprPtr body = parse_expr();
      return with_loc(mk_fun(std::move(f), std::move(x), std::move(body)), line, col);
    }
    if (at_kw("if")) {
      lex.advance();
      ExprPtr c = parse_expr();
      eat_kw("then");
      ExprPtr t = parse_expr();
      eat_kw("else");
      ExprPtr f = parse_expr();
      return with_loc(mk_cond(std::move(c), std::move(t), std::move(f)), line, col);
    }
    if (at_kw("tick")) {
      lex.advance();
      Rat q = eat_rational();
      eat_kw("in");
      ExprPtr body = parse_expr();
      return with_loc(mk_tick(std::move(q), std::move(body)), line, col);
    }
    if (at_kw("case")) {
      lex.advance();
      ExprPtr scrut = parse_expr();
      eat_kw("of");
      if (at_punct("(")) {
        // case p of (x, y) -> e
        lex.advance();
        std::string x = eat_ident();
        eat_punct(",");
        std::string y = eat_ident();
        eat_punct(")");
        eat_punct("->");
        ExprPtr body = parse_expr();
        return with_loc(
            mk_case_pair(std::move(scrut), std::move(x), std::move(y), std::move(body)), line,
            col);
      }
      if (at_punct("|")) lex.advance();
      ExprPtr nil_br, cons_br;
      std::string h, t;
      bool have_nil = false, have_cons = false;
      for (int i = 0; i < 2; ++i) {
        if (at_punct("[]")) {
          lex.advance();
          eat_punct("->");
          nil_br = parse_expr();
          have_nil = true;
        } else {
          h = eat_ident();
          eat_punct("::");
          t = eat_ident();
          eat_punct("->");
          cons_br = parse_expr();
          have_cons = true;
        }
        if (i == 0) eat_punct("|");
      }
      if (!have_nil || !have_cons) fail("case needs a [] branch and a cons branch");
      return with_loc(mk_case_list(std::move(scrut), std::move(nil_br), std::move(h),
                                   std::move(t), std::move(cons_br)),
                      line, col);
    }
    return parse_cons();
  }

  ExprPtr parse_cons() {
    int line = lex.cur.line, col = lex.cur.col;
    ExprPtr lhs = parse_app();
    if (at_punct("::")) {
      lex.advance();
      ExprPtr rhs = parse_cons();  // right associative
      return with_loc(mk_cons(std::move(lhs), std::move(rhs)), line, col);
    }
    return lhs;
  }

  bool at_atom_start() const {
    return lex.cur.kind == Token::Kind::Ident || at_punct("(") || at_punct("[]") ||
           at_kw("true") || at_kw("false");
  }

  ExprPtr parse_app() {
    int line = lex.cur.line, col = lex.cur.col;
    ExprPtr e = parse_atom();
    while (at_atom_start()) {
      ExprPtr arg = parse_atom();
      e = with_loc(mk_app(std::move(e), std::move(arg)), line, col);
    }
    return e;
  }

  ExprPtr parse_atom() {
    int line = lex.cur.line, col = lex.cur.col;
    if (at_kw("true") || at_kw("false")) {
      bool v = lex.cur.text == "true";
      lex.advance();
      return with_loc(mk_bool(v), line, col);
    }
    if (at_punct("[]")) {
      lex.advance();
      return with_loc(mk_nil(), line, col);
    }
    if (lex.cur.kind == Token::Kind::Ident) {
      return with_loc(mk_var(eat_ident()), line, col);
    }
    if (at_punct("(")) {
      lex.advance();
      ExprPtr e = parse_expr();
      if (at_punct(",")) {
        lex.advance();
        ExprPtr snd = parse_expr();
        eat_punct(")");
        return with_loc(mk_pair(std::move(e), std::move(snd)), line, col);
      }
      eat_punct(")");
      return e;
    }
    fail("expected expression");
  }
};

void scope_check(const Expr& e, std::set<std::string>& bound) {
  switch (e.kind) {
    case Expr::Kind::Bool:
    case Expr::Kind::Nil:
      return;
    case Expr::Kind::Var:
      if (!bound.count(e.s1))
        throw ParseError("unbound variable '" + e.s1 + "'", e.line, e.col);
      return;
    case Expr::Kind::Cond:
      scope_check(*e.a, bound);
      scope_check(*e.b, bound);
      scope_check(*e.c, bound);
      return;
    case Expr::Kind::Cons:
    case Expr::Kind::App:
    case Expr::Kind::Pair:
      scope_check(*e.a, bound);
      scope_check(*e.b, bound);
      return;
    case Expr::Kind::CaseList: {
      scope_check(*e.a, bound);
      scope_check(*e.b, bound);
      bool h = bound.insert(e.s1).second;
      bool t = bound.insert(e.s2).second;
      scope_check(*e.c, bound);
      if (h) bound.erase(e.s1);
      if (t) bound.erase(e.s2);
      return;
    }
    case Expr::Kind::CasePair: {
      scope_check(*e.a, bound);
      bool x = bound.insert(e.s1).second;
      bool y = bound.insert(e.s2).second;
      scope_check(*e.b, bound);
      if (x) bound.erase(e.s1);
      if (y) bound.erase(e.s2);
      return;
    }
    case Expr::Kind::Let: {
      scope_check(*e.a, bound);
      bool x = bound.insert(e.s1).second;
      scope_check(*e.b, bound);
      if (x) bound.erase(e.s1);
      return;
    }
    case Expr::Kind::Fun: {
      bool f = bound.insert(e.s1).second;
      bool x = bound.insert(e.s2).second;
      scope_check(*e.a, bound);
      if (f) bound.erase(e.s1);
      if (x) bound.erase(e.s2);
      return;
    }
    case Expr::Kind::Tick:
      scope_check(*e.a, bound);
      return;
  }
}

}  // namespace

ExprPtr parse(const std::string& source) {
  Parser p(source);
  ExprPtr e = p.parse_expr();
  if (p.lex.cur.kind != Token::Kind::End) p.fail("trailing input");
  return e;
}

ExprPtr parse_program(const std::string& source) {
  Parser p(source);
  // A sequence of top-level `fun NAME ARG = BODY` declarations desugars to
  // a let chain; each declaration's self name is its binder.
  std::vector<std::pair<std::string, ExprPtr>> decls;
  while (p.at_kw("fun")) {
    int line = p.lex.cur.line, col = p.lex.cur.col;
    p.lex.advance();
    std::string name = p.eat_ident();
    std::string arg = p.eat_ident();
    p.eat_punct("=");
    ExprPtr body = p.parse_expr();
    decls.emplace_back(name, p.with_loc(mk_fun(name, std::move(arg), std::move(body)), line, col));
  }
  ExprPtr root;
  if (decls.empty()) {
    root = p.parse_expr();
  } else if (p.lex.cur.kind == Token::Kind::End) {
    root = mk_var(decls.back().first);
    for (auto it = decls.rbegin(); it != decls.rend(); ++it)
      root = mk_let(it->first, it->second, std::move(root));
  } else {
    p.fail("expected another declaration or end of input");
  }
  if (p.lex.cur.kind != Token::Kind::End) p.fail("trailing input");
  std::set<std::string> bound;
  scope_check(*root, bound);
  return root;
}

ValuePtr parse_value(const std::string& source) {
  size_t pos = 0;
  std::function<void()> ws = [&] {
    while (pos < source.size() && isspace(static_cast<unsigned char>(source[pos]))) ++pos;
  };
  std::function<ValuePtr()> val = [&]() -> ValuePtr {
    ws();
    if (pos >= source.size()) throw LangError("value: unexpected end of input");
    if (source.compare(pos, 4, "true") == 0) {
      pos += 4;
      return mk_vbool(true);
    }
    if (source.compare(pos, 5, "false") == 0) {
      pos += 5;
      return mk_vbool(false);
    }
    if (source[pos] == '[') {
      ++pos;
      ws();
      std::vector<ValuePtr> elems;
      if (pos < source.size() && source[pos] == ']') {
        ++pos;
        return mk_vnil();
      }
      while (true) {
        elems.push_back(val());
        ws();
        if (pos < source.size() && source[pos] == ',') {
          ++pos;
          continue;
        }
        if (pos < source.size() && source[pos] == ']') {
          ++pos;
          break;
        }
        throw LangError("value: expected ',' or ']'");
      }
      return mk_vlist(elems);
    }
    if (source[pos] == '(') {
      ++pos;
      ValuePtr a = val();
      ws();
      if (pos >= source.size() || source[pos] != ',') throw LangError("value: expected ','");
      ++pos;
      ValuePtr b = val();
      ws();
      if (pos >= source.size() || source[pos] != ')') throw LangError("value: expected ')'");
      ++pos;
      return mk_vpair(std::move(a), std::move(b));
    }
    throw LangError(std::string("value: unexpected character '") + source[pos] + "'");
  };
  ValuePtr v = val();
  ws();
  if (pos != source.size()) throw LangError("value: trailing input");
  return v;
}

}  // namespace lincost
