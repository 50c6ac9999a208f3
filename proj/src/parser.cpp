#include "certinum/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <optional>

namespace certinum::lang {

namespace {

enum class Tok {
  End,
  Ident,
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Semi,
  Dot,
  Assign,   // :=
  ColonColon,
  Colon,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  Pipe,
  Arrow,    // -->
  Quote,    // "
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double number = 0.0;
  bool integral = false;     // number had no '.'/exponent
  std::uint64_t nat = 0;
  std::size_t line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { tokenize(); }

  const std::vector<Token>& tokens() const { return toks_; }

 private:
  [[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& m) const {
    throw ParseError(line, col, m);
  }

  void tokenize() {
    std::size_t i = 0, line = 1, col = 1;
    auto push = [&](Tok k, std::string text, std::size_t l, std::size_t c) {
      Token t;
      t.kind = k;
      t.text = std::move(text);
      t.line = l;
      t.col = c;
      toks_.push_back(std::move(t));
    };
    while (i < src_.size()) {
      char ch = src_[i];
      std::size_t l = line, c = col;
      auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
          if (src_[i] == '\n') {
            ++line;
            col = 1;
          } else {
            ++col;
          }
          ++i;
        }
      };
      if (ch == '-' && i + 1 < src_.size() && src_[i + 1] == '-' &&
          !(i + 2 < src_.size() && src_[i + 2] == '>')) {
        while (i < src_.size() && src_[i] != '\n') advance(1);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(ch))) {
        advance(1);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t start = i;
        while (i < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[i])) || src_[i] == '_'))
          advance(1);
        push(Tok::Ident, src_.substr(start, i - start), l, c);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::size_t start = i;
        bool integral = true;
        while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) advance(1);
        if (i < src_.size() && src_[i] == '.' && i + 1 < src_.size() &&
            std::isdigit(static_cast<unsigned char>(src_[i + 1]))) {
          integral = false;
          advance(1);
          while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) advance(1);
        }
        if (i < src_.size() && (src_[i] == 'e' || src_[i] == 'E')) {
          std::size_t save = i;
          std::size_t j = i + 1;
          if (j < src_.size() && (src_[j] == '+' || src_[j] == '-')) ++j;
          if (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) {
            integral = false;
            advance(j - i);
            while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i])))
              advance(1);
          } else {
            i = save;
          }
        }
        Token t;
        t.kind = Tok::Number;
        t.text = src_.substr(start, i - start);
        t.number = std::strtod(t.text.c_str(), nullptr);
        t.integral = integral;
        if (integral) t.nat = std::strtoull(t.text.c_str(), nullptr, 10);
        t.line = l;
        t.col = c;
        toks_.push_back(std::move(t));
        continue;
      }
      auto two = [&](const char* s) {
        return i + 1 < src_.size() && src_[i] == s[0] && src_[i + 1] == s[1];
      };
      if (i + 2 < src_.size() && src_[i] == '-' && src_[i + 1] == '-' && src_[i + 2] == '>') {
        push(Tok::Arrow, "-->", l, c);
        advance(3);
        continue;
      }
      if (two(":=")) { push(Tok::Assign, ":=", l, c); advance(2); continue; }
      if (two("::")) { push(Tok::ColonColon, "::", l, c); advance(2); continue; }
      if (two("<=")) { push(Tok::Le, "<=", l, c); advance(2); continue; }
      if (two(">=")) { push(Tok::Ge, ">=", l, c); advance(2); continue; }
      if (two("!=")) { push(Tok::Ne, "!=", l, c); advance(2); continue; }
      switch (ch) {
        case '(': push(Tok::LParen, "(", l, c); advance(1); continue;
        case ')': push(Tok::RParen, ")", l, c); advance(1); continue;
        case '[': push(Tok::LBracket, "[", l, c); advance(1); continue;
        case ']': push(Tok::RBracket, "]", l, c); advance(1); continue;
        case ',': push(Tok::Comma, ",", l, c); advance(1); continue;
        case ';': push(Tok::Semi, ";", l, c); advance(1); continue;
        case '.': push(Tok::Dot, ".", l, c); advance(1); continue;
        case ':': push(Tok::Colon, ":", l, c); advance(1); continue;
        case '=': push(Tok::Eq, "=", l, c); advance(1); continue;
        case '<': push(Tok::Lt, "<", l, c); advance(1); continue;
        case '>': push(Tok::Gt, ">", l, c); advance(1); continue;
        case '+': push(Tok::Plus, "+", l, c); advance(1); continue;
        case '-': push(Tok::Minus, "-", l, c); advance(1); continue;
        case '*': push(Tok::Star, "*", l, c); advance(1); continue;
        case '/': push(Tok::Slash, "/", l, c); advance(1); continue;
        case '^': push(Tok::Caret, "^", l, c); advance(1); continue;
        case '|': push(Tok::Pipe, "|", l, c); advance(1); continue;
        case '"': push(Tok::Quote, "\"", l, c); advance(1); continue;
        default:
          fail(l, c, std::string("unexpected character '") + ch + "'");
      }
    }
    Token end;
    end.kind = Tok::End;
    end.line = line;
    end.col = col;
    toks_.push_back(end);
  }

  const std::string& src_;
  std::vector<Token> toks_;
};

bool is_keyword(const std::string& s) {
  static const char* kw[] = {"program", "skip", "if",  "then",      "else",    "fi",
                             "while",   "do",   "od",  "invariant", "variant", "and",
                             "or",      "not",  "true", "false",    "forall",  "exists",
                             "requires", "ensures", "witness", "instance", "sample", "in"};
  for (const char* k : kw)
    if (s == k) return true;
  return false;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : lexer_(src), toks_(lexer_.tokens()) {}

  Program parse_program_toplevel() {
    Program p = parse_program_decl();
    expect_end();
    return p;
  }

  ExprPtr parse_expr_toplevel() {
    ExprPtr e = parse_expr();
    expect_end();
    return e;
  }

  CondPtr parse_cond_toplevel() {
    CondPtr c = parse_cond();
    expect_end();
    return c;
  }

  SpecFile parse_spec_toplevel() {
    SpecFile spec;
    spec.program = parse_program_decl();
    spec.requires_cond = cd::truth();
    spec.ensures_cond = cd::truth();
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (t.kind != Tok::Ident) fail("expected requires/ensures/witness/instance/sample");
      if (t.text == "requires") {
        next();
        expect(Tok::Colon, "':' after requires");
        spec.requires_cond = parse_cond();
      } else if (t.text == "ensures") {
        next();
        expect(Tok::Colon, "':' after ensures");
        spec.ensures_cond = parse_cond();
      } else if (t.text == "witness") {
        next();
        spec.witnesses.push_back(parse_witness());
      } else if (t.text == "instance") {
        next();
        spec.instances.push_back(parse_instance(spec.program));
      } else if (t.text == "sample") {
        next();
        spec.ranges.push_back(parse_range());
      } else {
        fail("unknown stanza '" + t.text + "'");
      }
    }
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(t.line, t.col, msg);
  }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }

  const Token& next() {
    const Token& t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  bool accept(Tok k) {
    if (peek().kind == k) {
      next();
      return true;
    }
    return false;
  }

  bool accept_ident(const char* word) {
    if (peek().kind == Tok::Ident && peek().text == word) {
      next();
      return true;
    }
    return false;
  }

  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    return next();
  }

  std::string expect_name(const char* what) {
    if (peek().kind != Tok::Ident || is_keyword(peek().text))
      fail(std::string("expected ") + what);
    return next().text;
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail("trailing input");
  }

  // -- programs -------------------------------------------------------------

  Program parse_program_decl() {
    if (!accept_ident("program")) fail("expected 'program'");
    Program p;
    p.name = expect_name("program name");
    expect(Tok::LParen, "'('");
    if (!accept(Tok::RParen)) {
      do {
        Param param;
        param.name = expect_name("parameter name");
        expect(Tok::ColonColon, "'::'");
        param.sort = parse_sort();
        p.params.push_back(std::move(param));
      } while (accept(Tok::Comma));
      expect(Tok::RParen, "')'");
    }
    expect(Tok::Eq, "'='");
    bool quoted = accept(Tok::Quote);
    p.body = parse_stmts();
    if (quoted) expect(Tok::Quote, "closing '\"'");
    return p;
  }

  Sort parse_sort() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail("expected sort");
    if (t.text == "real") {
      next();
      return Sort::real();
    }
    if (t.text == "nat") {
      next();
      return Sort::natural();
    }
    if (t.text == "fun") {
      next();
      return Sort::fun();
    }
    if (t.text == "vec") {
      next();
      expect(Tok::LBracket, "'['");
      const Token& n = expect(Tok::Number, "vector dimension");
      if (!n.integral) fail("vector dimension must be an integer");
      expect(Tok::RBracket, "']'");
      return Sort::vec(static_cast<std::size_t>(n.nat));
    }
    fail("unknown sort '" + t.text + "'");
  }

  StmtPtr parse_stmts() {
    std::vector<StmtPtr> stmts;
    stmts.push_back(parse_stmt());
    while (accept(Tok::Semi)) {
      // tolerate a trailing semicolon before a closing construct
      const Token& t = peek();
      if (t.kind == Tok::Quote || t.kind == Tok::End ||
          (t.kind == Tok::Ident && (t.text == "od" || t.text == "fi" || t.text == "else")))
        break;
      stmts.push_back(parse_stmt());
    }
    return st::seq(std::move(stmts));
  }

  StmtPtr parse_stmt() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      if (t.text == "skip") {
        next();
        return st::skip();
      }
      if (t.text == "if") {
        next();
        CondPtr c = parse_cond();
        if (!accept_ident("then")) fail("expected 'then'");
        StmtPtr then_branch = parse_stmts();
        StmtPtr else_branch;
        if (accept_ident("else")) else_branch = parse_stmts();
        if (!accept_ident("fi")) fail("expected 'fi'");
        return st::if_then_else(std::move(c), std::move(then_branch), std::move(else_branch));
      }
      if (t.text == "while") {
        next();
        CondPtr guard = parse_cond();
        if (!accept_ident("invariant")) fail("while missing invariant");
        CondPtr inv = parse_cond();
        if (!accept_ident("variant")) fail("while missing variant");
        ExprPtr var = parse_expr();
        if (!accept_ident("do")) fail("expected 'do'");
        StmtPtr body = parse_stmts();
        if (!accept_ident("od")) fail("expected 'od'");
        return st::while_loop(std::move(guard), std::move(inv), std::move(var), std::move(body));
      }
      if (is_keyword(t.text)) fail("unexpected keyword '" + t.text + "'");
      std::string name = next().text;
      if (accept(Tok::LBracket)) {
        ExprPtr idx = parse_expr();
        expect(Tok::RBracket, "']'");
        expect(Tok::Assign, "':='");
        ExprPtr rhs = parse_expr();
        return st::vec_assign(std::move(name), std::move(idx), std::move(rhs));
      }
      expect(Tok::Assign, "':='");
      ExprPtr rhs = parse_expr();
      return st::assign(std::move(name), std::move(rhs));
    }
    fail("expected statement");
  }

  // -- conditions -----------------------------------------------------------

  CondPtr parse_cond() { return parse_implies(); }

  CondPtr parse_implies() {
    CondPtr lhs = parse_or();
    if (accept(Tok::Arrow)) {
      CondPtr rhs = parse_implies();  // right associative
      return cd::implies(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  CondPtr parse_or() {
    CondPtr c = parse_and();
    while (accept_ident("or")) c = cd::disj(std::move(c), parse_and());
    return c;
  }

  CondPtr parse_and() {
    CondPtr c = parse_not();
    while (accept_ident("and")) c = cd::conj(std::move(c), parse_not());
    return c;
  }

  CondPtr parse_not() {
    if (accept_ident("not")) return cd::negate(parse_not());
    return parse_cond_atom();
  }

  CondPtr parse_cond_atom() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      if (t.text == "true") {
        next();
        return cd::truth();
      }
      if (t.text == "false") {
        next();
        return cd::falsity();
      }
      if (t.text == "forall" || t.text == "exists") {
        bool is_forall = t.text == "forall";
        next();
        std::string binder = expect_name("quantifier index");
        expect(Tok::Lt, "'<'");
        ExprPtr bound = parse_expr();
        expect(Tok::Dot, "'.'");
        CondPtr body = parse_cond();
        return is_forall ? cd::forall(std::move(binder), std::move(bound), std::move(body))
                         : cd::exists(std::move(binder), std::move(bound), std::move(body));
      }
    }
    if (t.kind == Tok::LParen) {
      // '(' may open a parenthesized condition or a parenthesized expression
      // that begins a comparison; try the condition first and fall back.
      std::size_t save = pos_;
      next();
      try {
        CondPtr inner = parse_cond();
        expect(Tok::RParen, "')'");
        switch (peek().kind) {
          case Tok::Lt:
          case Tok::Le:
          case Tok::Gt:
          case Tok::Ge:
          case Tok::Eq:
          case Tok::Ne:
          case Tok::Plus:
          case Tok::Minus:
          case Tok::Star:
          case Tok::Slash:
          case Tok::Caret:
            pos_ = save;  // it was an expression after all
            break;
          default:
            return inner;
        }
      } catch (const ParseError&) {
        pos_ = save;
      }
    }
    return parse_comparison();
  }

  CondPtr parse_comparison() {
    ExprPtr lhs = parse_expr();
    switch (peek().kind) {
      case Tok::Lt:
        next();
        return cd::lt(std::move(lhs), parse_expr());
      case Tok::Le:
        next();
        return cd::le(std::move(lhs), parse_expr());
      case Tok::Gt:
        next();
        return cd::gt(std::move(lhs), parse_expr());
      case Tok::Ge:
        next();
        return cd::ge(std::move(lhs), parse_expr());
      case Tok::Eq:
        next();
        return cd::eq(std::move(lhs), parse_expr());
      case Tok::Ne:
        next();
        return cd::ne(std::move(lhs), parse_expr());
      default:
        fail("expected comparison operator");
    }
  }

  // -- expressions ----------------------------------------------------------

  ExprPtr parse_expr() { return parse_additive(); }

  ExprPtr parse_additive() {
    ExprPtr e = parse_multiplicative();
    for (;;) {
      if (accept(Tok::Plus))
        e = ex::add(std::move(e), parse_multiplicative());
      else if (accept(Tok::Minus))
        e = ex::sub(std::move(e), parse_multiplicative());
      else
        return e;
    }
  }

  ExprPtr parse_multiplicative() {
    ExprPtr e = parse_unary();
    for (;;) {
      if (accept(Tok::Star))
        e = ex::mul(std::move(e), parse_unary());
      else if (accept(Tok::Slash))
        e = ex::div(std::move(e), parse_unary());
      else
        return e;
    }
  }

  ExprPtr parse_unary() {
    if (accept(Tok::Minus)) return ex::neg(parse_unary());
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (accept(Tok::Caret)) {
      // right-associative; exponents are integer-sorted expressions
      ExprPtr exponent = parse_power_exponent();
      return ex::pow(std::move(base), std::move(exponent));
    }
    return base;
  }

  ExprPtr parse_power_exponent() {
    ExprPtr e = parse_atom();
    if (accept(Tok::Caret)) return ex::pow(std::move(e), parse_power_exponent());
    return e;
  }

  ExprPtr parse_atom() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      next();
      if (t.integral) return ex::nat(t.nat);
      return ex::cnst(t.number);
    }
    if (t.kind == Tok::LParen) {
      next();
      ExprPtr e = parse_expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (t.kind == Tok::Pipe) {
      next();
      ExprPtr e = parse_expr();
      expect(Tok::Pipe, "closing '|'");
      return ex::abs(std::move(e));
    }
    if (t.kind == Tok::Ident) {
      if (is_keyword(t.text)) fail("unexpected keyword '" + t.text + "' in expression");
      std::string name = next().text;
      if (accept(Tok::LParen)) {
        std::vector<ExprPtr> args;
        if (!accept(Tok::RParen)) {
          do {
            args.push_back(parse_expr());
          } while (accept(Tok::Comma));
          expect(Tok::RParen, "')'");
        }
        return make_call(name, std::move(args));
      }
      if (accept(Tok::LBracket)) {
        ExprPtr idx = parse_expr();
        expect(Tok::RBracket, "']'");
        return ex::index(std::move(name), std::move(idx));
      }
      return ex::var(std::move(name));
    }
    fail("expected expression");
  }

  ExprPtr make_call(const std::string& name, std::vector<ExprPtr> args) {
    auto arity = [&](std::size_t n) {
      if (args.size() != n)
        fail(name + " expects " + std::to_string(n) + " argument(s)");
    };
    if (name == "abs") { arity(1); return ex::abs(args[0]); }
    if (name == "floor") { arity(1); return ex::floor(args[0]); }
    if (name == "ceil") { arity(1); return ex::ceil(args[0]); }
    if (name == "log2") { arity(1); return ex::log2(args[0]); }
    if (name == "exp") { arity(1); return ex::exp(args[0]); }
    if (name == "ln") { arity(1); return ex::ln(args[0]); }
    if (name == "sin") { arity(1); return ex::sin(args[0]); }
    if (name == "cos") { arity(1); return ex::cos(args[0]); }
    if (name == "nat") { arity(1); return ex::nat_of(args[0]); }
    if (name == "min") { arity(2); return ex::min(args[0], args[1]); }
    if (name == "max") { arity(2); return ex::max(args[0], args[1]); }
    if (name == "iterate") {
      arity(3);
      if (args[0]->kind != ExprKind::Var) fail("iterate expects a function name");
      return ex::iterate(args[0]->name, args[1], args[2]);
    }
    arity(1);
    return ex::apply(name, args[0]);
  }

  // -- spec stanzas ---------------------------------------------------------

  WitnessClause parse_witness() {
    WitnessClause w;
    w.name = expect_name("witness name");
    expect(Tok::Assign, "':='");
    if (peek().kind == Tok::Ident && peek().text == "root" && peek(1).kind == Tok::LParen) {
      next();
      next();
      w.kind = WitnessClause::Kind::RootRefine;
      w.func = expect_name("function parameter");
      expect(Tok::Comma, "','");
      w.lo = parse_expr();
      expect(Tok::Comma, "','");
      w.hi = parse_expr();
      expect(Tok::RParen, "')'");
    } else {
      w.kind = WitnessClause::Kind::Expression;
      w.expr = parse_expr();
    }
    return w;
  }

  std::vector<InstanceBinding> parse_instance(const Program& prog) {
    std::vector<InstanceBinding> bindings;
    do {
      InstanceBinding b;
      b.param = expect_name("parameter name");
      expect(Tok::Eq, "'='");
      const Param* p = prog.find_param(b.param);
      if (!p) fail("instance binds unknown parameter '" + b.param + "'");
      switch (p->sort.kind) {
        case Sort::Kind::Fun: {
          ExprPtr body = parse_expr();
          b.is_func = true;
          b.func = make_funcdef(body);
          break;
        }
        case Sort::Kind::Vec: {
          expect(Tok::LBracket, "'['");
          std::vector<double> xs;
          if (!accept(Tok::RBracket)) {
            do {
              xs.push_back(parse_signed_number());
            } while (accept(Tok::Comma));
            expect(Tok::RBracket, "']'");
          }
          b.value = Value::of_vec(std::move(xs));
          break;
        }
        case Sort::Kind::Nat: {
          const Token& n = expect(Tok::Number, "natural literal");
          if (!n.integral) fail("expected a natural literal");
          b.value = Value::of_nat(n.nat);
          break;
        }
        case Sort::Kind::Real:
          b.value = Value::of_real(parse_signed_number());
          break;
      }
      bindings.push_back(std::move(b));
    } while (accept(Tok::Comma));
    return bindings;
  }

  double parse_signed_number() {
    bool negate = accept(Tok::Minus);
    const Token& n = expect(Tok::Number, "number");
    return negate ? -n.number : n.number;
  }

  SampleRange parse_range() {
    SampleRange r;
    r.param = expect_name("parameter name");
    if (!accept_ident("in")) fail("expected 'in'");
    expect(Tok::LBracket, "'['");
    r.lo = parse_signed_number();
    expect(Tok::Comma, "','");
    r.hi = parse_signed_number();
    expect(Tok::RBracket, "']'");
    return r;
  }

  Lexer lexer_;
  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
};

}  // namespace

FuncDef make_funcdef(const ExprPtr& body) {
  std::vector<std::string> vars;
  collect_vars(*body, vars);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (vars.size() > 1)
    throw std::runtime_error("function literal has more than one free variable: " + vars[0] +
                             ", " + vars[1]);
  return FuncDef{vars.empty() ? "x" : vars[0], body};
}

Program parse_program(const std::string& text) {
  return Parser(text).parse_program_toplevel();
}

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse_expr_toplevel(); }

CondPtr parse_cond(const std::string& text) { return Parser(text).parse_cond_toplevel(); }

SpecFile parse_spec_file(const std::string& text) { return Parser(text).parse_spec_toplevel(); }

}  // namespace certinum::lang
