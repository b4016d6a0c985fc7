#include "skewring/expr.hpp"

#include <cctype>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace skewring {

// --- tree construction ---------------------------------------------------------

Expr Expr::literal(const mpq_class& v) {
  Expr e;
  e.kind = ExprKind::Literal;
  e.value = v;
  return e;
}

Expr Expr::generator(std::string n) {
  Expr e;
  e.kind = ExprKind::Name;
  e.name = std::move(n);
  return e;
}

namespace {

Expr unary(ExprKind k, Expr child) {
  Expr e;
  e.kind = k;
  e.kids.push_back(std::move(child));
  return e;
}

Expr binary(ExprKind k, Expr l, Expr r) {
  Expr e;
  e.kind = k;
  e.kids.push_back(std::move(l));
  e.kids.push_back(std::move(r));
  return e;
}

}  // namespace

Expr Expr::neg(Expr e) { return unary(ExprKind::Neg, std::move(e)); }
Expr Expr::add(Expr l, Expr r) { return binary(ExprKind::Add, std::move(l), std::move(r)); }
Expr Expr::sub(Expr l, Expr r) { return binary(ExprKind::Sub, std::move(l), std::move(r)); }
Expr Expr::mul(Expr l, Expr r) { return binary(ExprKind::Mul, std::move(l), std::move(r)); }
Expr Expr::div(Expr l, Expr r) { return binary(ExprKind::Div, std::move(l), std::move(r)); }

Expr Expr::pow(Expr base, long long e) {
  Expr p = unary(ExprKind::Pow, std::move(base));
  p.exponent = e;
  return p;
}

bool Expr::operator==(const Expr& o) const {
  if (kind != o.kind || kids.size() != o.kids.size()) return false;
  switch (kind) {
    case ExprKind::Literal:
      if (value != o.value) return false;
      break;
    case ExprKind::Name:
      if (name != o.name) return false;
      break;
    case ExprKind::Pow:
      if (exponent != o.exponent) return false;
      break;
    default:
      break;
  }
  for (size_t i = 0; i < kids.size(); ++i) {
    if (!(kids[i] == o.kids[i])) return false;
  }
  return true;
}

// --- lexer -----------------------------------------------------------------------

namespace {

enum class Tok {
  Number,
  Name,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  End,
};

struct Token {
  Tok kind = Tok::End;
  size_t pos = 0;  // 0-based offset of the first character
  std::string text;
};

// 1-based position for error messages.
std::string at_pos(size_t pos) { return " at position " + std::to_string(pos + 1); }

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    Token t;
    t.pos = i;
    if (std::isdigit(c)) {
      size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Tok::Number;
      t.text = text.substr(i, j - i);
      i = j;
    } else if (std::isalpha(c) || c == '_') {
      size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      t.kind = Tok::Name;
      t.text = text.substr(i, j - i);
      i = j;
    } else {
      switch (c) {
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        case '*': t.kind = Tok::Star; break;
        case '/': t.kind = Tok::Slash; break;
        case '^': t.kind = Tok::Caret; break;
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '{': t.kind = Tok::LBrace; break;
        case '}': t.kind = Tok::RBrace; break;
        case ',': t.kind = Tok::Comma; break;
        default:
          fail("parse", std::string("unexpected character '") + text[i] + "'" + at_pos(i));
      }
      t.text = text[i];
      ++i;
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.pos = n;
  out.push_back(std::move(end));
  return out;
}

// --- recursive-descent parser ------------------------------------------------------

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  Expr expression() {
    bool negate = accept(Tok::Minus);
    Expr e = term();
    if (negate) e = Expr::neg(std::move(e));
    for (;;) {
      if (accept(Tok::Plus)) {
        e = Expr::add(std::move(e), term());
      } else if (accept(Tok::Minus)) {
        e = Expr::sub(std::move(e), term());
      } else {
        return e;
      }
    }
  }

  const Token& peek() const { return toks_[at_]; }

  bool accept(Tok k) {
    if (toks_[at_].kind != k) return false;
    ++at_;
    return true;
  }

  void finish() {
    const Token& t = peek();
    if (t.kind != Tok::End) fail("parse", "unexpected trailing input" + at_pos(t.pos));
  }

 private:
  Expr term() {
    Expr e = factor();
    for (;;) {
      if (accept(Tok::Star)) {
        e = Expr::mul(std::move(e), factor());
      } else if (accept(Tok::Slash)) {
        e = Expr::div(std::move(e), factor());
      } else {
        return e;
      }
    }
  }

  Expr factor() {
    Expr a = atom();
    if (!accept(Tok::Caret)) return a;
    bool negate = accept(Tok::Minus);
    const Token& t = peek();
    if (t.kind != Tok::Number)
      fail("parse", "expected an integer exponent" + at_pos(t.pos));
    mpz_class z(t.text);
    if (negate) z = -z;
    if (!z.fits_slong_p()) fail("parse", "exponent out of range" + at_pos(t.pos));
    ++at_;
    return Expr::pow(std::move(a), z.get_si());
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        mpq_class v{mpz_class(t.text)};
        ++at_;
        return Expr::literal(v);
      }
      case Tok::Name: {
        Expr e = Expr::generator(t.text);
        ++at_;
        return e;
      }
      case Tok::LParen: {
        size_t open = t.pos;
        ++at_;
        Expr e = expression();
        if (!accept(Tok::RParen)) {
          fail("parse", "expected ')'" + at_pos(peek().pos) +
                            " (group opened" + at_pos(open) + ")");
        }
        return e;
      }
      case Tok::End:
        fail("parse", "unexpected end of input" + at_pos(t.pos));
      default:
        fail("parse", "expected a literal, a name, or '('" + at_pos(t.pos));
    }
  }

  std::vector<Token> toks_;
  size_t at_ = 0;
};

}  // namespace

Expr parse_expr(const std::string& text) {
  Parser p(text);
  Expr e = p.expression();
  p.finish();
  return e;
}

std::vector<Expr> parse_expr_list(const std::string& text) {
  Parser p(text);
  if (!p.accept(Tok::LBrace)) fail("parse", "expected '{'" + at_pos(p.peek().pos));
  std::vector<Expr> out;
  if (!p.accept(Tok::RBrace)) {
    for (;;) {
      out.push_back(p.expression());
      if (p.accept(Tok::RBrace)) break;
      if (!p.accept(Tok::Comma))
        fail("parse", "expected ',' or '}'" + at_pos(p.peek().pos));
    }
  }
  p.finish();
  return out;
}

// --- printer ---------------------------------------------------------------------

namespace {

// Binding strength used to decide parenthesization; mirrors the grammar
// levels (atoms 4, '^' 3, '*'/'/' 2, '+'/'-' 1, leading '-' 0). Literal
// payloads the grammar cannot spell directly are demoted to 0 so they are
// always parenthesized inside larger trees.
int strength(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Literal:
      return (e.value.get_den() == 1 && e.value >= 0) ? 4 : 0;
    case ExprKind::Name:
      return 4;
    case ExprKind::Pow:
      return 3;
    case ExprKind::Mul:
    case ExprKind::Div:
      return 2;
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
    case ExprKind::Neg:
      return 0;
  }
  return 0;
}

void render(const Expr& e, int need, std::string& out);

void render_raw(const Expr& e, std::string& out) {
  switch (e.kind) {
    case ExprKind::Literal:
      out += e.value.get_str();
      return;
    case ExprKind::Name:
      out += e.name;
      return;
    case ExprKind::Neg:
      out += '-';
      render(e.kids[0], 2, out);
      return;
    case ExprKind::Add:
    case ExprKind::Sub:
      // the left side sits in expression position, where a leading '-' is
      // part of the grammar and needs no parentheses
      render(e.kids[0], 0, out);
      out += e.kind == ExprKind::Add ? " + " : " - ";
      render(e.kids[1], 2, out);
      return;
    case ExprKind::Mul:
    case ExprKind::Div:
      render(e.kids[0], 2, out);
      out += e.kind == ExprKind::Mul ? '*' : '/';
      render(e.kids[1], 3, out);
      return;
    case ExprKind::Pow:
      render(e.kids[0], 4, out);
      out += '^';
      out += std::to_string(e.exponent);
      return;
  }
}

void render(const Expr& e, int need, std::string& out) {
  if (strength(e) < need) {
    out += '(';
    render_raw(e, out);
    out += ')';
  } else {
    render_raw(e, out);
  }
}

}  // namespace

std::string expr_str(const Expr& e) {
  std::string out;
  render(e, 0, out);
  return out;
}

}  // namespace skewring
