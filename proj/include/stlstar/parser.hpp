// Recursive-descent parser for the formula language.
//
// Grammar sketch (lowest to highest precedence):
//   formula  := until ( ('&&' | '||') until )*     -- no mixing without parens? see note
//   Actually: or > and > until > unary.
//   or       := and ( '||' and )*
//   and      := until ( '&&' until )*
//   until    := unary ( 'U' window? until )?        -- right associative
//   unary    := '!' unary | 'G' window? unary | 'F' window? unary
//             | 'freeze' '(' frozen ')' '.' unary
//             | '(' or ')' | atom
//   atom     := expr cmp expr | expr 'in' '[' expr ',' expr ']'
//   expr     := usual arithmetic over numbers, sK, sK*H, abs/min/max
//
// 's' is shorthand for 's1'; 's*' for 's1*1'; 'sK*' for 'sK*1'.
// Untimed G/F/U mean the window [0, inf). 'a -> b' desugars to '!a || b',
// 'a in [lo,hi]' to 'a >= lo && a <= hi'.

#ifndef STLSTAR_PARSER_HPP
#define STLSTAR_PARSER_HPP

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "formula.hpp"

namespace stlstar {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                           std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

namespace detail {

enum class Tok {
  End, Number, Signal, Frozen, LParen, RParen, LBracket, RBracket, Comma,
  Plus, Minus, Star, Slash, Not, AndAnd, OrOr, Arrow, Lt, Le, Gt, Ge,
  KwG, KwF, KwU, KwFreeze, KwIn, KwAbs, KwMin, KwMax, Dot,
};

struct Token {
  Tok kind = Tok::End;
  double number = 0.0;
  int dim = 0;   // Signal / Frozen
  int occ = 0;   // Frozen
  int line = 1;
  int col = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) { tokenize(); }
  const std::vector<Token>& tokens() const { return toks_; }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col_);
  }

  void push(Tok k, int startcol) {
    Token t;
    t.kind = k;
    t.line = line_;
    t.col = startcol;
    toks_.push_back(t);
  }

  void tokenize() {
    std::size_t i = 0;
    while (i < src_.size()) {
      char c = src_[i];
      int startcol = col_;
      if (c == '\n') { ++line_; col_ = 1; ++i; continue; }
      if (std::isspace(static_cast<unsigned char>(c))) { ++col_; ++i; continue; }

      auto advance = [&](std::size_t n) { i += n; col_ += static_cast<int>(n); };

      if (std::isdigit(static_cast<unsigned char>(c)) ||
          (c == '.' && i + 1 < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[i + 1])))) {
        std::size_t j = i;
        while (j < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[j])) || src_[j] == '.' ||
                src_[j] == 'e' || src_[j] == 'E' ||
                ((src_[j] == '+' || src_[j] == '-') && j > i &&
                 (src_[j - 1] == 'e' || src_[j - 1] == 'E'))))
          ++j;
        Token t;
        t.kind = Tok::Number;
        t.number = std::strtod(src_.substr(i, j - i).c_str(), nullptr);
        t.line = line_;
        t.col = startcol;
        toks_.push_back(t);
        advance(j - i);
        continue;
      }

      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_'))
          ++j;
        std::string word = src_.substr(i, j - i);
        if (word == "G") { push(Tok::KwG, startcol); advance(j - i); continue; }
        if (word == "F") { push(Tok::KwF, startcol); advance(j - i); continue; }
        if (word == "U") { push(Tok::KwU, startcol); advance(j - i); continue; }
        if (word == "freeze") { push(Tok::KwFreeze, startcol); advance(j - i); continue; }
        if (word == "in") { push(Tok::KwIn, startcol); advance(j - i); continue; }
        if (word == "abs") { push(Tok::KwAbs, startcol); advance(j - i); continue; }
        if (word == "min") { push(Tok::KwMin, startcol); advance(j - i); continue; }
        if (word == "max") { push(Tok::KwMax, startcol); advance(j - i); continue; }
        if (word[0] == 's') {
          int dim = 1;
          if (word.size() > 1) {
            for (std::size_t k = 1; k < word.size(); ++k)
              if (!std::isdigit(static_cast<unsigned char>(word[k])))
                fail("unknown identifier '" + word + "'");
            dim = std::atoi(word.c_str() + 1);
            if (dim < 1) fail("signal dimensions are 1-based");
          }
          advance(j - i);
          // Optional '*occ' suffix turns a signal into a frozen variable.
          if (i < src_.size() && src_[i] == '*') {
            // Only when followed by a digit or a non-expression context:
            // 's*2' is frozen occurrence 2, 's * 2' is multiplication.
            std::size_t k = i + 1;
            bool frozen = false;
            int occ = 1;
            if (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) {
              std::size_t m = k;
              while (m < src_.size() && std::isdigit(static_cast<unsigned char>(src_[m])))
                ++m;
              // 's*2' with no further digits-led expression: treat as frozen.
              // Disambiguation rule: a '*' directly attached to the signal
              // name (no whitespace) followed by digits is a frozen variable.
              occ = std::atoi(src_.substr(k, m - k).c_str());
              frozen = true;
              advance(m - i);
            } else {
              // bare 's*' (occurrence 1) when not followed by an operand
              char nxt = (k < src_.size()) ? src_[k] : '\0';
              if (!(std::isalnum(static_cast<unsigned char>(nxt)) || nxt == '(' ||
                    nxt == '.')) {
                frozen = true;
                advance(1);
              } else if (nxt == ')' || nxt == '.') {
                frozen = true;
                advance(1);
              }
            }
            if (frozen) {
              Token t;
              t.kind = Tok::Frozen;
              t.dim = dim;
              t.occ = occ;
              t.line = line_;
              t.col = startcol;
              toks_.push_back(t);
              continue;
            }
          }
          Token t;
          t.kind = Tok::Signal;
          t.dim = dim;
          t.line = line_;
          t.col = startcol;
          toks_.push_back(t);
          continue;
        }
        fail("unknown identifier '" + word + "'");
      }

      switch (c) {
        case '(': push(Tok::LParen, startcol); advance(1); continue;
        case ')': push(Tok::RParen, startcol); advance(1); continue;
        case '[': push(Tok::LBracket, startcol); advance(1); continue;
        case ']': push(Tok::RBracket, startcol); advance(1); continue;
        case ',': push(Tok::Comma, startcol); advance(1); continue;
        case '+': push(Tok::Plus, startcol); advance(1); continue;
        case '*': push(Tok::Star, startcol); advance(1); continue;
        case '/': push(Tok::Slash, startcol); advance(1); continue;
        case '.': push(Tok::Dot, startcol); advance(1); continue;
        case '-':
          if (i + 1 < src_.size() && src_[i + 1] == '>') { push(Tok::Arrow, startcol); advance(2); }
          else { push(Tok::Minus, startcol); advance(1); }
          continue;
        case '!': push(Tok::Not, startcol); advance(1); continue;
        case '&':
          if (i + 1 < src_.size() && src_[i + 1] == '&') { push(Tok::AndAnd, startcol); advance(2); continue; }
          fail("expected '&&'");
        case '|':
          if (i + 1 < src_.size() && src_[i + 1] == '|') { push(Tok::OrOr, startcol); advance(2); continue; }
          fail("expected '||'");
        case '<':
          if (i + 1 < src_.size() && src_[i + 1] == '=') { push(Tok::Le, startcol); advance(2); }
          else { push(Tok::Lt, startcol); advance(1); }
          continue;
        case '>':
          if (i + 1 < src_.size() && src_[i + 1] == '=') { push(Tok::Ge, startcol); advance(2); }
          else { push(Tok::Gt, startcol); advance(1); }
          continue;
        default:
          fail(std::string("unexpected character '") + c + "'");
      }
    }
    Token t;
    t.kind = Tok::End;
    t.line = line_;
    t.col = col_;
    toks_.push_back(t);
  }

  const std::string& src_;
  std::vector<Token> toks_;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
public:
  explicit Parser(const std::vector<Token>& toks) : toks_(toks) {}

  FormulaPtr parse_formula() {
    FormulaPtr f = parse_or();
    expect(Tok::End, "end of input");
    return f;
  }

private:
  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur().line, cur().col);
  }

  void expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    ++pos_;
  }

  TimeWindow parse_window_opt() {
    TimeWindow w;  // defaults to [0, inf)
    if (!at(Tok::LBracket)) return w;
    ++pos_;
    if (!at(Tok::Number)) fail("expected window lower bound");
    w.lo = take().number;
    expect(Tok::Comma, "','");
    if (!at(Tok::Number)) fail("expected window upper bound");
    w.hi = take().number;
    expect(Tok::RBracket, "']'");
    if (w.lo < 0.0 || w.hi < w.lo) fail("bad time window");
    return w;
  }

  FormulaPtr parse_or() {
    FormulaPtr f = parse_impl();
    while (at(Tok::OrOr)) {
      ++pos_;
      f = make_or(f, parse_impl());
    }
    return f;
  }

  // '->' sits between || and &&, right associative, desugars immediately.
  FormulaPtr parse_impl() {
    FormulaPtr f = parse_and();
    if (at(Tok::Arrow)) {
      ++pos_;
      return make_or(make_not(f), parse_impl());
    }
    return f;
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_until();
    while (at(Tok::AndAnd)) {
      ++pos_;
      f = make_and(f, parse_until());
    }
    return f;
  }

  FormulaPtr parse_until() {
    FormulaPtr f = parse_unary();
    if (at(Tok::KwU)) {
      ++pos_;
      TimeWindow w = parse_window_opt();
      return make_temporal(NodeKind::Until, w, f, parse_until());
    }
    return f;
  }

  FormulaPtr parse_unary() {
    if (at(Tok::Not)) {
      ++pos_;
      return make_not(parse_unary());
    }
    if (at(Tok::KwG) || at(Tok::KwF)) {
      NodeKind k = at(Tok::KwG) ? NodeKind::Always : NodeKind::Eventually;
      ++pos_;
      TimeWindow w = parse_window_opt();
      return make_temporal(k, w, parse_unary());
    }
    if (at(Tok::KwFreeze)) {
      ++pos_;
      expect(Tok::LParen, "'('");
      if (!at(Tok::Frozen)) fail("expected frozen variable like s*1 or s2*1");
      Token v = take();
      expect(Tok::RParen, "')'");
      expect(Tok::Dot, "'.'");
      return make_freeze(v.dim, v.occ, parse_unary());
    }
    if (at(Tok::LParen)) {
      // Could be a grouped formula or a parenthesized arithmetic expression
      // starting an atom; try the formula reading first and backtrack.
      std::size_t save = pos_;
      ++pos_;
      try {
        FormulaPtr f = parse_or();
        expect(Tok::RParen, "')'");
        return f;
      } catch (const ParseError&) {
        pos_ = save;
      }
    }
    return parse_atom();
  }

  FormulaPtr parse_atom() {
    ExprPtr lhs = parse_expr();
    if (at(Tok::KwIn)) {
      ++pos_;
      expect(Tok::LBracket, "'['");
      ExprPtr lo = parse_expr();
      expect(Tok::Comma, "','");
      ExprPtr hi = parse_expr();
      expect(Tok::RBracket, "']'");
      return make_and(make_atom(lhs, CmpOp::GE, lo), make_atom(lhs, CmpOp::LE, hi));
    }
    CmpOp cmp;
    if (at(Tok::Lt)) cmp = CmpOp::LT;
    else if (at(Tok::Le)) cmp = CmpOp::LE;
    else if (at(Tok::Gt)) cmp = CmpOp::GT;
    else if (at(Tok::Ge)) cmp = CmpOp::GE;
    else fail("expected comparison operator");
    ++pos_;
    return make_atom(lhs, cmp, parse_expr());
  }

  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      ExprOp op = at(Tok::Plus) ? ExprOp::Add : ExprOp::Sub;
      ++pos_;
      e = expr_binary(op, e, parse_term());
    }
    return e;
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_factor();
    while (at(Tok::Star) || at(Tok::Slash)) {
      ExprOp op = at(Tok::Star) ? ExprOp::Mul : ExprOp::Div;
      ++pos_;
      e = expr_binary(op, e, parse_factor());
    }
    return e;
  }

  ExprPtr parse_factor() {
    if (at(Tok::Minus)) {
      ++pos_;
      return expr_unary(ExprOp::Neg, parse_factor());
    }
    if (at(Tok::Number)) return expr_const(take().number);
    if (at(Tok::Signal)) return expr_signal(take().dim);
    if (at(Tok::Frozen)) {
      Token t = take();
      return expr_frozen(t.dim, t.occ);
    }
    if (at(Tok::KwAbs)) {
      ++pos_;
      expect(Tok::LParen, "'('");
      ExprPtr a = parse_expr();
      expect(Tok::RParen, "')'");
      return expr_unary(ExprOp::Abs, a);
    }
    if (at(Tok::KwMin) || at(Tok::KwMax)) {
      ExprOp op = at(Tok::KwMin) ? ExprOp::Min : ExprOp::Max;
      ++pos_;
      expect(Tok::LParen, "'('");
      ExprPtr a = parse_expr();
      expect(Tok::Comma, "','");
      ExprPtr b = parse_expr();
      expect(Tok::RParen, "')'");
      return expr_binary(op, a, b);
    }
    if (at(Tok::LParen)) {
      ++pos_;
      ExprPtr e = parse_expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    fail("expected expression");
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses a formula and checks freeze-variable bindings.
inline FormulaPtr parse_formula(const std::string& src) {
  detail::Lexer lex(src);
  detail::Parser p(lex.tokens());
  FormulaPtr f = p.parse_formula();
  check_bindings(*f);
  return f;
}

}  // namespace stlstar

#endif  // STLSTAR_PARSER_HPP
