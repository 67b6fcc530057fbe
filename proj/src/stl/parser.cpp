#include "stlopt/stl/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

#include "stlopt/error.hpp"

namespace stlopt::stl {
namespace {

enum class Tok { Ident, Number, LBracket, RBracket, LParen, RParen, Comma, Bang, Amp, Pipe, Cmp, End };

struct Token {
  Tok kind;
  std::string_view text;
  int line;
  int column;
};

const char* describe(Tok kind) {
  switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Cmp: return "comparison operator";
    case Tok::End: return "end of input";
  }
  return "token";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    const int line = line_;
    const int column = column_;
    if (pos_ >= src_.size()) return {Tok::End, {}, line, column};

    const std::size_t start = pos_;
    const char c = src_[pos_];
    auto single = [&](Tok kind) {
      advance();
      return Token{kind, src_.substr(start, 1), line, column};
    };
    switch (c) {
      case '[': return single(Tok::LBracket);
      case ']': return single(Tok::RBracket);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case ',': return single(Tok::Comma);
      case '!': return single(Tok::Bang);
      case '&': return single(Tok::Amp);
      case '|': return single(Tok::Pipe);
      case '<':
      case '>':
        advance();
        if (pos_ < src_.size() && src_[pos_] == '=') advance();
        return {Tok::Cmp, src_.substr(start, pos_ - start), line, column};
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        advance();
      }
      return {Tok::Ident, src_.substr(start, pos_ - start), line, column};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+') {
      if (c == '-' || c == '+') advance();
      digits();
      if (pos_ < src_.size() && src_[pos_] == '.') {
        advance();
        digits();
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        advance();
        if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) advance();
        digits();
      }
      return {Tok::Number, src_.substr(start, pos_ - start), line, column};
    }
    throw ParseError(ErrorCode::Syntax, std::string("unexpected character '") + c + "'", line, column);
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }
  void digits() {
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) {
    current_ = lexer_.next();
    lookahead_ = lexer_.next();
  }

  Formula parse() {
    Formula f = parse_or();
    if (current_.kind != Tok::End) fail("end of input");
    return f;
  }

 private:
  [[noreturn]] void fail(const char* expected) const {
    std::string found = current_.kind == Tok::End ? "end of input"
                                                  : "'" + std::string(current_.text) + "'";
    throw ParseError(ErrorCode::Syntax, std::string("expected ") + expected + ", found " + found,
                     current_.line, current_.column);
  }

  void bump() {
    current_ = lookahead_;
    lookahead_ = lexer_.next();
  }

  Token expect(Tok kind) {
    if (current_.kind != kind) fail(describe(kind));
    Token t = current_;
    bump();
    return t;
  }

  bool at_keyword(std::string_view word) const {
    return current_.kind == Tok::Ident && current_.text == word && lookahead_.kind == Tok::LBracket;
  }

  Formula parse_or() {
    std::vector<Formula> args{parse_and()};
    while (current_.kind == Tok::Pipe) {
      bump();
      args.push_back(parse_and());
    }
    return args.size() == 1 ? args.front() : Formula::disjunction(std::move(args));
  }

  Formula parse_and() {
    std::vector<Formula> args{parse_unary()};
    while (current_.kind == Tok::Amp) {
      bump();
      args.push_back(parse_unary());
    }
    return args.size() == 1 ? args.front() : Formula::conjunction(std::move(args));
  }

  Formula parse_unary() {
    if (current_.kind == Tok::Bang) {
      bump();
      return Formula::negation(parse_unary());
    }
    if (at_keyword("G") || at_keyword("F")) {
      const bool always = current_.text == "G";
      bump();
      Interval interval = parse_interval();
      expect(Tok::LParen);
      Formula arg = parse_or();
      expect(Tok::RParen);
      return always ? Formula::globally(interval, std::move(arg))
                    : Formula::eventually(interval, std::move(arg));
    }
    if (current_.kind == Tok::LParen) {
      bump();
      Formula inner = parse_or();
      if (at_keyword("U")) {
        bump();
        Interval interval = parse_interval();
        Formula rhs = parse_or();
        expect(Tok::RParen);
        return Formula::until(interval, std::move(inner), std::move(rhs));
      }
      if (current_.kind != Tok::RParen) fail("')' or 'U'");
      bump();
      return inner;
    }
    if (current_.kind == Tok::Ident) return parse_atom();
    fail("formula");
  }

  Formula parse_atom() {
    Token ident = expect(Tok::Ident);
    if (current_.kind != Tok::Cmp) fail("comparison operator");
    Comparison cmp = current_.text == "<"    ? Comparison::Less
                     : current_.text == "<=" ? Comparison::LessEqual
                     : current_.text == ">"  ? Comparison::Greater
                                             : Comparison::GreaterEqual;
    bump();
    double threshold = parse_number();
    return Formula::predicate(std::string(ident.text), cmp, threshold);
  }

  double parse_number() {
    if (current_.kind != Tok::Number) fail("number");
    std::string_view text = current_.text;
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
      fail("number");
    }
    bump();
    return value;
  }

  Interval parse_interval() {
    Token open = expect(Tok::LBracket);
    double lower = parse_number();
    expect(Tok::Comma);
    double upper = parse_number();
    expect(Tok::RBracket);
    try {
      return Interval(lower, upper);
    } catch (const Error& e) {
      throw ParseError(ErrorCode::InvalidInterval, e.what(), open.line, open.column);
    }
  }

  Lexer lexer_;
  Token current_{};
  Token lookahead_{};
};

void format_into(const Formula& f, std::string& out);

std::string interval_text(const Interval& i) {
  return "[" + format_number(i.lower()) + "," + format_number(i.upper()) + "]";
}

void format_args(const std::vector<Formula>& args, const char* sep, bool wrap_and, std::string& out) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += sep;
    const bool wrap = args[i].as<Disjunction>() != nullptr || (wrap_and && args[i].as<Conjunction>());
    if (wrap) out += '(';
    format_into(args[i], out);
    if (wrap) out += ')';
  }
}

void format_into(const Formula& f, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Predicate>) {
          out += n.channel;
          out += ' ';
          out += to_string(n.comparison);
          out += ' ';
          out += format_number(n.threshold);
        } else if constexpr (std::is_same_v<T, Negation>) {
          out += "!(";
          format_into(n.arg, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, Conjunction>) {
          format_args(n.args, " & ", true, out);
        } else if constexpr (std::is_same_v<T, Disjunction>) {
          format_args(n.args, " | ", false, out);
        } else if constexpr (std::is_same_v<T, Until>) {
          out += '(';
          format_into(n.lhs, out);
          out += " U" + interval_text(n.interval) + " ";
          format_into(n.rhs, out);
          out += ')';
        } else {
          out += std::is_same_v<T, Globally> ? "G" : "F";
          out += interval_text(n.interval);
          out += '(';
          format_into(n.arg, out);
          out += ')';
        }
      },
      static_cast<const FormulaNode::variant&>(f.node()));
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string format_formula(const Formula& f) {
  std::string out;
  format_into(f, out);
  return out;
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace stlopt::stl
