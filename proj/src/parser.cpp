#include "srgcert/parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <string>

#include "srgcert/errors.hpp"

namespace srgcert {
namespace {

enum class Tok { Number, S, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket, RBracket,
                 Comma, Semicolon, Dim, End };

struct Token {
  Tok kind;
  double value = 0.0;
  std::size_t offset = 0;
  std::size_t length = 0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blank();
    Token t{Tok::End, 0.0, pos_, 0, line_, column_};
    if (pos_ >= text_.size()) return t;
    const char c = text_[pos_];
    auto single = [&](Tok kind) {
      t.kind = kind;
      t.length = 1;
      advance(1);
      return t;
    };
    switch (c) {
      case '+': return single(Tok::Plus);
      case '-': return single(Tok::Minus);
      case '*': return single(Tok::Star);
      case '/': return single(Tok::Slash);
      case '^': return single(Tok::Caret);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '[': return single(Tok::LBracket);
      case ']': return single(Tok::RBracket);
      case ',': return single(Tok::Comma);
      case ';': return single(Tok::Semicolon);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(t);
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
      const std::string_view word = text_.substr(pos_, end - pos_);
      t.length = word.size();
      if (word == "s") {
        t.kind = Tok::S;
      } else if (word == "dim") {
        t.kind = Tok::Dim;
      } else if (word == "j" || word == "i" || word == "I" || word == "J") {
        throw ParseError("complex coefficients are not supported", line_, column_);
      } else {
        throw ParseError("unknown identifier '" + std::string(word) + "'", line_, column_);
      }
      advance(word.size());
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, column_);
  }

 private:
  Token number(Token t) {
    std::size_t end = pos_;
    auto digits = [&] {
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    };
    digits();
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      digits();
    }
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t exp = end + 1;
      if (exp < text_.size() && (text_[exp] == '+' || text_[exp] == '-')) ++exp;
      if (exp < text_.size() && std::isdigit(static_cast<unsigned char>(text_[exp]))) {
        end = exp;
        digits();
      }
    }
    const std::string_view lit = text_.substr(pos_, end - pos_);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(lit.data(), lit.data() + lit.size(), value);
    if (ec != std::errc() || ptr != lit.data() + lit.size())
      throw ParseError("malformed number '" + std::string(lit) + "'", line_, column_);
    t.kind = Tok::Number;
    t.value = value;
    t.length = lit.size();
    advance(lit.size());
    return t;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#' && at_line_start_) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
  }

  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
        at_line_start_ = true;
      } else {
        ++column_;
        if (!std::isspace(static_cast<unsigned char>(text_[pos_]))) at_line_start_ = false;
      }
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  bool at_line_start_ = true;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text), lexer_(text) { look_ = lexer_.next(); }

  RationalMatrix parse() {
    std::optional<int> declared;
    if (look_.kind == Tok::Dim) {
      take();
      const Token n = expect(Tok::Number, "matrix dimension after 'dim'");
      if (n.value < 1 || n.value != static_cast<int>(n.value))
        throw ParseError("dimension must be a positive integer", n.line, n.column);
      declared = static_cast<int>(n.value);
    }
    const Token open = expect(Tok::LBracket, "'['");
    std::vector<std::vector<Entry>> rows;
    rows.push_back(row());
    while (look_.kind == Tok::Semicolon) {
      take();
      rows.push_back(row());
    }
    expect(Tok::RBracket, "']' or ';'");
    if (look_.kind != Tok::End) fail("trailing input after ']'");

    const std::size_t m = rows.front().size();
    for (std::size_t r = 1; r < rows.size(); ++r) {
      if (rows[r].size() != m) {
        const Token& at = rows[r].front().start;
        throw ParseError("row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                             " entries, row 1 has " + std::to_string(m),
                         at.line, at.column);
      }
    }
    if (rows.size() != m)
      throw ParseError("matrix is " + std::to_string(rows.size()) + "x" + std::to_string(m) +
                           ", only square matrices are supported",
                       open.line, open.column);
    if (declared && static_cast<std::size_t>(*declared) != m)
      throw ParseError("header declares dim " + std::to_string(*declared) + " but matrix is " +
                           std::to_string(m) + "x" + std::to_string(m),
                       open.line, open.column);

    std::vector<RationalFunction> entries;
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) {
        const Entry& e = rows[r][c];
        if (!e.value.is_proper())
          throw ParseError("entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ") \"" +
                               e.source + "\" is improper",
                           e.start.line, e.start.column);
        entries.push_back(e.value);
      }
    }
    return RationalMatrix(static_cast<int>(m), std::move(entries));
  }

 private:
  struct Entry {
    RationalFunction value;
    std::string source;
    Token start;
  };

  std::vector<Entry> row() {
    std::vector<Entry> out;
    out.push_back(entry());
    while (look_.kind == Tok::Comma) {
      take();
      out.push_back(entry());
    }
    return out;
  }

  Entry entry() {
    const Token start = look_;
    RationalFunction value = expr();
    const std::size_t end = last_.offset + last_.length;
    return {std::move(value), std::string(text_.substr(start.offset, end - start.offset)), start};
  }

  RationalFunction expr() {
    bool negate = false;
    if (look_.kind == Tok::Plus || look_.kind == Tok::Minus) negate = take().kind == Tok::Minus;
    RationalFunction acc = term();
    if (negate) acc = -acc;
    while (look_.kind == Tok::Plus || look_.kind == Tok::Minus) {
      const bool minus = take().kind == Tok::Minus;
      RationalFunction rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  RationalFunction term() {
    RationalFunction acc = factor();
    for (;;) {
      if (look_.kind == Tok::Star) {
        take();
        acc = acc * factor();
      } else if (look_.kind == Tok::Slash) {
        const Token op = take();
        RationalFunction rhs = factor();
        if (rhs.num().is_zero()) throw ParseError("division by zero", op.line, op.column);
        acc = acc / rhs;
      } else if (look_.kind == Tok::S || look_.kind == Tok::LParen) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  RationalFunction factor() {
    RationalFunction base = primary();
    if (look_.kind != Tok::Caret) return base;
    take();
    const Token n = expect(Tok::Number, "integer exponent");
    if (n.value < 0 || n.value != static_cast<int>(n.value))
      throw ParseError("exponent must be a nonnegative integer", n.line, n.column);
    return pow(base, static_cast<int>(n.value));
  }

  RationalFunction primary() {
    switch (look_.kind) {
      case Tok::Number:
        return RationalFunction(Polynomial::constant(take().value));
      case Tok::S:
        take();
        return RationalFunction(Polynomial::monomial(1.0, 1));
      case Tok::LParen: {
        take();
        RationalFunction inner = expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail("expected a number, 's' or '('");
    }
  }

  Token take() {
    last_ = look_;
    look_ = lexer_.next();
    return last_;
  }

  Token expect(Tok kind, const char* what) {
    if (look_.kind != kind) fail(std::string("expected ") + what);
    return take();
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, look_.line, look_.column);
  }

  std::string_view text_;
  Lexer lexer_;
  Token look_{Tok::End};
  Token last_{Tok::End};
};

Polynomial polynomial_from_json(const nlohmann::json& coeffs) {
  if (!coeffs.is_array() || coeffs.empty()) throw ModelError("coefficient list must be a nonempty array");
  std::vector<double> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    if (!c.is_number()) throw ModelError("coefficients must be real numbers");
    out.push_back(c.get<double>());
  }
  return Polynomial(std::move(out));
}

}  // namespace

RationalMatrix parse_rational_matrix(std::string_view text) { return Parser(text).parse(); }

RationalMatrix rational_matrix_from_json(const nlohmann::json& doc) {
  if (!doc.contains("m") || !doc.contains("entries")) throw ModelError("model JSON needs 'm' and 'entries'");
  const int m = doc.at("m").get<int>();
  const auto& rows = doc.at("entries");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(m))
    throw ModelError("'entries' must have m rows");
  std::vector<RationalFunction> entries;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(m))
      throw ModelError("every row of 'entries' must have m elements");
    for (const auto& e : row)
      entries.emplace_back(polynomial_from_json(e.at("num")), polynomial_from_json(e.at("den")));
  }
  return RationalMatrix(m, std::move(entries));
}

nlohmann::json to_json(const RationalMatrix& h) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < h.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < h.dim(); ++j)
      row.push_back({{"num", h(i, j).num().coeffs()}, {"den", h(i, j).den().coeffs()}});
    rows.push_back(std::move(row));
  }
  return {{"m", h.dim()}, {"entries", std::move(rows)}};
}

}  // namespace srgcert
