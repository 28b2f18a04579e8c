#include "weylcorr/state_dsl.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

namespace weylcorr::dsl {

namespace {

enum class TokenKind {
  number,
  ident,
  colon,
  semicolon,
  comma,
  pipe,
  greater,
  lparen,
  rparen,
  plus,
  minus,
  star,
  slash,
  end,
};

struct Token {
  TokenKind kind;
  double number = 0.0;
  bool is_integer = false;
  std::string text;
  int line = 1;
  int column = 1;
};

const char* token_name(TokenKind k) {
  switch (k) {
    case TokenKind::number: return "number";
    case TokenKind::ident: return "identifier";
    case TokenKind::colon: return "':'";
    case TokenKind::semicolon: return "';'";
    case TokenKind::comma: return "','";
    case TokenKind::pipe: return "'|'";
    case TokenKind::greater: return "'>'";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::plus: return "'+'";
    case TokenKind::minus: return "'-'";
    case TokenKind::star: return "'*'";
    case TokenKind::slash: return "'/'";
    case TokenKind::end: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= text_.size()) {
        t.kind = TokenKind::end;
        out.push_back(t);
        return out;
      }
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        lex_number(t);
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        lex_ident(t);
      } else {
        t.kind = punct(c);
        t.text = std::string(1, c);
        advance();
      }
      out.push_back(std::move(t));
    }
  }

 private:
  TokenKind punct(char c) {
    switch (c) {
      case ':': return TokenKind::colon;
      case ';': return TokenKind::semicolon;
      case ',': return TokenKind::comma;
      case '|': return TokenKind::pipe;
      case '>': return TokenKind::greater;
      case '(': return TokenKind::lparen;
      case ')': return TokenKind::rparen;
      case '+': return TokenKind::plus;
      case '-': return TokenKind::minus;
      case '*': return TokenKind::star;
      case '/': return TokenKind::slash;
      default:
        throw ParseError(DiagnosticCode::lexical, line_, column_,
                         std::string("unexpected character '") + c + "'");
    }
  }

  void lex_number(Token& t) {
    const std::size_t start = pos_;
    bool integral = true;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      integral = false;
      advance();
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        advance();
      }
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      // exponent only when followed by digits (possibly signed)
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        integral = false;
        while (pos_ < look) advance();  // 'e' and optional sign
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          advance();
        }
      }
    }
    t.text = std::string(text_.substr(start, pos_ - start));
    if (t.text == ".") {
      throw ParseError(DiagnosticCode::lexical, t.line, t.column,
                       "stray '.' is not a number");
    }
    t.kind = TokenKind::number;
    t.is_integer = integral;
    t.number = std::strtod(t.text.c_str(), nullptr);
  }

  void lex_ident(Token& t) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
    t.kind = TokenKind::ident;
    t.text = std::string(text_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        column_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  void advance() {
    ++pos_;
    ++column_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

// Per-mode slot gathered before the ket kind is known.
struct Slot {
  bool is_coherent;
  int occupation;
  Complex amplitude;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  StateExpr run() {
    StateExpr expr;
    if (at_ident("mix")) {
      const Token mix_tok = peek();
      next();
      std::vector<double> probs;
      while (true) {
        if (peek().kind == TokenKind::minus) {
          throw ParseError(DiagnosticCode::probability_sum, peek().line,
                           peek().column, "mixture probability must be positive");
        }
        const Token prob_tok = expect(TokenKind::number, "mixture probability");
        expect(TokenKind::colon, "':' after mixture probability");
        StateExpr::Component comp;
        comp.probability = prob_tok.number;
        if (!(comp.probability > 0.0)) {
          throw ParseError(DiagnosticCode::probability_sum, prob_tok.line,
                           prob_tok.column, "mixture probability must be positive");
        }
        comp.kets = parse_super();
        probs.push_back(comp.probability);
        expr.components.push_back(std::move(comp));
        if (peek().kind != TokenKind::semicolon) break;
        next();
      }
      expect(TokenKind::end, "';' or end of input");
      double sum = 0.0;
      for (double p : probs) sum += p;
      if (std::abs(sum - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "mixture probabilities sum to " << sum << ", expected 1";
        throw ParseError(DiagnosticCode::probability_sum, mix_tok.line,
                         mix_tok.column, msg.str());
      }
    } else {
      StateExpr::Component comp;
      comp.probability = 1.0;
      comp.kets = parse_super();
      expect(TokenKind::end, "operator or end of input");
      expr.components.push_back(std::move(comp));
    }
    return expr;
  }

 private:
  std::vector<ScaledKet> parse_super() {
    std::vector<ScaledKet> kets = parse_term();
    while (peek().kind == TokenKind::plus || peek().kind == TokenKind::minus) {
      const bool negate = peek().kind == TokenKind::minus;
      next();
      std::vector<ScaledKet> more = parse_term();
      for (auto& sk : more) {
        if (negate) sk.coefficient = -sk.coefficient;
        kets.push_back(std::move(sk));
      }
    }
    return kets;
  }

  std::vector<ScaledKet> parse_term() {
    const Token& t = peek();
    if (t.kind == TokenKind::lparen) {
      next();
      std::vector<ScaledKet> inner = parse_super();
      expect(TokenKind::rparen, "')'");
      if (peek().kind == TokenKind::slash) {
        next();
        const Complex divisor = parse_complex("divisor");
        if (divisor == Complex{0.0, 0.0}) {
          throw ParseError(DiagnosticCode::syntax, peek().line, peek().column,
                           "division by zero scalar");
        }
        for (auto& sk : inner) sk.coefficient /= divisor;
      }
      return inner;
    }
    Complex scale{1.0, 0.0};
    if (t.kind == TokenKind::number || t.kind == TokenKind::minus ||
        is_imag_unit(t)) {
      scale = parse_complex("scalar");
      expect(TokenKind::star, "'*' between scalar and ket");
    }
    ProductKet ket = parse_ket();
    return {{scale, std::move(ket)}};
  }

  ProductKet parse_ket() {
    const Token open = expect(TokenKind::pipe, "'|'");
    std::vector<Slot> slots;
    while (true) {
      slots.push_back(parse_slot());
      if (peek().kind == TokenKind::comma) {
        next();
        continue;
      }
      break;
    }
    expect(TokenKind::greater, "',' or '>'");
    const bool coherent = slots.front().is_coherent;
    for (const Slot& s : slots) {
      if (s.is_coherent != coherent) {
        throw ParseError(DiagnosticCode::kind_mismatch, open.line, open.column,
                         "ket mixes fock and coherent slots");
      }
    }
    ProductKet ket = [&] {
      if (coherent) {
        std::vector<Complex> amps;
        for (const Slot& s : slots) amps.push_back(s.amplitude);
        return ProductKet::coherent(std::move(amps));
      }
      std::vector<int> ns;
      for (const Slot& s : slots) ns.push_back(s.occupation);
      return ProductKet::fock(std::move(ns));
    }();
    if (!shape_) {
      shape_ = {ket.kind(), ket.mode_count()};
    } else if (ket.kind() != shape_->first) {
      throw ParseError(DiagnosticCode::kind_mismatch, open.line, open.column,
                       "all kets must be of the same kind (fock or coherent)");
    } else if (ket.mode_count() != shape_->second) {
      throw ParseError(DiagnosticCode::mode_mismatch, open.line, open.column,
                       "all kets must have the same mode count");
    }
    return ket;
  }

  Slot parse_slot() {
    const Token& t = peek();
    if (t.kind == TokenKind::ident && t.text == "c") {
      next();
      expect(TokenKind::colon, "':' after 'c'");
      Slot s;
      s.is_coherent = true;
      s.occupation = 0;
      s.amplitude = parse_complex("coherent amplitude");
      return s;
    }
    if (t.kind == TokenKind::number) {
      if (!t.is_integer) {
        throw ParseError(DiagnosticCode::syntax, t.line, t.column,
                         "fock occupation must be a nonnegative integer",
                         {"integer", "'c:'"});
      }
      next();
      Slot s;
      s.is_coherent = false;
      s.occupation = static_cast<int>(t.number);
      s.amplitude = Complex{0.0, 0.0};
      return s;
    }
    throw ParseError(DiagnosticCode::syntax, t.line, t.column,
                     std::string("expected ket slot, found ") + token_name(t.kind),
                     {"integer", "'c:'"});
  }

  // complex := ["-"] number [sign [number] "i"] | ["-"] [number] "i"
  Complex parse_complex(const char* what) {
    double sign = 1.0;
    if (peek().kind == TokenKind::minus) {
      next();
      sign = -1.0;
    }
    if (is_imag_unit(peek())) {
      next();
      return Complex{0.0, sign};
    }
    const Token first =
        expect(TokenKind::number, std::string(what) + " (number)");
    if (is_imag_unit(peek())) {
      next();
      return Complex{0.0, sign * first.number};
    }
    if (peek().kind == TokenKind::plus || peek().kind == TokenKind::minus) {
      // consume a trailing imaginary part only when one is actually there
      double imag_sign = peek().kind == TokenKind::minus ? -1.0 : 1.0;
      if (is_imag_unit(peek(1))) {
        next();
        next();
        return Complex{sign * first.number, imag_sign};
      }
      if (peek(1).kind == TokenKind::number && is_imag_unit(peek(2))) {
        next();
        const Token imag = expect(TokenKind::number, "imaginary part");
        next();  // 'i'
        return Complex{sign * first.number, imag_sign * imag.number};
      }
    }
    return Complex{sign * first.number, 0.0};
  }

  bool is_imag_unit(const Token& t) const {
    return t.kind == TokenKind::ident && t.text == "i";
  }

  bool at_ident(std::string_view name) const {
    return peek().kind == TokenKind::ident && peek().text == name;
  }

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t idx = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[idx];
  }

  void next() {
    if (pos_ + 1 < tokens_.size()) ++pos_;
  }

  Token expect(TokenKind kind, std::string expected) {
    const Token t = peek();
    if (t.kind != kind) {
      throw ParseError(DiagnosticCode::syntax, t.line, t.column,
                       std::string("expected ") + expected + ", found " +
                           token_name(t.kind),
                       {std::move(expected)});
    }
    next();
    return t;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::optional<std::pair<ModeKind, std::size_t>> shape_;
};

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(Complex c) {
  if (c.imag() == 0.0) return format_number(c.real());
  if (c.real() == 0.0) return format_number(c.imag()) + "i";
  std::string out = format_number(c.real());
  if (c.imag() >= 0.0) {
    out += "+" + format_number(c.imag()) + "i";
  } else {
    out += "-" + format_number(-c.imag()) + "i";
  }
  return out;
}

std::string format_ket(const ProductKet& k) {
  std::string out = "|";
  for (std::size_t m = 0; m < k.mode_count(); ++m) {
    if (m != 0) out += ",";
    if (k.kind() == ModeKind::fock) {
      out += std::to_string(k.occupation(m));
    } else {
      out += "c:" + format_complex(k.amplitude(m));
    }
  }
  out += ">";
  return out;
}

}  // namespace

ParseError::ParseError(DiagnosticCode code, int line, int column,
                       std::string message, std::vector<std::string> expected)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      code_(code),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

StateExpr parse(std::string_view text) {
  Lexer lexer(text);
  Parser parser(lexer.run());
  return parser.run();
}

OperatorEnsemble lower(const StateExpr& expr) {
  if (expr.components.empty()) {
    throw std::invalid_argument("lower: empty expression");
  }
  std::vector<OperatorEnsemble> parts;
  std::vector<double> probs;
  for (const auto& comp : expr.components) {
    std::vector<ProductKet> kets;
    std::vector<Complex> coeffs;
    for (const auto& sk : comp.kets) {
      kets.push_back(sk.ket);
      coeffs.push_back(sk.coefficient);
    }
    parts.push_back(pure_superposition(kets, coeffs));
    probs.push_back(comp.probability);
  }
  if (parts.size() == 1) return parts.front();
  return mixture(probs, parts);
}

std::string render(const OperatorEnsemble& rho) {
  constexpr double kTol = 1e-12;
  const auto& terms = rho.terms();

  bool diagonal = true;
  for (const auto& t : terms) {
    if (!(t.ket == t.bra) || std::abs(t.weight.imag()) > kTol) {
      diagonal = false;
      break;
    }
  }
  if (diagonal) {
    if (terms.size() == 1 && std::abs(terms[0].weight - Complex{1.0, 0.0}) <= kTol) {
      return format_ket(terms[0].ket);
    }
    std::string out = "mix ";
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i != 0) out += "; ";
      out += format_number(terms[i].weight.real()) + ": " + format_ket(terms[i].ket);
    }
    return out;
  }

  // rank-one (pure superposition) factorization W_ij = c_i conj(c_j)
  std::vector<ProductKet> kets;
  auto index_of = [&](const ProductKet& k) -> std::size_t {
    for (std::size_t i = 0; i < kets.size(); ++i) {
      if (kets[i] == k) return i;
    }
    kets.push_back(k);
    return kets.size() - 1;
  };
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Complex>> entries;
  for (const auto& t : terms) {
    entries.push_back({{index_of(t.ket), index_of(t.bra)}, t.weight});
  }
  const std::size_t n = kets.size();
  std::vector<std::vector<Complex>> weight(n, std::vector<Complex>(n, {0.0, 0.0}));
  for (const auto& [ij, w] : entries) weight[ij.first][ij.second] = w;

  std::size_t ref = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (weight[i][i].real() > weight[ref][ref].real()) ref = i;
  }
  if (!(weight[ref][ref].real() > 0.0)) {
    throw std::invalid_argument("render: ensemble is not expressible in the state language");
  }
  const double cref = std::sqrt(weight[ref][ref].real());
  std::vector<Complex> coeff(n);
  for (std::size_t i = 0; i < n; ++i) coeff[i] = weight[i][ref] / cref;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(weight[i][j] - coeff[i] * std::conj(coeff[j])) > 1e-9) {
        throw std::invalid_argument(
            "render: ensemble is not expressible in the state language");
      }
    }
  }
  // fix the unobservable global phase so the first coefficient is positive real
  Complex phase{1.0, 0.0};
  for (const Complex& c : coeff) {
    if (std::abs(c) > kTol) {
      phase = c / std::abs(c);
      break;
    }
  }
  for (Complex& c : coeff) c /= phase;

  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    Complex c = coeff[i];
    if (std::abs(c) <= kTol) continue;
    bool negate = c.real() < 0.0 || (c.real() == 0.0 && c.imag() < 0.0);
    if (negate) c = -c;
    if (first) {
      if (negate) out += "- ";  // unreachable after phase fixing, kept for safety
      first = false;
    } else {
      out += negate ? " - " : " + ";
    }
    out += format_complex(c) + "*" + format_ket(kets[i]);
  }
  return out;
}

}  // namespace weylcorr::dsl
