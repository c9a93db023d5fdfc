#include "superlogic/parser.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace superlogic {

std::string_view code_name(ParseErrorCode code) {
  switch (code) {
    case ParseErrorCode::EmptyInput: return "empty-input";
    case ParseErrorCode::UnexpectedToken: return "unexpected-token";
    case ParseErrorCode::UnknownGate: return "unknown-gate";
    case ParseErrorCode::ArityMismatch: return "arity-mismatch";
    case ParseErrorCode::MalformedNumber: return "malformed-number";
    case ParseErrorCode::MissingParameter: return "missing-parameter";
    case ParseErrorCode::UnexpectedParameter: return "unexpected-parameter";
    case ParseErrorCode::WireOrder: return "wire-order";
  }
  return "unknown";
}

ParseError::ParseError(ParseErrorCode code, int line, int column, std::string token,
                       const std::string& what)
    : std::runtime_error(what), code_(code), line_(line), column_(column), token_(std::move(token)) {}

std::string ParseError::diagnostic() const {
  std::string out = std::to_string(line_) + ":" + std::to_string(column_) + ": error[" +
                    std::string(code_name(code_)) + "]: " + what();
  if (!token_.empty()) out += " (near '" + token_ + "')";
  return out;
}

namespace {

enum class Tok { Ident, Wire, Number, LParen, RParen, Comma, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
  int wire = 0;
};

bool is_number_char(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '+' || c == '-' ||
         c == 'e' || c == 'E';
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      // columns count code points
      if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) ++column;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      out.push_back({Tok::Newline, "\\n", line, column});
      ++i;
      ++line;
      column = 1;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int col0 = column;
    if (c == '(' || c == ')' || c == ',') {
      out.push_back({c == '(' ? Tok::LParen : c == ')' ? Tok::RParen : Tok::Comma,
                     std::string(1, c), line, col0});
      advance(1);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string word(text.substr(i, j - i));
      Token t{Tok::Ident, word, line, col0};
      if (word.size() > 1 && word[0] == 'w' &&
          word.find_first_not_of("0123456789", 1) == std::string::npos) {
        t.kind = Tok::Wire;
        auto [p, ec] = std::from_chars(word.data() + 1, word.data() + word.size(), t.wire);
        if (ec != std::errc()) {
          throw ParseError(ParseErrorCode::MalformedNumber, line, col0, word, "wire index out of range");
        }
      }
      out.push_back(t);
      advance(j - i);
      continue;
    }
    if (is_number_char(c)) {
      std::size_t j = i;
      while (j < text.size() && (is_number_char(text[j]) || std::isalnum(static_cast<unsigned char>(text[j]))))
        ++j;
      out.push_back({Tok::Number, std::string(text.substr(i, j - i)), line, col0});
      advance(j - i);
      continue;
    }
    std::size_t len = 1;
    while (i + len < text.size() && (static_cast<unsigned char>(text[i + len]) & 0xC0) == 0x80) ++len;
    throw ParseError(ParseErrorCode::UnexpectedToken, line, col0, std::string(text.substr(i, len)),
                     "unexpected character");
  }
  out.push_back({Tok::End, "", line, column});
  return out;
}

double parse_number(const Token& t) {
  std::string s = t.text;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    throw ParseError(ParseErrorCode::MalformedNumber, t.line, t.column, t.text, "malformed number");
  }
  return v;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  bool looks_like_word() {
    std::size_t k = skip_newlines(0);
    if (toks_[k].kind == Tok::End) {
      throw ParseError(ParseErrorCode::EmptyInput, toks_[k].line, toks_[k].column, "", "empty input");
    }
    if (toks_[k].kind != Tok::Ident) return false;
    if (toks_[k + 1].kind != Tok::LParen) return true;
    return toks_[k + 2].kind == Tok::Number;
  }

  CircuitNode circuit() {
    skip_all_newlines();
    if (peek().kind == Tok::End) {
      throw ParseError(ParseErrorCode::EmptyInput, peek().line, peek().column, "", "empty input");
    }
    int next_wire = 1;
    CircuitNode root = expr(next_wire, true);
    skip_all_newlines();
    if (peek().kind != Tok::End) fail_unexpected("end of input");
    return root;
  }

  Word word() {
    Word w;
    std::optional<int> cells;
    skip_all_newlines();
    if (peek().kind == Tok::End) {
      throw ParseError(ParseErrorCode::EmptyInput, peek().line, peek().column, "", "empty input");
    }
    while (peek().kind != Tok::End) {
      Token name = take(Tok::Ident, "gate name");
      auto info = find_gate(name.text);
      if (!info) unknown_gate(name);
      std::optional<double> phi;
      if (peek().kind == Tok::LParen) {
        Token open = next();
        if (peek().kind != Tok::Number) {
          Token bad = peek();
          if (bad.kind == Tok::RParen) {
            throw ParseError(ParseErrorCode::MissingParameter, bad.line, bad.column, bad.text,
                             "empty parameter list");
          }
          throw ParseError(ParseErrorCode::MalformedNumber, bad.line, bad.column, bad.text,
                           "expected a number");
        }
        phi = parse_number(next());
        take(Tok::RParen, "')'");
        (void)open;
      }
      if (info->parametric && !phi) {
        throw ParseError(ParseErrorCode::MissingParameter, name.line, name.column, name.text,
                         "gate '" + name.text + "' requires a parameter");
      }
      if (!info->parametric && phi) {
        throw ParseError(ParseErrorCode::UnexpectedParameter, name.line, name.column, name.text,
                         "gate '" + name.text + "' takes no parameter");
      }
      if (info->n_in != info->n_out) {
        throw ParseError(ParseErrorCode::ArityMismatch, name.line, name.column, name.text,
                         "word letters must map a register to itself");
      }
      if (cells && *cells != info->n_in) {
        throw ParseError(ParseErrorCode::ArityMismatch, name.line, name.column, name.text,
                         "letter acts on " + std::to_string(info->n_in) + " cells, word on " +
                             std::to_string(*cells));
      }
      cells = info->n_in;
      w.letters.push_back(Letter{name.text, phi});
      if (peek().kind != Tok::End) take(Tok::Newline, "end of line");
      skip_all_newlines();
    }
    return w;
  }

 private:
  CircuitNode expr(int& next_wire, bool is_root) {
    if (peek().kind == Tok::Wire) {
      Token t = next();
      if (t.wire != next_wire) {
        throw ParseError(ParseErrorCode::WireOrder, t.line, t.column, t.text,
                         "wires must appear in order; expected w" + std::to_string(next_wire));
      }
      ++next_wire;
      return CircuitNode::make_wire(t.wire);
    }
    Token name = take(Tok::Ident, "gate name or wire");
    auto info = find_gate(name.text);
    if (!info) unknown_gate(name);
    if (info->parametric) {
      throw ParseError(ParseErrorCode::MissingParameter, name.line, name.column, name.text,
                       "gate '" + name.text + "' requires a parameter, which circuits cannot bind");
    }
    if (!is_root && info->n_out != 1) {
      throw ParseError(ParseErrorCode::ArityMismatch, name.line, name.column, name.text,
                       "gate '" + name.text + "' has " + std::to_string(info->n_out) +
                           " outputs and cannot feed a single input");
    }
    take(Tok::LParen, "'('");
    std::vector<CircuitNode> children;
    skip_all_newlines();
    children.push_back(expr(next_wire, false));
    skip_all_newlines();
    while (peek().kind == Tok::Comma) {
      next();
      skip_all_newlines();
      children.push_back(expr(next_wire, false));
      skip_all_newlines();
    }
    take(Tok::RParen, "',' or ')'");
    if (static_cast<int>(children.size()) != info->n_in) {
      throw ParseError(ParseErrorCode::ArityMismatch, name.line, name.column, name.text,
                       "gate '" + name.text + "' expects " + std::to_string(info->n_in) +
                           " inputs, got " + std::to_string(children.size()));
    }
    return CircuitNode::make_gate(name.text, std::move(children));
  }

  [[noreturn]] void unknown_gate(const Token& t) {
    throw ParseError(ParseErrorCode::UnknownGate, t.line, t.column, t.text,
                     "unknown gate '" + t.text + "'");
  }

  [[noreturn]] void fail_unexpected(const std::string& expected) {
    const Token& t = peek();
    if (t.kind == Tok::Number) parse_number(t);
    throw ParseError(ParseErrorCode::UnexpectedToken, t.line, t.column, t.text,
                     "expected " + expected);
  }

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  Token take(Tok kind, const std::string& expected) {
    if (peek().kind != kind) fail_unexpected(expected);
    return next();
  }
  std::size_t skip_newlines(std::size_t k) const {
    while (toks_[k].kind == Tok::Newline) ++k;
    return k;
  }
  void skip_all_newlines() { pos_ = skip_newlines(pos_); }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedInput parse_input(std::string_view text) {
  Parser p(lex(text));
  if (p.looks_like_word()) return p.word();
  return p.circuit();
}

CircuitNode parse_circuit(std::string_view text) { return Parser(lex(text)).circuit(); }

Word parse_word(std::string_view text) { return Parser(lex(text)).word(); }

std::string render(const CircuitNode& node) {
  if (node.kind == CircuitNode::Kind::Wire) return "w" + std::to_string(node.wire);
  std::string out = node.gate + "(";
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (i) out += ", ";
    out += render(node.children[i]);
  }
  return out + ")";
}

std::string render(const Word& word) {
  std::string out;
  for (const auto& l : word.letters) {
    out += l.gate;
    if (l.phi) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "(%.17g)", *l.phi);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace superlogic
