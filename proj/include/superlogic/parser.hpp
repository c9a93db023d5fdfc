#pragma once

// Text format for circuits and words.
//
//   circuit:  expr := IDENT '(' expr (',' expr)* ')' | 'w' INT
//   word:     one letter per line, letter := IDENT [ '(' NUMBER ')' ]
//
// '#' starts a comment that runs to the end of the line. A file whose first
// call takes a number (or no argument list) is a word; otherwise a circuit.

#include <string>
#include <string_view>
#include <variant>

#include "superlogic/automaton.hpp"
#include "superlogic/composer.hpp"

namespace superlogic {

enum class ParseErrorCode {
  EmptyInput,
  UnexpectedToken,
  UnknownGate,
  ArityMismatch,
  MalformedNumber,
  MissingParameter,
  UnexpectedParameter,
  WireOrder,
};

std::string_view code_name(ParseErrorCode code);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorCode code, int line, int column, std::string token, const std::string& what);

  ParseErrorCode code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& token() const { return token_; }
  /// `line:col: error[code]: message (near 'token')`
  std::string diagnostic() const;

 private:
  ParseErrorCode code_;
  int line_;
  int column_;
  std::string token_;
};

using ParsedInput = std::variant<CircuitNode, Word>;

ParsedInput parse_input(std::string_view text);
CircuitNode parse_circuit(std::string_view text);
Word parse_word(std::string_view text);

std::string render(const CircuitNode& node);
/// One letter per line; parameters printed with 17 significant digits.
std::string render(const Word& word);

}  // namespace superlogic
