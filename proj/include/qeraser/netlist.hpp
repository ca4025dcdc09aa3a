#pragma once

// Optical netlist (.onl) language.
//
// Line oriented, `#` starts a comment, keys are `key=value`:
//
//   source pol=<H|V|D|A> [wavelength=<len>] [linewidth=<freq>]
//          [lineshape=<lorentzian|gaussian>]
//   prep diag | prep qwp axis=<angle>
//   split pbs | split bs
//   hwp path=<1|2> (axis=<angle> | rot=<angle>)
//   phase path=<1|2> phi=<angle|PHI>
//   pathdiff length=<len>
//   merge pbs | merge bs
//   pol port=<A|B> angle=<angle>
//
// Angles need a deg|rad suffix, lengths nm|um|mm|m, frequencies
// Hz|kHz|MHz|GHz. Omitted source keys default to 632.8nm, 1MHz, lorentzian.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qeraser/circuit.hpp"

namespace qeraser {

enum class ParseErrorCode {
  UnknownKeyword,
  BadAngleUnit,
  DuplicateSource,
  MissingMerge,
  BadReference,
  MissingValue,
  RangeError,
};

std::string_view to_string(ParseErrorCode code);

struct ParseError {
  int line = 0;    // 1-based
  int column = 0;  // 1-based byte column of the offending token
  ParseErrorCode code = ParseErrorCode::UnknownKeyword;
  std::string message;
};

using ParseResult = std::variant<Circuit, std::vector<ParseError>>;

/// Parses a whole netlist. On failure every diagnosable error is returned,
/// ordered by position. Never throws on malformed text.
ParseResult parse_netlist(std::string_view text);

/// Canonical text: source first, one statement per line, LF endings,
/// comments dropped, angles in deg and all numbers with 6 significant digits.
std::string format_netlist(const Circuit& circuit);

/// `file:line:col: CODE message`
std::string format_diagnostic(std::string_view file, const ParseError& error);

}  // namespace qeraser
