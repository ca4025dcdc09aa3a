#include "qeraser/netlist.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <span>
#include <system_error>

namespace qeraser {

namespace {

struct Token {
  std::string_view text;
  int column = 0;
};

struct KeyValue {
  std::string_view key;
  std::string_view value;
  int key_column = 0;
  int value_column = 0;
};

struct Unit {
  std::string_view suffix;
  double scale;
};

constexpr std::array kLengthUnits{Unit{"nm", 1e-9}, Unit{"um", 1e-6}, Unit{"mm", 1e-3},
                                  Unit{"m", 1.0}};
constexpr std::array kFrequencyUnits{Unit{"Hz", 1.0}, Unit{"kHz", 1e3}, Unit{"MHz", 1e6},
                                     Unit{"GHz", 1e9}};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) {
      tokens.push_back(Token{line.substr(start, i - start), static_cast<int>(start) + 1});
    }
  }
  return tokens;
}

class Parser {
 public:
  ParseResult run(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (const auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      line_ = line_no;
      statement(tokenize(line));
      if (end == text.size()) break;
      pos = end + 1;
    }

    if (!source_seen_) error(1, 1, ParseErrorCode::MissingValue, "missing source statement");

    if (!errors_.empty()) {
      std::stable_sort(errors_.begin(), errors_.end(), [](const ParseError& a, const ParseError& b) {
        return a.line != b.line ? a.line < b.line : a.column < b.column;
      });
      return errors_;
    }
    return circuit_;
  }

 private:
  void error(int line, int column, ParseErrorCode code, std::string message) {
    errors_.push_back(ParseError{line, column, code, std::move(message)});
  }
  void error(int column, ParseErrorCode code, std::string message) {
    error(line_, column, code, std::move(message));
  }

  void statement(const std::vector<Token>& tokens) {
    if (tokens.empty()) return;
    const Token& kw = tokens.front();
    const std::span<const Token> rest(tokens.begin() + 1, tokens.end());
    if (kw.text == "source") {
      source(kw, rest);
    } else if (kw.text == "prep") {
      prep(kw, rest);
    } else if (kw.text == "split" || kw.text == "merge") {
      splitter(kw, rest);
    } else if (kw.text == "hwp") {
      hwp(kw, rest);
    } else if (kw.text == "phase") {
      phase(kw, rest);
    } else if (kw.text == "pathdiff") {
      pathdiff(kw, rest);
    } else if (kw.text == "pol") {
      pol(kw, rest);
    } else {
      error(kw.column, ParseErrorCode::UnknownKeyword,
            "unknown statement '" + std::string(kw.text) + "'");
    }
  }

  // Splits `tokens` into key=value pairs, rejecting keys not in `allowed`
  // and repeated keys. Keys with an empty value are kept (and reported) so
  // that `require` does not report them a second time.
  std::vector<KeyValue> key_values(const Token& kw, std::span<const Token> tokens,
                                   std::initializer_list<std::string_view> allowed) {
    std::vector<KeyValue> out;
    for (const auto& t : tokens) {
      const auto eq = t.text.find('=');
      if (eq == std::string_view::npos) {
        error(t.column, ParseErrorCode::UnknownKeyword,
              "expected key=value, got '" + std::string(t.text) + "'");
        continue;
      }
      KeyValue kv{t.text.substr(0, eq), t.text.substr(eq + 1), t.column,
                  t.column + static_cast<int>(eq) + 1};
      if (std::find(allowed.begin(), allowed.end(), kv.key) == allowed.end()) {
        error(kv.key_column, ParseErrorCode::UnknownKeyword,
              "unknown key '" + std::string(kv.key) + "' for '" + std::string(kw.text) + "'");
        continue;
      }
      if (std::any_of(out.begin(), out.end(), [&](const KeyValue& o) { return o.key == kv.key; })) {
        error(kv.key_column, ParseErrorCode::UnknownKeyword,
              "duplicate key '" + std::string(kv.key) + "'");
        continue;
      }
      if (kv.value.empty()) {
        error(kv.key_column, ParseErrorCode::MissingValue,
              "key '" + std::string(kv.key) + "' has no value");
      }
      out.push_back(kv);
    }
    return out;
  }

  static const KeyValue* find_any(const std::vector<KeyValue>& kvs, std::string_view key) {
    for (const auto& kv : kvs) {
      if (kv.key == key) return &kv;
    }
    return nullptr;
  }

  // Only keys that carry a value.
  static const KeyValue* find(const std::vector<KeyValue>& kvs, std::string_view key) {
    const KeyValue* kv = find_any(kvs, key);
    return kv != nullptr && !kv->value.empty() ? kv : nullptr;
  }

  const KeyValue* require(const Token& kw, const std::vector<KeyValue>& kvs, std::string_view key) {
    if (find_any(kvs, key) == nullptr) {
      error(kw.column, ParseErrorCode::MissingValue,
            "'" + std::string(kw.text) + "' requires " + std::string(key) + "=");
    }
    return find(kvs, key);
  }

  struct Number {
    double value;
    std::string_view unit;
  };

  // Leading number plus unit suffix. Reports MissingValue for non-numeric
  // text and RangeError for non-finite numbers.
  std::optional<Number> number(const KeyValue& kv) {
    double v = 0.0;
    const char* first = kv.value.data();
    const char* last = first + kv.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec == std::errc::result_out_of_range) {
      error(kv.value_column, ParseErrorCode::RangeError,
            "value '" + std::string(kv.value) + "' is out of range");
      return std::nullopt;
    }
    if (ec != std::errc{}) {
      error(kv.value_column, ParseErrorCode::MissingValue,
            "expected a number for '" + std::string(kv.key) + "', got '" + std::string(kv.value) +
                "'");
      return std::nullopt;
    }
    if (!std::isfinite(v)) {
      error(kv.value_column, ParseErrorCode::RangeError,
            "value '" + std::string(kv.value) + "' is not finite");
      return std::nullopt;
    }
    return Number{v, std::string_view(ptr, static_cast<std::size_t>(last - ptr))};
  }

  template <std::size_t N>
  std::optional<double> quantity(const KeyValue& kv, const std::array<Unit, N>& units,
                                 std::string_view what, std::string_view expected) {
    const auto n = number(kv);
    if (!n) return std::nullopt;
    for (const auto& u : units) {
      if (u.suffix == n->unit) return n->value * u.scale;
    }
    const int col = kv.value_column + static_cast<int>(kv.value.size() - n->unit.size());
    if (n->unit.empty()) {
      error(kv.value_column, ParseErrorCode::BadAngleUnit,
            std::string(what) + " '" + std::string(kv.value) + "' needs a unit (" +
                std::string(expected) + ")");
    } else {
      error(col, ParseErrorCode::BadAngleUnit,
            "bad " + std::string(what) + " unit '" + std::string(n->unit) + "' (expected " +
                std::string(expected) + ")");
    }
    return std::nullopt;
  }

  std::optional<Angle> angle(const KeyValue& kv) {
    const auto n = number(kv);
    if (!n) return std::nullopt;
    if (n->unit == "deg") return Angle::from_degrees(n->value);
    if (n->unit == "rad") return Angle::from_radians(n->value);
    if (n->unit.empty()) {
      error(kv.value_column, ParseErrorCode::BadAngleUnit,
            "angle '" + std::string(kv.value) + "' needs a unit (deg or rad)");
    } else {
      const int col = kv.value_column + static_cast<int>(kv.value.size() - n->unit.size());
      error(col, ParseErrorCode::BadAngleUnit,
            "bad angle unit '" + std::string(n->unit) + "' (expected deg or rad)");
    }
    return std::nullopt;
  }

  std::optional<double> length(const KeyValue& kv) {
    return quantity(kv, kLengthUnits, "length", "nm, um, mm or m");
  }

  std::optional<Path> path(const KeyValue& kv) {
    if (kv.value == "1") return Path::One;
    if (kv.value == "2") return Path::Two;
    error(kv.value_column, ParseErrorCode::BadReference,
          "path must be 1 or 2, got '" + std::string(kv.value) + "'");
    return std::nullopt;
  }

  // Positional kind word after prep/split/merge.
  std::optional<Token> kind_word(const Token& kw, std::span<const Token>& rest) {
    if (rest.empty() || rest.front().text.find('=') != std::string_view::npos) {
      error(kw.column, ParseErrorCode::MissingValue,
            "'" + std::string(kw.text) + "' requires a kind");
      return std::nullopt;
    }
    Token t = rest.front();
    rest = rest.subspan(1);
    return t;
  }

  void push(ElementSpec spec) { circuit_.elements.push_back(Element{std::move(spec), line_}); }

  void source(const Token& kw, std::span<const Token> rest) {
    if (source_seen_) {
      error(kw.column, ParseErrorCode::DuplicateSource,
            "duplicate source statement (first on line " + std::to_string(circuit_.source_line) +
                ")");
    }
    const bool first = !source_seen_;
    source_seen_ = true;
    const auto kvs = key_values(kw, rest, {"pol", "wavelength", "linewidth", "lineshape"});
    SourceSpec src;
    if (const auto* kv = require(kw, kvs, "pol")) {
      if (kv->value == "H") {
        src.polarization = SourcePolarization::H;
      } else if (kv->value == "V") {
        src.polarization = SourcePolarization::V;
      } else if (kv->value == "D") {
        src.polarization = SourcePolarization::D;
      } else if (kv->value == "A") {
        src.polarization = SourcePolarization::A;
      } else {
        error(kv->value_column, ParseErrorCode::UnknownKeyword,
              "polarization must be H, V, D or A, got '" + std::string(kv->value) + "'");
      }
    }
    if (const auto* kv = find(kvs, "wavelength")) {
      if (const auto v = length(*kv)) {
        if (*v > 0.0) {
          src.wavelength = *v;
        } else {
          error(kv->value_column, ParseErrorCode::RangeError, "wavelength must be positive");
        }
      }
    }
    if (const auto* kv = find(kvs, "linewidth")) {
      if (const auto v = quantity(*kv, kFrequencyUnits, "frequency", "Hz, kHz, MHz or GHz")) {
        if (*v > 0.0) {
          src.linewidth = *v;
        } else {
          error(kv->value_column, ParseErrorCode::RangeError, "linewidth must be positive");
        }
      }
    }
    if (const auto* kv = find(kvs, "lineshape")) {
      if (kv->value == "lorentzian") {
        src.lineshape = Lineshape::Lorentzian;
      } else if (kv->value == "gaussian") {
        src.lineshape = Lineshape::Gaussian;
      } else {
        error(kv->value_column, ParseErrorCode::UnknownKeyword,
              "lineshape must be lorentzian or gaussian, got '" + std::string(kv->value) + "'");
      }
    }
    if (first) {
      circuit_.source = src;
      circuit_.source_line = line_;
    }
  }

  void prep(const Token& kw, std::span<const Token> rest) {
    const auto kind = kind_word(kw, rest);
    if (!kind) {
      key_values(kw, rest, {"axis"});
      return;
    }
    if (kind->text == "diag") {
      key_values(kw, rest, {});
      push(PrepDiag{});
    } else if (kind->text == "qwp") {
      const auto kvs = key_values(kw, rest, {"axis"});
      if (const auto* kv = require(kw, kvs, "axis")) {
        if (const auto a = angle(*kv)) push(PrepQwp{*a});
      }
    } else {
      error(kind->column, ParseErrorCode::UnknownKeyword,
            "prep kind must be diag or qwp, got '" + std::string(kind->text) + "'");
    }
  }

  void splitter(const Token& kw, std::span<const Token> rest) {
    const auto kind = kind_word(kw, rest);
    key_values(kw, rest, {});
    if (!kind) return;
    SplitterKind k;
    if (kind->text == "pbs") {
      k = SplitterKind::Pbs;
    } else if (kind->text == "bs") {
      k = SplitterKind::Bs;
    } else {
      error(kind->column, ParseErrorCode::UnknownKeyword,
            std::string(kw.text) + " kind must be pbs or bs, got '" + std::string(kind->text) +
                "'");
      return;
    }
    if (kw.text == "split") {
      push(Split{k});
    } else {
      merge_seen_ = true;
      push(Merge{k});
    }
  }

  void hwp(const Token& kw, std::span<const Token> rest) {
    const auto kvs = key_values(kw, rest, {"path", "axis", "rot"});
    std::optional<Path> p;
    if (const auto* kv = require(kw, kvs, "path")) p = path(*kv);
    const auto* axis = find_any(kvs, "axis");
    const auto* rot = find_any(kvs, "rot");
    if (axis != nullptr && rot != nullptr) {
      const auto* later = axis->key_column > rot->key_column ? axis : rot;
      error(later->key_column, ParseErrorCode::UnknownKeyword,
            "hwp takes exactly one of axis= or rot=");
      return;
    }
    if (axis == nullptr && rot == nullptr) {
      error(kw.column, ParseErrorCode::MissingValue, "'hwp' requires axis= or rot=");
      return;
    }
    if ((axis != nullptr ? axis : rot)->value.empty()) return;
    const auto a = angle(axis != nullptr ? *axis : *rot);
    if (p && a) push(Hwp{*p, *a, rot != nullptr});
  }

  void phase(const Token& kw, std::span<const Token> rest) {
    const auto kvs = key_values(kw, rest, {"path", "phi"});
    std::optional<Path> p;
    if (const auto* kv = require(kw, kvs, "path")) p = path(*kv);
    const auto* kv = require(kw, kvs, "phi");
    if (kv == nullptr) return;
    const char c = kv->value.front();
    const bool identifier = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
    if (identifier && kv->value != "inf" && kv->value != "nan") {
      if (kv->value != "PHI") {
        error(kv->value_column, ParseErrorCode::BadReference,
              "unknown symbol '" + std::string(kv->value) + "' (only PHI is defined)");
        return;
      }
      if (sweep_seen_) {
        error(kv->value_column, ParseErrorCode::BadReference,
              "sweep symbol PHI already declared");
        return;
      }
      sweep_seen_ = true;
      if (p) push(Phase{*p, std::nullopt});
      return;
    }
    const auto a = angle(*kv);
    if (p && a) push(Phase{*p, *a});
  }

  void pathdiff(const Token& kw, std::span<const Token> rest) {
    const auto kvs = key_values(kw, rest, {"length"});
    const auto* kv = require(kw, kvs, "length");
    if (kv == nullptr) return;
    if (const auto v = length(*kv)) {
      if (*v < 0.0) {
        error(kv->value_column, ParseErrorCode::RangeError, "path difference must be non-negative");
        return;
      }
      push(PathDiff{*v});
    }
  }

  void pol(const Token& kw, std::span<const Token> rest) {
    if (!merge_seen_) {
      error(kw.column, ParseErrorCode::MissingMerge, "'pol' before any merge statement");
    }
    const auto kvs = key_values(kw, rest, {"port", "angle"});
    std::optional<Port> port;
    if (const auto* kv = require(kw, kvs, "port")) {
      if (kv->value == "A") {
        port = Port::A;
      } else if (kv->value == "B") {
        port = Port::B;
      } else {
        error(kv->value_column, ParseErrorCode::BadReference,
              "port must be A or B, got '" + std::string(kv->value) + "'");
      }
    }
    std::optional<Angle> a;
    if (const auto* kv = require(kw, kvs, "angle")) a = angle(*kv);
    if (port && a) push(Pol{*port, *a});
  }

  Circuit circuit_;
  std::vector<ParseError> errors_;
  int line_ = 0;
  bool source_seen_ = false;
  bool merge_seen_ = false;
  bool sweep_seen_ = false;
};

std::string sig6(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 6);
  return std::string(buf.data(), res.ptr);
}

std::string fmt_angle(Angle a) { return sig6(a.degrees()) + "deg"; }

std::string fmt_length(double m) {
  const double a = std::abs(m);
  if (a == 0.0) return "0m";
  if (a < 1e-6) return sig6(m / 1e-9) + "nm";
  if (a < 1e-3) return sig6(m / 1e-6) + "um";
  if (a < 1.0) return sig6(m / 1e-3) + "mm";
  return sig6(m) + "m";
}

std::string fmt_frequency(double hz) {
  const double a = std::abs(hz);
  if (a < 1e3) return sig6(hz) + "Hz";
  if (a < 1e6) return sig6(hz / 1e3) + "kHz";
  if (a < 1e9) return sig6(hz / 1e6) + "MHz";
  return sig6(hz / 1e9) + "GHz";
}

std::string_view splitter_word(SplitterKind k) { return k == SplitterKind::Pbs ? "pbs" : "bs"; }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::string_view to_string(ParseErrorCode code) {
  switch (code) {
    case ParseErrorCode::UnknownKeyword:
      return "UnknownKeyword";
    case ParseErrorCode::BadAngleUnit:
      return "BadAngleUnit";
    case ParseErrorCode::DuplicateSource:
      return "DuplicateSource";
    case ParseErrorCode::MissingMerge:
      return "MissingMerge";
    case ParseErrorCode::BadReference:
      return "BadReference";
    case ParseErrorCode::MissingValue:
      return "MissingValue";
    case ParseErrorCode::RangeError:
      return "RangeError";
  }
  return "UnknownKeyword";
}

ParseResult parse_netlist(std::string_view text) { return Parser{}.run(text); }

std::string format_netlist(const Circuit& circuit) {
  std::string out;
  const auto& s = circuit.source;
  out += "source pol=" + std::string(to_string(s.polarization)) +
         " wavelength=" + fmt_length(s.wavelength) + " linewidth=" + fmt_frequency(s.linewidth) +
         " lineshape=" + std::string(to_string(s.lineshape)) + "\n";
  for (const auto& e : circuit.elements) {
    out += std::visit(
        overloaded{
            [](const PrepDiag&) { return std::string("prep diag"); },
            [](const PrepQwp& q) { return "prep qwp axis=" + fmt_angle(q.axis); },
            [](const Split& sp) { return "split " + std::string(splitter_word(sp.kind)); },
            [](const Hwp& h) {
              return "hwp path=" + std::to_string(static_cast<int>(h.path)) +
                     (h.is_rotation ? " rot=" : " axis=") + fmt_angle(h.angle);
            },
            [](const Phase& p) {
              return "phase path=" + std::to_string(static_cast<int>(p.path)) +
                     " phi=" + (p.phi ? fmt_angle(*p.phi) : std::string("PHI"));
            },
            [](const PathDiff& d) { return "pathdiff length=" + fmt_length(d.length); },
            [](const Merge& m) { return "merge " + std::string(splitter_word(m.kind)); },
            [](const Pol& p) {
              return std::string("pol port=") + port_letter(p.port) + " angle=" + fmt_angle(p.angle);
            },
        },
        e.spec);
    out += '\n';
  }
  return out;
}

std::string format_diagnostic(std::string_view file, const ParseError& error) {
  return std::string(file) + ":" + std::to_string(error.line) + ":" +
         std::to_string(error.column) + ": " + std::string(to_string(error.code)) + " " +
         error.message;
}

}  // namespace qeraser
