#include "su6/bench_format.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "su6/error.hpp"
#include "su6/io.hpp"

namespace su6 {

std::string_view to_string(BenchErrorCode code) {
  switch (code) {
  case BenchErrorCode::expected_token: return "expected-token";
  case BenchErrorCode::unterminated_string: return "unterminated-string";
  case BenchErrorCode::unknown_statement: return "unknown-statement";
  case BenchErrorCode::unknown_element_kind: return "unknown-element-kind";
  case BenchErrorCode::unknown_attribute: return "unknown-attribute";
  case BenchErrorCode::duplicate_attribute: return "duplicate-attribute";
  case BenchErrorCode::missing_angle: return "missing-angle";
  case BenchErrorCode::missing_attribute: return "missing-attribute";
  case BenchErrorCode::invalid_number: return "invalid-number";
  case BenchErrorCode::invalid_value: return "invalid-value";
  case BenchErrorCode::misplaced_element: return "misplaced-element";
  case BenchErrorCode::duplicate_splitter: return "duplicate-splitter";
  case BenchErrorCode::duplicate_combiner: return "duplicate-combiner";
  case BenchErrorCode::duplicate_statement: return "duplicate-statement";
  case BenchErrorCode::missing_statement: return "missing-statement";
  case BenchErrorCode::duplicate_element_id: return "duplicate-element-id";
  case BenchErrorCode::dangling_sweep_reference: return "dangling-sweep-reference";
  case BenchErrorCode::invalid_sweep: return "invalid-sweep";
  }
  return "?";
}

BenchParseError::BenchParseError(BenchErrorCode code, int line, int column,
                                 const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": error[" +
                         std::string(to_string(code)) + "]: " + message),
      code_(code), line_(line), column_(column), detail_(message) {}

namespace {

const std::set<std::string, std::less<>> kRecordable = {
    "skyrmion_sphere", "antiskyrmion_sphere", "oam_sphere",
    "torus",           "observables",         "stokes_field"};

enum class Tok { word, string, equals, slash, colon, end };

struct Token {
  Tok type = Tok::end;
  std::string text;
  int column = 0;
};

struct Location {
  int line = 0;
  int column = 0;
};

[[noreturn]] void fail(BenchErrorCode code, Location at, const std::string& message) {
  throw BenchParseError(code, at.line, at.column, message);
}

bool is_word_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '=' && c != '/' && c != ':' &&
         c != '"' && c != ';' && c != '#';
}

// Tokens of one statement; `offset` is the one-based column of text[0].
class Scanner {
public:
  Scanner(std::string_view text, int line, int offset) : text_(text), line_(line), offset_(offset) {
    skip_space();
  }

  int line() const { return line_; }

  Token peek() {
    if (!peeked_) peeked_ = scan();
    return *peeked_;
  }

  Token next() {
    Token t = peek();
    peeked_.reset();
    return t;
  }

  Token expect(Tok type, const std::string& what) {
    Token t = next();
    if (t.type != type) fail(BenchErrorCode::expected_token, {line_, t.column}, "expected " + what + found(t));
    return t;
  }

  Token expect_word(const std::string& what) { return expect(Tok::word, what); }

  /// Remainder of the statement as a raw value (quoted or bare, may contain '/').
  Token raw_value(const std::string& what) {
    if (peeked_) {
      pos_ = static_cast<std::size_t>(peeked_->column - offset_);
      peeked_.reset();
    }
    skip_space();
    const int col = column();
    if (pos_ < text_.size() && text_[pos_] == '"') return next();
    std::size_t end = text_.size();
    while (end > pos_ && std::isspace(static_cast<unsigned char>(text_[end - 1]))) --end;
    if (end == pos_) fail(BenchErrorCode::expected_token, {line_, col}, "expected " + what + ", found end of statement");
    Token t{Tok::word, std::string(text_.substr(pos_, end - pos_)), col};
    pos_ = text_.size();
    return t;
  }

  Location here() { return {line_, peek().column}; }

  static std::string found(const Token& t) {
    switch (t.type) {
    case Tok::end: return ", found end of statement";
    case Tok::word: return ", found '" + t.text + "'";
    case Tok::string: return ", found string \"" + t.text + "\"";
    case Tok::equals: return ", found '='";
    case Tok::slash: return ", found '/'";
    case Tok::colon: return ", found ':'";
    }
    return "";
  }

private:
  int column() const { return offset_ + static_cast<int>(pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Token scan() {
    skip_space();
    Token t;
    t.column = column();
    if (pos_ >= text_.size()) return t;
    const char c = text_[pos_];
    if (c == '=' || c == '/' || c == ':') {
      t.type = c == '=' ? Tok::equals : c == '/' ? Tok::slash : Tok::colon;
      t.text = std::string(1, c);
      ++pos_;
      return t;
    }
    if (c == '"') {
      t.type = Tok::string;
      ++pos_;
      while (true) {
        if (pos_ >= text_.size())
          fail(BenchErrorCode::unterminated_string, {line_, t.column}, "unterminated string literal");
        const char d = text_[pos_++];
        if (d == '"') break;
        if (d == '\\' && pos_ < text_.size()) {
          t.text += text_[pos_++];
          continue;
        }
        t.text += d;
      }
      return t;
    }
    t.type = Tok::word;
    while (pos_ < text_.size() && is_word_char(text_[pos_])) t.text += text_[pos_++];
    return t;
  }

  std::string_view text_;
  int line_;
  int offset_;
  std::size_t pos_ = 0;
  std::optional<Token> peeked_;
};

struct RawStatement {
  std::string text;
  int line = 0;
  int column = 0; // one-based column of text[0]
};

// Splits into statements at newlines and ';', dropping '#' comments; quotes protect both.
std::vector<RawStatement> split_statements(std::string_view input) {
  std::vector<RawStatement> out;
  int line = 1;
  std::size_t i = 0;
  while (i <= input.size()) {
    std::size_t eol = input.find('\n', i);
    if (eol == std::string_view::npos) eol = input.size();
    std::string_view l = input.substr(i, eol - i);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);

    bool quoted = false;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= l.size(); ++k) {
      const bool at_end = k == l.size();
      const char c = at_end ? '\0' : l[k];
      if (!at_end && quoted && c == '\\') {
        ++k;
        continue;
      }
      if (!at_end && c == '"') quoted = !quoted;
      if (at_end || (!quoted && (c == ';' || c == '#'))) {
        std::string_view piece = l.substr(start, k - start);
        std::size_t lead = 0;
        while (lead < piece.size() && std::isspace(static_cast<unsigned char>(piece[lead]))) ++lead;
        if (lead < piece.size())
          out.push_back({std::string(piece.substr(lead)), line, static_cast<int>(start + lead) + 1});
        if (at_end || c == '#') break;
        start = k + 1;
      }
    }
    ++line;
    i = eol + 1;
  }
  return out;
}

double parse_number(const Token& t, int line, const std::string& key) {
  double v = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  if (!t.text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    fail(BenchErrorCode::invalid_number, {line, t.column},
         "'" + t.text + "' is not a valid number for '" + key + "'");
  return v;
}

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  return true;
}

std::optional<ElementKind> element_kind(std::string_view word) {
  static const std::map<std::string, ElementKind, std::less<>> kinds = {
      {"HWP", ElementKind::hwp},         {"QWP", ElementKind::qwp},
      {"POLARIZER", ElementKind::polarizer}, {"PL", ElementKind::polarizer},
      {"MIRROR", ElementKind::mirror},   {"M", ElementKind::mirror},
      {"VL", ElementKind::vortex_lens},  {"VORTEX_LENS", ElementKind::vortex_lens},
      {"PHASE", ElementKind::phase},     {"PBS", ElementKind::pbs},
      {"NPBS", ElementKind::npbs}};
  const auto it = kinds.find(word);
  if (it == kinds.end()) return std::nullopt;
  return it->second;
}

std::string id_prefix(ElementKind k) {
  switch (k) {
  case ElementKind::hwp: return "HWP";
  case ElementKind::qwp: return "QWP";
  case ElementKind::polarizer: return "PL";
  case ElementKind::mirror: return "M";
  case ElementKind::vortex_lens: return "VL";
  case ElementKind::phase: return "PHASE";
  case ElementKind::pbs: return "PBS";
  case ElementKind::npbs: return "NPBS";
  }
  return "E";
}

struct Attribute {
  Token key;
  Token value;
};

// key=value pairs up to a '/' or the end of the statement.
std::vector<Attribute> parse_attributes(Scanner& sc) {
  std::vector<Attribute> attrs;
  std::set<std::string> seen;
  while (sc.peek().type == Tok::word) {
    Token key = sc.next();
    sc.expect(Tok::equals, "'=' after '" + key.text + "'");
    Token value = sc.next();
    if (value.type != Tok::word && value.type != Tok::string)
      fail(BenchErrorCode::expected_token, {sc.line(), value.column},
           "expected a value after '" + key.text + "='" + Scanner::found(value));
    if (!seen.insert(key.text).second)
      fail(BenchErrorCode::duplicate_attribute, {sc.line(), key.column},
           "attribute '" + key.text + "' given twice");
    attrs.push_back({std::move(key), std::move(value)});
  }
  return attrs;
}

struct ParsedElement {
  OpticalElement element;
  bool explicit_id = false;
  Location at;
};

ParsedElement parse_element(Scanner& sc) {
  const Token kind_tok = sc.next();
  if (kind_tok.type != Tok::word)
    fail(BenchErrorCode::expected_token, {sc.line(), kind_tok.column},
         "expected an element kind" + Scanner::found(kind_tok));
  const auto kind = element_kind(kind_tok.text);
  if (!kind)
    fail(BenchErrorCode::unknown_element_kind, {sc.line(), kind_tok.column},
         "unknown element kind '" + kind_tok.text +
             "' (expected HWP, QWP, POLARIZER, MIRROR, VL or PHASE)");
  if (*kind == ElementKind::pbs || *kind == ElementKind::npbs)
    fail(BenchErrorCode::misplaced_element, {sc.line(), kind_tok.column},
         kind_tok.text + " may only appear in a 'split' or 'combine' statement");

  ParsedElement out;
  out.element.kind = *kind;
  out.at = {sc.line(), kind_tok.column};
  bool have_angle = false;
  bool have_chirality = false;
  for (const auto& [key, value] : parse_attributes(sc)) {
    const Location at{sc.line(), value.column};
    if (key.text == "id") {
      if (!valid_identifier(value.text))
        fail(BenchErrorCode::invalid_value, at, "invalid element id '" + value.text + "'");
      out.element.id = value.text;
      out.explicit_id = true;
    } else if (key.text == "angle" && out.element.has_angle()) {
      out.element.angle_deg = parse_number(value, sc.line(), key.text);
      have_angle = true;
    } else if (key.text == "chirality" && *kind == ElementKind::vortex_lens) {
      if (value.text == "L") out.element.chirality = Chirality::left;
      else if (value.text == "R") out.element.chirality = Chirality::right;
      else fail(BenchErrorCode::invalid_value, at, "chirality must be L or R, got '" + value.text + "'");
      have_chirality = true;
    } else if (key.text == "flipped" && *kind == ElementKind::vortex_lens) {
      if (value.text == "true") out.element.flipped = true;
      else if (value.text == "false") out.element.flipped = false;
      else fail(BenchErrorCode::invalid_value, at, "flipped must be true or false, got '" + value.text + "'");
    } else {
      fail(BenchErrorCode::unknown_attribute, {sc.line(), key.column},
           "attribute '" + key.text + "' does not apply to " + kind_tok.text);
    }
  }
  if (out.element.has_angle() && !have_angle)
    fail(BenchErrorCode::missing_angle, out.at, kind_tok.text + " requires angle=<degrees>");
  if (*kind == ElementKind::vortex_lens && !have_chirality)
    fail(BenchErrorCode::missing_attribute, out.at, "VL requires chirality=L|R");
  return out;
}

std::vector<ParsedElement> parse_element_list(Scanner& sc) {
  std::vector<ParsedElement> out;
  if (sc.peek().type == Tok::end) return out;
  while (true) {
    out.push_back(parse_element(sc));
    const Token t = sc.next();
    if (t.type == Tok::end) break;
    if (t.type != Tok::slash)
      fail(BenchErrorCode::expected_token, {sc.line(), t.column},
           "expected '/' between elements or end of statement" + Scanner::found(t));
  }
  return out;
}

void expect_end(Scanner& sc) {
  const Token t = sc.next();
  if (t.type != Tok::end)
    fail(BenchErrorCode::expected_token, {sc.line(), t.column}, "expected end of statement" + Scanner::found(t));
}

struct ParsedSweep {
  SweepSpec spec;
  Location at;
  Location element_at;
};

} // namespace

BenchDescription parse_bench(std::string_view text) {
  BenchDescription bench;
  std::optional<Location> name_at, input_at, split_at, combine_at, arm_a_at, arm_b_at, prepare_at;
  std::vector<ParsedElement> prepare, arm_a, arm_b;
  std::vector<ParsedSweep> sweeps;
  int last_line = 1;

  for (const auto& st : split_statements(text)) {
    last_line = st.line;
    Scanner sc(st.text, st.line, st.column);
    const Token kw = sc.next();
    const Location at{st.line, kw.column};
    if (kw.type != Tok::word)
      fail(BenchErrorCode::expected_token, at, "expected a statement keyword" + Scanner::found(kw));

    auto once = [&](std::optional<Location>& slot, BenchErrorCode code) {
      if (slot)
        fail(code, at, "'" + kw.text + "' already given on line " + std::to_string(slot->line));
      slot = at;
    };

    if (kw.text == "bench") {
      once(name_at, BenchErrorCode::duplicate_statement);
      bench.name = sc.expect(Tok::string, "a quoted bench name").text;
      expect_end(sc);
    } else if (kw.text == "input") {
      once(input_at, BenchErrorCode::duplicate_statement);
      const Token key = sc.expect_word("'state'");
      if (key.text != "state")
        fail(BenchErrorCode::expected_token, {st.line, key.column}, "expected 'state', found '" + key.text + "'");
      sc.expect(Tok::equals, "'=' after 'state'");
      bench.input = sc.raw_value("a named state or state file").text;
    } else if (kw.text == "prepare") {
      once(prepare_at, BenchErrorCode::duplicate_statement);
      sc.expect(Tok::colon, "':' after 'prepare'");
      prepare = parse_element_list(sc);
    } else if (kw.text == "split") {
      once(split_at, BenchErrorCode::duplicate_splitter);
      const Token k = sc.expect_word("a splitter kind");
      const auto kind = element_kind(k.text);
      if (!kind)
        fail(BenchErrorCode::unknown_element_kind, {st.line, k.column}, "unknown element kind '" + k.text + "'");
      if (*kind != ElementKind::pbs)
        fail(BenchErrorCode::invalid_value, {st.line, k.column}, "the splitter must be a PBS, got " + k.text);
      expect_end(sc);
    } else if (kw.text == "arm") {
      const Token which = sc.expect_word("arm name A or B");
      if (which.text != "A" && which.text != "B")
        fail(BenchErrorCode::invalid_value, {st.line, which.column}, "arm must be A or B, got '" + which.text + "'");
      once(which.text == "A" ? arm_a_at : arm_b_at, BenchErrorCode::duplicate_statement);
      sc.expect(Tok::colon, "':' after arm name");
      (which.text == "A" ? arm_a : arm_b) = parse_element_list(sc);
    } else if (kw.text == "combine") {
      once(combine_at, BenchErrorCode::duplicate_combiner);
      const Token k = sc.expect_word("a combiner kind");
      const auto kind = element_kind(k.text);
      if (!kind)
        fail(BenchErrorCode::unknown_element_kind, {st.line, k.column}, "unknown element kind '" + k.text + "'");
      if (*kind != ElementKind::npbs)
        fail(BenchErrorCode::invalid_value, {st.line, k.column}, "the combiner must be an NPBS, got " + k.text);
      bench.reflected_arm = Arm::b;
      for (const auto& [key, value] : parse_attributes(sc)) {
        if (key.text != "reflect")
          fail(BenchErrorCode::unknown_attribute, {st.line, key.column}, "attribute '" + key.text + "' does not apply to NPBS");
        if (value.text == "A") bench.reflected_arm = Arm::a;
        else if (value.text == "B") bench.reflected_arm = Arm::b;
        else if (value.text == "none") bench.reflected_arm.reset();
        else fail(BenchErrorCode::invalid_value, {st.line, value.column}, "reflect must be A, B or none, got '" + value.text + "'");
      }
      expect_end(sc);
    } else if (kw.text == "sweep") {
      ParsedSweep ps;
      ps.at = at;
      bool have[4] = {false, false, false, false};
      for (const auto& [key, value] : parse_attributes(sc)) {
        if (key.text == "element") {
          ps.spec.element_id = value.text;
          ps.element_at = {st.line, value.column};
          have[0] = true;
        } else if (key.text == "from") {
          ps.spec.start = parse_number(value, st.line, key.text);
          have[1] = true;
        } else if (key.text == "to") {
          ps.spec.stop = parse_number(value, st.line, key.text);
          have[2] = true;
        } else if (key.text == "step") {
          ps.spec.step = parse_number(value, st.line, key.text);
          have[3] = true;
        } else if (key.text == "record") {
          std::string_view rest = value.text;
          while (true) {
            const auto comma = rest.find(',');
            const std::string item(rest.substr(0, comma));
            if (!kRecordable.contains(item))
              fail(BenchErrorCode::invalid_value, {st.line, value.column}, "unknown recorded observable '" + item + "'");
            ps.spec.record.push_back(item);
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
          }
        } else {
          fail(BenchErrorCode::unknown_attribute, {st.line, key.column}, "attribute '" + key.text + "' does not apply to sweep");
        }
      }
      expect_end(sc);
      static const char* names[4] = {"element", "from", "to", "step"};
      for (int i = 0; i < 4; ++i)
        if (!have[i]) fail(BenchErrorCode::missing_attribute, at, std::string("sweep requires ") + names[i] + "=");
      try {
        ps.spec.frame_count();
      } catch (const InvalidArgument& e) {
        fail(BenchErrorCode::invalid_sweep, at, e.what());
      }
      if (ps.spec.record.empty()) ps.spec.record.push_back("skyrmion_sphere");
      sweeps.push_back(std::move(ps));
    } else {
      fail(BenchErrorCode::unknown_statement, at, "unknown statement '" + kw.text + "'");
    }
  }

  const Location eof{last_line + 1, 1};
  if (!name_at) fail(BenchErrorCode::missing_statement, eof, "missing 'bench \"<name>\"' statement");
  if (!input_at) fail(BenchErrorCode::missing_statement, eof, "missing 'input state=...' statement");
  if (!split_at) fail(BenchErrorCode::missing_statement, eof, "missing 'split PBS' statement");
  if (!combine_at) fail(BenchErrorCode::missing_statement, eof, "missing 'combine NPBS' statement");

  // Explicit ids first, then fill the rest with the lowest free KIND<n>.
  std::set<std::string> used;
  for (auto* chain : {&prepare, &arm_a, &arm_b})
    for (const auto& pe : *chain)
      if (pe.explicit_id && !used.insert(pe.element.id).second)
        fail(BenchErrorCode::duplicate_element_id, pe.at, "element id '" + pe.element.id + "' is used twice");
  std::map<std::string, int> counters;
  for (auto* chain : {&prepare, &arm_a, &arm_b})
    for (auto& pe : *chain) {
      if (pe.explicit_id) continue;
      const std::string prefix = id_prefix(pe.element.kind);
      std::string candidate;
      do {
        candidate = prefix + std::to_string(++counters[prefix]);
      } while (used.contains(candidate));
      pe.element.id = candidate;
      used.insert(candidate);
    }

  auto unwrap = [](const std::vector<ParsedElement>& in) {
    std::vector<OpticalElement> out;
    for (const auto& pe : in) out.push_back(pe.element);
    return out;
  };
  bench.prepare = unwrap(prepare);
  bench.arm_a = unwrap(arm_a);
  bench.arm_b = unwrap(arm_b);

  for (auto& ps : sweeps) {
    const OpticalElement* target = bench.find(ps.spec.element_id);
    if (target == nullptr)
      fail(BenchErrorCode::dangling_sweep_reference, ps.element_at,
           "sweep refers to unknown element '" + ps.spec.element_id + "'");
    if (!target->has_angle())
      fail(BenchErrorCode::invalid_sweep, ps.element_at,
           "element '" + ps.spec.element_id + "' has no angle to sweep");
    bench.sweeps.push_back(std::move(ps.spec));
  }
  return bench;
}

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string serialize_element(const OpticalElement& e) {
  std::string out(to_string(e.kind));
  out += " id=" + e.id;
  if (e.has_angle()) out += " angle=" + format_shortest(e.angle_deg);
  if (e.kind == ElementKind::vortex_lens) {
    out += std::string(" chirality=") + (e.chirality == Chirality::left ? "L" : "R");
    out += std::string(" flipped=") + (e.flipped ? "true" : "false");
  }
  return out;
}

std::string serialize_chain(const std::vector<OpticalElement>& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    out += i == 0 ? " " : " / ";
    out += serialize_element(chain[i]);
  }
  return out;
}

bool needs_quotes(std::string_view s) {
  if (s.empty()) return true;
  for (char c : s)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '"' || c == ';' || c == '#') return true;
  return false;
}

} // namespace

std::string serialize_bench(const BenchDescription& bench) {
  std::string out;
  out += "bench " + quote(bench.name) + "\n";
  out += "input state=" + (needs_quotes(bench.input) ? quote(bench.input) : bench.input) + "\n";
  if (!bench.prepare.empty()) out += "prepare:" + serialize_chain(bench.prepare) + "\n";
  out += "split PBS\n";
  out += "arm A:" + serialize_chain(bench.arm_a) + "\n";
  out += "arm B:" + serialize_chain(bench.arm_b) + "\n";
  out += "combine NPBS reflect=";
  out += bench.reflected_arm ? std::string(to_string(*bench.reflected_arm)) : "none";
  out += "\n";
  for (const auto& s : bench.sweeps) {
    out += "sweep element=" + s.element_id + " from=" + format_shortest(s.start) +
           " to=" + format_shortest(s.stop) + " step=" + format_shortest(s.step) + " record=";
    for (std::size_t i = 0; i < s.record.size(); ++i) out += (i ? "," : "") + s.record[i];
    out += "\n";
  }
  return out;
}

} // namespace su6
