#include "binsig/sigfmt.hpp"

#include <map>
#include <sstream>
#include <vector>

#include "binsig/errors.hpp"

namespace binsig {
namespace sigfmt {

namespace {

struct Token {
  std::string text;
  int col;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    out.push_back({std::string(line.substr(start, i - start)),
                   static_cast<int>(start) + 1});
  }
  return out;
}

Rat parse_rat_tok(const Token& tok, int line) {
  auto r = Rat::parse(tok.text);
  if (!r) {
    throw SyntaxError(line, tok.col, "expected a rational, got '" + tok.text +
                                         "'");
  }
  return *r;
}

BinaryVector parse_bits_tok(const Token& tok, int line) {
  auto v = BinaryVector::parse(tok.text);
  if (!v) {
    throw SyntaxError(line, tok.col,
                      "expected a bit string, got '" + tok.text + "'");
  }
  return *v;
}

}  // namespace

UPSignal parse(std::string_view text) {
  enum class State { Signal, Width, Init, Body, CycleBody };
  State state = State::Signal;

  int width = 0;
  std::optional<BinaryVector> init;
  std::vector<SignalSwitch> transient;
  std::optional<SignalCycle> cycle;
  int cycle_line = 0;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view sv = raw;
    if (auto hash = sv.find('#'); hash != std::string_view::npos) {
      sv = sv.substr(0, hash);
    }
    std::vector<Token> toks = tokenize(sv);
    if (toks.empty()) continue;
    const std::string& head = toks[0].text;

    if (head == "signal") {
      if (state != State::Signal) {
        throw SyntaxError(line, toks[0].col, "duplicate 'signal' header");
      }
      if (toks.size() != 2 || toks[1].text != "v1") {
        throw SyntaxError(line, toks.size() > 1 ? toks[1].col : toks[0].col,
                          "expected 'signal v1'");
      }
      state = State::Width;
    } else if (head == "width") {
      if (state != State::Width) {
        throw SyntaxError(line, toks[0].col, "unexpected 'width' directive");
      }
      if (toks.size() != 2) {
        throw SyntaxError(line, toks[0].col, "expected 'width <n>'");
      }
      Rat w = parse_rat_tok(toks[1], line);
      if (!w.is_integer() || !w.is_positive() ||
          w.num() > BinaryVector::kMaxWidth) {
        throw SemanticError(line, "width must be an integer in [1, 64]");
      }
      width = static_cast<int>(w.num());
      state = State::Init;
    } else if (head == "init") {
      if (state != State::Init) {
        throw SyntaxError(line, toks[0].col, "unexpected 'init' directive");
      }
      if (toks.size() != 2) {
        throw SyntaxError(line, toks[0].col, "expected 'init <bits>'");
      }
      BinaryVector v = parse_bits_tok(toks[1], line);
      if (v.width() != width) {
        throw SemanticError(line, "init has " + std::to_string(v.width()) +
                                      " bits, width is " +
                                      std::to_string(width));
      }
      init = v;
      state = State::Body;
    } else if (head == "at") {
      if (state != State::Body && state != State::CycleBody) {
        throw SyntaxError(line, toks[0].col, "unexpected 'at' directive");
      }
      if (toks.size() != 4 || toks[2].text != "->") {
        throw SyntaxError(line, toks[0].col,
                          "expected 'at <time> -> <bits>'");
      }
      bool plus = !toks[1].text.empty() && toks[1].text[0] == '+';
      if (state == State::CycleBody && !plus) {
        throw SyntaxError(line, toks[1].col,
                          "pattern offsets must be written with '+'");
      }
      if (state == State::Body && plus) {
        throw SyntaxError(line, toks[1].col,
                          "'+' offsets are only valid inside a cycle block");
      }
      Token timetok = toks[1];
      if (plus) timetok.text.erase(0, 1);
      Rat t = parse_rat_tok(timetok, line);
      BinaryVector v = parse_bits_tok(toks[3], line);
      if (v.width() != width) {
        throw SemanticError(line, "value has " + std::to_string(v.width()) +
                                      " bits, width is " +
                                      std::to_string(width));
      }
      if (state == State::Body) {
        if (!transient.empty() && !(transient.back().time < t)) {
          throw SemanticError(line, "non-increasing times");
        }
        transient.push_back({t, v});
      } else {
        auto& pat = cycle->pattern;
        if (pat.empty() && !t.is_zero()) {
          throw SemanticError(line, "first pattern offset must be +0");
        }
        if (!pat.empty() && !(pat.back().offset < t)) {
          throw SemanticError(line, "non-increasing pattern offsets");
        }
        if (t.is_negative() || !(t < cycle->period)) {
          throw SemanticError(line, "pattern offset out of [0, period)");
        }
        pat.push_back({t, v});
      }
    } else if (head == "cycle") {
      if (state != State::Body) {
        throw SyntaxError(line, toks[0].col, "unexpected 'cycle' directive");
      }
      if (toks.size() != 5 || toks[1].text != "start" ||
          toks[3].text != "period") {
        throw SyntaxError(line, toks[0].col,
                          "expected 'cycle start <t> period <p>'");
      }
      Rat start = parse_rat_tok(toks[2], line);
      Rat period = parse_rat_tok(toks[4], line);
      if (!period.is_positive()) {
        throw SemanticError(line, "period must be positive");
      }
      if (!transient.empty() && !(transient.back().time < start)) {
        throw SemanticError(line, "cycle start must follow all switch times");
      }
      cycle = SignalCycle{start, period, {}};
      cycle_line = line;
      state = State::CycleBody;
    } else {
      throw SyntaxError(line, toks[0].col,
                        "unknown directive '" + head + "'");
    }
  }

  if (state == State::Signal) {
    throw SyntaxError(line + 1, 1, "missing 'signal v1' header");
  }
  if (state == State::Width) {
    throw SyntaxError(line + 1, 1, "missing 'width' directive");
  }
  if (state == State::Init) {
    throw SyntaxError(line + 1, 1, "missing 'init' directive");
  }
  if (cycle && cycle->pattern.empty()) {
    throw SemanticError(cycle_line, "cycle block has no pattern entries");
  }
  return make_signal(*init, std::move(transient), std::move(cycle));
}

std::string serialize(const UPSignal& x) {
  std::string out;
  out += "signal v1\n";
  out += "width " + std::to_string(x.width()) + "\n";
  out += "init " + x.init().to_string() + "\n";
  for (const auto& s : x.transient()) {
    out += "at " + s.time.to_string() + " -> " + s.value.to_string() + "\n";
  }
  if (x.cycle()) {
    const auto& c = *x.cycle();
    out += "cycle start " + c.start.to_string() + " period " +
           c.period.to_string() + "\n";
    for (const auto& e : c.pattern) {
      out += "at +" + e.offset.to_string() + " -> " + e.value.to_string() +
             "\n";
    }
  }
  return out;
}

namespace {

// Scanner for the chi-sum expression grammar.
class ChiScanner {
 public:
  explicit ChiScanner(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() &&
           (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' ||
            s_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }

  int col() const { return static_cast<int>(pos_) + 1; }

  bool eat(std::string_view lit) {
    skip_ws();
    if (s_.substr(pos_).starts_with(lit)) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  // Reads a rational up to one of the stop characters.
  Rat rat_until(std::string_view stops) {
    std::size_t start = pos_;
    while (pos_ < s_.size() && stops.find(s_[pos_]) == std::string_view::npos &&
           s_[pos_] != ' ') {
      ++pos_;
    }
    auto r = Rat::parse(s_.substr(start, pos_ - start));
    if (!r) {
      throw SyntaxError(1, static_cast<int>(start) + 1, "expected a rational");
    }
    return *r;
  }

  void expect(std::string_view lit, const std::string& what) {
    if (!eat(lit)) {
      throw SyntaxError(1, col(), "expected " + what);
    }
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

UPSignal parse_chi_expr(std::string_view text) {
  ChiScanner sc(text);

  int ray_parity = 0;
  std::map<Rat, int> toggles;
  auto toggle = [&](const Rat& t) { toggles[t] ^= 1; };

  bool ellipsis = false;
  std::optional<std::pair<Rat, Rat>> repeat;
  bool first = true;

  while (!sc.done()) {
    if (!first) {
      // separator between terms; 'repeat' and '...' may also follow bare
      if (sc.eat("^") && sc.done()) {
        throw SyntaxError(1, sc.col(), "dangling '^'");
      }
    }
    if (sc.eat("...")) {
      ellipsis = true;
      first = false;
      continue;
    }
    if (sc.eat("repeat")) {
      sc.expect("start=", "'start=<rational>'");
      Rat s = sc.rat_until(" ");
      sc.expect("period=", "'period=<rational>'");
      Rat p = sc.rat_until(" ");
      if (!p.is_positive()) {
        throw SyntaxError(1, sc.col(), "repeat period must be positive");
      }
      repeat = {s, p};
      if (!sc.done()) {
        throw SyntaxError(1, sc.col(), "trailing input after repeat clause");
      }
      break;
    }
    if (ellipsis) {
      throw SyntaxError(1, sc.col(), "only a repeat clause may follow '...'");
    }
    int term_col = sc.col();
    sc.expect("chi", "a chi term");
    if (sc.eat("(")) {
      sc.expect("-inf", "'-inf'");
      sc.expect(",", "','");
      Rat a = sc.rat_until(")");
      sc.expect(")", "')'");
      ray_parity ^= 1;
      toggle(a);
    } else if (sc.eat("[")) {
      Rat a = sc.rat_until(",");
      sc.expect(",", "','");
      Rat b = sc.rat_until(")");
      sc.expect(")", "')'");
      if (b < a) {
        throw SyntaxError(1, term_col, "interval end precedes its start");
      }
      toggle(a);
      toggle(b);
    } else {
      throw SyntaxError(1, sc.col(), "expected '(' or '[' after chi");
    }
    first = false;
  }

  if (first) {
    throw SyntaxError(1, 1, "empty expression");
  }
  if (ellipsis && !repeat) {
    throw MissingRepeatClause(
        "expression continues with '...' but declares no repeat clause");
  }

  std::vector<Rat> switches;
  for (const auto& [t, par] : toggles) {
    if (par) switches.push_back(t);
  }

  const BinaryVector one(1, 1);
  const BinaryVector zero(1, 0);
  BinaryVector init = ray_parity ? one : zero;

  if (!repeat) {
    std::vector<SignalSwitch> events;
    BinaryVector cur = init;
    for (const Rat& t : switches) {
      cur = cur ^ one;
      events.push_back({t, cur});
    }
    return make_signal(init, std::move(events), std::nullopt);
  }

  const Rat s = repeat->first;
  const Rat p = repeat->second;
  const Rat end = s + p;
  for (const Rat& t : switches) {
    if (end < t) {
      throw SyntaxError(1, 1, "term extends past the repeat window");
    }
  }

  std::vector<SignalSwitch> events;
  BinaryVector cur = init;
  BinaryVector at_start = init;
  std::vector<CycleEntry> pattern;
  for (const Rat& t : switches) {
    if (t < s) {
      cur = cur ^ one;
      events.push_back({t, cur});
      at_start = cur;
    } else if (t < end) {
      if (t == s) {
        at_start = at_start ^ one;
      } else {
        if (pattern.empty()) pattern.push_back({Rat(0), at_start});
        pattern.push_back({t - s, pattern.back().value ^ one});
      }
    }
    // a toggle exactly at the window end only affects t >= end, which the
    // repeat overrides
  }
  if (pattern.empty()) pattern.push_back({Rat(0), at_start});
  return make_signal(init, std::move(events),
                     SignalCycle{s, p, std::move(pattern)});
}

}  // namespace sigfmt
}  // namespace binsig
