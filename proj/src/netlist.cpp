#include "qlab/netlist.hpp"

#include "qlab/error.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

namespace qlab {

namespace {

struct Token {
  std::string text;
  int line = 0;
  int col = 0;  // 1-based
};

[[noreturn]] void syntax_error(int line, int col, const std::string& msg) {
  fail("SyntaxError",
       "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg);
}

std::vector<Token> tokenize_line(const std::string& text, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] == '#') break;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != '#')
      ++i;
    out.push_back({text.substr(start, i - start), line_no, static_cast<int>(start) + 1});
  }
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

// decimal float or pi expression: [-][N]pi[/M]
double parse_angle(const Token& t) {
  const std::string& s = t.text;
  std::size_t pi_pos = s.find("pi");
  if (pi_pos == std::string::npos) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (...) {
      syntax_error(t.line, t.col, "expected angle, got '" + s + "'");
    }
    if (used != s.size()) syntax_error(t.line, t.col, "expected angle, got '" + s + "'");
    return v;
  }
  double sign = 1.0;
  std::string head = s.substr(0, pi_pos);
  if (!head.empty() && head[0] == '-') {
    sign = -1.0;
    head = head.substr(1);
  }
  double num = 1.0;
  if (!head.empty()) {
    std::size_t used = 0;
    try {
      num = std::stod(head, &used);
    } catch (...) {
      syntax_error(t.line, t.col, "bad pi expression '" + s + "'");
    }
    if (used != head.size()) syntax_error(t.line, t.col, "bad pi expression '" + s + "'");
  }
  double den = 1.0;
  std::string tail = s.substr(pi_pos + 2);
  if (!tail.empty()) {
    if (tail[0] != '/' || tail.size() < 2)
      syntax_error(t.line, t.col, "bad pi expression '" + s + "'");
    std::size_t used = 0;
    try {
      den = std::stod(tail.substr(1), &used);
    } catch (...) {
      syntax_error(t.line, t.col, "bad pi expression '" + s + "'");
    }
    if (used + 1 != tail.size() || den == 0.0)
      syntax_error(t.line, t.col, "bad pi expression '" + s + "'");
  }
  return sign * num * std::numbers::pi / den;
}

double parse_param(const Token& t, const std::string& key) {
  const std::string prefix = key + "=";
  if (t.text.rfind(prefix, 0) != 0)
    syntax_error(t.line, t.col, "expected " + key + "=<value>, got '" + t.text + "'");
  Token value{t.text.substr(prefix.size()), t.line,
              t.col + static_cast<int>(prefix.size())};
  if (value.text.empty()) syntax_error(t.line, t.col, "empty value for " + key);
  return parse_angle(value);
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Circuit run() {
    std::istringstream in(text_);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      auto tokens = tokenize_line(line, line_no);
      if (tokens.empty()) continue;
      parse_statement(tokens);
    }
    return std::move(circuit_);
  }

 private:
  void parse_statement(const std::vector<Token>& t) {
    const std::string& head = t[0].text;
    if (head == "mode") {
      parse_mode(t);
    } else if (head == "source") {
      circuit_.sources.push_back(mode_ref(expect_name(t, 1)));
      expect_end(t, 2);
    } else if (head == "detector") {
      parse_detector(t);
    } else if (head == "mirror") {
      parse_element(t, ElementKind::mirror, 1, 1, {});
    } else if (head == "beamsplitter") {
      parse_element(t, ElementKind::generic_bs, 1, 2, {});
    } else if (head == "halfsilver") {
      parse_halfsilver(t);
    } else if (head == "phase") {
      parse_phase(t);
    } else if (head == "downconvert") {
      parse_element(t, ElementKind::downconvert, 1, 2, {"eta"});
    } else if (head == "upconvert") {
      parse_element(t, ElementKind::upconvert, 2, 1, {"eta"});
    } else if (head == "amplify") {
      parse_element(t, ElementKind::amplify, 1, 1, {"G", "N"});
    } else {
      syntax_error(t[0].line, t[0].col, "unknown statement '" + head + "'");
    }
  }

  void parse_mode(const std::vector<Token>& t) {
    if (t.size() < 2) syntax_error(t[0].line, t[0].col, "mode needs at least one name");
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (!valid_name(t[i].text))
        syntax_error(t[i].line, t[i].col, "invalid mode name '" + t[i].text + "'");
      if (declared_.count(t[i].text))
        fail("DuplicateMode", "mode '" + t[i].text + "' declared twice (line " +
                                  std::to_string(t[i].line) + ")");
      declared_.insert(t[i].text);
      circuit_.modes.push_back(t[i].text);
    }
  }

  void parse_detector(const std::vector<Token>& t) {
    if (t.size() != 3)
      syntax_error(t[0].line, t[0].col, "detector needs <mode> <label>");
    std::string mode = mode_ref(t[1]);
    if (!valid_name(t[2].text))
      syntax_error(t[2].line, t[2].col, "invalid label '" + t[2].text + "'");
    for (const auto& d : circuit_.detectors)
      if (d.label == t[2].text)
        fail("DuplicateLabel", "detector label '" + t[2].text + "' reused (line " +
                                   std::to_string(t[2].line) + ")");
    circuit_.detectors.push_back({mode, t[2].text});
  }

  void parse_phase(const std::vector<Token>& t) {
    if (t.size() != 3) syntax_error(t[0].line, t[0].col, "phase needs <mode> phi=<angle>");
    Element e;
    e.kind = ElementKind::phase;
    e.line = t[0].line;
    std::string mode = mode_ref(t[1]);
    e.input_modes.push_back(mode);
    e.output_modes.push_back(mode);
    e.phi = parse_param(t[2], "phi");
    circuit_.elements.push_back(std::move(e));
  }

  void parse_halfsilver(const std::vector<Token>& t) {
    // single- or two-input form, distinguished by the arrow position
    std::size_t arrow = 0;
    for (std::size_t i = 1; i < t.size(); ++i)
      if (t[i].text == "->") arrow = i;
    if (arrow != 2 && arrow != 3)
      syntax_error(t[0].line, t[0].col, "halfsilver needs <in> [<in2>] -> <out1> <out2> T=<float>");
    std::size_t n_in = arrow - 1;
    if (t.size() != arrow + 4)
      syntax_error(t[0].line, t[0].col, "halfsilver needs two outputs and T=<float>");
    Element e;
    e.kind = ElementKind::halfsilver;
    e.line = t[0].line;
    for (std::size_t i = 1; i <= n_in; ++i) e.input_modes.push_back(mode_ref(t[i]));
    e.output_modes.push_back(mode_ref(t[arrow + 1]));
    e.output_modes.push_back(mode_ref(t[arrow + 2]));
    e.T = parse_param(t[arrow + 3], "T");
    if (e.T < 0.0 || e.T > 1.0)
      fail("ParamOutOfRange", "halfsilver T=" + std::to_string(e.T) +
                                  " outside [0,1] (line " + std::to_string(e.line) + ")");
    circuit_.elements.push_back(std::move(e));
  }

  void parse_element(const std::vector<Token>& t, ElementKind kind, int n_in,
                     int n_out, std::vector<std::string> params) {
    std::size_t expected = 1 + n_in + 1 + n_out + params.size();
    if (t.size() != expected || t[1 + n_in].text != "->")
      syntax_error(t[0].line, t[0].col,
                   "malformed '" + t[0].text + "' element (expected " +
                       std::to_string(n_in) + " input(s), '->', " +
                       std::to_string(n_out) + " output(s))");
    Element e;
    e.kind = kind;
    e.line = t[0].line;
    for (int i = 0; i < n_in; ++i) e.input_modes.push_back(mode_ref(t[1 + i]));
    for (int i = 0; i < n_out; ++i)
      e.output_modes.push_back(mode_ref(t[2 + n_in + i]));
    std::size_t at = 2 + n_in + n_out;
    for (const auto& key : params) {
      double v = parse_param(t[at], key);
      if (key == "eta")
        e.eta = v;
      else if (key == "G")
        e.G = v;
      else if (key == "N")
        e.N = v;
      ++at;
    }
    circuit_.elements.push_back(std::move(e));
  }

  std::string mode_ref(const Token& t) {
    if (!valid_name(t.text))
      syntax_error(t.line, t.col, "invalid mode name '" + t.text + "'");
    if (!declared_.count(t.text))
      fail("UndeclaredMode", "mode '" + t.text + "' used before declaration (line " +
                                 std::to_string(t.line) + ", col " +
                                 std::to_string(t.col) + ")");
    return t.text;
  }

  Token expect_name(const std::vector<Token>& t, std::size_t i) {
    if (i >= t.size())
      syntax_error(t[0].line, t[0].col, "missing mode name after '" + t[0].text + "'");
    return t[i];
  }

  void expect_end(const std::vector<Token>& t, std::size_t i) {
    if (t.size() > i)
      syntax_error(t[i].line, t[i].col, "unexpected trailing token '" + t[i].text + "'");
  }

  const std::string& text_;
  Circuit circuit_;
  std::set<std::string> declared_;
};

}  // namespace

Circuit parse_netlist(const std::string& text) { return Parser(text).run(); }

std::string mz_netlist(double phi) {
  char buf[512];
  // T = 1/sqrt(2) for the 50:50 half-silvered mirrors
  std::snprintf(buf, sizeof(buf),
                "# Mach-Zehnder interferometer\n"
                "mode a b c b2 c2 d e\n"
                "source a\n"
                "halfsilver a -> b c T=%.17g\n"
                "phase b phi=%.17g\n"
                "mirror b -> b2\n"
                "mirror c -> c2\n"
                "halfsilver b2 c2 -> e d T=%.17g\n"
                "detector d D1\n"
                "detector e D2\n",
                std::sqrt(0.5), phi, std::sqrt(0.5));
  return buf;
}

}  // namespace qlab
