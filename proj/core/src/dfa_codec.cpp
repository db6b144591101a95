#include <charconv>
#include <string>
#include <vector>

#include "vfk/automata.hpp"
#include "vfk/utf8.hpp"

namespace vfk::automata {

namespace {

constexpr std::string_view kHeader = "DFA v1";

// Canonical decimal: digits only, no sign, no leading zeros.
std::size_t parse_id(std::string_view field, std::string_view text) {
  if (text.empty()) throw DecodeError(std::string(field), "missing number");
  if (text.size() > 1 && text[0] == '0') {
    throw DecodeError(std::string(field), "non-canonical number '" + std::string(text) + "'");
  }
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw DecodeError(std::string(field), "expected a natural number, got '" + std::string(text) + "'");
  }
  return value;
}

std::string_view expect_prefix(std::string_view line, std::string_view field) {
  if (line.substr(0, field.size()) != field) {
    throw DecodeError(std::string(field), "expected line starting with '" + std::string(field) +
                                              "', got '" + std::string(line) + "'");
  }
  return line.substr(field.size());
}

std::string_view expect_value(std::string_view line, std::string_view field) {
  auto rest = expect_prefix(line, field);
  if (rest.empty() || rest[0] != ' ') {
    throw DecodeError(std::string(field), "missing value");
  }
  return rest.substr(1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  if (text.empty() || text.back() != '\n') {
    throw DecodeError("header", "encoding must end with a newline");
  }
  std::vector<std::string_view> lines;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    lines.push_back(text.substr(begin, end - begin));
    begin = end + 1;
  }
  return lines;
}

}  // namespace

std::string encode_dfa(const Dfa& d) {
  for (Symbol s : d.alphabet()) {
    if (s == U'\n') throw InvalidArgument("newline cannot be encoded as an alphabet symbol");
  }
  std::string out;
  out += kHeader;
  out += "\nstates " + std::to_string(d.states());
  out += "\nalphabet " + utf8::encode(d.alphabet());
  out += "\nstart " + std::to_string(d.start());
  out += "\naccept";
  for (StateId a : d.accepting()) out += " " + std::to_string(a);
  out += '\n';
  for (StateId q = 0; q < d.states(); ++q) {
    for (std::size_t c = 0; c < d.alphabet().size(); ++c) {
      out += "trans " + std::to_string(q) + " " + utf8::encode(d.alphabet()[c]) + " " +
             std::to_string(d.next_by_column(q, c)) + "\n";
    }
  }
  return out;
}

Dfa decode_dfa(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.size() < 5) throw DecodeError("header", "encoding has fewer than five header lines");
  if (lines[0] != kHeader) throw DecodeError("header", "expected '" + std::string(kHeader) + "'");

  const std::size_t states = parse_id("states", expect_value(lines[1], "states"));
  if (states == 0) throw DecodeError("states", "state count must be positive");

  std::u32string alphabet;
  try {
    alphabet = utf8::decode(expect_value(lines[2], "alphabet"));
  } catch (const InvalidArgument& e) {
    throw DecodeError("alphabet", e.what());
  }
  if (alphabet.empty()) throw DecodeError("alphabet", "alphabet is empty");
  for (std::size_t i = 1; i < alphabet.size(); ++i) {
    if (alphabet[i - 1] >= alphabet[i]) {
      throw DecodeError("alphabet", "symbols must be strictly increasing by code point");
    }
  }

  const StateId start = parse_id("start", expect_value(lines[3], "start"));
  if (start >= states) throw DecodeError("start", "start state out of range");

  std::vector<StateId> accepting;
  {
    std::string_view rest = expect_prefix(lines[4], "accept");
    while (!rest.empty()) {
      if (rest[0] != ' ') throw DecodeError("accept", "ids must be space separated");
      rest.remove_prefix(1);
      std::size_t end = rest.find(' ');
      StateId id = parse_id("accept", rest.substr(0, end));
      if (id >= states) throw DecodeError("accept", "accepting state " + std::to_string(id) + " out of range");
      if (!accepting.empty() && accepting.back() >= id) {
        throw DecodeError("accept", "ids must be strictly ascending");
      }
      accepting.push_back(id);
      rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end);
    }
  }

  const std::size_t expected = states * alphabet.size();
  if (lines.size() - 5 != expected) {
    throw DecodeError("trans", "expected " + std::to_string(expected) + " transition lines, got " +
                                   std::to_string(lines.size() - 5));
  }
  std::vector<StateId> table(expected);
  for (std::size_t idx = 0; idx < expected; ++idx) {
    const StateId want_state = idx / alphabet.size();
    const Symbol want_symbol = alphabet[idx % alphabet.size()];
    std::string_view rest = expect_value(lines[5 + idx], "trans");
    // <state> <symbol> <state>, where the symbol may itself be a space.
    std::size_t sp = rest.find(' ');
    if (sp == std::string_view::npos) throw DecodeError("trans", "missing symbol");
    StateId from = parse_id("trans", rest.substr(0, sp));
    rest.remove_prefix(sp + 1);
    const std::string sym = utf8::encode(want_symbol);
    if (rest.substr(0, sym.size()) != sym || rest.size() <= sym.size() || rest[sym.size()] != ' ' ||
        from != want_state) {
      throw DecodeError("trans", "line " + std::to_string(6 + idx) + " must be the transition of (" +
                                     std::to_string(want_state) + ", '" + sym + "')");
    }
    StateId to = parse_id("trans", rest.substr(sym.size() + 1));
    if (to >= states) throw DecodeError("trans", "transition target " + std::to_string(to) + " out of range");
    table[idx] = to;
  }
  return Dfa(states, std::move(alphabet), std::move(table), start, std::move(accepting));
}

}  // namespace vfk::automata
