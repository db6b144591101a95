#include <algorithm>
#include <vector>

#include "vfk/automata.hpp"
#include "vfk/utf8.hpp"

namespace vfk::automata {

std::string_view to_string(Verdict v) { return v == Verdict::accept ? "accept" : "reject"; }

RejectedInputError::RejectedInputError(Symbol symbol, std::size_t position)
    : Error("symbol '" + utf8::encode(symbol) + "' at position " + std::to_string(position) +
            " is not in the alphabet"),
      symbol_(symbol),
      position_(position) {}

DecodeError::DecodeError(std::string field, const std::string& detail)
    : Error("malformed DFA encoding (" + field + "): " + detail), field_(std::move(field)) {}

Dfa::Dfa(std::size_t states, std::u32string alphabet, std::vector<StateId> table, StateId start,
         std::vector<StateId> accepting)
    : states_(states),
      alphabet_(std::move(alphabet)),
      table_(std::move(table)),
      start_(start),
      accepting_(std::move(accepting)) {
  if (states_ == 0) throw InvalidArgument("DFA needs at least one state");
  if (alphabet_.empty()) throw InvalidArgument("DFA alphabet is empty");
  if (!std::is_sorted(alphabet_.begin(), alphabet_.end()) ||
      std::adjacent_find(alphabet_.begin(), alphabet_.end()) != alphabet_.end()) {
    throw InvalidArgument("DFA alphabet must be strictly increasing by code point");
  }
  if (table_.size() != states_ * alphabet_.size()) {
    throw InvalidArgument("transition table is not total: expected " +
                          std::to_string(states_ * alphabet_.size()) + " entries, got " +
                          std::to_string(table_.size()));
  }
  for (StateId t : table_) {
    if (t >= states_) throw InvalidArgument("transition target " + std::to_string(t) + " out of range");
  }
  if (start_ >= states_) throw InvalidArgument("start state out of range");
  std::sort(accepting_.begin(), accepting_.end());
  accepting_.erase(std::unique(accepting_.begin(), accepting_.end()), accepting_.end());
  accept_mask_.assign(states_, false);
  for (StateId a : accepting_) {
    if (a >= states_) throw InvalidArgument("accepting state " + std::to_string(a) + " out of range");
    accept_mask_[a] = true;
  }
}

std::optional<std::size_t> Dfa::column(Symbol s) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), s);
  if (it == alphabet_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - alphabet_.begin());
}

StateId Dfa::next(StateId q, Symbol s) const {
  auto c = column(s);
  if (!c) throw RejectedInputError(s, 0);
  return next_by_column(q, *c);
}

Dfa build_substring_dfa(std::u32string_view pattern, std::u32string_view alphabet_in) {
  if (pattern.empty()) throw InvalidArgument("substring pattern is empty");
  std::u32string alphabet(alphabet_in);
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  if (alphabet.empty()) throw InvalidArgument("alphabet is empty");

  const std::size_t m = pattern.size();
  const std::size_t k = alphabet.size();
  std::vector<std::size_t> pattern_col(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), pattern[i]);
    if (it == alphabet.end() || *it != pattern[i]) {
      throw InvalidArgument("pattern symbol '" + utf8::encode(pattern[i]) + "' at position " +
                            std::to_string(i) + " is not in the alphabet");
    }
    pattern_col[i] = static_cast<std::size_t>(it - alphabet.begin());
  }

  // State q = length of the longest pattern prefix that is a suffix of the
  // input read so far. Row q copies the row of its failure state, then
  // overrides the matching symbol.
  std::vector<StateId> table((m + 1) * k, 0);
  table[0 * k + pattern_col[0]] = 1;
  std::size_t fallback = 0;
  for (std::size_t q = 1; q < m; ++q) {
    for (std::size_t c = 0; c < k; ++c) table[q * k + c] = table[fallback * k + c];
    table[q * k + pattern_col[q]] = q + 1;
    fallback = table[fallback * k + pattern_col[q]];
  }
  for (std::size_t c = 0; c < k; ++c) table[m * k + c] = m;

  return Dfa(m + 1, std::move(alphabet), std::move(table), 0, {m});
}

RunResult dfa_run(const Dfa& d, std::u32string_view w) {
  StateId q = d.start();
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto c = d.column(w[i]);
    if (!c) throw RejectedInputError(w[i], i);
    q = d.next_by_column(q, *c);
  }
  return {d.is_accepting(q) ? Verdict::accept : Verdict::reject, q};
}

Dfa complement(const Dfa& d) {
  std::vector<StateId> table;
  table.reserve(d.states() * d.alphabet().size());
  for (StateId q = 0; q < d.states(); ++q) {
    for (std::size_t c = 0; c < d.alphabet().size(); ++c) table.push_back(d.next_by_column(q, c));
  }
  std::vector<StateId> accepting;
  for (StateId q = 0; q < d.states(); ++q) {
    if (!d.is_accepting(q)) accepting.push_back(q);
  }
  return Dfa(d.states(), d.alphabet(), std::move(table), d.start(), std::move(accepting));
}

RunResult simulate_encoded_dfa(std::string_view encoded, std::u32string_view w) {
  const Dfa d = decode_dfa(encoded);
  return dfa_run(d, w);
}

}  // namespace vfk::automata
