#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vfk/errors.hpp"

namespace vfk::automata {

using Symbol = char32_t;
using StateId = std::size_t;

enum class Verdict { accept, reject };

std::string_view to_string(Verdict v);

// Raised when an input symbol is not part of the automaton's alphabet. This is
// a malformed input, distinct from a reject verdict.
class RejectedInputError : public Error {
 public:
  RejectedInputError(Symbol symbol, std::size_t position);
  Symbol symbol() const { return symbol_; }
  std::size_t position() const { return position_; }

 private:
  Symbol symbol_;
  std::size_t position_;
};

// Malformed DFA encoding. field() names the offending header or line kind.
class DecodeError : public Error {
 public:
  DecodeError(std::string field, const std::string& detail);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Deterministic finite automaton with a total transition table.
///
/// The alphabet is kept sorted by code point; a symbol's column in the
/// transition table is its position in that ordering. Construction validates
/// that every target, the start state and all accepting states are in range.
class Dfa {
 public:
  // `table` is row-major: table[state * alphabet.size() + column].
  Dfa(std::size_t states, std::u32string alphabet, std::vector<StateId> table, StateId start,
      std::vector<StateId> accepting);

  std::size_t states() const { return states_; }
  const std::u32string& alphabet() const { return alphabet_; }
  StateId start() const { return start_; }
  const std::vector<StateId>& accepting() const { return accepting_; }
  bool is_accepting(StateId q) const { return accept_mask_[q]; }

  std::optional<std::size_t> column(Symbol s) const;
  StateId next(StateId q, Symbol s) const;  // throws RejectedInputError (position 0)
  StateId next_by_column(StateId q, std::size_t column) const {
    return table_[q * alphabet_.size() + column];
  }

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  std::size_t states_;
  std::u32string alphabet_;
  std::vector<StateId> table_;
  StateId start_;
  std::vector<StateId> accepting_;
  std::vector<bool> accept_mask_;
};

struct RunResult {
  Verdict verdict;
  StateId final_state;
};

// Recognizes strings over `alphabet` containing `pattern` as a contiguous
// substring. Uses failure-function transitions, so the result has
// |pattern| + 1 states with the last one accepting and absorbing.
Dfa build_substring_dfa(std::u32string_view pattern, std::u32string_view alphabet);

RunResult dfa_run(const Dfa& d, std::u32string_view w);

// Same automaton, accepting set replaced by its complement.
Dfa complement(const Dfa& d);

// Canonical line-based text form:
//   DFA v1 / states / alphabet / start / accept / trans lines sorted by (state, symbol)
std::string encode_dfa(const Dfa& d);
Dfa decode_dfa(std::string_view text);

// Universal simulation: decode <D> and run it on w.
RunResult simulate_encoded_dfa(std::string_view encoded, std::u32string_view w);

enum class Status { running, accept, reject };

/// One-configuration-at-a-time machine. Once status() leaves `running`,
/// further step() calls are no-ops.
class StepMachine {
 public:
  virtual ~StepMachine() = default;
  virtual Status status() const = 0;
  virtual void step() = 0;
};

/// Wraps a DFA run as a StepMachine: each step consumes one input symbol, and
/// the verdict is reported on the step that exhausts the input (the first step
/// for empty input). In recognizer mode a non-accepting end of input loops
/// forever instead of rejecting.
class DfaMachine final : public StepMachine {
 public:
  enum class OnReject { reject, loop };

  DfaMachine(std::shared_ptr<const Dfa> dfa, std::u32string input,
             OnReject on_reject = OnReject::reject);

  Status status() const override { return status_; }
  void step() override;

  StateId state() const { return state_; }
  std::size_t steps_taken() const { return steps_; }

 private:
  std::shared_ptr<const Dfa> dfa_;
  std::u32string input_;
  OnReject on_reject_;
  StateId state_;
  std::size_t position_ = 0;
  std::size_t steps_ = 0;
  Status status_ = Status::running;
};

enum class DovetailOutcome { accept, reject, fuel_exhausted };

std::string_view to_string(DovetailOutcome o);

struct DovetailResult {
  DovetailOutcome outcome;
  std::uint64_t steps;  // total single steps spent across both machines
};

inline constexpr std::uint64_t kDefaultDovetailFuel = 1'000'000;

// Alternates m1, m2, m1, ... one step at a time. Accept as soon as m1 accepts,
// reject as soon as m2 accepts. Throws InvalidArgument when fuel == 0.
DovetailResult dovetail_decide(StepMachine& m1, StepMachine& m2,
                               std::uint64_t fuel = kDefaultDovetailFuel);

}  // namespace vfk::automata
