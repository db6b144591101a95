#include "vfk/automata.hpp"

namespace vfk::automata {

std::string_view to_string(DovetailOutcome o) {
  switch (o) {
    case DovetailOutcome::accept:
      return "accept";
    case DovetailOutcome::reject:
      return "reject";
    case DovetailOutcome::fuel_exhausted:
      return "fuel-exhausted";
  }
  return "?";
}

DfaMachine::DfaMachine(std::shared_ptr<const Dfa> dfa, std::u32string input, OnReject on_reject)
    : dfa_(std::move(dfa)), input_(std::move(input)), on_reject_(on_reject), state_(dfa_->start()) {}

void DfaMachine::step() {
  if (status_ != Status::running) return;
  ++steps_;
  if (position_ < input_.size()) {
    auto c = dfa_->column(input_[position_]);
    if (!c) throw RejectedInputError(input_[position_], position_);
    state_ = dfa_->next_by_column(state_, *c);
    ++position_;
  }
  if (position_ == input_.size()) {
    if (dfa_->is_accepting(state_)) {
      status_ = Status::accept;
    } else if (on_reject_ == OnReject::reject) {
      status_ = Status::reject;
    }
    // Recognizer mode: stay running forever.
  }
}

DovetailResult dovetail_decide(StepMachine& m1, StepMachine& m2, std::uint64_t fuel) {
  if (fuel == 0) throw InvalidArgument("dovetail fuel must be positive");
  std::uint64_t spent = 0;
  while (spent < fuel) {
    StepMachine& m = (spent % 2 == 0) ? m1 : m2;
    m.step();
    ++spent;
    if (&m == &m1 && m1.status() == Status::accept) return {DovetailOutcome::accept, spent};
    if (&m == &m2 && m2.status() == Status::accept) return {DovetailOutcome::reject, spent};
  }
  return {DovetailOutcome::fuel_exhausted, spent};
}

}  // namespace vfk::automata
