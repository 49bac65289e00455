#pragma once

#include <array>

#include <covenant/model.hpp>

namespace covenant {

enum class State { good, bad };
enum class Signal { good, bad };

// Which side of the symmetric error is active: positive degrees trip the
// covenant in the good state (false alarm), negative degrees keep it silent
// in the bad state (undue optimism).
enum class ErrorRegime { false_alarm, undue_optimism };

const char* to_string(State s);
const char* to_string(Signal s);

struct PayoffCell {
  State state;
  Signal signal;
  double manager;
  double lender;
  double social;  // manager + lender, exact by construction
};

// Terminal payoffs for one (state, signal) pair at the given face value.
// Mismatched pairs are the renegotiated ones: control is misallocated, the
// parties bargain back to the efficient action, tau splits the surplus and
// kappa of it burns. face_value must lie in (restructure_value, payout].
PayoffCell payoff_cell(const ModelParams& m, double face_value, State state, Signal signal);

// The three reachable rows for a one-sided error of the given regime.
std::array<PayoffCell, 3> payoff_table(const ModelParams& m, double face_value,
                                       ErrorRegime regime);

}  // namespace covenant
