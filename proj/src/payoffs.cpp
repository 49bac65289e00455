#include <covenant/payoffs.hpp>

#include <stdexcept>
#include <string>

namespace covenant {

const char* to_string(State s) { return s == State::good ? "good" : "bad"; }
const char* to_string(Signal s) { return s == Signal::good ? "good" : "bad"; }

PayoffCell payoff_cell(const ModelParams& m, double face_value, State state, Signal signal) {
  if (!(face_value > m.restructure_value && face_value <= m.payout))
    throw std::invalid_argument("face_value " + std::to_string(face_value) +
                                " outside (restructure_value, payout]");

  const double gamma = state == State::good ? m.gamma_g : m.gamma_b;
  const double equity = gamma * (m.payout - face_value);
  const double debt = gamma * face_value;
  const double recovery = (1.0 - gamma) * m.restructure_value;
  const double share = m.tau * (1.0 - m.kappa);
  const double lender_share = (1.0 - m.tau) * (1.0 - m.kappa);

  PayoffCell cell{state, signal, 0.0, 0.0, 0.0};
  if (state == State::good && signal == Signal::good) {
    // manager keeps control and continues, the efficient action
    cell.manager = equity + m.private_benefit;
    cell.lender = debt;
  } else if (state == State::bad && signal == Signal::bad) {
    // lender takes control and restructures, the efficient action
    cell.manager = equity;
    cell.lender = debt + recovery;
  } else if (state == State::bad && signal == Signal::good) {
    // rule stayed silent in the bad state; parties bargain from continuation
    // back to restructuring and split what survives of the gain
    const double gain = restructuring_gain_bad(m);
    cell.manager = equity + m.private_benefit + share * gain;
    cell.lender = debt + lender_share * gain;
  } else {
    // false alarm in the good state; parties bargain from restructuring back
    // to continuation
    const double gain = continuation_gain_good(m);
    cell.manager = equity + share * gain;
    cell.lender = debt + recovery + lender_share * gain;
  }
  cell.social = cell.manager + cell.lender;
  return cell;
}

std::array<PayoffCell, 3> payoff_table(const ModelParams& m, double face_value,
                                       ErrorRegime regime) {
  if (regime == ErrorRegime::false_alarm)
    return {payoff_cell(m, face_value, State::good, Signal::good),
            payoff_cell(m, face_value, State::good, Signal::bad),
            payoff_cell(m, face_value, State::bad, Signal::bad)};
  return {payoff_cell(m, face_value, State::good, Signal::good),
          payoff_cell(m, face_value, State::bad, Signal::good),
          payoff_cell(m, face_value, State::bad, Signal::bad)};
}

}  // namespace covenant
