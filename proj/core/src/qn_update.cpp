#include "irqn/qn_update.hpp"

#include <cmath>

namespace irqn {

QnOutcome cautious_bfgs_update(QnState& state, const Vector& s, const Vector& y, double h, double mu,
                               double r_exp) {
  require_dim(s, state.B.rows(), "bfgs step");
  require_dim(y, state.B.rows(), "bfgs difference");
  const double ss = s.squaredNorm();
  if (!(ss > 0.0)) throw Error(ErrorCode::DimensionMismatch, "bfgs step must be nonzero");

  const double ys = y.dot(s);
  if (!(ys / ss >= h * std::pow(mu, r_exp))) {
    ++state.skip_count;
    return QnOutcome::SkippedCondition;
  }

  const Vector bs = state.B * s;
  const double sbs = s.dot(bs);
  if (!(sbs > 1e-14 * ss)) {
    ++state.skip_count;
    return QnOutcome::SkippedDegenerate;
  }

  state.B.noalias() -= (bs * bs.transpose()) / sbs;
  state.B.noalias() += (y * y.transpose()) / ys;
  state.B = 0.5 * (state.B + state.B.transpose()).eval();
  ++state.update_count;
  return QnOutcome::Updated;
}

}  // namespace irqn
