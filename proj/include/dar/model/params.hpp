#pragma once

namespace dar::model {

/// Parameters of y_t = phi y_{t-1} + eta_t sqrt(omega + alpha y_{t-1}^2).
struct DarParams {
  double phi = 0.0;
  double alpha = 1.0;  ///< ARCH coefficient, > 0
  double omega = 1.0;  ///< intercept of the conditional variance, > 0

  friend bool operator==(const DarParams&, const DarParams&) = default;
};

/// Throws dar::Error(Precondition) unless alpha > 0, omega > 0 and phi is finite.
void validate(const DarParams& p);

}  // namespace dar::model
