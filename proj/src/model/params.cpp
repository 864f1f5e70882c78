#include "dar/model/params.hpp"

#include <cmath>

#include "dar/error.hpp"

namespace dar::model {

void validate(const DarParams& p) {
  if (!std::isfinite(p.phi) || !(p.alpha > 0.0) || !(p.omega > 0.0) || !std::isfinite(p.alpha) ||
      !std::isfinite(p.omega)) {
    throw Error(ErrorKind::Precondition, "DarParams: require finite phi, alpha > 0, omega > 0");
  }
}

}  // namespace dar::model
