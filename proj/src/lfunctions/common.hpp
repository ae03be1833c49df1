#pragma once

#include "reglab/numerics.hpp"

namespace reglab::lfunctions::detail {

inline numerics::HPReal at_digits(const numerics::HPReal& x, int digits) {
  numerics::HPReal r = numerics::HPReal::with_bits(numerics::digits_to_bits(digits));
  mpfr_set(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace reglab::lfunctions::detail
