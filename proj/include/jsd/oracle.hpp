#pragma once

#include "jsd/types.hpp"
#include "jsd/wide.hpp"

namespace jsd {

// Reference divergence in nats, evaluated entirely in wide arithmetic on the
// reduced form. Bins with |eps_j| below 1e-8 switch to a short wide series
// so the bracket's leading-order cancellation never touches the result.
WideValue jsd_reference(const WeightedPair& pair,
                        unsigned precision_bits = WideValue::kDefaultPrecisionBits);

// |value - reference| / |reference| computed in wide arithmetic.
// Zero reference with zero value gives 0; zero reference otherwise signals
// an undefined relative error.
double relative_difference(double value, const WideValue& reference);

} // namespace jsd
