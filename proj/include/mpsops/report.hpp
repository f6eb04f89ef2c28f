#pragma once

#include "mpsops/assumptions.hpp"
#include "mpsops/bounds.hpp"
#include "mpsops/config_io.hpp"
#include "mpsops/lemmas.hpp"
#include "mpsops/operators.hpp"

#include <string>

namespace mpsops {

json to_json(const ClauseResult& c);
json to_json(const ValidationReport& rep);
json to_json(const OperatorResult& r);
json to_json(const BoundInputs& in);
json to_json(const ConstantSet& c);
json to_json(const BoundReport& rep);
json to_json(const CorollaryBounds& b);
json to_json(const GapReport& g);

/// Shortest representation that reads back to the same double ("%.17g").
std::string format_double(double v);

} // namespace mpsops
