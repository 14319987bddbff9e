#pragma once

/// Umbrella header: exact arithmetic, sequence evaluation, the sequence
/// registry, binomial-sum and constant-term representations, congruence
/// checkers, and JSON report serialization.

#include "binomial_sums.hpp"
#include "congruences.hpp"
#include "exact.hpp"
#include "laurent.hpp"
#include "registry.hpp"
#include "report_json.hpp"
#include "sequences.hpp"
