#pragma once

#include <optional>

#include "tunnelkit/bigreal.hpp"
#include "tunnelkit/potentials.hpp"

namespace tunnelkit {

inline constexpr int kDefaultDigits = 30;
inline constexpr int kGuardDigits = 15;

// ceil(-log10 dE) + guard digits, never below 20.
int policy_digits(double log10_expected_splitting);

// Rough log10 of the tunnelling splitting for the family (double
// arithmetic, no solver). Families without tunnelling give 0.
double expected_log10_splitting(const PotentialSpec& spec);

// TUNNELKIT_DIGITS, when set to an integer >= 20. Throws on garbage.
std::optional<int> env_digits();

// Explicit request > TUNNELKIT_DIGITS > policy for the spec.
int resolve_digits(std::optional<int> requested, const PotentialSpec& spec);

}  // namespace tunnelkit
