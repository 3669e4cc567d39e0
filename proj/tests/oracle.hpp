#pragma once

// Test-only oracles, independent of the Bareiss elimination path:
// the raw t-resultant is reconstructed by evaluation-interpolation over
// integer meridian samples, solving the primary equation numerically in t
// to high precision and assembling lc^deg * prod(l*den - num(t_j)).

#include "kap/intpoly2.hpp"
#include "kap/repsys.hpp"

namespace kap::testing {

// Raw eliminant via evaluation-interpolation, exact integer output.
// Throws on failed integer recognition.
IntPoly2 oracle_raw_eliminant(const RepSystem& s);

// Full A-polynomial through the shared pruning chain.
APolyResult oracle_apoly(const RepSystem& s);

} // namespace kap::testing
