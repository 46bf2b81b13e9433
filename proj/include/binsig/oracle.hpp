#pragma once

#include <optional>
#include <vector>

#include "binsig/binary_vector.hpp"
#include "binsig/rat.hpp"
#include "binsig/signal.hpp"

namespace binsig {

// Sizing knobs for the brute-force enumeration. The horizon always covers
// the signal's transient plus at least one aligned hyperperiod, which makes
// the finite sample exact; extra periods only re-confirm verdicts.
struct OracleConfig {
  int horizon_periods = 3;
  long long z_bound = 0;  // 0: derive from the horizon
};

// Evaluates the periodic-point conditions directly from their definition:
// sample every grid segment of the refinement grid, enumerate integer shift
// multiples, and test pointwise. Shares no code with the set-algebra route.
// Throws NonPositivePeriod.
bool oracle_check(const UPSignal& x, const BinaryVector& mu, const Rat& period,
                  const Rat& tprime, const OracleConfig& cfg = {});

// Least accepted period, scanning multiples of the fiber's minimal eventual
// period and all grid choices of t'; nullopt when none is accepted or the
// fiber is degenerate.
std::optional<Rat> oracle_prime_period(const UPSignal& x,
                                       const BinaryVector& mu,
                                       const OracleConfig& cfg = {});

// Least q such that rotating the cyclic word by q reproduces it, checking
// every candidate 1 <= q <= |word|. Throws EmptyWord.
long long oracle_min_word_period(const std::vector<int>& word);

}  // namespace binsig
