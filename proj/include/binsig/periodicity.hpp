#pragma once

#include <optional>
#include <string>

#include "binsig/rat.hpp"
#include "binsig/signal.hpp"
#include "binsig/upset.hpp"

namespace binsig {

// The two defining conditions of a periodic point, for given T > 0 and t':
//   (a) (-inf, t'] lies inside the fiber of the initial value, and
//   (b) the fiber of mu above t' is closed under the whole T-shift grid.
// Condition (b) is decided by the shift-closure reformulation: one forward
// subset test and one guarded backward subset test, which imply all integer
// multiples by induction because intermediate points stay above t'.
// Throws NotInOrbit when mu is not attained, NonPositivePeriod, WidthMismatch.
bool check_periodic_point(const UPSignal& x, const BinaryVector& mu,
                          const Rat& period, const Rat& tprime);

struct TPrimeWindow {
  enum class Kind { None, All, Interval };
  Kind kind;
  Rat lo{};  // meaningful when Interval; the window is [lo, hi)
  Rat hi{};
};

// The exact set of t' accepted by check_periodic_point for this T.
// All for constant signals; otherwise a half-open interval or None.
TPrimeWindow valid_tprime_interval(const UPSignal& x, const BinaryVector& mu,
                                   const Rat& period);

struct PeriodicityVerdict {
  enum class Kind { NotInOrbit, NotPeriodic, NoPrime, Prime };
  Kind kind = Kind::NotPeriodic;
  Rat period{};      // Prime only
  Rat tprime_lo{};   // Prime only: admissible t' window [lo, hi)
  Rat tprime_hi{};
  std::string note;  // NoPrime: why no least period exists
};

// Decides periodicity of mu and computes the least period when it exists.
// Candidate periods are the multiples of the fiber's minimal eventual
// period, scanned up to the stabilization bound.
PeriodicityVerdict prime_period(const UPSignal& x, const BinaryVector& mu);

struct CanonicalFiber {
  Rat t0;
  Rat t1;
  Rat period;
};

// Matches the fiber against the exact canonical form
//   (-inf, t0) u [t1, t0+T) u [t1+T, t0+2T) u ...
// with t0 < t1 < t0 + T. When it matches, T is the prime period and the
// admissible t' window is exactly [t1 - T, t0).
std::optional<CanonicalFiber> detect_canonical_fiber(const UPSignal& x,
                                                     const BinaryVector& mu);

// t0 = first switch; t1 = start of the maximal constant run ending at
// t0 + T (the last switch strictly before t0 + T). Throws ConstantSignal.
std::pair<Rat, Rat> derive_t0_t1(const UPSignal& x, const Rat& period);

struct Theorem76Report {
  Rat t0;
  Rat t1;
  bool bound_ok;      // t1 - T <= t' < t0 < t1
  bool inclusion_ok;  // the canonical union is contained in the init fiber
};

Theorem76Report check_theorem76(const UPSignal& x, const Rat& period,
                                const Rat& tprime);

// Closure of a fiber segment under forward period shifts: with an accepted
// (T, t') and [a, b) inside fiber ∩ [t', inf), every [a+kT, b+kT) must stay
// inside the fiber. A false result indicates an implementation bug; the
// operation exists to be property-tested. Throws PreconditionViolated.
bool lemma8_closure(const UPSignal& x, const BinaryVector& mu,
                    const Rat& period, const Rat& tprime, const Rat& a,
                    const Rat& b);

// The union (-inf, t0) u [t1 + kT, t0 + (k+1)T) for k >= 0, as a set.
UPSet canonical_union(const Rat& t0, const Rat& t1, const Rat& period);

}  // namespace binsig
