#pragma once

#include <optional>
#include <vector>

#include "binsig/binary_vector.hpp"
#include "binsig/rat.hpp"

namespace binsig {

// One switch point: the signal holds `value` from `time` onward
// (right-continuous, intervals are [t_k, t_{k+1})).
struct SignalSwitch {
  Rat time;
  BinaryVector value;
  bool operator==(const SignalSwitch&) const = default;
};

struct CycleEntry {
  Rat offset;  // in [0, period); pattern[0].offset == 0
  BinaryVector value;
  bool operator==(const CycleEntry&) const = default;
};

// Repeating tail: for t >= start, the value is the entry active at offset
// (t - start) mod period.
struct SignalCycle {
  Rat start;
  Rat period;
  std::vector<CycleEntry> pattern;
  bool operator==(const SignalCycle&) const = default;
};

// Ultimately periodic step function R -> B^n: an initial value held on a
// left ray, finitely many transient switches, and an optional repeating
// cycle. Construction goes through make_signal, which canonicalizes, so a
// stored switch is always a real value change and a constant tail is
// always cycle = nullopt.
class UPSignal {
 public:
  int width() const { return init_.width(); }
  const BinaryVector& init() const { return init_; }
  const std::vector<SignalSwitch>& transient() const { return transient_; }
  const std::optional<SignalCycle>& cycle() const { return cycle_; }

  bool operator==(const UPSignal&) const = default;

  friend UPSignal make_signal(BinaryVector init,
                              std::vector<SignalSwitch> transient,
                              std::optional<SignalCycle> cycle);

 private:
  UPSignal(BinaryVector init, std::vector<SignalSwitch> transient,
           std::optional<SignalCycle> cycle)
      : init_(init), transient_(std::move(transient)), cycle_(std::move(cycle)) {}

  BinaryVector init_;
  std::vector<SignalSwitch> transient_;
  std::optional<SignalCycle> cycle_;
};

// Validates and canonicalizes. Throws WidthMismatch, NonIncreasingTimes,
// BadPattern or NonPositivePeriod.
UPSignal make_signal(BinaryVector init, std::vector<SignalSwitch> transient,
                     std::optional<SignalCycle> cycle);

UPSignal constant_signal(BinaryVector value);

// Pointwise value; right-continuous at every switch.
BinaryVector eval(const UPSignal& x, const Rat& t);

// The value held on (t - eps, t) for small eps > 0.
BinaryVector left_limit(const UPSignal& x, const Rat& t);

const BinaryVector& initial_value(const UPSignal& x);

// The finite set of values the signal attains, sorted.
std::vector<BinaryVector> orbit(const UPSignal& x);

bool orbit_contains(const UPSignal& x, const BinaryVector& mu);

// Pointwise componentwise xor; operands must have equal width.
UPSignal xor_signals(const UPSignal& x, const UPSignal& y);

bool is_constant(const UPSignal& x);

// Least t with eval(x, t) != init; nullopt for constant signals.
std::optional<Rat> first_switch(const UPSignal& x);

// Greatest switch time strictly below `bound`; nullopt if none.
std::optional<Rat> last_switch_before(const UPSignal& x, const Rat& bound);

// All switch times in [from, to), ascending (cycle unrolled).
std::vector<Rat> switch_times_in(const UPSignal& x, const Rat& from,
                                 const Rat& to);

}  // namespace binsig
