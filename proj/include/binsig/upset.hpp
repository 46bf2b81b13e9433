#pragma once

#include <optional>
#include <string>
#include <vector>

#include "binsig/rat.hpp"
#include "binsig/signal.hpp"

namespace binsig {

// Half-open interval [lo, hi), lo < hi.
struct Interval {
  Rat lo;
  Rat hi;
  bool operator==(const Interval&) const = default;
};

// Repeating tail of a set: the union over k >= 0 of (pattern + start + k*period),
// pattern being disjoint intervals within [0, period).
struct SetTail {
  Rat start;
  Rat period;
  std::vector<Interval> pattern;
  bool operator==(const SetTail&) const = default;
};

// Ultimately periodic subset of R: an optional initial ray (-inf, r),
// finitely many disjoint half-open transient intervals, and an optional
// repeating tail. Canonical: abutting pieces merged, an empty pattern is
// tail = none, a full pattern is stored as period 1 with pattern [0,1).
class UPSet {
 public:
  static UPSet empty();
  static UPSet all();
  static UPSet ray_less(const Rat& r);            // (-inf, r)
  static UPSet ray_geq(const Rat& c);             // [c, +inf)
  static UPSet interval(const Rat& lo, const Rat& hi);  // empty if lo >= hi
  // Canonicalizing builder; the pieces may overlap (their union is taken).
  static UPSet make(std::optional<Rat> initial_ray,
                    std::vector<Interval> transient,
                    std::optional<SetTail> tail);

  const std::optional<Rat>& initial_ray() const { return initial_ray_; }
  const std::vector<Interval>& transient_intervals() const {
    return transient_;
  }
  const std::optional<SetTail>& tail() const { return tail_; }

  bool member(const Rat& t) const;
  bool is_empty() const {
    return !initial_ray_ && transient_.empty() && !tail_;
  }

  bool operator==(const UPSet&) const = default;  // representational

 private:
  UPSet() = default;
  friend class SetBuilder;

  std::optional<Rat> initial_ray_;
  std::vector<Interval> transient_;
  std::optional<SetTail> tail_;
};

UPSet shift(const UPSet& s, const Rat& delta);
UPSet complement(const UPSet& s);
UPSet set_union(const UPSet& a, const UPSet& b);
UPSet set_intersect(const UPSet& a, const UPSet& b);
bool subset(const UPSet& a, const UPSet& b);
bool set_equals(const UPSet& a, const UPSet& b);  // semantic equality
UPSet clip_geq(const UPSet& s, const Rat& c);     // s ∩ [c, +inf)

struct SupBound {
  enum class Kind { NegInfinity, Finite, PosInfinity };
  Kind kind;
  Rat value{};  // meaningful only when Finite
};

// NegInfinity iff s is empty; PosInfinity iff s has a tail; otherwise the
// (never attained) supremum.
SupBound sup_bound(const UPSet& s);

struct EventualPeriod {
  enum class Kind { Period, DegenerateFull, DegenerateEmpty };
  Kind kind;
  Rat period{};  // meaningful only when Period
};

// Least p > 0 such that s ∩ [M, +inf) is p-periodic for some M, via the
// minimal rotation period of the tail pattern on its integer grid.
// DegenerateFull when the set eventually covers a whole ray, DegenerateEmpty
// when it is bounded above.
EventualPeriod minimal_eventual_period(const UPSet& s);

// Least element of s that is >= c; nullopt when there is none.
std::optional<Rat> first_point_geq(const UPSet& s, const Rat& c);

// The fiber T_mu^x = { t : x(t) = mu }. Throws WidthMismatch; the result is
// empty when mu is not in the orbit.
UPSet fiber(const UPSignal& x, const BinaryVector& mu);

std::string to_string(const UPSet& s);

}  // namespace binsig
