#include "binsig/periodicity.hpp"

#include <stdexcept>

#include "binsig/errors.hpp"

namespace binsig {

namespace {

void require_valid(const UPSignal& x, const BinaryVector& mu,
                   const Rat& period) {
  if (!period.is_positive()) {
    throw NonPositivePeriod("period must be positive");
  }
  if (mu.width() != x.width()) {
    throw WidthMismatch("mu width != signal width");
  }
  if (!orbit_contains(x, mu)) {
    throw NotInOrbit("mu is not a value of the signal");
  }
}

// (-inf, t'] inside the fiber of the initial value: everything strictly
// before the first switch carries the initial value, nothing at or past it
// does.
bool initial_ray_condition(const UPSignal& x, const Rat& tprime) {
  auto t0 = first_switch(x);
  return !t0 || tprime < *t0;
}

}  // namespace

UPSet canonical_union(const Rat& t0, const Rat& t1, const Rat& period) {
  Rat width = t0 + period - t1;
  if (!width.is_positive()) {
    return UPSet::ray_less(t0);
  }
  if (period < width) width = period;
  return UPSet::make(t0, {},
                     SetTail{t1, period, {{Rat(0), width}}});
}

bool check_periodic_point(const UPSignal& x, const BinaryVector& mu,
                          const Rat& period, const Rat& tprime) {
  require_valid(x, mu, period);
  if (!initial_ray_condition(x, tprime)) return false;
  UPSet f = fiber(x, mu);
  UPSet above = clip_geq(f, tprime);
  if (!subset(shift(above, period), f)) return false;
  UPSet above_next = clip_geq(f, tprime + period);
  return subset(shift(above_next, -period), f);
}

TPrimeWindow valid_tprime_interval(const UPSignal& x, const BinaryVector& mu,
                                   const Rat& period) {
  require_valid(x, mu, period);
  if (is_constant(x)) {
    return {TPrimeWindow::Kind::All};
  }
  UPSet f = fiber(x, mu);
  // Points whose +T image escapes the fiber, and points whose -T preimage
  // is missing. Acceptance of t' means both lie strictly below the relevant
  // cut, so the window floor is the larger of the two suprema.
  UPSet escape_fwd = set_intersect(f, complement(shift(f, -period)));
  UPSet escape_bwd = set_intersect(f, complement(shift(f, period)));
  SupBound sa = sup_bound(escape_fwd);
  SupBound sb = sup_bound(escape_bwd);
  if (sa.kind == SupBound::Kind::PosInfinity ||
      sb.kind == SupBound::Kind::PosInfinity) {
    return {TPrimeWindow::Kind::None};
  }
  std::optional<Rat> lo;
  if (sa.kind == SupBound::Kind::Finite) lo = sa.value;
  if (sb.kind == SupBound::Kind::Finite) {
    Rat v = sb.value - period;
    if (!lo || *lo < v) lo = v;
  }
  if (!lo) {
    // A fully T-periodic fiber forces the signal to be constant, which was
    // handled above.
    throw std::logic_error("valid_tprime_interval: periodic fiber");
  }
  Rat hi = *first_switch(x);
  if (!(*lo < hi)) return {TPrimeWindow::Kind::None};
  return {TPrimeWindow::Kind::Interval, *lo, hi};
}

PeriodicityVerdict prime_period(const UPSignal& x, const BinaryVector& mu) {
  if (mu.width() != x.width()) {
    throw WidthMismatch("mu width != signal width");
  }
  if (!orbit_contains(x, mu)) {
    PeriodicityVerdict v;
    v.kind = PeriodicityVerdict::Kind::NotInOrbit;
    return v;
  }
  UPSet f = fiber(x, mu);
  EventualPeriod ep = minimal_eventual_period(f);
  if (ep.kind == EventualPeriod::Kind::DegenerateFull) {
    if (is_constant(x)) {
      PeriodicityVerdict v;
      v.kind = PeriodicityVerdict::Kind::NoPrime;
      v.note = "fiber is all of R: every T > 0 is a period, none is least";
      return v;
    }
    // The fiber eventually covers a ray but misses something: above any
    // admissible t' the complement would have to be closed under +T and
    // hence unbounded, so no period exists at all.
    return {};
  }
  if (ep.kind == EventualPeriod::Kind::DegenerateEmpty) {
    // Bounded-above fiber: a +T image always escapes.
    return {};
  }

  const Rat p = ep.period;
  const Rat tail_start = f.tail()->start;
  const Rat earliest = *first_switch(x);
  long long k_max = ((tail_start - earliest) / p).ceil() + 2;
  for (long long k = 1; k <= k_max; ++k) {
    Rat period = Rat(k) * p;
    TPrimeWindow w = valid_tprime_interval(x, mu, period);
    if (w.kind == TPrimeWindow::Kind::Interval) {
      PeriodicityVerdict v;
      v.kind = PeriodicityVerdict::Kind::Prime;
      v.period = period;
      v.tprime_lo = w.lo;
      v.tprime_hi = w.hi;
      return v;
    }
  }
  return {};
}

std::optional<CanonicalFiber> detect_canonical_fiber(const UPSignal& x,
                                                     const BinaryVector& mu) {
  if (mu.width() != x.width() || !orbit_contains(x, mu)) return std::nullopt;
  UPSet f = fiber(x, mu);
  if (!f.initial_ray()) return std::nullopt;
  EventualPeriod ep = minimal_eventual_period(f);
  if (ep.kind != EventualPeriod::Kind::Period) return std::nullopt;
  Rat t0 = *f.initial_ray();
  auto t1 = first_point_geq(f, t0);
  if (!t1) return std::nullopt;
  if (!(t0 < *t1) || !(*t1 < t0 + ep.period)) return std::nullopt;
  if (!set_equals(f, canonical_union(t0, *t1, ep.period))) return std::nullopt;
  return CanonicalFiber{t0, *t1, ep.period};
}

std::pair<Rat, Rat> derive_t0_t1(const UPSignal& x, const Rat& period) {
  if (!period.is_positive()) {
    throw NonPositivePeriod("period must be positive");
  }
  if (is_constant(x)) {
    throw ConstantSignal("derive_t0_t1: signal is constant");
  }
  Rat t0 = *first_switch(x);
  Rat t1 = *last_switch_before(x, t0 + period);
  return {t0, t1};
}

Theorem76Report check_theorem76(const UPSignal& x, const Rat& period,
                                const Rat& tprime) {
  auto [t0, t1] = derive_t0_t1(x, period);
  Theorem76Report r;
  r.t0 = t0;
  r.t1 = t1;
  r.bound_ok = (t1 - period <= tprime) && (tprime < t0) && (t0 < t1);
  r.inclusion_ok =
      subset(canonical_union(t0, t1, period), fiber(x, initial_value(x)));
  return r;
}

bool lemma8_closure(const UPSignal& x, const BinaryVector& mu,
                    const Rat& period, const Rat& tprime, const Rat& a,
                    const Rat& b) {
  if (!(a < b)) {
    throw PreconditionViolated("lemma8_closure: need a < b");
  }
  if (!check_periodic_point(x, mu, period, tprime)) {
    throw PreconditionViolated("lemma8_closure: (T, t') is not accepted");
  }
  UPSet f = fiber(x, mu);
  if (!subset(UPSet::interval(a, b), clip_geq(f, tprime))) {
    throw PreconditionViolated(
        "lemma8_closure: [a, b) must lie in the fiber at or above t'");
  }
  // Enough iterations to push [a, b) past one full tail period; tail
  // periodicity covers every larger k.
  Rat bound = f.tail() ? f.tail()->start + f.tail()->period : b;
  long long K = std::max(1LL, ((bound - a) / period).ceil() + 1);
  for (long long k = 1; k <= K; ++k) {
    Rat d = Rat(k) * period;
    if (!subset(UPSet::interval(a + d, b + d), f)) return false;
  }
  return true;
}

}  // namespace binsig
