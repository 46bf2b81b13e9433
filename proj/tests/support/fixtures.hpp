#pragma once

// Shared fixtures, reference evaluators and random generators for the unit
// and acceptance suites.

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "binsig/periodicity.hpp"
#include "binsig/signal.hpp"
#include "binsig/upset.hpp"

namespace binsig {
namespace testutil {

using Rng = std::mt19937_64;

inline long long rand_int(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline Rat rand_rat(Rng& rng, long long lo, long long hi, long long max_den) {
  long long d = rand_int(rng, 1, max_den);
  return Rat(rand_int(rng, lo * d, hi * d), d);
}

// The running example: 1 before 0, then 0,1,0 over [0,3), then the 5-periodic
// tail 1,1,0,1,0 from t = 3 on.
inline UPSignal xstar() {
  const BinaryVector one(1, 1);
  const BinaryVector zero(1, 0);
  return make_signal(one,
                     {{Rat(0), zero}, {Rat(1), one}, {Rat(2), zero}},
                     SignalCycle{Rat(3),
                                 Rat(5),
                                 {{Rat(0), one},
                                  {Rat(2), zero},
                                  {Rat(3), one},
                                  {Rat(4), zero}}});
}

// Fiber of 1 keeps the stray piece [1, 3/2) that never re-enters the tail
// under any shift, so 1 is not a periodic point.
inline UPSignal stray_segment_signal() {
  const BinaryVector one(1, 1);
  const BinaryVector zero(1, 0);
  return make_signal(
      one, {{Rat(0), zero}, {Rat(1), one}, {Rat(3, 2), zero}},
      SignalCycle{Rat(3), Rat(5), {{Rat(0), one}, {Rat(2), zero}}});
}

// Non-canonicalizing reference description, evaluated straight from the
// step-function definition. Kept independent of make_signal on purpose.
struct RawCycle {
  Rat start;
  Rat period;
  std::vector<std::pair<Rat, BinaryVector>> pattern;
};

struct RawDesc {
  BinaryVector init;
  std::vector<std::pair<Rat, BinaryVector>> switches;
  std::optional<RawCycle> cycle;
};

inline BinaryVector raw_eval(const RawDesc& d, const Rat& t) {
  if (d.cycle && !(t < d.cycle->start)) {
    Rat off = mod_pos(t - d.cycle->start, d.cycle->period);
    BinaryVector v = d.cycle->pattern.front().second;
    for (const auto& [o, val] : d.cycle->pattern) {
      if (!(off < o)) v = val;
    }
    return v;
  }
  BinaryVector v = d.init;
  for (const auto& [tt, val] : d.switches) {
    if (tt <= t) v = val;
  }
  return v;
}

struct GenOptions {
  int max_width = 2;
  int max_transient = 6;
  int max_pattern = 5;
  long long max_den = 4;
  bool force_cycle = false;
};

// Random description within the acceptance envelope, before canonicalization.
inline RawDesc rand_raw_desc(Rng& rng, const GenOptions& opt = {}) {
  int w = static_cast<int>(rand_int(rng, 1, opt.max_width));
  long long den = rand_int(rng, 1, opt.max_den);
  auto rand_value = [&] {
    return BinaryVector(w, static_cast<std::uint64_t>(
                               rand_int(rng, 0, (1LL << w) - 1)));
  };
  RawDesc d{rand_value(), {}, std::nullopt};
  int ntrans = static_cast<int>(rand_int(rng, 0, opt.max_transient));
  Rat t(rand_int(rng, -3 * den, 2 * den), den);
  for (int i = 0; i < ntrans; ++i) {
    d.switches.push_back({t, rand_value()});
    t += Rat(rand_int(rng, 1, 2 * den), den);
  }
  bool with_cycle = opt.force_cycle || rand_int(rng, 0, 9) < 7;
  if (with_cycle) {
    RawCycle c;
    c.start = t;
    long long npat = rand_int(rng, 1, opt.max_pattern);
    long long plen = rand_int(rng, std::max(npat, 2LL), 5 * den);
    c.period = Rat(plen, den);
    std::set<long long> offsets = {0};
    while (static_cast<long long>(offsets.size()) < npat) {
      offsets.insert(rand_int(rng, 0, plen - 1));
    }
    for (long long u : offsets) c.pattern.push_back({Rat(u, den), rand_value()});
    d.cycle = std::move(c);
  }
  return d;
}

inline UPSignal to_signal(const RawDesc& d) {
  std::vector<SignalSwitch> sw;
  for (const auto& [t, v] : d.switches) sw.push_back({t, v});
  std::optional<SignalCycle> cyc;
  if (d.cycle) {
    SignalCycle c;
    c.start = d.cycle->start;
    c.period = d.cycle->period;
    for (const auto& [o, v] : d.cycle->pattern) c.pattern.push_back({o, v});
    cyc = std::move(c);
  }
  return make_signal(d.init, std::move(sw), std::move(cyc));
}

inline UPSignal rand_signal(Rng& rng, const GenOptions& opt = {}) {
  return to_signal(rand_raw_desc(rng, opt));
}

// A signal whose fiber of mu is exactly the canonical union
// (-inf, t0) u [t1 + kT, t0 + (k+1)T).
struct CanonicalFixture {
  UPSignal x;
  BinaryVector mu;
  Rat t0;
  Rat t1;
  Rat period;
};

inline CanonicalFixture rand_canonical(Rng& rng, long long max_den = 4,
                                       long long max_period = 20) {
  long long d = rand_int(rng, 1, max_den);
  int w = static_cast<int>(rand_int(rng, 1, 2));
  auto rand_value = [&] {
    return BinaryVector(w, static_cast<std::uint64_t>(
                               rand_int(rng, 0, (1LL << w) - 1)));
  };
  BinaryVector mu = rand_value();
  BinaryVector hole1 = mu;
  while (hole1 == mu) hole1 = rand_value();
  BinaryVector hole2 = mu;
  while (hole2 == mu) hole2 = rand_value();
  Rat t0(rand_int(rng, -6 * d, 6 * d), d);
  long long period_units = rand_int(rng, 2, max_period * d);
  Rat period(period_units, d);
  Rat t1 = t0 + Rat(rand_int(rng, 1, period_units - 1), d);
  UPSignal x = make_signal(
      mu, {{t0, hole1}},
      SignalCycle{t1, period, {{Rat(0), mu}, {t0 + period - t1, hole2}}});
  return {x, mu, t0, t1, period};
}

// A non-constant signal whose initial value is periodic with period T and
// admissible t' window [t1 - T, t0): the canonical fixture plus 0..2 extra
// mu-segments inside (t0, t1) repeated T-periodically.
struct AcceptedFixture {
  UPSignal x;
  Rat t0;
  Rat t1;
  Rat period;
};

inline AcceptedFixture rand_accepted(Rng& rng, long long max_den = 4,
                                     long long max_period = 12) {
  long long d = rand_int(rng, 1, max_den);
  int w = static_cast<int>(rand_int(rng, 1, 2));
  auto rand_value = [&] {
    return BinaryVector(w, static_cast<std::uint64_t>(
                               rand_int(rng, 0, (1LL << w) - 1)));
  };
  BinaryVector mu = rand_value();
  BinaryVector hole = mu;
  while (hole == mu) hole = rand_value();

  Rat t0(rand_int(rng, -4 * d, 4 * d), d);
  long long period_units = rand_int(rng, 2, max_period * d);
  Rat period(period_units, d);
  long long gap_units = rand_int(rng, 1, period_units - 1);
  Rat t1 = t0 + Rat(gap_units, d);

  // extra mu-segments strictly inside (t0, t1), pairwise separated
  std::vector<std::pair<long long, long long>> extras;
  if (gap_units >= 4) {
    int n = static_cast<int>(rand_int(rng, 0, 2));
    long long cursor = 1;
    for (int i = 0; i < n && cursor + 1 < gap_units; ++i) {
      long long a = rand_int(rng, cursor, gap_units - 2);
      long long b = rand_int(rng, a + 1, gap_units - 1);
      extras.push_back({a, b});
      cursor = b + 1;
    }
  }

  std::vector<SignalSwitch> sw;
  sw.push_back({t0, hole});
  for (const auto& [a, b] : extras) {
    sw.push_back({t0 + Rat(a, d), mu});
    sw.push_back({t0 + Rat(b, d), hole});
  }
  SignalCycle cyc;
  cyc.start = t1;
  cyc.period = period;
  cyc.pattern.push_back({Rat(0), mu});
  cyc.pattern.push_back({t0 + period - t1, hole});
  for (const auto& [a, b] : extras) {
    cyc.pattern.push_back({t0 + Rat(a, d) + period - t1, mu});
    cyc.pattern.push_back({t0 + Rat(b, d) + period - t1, hole});
  }
  UPSignal x = make_signal(mu, std::move(sw), std::move(cyc));
  return {x, t0, t1, period};
}

// Common denominator of every breakpoint of x.
inline long long grid_den(const UPSignal& x) {
  long long d = 1;
  for (const auto& s : x.transient()) d = std::lcm(d, s.time.den());
  if (x.cycle()) {
    d = std::lcm(d, x.cycle()->start.den());
    d = std::lcm(d, x.cycle()->period.den());
    for (const auto& e : x.cycle()->pattern) d = std::lcm(d, e.offset.den());
  }
  return d;
}

// All grid times worth sampling for a signal: its breakpoints over the
// transient plus two cycle periods, one step beyond each, and one point of
// every intermediate segment (the grid step guarantees that).
inline std::vector<Rat> sample_grid(const UPSignal& x, long long extra_den = 1) {
  long long d = std::lcm(grid_den(x), extra_den);
  Rat lo(-8), hi(8);
  if (!x.transient().empty()) {
    lo = min(lo, x.transient().front().time - Rat(1));
  }
  if (x.cycle()) {
    hi = max(hi, x.cycle()->start + Rat(2) * x.cycle()->period + Rat(1));
  } else if (!x.transient().empty()) {
    hi = max(hi, x.transient().back().time + Rat(2));
  }
  std::vector<Rat> out;
  Rat g(1, d);
  for (Rat t = lo; t < hi; t += g) out.push_back(t);
  return out;
}

}  // namespace testutil
}  // namespace binsig
