#include "binsig/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "binsig/errors.hpp"
#include "binsig/upset.hpp"

namespace binsig {

namespace {

constexpr long long kMaxGridPoints = 20'000'000;

long long signal_grid_den(const UPSignal& x) {
  long long d = 1;
  for (const auto& s : x.transient()) d = std::lcm(d, s.time.den());
  if (x.cycle()) {
    d = std::lcm(d, x.cycle()->start.den());
    d = std::lcm(d, x.cycle()->period.den());
    for (const auto& e : x.cycle()->pattern) d = std::lcm(d, e.offset.den());
  }
  return d;
}

// Membership of {t : x(t) = mu} sampled on the grid of step 1/d over
// [lo, lo + n/d); exact because every breakpoint is grid-aligned.
std::vector<char> membership_grid(const UPSignal& x, const BinaryVector& mu,
                                  const Rat& lo, long long n, long long d) {
  if (n < 0 || n > kMaxGridPoints) {
    throw std::overflow_error("oracle: grid too large");
  }
  std::vector<char> memb(static_cast<std::size_t>(n));
  Rat g(1, d);
  Rat t = lo;
  for (long long i = 0; i < n; ++i, t += g) {
    memb[static_cast<std::size_t>(i)] = eval(x, t) == mu;
  }
  return memb;
}

Rat stabilization_point(const UPSignal& x) {
  if (x.cycle()) return x.cycle()->start;
  if (!x.transient().empty()) return x.transient().back().time;
  return Rat(0);
}

Rat earliest_time(const UPSignal& x) {
  if (!x.transient().empty()) return x.transient().front().time;
  if (x.cycle()) return x.cycle()->start;
  return Rat(0);
}

}  // namespace

bool oracle_check(const UPSignal& x, const BinaryVector& mu, const Rat& period,
                  const Rat& tprime, const OracleConfig& cfg) {
  if (!period.is_positive()) {
    throw NonPositivePeriod("oracle_check: period must be positive");
  }
  long long d = signal_grid_den(x);
  d = std::lcm(d, period.den());
  d = std::lcm(d, tprime.den());
  const Rat g(1, d);

  const Rat s0 = stabilization_point(x);
  const Rat p_sig = x.cycle() ? x.cycle()->period : period;
  const Rat hyper = rat_lcm(p_sig, period);
  const int hp = std::max(1, cfg.horizon_periods);
  const Rat horizon = s0 + Rat(hp) * hyper;
  const Rat lo = min(tprime, earliest_time(x)) - Rat(1);

  // Condition (a): x carries its initial value on all of (-inf, t'].
  // Beyond the horizon the signal holds no new values, so the scan can stop
  // there: any violation at or before t' shows up by the first switch.
  const Rat upper = min(tprime, horizon);
  for (Rat s = lo; !(upper < s); s += g) {
    if (!(eval(x, s) == x.init())) return false;
  }

  if (!(tprime < horizon)) return true;  // the shift window is empty

  const long long n = ((horizon - lo) * Rat(d)).num();
  std::vector<char> memb = membership_grid(x, mu, lo, n, d);
  const long long tg = ((tprime - lo) * Rat(d)).num();
  const long long step = (period * Rat(d)).num();
  long long zmax = cfg.z_bound > 0 ? cfg.z_bound : (n / step + 2);

  // Condition (b): every grid segment of the fiber at or above t' must have
  // all its in-window shift multiples inside the fiber. Violations outside
  // the window slide into it by hyperperiod translation, so this finite
  // check is exact.
  for (long long u = tg; u < n; ++u) {
    if (!memb[static_cast<std::size_t>(u)]) continue;
    for (long long z = 1; z <= zmax; ++z) {
      long long s = u + z * step;
      if (s >= n) break;
      if (!memb[static_cast<std::size_t>(s)]) return false;
    }
    for (long long z = 1; z <= zmax; ++z) {
      long long s = u - z * step;
      if (s < tg) break;
      if (!memb[static_cast<std::size_t>(s)]) return false;
    }
  }
  return true;
}

std::optional<Rat> oracle_prime_period(const UPSignal& x,
                                       const BinaryVector& mu,
                                       const OracleConfig& cfg) {
  UPSet f = fiber(x, mu);
  EventualPeriod ep = minimal_eventual_period(f);
  if (ep.kind != EventualPeriod::Kind::Period) {
    // Degenerate fibers: either no period is accepted or every period is,
    // and in neither case does a least one exist.
    return std::nullopt;
  }
  const Rat p = ep.period;
  const Rat t0 = *first_switch(x);
  const Rat tail_start = f.tail()->start;
  const long long k_max = ((tail_start - t0) / p).ceil() + 2;

  long long d = signal_grid_den(x);
  d = std::lcm(d, p.den());
  const Rat lo = t0 - Rat(k_max) * p - Rat(1);

  for (long long k = 1; k <= k_max; ++k) {
    const Rat period = Rat(k) * p;
    const Rat s0 = stabilization_point(x);
    const Rat p_sig = x.cycle() ? x.cycle()->period : period;
    const Rat hyper = rat_lcm(p_sig, period);
    const int hp = std::max(1, cfg.horizon_periods);
    const Rat horizon = s0 + Rat(hp) * hyper;

    const long long n = ((horizon - lo) * Rat(d)).num();
    std::vector<char> memb = membership_grid(x, mu, lo, n, d);
    const long long step = (period * Rat(d)).num();

    // Largest min(u, s) over violating pairs (u in fiber, s = u + z*step
    // outside it). A choice of t' is accepted iff it lies strictly above
    // every such min; pairs beyond the horizon reduce into it.
    long long worst = -1;
    bool any = false;
    for (long long u = 0; u < n; ++u) {
      if (!memb[static_cast<std::size_t>(u)]) continue;
      for (long long s = u + step; s < n; s += step) {
        if (!memb[static_cast<std::size_t>(s)]) {
          if (!any || worst < u) worst = u;
          any = true;
          break;  // larger z only repeats min(u, s) = u
        }
      }
      for (long long s = u - step; s >= 0; s -= step) {
        if (!memb[static_cast<std::size_t>(s)]) {
          if (!any || worst < s) worst = s;
          any = true;
          break;  // lower s only shrinks min(u, s) = s
        }
      }
    }

    // Candidate t' run from just below the first switch down to the scan
    // depth; t' is accepted iff it lies strictly above every pair minimum,
    // so the topmost candidate decides.
    const long long t0g = ((t0 - lo) * Rat(d)).num();
    const long long tp = t0g - 1;
    if (tp >= 0 && (!any || worst < tp)) return period;
  }
  return std::nullopt;
}

long long oracle_min_word_period(const std::vector<int>& word) {
  if (word.empty()) {
    throw EmptyWord("oracle_min_word_period: empty word");
  }
  const long long n = static_cast<long long>(word.size());
  for (long long q = 1; q <= n; ++q) {
    bool ok = true;
    for (long long i = 0; i < n && ok; ++i) {
      ok = word[static_cast<std::size_t>(i)] ==
           word[static_cast<std::size_t>((i + q) % n)];
    }
    if (ok) return q;
  }
  return n;  // q = n always matches
}

}  // namespace binsig
