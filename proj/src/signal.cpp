#include "binsig/signal.hpp"

#include <algorithm>

#include "binsig/errors.hpp"

namespace binsig {

namespace {

void validate_inputs(const BinaryVector& init,
                     const std::vector<SignalSwitch>& transient,
                     const std::optional<SignalCycle>& cycle) {
  const int w = init.width();
  for (const auto& s : transient) {
    if (s.value.width() != w) {
      throw WidthMismatch("make_signal: transient value width != init width");
    }
  }
  for (std::size_t i = 1; i < transient.size(); ++i) {
    if (!(transient[i - 1].time < transient[i].time)) {
      throw NonIncreasingTimes("make_signal: transient times must increase");
    }
  }
  if (cycle) {
    if (!cycle->period.is_positive()) {
      throw NonPositivePeriod("make_signal: cycle period must be positive");
    }
    if (!transient.empty() && !(transient.back().time < cycle->start)) {
      throw NonIncreasingTimes(
          "make_signal: transient times must precede cycle start");
    }
    if (cycle->pattern.empty()) {
      throw BadPattern("make_signal: cycle pattern is empty");
    }
    if (!cycle->pattern.front().offset.is_zero()) {
      throw BadPattern("make_signal: first pattern offset must be 0");
    }
    for (const auto& e : cycle->pattern) {
      if (e.value.width() != w) {
        throw WidthMismatch("make_signal: pattern value width != init width");
      }
      if (e.offset.is_negative() || !(e.offset < cycle->period)) {
        throw BadPattern("make_signal: pattern offset out of [0, period)");
      }
    }
    for (std::size_t i = 1; i < cycle->pattern.size(); ++i) {
      if (!(cycle->pattern[i - 1].offset < cycle->pattern[i].offset)) {
        throw BadPattern("make_signal: pattern offsets must increase");
      }
    }
  }
}

}  // namespace

UPSignal make_signal(BinaryVector init, std::vector<SignalSwitch> transient,
                     std::optional<SignalCycle> cycle) {
  validate_inputs(init, transient, cycle);

  std::vector<SignalSwitch> out;
  BinaryVector cur = init;
  for (const auto& s : transient) {
    if (!(s.value == cur)) {
      out.push_back(s);
      cur = s.value;
    }
  }

  if (!cycle) {
    return UPSignal(init, std::move(out), std::nullopt);
  }

  const auto& pat = cycle->pattern;
  const std::size_t n = pat.size();

  // Indices at which the pattern value changes, wrap-aware: entry i is a
  // cyclic switch iff its value differs from the previous entry's.
  std::vector<std::size_t> sigma;
  for (std::size_t i = 0; i < n; ++i) {
    const BinaryVector& prev = pat[(i + n - 1) % n].value;
    if (!(pat[i].value == prev)) sigma.push_back(i);
  }

  if (sigma.empty()) {
    // Constant tail: fold into the transient, cycle = none.
    if (!(pat[0].value == cur)) {
      out.push_back({cycle->start, pat[0].value});
    }
    return UPSignal(init, std::move(out), std::nullopt);
  }

  // The stored cycle start must be a real switch from both sides: the
  // pre-start value differs from pattern[0] and the wrap value from the
  // last entry. Otherwise rotate to the first cyclic switch at a positive
  // offset; a cyclic value sequence has 0 or >= 2 switches, so one exists.
  const bool real_at_start = !(pat[0].value == cur);
  std::size_t anchor_pos;
  if (real_at_start && sigma.front() == 0) {
    anchor_pos = 0;
  } else {
    anchor_pos = sigma.front() == 0 ? 1 : 0;
    if (real_at_start) {
      out.push_back({cycle->start, pat[0].value});
      cur = pat[0].value;
    }
  }

  const Rat o = pat[sigma[anchor_pos]].offset;
  SignalCycle rotated;
  rotated.start = cycle->start + o;
  rotated.period = cycle->period;
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    std::size_t i = sigma[(anchor_pos + j) % sigma.size()];
    rotated.pattern.push_back({mod_pos(pat[i].offset - o, cycle->period),
                               pat[i].value});
  }
  return UPSignal(init, std::move(out), std::move(rotated));
}

UPSignal constant_signal(BinaryVector value) {
  return make_signal(value, {}, std::nullopt);
}

BinaryVector eval(const UPSignal& x, const Rat& t) {
  if (x.cycle() && !(t < x.cycle()->start)) {
    const auto& c = *x.cycle();
    Rat off = mod_pos(t - c.start, c.period);
    std::size_t lo = 0;
    for (std::size_t i = 1; i < c.pattern.size(); ++i) {
      if (c.pattern[i].offset <= off) lo = i;
    }
    return c.pattern[lo].value;
  }
  BinaryVector v = x.init();
  for (const auto& s : x.transient()) {
    if (s.time <= t) {
      v = s.value;
    } else {
      break;
    }
  }
  return v;
}

BinaryVector left_limit(const UPSignal& x, const Rat& t) {
  if (x.cycle() && x.cycle()->start < t) {
    const auto& c = *x.cycle();
    Rat off = mod_pos(t - c.start, c.period);
    if (off.is_zero()) return c.pattern.back().value;
    std::size_t lo = 0;
    for (std::size_t i = 1; i < c.pattern.size(); ++i) {
      if (c.pattern[i].offset < off) lo = i;
    }
    return c.pattern[lo].value;
  }
  BinaryVector v = x.init();
  for (const auto& s : x.transient()) {
    if (s.time < t) {
      v = s.value;
    } else {
      break;
    }
  }
  return v;
}

const BinaryVector& initial_value(const UPSignal& x) { return x.init(); }

std::vector<BinaryVector> orbit(const UPSignal& x) {
  std::vector<BinaryVector> vals;
  vals.push_back(x.init());
  for (const auto& s : x.transient()) vals.push_back(s.value);
  if (x.cycle()) {
    for (const auto& e : x.cycle()->pattern) vals.push_back(e.value);
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

bool orbit_contains(const UPSignal& x, const BinaryVector& mu) {
  if (mu.width() != x.width()) return false;
  if (mu == x.init()) return true;
  for (const auto& s : x.transient()) {
    if (s.value == mu) return true;
  }
  if (x.cycle()) {
    for (const auto& e : x.cycle()->pattern) {
      if (e.value == mu) return true;
    }
  }
  return false;
}

bool is_constant(const UPSignal& x) {
  return x.transient().empty() && !x.cycle();
}

std::optional<Rat> first_switch(const UPSignal& x) {
  if (!x.transient().empty()) return x.transient().front().time;
  if (x.cycle()) return x.cycle()->start;
  return std::nullopt;
}

std::vector<Rat> switch_times_in(const UPSignal& x, const Rat& from,
                                 const Rat& to) {
  std::vector<Rat> times;
  for (const auto& s : x.transient()) {
    if (!(s.time < from) && s.time < to) times.push_back(s.time);
  }
  if (x.cycle()) {
    const auto& c = *x.cycle();
    long long k0 = 0;
    if (c.start < from) k0 = ((from - c.start) / c.period).floor();
    for (long long k = std::max(0LL, k0 - 1);; ++k) {
      Rat base = c.start + Rat(k) * c.period;
      if (!(base < to)) break;
      for (const auto& e : c.pattern) {
        Rat t = base + e.offset;
        if (!(t < from) && t < to) times.push_back(t);
      }
    }
  }
  std::sort(times.begin(), times.end());
  return times;
}

std::optional<Rat> last_switch_before(const UPSignal& x, const Rat& bound) {
  std::optional<Rat> best;
  for (const auto& s : x.transient()) {
    if (s.time < bound) best = s.time;
  }
  if (x.cycle() && x.cycle()->start < bound) {
    const auto& c = *x.cycle();
    // Cycle switches dominate any transient switch, so the latest pattern
    // boundary below `bound` wins; it sits in copy k or k-1.
    long long k = ((bound - c.start) / c.period).floor();
    for (long long kk = k; kk >= std::max(0LL, k - 1); --kk) {
      Rat base = c.start + Rat(kk) * c.period;
      for (auto it = c.pattern.rbegin(); it != c.pattern.rend(); ++it) {
        Rat t = base + it->offset;
        if (t < bound) return t;
      }
    }
    return c.start;
  }
  return best;
}

UPSignal xor_signals(const UPSignal& x, const UPSignal& y) {
  if (x.width() != y.width()) {
    throw WidthMismatch("xor_signals: operand widths differ");
  }

  // From stab(s) onward the operand is either cyclic or constant.
  auto stab = [](const UPSignal& s) -> std::optional<Rat> {
    if (s.cycle()) return s.cycle()->start;
    if (!s.transient().empty()) return s.transient().back().time;
    return std::nullopt;
  };

  std::optional<Rat> period;
  if (x.cycle()) period = x.cycle()->period;
  if (y.cycle()) {
    period = period ? rat_lcm(*period, y.cycle()->period) : y.cycle()->period;
  }

  std::optional<Rat> start;
  if (period) {
    for (const UPSignal* s : {&x, &y}) {
      if (auto st = stab(*s)) start = start ? max(*start, *st) : *st;
    }
  }

  // Candidate switch times of the result below the combined cycle start
  // (or all of them when neither operand is cyclic).
  std::vector<Rat> times;
  auto collect = [&](const UPSignal& s) {
    for (const auto& sw : s.transient()) {
      if (!start || sw.time < *start) times.push_back(sw.time);
    }
    if (s.cycle() && start) {
      for (long long k = 0;; ++k) {
        Rat base = s.cycle()->start + Rat(k) * s.cycle()->period;
        if (!(base < *start)) break;
        for (const auto& e : s.cycle()->pattern) {
          Rat t = base + e.offset;
          if (t < *start) times.push_back(t);
        }
      }
    }
  };
  collect(x);
  collect(y);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  BinaryVector init = x.init() ^ y.init();
  std::vector<SignalSwitch> events;
  for (const Rat& t : times) {
    events.push_back({t, eval(x, t) ^ eval(y, t)});
  }

  std::optional<SignalCycle> cyc;
  if (period) {
    std::vector<Rat> offs;
    offs.push_back(Rat(0));
    auto collect_offsets = [&](const UPSignal& s) {
      if (!s.cycle()) return;
      const auto& c = *s.cycle();
      long long k0 = ((*start - c.start) / c.period).floor() - 1;
      for (long long k = std::max(0LL, k0);; ++k) {
        Rat base = c.start + Rat(k) * c.period;
        if (!(base < *start + *period)) break;
        for (const auto& e : c.pattern) {
          Rat t = base + e.offset;
          if (!(t < *start) && t < *start + *period) {
            offs.push_back(t - *start);
          }
        }
      }
    };
    collect_offsets(x);
    collect_offsets(y);
    std::sort(offs.begin(), offs.end());
    offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
    SignalCycle c;
    c.start = *start;
    c.period = *period;
    for (const Rat& off : offs) {
      Rat t = *start + off;
      c.pattern.push_back({off, eval(x, t) ^ eval(y, t)});
    }
    cyc = std::move(c);
  }
  return make_signal(init, std::move(events), std::move(cyc));
}

}  // namespace binsig
