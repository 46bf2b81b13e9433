#include "binsig/upset.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "binsig/errors.hpp"

namespace binsig {

// Internal factory: trusted construction from already-canonical parts.
class SetBuilder {
 public:
  static UPSet raw(std::optional<Rat> ray, std::vector<Interval> trans,
                   std::optional<SetTail> tail) {
    UPSet s;
    s.initial_ray_ = std::move(ray);
    s.transient_ = std::move(trans);
    s.tail_ = std::move(tail);
    return s;
  }
};

namespace {

// Time from which membership is purely tail-periodic (or constant false).
// Works for raw, possibly overlapping descriptions as well.
Rat stab_point(const UPSet& s) {
  Rat m = Rat(0);
  bool have = false;
  auto bump = [&](const Rat& v) {
    if (!have || m < v) m = v;
    have = true;
  };
  if (s.initial_ray()) bump(*s.initial_ray());
  for (const auto& iv : s.transient_intervals()) bump(iv.hi);
  if (s.tail()) bump(s.tail()->start);
  return m;
}

// Discontinuity candidates of the membership function strictly below `cut`.
void boundaries_below(const UPSet& s, const Rat& cut, std::vector<Rat>& out) {
  if (s.initial_ray() && *s.initial_ray() < cut) out.push_back(*s.initial_ray());
  for (const auto& iv : s.transient_intervals()) {
    if (iv.lo < cut) out.push_back(iv.lo);
    if (iv.hi < cut) out.push_back(iv.hi);
  }
  if (s.tail() && s.tail()->start < cut) {
    const auto& t = *s.tail();
    out.push_back(t.start);
    for (long long k = 0;; ++k) {
      Rat base = t.start + Rat(k) * t.period;
      if (!(base < cut)) break;
      for (const auto& iv : t.pattern) {
        if (base + iv.lo < cut) out.push_back(base + iv.lo);
        if (base + iv.hi < cut) out.push_back(base + iv.hi);
      }
    }
  }
}

// Tail discontinuities within [from, from + span), as offsets from `from`.
void tail_offsets_in(const UPSet& s, const Rat& from, const Rat& span,
                     std::vector<Rat>& out) {
  if (!s.tail()) return;
  const auto& t = *s.tail();
  Rat to = from + span;
  long long k0 = ((from - t.start) / t.period).floor() - 1;
  for (long long k = std::max(0LL, k0);; ++k) {
    Rat base = t.start + Rat(k) * t.period;
    if (!(base < to)) break;
    for (const auto& iv : t.pattern) {
      for (const Rat& b : {base + iv.lo, base + iv.hi}) {
        if (!(b < from) && b < to) out.push_back(b - from);
      }
    }
  }
}

void sort_unique(std::vector<Rat>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Assembles a canonical UPSet from an exact membership description: the
// value at -inf, samples on every segment between candidate boundaries, and
// optionally a periodic tail sampled over one period.
UPSet assemble(bool init_member, const std::vector<Rat>& times,
               const std::function<bool(const Rat&)>& memb,
               const std::optional<std::pair<Rat, Rat>>& tail_sp,
               const std::vector<Rat>& tail_offs) {
  std::vector<std::pair<Rat, bool>> trans;  // alternating transitions
  bool cur = init_member;
  for (const Rat& t : times) {
    bool m = memb(t);
    if (m != cur) {
      trans.push_back({t, m});
      cur = m;
    }
  }

  auto make_all = [] {
    return SetBuilder::raw(Rat(0), {},
                           SetTail{Rat(0), Rat(1), {{Rat(0), Rat(1)}}});
  };

  std::optional<SetTail> tail;
  if (tail_sp) {
    const Rat& s = tail_sp->first;
    const Rat& p = tail_sp->second;
    std::vector<std::pair<Rat, bool>> pat;
    for (const Rat& off : tail_offs) {
      bool m = memb(s + off);
      if (pat.empty() || pat.back().second != m) pat.push_back({off, m});
    }
    if (pat.size() == 1 && pat[0].second) {
      // Eventually a full ray; pull the start back over a trailing true run.
      Rat start = s;
      if (cur) {
        if (trans.empty()) return make_all();
        start = trans.back().first;
        trans.pop_back();
        cur = false;
      }
      tail = SetTail{start, Rat(1), {{Rat(0), Rat(1)}}};
    } else if (pat.size() == 1 && !pat[0].second) {
      // Nothing past s: close a trailing true run there.
      if (cur) {
        trans.push_back({s, false});
        cur = false;
      }
    } else {
      SetTail t;
      t.start = s;
      t.period = p;
      for (std::size_t i = 0; i < pat.size(); ++i) {
        if (!pat[i].second) continue;
        Rat hi = i + 1 < pat.size() ? pat[i + 1].first : p;
        t.pattern.push_back({pat[i].first, hi});
      }
      tail = std::move(t);
    }
  } else if (cur) {
    // True from the last transition on with no declared tail: a full ray.
    if (trans.empty()) return make_all();
    Rat start = trans.back().first;
    trans.pop_back();
    cur = false;
    tail = SetTail{start, Rat(1), {{Rat(0), Rat(1)}}};
  }

  std::optional<Rat> ray;
  std::vector<Interval> intervals;
  std::size_t i = 0;
  if (init_member) {
    if (trans.empty()) {
      // never turned false before the tail region
      return SetBuilder::raw(tail ? tail->start : Rat(0), {}, std::move(tail));
    }
    ray = trans[0].first;
    i = 1;
  }
  while (i < trans.size()) {
    Rat lo = trans[i].first;
    Rat hi;
    if (i + 1 < trans.size()) {
      hi = trans[i + 1].first;
      i += 2;
    } else {
      // trailing true run closes where the mixed tail begins
      hi = tail ? tail->start : lo;
      i += 1;
    }
    if (lo < hi) intervals.push_back({lo, hi});
  }
  return SetBuilder::raw(std::move(ray), std::move(intervals), std::move(tail));
}

using BinOp = std::function<bool(bool, bool)>;

UPSet combine(const UPSet& a, const UPSet& b, const BinOp& op) {
  std::optional<Rat> period;
  if (a.tail()) period = a.tail()->period;
  if (b.tail()) {
    period = period ? rat_lcm(*period, b.tail()->period) : b.tail()->period;
  }

  auto memb = [&](const Rat& t) { return op(a.member(t), b.member(t)); };
  bool init = op(a.initial_ray().has_value(), b.initial_ray().has_value());

  if (!period) {
    std::vector<Rat> times;
    Rat big = max(stab_point(a), stab_point(b)) + Rat(1);
    boundaries_below(a, big, times);
    boundaries_below(b, big, times);
    sort_unique(times);
    return assemble(init, times, memb, std::nullopt, {});
  }

  Rat start = max(stab_point(a), stab_point(b));
  std::vector<Rat> times;
  boundaries_below(a, start, times);
  boundaries_below(b, start, times);
  sort_unique(times);

  std::vector<Rat> offs;
  offs.push_back(Rat(0));
  tail_offsets_in(a, start, *period, offs);
  tail_offsets_in(b, start, *period, offs);
  sort_unique(offs);

  return assemble(init, times, memb, std::make_pair(start, *period), offs);
}

}  // namespace

UPSet UPSet::empty() { return UPSet(); }

UPSet UPSet::all() {
  UPSet r;
  r.initial_ray_ = Rat(0);
  r.tail_ = SetTail{Rat(0), Rat(1), {{Rat(0), Rat(1)}}};
  return r;
}

UPSet UPSet::ray_less(const Rat& r) {
  UPSet s;
  s.initial_ray_ = r;
  return s;
}

UPSet UPSet::ray_geq(const Rat& c) {
  UPSet s;
  s.tail_ = SetTail{c, Rat(1), {{Rat(0), Rat(1)}}};
  return s;
}

UPSet UPSet::interval(const Rat& lo, const Rat& hi) {
  UPSet s;
  if (lo < hi) s.transient_.push_back({lo, hi});
  return s;
}

UPSet UPSet::make(std::optional<Rat> initial_ray,
                  std::vector<Interval> transient,
                  std::optional<SetTail> tail) {
  if (tail) {
    if (!tail->period.is_positive()) {
      throw NonPositivePeriod("UPSet::make: tail period must be positive");
    }
    for (const auto& iv : tail->pattern) {
      if (iv.lo.is_negative() || !(iv.lo < iv.hi) || tail->period < iv.hi) {
        throw BadPattern("UPSet::make: pattern interval out of [0, period]");
      }
    }
  }
  for (const auto& iv : transient) {
    if (!(iv.lo < iv.hi)) {
      throw BadPattern("UPSet::make: empty transient interval");
    }
  }
  UPSet raw;
  raw.initial_ray_ = initial_ray;
  std::sort(transient.begin(), transient.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  raw.transient_ = std::move(transient);
  if (tail && !tail->pattern.empty()) {
    std::sort(tail->pattern.begin(), tail->pattern.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    raw.tail_ = std::move(tail);
  }
  // Route through the combine engine for canonicalization.
  return combine(raw, UPSet(), [](bool x, bool) { return x; });
}

bool UPSet::member(const Rat& t) const {
  if (initial_ray_ && t < *initial_ray_) return true;
  for (const auto& iv : transient_) {
    if (t < iv.lo) break;
    if (t < iv.hi) return true;
  }
  if (tail_ && !(t < tail_->start)) {
    Rat off = mod_pos(t - tail_->start, tail_->period);
    for (const auto& iv : tail_->pattern) {
      if (!(off < iv.lo) && off < iv.hi) return true;
    }
  }
  return false;
}

UPSet shift(const UPSet& s, const Rat& delta) {
  std::optional<Rat> ray = s.initial_ray();
  std::vector<Interval> trans = s.transient_intervals();
  std::optional<SetTail> tail = s.tail();
  if (ray) *ray += delta;
  for (auto& iv : trans) {
    iv.lo += delta;
    iv.hi += delta;
  }
  if (tail) tail->start += delta;
  return UPSet::make(ray, std::move(trans), std::move(tail));
}

UPSet complement(const UPSet& s) {
  return combine(s, UPSet::empty(), [](bool a, bool) { return !a; });
}

UPSet set_union(const UPSet& a, const UPSet& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}

UPSet set_intersect(const UPSet& a, const UPSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}

bool subset(const UPSet& a, const UPSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && !y; }).is_empty();
}

bool set_equals(const UPSet& a, const UPSet& b) {
  return combine(a, b, [](bool x, bool y) { return x != y; }).is_empty();
}

UPSet clip_geq(const UPSet& s, const Rat& c) {
  return set_intersect(s, UPSet::ray_geq(c));
}

SupBound sup_bound(const UPSet& s) {
  if (s.tail()) return {SupBound::Kind::PosInfinity, {}};
  if (!s.transient_intervals().empty()) {
    return {SupBound::Kind::Finite, s.transient_intervals().back().hi};
  }
  if (s.initial_ray()) return {SupBound::Kind::Finite, *s.initial_ray()};
  return {SupBound::Kind::NegInfinity, {}};
}

EventualPeriod minimal_eventual_period(const UPSet& s) {
  if (!s.tail()) return {EventualPeriod::Kind::DegenerateEmpty, {}};
  const auto& t = *s.tail();
  if (t.pattern.size() == 1 && t.pattern[0].lo.is_zero() &&
      t.pattern[0].hi == t.period) {
    return {EventualPeriod::Kind::DegenerateFull, {}};
  }
  // Scale the pattern to the integer grid and take the minimal rotation
  // period of the resulting cyclic word.
  long long d = t.period.den();
  for (const auto& iv : t.pattern) {
    d = std::lcm(d, iv.lo.den());
    d = std::lcm(d, iv.hi.den());
  }
  long long L = (t.period * Rat(d)).num();
  std::vector<char> w(static_cast<std::size_t>(L), 0);
  for (const auto& iv : t.pattern) {
    long long lo = (iv.lo * Rat(d)).num();
    long long hi = (iv.hi * Rat(d)).num();
    for (long long i = lo; i < hi; ++i) w[static_cast<std::size_t>(i)] = 1;
  }
  for (long long q = 1; q <= L; ++q) {
    if (L % q != 0) continue;
    bool ok = true;
    for (long long i = 0; i < L && ok; ++i) {
      ok = w[static_cast<std::size_t>(i)] ==
           w[static_cast<std::size_t>((i + q) % L)];
    }
    if (ok) return {EventualPeriod::Kind::Period, Rat(q, d)};
  }
  return {EventualPeriod::Kind::Period, Rat(L, d)};  // q = L always matches
}

std::optional<Rat> first_point_geq(const UPSet& s, const Rat& c) {
  UPSet g = clip_geq(s, c);
  if (g.is_empty()) return std::nullopt;
  if (!g.transient_intervals().empty()) {
    return g.transient_intervals().front().lo;
  }
  return g.tail()->start + g.tail()->pattern.front().lo;
}

UPSet fiber(const UPSignal& x, const BinaryVector& mu) {
  if (mu.width() != x.width()) {
    throw WidthMismatch("fiber: mu width != signal width");
  }
  if (is_constant(x)) {
    return x.init() == mu ? UPSet::all() : UPSet::empty();
  }

  std::optional<Rat> ray;
  if (x.init() == mu) ray = *first_switch(x);

  std::vector<Interval> trans;
  const auto& sw = x.transient();
  for (std::size_t i = 0; i < sw.size(); ++i) {
    if (!(sw[i].value == mu)) continue;
    if (i + 1 == sw.size() && !x.cycle()) {
      // trailing constant value: a full ray from the last switch
      return UPSet::make(ray, std::move(trans),
                         SetTail{sw[i].time, Rat(1), {{Rat(0), Rat(1)}}});
    }
    Rat hi = i + 1 < sw.size() ? sw[i + 1].time : x.cycle()->start;
    trans.push_back({sw[i].time, hi});
  }

  if (!x.cycle()) {
    return UPSet::make(ray, std::move(trans), std::nullopt);
  }

  const auto& c = *x.cycle();
  SetTail tail;
  tail.start = c.start;
  tail.period = c.period;
  for (std::size_t i = 0; i < c.pattern.size(); ++i) {
    if (!(c.pattern[i].value == mu)) continue;
    Rat hi = i + 1 < c.pattern.size() ? c.pattern[i + 1].offset : c.period;
    tail.pattern.push_back({c.pattern[i].offset, hi});
  }
  return UPSet::make(ray, std::move(trans), std::move(tail));
}

std::string to_string(const UPSet& s) {
  if (s.is_empty()) return "{}";
  std::string out;
  auto piece = [&](const std::string& p) {
    if (!out.empty()) out += " u ";
    out += p;
  };
  if (s.initial_ray()) piece("(-inf," + s.initial_ray()->to_string() + ")");
  for (const auto& iv : s.transient_intervals()) {
    piece("[" + iv.lo.to_string() + "," + iv.hi.to_string() + ")");
  }
  if (s.tail()) {
    std::string t = "repeat(start=" + s.tail()->start.to_string() +
                    ", period=" + s.tail()->period.to_string() + "){";
    for (std::size_t i = 0; i < s.tail()->pattern.size(); ++i) {
      if (i) t += " ";
      t += "[" + s.tail()->pattern[i].lo.to_string() + "," +
           s.tail()->pattern[i].hi.to_string() + ")";
    }
    t += "}";
    piece(t);
  }
  return out;
}

}  // namespace binsig
