#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace binsig {

namespace detail {

using Wide = __int128;

inline Wide wide_abs(Wide x) { return x < 0 ? -x : x; }

inline Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    Wide r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace detail

// Exact rational number in canonical form: gcd(|num|, den) = 1, den > 0.
// Breakpoints, periods and shifts are all Rats; there is no rounding
// anywhere, so conditions like x(t + zT) = mu stay decidable.
class Rat {
 public:
  constexpr Rat() = default;
  Rat(long long n) : num_(n) {}  // NOLINT: integers convert implicitly
  Rat(long long num, long long den) { *this = make(num, den); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  bool is_positive() const { return num_ > 0; }
  bool is_negative() const { return num_ < 0; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return make_wide(detail::Wide(a.num_) * b.den_ + detail::Wide(b.num_) * a.den_,
                     detail::Wide(a.den_) * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return make_wide(detail::Wide(a.num_) * b.den_ - detail::Wide(b.num_) * a.den_,
                     detail::Wide(a.den_) * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make_wide(detail::Wide(a.num_) * b.num_, detail::Wide(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
    return make_wide(detail::Wide(a.num_) * b.den_, detail::Wide(a.den_) * b.num_);
  }
  Rat operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rat& a, const Rat& b) {
    return detail::Wide(a.num_) * b.den_ < detail::Wide(b.num_) * a.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  // Greatest integer <= value.
  long long floor() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  long long ceil() const { return -((-*this).floor()); }

  std::string to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "p" or "p/q" with optional leading sign on p; q > 0.
  static std::optional<Rat> parse(std::string_view s);

 private:
  static Rat make(long long num, long long den) {
    return make_wide(num, den);
  }

  static Rat make_wide(detail::Wide num, detail::Wide den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    detail::Wide g = detail::wide_gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr detail::Wide kMax = INT64_MAX;
    if (num > kMax || num < -kMax || den > kMax) {
      throw std::overflow_error("Rat: value out of 64-bit range");
    }
    Rat r;
    r.num_ = static_cast<long long>(num);
    r.den_ = static_cast<long long>(den);
    return r;
  }

  long long num_ = 0;
  long long den_ = 1;
};

inline Rat abs(const Rat& a) { return a.is_negative() ? -a : a; }
inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

// t reduced modulo p into [0, p); p must be positive.
inline Rat mod_pos(const Rat& t, const Rat& p) {
  if (!p.is_positive()) throw std::domain_error("mod_pos: non-positive modulus");
  Rat r = t - Rat(( t / p).floor()) * p;
  if (r.is_negative()) r += p;  // guard against floor edge
  return r;
}

// True iff b is an integer multiple of a (a != 0).
inline bool divides(const Rat& a, const Rat& b) {
  if (a.is_zero()) return b.is_zero();
  return (b / a).is_integer();
}

// Least positive r such that r/a and r/b are integers; a, b > 0.
inline Rat rat_lcm(const Rat& a, const Rat& b) {
  if (!a.is_positive() || !b.is_positive()) {
    throw std::domain_error("rat_lcm: arguments must be positive");
  }
  // lcm(an/ad, bn/bd) = lcm(an*bd, bn*ad) / (ad*bd)
  detail::Wide x = detail::Wide(a.num()) * b.den();
  detail::Wide y = detail::Wide(b.num()) * a.den();
  detail::Wide g = detail::wide_gcd(x, y);
  detail::Wide l = x / g * y;
  detail::Wide dd = detail::Wide(a.den()) * b.den();
  detail::Wide g2 = detail::wide_gcd(l, dd);
  l /= g2;
  dd /= g2;
  constexpr detail::Wide kMax = INT64_MAX;
  if (l > kMax || dd > kMax) throw std::overflow_error("rat_lcm: overflow");
  return Rat(static_cast<long long>(l), static_cast<long long>(dd));
}

inline std::optional<Rat> Rat::parse(std::string_view s) {
  auto parse_ll = [](std::string_view v, bool allow_sign,
                     long long& out) -> bool {
    if (v.empty()) return false;
    std::size_t i = 0;
    bool neg = false;
    if (allow_sign && (v[0] == '+' || v[0] == '-')) {
      neg = v[0] == '-';
      i = 1;
      if (i == v.size()) return false;
    }
    unsigned long long acc = 0;
    for (; i < v.size(); ++i) {
      if (v[i] < '0' || v[i] > '9') return false;
      acc = acc * 10 + static_cast<unsigned long long>(v[i] - '0');
      if (acc > static_cast<unsigned long long>(INT64_MAX)) return false;
    }
    out = static_cast<long long>(acc);
    if (neg) out = -out;
    return true;
  };
  std::size_t slash = s.find('/');
  long long num = 0;
  long long den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_ll(s, true, num)) return std::nullopt;
  } else {
    if (!parse_ll(s.substr(0, slash), true, num)) return std::nullopt;
    if (!parse_ll(s.substr(slash + 1), false, den)) return std::nullopt;
    if (den <= 0) return std::nullopt;
  }
  return Rat(num, den);
}

}  // namespace binsig
