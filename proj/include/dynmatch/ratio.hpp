// Copyright 2026 The dynmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DYNMATCH_RATIO_HPP_
#define DYNMATCH_RATIO_HPP_

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dynmatch {

// Exact rational arithmetic for parameter thresholds (beta*(1-lambda/2),
// delta*lambda*beta*n/16, ...).
// All comparisons against integer degrees and set sizes must be exact;
// doubles would make the guard semantics platform-dependent.
class Ratio {
 public:
  constexpr Ratio() : num_(0), den_(1) {}
  constexpr Ratio(long long value) : num_(value), den_(1) {}  // NOLINT(runtime/explicit)
  Ratio(long long num, long long den) : num_(num), den_(den) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Ratio operator-() const { return Ratio(-num_, den_); }

  friend Ratio operator+(const Ratio& a, const Ratio& b) {
    return Ratio(check(i128(a.num_) * b.den_ + i128(b.num_) * a.den_),
                 check(i128(a.den_) * b.den_));
  }
  friend Ratio operator-(const Ratio& a, const Ratio& b) { return a + (-b); }
  friend Ratio operator*(const Ratio& a, const Ratio& b) {
    // Cross-reduce first so products of already-normalized ratios rarely overflow.
    const long long g1 = std::gcd(a.num_, b.den_);
    const long long g2 = std::gcd(b.num_, a.den_);
    return Ratio(check(i128(a.num_ / g1) * (b.num_ / g2)),
                 check(i128(a.den_ / g2) * (b.den_ / g1)));
  }
  friend Ratio operator/(const Ratio& a, const Ratio& b) {
    if (b.num_ == 0) throw std::domain_error("Ratio: division by zero");
    return a * Ratio(b.den_, b.num_);
  }

  Ratio& operator+=(const Ratio& o) { return *this = *this + o; }
  Ratio& operator-=(const Ratio& o) { return *this = *this - o; }
  Ratio& operator*=(const Ratio& o) { return *this = *this * o; }
  Ratio& operator/=(const Ratio& o) { return *this = *this / o; }

  friend bool operator==(const Ratio& a, const Ratio& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Ratio& a, const Ratio& b) { return !(a == b); }
  friend bool operator<(const Ratio& a, const Ratio& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
  friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
  friend bool operator>=(const Ratio& a, const Ratio& b) { return !(a < b); }

  // Largest integer <= value.
  long long floor() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  long long ceil() const { return -((-*this).floor()); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  // Accepts "p", "p/q" and plain decimals like "0.125".
  static Ratio parse(const std::string& text);

  friend std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.str(); }

 private:
  using i128 = __int128;

  static long long check(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Ratio overflow");
    return static_cast<long long>(v);
  }

  explicit Ratio(long long num, long long den, int) : num_(num), den_(den) {}

  void normalize() {
    if (den_ == 0) throw std::domain_error("Ratio: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  long long num_;
  long long den_;
};

inline Ratio Ratio::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    return Ratio(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Ratio(std::stoll(text));
  const std::string whole = text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  if (frac.size() > 12) throw std::invalid_argument("Ratio: too many decimal digits");
  long long den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  const long long sign = (!whole.empty() && whole[0] == '-') ? -1 : 1;
  const long long w = whole.empty() || whole == "-" ? 0 : std::stoll(whole);
  const long long f = frac.empty() ? 0 : std::stoll(frac);
  return Ratio(w * den + sign * f, den);
}

}  // namespace dynmatch

#endif  // DYNMATCH_RATIO_HPP_
