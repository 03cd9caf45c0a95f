#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace affweyl {

struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {
inline long long checked_narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw error("integer overflow in exact arithmetic");
  return static_cast<long long>(v);
}
}  // namespace detail

// Exact rational with canonical form: den > 0, gcd(num, den) = 1.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(long long n) : num_(n), den_(1) {}
  Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    return make(n, (__int128)a.den_ * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
    return make(n, (__int128)a.den_ * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw error("rational division by zero");
    return make((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
  }
  Rat operator-() const { return Rat(-num_, den_); }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  // Renders as "p" or "p/q", never as a decimal.
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

 private:
  long long num_, den_;

  static Rat make(__int128 n, __int128 d) {
    Rat r;
    if (d == 0) throw error("zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a == 0) a = 1;
    r.num_ = detail::checked_narrow(n / a);
    r.den_ = detail::checked_narrow(d / a);
    return r;
  }
  void normalize() { *this = make(num_, den_); }
};

using QVec = std::vector<Rat>;

inline QVec operator+(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
inline QVec operator-(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
inline QVec operator*(const Rat& c, const QVec& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}
inline bool is_zero(const QVec& v) {
  for (const auto& x : v) if (!x.is_zero()) return false;
  return true;
}
inline bool lex_less(const QVec& a, const QVec& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return a.size() < b.size();
}
inline std::string str(const QVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

}  // namespace affweyl
