#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ldt/errors.hpp"

namespace ldt {

// Exact rational number in canonical form (den > 0, gcd(|num|, den) = 1).
//
// Values whose numerator and denominator fit in int64 are stored inline and
// operated on with overflow-checked 128-bit intermediates; anything larger
// is promoted to a GMP rational and demoted again as soon as it fits.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : num_(v) {}                      // NOLINT(google-explicit-constructor)
  Rational(long v) : num_(v) { fix_min(); }         // NOLINT(google-explicit-constructor)
  Rational(long long v) : num_(v) { fix_min(); }    // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den) { assign(static_cast<__int128>(num), den); }
  explicit Rational(const mpq_class& q) { from_mpq(mpq_class(q)); }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  // Accepts "-7/3", "42", "0". Throws ParseError on anything else or a zero
  // denominator. Non-canonical input ("4/6") is reduced.
  static Rational parse(std::string_view text) {
    if (text.empty()) throw ParseError("empty rational");
    std::size_t slash = text.find('/');
    std::string_view num_part = text.substr(0, slash);
    std::string_view den_part = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
    auto digits_ok = [](std::string_view s, bool allow_sign) {
      if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    if (!digits_ok(num_part, true)) throw ParseError("malformed rational '" + std::string(text) + "'");
    if (slash != std::string_view::npos && !digits_ok(den_part, false))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    mpz_class n(std::string(num_part), 10);
    mpz_class d = slash == std::string_view::npos ? mpz_class(1) : mpz_class(std::string(den_part), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
  }

  [[nodiscard]] bool is_big() const { return static_cast<bool>(big_); }
  [[nodiscard]] bool is_zero() const { return !big_ && num_ == 0; }
  [[nodiscard]] bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

  [[nodiscard]] int sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }

  [[nodiscard]] mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q;
    set_mpz(q.get_num_mpz_t(), num_);
    set_mpz(q.get_den_mpz_t(), den_);
    return q;
  }

  [[nodiscard]] mpz_class numerator() const { return to_mpq().get_num(); }
  [[nodiscard]] mpz_class denominator() const { return to_mpq().get_den(); }

  [[nodiscard]] double to_double() const { return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_); }

  [[nodiscard]] std::string str() const {
    if (big_) return big_->get_str(10);
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  [[nodiscard]] Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational operator-() const {
    if (big_) return Rational(mpq_class(-*big_));
    Rational r;
    r.num_ = -num_;  // num_ != INT64_MIN by construction
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        std::int64_t s;
        if (!__builtin_add_overflow(a.num_, b.num_, &s) && s != INT64_MIN) return from_int(s);
      } else {
        std::int64_t g = std::gcd(a.den_, b.den_);
        __int128 t = static_cast<__int128>(a.num_) * (b.den_ / g) + static_cast<__int128>(b.num_) * (a.den_ / g);
        std::int64_t g2 = std::gcd(static_cast<std::int64_t>(t % g), g);
        __int128 den = static_cast<__int128>(a.den_ / g) * (b.den_ / g2);
        Rational r;
        if (r.try_set_small(t / g2, den)) return r;
      }
    }
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
  }

  friend Rational operator-(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_ && a.den_ == 1 && b.den_ == 1) {
      std::int64_t s;
      if (!__builtin_sub_overflow(a.num_, b.num_, &s) && s != INT64_MIN) return from_int(s);
    }
    return a + (-b);
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.num_ == 0 || b.num_ == 0) return Rational();
      std::int64_t g1 = std::gcd(a.num_, b.den_);
      std::int64_t g2 = std::gcd(b.num_, a.den_);
      __int128 n = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
      __int128 d = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
      Rational r;
      if (r.try_set_small(n, d)) return r;
    }
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw UsageError("rational division by zero");
    return a * b.reciprocal();
  }

  [[nodiscard]] Rational reciprocal() const {
    if (is_zero()) throw UsageError("reciprocal of zero");
    if (big_) return Rational(mpq_class(1 / *big_));
    Rational r;
    if (num_ > 0) {
      r.num_ = den_;
      r.den_ = num_;
    } else {
      r.num_ = -den_;
      r.den_ = -num_;
    }
    return r;
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend int compare(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == b.den_) return (a.num_ > b.num_) - (a.num_ < b.num_);
      __int128 l = static_cast<__int128>(a.num_) * b.den_;
      __int128 r = static_cast<__int128>(b.num_) * a.den_;
      return (l > r) - (l < r);
    }
    return cmp(a.to_mpq(), b.to_mpq());
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical: a value that fits inline is never stored big
  }
  friend auto operator<=>(const Rational& a, const Rational& b) { return compare(a, b) <=> 0; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  [[nodiscard]] std::size_t hash() const {
    if (big_) return std::hash<std::string>{}(big_->get_str(16));
    return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
  }

 private:
  static Rational from_int(std::int64_t v) {
    Rational r;
    r.num_ = v;
    return r;
  }

  static void set_mpz(mpz_ptr z, std::int64_t v) {
    static_assert(sizeof(long) == sizeof(std::int64_t));
    mpz_set_si(z, static_cast<long>(v));
  }

  void fix_min() {
    if (num_ == INT64_MIN) from_mpq(mpq_class(mpz_class(static_cast<long>(num_))));
  }

  void assign(__int128 num, __int128 den) {
    if (den == 0) throw UsageError("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    if (!try_set_small(num, den)) {
      mpq_class q;
      q.get_num() = mpz_from_i128(num);
      q.get_den() = mpz_from_i128(den);
      from_mpq(std::move(q));
    }
  }

  static mpz_class mpz_from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  }

  // Caller guarantees num/den is already reduced and den > 0.
  bool try_set_small(__int128 num, __int128 den) {
    constexpr __int128 lim = INT64_MAX;
    if (num > lim || num < -lim || den > lim) return false;
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
    big_.reset();
    return true;
  }

  void from_mpq(mpq_class q) {
    if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t())) {
      long n = q.get_num().get_si();
      long d = q.get_den().get_si();
      if (n != INT64_MIN) {
        num_ = n;
        den_ = d;
        big_.reset();
        return;
      }
    }
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(std::move(q));
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

}  // namespace ldt

template <>
struct std::hash<ldt::Rational> {
  std::size_t operator()(const ldt::Rational& r) const noexcept { return r.hash(); }
};
