#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ldt/errors.hpp"
#include "ldt/rational.hpp"

namespace ldt {

enum class Sign : std::int8_t { Minus = -1, Zero = 0, Plus = 1 };

constexpr Sign negate(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }

constexpr char to_char(Sign s) {
  switch (s) {
    case Sign::Minus: return '-';
    case Sign::Zero: return '0';
    case Sign::Plus: return '+';
  }
  return '?';
}

constexpr Sign sign_of_int(int v) { return v < 0 ? Sign::Minus : (v > 0 ? Sign::Plus : Sign::Zero); }

inline Sign sign_of(const Rational& q) { return sign_of_int(q.sign()); }

// A_H(x): entry i is the sign of <h_i, x>.
using SignVector = std::vector<Sign>;

inline std::string to_string(const SignVector& v) {
  std::string s;
  s.reserve(v.size());
  for (Sign x : v) s.push_back(to_char(x));
  return s;
}

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : coords_(dim) {}
  explicit Vector(std::vector<Rational> coords) : coords_(std::move(coords)) {}
  Vector(std::initializer_list<Rational> coords) : coords_(coords) {}

  static Vector unit(std::size_t dim, std::size_t i) {
    Vector v(dim);
    v.coords_.at(i) = 1;
    return v;
  }

  [[nodiscard]] std::size_t dim() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  [[nodiscard]] std::span<const Rational> coords() const { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  [[nodiscard]] bool is_zero() const {
    for (const auto& c : coords_)
      if (!c.is_zero()) return false;
    return true;
  }

  [[nodiscard]] std::size_t nonzeros() const {
    std::size_t k = 0;
    for (const auto& c : coords_) k += !c.is_zero();
    return k;
  }

  // max |coord|
  [[nodiscard]] Rational linf() const {
    Rational m;
    for (const auto& c : coords_)
      if (c.abs() > m) m = c.abs();
    return m;
  }

  [[nodiscard]] Rational l1() const {
    Rational m;
    for (const auto& c : coords_) m += c.abs();
    return m;
  }

  Vector operator-() const {
    Vector r(dim());
    for (std::size_t i = 0; i < dim(); ++i)
      if (!coords_[i].is_zero()) r.coords_[i] = -coords_[i];
    return r;
  }

  friend Vector operator+(const Vector& a, const Vector& b) {
    check_dims(a, b);
    Vector r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r.coords_[i] = a.coords_[i] + b.coords_[i];
    return r;
  }

  friend Vector operator-(const Vector& a, const Vector& b) {
    check_dims(a, b);
    Vector r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r.coords_[i] = a.coords_[i] - b.coords_[i];
    return r;
  }

  friend Vector operator*(const Rational& s, const Vector& v) {
    Vector r(v.dim());
    if (s.is_zero()) return r;
    for (std::size_t i = 0; i < v.dim(); ++i)
      if (!v.coords_[i].is_zero()) r.coords_[i] = s * v.coords_[i];
    return r;
  }

  friend bool operator==(const Vector&, const Vector&) = default;
  friend auto operator<=>(const Vector& a, const Vector& b) { return a.coords_ <=> b.coords_; }

  [[nodiscard]] std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (i) s.push_back(' ');
      s += coords_[i].str();
    }
    return s;
  }

  // Whitespace-separated rationals.
  static Vector parse(std::string_view line) {
    std::istringstream in{std::string(line)};
    std::vector<Rational> cs;
    std::string tok;
    while (in >> tok) cs.push_back(Rational::parse(tok));
    return Vector(std::move(cs));
  }

  static void check_dims(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim())
      throw UsageError("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }

 private:
  std::vector<Rational> coords_;
};

inline Rational inner_product(const Vector& h, const Vector& x) {
  Vector::check_dims(h, x);
  Rational acc;
  for (std::size_t i = 0; i < h.dim(); ++i)
    if (!h[i].is_zero() && !x[i].is_zero()) acc += h[i] * x[i];
  return acc;
}

inline std::ostream& operator<<(std::ostream& os, const Vector& v) { return os << '(' << v.str() << ')'; }

}  // namespace ldt

template <>
struct std::hash<ldt::Vector> {
  std::size_t operator()(const ldt::Vector& v) const noexcept {
    std::size_t h = v.dim();
    for (const auto& c : v) h = h * 0x9e3779b97f4a7c15ULL + c.hash();
    return h;
  }
};
