#pragma once

// Double-double ("paired limb") arithmetic and the small set of numeric
// traits the rest of the library is templated over.
//
// A DoubleDouble holds an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving roughly 106 bits of significand with the exponent range of double.
// The kernels follow the classic error-free transformations (two-sum,
// fused-multiply two-product); no operation here allocates.

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace cantor {

namespace detail {

inline constexpr void two_sum(double a, double b, double& s, double& e) noexcept {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

inline constexpr void quick_two_sum(double a, double b, double& s, double& e) noexcept {
  s = a + b;
  e = b - (s - a);
}

inline void two_prod(double a, double b, double& p, double& e) noexcept {
  p = a * b;
  e = std::fma(a, b, -p);
}

}  // namespace detail

class DoubleDouble {
 public:
  constexpr DoubleDouble() noexcept = default;
  constexpr DoubleDouble(double x) noexcept : hi_(x), lo_(0.0) {}  // NOLINT implicit by design of a numeric type
  constexpr DoubleDouble(int x) noexcept : hi_(static_cast<double>(x)), lo_(0.0) {}

  static constexpr DoubleDouble from_parts(double hi, double lo) noexcept {
    DoubleDouble r;
    detail::quick_two_sum(hi, lo, r.hi_, r.lo_);
    return r;
  }

  [[nodiscard]] constexpr double hi() const noexcept { return hi_; }
  [[nodiscard]] constexpr double lo() const noexcept { return lo_; }
  [[nodiscard]] constexpr double to_double() const noexcept { return hi_ + lo_; }
  explicit constexpr operator double() const noexcept { return hi_ + lo_; }

  constexpr DoubleDouble operator-() const noexcept { return raw(-hi_, -lo_); }

  friend constexpr DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) noexcept {
    double s, e, t, f;
    detail::two_sum(a.hi_, b.hi_, s, e);
    detail::two_sum(a.lo_, b.lo_, t, f);
    e += t;
    detail::quick_two_sum(s, e, s, e);
    e += f;
    detail::quick_two_sum(s, e, s, e);
    return raw(s, e);
  }
  friend constexpr DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) noexcept {
    return a + (-b);
  }
  friend DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) noexcept {
    double p, e;
    detail::two_prod(a.hi_, b.hi_, p, e);
    e += a.hi_ * b.lo_ + a.lo_ * b.hi_;
    detail::quick_two_sum(p, e, p, e);
    return raw(p, e);
  }
  friend DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) noexcept {
    const double q1 = a.hi_ / b.hi_;
    if (!std::isfinite(q1)) return DoubleDouble(q1);
    DoubleDouble r = a - b * DoubleDouble(q1);
    const double q2 = r.hi_ / b.hi_;
    r = r - b * DoubleDouble(q2);
    const double q3 = r.hi_ / b.hi_;
    DoubleDouble q = from_parts(q1, q2);
    return q + DoubleDouble(q3);
  }

  DoubleDouble& operator+=(const DoubleDouble& b) noexcept { return *this = *this + b; }
  DoubleDouble& operator-=(const DoubleDouble& b) noexcept { return *this = *this - b; }
  DoubleDouble& operator*=(const DoubleDouble& b) noexcept { return *this = *this * b; }
  DoubleDouble& operator/=(const DoubleDouble& b) noexcept { return *this = *this / b; }

  friend constexpr bool operator==(const DoubleDouble& a, const DoubleDouble& b) noexcept {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_;
  }
  friend constexpr std::partial_ordering operator<=>(const DoubleDouble& a,
                                                     const DoubleDouble& b) noexcept {
    if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
    return a.lo_ <=> b.lo_;
  }

 private:
  static constexpr DoubleDouble raw(double hi, double lo) noexcept {
    DoubleDouble r;
    r.hi_ = hi;
    r.lo_ = lo;
    return r;
  }

  double hi_ = 0.0;
  double lo_ = 0.0;
};

inline DoubleDouble sqrt(const DoubleDouble& a) noexcept {
  if (a.hi() <= 0.0) return DoubleDouble(a.hi() == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN());
  // One Newton step on the double root doubles the number of correct bits.
  const double x = std::sqrt(a.hi());
  double p, e;
  detail::two_prod(x, x, p, e);
  const DoubleDouble residual = a - DoubleDouble::from_parts(p, e);
  return DoubleDouble(x) + DoubleDouble(residual.hi() * (0.5 / x));
}

inline DoubleDouble abs(const DoubleDouble& a) noexcept { return a.hi() < 0.0 ? -a : a; }
inline bool isfinite(const DoubleDouble& a) noexcept { return std::isfinite(a.hi()); }

/// Floor of a double-double; exact for the integral part.
inline DoubleDouble floor(const DoubleDouble& a) noexcept {
  const double fh = std::floor(a.hi());
  if (fh != a.hi()) return DoubleDouble(fh);
  return DoubleDouble::from_parts(fh, std::floor(a.lo()));
}

/// Scaling by a power of two is exact in both limbs.
inline DoubleDouble ldexp(const DoubleDouble& a, int e) noexcept {
  return DoubleDouble::from_parts(std::ldexp(a.hi(), e), std::ldexp(a.lo(), e));
}

/// Arithmetic mode selected at run time; templates are instantiated for both.
enum class Precision { Double, DoubleDouble };

template <class T>
struct RealTraits;

template <>
struct RealTraits<double> {
  static constexpr Precision precision = Precision::Double;
  static constexpr int decimal_digits = 17;
  static constexpr double epsilon() noexcept { return std::numeric_limits<double>::epsilon(); }
  static constexpr const char* name = "double";
};

template <>
struct RealTraits<DoubleDouble> {
  static constexpr Precision precision = Precision::DoubleDouble;
  static constexpr int decimal_digits = 34;
  // 2^-104: the unit roundoff of the paired representation, doubled.
  static constexpr double epsilon() noexcept { return 4.93038065763132e-32; }
  static constexpr const char* name = "double-double";
};

template <class T>
concept Real = requires { RealTraits<T>::precision; };

inline double to_double(double x) noexcept { return x; }
inline double to_double(const DoubleDouble& x) noexcept { return x.to_double(); }

template <Real T>
T from_double(double x) noexcept {
  return T(x);
}

/// Absolute value that works for both instantiations without ADL surprises.
template <Real T>
T absval(const T& x) noexcept {
  using std::abs;
  return abs(x);
}

template <Real T>
T sqrtval(const T& x) noexcept {
  using std::sqrt;
  return sqrt(x);
}

template <Real T>
bool finite(const T& x) noexcept {
  using std::isfinite;
  return isfinite(x);
}

/// Parses a decimal string ("0.125", "-1.5e-3") or a ratio of decimals ("1/6")
/// into the nearest representable value. Throws InvalidInput on malformed text.
template <Real T>
T parse_real(std::string_view text);

/// Renders with RealTraits<T>::decimal_digits significant digits.
template <Real T>
std::string format_real(const T& x);

template <>
double parse_real<double>(std::string_view text);
template <>
DoubleDouble parse_real<DoubleDouble>(std::string_view text);
template <>
std::string format_real<double>(const double& x);
template <>
std::string format_real<DoubleDouble>(const DoubleDouble& x);

/// Precision name as used on the command line and in JSON metadata.
std::string_view precision_name(Precision p);
Precision parse_precision(std::string_view name);

}  // namespace cantor
