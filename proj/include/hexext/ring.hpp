#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace hexext {

using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                         boost::multiprecision::et_off>;

enum class ErrorKind {
  InvalidArgument,
  NotWellDefined,
  NonComposable,
  NotExact,
  RowsNotExact,
  LadderNotCommuting,
  ArgumentMismatch,
  EndsMismatch,
  InvalidDiagram,
  FrameInvalid,
  BudgetExceeded,
  Internal,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotWellDefined: return "NotWellDefined";
    case ErrorKind::NonComposable: return "NonComposable";
    case ErrorKind::NotExact: return "NotExact";
    case ErrorKind::RowsNotExact: return "RowsNotExact";
    case ErrorKind::LadderNotCommuting: return "LadderNotCommuting";
    case ErrorKind::ArgumentMismatch: return "ArgumentMismatch";
    case ErrorKind::EndsMismatch: return "EndsMismatch";
    case ErrorKind::InvalidDiagram: return "InvalidDiagram";
    case ErrorKind::FrameInvalid: return "FrameInvalid";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

/// Library error: a precondition was violated or an internal consistency
/// check failed. Expected negative outcomes (no solution, not extendable)
/// are returned as values instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// ---------------------------------------------------------------------------
// integer helpers

/// Remainder in [0, |m|).
inline Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += abs(m);
  return r;
}

/// Division rounding toward negative infinity.
inline Int div_floor(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

/// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
inline std::tuple<Int, Int, Int> ext_gcd(const Int& a, const Int& b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, Int(old_r - q * r));
    std::tie(old_s, s) = std::make_tuple(s, Int(old_s - q * s));
    std::tie(old_t, t) = std::make_tuple(t, Int(old_t - q * t));
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

/// p-adic valuation of a nonzero integer.
inline unsigned valuation(Int n, const Int& p) {
  unsigned v = 0;
  if (n == 0) return 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Prime divisors in increasing order, by trial division (moduli here are small).
inline std::vector<Int> prime_divisors(Int n) {
  std::vector<Int> out;
  n = abs(n);
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Converts to int64 or throws when out of range.
inline std::int64_t to_i64(const Int& v) {
  if (v > Int(INT64_MAX) || v < Int(INT64_MIN))
    throw Error(ErrorKind::InvalidArgument, "integer does not fit in 64 bits");
  return static_cast<std::int64_t>(v);
}

// ---------------------------------------------------------------------------

/// The base ring: the integers, or the integers modulo m >= 2.
class RingSpec {
 public:
  enum class Kind { Integers, IntegersMod };

  RingSpec() = default;  // the integers

  static RingSpec integers() { return RingSpec(); }
  static RingSpec integers_mod(const Int& m) {
    if (m < 2) throw Error(ErrorKind::InvalidArgument, "modulus must be >= 2");
    RingSpec r;
    r.kind_ = Kind::IntegersMod;
    r.modulus_ = m;
    return r;
  }

  Kind kind() const { return kind_; }
  bool is_integers() const { return kind_ == Kind::Integers; }
  /// 0 for the integers.
  const Int& modulus() const { return modulus_; }

  /// Canonical representative: identity over Z, [0, m) over Z/m.
  Int reduce(const Int& v) const { return is_integers() ? v : mod_floor(v, modulus_); }

  bool is_zero(const Int& v) const { return reduce(v) == 0; }

  bool is_unit(const Int& v) const {
    if (is_integers()) return v == 1 || v == -1;
    return gcd_int(reduce(v), modulus_) == 1;
  }

  /// Inverse of a unit.
  Int inverse(const Int& v) const {
    if (is_integers()) {
      if (v == 1 || v == -1) return v;
      throw Error(ErrorKind::InvalidArgument, "not a unit in Z");
    }
    auto [g, s, t] = ext_gcd(reduce(v), modulus_);
    (void)t;
    if (g != 1) throw Error(ErrorKind::InvalidArgument, "not a unit mod m");
    return reduce(s);
  }

  /// Short name, e.g. "Z" or "Zmod4".
  std::string name() const { return is_integers() ? "Z" : "Zmod" + modulus_.str(); }

  friend bool operator==(const RingSpec& a, const RingSpec& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
  }
  friend bool operator!=(const RingSpec& a, const RingSpec& b) { return !(a == b); }

 private:
  Kind kind_ = Kind::Integers;
  Int modulus_ = 0;
};

/// A unit u of Z/m with u*d = gcd(d, m) (mod m). For the integers, the sign of d.
inline Int normalizing_unit(const RingSpec& ring, const Int& d) {
  if (ring.is_integers()) return d < 0 ? Int(-1) : Int(1);
  const Int& m = ring.modulus();
  Int dr = ring.reduce(d);
  if (dr == 0) return 1;
  Int g = gcd_int(dr, m);
  Int mg = m / g;
  Int dprime = dr / g;
  Int u0 = 1;
  if (mg > 1) {
    auto [gg, s, t] = ext_gcd(mod_floor(dprime, mg), mg);
    (void)gg;
    (void)t;
    u0 = mod_floor(s, mg);
  }
  for (Int u = u0;; u += mg) {
    if (gcd_int(u, m) == 1) return ring.reduce(u);
  }
}

}  // namespace hexext
