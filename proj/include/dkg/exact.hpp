#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dkg {

using Rational = mpq_class;

// n/d in canonical form (mpq_class(n, d) does not canonicalize).
Rational frac(long n, long d = 1);

// Accepts "3", "-1/4", "0.125", "1e-3".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

enum class Ordering { LT, EQ, GT };
const char* to_string(Ordering o);

// q + c_rho·ϱ + c_delta·δ + c_eps·ε with 1 ≫ ϱ ≫ δ ≫ ε > 0.
class ExtReal {
 public:
  ExtReal() = default;
  ExtReal(Rational q) : q_(std::move(q)) {}  // NOLINT(implicit)
  ExtReal(int q) : q_(q) {}                  // NOLINT(implicit)
  ExtReal(Rational q, Rational rho, Rational delta, Rational eps);

  static ExtReal rho() { return {0, 1, 0, 0}; }
  static ExtReal delta() { return {0, 0, 1, 0}; }
  static ExtReal eps() { return {0, 0, 0, 1}; }

  const Rational& q() const { return q_; }
  const Rational& c_rho() const { return rho_; }
  const Rational& c_delta() const { return delta_; }
  const Rational& c_eps() const { return eps_; }

  bool is_rational() const { return rho_ == 0 && delta_ == 0 && eps_ == 0; }
  bool is_zero() const { return q_ == 0 && is_rational(); }
  int sign() const;

  ExtReal operator-() const;
  ExtReal& operator+=(const ExtReal& o);
  ExtReal& operator-=(const ExtReal& o);
  ExtReal& operator*=(const Rational& k);

  // Numeric value with the infinitesimals replaced by concrete numbers.
  double evaluate(double rho, double delta, double eps) const;
  std::string str() const;

 private:
  Rational q_, rho_, delta_, eps_;
};

ExtReal operator+(ExtReal a, const ExtReal& b);
ExtReal operator-(ExtReal a, const ExtReal& b);
ExtReal operator*(ExtReal a, const Rational& k);
ExtReal operator*(const Rational& k, ExtReal a);
ExtReal operator/(ExtReal a, const Rational& k);
// At least one side must be rational; products of infinitesimals are rejected
// with std::domain_error.
ExtReal operator*(const ExtReal& a, const ExtReal& b);

ExtReal combine(const ExtReal& x, const ExtReal& y, const Rational& cx, const Rational& cy);
Ordering compare(const ExtReal& x, const ExtReal& y);

inline bool operator==(const ExtReal& a, const ExtReal& b) { return compare(a, b) == Ordering::EQ; }
inline bool operator<(const ExtReal& a, const ExtReal& b) { return compare(a, b) == Ordering::LT; }
inline bool operator>(const ExtReal& a, const ExtReal& b) { return compare(a, b) == Ordering::GT; }
inline bool operator<=(const ExtReal& a, const ExtReal& b) { return compare(a, b) != Ordering::GT; }
inline bool operator>=(const ExtReal& a, const ExtReal& b) { return compare(a, b) != Ordering::LT; }

const ExtReal& min(const ExtReal& a, const ExtReal& b);
const ExtReal& max(const ExtReal& a, const ExtReal& b);

// Polynomial in (ϱ, δ, ε) with rational coefficients. Its sign is the sign of
// the dominant monomial: lowest ε-power, then lowest δ-power, then lowest
// ϱ-power. Needed by the proof engine, where interpolation parameters such as
// 2(s−δ)/(1−4δ) multiply infinitesimal exponents.
class ExtPoly {
 public:
  using Mono = std::array<int, 3>;  // powers of (ϱ, δ, ε)
  struct Dominance {
    bool operator()(const Mono& a, const Mono& b) const {
      if (a[2] != b[2]) return a[2] < b[2];
      if (a[1] != b[1]) return a[1] < b[1];
      return a[0] < b[0];
    }
  };

  ExtPoly() = default;
  ExtPoly(const Rational& q);  // NOLINT(implicit)
  ExtPoly(int q) : ExtPoly(Rational(q)) {}  // NOLINT(implicit)
  ExtPoly(const ExtReal& x);   // NOLINT(implicit)

  static ExtPoly monomial(Mono m, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int sign() const;
  Rational constant() const;
  std::optional<ExtReal> as_linear() const;
  const std::map<Mono, Rational, Dominance>& terms() const { return terms_; }

  ExtPoly operator-() const;
  ExtPoly& operator+=(const ExtPoly& o);
  ExtPoly& operator-=(const ExtPoly& o);
  ExtPoly& operator*=(const ExtPoly& o);
  ExtPoly& operator*=(const Rational& k);

  double evaluate(double rho, double delta, double eps) const;
  std::string str() const;

 private:
  void add_term(const Mono& m, const Rational& c);
  std::map<Mono, Rational, Dominance> terms_;
};

ExtPoly operator+(ExtPoly a, const ExtPoly& b);
ExtPoly operator-(ExtPoly a, const ExtPoly& b);
ExtPoly operator*(ExtPoly a, const ExtPoly& b);

// num/den with den > 0 in the dominance order.
class ExtFrac {
 public:
  ExtFrac() : num_(0), den_(1) {}
  ExtFrac(const Rational& q) : num_(q), den_(1) {}  // NOLINT(implicit)
  ExtFrac(int q) : num_(q), den_(1) {}              // NOLINT(implicit)
  ExtFrac(const ExtReal& x) : num_(x), den_(1) {}   // NOLINT(implicit)
  ExtFrac(const ExtPoly& p) : num_(p), den_(1) {}   // NOLINT(implicit)
  ExtFrac(ExtPoly num, ExtPoly den);

  const ExtPoly& num() const { return num_; }
  const ExtPoly& den() const { return den_; }
  int sign() const { return num_.sign(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
  Rational rational() const;          // requires is_rational()
  Rational standard_part() const;     // limit as ϱ, δ, ε → 0 (finite values only)
  std::optional<ExtReal> as_linear() const;

  ExtFrac operator-() const;
  ExtFrac& operator+=(const ExtFrac& o);
  ExtFrac& operator-=(const ExtFrac& o);
  ExtFrac& operator*=(const ExtFrac& o);
  ExtFrac& operator/=(const ExtFrac& o);

  double evaluate(double rho, double delta, double eps) const;
  std::string str() const;

 private:
  void normalize();
  ExtPoly num_, den_;
};

ExtFrac operator+(ExtFrac a, const ExtFrac& b);
ExtFrac operator-(ExtFrac a, const ExtFrac& b);
ExtFrac operator*(ExtFrac a, const ExtFrac& b);
ExtFrac operator/(ExtFrac a, const ExtFrac& b);
Ordering compare(const ExtFrac& x, const ExtFrac& y);

inline bool operator==(const ExtFrac& a, const ExtFrac& b) { return compare(a, b) == Ordering::EQ; }
inline bool operator!=(const ExtFrac& a, const ExtFrac& b) { return !(a == b); }
inline bool operator<(const ExtFrac& a, const ExtFrac& b) { return compare(a, b) == Ordering::LT; }
inline bool operator>(const ExtFrac& a, const ExtFrac& b) { return compare(a, b) == Ordering::GT; }
inline bool operator<=(const ExtFrac& a, const ExtFrac& b) { return compare(a, b) != Ordering::GT; }
inline bool operator>=(const ExtFrac& a, const ExtFrac& b) { return compare(a, b) != Ordering::LT; }

const ExtFrac& min(const ExtFrac& a, const ExtFrac& b);
const ExtFrac& max(const ExtFrac& a, const ExtFrac& b);

// ---- θ-search ---------------------------------------------------------------

enum class Rel { LE, GE, LT, GT, EQ };

struct ThetaConstraint {
  ExtFrac a;  // a·θ rel b
  Rel rel;
  ExtFrac b;
};

struct ThetaInterval {
  ExtFrac lo, hi;
  bool lo_open = false, hi_open = false;

  bool contains(const ExtFrac& t) const;
  // A rational point if one of a few simple candidates lies inside, otherwise
  // the closed endpoint (lower first), otherwise the midpoint.
  ExtFrac pick() const;
  std::string str() const;
};

bool satisfies(const ThetaConstraint& c, const ExtFrac& theta);
std::optional<ThetaInterval> solve_interval(const std::vector<ThetaConstraint>& constraints);

}  // namespace dkg
