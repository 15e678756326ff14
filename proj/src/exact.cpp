#include "dkg/exact.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dkg {

Rational frac(long n, long d) {
  if (d == 0) throw std::domain_error("zero denominator");
  Rational q(n);
  q /= Rational(d);
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  s = s.substr(b);
  if (s.empty()) throw std::invalid_argument("empty number");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      const size_t skip = s[0] == '+' ? 1 : 0;
      mpz_class n(s.substr(skip, slash - skip), 10), d(s.substr(slash + 1), 10);
      if (d == 0) throw std::invalid_argument("zero denominator");
      Rational q(n, d);
      q.canonicalize();
      return q;
    }
    size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_dot = false, any = false;
    for (; i < s.size(); ++i) {
      char c = s[i];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        any = true;
        if (seen_dot) ++scale;
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
      } else {
        break;
      }
    }
    if (!any) throw std::invalid_argument("not a number: " + s);
    long exp10 = 0;
    if (i < s.size()) {
      if (s[i] != 'e' && s[i] != 'E') throw std::invalid_argument("not a number: " + s);
      size_t used = 0;
      exp10 = std::stol(s.substr(i + 1), &used);
      if (i + 1 + used != s.size()) throw std::invalid_argument("not a number: " + s);
    }
    mpz_class num(digits, 10), ten_pow;
    long e = exp10 - scale;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(e)));
    Rational q = e >= 0 ? Rational(num * ten_pow) : Rational(num, ten_pow);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a number: " + std::string(text));
  }
}

std::string to_string(const Rational& q) { return q.get_str(); }
double to_double(const Rational& q) { return q.get_d(); }

const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::LT: return "LT";
    case Ordering::EQ: return "EQ";
    case Ordering::GT: return "GT";
  }
  return "?";
}

// ---- ExtReal ----------------------------------------------------------------

ExtReal::ExtReal(Rational q, Rational rho, Rational delta, Rational eps)
    : q_(std::move(q)), rho_(std::move(rho)), delta_(std::move(delta)), eps_(std::move(eps)) {}

int ExtReal::sign() const {
  for (const Rational* c : {&q_, &rho_, &delta_, &eps_})
    if (*c != 0) return sgn(*c);
  return 0;
}

ExtReal ExtReal::operator-() const { return {-q_, -rho_, -delta_, -eps_}; }

ExtReal& ExtReal::operator+=(const ExtReal& o) {
  q_ += o.q_;
  rho_ += o.rho_;
  delta_ += o.delta_;
  eps_ += o.eps_;
  return *this;
}

ExtReal& ExtReal::operator-=(const ExtReal& o) { return *this += -o; }

ExtReal& ExtReal::operator*=(const Rational& k) {
  q_ *= k;
  rho_ *= k;
  delta_ *= k;
  eps_ *= k;
  return *this;
}

double ExtReal::evaluate(double rho, double delta, double eps) const {
  return q_.get_d() + rho_.get_d() * rho + delta_.get_d() * delta + eps_.get_d() * eps;
}

namespace {

void append_term(std::string& out, const Rational& c, const std::string& sym) {
  if (c == 0) return;
  Rational mag = abs(c);
  if (out.empty()) {
    if (c < 0) out += "-";
  } else {
    out += c < 0 ? " - " : " + ";
  }
  if (sym.empty()) {
    out += mag.get_str();
  } else {
    if (mag != 1) out += mag.get_str() + "·";
    out += sym;
  }
}

}  // namespace

std::string ExtReal::str() const {
  std::string out;
  append_term(out, q_, "");
  append_term(out, rho_, "rho");
  append_term(out, delta_, "delta");
  append_term(out, eps_, "eps");
  return out.empty() ? "0" : out;
}

ExtReal operator+(ExtReal a, const ExtReal& b) { return a += b; }
ExtReal operator-(ExtReal a, const ExtReal& b) { return a -= b; }
ExtReal operator*(ExtReal a, const Rational& k) { return a *= k; }
ExtReal operator*(const Rational& k, ExtReal a) { return a *= k; }
ExtReal operator/(ExtReal a, const Rational& k) {
  if (k == 0) throw std::domain_error("division by zero");
  return a *= Rational(1 / k);
}

ExtReal operator*(const ExtReal& a, const ExtReal& b) {
  if (a.is_rational()) return b * a.q();
  if (b.is_rational()) return a * b.q();
  throw std::domain_error("product of infinitesimals: " + a.str() + " * " + b.str());
}

ExtReal combine(const ExtReal& x, const ExtReal& y, const Rational& cx, const Rational& cy) {
  return x * cx + y * cy;
}

Ordering compare(const ExtReal& x, const ExtReal& y) {
  int s = (x - y).sign();
  return s < 0 ? Ordering::LT : s > 0 ? Ordering::GT : Ordering::EQ;
}

const ExtReal& min(const ExtReal& a, const ExtReal& b) { return b < a ? b : a; }
const ExtReal& max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

// ---- ExtPoly ----------------------------------------------------------------

ExtPoly::ExtPoly(const Rational& q) { add_term({0, 0, 0}, q); }

ExtPoly::ExtPoly(const ExtReal& x) {
  add_term({0, 0, 0}, x.q());
  add_term({1, 0, 0}, x.c_rho());
  add_term({0, 1, 0}, x.c_delta());
  add_term({0, 0, 1}, x.c_eps());
}

ExtPoly ExtPoly::monomial(Mono m, const Rational& c) {
  ExtPoly p;
  p.add_term(m, c);
  return p;
}

void ExtPoly::add_term(const Mono& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool ExtPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono{0, 0, 0});
}

int ExtPoly::sign() const { return terms_.empty() ? 0 : sgn(terms_.begin()->second); }

Rational ExtPoly::constant() const {
  auto it = terms_.find({0, 0, 0});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<ExtReal> ExtPoly::as_linear() const {
  ExtReal x;
  for (const auto& [m, c] : terms_) {
    int deg = m[0] + m[1] + m[2];
    if (deg == 0) x += ExtReal(c);
    else if (m == Mono{1, 0, 0}) x += ExtReal::rho() * c;
    else if (m == Mono{0, 1, 0}) x += ExtReal::delta() * c;
    else if (m == Mono{0, 0, 1}) x += ExtReal::eps() * c;
    else return std::nullopt;
  }
  return x;
}

ExtPoly ExtPoly::operator-() const {
  ExtPoly p = *this;
  for (auto& [m, c] : p.terms_) c = -c;
  return p;
}

ExtPoly& ExtPoly::operator+=(const ExtPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ExtPoly& ExtPoly::operator-=(const ExtPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ExtPoly& ExtPoly::operator*=(const ExtPoly& o) {
  ExtPoly out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_)
      out.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, ca * cb);
  return *this = std::move(out);
}

ExtPoly& ExtPoly::operator*=(const Rational& k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= k;
  return *this;
}

double ExtPoly::evaluate(double rho, double delta, double eps) const {
  double v = 0;
  for (const auto& [m, c] : terms_)
    v += c.get_d() * std::pow(rho, m[0]) * std::pow(delta, m[1]) * std::pow(eps, m[2]);
  return v;
}

std::string ExtPoly::str() const {
  static const char* names[3] = {"rho", "delta", "eps"};
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string sym;
    for (int k = 0; k < 3; ++k) {
      if (m[k] == 0) continue;
      if (!sym.empty()) sym += "·";
      sym += names[k];
      if (m[k] > 1) sym += "^" + std::to_string(m[k]);
    }
    append_term(out, c, sym);
  }
  return out.empty() ? "0" : out;
}

ExtPoly operator+(ExtPoly a, const ExtPoly& b) { return a += b; }
ExtPoly operator-(ExtPoly a, const ExtPoly& b) { return a -= b; }
ExtPoly operator*(ExtPoly a, const ExtPoly& b) { return a *= b; }

// ---- ExtFrac ----------------------------------------------------------------

ExtFrac::ExtFrac(ExtPoly num, ExtPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

void ExtFrac::normalize() {
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = ExtPoly(1);
    return;
  }
  if (den_.is_constant()) {
    Rational k = 1 / den_.constant();
    num_ *= k;
    den_ = ExtPoly(1);
    return;
  }
  // num = k·den for a rational k collapses to k.
  Rational k = num_.terms().begin()->second / den_.terms().begin()->second;
  if ((num_ - den_ * ExtPoly(k)).is_zero()) {
    num_ = ExtPoly(k);
    den_ = ExtPoly(1);
    return;
  }
  // Scale so the dominant denominator coefficient is 1.
  Rational lead = 1 / den_.terms().begin()->second;
  num_ *= lead;
  den_ *= lead;
}

Rational ExtFrac::rational() const {
  if (!is_rational()) throw std::domain_error("not rational: " + str());
  return num_.constant() / den_.constant();
}

Rational ExtFrac::standard_part() const {
  Rational d = den_.constant();
  if (d == 0) throw std::domain_error("no standard part: " + str());
  return num_.constant() / d;
}

std::optional<ExtReal> ExtFrac::as_linear() const {
  if (!den_.is_constant()) return std::nullopt;
  return num_.as_linear();
}

ExtFrac ExtFrac::operator-() const {
  ExtFrac f = *this;
  f.num_ = -f.num_;
  return f;
}

ExtFrac& ExtFrac::operator+=(const ExtFrac& o) {
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

ExtFrac& ExtFrac::operator-=(const ExtFrac& o) { return *this += -o; }

ExtFrac& ExtFrac::operator*=(const ExtFrac& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

ExtFrac& ExtFrac::operator/=(const ExtFrac& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

double ExtFrac::evaluate(double rho, double delta, double eps) const {
  return num_.evaluate(rho, delta, eps) / den_.evaluate(rho, delta, eps);
}

std::string ExtFrac::str() const {
  if (den_.is_constant()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

ExtFrac operator+(ExtFrac a, const ExtFrac& b) { return a += b; }
ExtFrac operator-(ExtFrac a, const ExtFrac& b) { return a -= b; }
ExtFrac operator*(ExtFrac a, const ExtFrac& b) { return a *= b; }
ExtFrac operator/(ExtFrac a, const ExtFrac& b) { return a /= b; }

Ordering compare(const ExtFrac& x, const ExtFrac& y) {
  int s = (x.num() * y.den() - y.num() * x.den()).sign();
  return s < 0 ? Ordering::LT : s > 0 ? Ordering::GT : Ordering::EQ;
}

const ExtFrac& min(const ExtFrac& a, const ExtFrac& b) { return b < a ? b : a; }
const ExtFrac& max(const ExtFrac& a, const ExtFrac& b) { return a < b ? b : a; }

// ---- θ-search ---------------------------------------------------------------

bool satisfies(const ThetaConstraint& c, const ExtFrac& theta) {
  Ordering o = compare(c.a * theta, c.b);
  switch (c.rel) {
    case Rel::LE: return o != Ordering::GT;
    case Rel::GE: return o != Ordering::LT;
    case Rel::LT: return o == Ordering::LT;
    case Rel::GT: return o == Ordering::GT;
    case Rel::EQ: return o == Ordering::EQ;
  }
  return false;
}

bool ThetaInterval::contains(const ExtFrac& t) const {
  Ordering l = compare(t, lo), h = compare(t, hi);
  if (l == Ordering::LT || (lo_open && l == Ordering::EQ)) return false;
  if (h == Ordering::GT || (hi_open && h == Ordering::EQ)) return false;
  return true;
}

ExtFrac ThetaInterval::pick() const {
  std::vector<Rational> candidates = {0, 1, frac(1, 2)};
  try {
    Rational a = lo.standard_part(), b = hi.standard_part();
    candidates.push_back(a);
    candidates.push_back(b);
    candidates.push_back((a + b) / 2);
  } catch (const std::domain_error&) {
  }
  for (const auto& c : candidates)
    if (contains(ExtFrac(c))) return ExtFrac(c);
  if (!lo_open) return lo;
  if (!hi_open) return hi;
  return (lo + hi) * ExtFrac(frac(1, 2));
}

std::string ThetaInterval::str() const {
  return std::string(lo_open ? "(" : "[") + lo.str() + ", " + hi.str() + (hi_open ? ")" : "]");
}

std::optional<ThetaInterval> solve_interval(const std::vector<ThetaConstraint>& constraints) {
  ThetaInterval iv{ExtFrac(0), ExtFrac(1)};
  auto raise_lo = [&](const ExtFrac& v, bool open) {
    Ordering o = compare(v, iv.lo);
    if (o == Ordering::GT) {
      iv.lo = v;
      iv.lo_open = open;
    } else if (o == Ordering::EQ) {
      iv.lo_open = iv.lo_open || open;
    }
  };
  auto lower_hi = [&](const ExtFrac& v, bool open) {
    Ordering o = compare(v, iv.hi);
    if (o == Ordering::LT) {
      iv.hi = v;
      iv.hi_open = open;
    } else if (o == Ordering::EQ) {
      iv.hi_open = iv.hi_open || open;
    }
  };
  for (const auto& c : constraints) {
    int sa = c.a.sign();
    if (sa == 0) {
      // 0 rel b: either always or never true.
      if (!satisfies(c, ExtFrac(0))) return std::nullopt;
      continue;
    }
    ExtFrac v = c.b / c.a;
    Rel rel = c.rel;
    if (sa < 0) {
      switch (rel) {
        case Rel::LE: rel = Rel::GE; break;
        case Rel::GE: rel = Rel::LE; break;
        case Rel::LT: rel = Rel::GT; break;
        case Rel::GT: rel = Rel::LT; break;
        case Rel::EQ: break;
      }
    }
    switch (rel) {
      case Rel::LE: lower_hi(v, false); break;
      case Rel::LT: lower_hi(v, true); break;
      case Rel::GE: raise_lo(v, false); break;
      case Rel::GT: raise_lo(v, true); break;
      case Rel::EQ:
        raise_lo(v, false);
        lower_hi(v, false);
        break;
    }
  }
  Ordering o = compare(iv.lo, iv.hi);
  if (o == Ordering::GT) return std::nullopt;
  if (o == Ordering::EQ && (iv.lo_open || iv.hi_open)) return std::nullopt;
  return iv;
}

}  // namespace dkg
