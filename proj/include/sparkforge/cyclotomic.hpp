#pragma once

// Exact arithmetic in Z[w_N] and its fraction field Q(w_N), where w_N is a
// primitive N-th root of unity. Elements are stored in the power basis
// {1, w, ..., w^(phi(N)-1)}, reduced modulo the N-th cyclotomic polynomial
// after every multiplication, so an element is zero iff its coefficients are.
//
// Numeric evaluation uses w_N = exp(-2*pi*i/N), the DFT convention.

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "sparkforge/error.hpp"
#include "sparkforge/number_theory.hpp"

namespace sparkforge {

/// Integer polynomial, coefficients low degree first.
using IntPoly = std::vector<mpz_class>;

namespace detail {

inline void trim(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// Exact quotient of num by a monic divisor; throws if the remainder is nonzero.
inline IntPoly poly_div_monic(IntPoly num, const IntPoly& div) {
  const std::size_t dd = div.size() - 1;
  if (num.size() < div.size()) return IntPoly{0};
  IntPoly q(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const mpz_class c = num[i];
    if (c == 0) continue;
    q[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * div[j];
  }
  for (const auto& r : num)
    if (r != 0) throw Error(Errc::InvalidInput, "inexact polynomial division");
  trim(q);
  return q;
}

}  // namespace detail

/// The N-th cyclotomic polynomial, obtained by dividing x^N - 1 by Phi_d for
/// every proper divisor d of N. Results are memoized.
inline IntPoly cyclotomic_poly(std::int64_t n) {
  if (n < 1) throw Error(Errc::InvalidInput, "cyclotomic order must be positive");
  static std::mutex mu;
  static std::map<std::int64_t, IntPoly> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  IntPoly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d : divisors(n))
    if (d != n) p = detail::poly_div_monic(std::move(p), cyclotomic_poly(d));
  std::lock_guard lock(mu);
  cache.emplace(n, p);
  return p;
}

/// Shared, immutable per-order data: Phi_N and its degree.
struct CyclotomicField {
  std::int64_t order;
  std::size_t degree;
  IntPoly modulus;  // monic, length degree + 1

  static std::shared_ptr<const CyclotomicField> get(std::int64_t n) {
    static std::mutex mu;
    static std::map<std::int64_t, std::shared_ptr<const CyclotomicField>> cache;
    {
      std::lock_guard lock(mu);
      if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    auto f = std::make_shared<CyclotomicField>();
    f->order = n;
    f->modulus = cyclotomic_poly(n);
    f->degree = f->modulus.size() - 1;
    std::lock_guard lock(mu);
    return cache.try_emplace(n, std::move(f)).first->second;
  }
};

class ExactScalar;

/// Element of Z[w_N] in canonical reduced form.
class CycInt {
 public:
  /// Zero of Z[w_1] = Z.
  CycInt() : CycInt(1) {}

  explicit CycInt(std::int64_t order)
      : field_(CyclotomicField::get(order)), coeffs_(field_->degree, 0) {}

  /// Integer constant embedded in Z[w_N].
  CycInt(std::int64_t order, const mpz_class& value) : CycInt(order) { coeffs_[0] = value; }

  /// Arbitrary polynomial in w_N; reduced modulo Phi_N.
  static CycInt from_poly(std::int64_t order, IntPoly coeffs) {
    CycInt r(order);
    r.assign_reduced(std::move(coeffs));
    return r;
  }

  std::int64_t order() const { return field_->order; }
  std::size_t degree() const { return field_->degree; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  bool is_one() const {
    if (coeffs_[0] != 1) return false;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return false;
    return true;
  }

  /// gcd of the coefficients (0 for the zero element).
  mpz_class content() const {
    mpz_class g = 0;
    for (const auto& c : coeffs_) {
      if (c == 0) continue;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }

  std::complex<double> evaluate() const {
    const double step = -2.0 * std::numbers::pi / static_cast<double>(order());
    std::complex<double> sum = 0;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k] == 0) continue;
      sum += coeffs_[k].get_d() * std::polar(1.0, step * static_cast<double>(k));
    }
    return sum;
  }

  CycInt operator-() const {
    CycInt r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  CycInt& operator+=(const CycInt& o) {
    check_order(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }

  CycInt& operator-=(const CycInt& o) {
    check_order(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }

  CycInt& operator*=(const mpz_class& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  /// Exact division of every coefficient; caller guarantees divisibility.
  CycInt& divexact(const mpz_class& s) {
    for (auto& c : coeffs_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
    return *this;
  }

  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(CycInt a, const mpz_class& s) { return a *= s; }

  friend CycInt operator*(const CycInt& a, const CycInt& b) {
    a.check_order(b);
    const std::size_t n = a.coeffs_.size();
    IntPoly prod(2 * n - 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b.coeffs_[j] == 0) continue;
        mpz_addmul(prod[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
      }
    }
    CycInt r(a.field_);
    r.assign_reduced(std::move(prod));
    return r;
  }

  friend bool operator==(const CycInt& a, const CycInt& b) {
    return a.order() == b.order() && a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (i) s += ",";
      s += coeffs_[i].get_str();
    }
    return s + "]";
  }

 private:
  friend class ExactScalar;

  explicit CycInt(std::shared_ptr<const CyclotomicField> f)
      : field_(std::move(f)), coeffs_(field_->degree, 0) {}

  void check_order(const CycInt& o) const {
    if (o.field_->order != field_->order)
      throw Error(Errc::OrderMismatch, "cyclotomic orders " + std::to_string(field_->order) +
                                           " and " + std::to_string(o.field_->order));
  }

  void assign_reduced(IntPoly p) {
    const std::size_t deg = field_->degree;
    const IntPoly& phi = field_->modulus;
    // x^deg = -(phi_0 + ... + phi_{deg-1} x^{deg-1}); fold from the top down.
    for (std::size_t i = p.size(); i-- > deg;) {
      if (p[i] == 0) continue;
      const mpz_class c = p[i];
      for (std::size_t j = 0; j < deg; ++j)
        if (phi[j] != 0) mpz_submul(p[i - deg + j].get_mpz_t(), c.get_mpz_t(), phi[j].get_mpz_t());
      p[i] = 0;
    }
    p.resize(deg, 0);
    coeffs_ = std::move(p);
  }

  std::shared_ptr<const CyclotomicField> field_;
  std::vector<mpz_class> coeffs_;
};

/// w_N^k in canonical form; k is reduced mod N.
inline CycInt root_power(std::int64_t n, std::int64_t k) {
  if (n < 1) throw Error(Errc::InvalidInput, "root order must be positive");
  IntPoly p(static_cast<std::size_t>(mod(k, n)) + 1, 0);
  p.back() = 1;
  return CycInt::from_poly(n, std::move(p));
}

/// Element num/den of Q(w_N) with den > 0, kept reduced by gcd(den, content(num)).
class ExactScalar {
 public:
  ExactScalar() : num_(1), den_(1) {}
  explicit ExactScalar(CycInt num) : num_(std::move(num)), den_(1) {}
  ExactScalar(std::int64_t order, const mpz_class& value) : num_(order, value), den_(1) {}

  ExactScalar(CycInt num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw Error(Errc::DivisionByZero, "zero denominator");
    if (den_ < 0) {
      den_ = -den_;
      num_ = -num_;
    }
    normalize();
  }

  static ExactScalar zero(std::int64_t order) { return ExactScalar(CycInt(order)); }
  static ExactScalar one(std::int64_t order) { return ExactScalar(CycInt(order, 1)); }

  const CycInt& num() const { return num_; }
  const mpz_class& den() const { return den_; }
  std::int64_t order() const { return num_.order(); }
  bool is_zero() const { return num_.is_zero(); }

  std::complex<double> evaluate() const {
    return num_.evaluate() / den_.get_d();
  }

  ExactScalar operator-() const {
    ExactScalar r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    if (a.den_ == b.den_) return ExactScalar(a.num_ + b.num_, a.den_);
    return ExactScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }

  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
    if (a.den_ == b.den_) return ExactScalar(a.num_ - b.num_, a.den_);
    return ExactScalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }

  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    return ExactScalar(a.num_ * b.num_, a.den_ * b.den_);
  }

  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    return a * b.inverse();
  }

  ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
  ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
  ExactScalar& operator/=(const ExactScalar& o) { return *this = *this / o; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.den_ == b.den_ && a.num_ == b.num_;
  }

  /// Multiplicative inverse. Solves num * x = 1 over Q in the power basis.
  ExactScalar inverse() const {
    if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
    const std::size_t n = num_.degree();
    const std::int64_t ord = num_.order();
    // Column j of the multiplication-by-num matrix is num * w^j.
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n + 1, 0));
    CycInt col = num_;
    const CycInt w = root_power(ord, 1);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) a[i][j] = col.coeffs()[i];
      if (j + 1 < n) col = col * w;
    }
    a[0][n] = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && a[p][c] == 0) ++p;
      if (p == n) throw Error(Errc::DivisionByZero, "singular multiplication matrix");
      std::swap(a[p], a[c]);
      const mpq_class inv = 1 / a[c][c];
      for (std::size_t j = c; j <= n; ++j) a[c][j] *= inv;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == c || a[i][c] == 0) continue;
        const mpq_class f = a[i][c];
        for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
      }
    }
    mpz_class common = 1;
    for (std::size_t i = 0; i < n; ++i)
      mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), a[i][n].get_den_mpz_t());
    IntPoly coeffs(n);
    for (std::size_t i = 0; i < n; ++i) coeffs[i] = a[i][n].get_num() * (common / a[i][n].get_den());
    CycInt x = CycInt::from_poly(ord, std::move(coeffs));
    // (x / common) inverts num, so den / num = den * x / common.
    return ExactScalar(x * den_, common);
  }

  std::string to_string() const {
    return den_ == 1 ? num_.to_string() : num_.to_string() + "/" + den_.get_str();
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = 1;
      return;
    }
    if (den_ == 1) return;
    mpz_class g = num_.content();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
    if (g != 1) {
      num_.divexact(g);
      mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
  }

  CycInt num_;
  mpz_class den_;
};

}  // namespace sparkforge
