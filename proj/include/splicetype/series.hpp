#pragma once

// Power series given as prod (1 - t^n)^e, their exact coefficients, counting
// functions and periodic constants; Hilbert series of the filtration at a
// vertex; characteristic polynomials of the splice-component fibrations.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "splicetype/graph.hpp"

namespace splicetype {

class IntPolynomial {
 public:
  IntPolynomial() = default;
  IntPolynomial(std::initializer_list<BigInt> c) : c_(c) { trim(); }
  explicit IntPolynomial(std::vector<BigInt> c) : c_(std::move(c)) { trim(); }

  static IntPolynomial one() { return IntPolynomial{1}; }

  // -1 for the zero polynomial.
  std::int64_t degree() const noexcept { return static_cast<std::int64_t>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<BigInt>& coefficients() const noexcept { return c_; }
  BigInt coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }

  BigInt operator()(const BigInt& x) const {
    BigInt acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  IntPolynomial derivative() const {
    std::vector<BigInt> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long long>(i));
    return IntPolynomial(std::move(d));
  }

  // p(t^k)
  IntPolynomial compose_power(std::uint64_t k) const {
    if (c_.empty()) return {};
    std::vector<BigInt> d((c_.size() - 1) * k + 1);
    for (std::size_t i = 0; i < c_.size(); ++i) d[i * k] = c_[i];
    return IntPolynomial(std::move(d));
  }

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> d(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.coefficient(i) + b.coefficient(i);
    return IntPolynomial(std::move(d));
  }
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> d(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.coefficient(i) - b.coefficient(i);
    return IntPolynomial(std::move(d));
  }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> d(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(d));
  }
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      BigInt mag = abs(c_[i]);
      if (s.empty()) {
        if (c_[i] < 0) s += "-";
      } else {
        s += c_[i] < 0 ? " - " : " + ";
      }
      if (mag != 1 || i == 0) s += mag.str();
      if (i >= 1) s += (mag != 1 ? "*t" : "t");
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<BigInt> c_;
};

// multiplier(t) * prod (1 - t^n)^e
class FactoredSeries {
 public:
  FactoredSeries() = default;

  FactoredSeries& multiply_factor(std::uint64_t n, std::int64_t e) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "factor exponent must be >= 1");
    if (e == 0) return *this;
    auto& slot = factors_[n];
    slot += e;
    if (slot == 0) factors_.erase(n);
    return *this;
  }

  FactoredSeries& multiply_polynomial(const IntPolynomial& p) {
    multiplier_ = multiplier_ * p;
    return *this;
  }

  FactoredSeries& operator*=(const FactoredSeries& o) {
    for (auto [n, e] : o.factors_) multiply_factor(n, e);
    return multiply_polynomial(o.multiplier_);
  }
  friend FactoredSeries operator*(FactoredSeries a, const FactoredSeries& b) { return a *= b; }

  // F(t^k)
  FactoredSeries compose_power(std::uint64_t k) const {
    FactoredSeries out;
    for (auto [n, e] : factors_) out.multiply_factor(n * k, e);
    out.multiplier_ = multiplier_.compose_power(k);
    return out;
  }

  const std::map<std::uint64_t, std::int64_t>& factors() const noexcept { return factors_; }
  const IntPolynomial& multiplier() const noexcept { return multiplier_; }

  // Degree of the rational function (sum e*n plus the multiplier degree).
  BigInt degree() const {
    BigInt d = multiplier_.degree();
    for (auto [n, e] : factors_) d += BigInt(n) * e;
    return d;
  }

  // lcm of the denominator exponents.
  std::uint64_t period() const {
    BigInt k = 1;
    for (auto [n, e] : factors_)
      if (e < 0) k = lcm(k, BigInt(n));
    return to_uint64(k, "series period");
  }

  // Total degree of the denominator.
  BigInt denominator_degree() const {
    BigInt d = 0;
    for (auto [n, e] : factors_)
      if (e < 0) d += BigInt(n) * (-e);
    return d;
  }

  friend bool operator==(const FactoredSeries&, const FactoredSeries&) = default;

  std::string to_string() const {
    std::string num, den;
    for (auto [n, e] : factors_) {
      std::string f = "(1-t^" + std::to_string(n) + ")";
      if (std::abs(e) != 1) f += "^" + std::to_string(std::abs(e));
      (e > 0 ? num : den) += f;
    }
    if (multiplier_ != IntPolynomial::one()) num = "(" + multiplier_.to_string() + ")" + num;
    if (num.empty()) num = "1";
    return den.empty() ? num : num + "/" + den;
  }

 private:
  std::map<std::uint64_t, std::int64_t> factors_;
  IntPolynomial multiplier_ = IntPolynomial::one();
};

inline constexpr std::uint64_t kMaxExpansionTerms = 4'000'000;

// a_0 .. a_N
inline std::vector<BigInt> expand(const FactoredSeries& f, std::uint64_t n_max) {
  if (n_max >= kMaxExpansionTerms)
    throw Error(ErrorCode::InputTooLarge, "expansion to degree " + std::to_string(n_max) + " exceeds the term limit");
  std::vector<BigInt> c(n_max + 1, 0);
  const auto& mult = f.multiplier().coefficients();
  for (std::size_t i = 0; i < mult.size() && i <= n_max; ++i) c[i] = mult[i];
  for (auto [n, e] : f.factors()) {
    if (n > n_max) continue;
    for (std::int64_t rep = 0; rep < std::abs(e); ++rep) {
      if (e > 0) {
        for (std::uint64_t i = n_max; i >= n; --i) c[i] -= c[i - n];
      } else {
        for (std::uint64_t i = n; i <= n_max; ++i) c[i] += c[i - n];
      }
    }
  }
  return c;
}

// P_F(n) = a_0 + ... + a_{n-1}
inline BigInt counting(const FactoredSeries& f, std::uint64_t n) {
  if (n == 0) return 0;
  auto c = expand(f, n - 1);
  BigInt s = 0;
  for (const auto& x : c) s += x;
  return s;
}

// ---------------------------------------------------------------------------
// Periodic constants
//
// When the coefficients are eventually quasi-polynomial of period k, P(k m)
// is a polynomial in m once k m exceeds the degree of the rational function.
// The polynomial is fitted exactly through degree 3 on four sample points,
// checked on two more, and evaluated at m = 0.

inline constexpr int kMaxFitDegree = 3;

struct PeriodicConstantPlan {
  std::uint64_t period = 1;
  std::uint64_t first_sample = 0;  // m0
  std::uint64_t terms = 0;         // coefficients a_0 .. a_{terms-1} are needed
};

inline PeriodicConstantPlan plan_periodic_constant(std::uint64_t period, const BigInt& degree_bound) {
  PeriodicConstantPlan p;
  p.period = period;
  BigInt m0 = floor_div(degree_bound, BigInt(period)) + 1;
  p.first_sample = m0 < 0 ? 0 : to_uint64(m0, "sample index");
  BigInt n_max = (degree_bound > 0 ? degree_bound : BigInt(0)) + BigInt(3) * period * (kMaxFitDegree + 1);
  BigInt needed = BigInt(period) * (p.first_sample + kMaxFitDegree + 2);
  p.terms = to_uint64(std::max(n_max, needed), "expansion length");
  return p;
}

namespace detail {

inline Rational lagrange_eval(std::span<const BigInt> xs, std::span<const BigInt> ys, const BigInt& x) {
  Rational total = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    Rational term = ys[j];
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (i != j) term *= make_rational(x - xs[i], xs[j] - xs[i]);
    total += term;
  }
  return total;
}

}  // namespace detail

// coeffs must hold at least plan_periodic_constant(period, degree_bound).terms entries.
inline BigInt periodic_constant(std::span<const BigInt> coeffs, std::uint64_t period, const BigInt& degree_bound) {
  auto plan = plan_periodic_constant(period, degree_bound);
  const std::size_t samples = kMaxFitDegree + 3;
  std::uint64_t last = period * (plan.first_sample + samples - 1);
  if (coeffs.size() < last) throw Error(ErrorCode::InvalidArgument, "not enough coefficients for the periodic constant");
  std::vector<BigInt> xs, ys;
  BigInt partial = 0;
  std::uint64_t i = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::uint64_t m = plan.first_sample + s;
    std::uint64_t n = period * m;
    for (; i < n; ++i) partial += coeffs[i];
    xs.push_back(m);
    ys.push_back(partial);
  }
  std::span<const BigInt> fx(xs.data(), kMaxFitDegree + 1), fy(ys.data(), kMaxFitDegree + 1);
  for (std::size_t s = kMaxFitDegree + 1; s < samples; ++s) {
    if (detail::lagrange_eval(fx, fy, xs[s]) != Rational(ys[s])) {
      throw Error(ErrorCode::NoPolynomialFit, "counting function is not a polynomial of degree <= 3 on multiples of " +
                                                  std::to_string(period));
    }
  }
  Rational c = detail::lagrange_eval(fx, fy, 0);
  ensure(is_integral(c), "periodic constant is not an integer");
  return numerator_of(c);
}

inline BigInt periodic_constant(const FactoredSeries& f, std::uint64_t period) {
  auto plan = plan_periodic_constant(period, f.degree());
  auto c = expand(f, plan.terms);
  return periodic_constant(c, period, f.degree());
}

// Computed with periods k and 2k; the two must agree.
inline BigInt periodic_constant(const FactoredSeries& f) {
  const std::uint64_t k = f.period();
  auto plan = plan_periodic_constant(2 * k, f.degree());
  auto c = expand(f, plan.terms);
  BigInt with_k = periodic_constant(c, k, f.degree());
  BigInt with_2k = periodic_constant(c, 2 * k, f.degree());
  if (with_k != with_2k) {
    throw Error(ErrorCode::NoPolynomialFit, "periodic constant depends on the sampling period (" + with_k.str() +
                                                " vs " + with_2k.str() + ")");
  }
  return with_k;
}

// Exact quotient when the series is a polynomial.
inline IntPolynomial polynomial_of(const FactoredSeries& f) {
  BigInt deg = f.degree();
  if (deg < 0) throw Error(ErrorCode::NonPolynomialQuotient, "series has negative degree " + deg.str());
  BigInt check = deg + f.denominator_degree();
  auto c = expand(f, to_uint64(check, "quotient degree"));
  std::uint64_t d = to_uint64(deg);
  for (std::uint64_t i = d + 1; i < c.size(); ++i)
    if (c[i] != 0) throw Error(ErrorCode::NonPolynomialQuotient, f.to_string() + " is not a polynomial");
  c.resize(d + 1);
  return IntPolynomial(std::move(c));
}

// ---------------------------------------------------------------------------
// Hilbert series of the filtration at v

inline FactoredSeries hilbert_series(const PlumbingGraph& g, std::size_t v) {
  if (!certify_zhs(g).is_zhs) throw Error(ErrorCode::NotZHS, "Hilbert series need a unimodular negative-definite tree");
  auto row = m_row(g, v);
  FactoredSeries h;
  for (std::size_t w = 0; w < g.size(); ++w) {
    auto e = static_cast<std::int64_t>(g.degree(w)) - 2;
    if (e != 0) h.multiply_factor(to_uint64(row[w], "m-matrix entry"), e);
  }
  return h;
}

inline FactoredSeries hilbert_series(const PlumbingGraph& g, const VertexId& v) { return hilbert_series(g, g.index(v)); }

inline BigInt a_invariant(const PlumbingGraph& g, std::size_t v) {
  if (!certify_zhs(g).is_zhs) throw Error(ErrorCode::NotZHS, "a-invariant needs a unimodular negative-definite tree");
  auto row = m_row(g, v);
  BigInt a = 0;
  for (std::size_t w = 0; w < g.size(); ++w) a += (static_cast<long long>(g.degree(w)) - 2) * row[w];
  return a;
}

inline BigInt a_invariant(const PlumbingGraph& g, const VertexId& v) { return a_invariant(g, g.index(v)); }

// ---------------------------------------------------------------------------
// Characteristic polynomials

// (1-t)(1-t^a)^{r-1} / prod (1-t^{a/a_i})
inline IntPolynomial char_poly_node(const std::vector<BigInt>& weights) {
  if (weights.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one weight");
  for (const auto& w : weights)
    if (w < 1) throw Error(ErrorCode::InvalidArgument, "weights must be positive");
  for (std::size_t i = 0; i < weights.size(); ++i)
    for (std::size_t j = i + 1; j < weights.size(); ++j)
      if (gcd(weights[i], weights[j]) != 1) throw Error(ErrorCode::NotCoprime, "node weights are not pairwise coprime");
  BigInt a = 1;
  for (const auto& w : weights) a *= w;
  FactoredSeries f;
  f.multiply_factor(1, 1);
  f.multiply_factor(to_uint64(a), static_cast<std::int64_t>(weights.size()) - 1);
  for (const auto& w : weights) f.multiply_factor(to_uint64(a / w), -1);
  auto p = polynomial_of(f);
  ensure(p(1) == 1, "characteristic polynomial does not satisfy P(1) = 1");
  return p;
}

// g(t) with g(t^a) = H_{tilde Gamma_2, v1'}(t) (1 - t^b).
inline FactoredSeries side2_series(const PlumbingGraph& tilde, const VertexId& junction, const BigInt& a, const BigInt& b) {
  if (gcd(a, b) != 1) throw Error(ErrorCode::NotCoprime, "gcd(a, b) != 1");
  FactoredSeries h = hilbert_series(tilde, junction);
  h.multiply_factor(to_uint64(b), 1);
  const std::uint64_t ua = to_uint64(a);
  FactoredSeries g;
  for (auto [n, e] : h.factors()) {
    if (n % ua != 0) {
      throw Error(ErrorCode::ExponentNotDivisible, "exponent " + std::to_string(n) + " is not divisible by " + a.str());
    }
    g.multiply_factor(n / ua, e);
  }
  return g;
}

inline IntPolynomial char_poly_side2(const PlumbingGraph& tilde, const VertexId& junction, const BigInt& a, const BigInt& b) {
  FactoredSeries f = side2_series(tilde, junction, a, b);
  f.multiply_factor(1, 1);
  auto p = polynomial_of(f);
  ensure(p(1) == 1, "characteristic polynomial does not satisfy P(1) = 1");
  return p;
}

// b_1 of the fiber: 2 P'(1), which must equal deg P.
inline BigInt b1_fiber(const IntPolynomial& p) {
  if (p(1) != 1) throw Error(ErrorCode::NotMonicUnit, "P(1) = " + p(1).str());
  BigInt b1 = 2 * p.derivative()(1);
  ensure(b1 == p.degree(), "2 P'(1) = " + b1.str() + " differs from deg P = " + std::to_string(p.degree()));
  ensure(b1 >= 0 && b1 % 2 == 0, "b_1 is not a nonnegative even integer");
  return b1;
}

}  // namespace splicetype
