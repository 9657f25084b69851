#pragma once

// Floating-point expansion arithmetic after Shewchuk, "Adaptive Precision
// Floating-Point Arithmetic and Fast Robust Geometric Predicates" (1997).
// An expansion is a sum of non-overlapping doubles ordered by increasing
// magnitude; sums, differences and products of expansions are exact as long
// as no intermediate product underflows.

#include <cmath>
#include <span>
#include <vector>

namespace celestial::detail {

inline void two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  y = (a - av) + (b - bv);
}

inline void two_diff(double a, double b, double& x, double& y) {
  x = a - b;
  const double bv = a - x;
  const double av = x + bv;
  y = (a - av) + (bv - b);
}

inline void two_product(double a, double b, double& x, double& y) {
  x = a * b;
  y = std::fma(a, b, -x);
}

class Expansion {
 public:
  Expansion() = default;
  explicit Expansion(double v) {
    if (v != 0.0) terms_.push_back(v);
  }

  static Expansion difference(double a, double b) {
    double x, y;
    two_diff(a, b, x, y);
    Expansion e;
    if (y != 0.0) e.terms_.push_back(y);
    if (x != 0.0) e.terms_.push_back(x);
    return e;
  }

  static Expansion product(double a, double b) {
    double x, y;
    two_product(a, b, x, y);
    Expansion e;
    if (y != 0.0) e.terms_.push_back(y);
    if (x != 0.0) e.terms_.push_back(x);
    return e;
  }

  int sign() const {
    if (terms_.empty()) return 0;
    return terms_.back() > 0.0 ? 1 : -1;
  }

  double estimate() const {
    double s = 0.0;
    for (double t : terms_) s += t;
    return s;
  }

  std::span<const double> terms() const { return terms_; }

  Expansion operator-() const {
    Expansion e = *this;
    for (double& t : e.terms_) t = -t;
    return e;
  }

  friend Expansion operator+(const Expansion& a, const Expansion& b) {
    Expansion h = a;
    for (double t : b.terms_) h.grow(t);
    h.compress();
    return h;
  }

  friend Expansion operator-(const Expansion& a, const Expansion& b) { return a + (-b); }

  friend Expansion operator*(const Expansion& a, const Expansion& b) {
    Expansion sum;
    for (double t : b.terms_) sum = sum + a.scaled(t);
    return sum;
  }

 private:
  // grow-expansion with zero elimination
  void grow(double b) {
    std::vector<double> h;
    h.reserve(terms_.size() + 1);
    double q = b;
    for (double e : terms_) {
      double qn, hh;
      two_sum(q, e, qn, hh);
      q = qn;
      if (hh != 0.0) h.push_back(hh);
    }
    if (q != 0.0) h.push_back(q);
    terms_ = std::move(h);
  }

  // scale-expansion with zero elimination
  Expansion scaled(double b) const {
    Expansion out;
    if (terms_.empty() || b == 0.0) return out;
    double q, hh;
    two_product(terms_[0], b, q, hh);
    if (hh != 0.0) out.terms_.push_back(hh);
    for (std::size_t i = 1; i < terms_.size(); ++i) {
      double p1, p0, sum;
      two_product(terms_[i], b, p1, p0);
      two_sum(q, p0, sum, hh);
      if (hh != 0.0) out.terms_.push_back(hh);
      two_sum(p1, sum, q, hh);
      if (hh != 0.0) out.terms_.push_back(hh);
    }
    if (q != 0.0) out.terms_.push_back(q);
    return out;
  }

  // Shewchuk's compress; keeps the representation short after each operation.
  void compress() {
    const std::size_t n = terms_.size();
    if (n < 2) return;
    std::vector<double> g(n);
    std::size_t bottom = n - 1;
    double q = terms_[bottom];
    for (std::size_t i = n - 1; i-- > 0;) {
      double sum, err;
      two_sum(q, terms_[i], sum, err);
      if (err != 0.0) {
        g[bottom--] = sum;
        q = err;
      } else {
        q = sum;
      }
    }
    g[bottom] = q;
    std::vector<double> h;
    h.reserve(n - bottom);
    for (std::size_t i = bottom + 1; i < n; ++i) {
      double sum, err;
      two_sum(g[i], q, sum, err);
      q = sum;
      if (err != 0.0) h.push_back(err);
    }
    if (q != 0.0) h.push_back(q);
    terms_ = std::move(h);
  }

  std::vector<double> terms_;
};

inline Expansion square(const Expansion& e) { return e * e; }

}  // namespace celestial::detail
