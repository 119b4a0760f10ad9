#pragma once

#include <vector>

#include "centroaffine/scalar.hpp"

namespace centroaffine {

// Dense univariate polynomial, ascending degree. Just enough ring structure
// for continuant recursions in the spectral parameter.
template <class S>
class Poly {
 public:
  Poly() = default;
  Poly(int c) : coeffs_{S(c)} { trim(); }
  explicit Poly(S c) : coeffs_{std::move(c)} { trim(); }
  explicit Poly(std::vector<S> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Poly monomial(const S& c, int degree) {
    std::vector<S> v(degree + 1, S(0));
    v[degree] = c;
    return Poly(std::move(v));
  }

  const std::vector<S>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  S coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : S(0);
  }

  S eval(const S& x) const {
    S acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly operator+(const Poly& o) const {
    std::vector<S> r(std::max(coeffs_.size(), o.coeffs_.size()), S(0));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return Poly(std::move(r));
  }
  Poly operator-(const Poly& o) const {
    std::vector<S> r(std::max(coeffs_.size(), o.coeffs_.size()), S(0));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
    return Poly(std::move(r));
  }
  Poly operator*(const Poly& o) const {
    if (coeffs_.empty() || o.coeffs_.empty()) return Poly();
    std::vector<S> r(coeffs_.size() + o.coeffs_.size() - 1, S(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
      for (size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
    return Poly(std::move(r));
  }
  bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == S(0)) coeffs_.pop_back();
  }
  std::vector<S> coeffs_;
};

}  // namespace centroaffine
