#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "centroaffine/polygon.hpp"

namespace centroaffine {

// Deterministic RNG: a fixed seed fully determines every randomized suite.
// Raw mt19937_64 draws only (distribution classes vary across standard
// libraries; these helpers do not).
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // inclusive bounds, rejection sampled
  long uniform_int(long lo, long hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    uint64_t r;
    do { r = next(); } while (r >= limit);
    return lo + static_cast<long>(r % span);
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
  }

  // derived independent stream, for order-independent parallel trials
  Rng fork(uint64_t salt) { return Rng(next() ^ (salt * 0x9e3779b97f4a7c15ull)); }

 private:
  std::mt19937_64 eng_;
};

template <class S>
S random_scalar(Rng& rng, bool nonzero = true) {
  if constexpr (scalar_traits<S>::exact) {
    long num = rng.uniform_int(-9, 9);
    while (nonzero && num == 0) num = rng.uniform_int(-9, 9);
    return S(num, rng.uniform_int(1, 4));
  } else {
    double x = rng.uniform(-3.0, 3.0);
    while (nonzero && std::abs(x) < 0.1) x = rng.uniform(-3.0, 3.0);
    return x;
  }
}

template <class S>
Vec2<S> random_vec(Rng& rng) {
  return {random_scalar<S>(rng, false), random_scalar<S>(rng, false)};
}

namespace detail {
template <class S>
bool well_separated(const Polygon<S>& p) {
  // floats additionally keep a margin away from the degenerate strata
  const double floor_tol = scalar_traits<S>::exact ? 0.0 : 0.02;
  for (long i = 0; i < p.n(); ++i) {
    if (scalar_traits<S>::magnitude(bracket(p.vertex(i), p.vertex(i + 1))) <= floor_tol)
      return false;
    if (scalar_traits<S>::magnitude(bracket(p.vertex(i - 1), p.vertex(i + 1))) <= floor_tol)
      return false;
  }
  return true;
}
}  // namespace detail

template <class S>
Polygon<S> random_closed_polygon(int n, Rng& rng, int max_attempts = 10000) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Vec2<S>> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) pts.push_back(random_vec<S>(rng));
    Polygon<S> p = make_closed(std::move(pts));
    if (detail::well_separated(p)) return p;
  }
  fail("cli_harness/ExhaustedRejection", "could not sample a nondegenerate closed polygon");
}

// Star-shaped around the origin: all side areas strictly positive.
template <class S>
Polygon<S> random_positive_closed(int n, Rng& rng, int max_attempts = 10000) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<double> ang(n);
    double total = 0;
    for (auto& a : ang) { a = rng.uniform(0.2, 1.0); total += a; }
    std::vector<Vec2<S>> pts;
    double acc = 0;
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      const double theta = 2.0 * std::numbers::pi * acc / total;
      acc += ang[i];
      const double r = rng.uniform(0.6, 1.8);
      const double x = r * std::cos(theta), y = r * std::sin(theta);
      if constexpr (scalar_traits<S>::exact) {
        pts.push_back({S(std::lround(x * 64), 64L), S(std::lround(y * 64), 64L)});
      } else {
        pts.push_back({x, y});
      }
    }
    Polygon<S> p = make_closed(std::move(pts));
    if (!detail::well_separated(p)) ok = false;
    if (ok)
      for (long i = 0; i < n && ok; ++i)
        if (!(bracket(p.vertex(i), p.vertex(i + 1)) > S(0))) ok = false;
    if (ok) return p;
  }
  fail("cli_harness/ExhaustedRejection", "could not sample a positive-area closed polygon");
}

template <class S>
SVCoords<S> random_sv(int n, Rng& rng) {
  SVCoords<S> sv;
  sv.s.reserve(n);
  sv.v.reserve(n);
  for (int i = 0; i < n; ++i) sv.s.push_back(random_scalar<S>(rng));
  for (int i = 0; i < n; ++i) sv.v.push_back(random_scalar<S>(rng));
  return sv;
}

template <class S>
Polygon<S> random_twisted_polygon(int n, Rng& rng, int max_attempts = 10000) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    SVCoords<S> sv = random_sv<S>(n, rng);
    Vec2<S> p0{S(1), S(0)};
    Vec2<S> p1{S(0), sv.s[0]};
    Polygon<S> p = reconstruct(sv, p0, p1);
    try {
      validate_polygon(p);
    } catch (const Error&) {
      continue;
    }
    if (detail::well_separated(p)) return p;
  }
  fail("cli_harness/ExhaustedRejection", "could not sample a twisted polygon");
}

// det-1 matrix as a product of random shears; exact over rationals
template <class S>
Mat2<S> random_sl2(Rng& rng) {
  const S a = random_scalar<S>(rng, false);
  const S b = random_scalar<S>(rng, false);
  const S c = random_scalar<S>(rng, false);
  return Mat2<S>{S(1), a, S(0), S(1)} * Mat2<S>{S(1), S(0), b, S(1)} *
         Mat2<S>{S(1), c, S(0), S(1)};
}

// Unit-side regular n-gon, scaled so every [P_i, P_{i+1}] = 1.
inline Polygon<double> regular_polygon(int n) {
  const double step = 2.0 * std::numbers::pi / n;
  const double r2 = 1.0 / std::sin(step);  // r^2 sin(step) = 1
  const double r = std::sqrt(r2);
  std::vector<Vec2<double>> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i)
    pts.push_back({r * std::cos(i * step), r * std::sin(i * step)});
  return make_closed(std::move(pts));
}

}  // namespace centroaffine
