#pragma once

#include <utility>
#include <vector>

#include "centroaffine/polygon.hpp"
#include "centroaffine/polynomial.hpp"

namespace centroaffine {

// g_i = v[i]/(s[i-1] s[i]): the natural per-vertex moduli ratios.
template <class S>
std::vector<S> g_ratios(const SVCoords<S>& sv) {
  std::vector<S> g;
  g.reserve(sv.n());
  for (long i = 0; i < sv.n(); ++i) g.push_back(sv.v_at(i) / (sv.s_at(i - 1) * sv.s_at(i)));
  return g;
}

/** All cyclically sparse subsets of {0..n-1}: no two elements cyclically
 *  consecutive (the empty set counts). Their number is the Lucas number L_n. */
inline std::vector<std::vector<int>> sparse_subsets(int n) {
  if (n < 3) fail("integrals_flow/WrongArity", "sparse_subsets needs n >= 3");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // backtracking over sorted subsets; cyclic adjacency checked on the fly
  auto adm = [&](int cand) {
    if (!cur.empty() && cand == cur.back() + 1) return false;
    if (cand == n - 1 && !cur.empty() && cur.front() == 0) return false;
    return true;
  };
  auto rec = [&](auto&& self, int next) -> void {
    out.push_back(cur);
    for (int k = next; k < n; ++k) {
      if (!adm(k)) continue;
      cur.push_back(k);
      self(self, k + 2);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/** The integrals F_0..F_q, q = floor((n-1)/2), as coefficients of the sparse
 *  generating function in t = lambda^{-2}:
 *    sum over sparse I of  prod_{j: j,j+1 not in I} g_j * prod_{i in I} (t - 1/s[i-1]^2).
 *  F_k is homogeneous of degree n-2k in the v variables. For even n the t^{n/2}
 *  coefficient is the constant 2 and is not returned. */
template <class S>
std::vector<S> integrals_F(const SVCoords<S>& sv) {
  validate_sv(sv);
  const int n = sv.n();
  const std::vector<S> g = g_ratios(sv);
  std::vector<S> beta;  // 1/s[i-1]^2 for factor i
  beta.reserve(n);
  for (long i = 0; i < n; ++i) {
    const S& sm = sv.s_at(i - 1);
    beta.push_back(S(1) / (sm * sm));
  }
  std::vector<S> acc(n / 2 + 1, S(0));
  for (const auto& I : sparse_subsets(n)) {
    std::vector<bool> in(n, false);
    for (int i : I) in[i] = true;
    S coef(1);
    for (int j = 0; j < n; ++j)
      if (!in[j] && !in[(j + 1) % n]) coef *= g[j];
    std::vector<S> poly{S(1)};  // prod (t - beta_i), ascending in t
    for (int i : I) {
      std::vector<S> nxt(poly.size() + 1, S(0));
      for (size_t k = 0; k < poly.size(); ++k) {
        nxt[k + 1] += poly[k];
        nxt[k] -= beta[i] * poly[k];
      }
      poly = std::move(nxt);
    }
    for (size_t k = 0; k < poly.size(); ++k) acc[k] += coef * poly[k];
  }
  acc.resize((n + 1) / 2);  // drop the trivial constant for even n
  return acc;
}

/** Trace of the Lax matrix as a polynomial in the spectral parameter, computed
 *  through the continuant route: Tr = D_{0,n} - b_0 D_{1,n-1} with
 *  a_i = lambda g_i, b_i = lambda^2/s[i-1]^2 - 1. Independent of integrals_F;
 *  its lambda^{n-2k} coefficient equals F_k. Odd intermediate degrees vanish. */
template <class S>
Poly<S> lax_trace_poly(const SVCoords<S>& sv) {
  validate_sv(sv);
  const long n = sv.n();
  const std::vector<S> g = g_ratios(sv);
  std::vector<Poly<S>> a, b;
  a.reserve(n);
  b.reserve(n);
  for (long i = 0; i < n; ++i) {
    a.push_back(Poly<S>::monomial(g[i], 1));
    const S& sm = sv.s_at(i - 1);
    b.push_back(Poly<S>(std::vector<S>{S(-1), S(0), S(1) / (sm * sm)}));
  }
  return continuant(a, b, 0, n - 1) - b[0] * continuant(a, b, 1, n - 2);
}

// det of the Lax matrix at a numeric spectral value: prod (lambda^2/s[i]^2 - 1).
template <class S>
S lax_det(const SVCoords<S>& sv, const S& lambda) {
  S d(1);
  for (int i = 0; i < sv.n(); ++i)
    d *= lambda * lambda / (sv.s[i] * sv.s[i]) - S(1);
  return d;
}

/** (Tr L)^2 / det L at the given spectral value; conjugation invariant of the
 *  Lax class, preserved by the c-relation. */
template <class S>
S conjugacy_invariant(const SVCoords<S>& sv, const S& lambda) {
  const S det = lax_det(sv, lambda);
  if (near_zero(det, 1e-14))
    fail("integrals_flow/SingularSpectral", "lambda^2 equals some s[i]^2");
  const S tr = lax_trace_poly(sv).eval(lambda);
  return tr * tr / det;
}

/** Residuals of the two relations cutting the integrals down on closed
 *  polygons:  F_0 * prod(s) - 2  and  F_1 + (1/2 sum s^2) F_0.  Both vanish
 *  identically on closed polygons (exactly over rationals). */
template <class S>
std::pair<S, S> closed_relations_defect(const SVCoords<S>& sv) {
  const std::vector<S> F = integrals_F(sv);
  S prod(1), sumsq(0);
  for (const S& x : sv.s) {
    prod *= x;
    sumsq += x * x;
  }
  S r0 = F[0] * prod - S(2);
  S r1 = F[1] + sumsq / S(2) * F[0];
  return {r0, r1};
}

/** Infinitesimal vector field of the correspondence on the moduli of odd-gons:
 *    vdot[i] = v[i] * sum_{k=1}^{n-1} (-1)^{k-1} g_{i+k}  +  s[i]/s[i-1] - s[i-1]/s[i],
 *  with sdot = 0. Even n is unsupported: the defining linear system is singular
 *  there (one-dimensional kernel). */
template <class S>
std::vector<S> xi_field(const SVCoords<S>& sv) {
  validate_sv(sv);
  const int n = sv.n();
  if (n % 2 == 0)
    fail("integrals_flow/EvenArity", "the vector field needs odd n");
  const std::vector<S> g = g_ratios(sv);
  std::vector<S> vdot;
  vdot.reserve(n);
  for (long i = 0; i < n; ++i) {
    S alt(0);
    for (int k = 1; k <= n - 1; ++k) {
      const S& gk = g[(i + k) % n];
      alt = (k % 2 == 1) ? alt + gk : alt - gk;
    }
    vdot.push_back(sv.v_at(i) * alt + sv.s_at(i) / sv.s_at(i - 1) -
                   sv.s_at(i - 1) / sv.s_at(i));
  }
  return vdot;
}

// Dressing-chain variables g_i = v[i]/(s[i-1]s[i]), beta_i = -1/s[i-1]^2.
template <class S>
struct DressingState {
  std::vector<S> g;
  std::vector<S> beta;
};

// Pushforward of xi_field equals kXiDressingScale * dressing_rhs (exact identity,
// the constant was fitted once on random data and frozen).
inline constexpr int kXiDressingScale = -1;

template <class S>
DressingState<S> dressing_state(const SVCoords<S>& sv) {
  validate_sv(sv);
  if (sv.n() % 2 == 0) fail("integrals_flow/EvenArity", "dressing chain needs odd n");
  DressingState<S> st;
  st.g = g_ratios(sv);
  st.beta.reserve(sv.n());
  for (long i = 0; i < sv.n(); ++i) {
    const S& sm = sv.s_at(i - 1);
    st.beta.push_back(S(-1) / (sm * sm));
  }
  return st;
}

template <class S>
std::vector<S> dressing_rhs(const DressingState<S>& st) {
  const int n = static_cast<int>(st.g.size());
  if (n % 2 == 0) fail("integrals_flow/EvenArity", "dressing chain needs odd n");
  std::vector<S> gdot;
  gdot.reserve(n);
  for (int i = 0; i < n; ++i) {
    S alt(0);
    for (int k = 1; k <= n - 1; ++k) {
      const S& gk = st.g[(i + k) % n];
      alt = (k % 2 == 1) ? alt + gk : alt - gk;
    }
    gdot.push_back(-st.g[i] * alt + st.beta[i] - st.beta[(i + 1) % n]);
  }
  return gdot;
}

/** Classical fixed-step RK4 integration of xi_field over [0, T]; the side
 *  areas stay constant along the flow. */
inline SVCoords<double> flow(SVCoords<double> sv, double T, double dt) {
  validate_sv(sv);
  if (sv.n() % 2 == 0) fail("integrals_flow/EvenArity", "flow needs odd n");
  if (dt <= 0) fail("integrals_flow/StepBlowup", "dt must be positive");
  if (T == 0) return sv;
  const int n = sv.n();
  auto deriv = [&](const std::vector<double>& v) {
    SVCoords<double> tmp{sv.s, v};
    return xi_field(tmp);
  };
  auto guard = [&](const std::vector<double>& v) {
    for (double x : v) {
      if (!std::isfinite(x) || std::abs(x) > 1e12)
        fail("integrals_flow/StepBlowup", "flow left the admissible region");
      if (x == 0.0) fail("integrals_flow/StepBlowup", "diagonal area hit zero");
    }
  };
  double t = 0;
  while (t < T) {
    const double h = std::min(dt, T - t);
    const std::vector<double>& v = sv.v;
    std::vector<double> k1 = deriv(v);
    std::vector<double> tmp(n);
    for (int i = 0; i < n; ++i) tmp[i] = v[i] + 0.5 * h * k1[i];
    std::vector<double> k2 = deriv(tmp);
    for (int i = 0; i < n; ++i) tmp[i] = v[i] + 0.5 * h * k2[i];
    std::vector<double> k3 = deriv(tmp);
    for (int i = 0; i < n; ++i) tmp[i] = v[i] + h * k3[i];
    std::vector<double> k4 = deriv(tmp);
    for (int i = 0; i < n; ++i)
      sv.v[i] = v[i] + h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    guard(sv.v);
    t += h;
  }
  return sv;
}

}  // namespace centroaffine
