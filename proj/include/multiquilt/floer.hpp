// Flat-model Floer numerics on the strip R x [0,1]: target C with J = i,
// Lagrangian boundary lines L_0 = R and L_1 = e^{i alpha} R, optional
// polynomial Hamiltonian.  This header: problems, discrete maps, the exact
// mode oracle, residual and Sobolev norms, energy decay diagnostics, the
// C^2 cutoff, pregluing, and strip folding.
#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace multiquilt {

using Complex = std::complex<double>;

/// Transversality margin: alpha within this distance of 0 or pi is rejected
/// (the decay rate min|alpha + k pi| tends to 0).
inline constexpr double kAlphaMargin = 1e-3;

// ---------------------------------------------------------------------------
// Problem data
// ---------------------------------------------------------------------------

/// Real bivariate polynomial H(x,y), sparse coefficients on monomials x^i y^j.
struct Polynomial {
  std::map<std::pair<int, int>, double> coeff;

  bool zero() const { return coeff.empty(); }
  double eval(double x, double y) const {
    double v = 0;
    for (const auto& [m, c] : coeff) v += c * std::pow(x, m.first) * std::pow(y, m.second);
    return v;
  }
  Polynomial dx() const {
    Polynomial g;
    for (const auto& [m, c] : coeff)
      if (m.first > 0) g.coeff[{m.first - 1, m.second}] += c * m.first;
    return g;
  }
  Polynomial dy() const {
    Polynomial g;
    for (const auto& [m, c] : coeff)
      if (m.second > 0) g.coeff[{m.first, m.second - 1}] += c * m.second;
    return g;
  }
};

/// The default Hamiltonian perturbation H = eta (x^3/3 - x y^2).
inline Polynomial cubic_hamiltonian(double eta) {
  Polynomial h;
  if (eta != 0.0) {
    h.coeff[{3, 0}] = eta / 3.0;
    h.coeff[{1, 2}] = -eta;
  }
  return h;
}

struct StripProblem {
  double alpha = M_PI / 2;  ///< boundary-line angle, in (0, pi)
  Polynomial hamiltonian;   ///< H(x,y); X_H = (dH/dy, -dH/dx)
  double S = 8.0;           ///< s half-length: domain [-S, S] x [0,1]
  int n_s = 128;            ///< s intervals (n_s + 1 columns)
  int n_t = 8;              ///< t intervals (n_t + 1 rows)
  double p = 4.0;           ///< Sobolev exponent
  int patches = 1;          ///< quilted strips have > 1 patch

  double h_s() const { return 2.0 * S / n_s; }
  double h_t() const { return 1.0 / n_t; }

  void validate() const {
    if (!(alpha > kAlphaMargin) || !(alpha < M_PI - kAlphaMargin))
      throw std::invalid_argument("near-non-transverse: alpha must lie in (0, pi) with margin");
    if (n_t < 8) throw std::invalid_argument("n_t >= 8 required");
    if (n_s < 4) throw std::invalid_argument("n_s >= 4 required");
    if (!(p > 2.0)) throw std::invalid_argument("p > 2 required");
    if (patches < 1) throw std::invalid_argument("patches >= 1 required");
  }
};

/// Grid maps, one complex array per patch, row-major in (i_s, i_t).
/// j_sign per patch: +1 for the standard structure, -1 for the conjugate one
/// (alternating patches of a folded quilted strip).
struct DiscreteMap {
  int n_s = 0, n_t = 0;
  double S = 0.0;
  std::vector<std::vector<Complex>> patch;
  std::vector<int> j_sign;

  static DiscreteMap zeros(int n_s, int n_t, double S, int patches = 1) {
    DiscreteMap u;
    u.n_s = n_s;
    u.n_t = n_t;
    u.S = S;
    u.patch.assign(static_cast<size_t>(patches),
                   std::vector<Complex>(static_cast<size_t>((n_s + 1) * (n_t + 1)), Complex(0)));
    u.j_sign.assign(static_cast<size_t>(patches), 1);
    for (size_t m = 1; m < u.j_sign.size(); m += 2) u.j_sign[m] = -1;
    return u;
  }
  int patches() const { return static_cast<int>(patch.size()); }
  double s_of(int i) const { return -S + 2.0 * S * i / n_s; }
  double t_of(int j) const { return static_cast<double>(j) / n_t; }
  Complex& at(int m, int i, int j) {
    return patch[static_cast<size_t>(m)][static_cast<size_t>(i * (n_t + 1) + j)];
  }
  Complex at(int m, int i, int j) const {
    return patch[static_cast<size_t>(m)][static_cast<size_t>(i * (n_t + 1) + j)];
  }
};

// ---------------------------------------------------------------------------
// Exact mode oracle
// ---------------------------------------------------------------------------

/// Holomorphic strip solutions u(z) = sum_k c_k e^{(alpha + k pi) z} with
/// real c_k: u(s,0) is real, u(s,1) lies on e^{i alpha} R.  The mode with
/// index k decays toward s -> +inf iff alpha + k pi < 0 (k <= -1) and toward
/// s -> -inf iff alpha + k pi > 0 (k >= 0).
struct ModeSet {
  double alpha = M_PI / 2;
  std::map<int, double> c;  ///< k -> real coefficient

  double rate(int k) const { return alpha + k * M_PI; }
  Complex eval(Complex z) const {
    Complex u(0);
    for (const auto& [k, ck] : c) u += ck * std::exp(rate(k) * z);
    return u;
  }
  Complex deriv(Complex z) const {
    Complex u(0);
    for (const auto& [k, ck] : c) u += ck * rate(k) * std::exp(rate(k) * z);
    return u;
  }
  /// 2 * min |alpha + k pi| over active modes: the energy decay rate kappa.
  double kappa() const {
    double m = 0.0;
    bool first = true;
    for (const auto& [k, ck] : c) {
      if (ck == 0.0) continue;
      double r = std::abs(rate(k));
      if (first || r < m) m = r;
      first = false;
    }
    if (first) throw std::invalid_argument("exact_modes: empty coefficient set");
    return 2.0 * m;
  }
};

inline DiscreteMap exact_modes(double alpha, const std::map<int, double>& coeffs, double S,
                               int n_s, int n_t) {
  ModeSet m{alpha, coeffs};
  m.kappa();  // rejects the empty set
  DiscreteMap u = DiscreteMap::zeros(n_s, n_t, S);
  for (int i = 0; i <= n_s; ++i)
    for (int j = 0; j <= n_t; ++j) u.at(0, i, j) = m.eval(Complex(u.s_of(i), u.t_of(j)));
  return u;
}

// ---------------------------------------------------------------------------
// Residual and norms
// ---------------------------------------------------------------------------

namespace detail {

/// Second-order d/ds at column i (centered interior, one-sided at ends).
inline Complex dds(const DiscreteMap& u, int m, int i, int j, double h) {
  if (i == 0) return (-3.0 * u.at(m, 0, j) + 4.0 * u.at(m, 1, j) - u.at(m, 2, j)) / (2 * h);
  if (i == u.n_s)
    return (3.0 * u.at(m, i, j) - 4.0 * u.at(m, i - 1, j) + u.at(m, i - 2, j)) / (2 * h);
  return (u.at(m, i + 1, j) - u.at(m, i - 1, j)) / (2 * h);
}
inline Complex ddt(const DiscreteMap& u, int m, int i, int j, double h) {
  if (j == 0) return (-3.0 * u.at(m, i, 0) + 4.0 * u.at(m, i, 1) - u.at(m, i, 2)) / (2 * h);
  if (j == u.n_t)
    return (3.0 * u.at(m, i, j) - 4.0 * u.at(m, i, j - 1) + u.at(m, i, j - 2)) / (2 * h);
  return (u.at(m, i, j + 1) - u.at(m, i, j - 1)) / (2 * h);
}

/// Trapezoid quadrature weight of node (i,j).
inline double quad_weight(int i, int j, int n_s, int n_t, double h_s, double h_t) {
  double w = h_s * h_t;
  if (i == 0 || i == n_s) w *= 0.5;
  if (j == 0 || j == n_t) w *= 0.5;
  return w;
}

inline Complex hamiltonian_vf(const Polynomial& H, const Polynomial& Hx, const Polynomial& Hy,
                              Complex u) {
  if (H.zero()) return Complex(0);
  double x = u.real(), y = u.imag();
  return Complex(Hy.eval(x, y), -Hx.eval(x, y));  // X_H = (H_y, -H_x)
}

}  // namespace detail

/// Check the boundary rows lie on their Lagrangian lines.
inline double boundary_violation(const StripProblem& pr, const DiscreteMap& u) {
  double worst = 0.0;
  const Complex e_alpha = std::exp(Complex(0, pr.alpha));
  for (int m = 0; m < u.patches(); ++m)
    for (int i = 0; i <= u.n_s; ++i) {
      // standard patches: t=0 on R, t=1 on e^{i alpha} R; reflected
      // (conjugate-structure) patches swap the two lines
      bool std_patch = u.j_sign[static_cast<size_t>(m)] > 0;
      Complex lo_dir = std_patch ? Complex(1) : e_alpha;
      Complex hi_dir = std_patch ? e_alpha : Complex(1);
      worst = std::max(worst, std::abs((u.at(m, i, 0) / lo_dir).imag()));
      worst = std::max(worst, std::abs((u.at(m, i, u.n_t) / hi_dir).imag()));
      // seam correspondence: patch m row t=1 meets patch m+1 row t=0
      if (m + 1 < u.patches())
        worst = std::max(worst, std::abs(u.at(m, i, u.n_t) - u.at(m + 1, i, 0)));
    }
  return worst;
}

/// F(u) = d_s u + j_sign * i (d_t u - X_H(u)) per patch, at every node.
inline DiscreteMap residual_field(const StripProblem& pr, const DiscreteMap& u) {
  pr.validate();
  if (u.n_s != pr.n_s || u.n_t != pr.n_t || u.patches() != pr.patches)
    throw std::invalid_argument("residual: grid shape mismatch");
  const Polynomial Hx = pr.hamiltonian.dx(), Hy = pr.hamiltonian.dy();
  DiscreteMap F = DiscreteMap::zeros(u.n_s, u.n_t, u.S, u.patches());
  F.j_sign = u.j_sign;
  for (int m = 0; m < u.patches(); ++m) {
    const int sgn = u.j_sign[static_cast<size_t>(m)];
    const Complex J(0, sgn);
    // reflected patches carry the pulled-back perturbation: the t-reversal
    // flips both the complex structure and the Hamiltonian term, so the fold
    // correspondence transports residual fields exactly
    const double hsgn = static_cast<double>(sgn);
    for (int i = 0; i <= u.n_s; ++i)
      for (int j = 0; j <= u.n_t; ++j)
        F.at(m, i, j) =
            detail::dds(u, m, i, j, pr.h_s()) +
            J * (detail::ddt(u, m, i, j, pr.h_t()) -
                 hsgn * detail::hamiltonian_vf(pr.hamiltonian, Hx, Hy, u.at(m, i, j)));
  }
  return F;
}

/// ||v||_{0,p} with trapezoid weights, summed over patches.
inline double norm_0p(const DiscreteMap& v, double p) {
  double h_s = 2.0 * v.S / v.n_s, h_t = 1.0 / v.n_t;
  double acc = 0.0;
  for (int m = 0; m < v.patches(); ++m)
    for (int i = 0; i <= v.n_s; ++i)
      for (int j = 0; j <= v.n_t; ++j)
        acc += detail::quad_weight(i, j, v.n_s, v.n_t, h_s, h_t) *
               std::pow(std::abs(v.at(m, i, j)), p);
  return std::pow(acc, 1.0 / p);
}

/// ||v||_{1,p}^p = sum w (|v|^p + |d_s v|^p + |d_t v|^p).
inline double norm_1p(const DiscreteMap& v, double p) {
  double h_s = 2.0 * v.S / v.n_s, h_t = 1.0 / v.n_t;
  double acc = 0.0;
  for (int m = 0; m < v.patches(); ++m)
    for (int i = 0; i <= v.n_s; ++i)
      for (int j = 0; j <= v.n_t; ++j) {
        double w = detail::quad_weight(i, j, v.n_s, v.n_t, h_s, h_t);
        acc += w * (std::pow(std::abs(v.at(m, i, j)), p) +
                    std::pow(std::abs(detail::dds(v, m, i, j, h_s)), p) +
                    std::pow(std::abs(detail::ddt(v, m, i, j, h_t)), p));
      }
  return std::pow(acc, 1.0 / p);
}

inline double sup_norm(const DiscreteMap& v) {
  double m = 0.0;
  for (const auto& pa : v.patch)
    for (const Complex& z : pa) m = std::max(m, std::abs(z));
  return m;
}

inline double residual_norm(const StripProblem& pr, const DiscreteMap& u) {
  return norm_0p(residual_field(pr, u), pr.p);
}

// ---------------------------------------------------------------------------
// Energy decay diagnostics
// ---------------------------------------------------------------------------

struct EnergyProfile {
  std::vector<double> f;      ///< f(s) = 1/2 int |d_t u|^2 dt per column
  std::vector<double> e;      ///< e(s,t) = |d_s u|^2 grid (patch 0)
  double E = 0.0;             ///< total energy, quadrature of e
  double kappa_hat = 0.0;     ///< least-squares slope of log f over the window
  int fit_lo = 0, fit_hi = 0; ///< fitted column window
};

/// Energy densities and the fitted decay rate of f over columns
/// [fit_lo, fit_hi] (defaults: the right half, away from the ends).
inline EnergyProfile energy_profile(const DiscreteMap& u, int fit_lo = -1, int fit_hi = -1) {
  const int n_s = u.n_s, n_t = u.n_t;
  const double h_s = 2.0 * u.S / n_s, h_t = 1.0 / n_t;
  EnergyProfile ep;
  ep.f.assign(static_cast<size_t>(n_s + 1), 0.0);
  ep.e.assign(static_cast<size_t>((n_s + 1) * (n_t + 1)), 0.0);
  for (int i = 0; i <= n_s; ++i) {
    for (int j = 0; j <= n_t; ++j) {
      double ds2 = std::norm(detail::dds(u, 0, i, j, h_s));
      double dt2 = std::norm(detail::ddt(u, 0, i, j, h_t));
      ep.e[static_cast<size_t>(i * (n_t + 1) + j)] = ds2;
      double wt = (j == 0 || j == n_t) ? 0.5 * h_t : h_t;
      ep.f[static_cast<size_t>(i)] += 0.5 * wt * dt2;
      double w = detail::quad_weight(i, j, n_s, n_t, h_s, h_t);
      ep.E += w * ds2;
    }
  }
  if (fit_lo < 0) fit_lo = n_s / 2 + n_s / 8;
  if (fit_hi < 0) fit_hi = n_s - n_s / 8;
  ep.fit_lo = fit_lo;
  ep.fit_hi = fit_hi;
  // least-squares slope of log f(s)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int i = fit_lo; i <= fit_hi; ++i) {
    double fi = ep.f[static_cast<size_t>(i)];
    if (fi < 1e-300) throw std::invalid_argument("energy_profile: degenerate fit (f ~ 0)");
    double x = u.s_of(i), y = std::log(fi);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  ep.kappa_hat = -slope;  // f ~ e^{-kappa s} on a decaying end
  return ep;
}

/// min over the window of the second-difference ratio f''(s)/f(s).
inline double check_convexity(const DiscreteMap& u, int lo, int hi) {
  EnergyProfile ep = energy_profile(u);
  const double h_s = 2.0 * u.S / u.n_s;
  if (lo < 1 || hi > u.n_s - 1 || lo > hi)
    throw std::invalid_argument("check_convexity: window must be interior");
  double worst = 0.0;
  bool first = true;
  for (int i = lo; i <= hi; ++i) {
    double f0 = ep.f[static_cast<size_t>(i)];
    if (f0 < 1e-14) throw std::invalid_argument("check_convexity: degenerate window (f ~ 0)");
    double fpp = (ep.f[static_cast<size_t>(i + 1)] - 2 * f0 + ep.f[static_cast<size_t>(i - 1)]) /
                 (h_s * h_s);
    double r = fpp / f0;
    if (first || r < worst) worst = r;
    first = false;
  }
  return worst;
}

/// (E over the inner window [-S+T, S-T], the bound e^{-kappa T} E(0)).
inline std::pair<double, double> check_quantization(const DiscreteMap& u, double T, double kappa) {
  const int n_s = u.n_s, n_t = u.n_t;
  const double h_s = 2.0 * u.S / n_s, h_t = 1.0 / n_t;
  if (!(T >= 0.0) || T >= u.S) throw std::invalid_argument("check_quantization: need 0 <= T < S");
  double E_T = 0.0, E_0 = 0.0;
  for (int i = 0; i <= n_s; ++i) {
    double s = u.s_of(i);
    for (int j = 0; j <= n_t; ++j) {
      double w = detail::quad_weight(i, j, n_s, n_t, h_s, h_t);
      double ds2 = std::norm(detail::dds(u, 0, i, j, h_s));
      E_0 += w * ds2;
      if (s >= -u.S + T && s <= u.S - T) E_T += w * ds2;
    }
  }
  return {E_T, std::exp(-kappa * T) * E_0};
}

// ---------------------------------------------------------------------------
// Cutoff and pregluing
// ---------------------------------------------------------------------------

/// The unique quintic C^2 cutoff with beta(s) = 1 for s <= -1 and
/// beta(s) = 0 for s >= 0: beta(-1+x) = 1 - (10x^3 - 15x^4 + 6x^5).
inline double cutoff_beta(double s) {
  if (s <= -1.0) return 1.0;
  if (s >= 0.0) return 0.0;
  double x = s + 1.0;
  return 1.0 - x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
}
inline double cutoff_beta_prime(double s) {
  if (s <= -1.0 || s >= 0.0) return 0.0;
  double x = s + 1.0;
  return -x * x * (30.0 - 60.0 * x + 30.0 * x * x);
}

/// Closed-form pregluing of two mode sets: m1 decays toward s -> +inf
/// (all rates < 0), m2 toward s -> -inf (all rates > 0).  The preglued map
/// is beta(s - R/2) m1(z + R/2) + beta(-s - R/2) m2(z - R/2); in the flat
/// target the corrected exponential splicing is exactly vector addition.
struct PregluedModes {
  ModeSet m1, m2;
  double R = 8.0;

  Complex eval(Complex z) const {
    double s = z.real();
    return cutoff_beta(s - R / 2) * m1.eval(z + R / 2) +
           cutoff_beta(-s - R / 2) * m2.eval(z - R / 2);
  }
  /// Analytic residual d_s u + i d_t u: only the cutoff-derivative terms
  /// survive (the mode pieces are holomorphic), so the residual is supported
  /// exactly on the bands s in [R/2 - 1, R/2] and s in [-R/2, -R/2 + 1].
  Complex analytic_residual(Complex z) const {
    double s = z.real();
    return cutoff_beta_prime(s - R / 2) * m1.eval(z + R / 2) -
           cutoff_beta_prime(-s - R / 2) * m2.eval(z - R / 2);
  }
};

inline PregluedModes make_preglued_modes(const ModeSet& m1, const ModeSet& m2, double R) {
  if (!(R > 0)) throw std::invalid_argument("preglue: R must be positive");
  for (const auto& [k, ck] : m1.c)
    if (ck != 0.0 && m1.rate(k) >= 0)
      throw std::invalid_argument("preglue: m1 must decay toward s -> +inf");
  for (const auto& [k, ck] : m2.c)
    if (ck != 0.0 && m2.rate(k) <= 0)
      throw std::invalid_argument("preglue: m2 must decay toward s -> -inf");
  if (m1.alpha != m2.alpha) throw std::invalid_argument("preglue: mismatched alpha");
  return PregluedModes{m1, m2, R};
}

inline DiscreteMap sample_preglued(const PregluedModes& pg, double S, int n_s, int n_t) {
  DiscreteMap u = DiscreteMap::zeros(n_s, n_t, S);
  for (int i = 0; i <= n_s; ++i)
    for (int j = 0; j <= n_t; ++j) u.at(0, i, j) = pg.eval(Complex(u.s_of(i), u.t_of(j)));
  return u;
}

/// The pregluing error epsilon(R) = ||F(u_R)||_{0,p}, evaluated with the
/// analytic derivatives of the mode pieces so the measurement isolates the
/// cutoff error e^{-kappa R / 2} from grid discretization error.
inline double preglue_epsilon(const PregluedModes& pg, double S, int n_s, int n_t, double p) {
  DiscreteMap F = DiscreteMap::zeros(n_s, n_t, S);
  for (int i = 0; i <= n_s; ++i)
    for (int j = 0; j <= n_t; ++j) F.at(0, i, j) = pg.analytic_residual(Complex(F.s_of(i), F.t_of(j)));
  return norm_0p(F, p);
}

/// Grid-level pregluing of two sampled maps (types 1|2|3 share the formula
/// in the flat model; quilted types apply it per patch).  Shifts by R/2 must
/// land on grid columns; endpoint columns at the glued ends must lie within
/// `tol` of the intersection point 0.
inline DiscreteMap preglue(const DiscreteMap& u1, const DiscreteMap& u2, double R, int type = 3,
                           double tol = 1e-2) {
  if (type < 1 || type > 3) throw std::invalid_argument("preglue: type must be 1, 2 or 3");
  if (!(R > 0)) throw std::invalid_argument("preglue: R must be positive");
  if (u1.n_s != u2.n_s || u1.n_t != u2.n_t || u1.S != u2.S || u1.patches() != u2.patches())
    throw std::invalid_argument("preglue: grid mismatch");
  const double h_s = 2.0 * u1.S / u1.n_s;
  const double shift_cols_f = (R / 2) / h_s;
  const int shift_cols = static_cast<int>(std::lround(shift_cols_f));
  if (std::abs(shift_cols_f - shift_cols) > 1e-9)
    throw std::invalid_argument("preglue: R/2 must be a multiple of the s grid spacing");
  // endpoint check: the tails being glued must approach the intersection pt
  for (int m = 0; m < u1.patches(); ++m)
    for (int j = 0; j <= u1.n_t; ++j) {
      if (std::abs(u1.at(m, u1.n_s, j)) > tol || std::abs(u2.at(m, 0, j)) > tol)
        throw std::invalid_argument("preglue: endpoint mismatch beyond tolerance");
    }
  DiscreteMap u = DiscreteMap::zeros(u1.n_s, u1.n_t, u1.S, u1.patches());
  u.j_sign = u1.j_sign;
  for (int m = 0; m < u.patches(); ++m)
    for (int i = 0; i <= u.n_s; ++i) {
      double s = u.s_of(i);
      double b1 = cutoff_beta(s - R / 2), b2 = cutoff_beta(-s - R / 2);
      for (int j = 0; j <= u.n_t; ++j) {
        Complex v(0);
        if (b1 != 0.0 && i + shift_cols <= u.n_s) v += b1 * u1.at(m, i + shift_cols, j);
        if (b2 != 0.0 && i - shift_cols >= 0) v += b2 * u2.at(m, i - shift_cols, j);
        u.at(m, i, j) = v;
      }
    }
  return u;
}

// ---------------------------------------------------------------------------
// Folding
// ---------------------------------------------------------------------------

/// Unfold a single-patch map into an n-patch quilted strip: patch m carries
/// u(s, t) for odd m and the t-reflection for even m, with the conjugate
/// complex structure on even patches (the fold reflection convention).
inline DiscreteMap unfold_strip(const DiscreteMap& u, int n) {
  if (u.patches() != 1) throw std::invalid_argument("unfold_strip: expects a single patch");
  if (n < 1) throw std::invalid_argument("unfold_strip: n >= 1");
  DiscreteMap q = DiscreteMap::zeros(u.n_s, u.n_t, u.S, n);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i <= u.n_s; ++i)
      for (int j = 0; j <= u.n_t; ++j)
        q.at(m, i, j) = (m % 2 == 0) ? u.at(0, i, j) : u.at(0, i, u.n_t - j);
  return q;
}

/// Fold an n-patch quilted strip back to the single-strip map (inverse of
/// unfold_strip on its image; uses patch 0).
inline DiscreteMap fold_strip(const DiscreteMap& q) {
  DiscreteMap u = DiscreteMap::zeros(q.n_s, q.n_t, q.S, 1);
  for (int i = 0; i <= q.n_s; ++i)
    for (int j = 0; j <= q.n_t; ++j) u.at(0, i, j) = q.at(0, i, j);
  return u;
}

}  // namespace multiquilt
