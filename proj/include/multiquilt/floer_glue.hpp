// Linearization, Newton/IFT gluing, quadratic-estimate probe, embedding
// constants, Gromov-neighborhood membership and the surjectivity probe for
// the flat strip model.
//
// Discrete well-posedness: the nonlinear equation is collocated at the
// interior columns i = 1..n_s-1 (full complex equation at interior t rows,
// tangential component at the two Lagrangian boundary rows), while the two
// end columns are held at the preglued values.  Pinning the ends is the
// grid analogue of the decay conditions that make the linearized operator
// on the infinite strip invertible transverse to the gluing family; it
// yields a square, generically invertible system, so the minimum-norm
// Newton correction coincides with the unique solution of the linearized
// collocation equations.
#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "floer.hpp"
#include "rng.hpp"

namespace multiquilt {

// ---------------------------------------------------------------------------
// Linearized operator (full-field action)
// ---------------------------------------------------------------------------

namespace detail {

/// Jacobian of X_H = (H_y, -H_x) at u, applied to xi (real-linear).
inline Complex dx_hamiltonian_vf(const Polynomial& Hxx, const Polynomial& Hxy,
                                 const Polynomial& Hyy, Complex u, Complex xi) {
  double x = u.real(), y = u.imag();
  double a = xi.real(), b = xi.imag();
  double hxx = Hxx.eval(x, y), hxy = Hxy.eval(x, y), hyy = Hyy.eval(x, y);
  // D(H_y) = (H_xy, H_yy), D(-H_x) = (-H_xx, -H_xy)
  return Complex(hxy * a + hyy * b, -hxx * a - hxy * b);
}

}  // namespace detail

/// dF_u(xi) = d_s xi + J (d_t xi - j_sign DX_H(u) xi), at every node; the
/// Frechet derivative of residual_field at u on boundary-respecting
/// variations.  With H = 0 this is the discrete dbar operator.
inline DiscreteMap linearized_field(const StripProblem& pr, const DiscreteMap& u,
                                    const DiscreteMap& xi) {
  if (xi.n_s != u.n_s || xi.n_t != u.n_t || xi.patches() != u.patches())
    throw std::invalid_argument("linearize: variation shape mismatch");
  const Polynomial Hx = pr.hamiltonian.dx(), Hy = pr.hamiltonian.dy();
  const Polynomial Hxx = Hx.dx(), Hxy = Hx.dy(), Hyy = Hy.dy();
  DiscreteMap L = DiscreteMap::zeros(u.n_s, u.n_t, u.S, u.patches());
  L.j_sign = u.j_sign;
  for (int m = 0; m < u.patches(); ++m) {
    const int sgn = u.j_sign[static_cast<size_t>(m)];
    const Complex J(0, sgn);
    for (int i = 0; i <= u.n_s; ++i)
      for (int j = 0; j <= u.n_t; ++j) {
        Complex dxh = pr.hamiltonian.zero()
                          ? Complex(0)
                          : detail::dx_hamiltonian_vf(Hxx, Hxy, Hyy, u.at(m, i, j), xi.at(m, i, j));
        L.at(m, i, j) = detail::dds(xi, m, i, j, pr.h_s()) +
                        J * (detail::ddt(xi, m, i, j, pr.h_t()) - static_cast<double>(sgn) * dxh);
      }
  }
  return L;
}

struct LinearOp {
  StripProblem pr;
  DiscreteMap u;
  DiscreteMap apply(const DiscreteMap& xi) const { return linearized_field(pr, u, xi); }
};

inline LinearOp linearize(const StripProblem& pr, const DiscreteMap& u) {
  pr.validate();
  return LinearOp{pr, u};
}

// ---------------------------------------------------------------------------
// Collocation system (single patch)
// ---------------------------------------------------------------------------

namespace detail {

/// Real DOF layout per interior column (i = c+1, c = 0..n_s-2), 2 n_t per
/// column: j=0 -> 1 real (xi = a); j=1..n_t-1 -> (Re, Im); j=n_t -> 1 real
/// (xi = b e^{i alpha}).
struct DofLayout {
  int n_s, n_t;
  double alpha;

  int per_col() const { return 2 * n_t; }
  int count() const { return (n_s - 1) * per_col(); }
  int base(int i) const { return (i - 1) * per_col(); }
  bool interior_col(int i) const { return i >= 1 && i <= n_s - 1; }

  /// complex direction of each dof at its node
  // j=0 dof: dir 1; interior dofs: dir 1 and i; j=n_t dof: dir e^{i alpha}
  void node_dofs(int i, int j, int* idx, Complex* dir, int* n) const {
    if (!interior_col(i)) {
      *n = 0;  // pinned end column
      return;
    }
    int b = base(i);
    if (j == 0) {
      idx[0] = b;
      dir[0] = Complex(1);
      *n = 1;
    } else if (j == n_t) {
      idx[0] = b + per_col() - 1;
      dir[0] = std::exp(Complex(0, alpha));
      *n = 1;
    } else {
      idx[0] = b + 1 + 2 * (j - 1);
      idx[1] = idx[0] + 1;
      dir[0] = Complex(1);
      dir[1] = Complex(0, 1);
      *n = 2;
    }
  }
};

}  // namespace detail

/// Square Newton system for a single-patch strip problem with pinned end
/// columns.  Equations per interior column: tangential component at j=0 and
/// j=n_t, full complex equation at interior j.
class GlueSystem {
 public:
  GlueSystem(const StripProblem& pr) : pr_(pr), lay_{pr.n_s, pr.n_t, pr.alpha} {
    pr.validate();
    if (pr.patches != 1) throw std::invalid_argument("newton_glue: single-patch problems only");
  }

  int dof_count() const { return lay_.count(); }

  /// Equation components of a full residual field, in DOF row layout.
  Eigen::VectorXd equations(const DiscreteMap& F) const {
    Eigen::VectorXd r(lay_.count());
    const Complex em = std::exp(Complex(0, -pr_.alpha));
    for (int i = 1; i <= pr_.n_s - 1; ++i) {
      int b = lay_.base(i);
      r[b] = F.at(0, i, 0).real();
      for (int j = 1; j <= pr_.n_t - 1; ++j) {
        Complex v = F.at(0, i, j);
        r[b + 1 + 2 * (j - 1)] = v.real();
        r[b + 2 + 2 * (j - 1)] = v.imag();
      }
      r[b + lay_.per_col() - 1] = (em * F.at(0, i, pr_.n_t)).real();
    }
    return r;
  }

  /// Weighted 0,p norm over the equation components.
  double eq_norm(const Eigen::VectorXd& r) const {
    double h_s = pr_.h_s(), h_t = pr_.h_t();
    double acc = 0.0;
    for (int i = 1; i <= pr_.n_s - 1; ++i) {
      int b = lay_.base(i);
      acc += detail::quad_weight(i, 0, pr_.n_s, pr_.n_t, h_s, h_t) *
             std::pow(std::abs(r[b]), pr_.p);
      for (int j = 1; j <= pr_.n_t - 1; ++j) {
        double re = r[b + 1 + 2 * (j - 1)], im = r[b + 2 + 2 * (j - 1)];
        acc += detail::quad_weight(i, j, pr_.n_s, pr_.n_t, h_s, h_t) *
               std::pow(std::hypot(re, im), pr_.p);
      }
      acc += detail::quad_weight(i, pr_.n_t, pr_.n_s, pr_.n_t, h_s, h_t) *
             std::pow(std::abs(r[b + lay_.per_col() - 1]), pr_.p);
    }
    return std::pow(acc, 1.0 / pr_.p);
  }

  /// Expand a DOF vector into a boundary-respecting field (end columns 0).
  DiscreteMap field(const Eigen::VectorXd& x) const {
    DiscreteMap xi = DiscreteMap::zeros(pr_.n_s, pr_.n_t, pr_.S);
    const Complex ea = std::exp(Complex(0, pr_.alpha));
    for (int i = 1; i <= pr_.n_s - 1; ++i) {
      int b = lay_.base(i);
      xi.at(0, i, 0) = Complex(x[b], 0);
      for (int j = 1; j <= pr_.n_t - 1; ++j)
        xi.at(0, i, j) = Complex(x[b + 1 + 2 * (j - 1)], x[b + 2 + 2 * (j - 1)]);
      xi.at(0, i, pr_.n_t) = x[b + lay_.per_col() - 1] * ea;
    }
    return xi;
  }

  /// Assemble the linearized collocation matrix at u.
  Eigen::SparseMatrix<double> assemble(const DiscreteMap& u) const {
    const Polynomial Hx = pr_.hamiltonian.dx(), Hy = pr_.hamiltonian.dy();
    const Polynomial Hxx = Hx.dx(), Hxy = Hx.dy(), Hyy = Hy.dy();
    const double h_s = pr_.h_s(), h_t = pr_.h_t();
    const Complex J(0, 1);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(lay_.count()) * 10);

    // accumulate the contribution dof * T into the equation rows of node
    // (i_eq, j_eq): interior rows extract (Re, Im); j=0 extracts Re; j=n_t
    // extracts Re(e^{-i alpha} *)
    const Complex em = std::exp(Complex(0, -pr_.alpha));
    auto add = [&](int i_eq, int j_eq, int dof, Complex T) {
      int b = lay_.base(i_eq);
      if (j_eq == 0) {
        trip.emplace_back(b, dof, T.real());
      } else if (j_eq == pr_.n_t) {
        trip.emplace_back(b + lay_.per_col() - 1, dof, (em * T).real());
      } else {
        trip.emplace_back(b + 1 + 2 * (j_eq - 1), dof, T.real());
        trip.emplace_back(b + 2 + 2 * (j_eq - 1), dof, T.imag());
      }
    };
    // complex-linear coefficient w on node (i',j'): dof contributions w*dir
    auto add_node = [&](int i_eq, int j_eq, int ip, int jp, Complex w) {
      int idx[2], n;
      Complex dir[2];
      lay_.node_dofs(ip, jp, idx, dir, &n);
      for (int q = 0; q < n; ++q) add(i_eq, j_eq, idx[q], w * dir[q]);
    };

    for (int i = 1; i <= pr_.n_s - 1; ++i)
      for (int j = 0; j <= pr_.n_t; ++j) {
        // d_s xi: centered (interior columns only; pinned neighbors drop out)
        add_node(i, j, i + 1, j, Complex(1.0 / (2 * h_s)));
        add_node(i, j, i - 1, j, Complex(-1.0 / (2 * h_s)));
        // J d_t xi
        if (j == 0) {
          add_node(i, j, i, 0, J * (-3.0 / (2 * h_t)));
          add_node(i, j, i, 1, J * (4.0 / (2 * h_t)));
          add_node(i, j, i, 2, J * (-1.0 / (2 * h_t)));
        } else if (j == pr_.n_t) {
          add_node(i, j, i, j, J * (3.0 / (2 * h_t)));
          add_node(i, j, i, j - 1, J * (-4.0 / (2 * h_t)));
          add_node(i, j, i, j - 2, J * (1.0 / (2 * h_t)));
        } else {
          add_node(i, j, i, j + 1, J * (1.0 / (2 * h_t)));
          add_node(i, j, i, j - 1, J * (-1.0 / (2 * h_t)));
        }
        // -J DX_H(u) xi: real-linear; apply to each dof direction
        if (!pr_.hamiltonian.zero()) {
          int idx[2], n;
          Complex dir[2];
          lay_.node_dofs(i, j, idx, dir, &n);
          for (int q = 0; q < n; ++q) {
            Complex T = -J * detail::dx_hamiltonian_vf(Hxx, Hxy, Hyy, u.at(0, i, j), dir[q]);
            add(i, j, idx[q], T);
          }
        }
      }
    Eigen::SparseMatrix<double> A(lay_.count(), lay_.count());
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
  }

  const StripProblem& problem() const { return pr_; }

 private:
  StripProblem pr_;
  detail::DofLayout lay_;
};

// ---------------------------------------------------------------------------
// Newton gluing
// ---------------------------------------------------------------------------

struct GluingReport {
  double R = 0.0;
  double eps_R = 0.0;                   ///< ||F(u_R)||_{0,p} over the equation set
  double C_hat = 0.0;                   ///< measured right-inverse bound
  double c_hat = -1.0;                  ///< quadratic constant (if probed)
  std::vector<double> newton_residuals; ///< per-iteration equation norms
  double distance = 0.0;                ///< ||x - u_R||_{1,p}
  double ift_bound = 0.0;               ///< 2 C_hat ||F(u_R)||
  bool converged = false;
  bool bound_satisfied = false;
  bool irregular = false;
  std::string message;
};

/// Newton iteration from the preglued map with pinned end columns.  C_hat is
/// the maximum of ||A^{-1} g||_{1,p} / ||g||_{0,p} over the first Newton
/// right-hand side and `n_probes` seeded random probes (the measured
/// right-inverse bound).
inline std::pair<DiscreteMap, GluingReport> newton_glue(const StripProblem& pr,
                                                        const DiscreteMap& u_R, double R,
                                                        double tol = 1e-12, int max_iter = 25,
                                                        int n_probes = 5,
                                                        unsigned long long probe_seed = 2024) {
  GlueSystem sys(pr);
  GluingReport rep;
  rep.R = R;
  DiscreteMap u = u_R;

  Eigen::VectorXd r0 = sys.equations(residual_field(pr, u));
  rep.eps_R = sys.eq_norm(r0);

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  bool c_measured = false;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd r = sys.equations(residual_field(pr, u));
    double rn = sys.eq_norm(r);
    rep.newton_residuals.push_back(rn);
    if (rn < tol) {
      rep.converged = true;
      break;
    }
    // quadratic convergence stalls at the roundoff floor; accept the floor
    // rather than iterating to the cap
    if (it > 0 && rn > 0.5 * rep.newton_residuals[static_cast<size_t>(it - 1)]) {
      rep.converged = rn < 1e3 * tol;
      if (!rep.converged) rep.message = "stagnation above tolerance";
      break;
    }
    Eigen::SparseMatrix<double> A = sys.assemble(u);
    lu.compute(A);
    if (lu.info() != Eigen::Success) {
      rep.irregular = true;
      rep.message = "irregular configuration: linearized system is rank deficient";
      return {u, rep};
    }
    if (!c_measured) {
      // right-inverse bound: first Newton rhs plus seeded random probes
      auto probe = [&](const Eigen::VectorXd& g) {
        double gn = sys.eq_norm(g);
        if (gn <= 0) return;
        Eigen::VectorXd d = lu.solve(g);
        rep.C_hat = std::max(rep.C_hat, norm_1p(sys.field(d), pr.p) / gn);
      };
      probe(r);
      Rng prng(probe_seed);
      for (int q = 0; q < n_probes; ++q) {
        Eigen::VectorXd g(sys.dof_count());
        for (int k = 0; k < g.size(); ++k) g[k] = prng.uniform(-1.0, 1.0);
        probe(g);
      }
      c_measured = true;
    }
    Eigen::VectorXd delta = lu.solve(-r);
    DiscreteMap step = sys.field(delta);
    for (int i = 0; i <= u.n_s; ++i)
      for (int j = 0; j <= u.n_t; ++j) u.at(0, i, j) += step.at(0, i, j);
  }
  if (!rep.converged && rep.message.empty()) {
    Eigen::VectorXd r = sys.equations(residual_field(pr, u));
    rep.newton_residuals.push_back(sys.eq_norm(r));
    rep.converged = rep.newton_residuals.back() < tol;
    if (!rep.converged) rep.message = "non-convergence in max iterations";
  }
  // distance and IFT bound check
  DiscreteMap diff = DiscreteMap::zeros(u.n_s, u.n_t, u.S);
  for (int i = 0; i <= u.n_s; ++i)
    for (int j = 0; j <= u.n_t; ++j) diff.at(0, i, j) = u.at(0, i, j) - u_R.at(0, i, j);
  rep.distance = norm_1p(diff, pr.p);
  rep.ift_bound = 2.0 * rep.C_hat * rep.eps_R;
  rep.bound_satisfied = rep.distance <= rep.ift_bound || rep.distance < tol;
  return {u, rep};
}

// ---------------------------------------------------------------------------
// Quadratic-estimate probe
// ---------------------------------------------------------------------------

namespace detail {

inline void scale_map(DiscreteMap& v, double factor) {
  for (auto& pa : v.patch)
    for (Complex& z : pa) z *= factor;
}

inline DiscreteMap add_maps(const DiscreteMap& a, const DiscreteMap& b, double coef) {
  DiscreteMap out = a;
  for (size_t m = 0; m < out.patch.size(); ++m)
    for (size_t k = 0; k < out.patch[m].size(); ++k) out.patch[m][k] += coef * b.patch[m][k];
  return out;
}

/// Random smooth boundary-respecting field: a mode sum with k in {-2..1}.
/// Smooth trials keep the measured constants stable under grid refinement
/// (per-node noise would be dominated by its divergent discrete derivatives).
inline DiscreteMap random_mode_field(const StripProblem& pr, Rng& rng) {
  ModeSet m{pr.alpha, {}};
  for (int k = -2; k <= 1; ++k) m.c[k] = rng.uniform(-1.0, 1.0);
  DiscreteMap xi = DiscreteMap::zeros(pr.n_s, pr.n_t, pr.S);
  for (int i = 0; i <= pr.n_s; ++i)
    for (int j = 0; j <= pr.n_t; ++j) xi.at(0, i, j) = m.eval(Complex(xi.s_of(i), xi.t_of(j)));
  double sup = sup_norm(xi);
  if (sup > 0) scale_map(xi, 1.0 / sup);
  return xi;
}

/// Mode field damped by a smooth envelope vanishing at the end columns, for
/// perturbations that must preserve the pinned decay data.
inline DiscreteMap random_interior_field(const StripProblem& pr, Rng& rng) {
  DiscreteMap xi = random_mode_field(pr, rng);
  for (int i = 0; i <= pr.n_s; ++i) {
    double w = std::sin(M_PI * (xi.s_of(i) + pr.S) / (2.0 * pr.S));
    w *= w;
    for (int j = 0; j <= pr.n_t; ++j) xi.at(0, i, j) *= w;
  }
  for (int j = 0; j <= pr.n_t; ++j) {
    xi.at(0, 0, j) = Complex(0);
    xi.at(0, pr.n_s, j) = Complex(0);
  }
  return xi;
}

}  // namespace detail

/// c_hat = max over samples xi of
///   max_zeta ||(dF_{u+xi} - dF_u) zeta||_{0,p} / ||zeta||_{1,p} / ||xi||_{1,p}.
/// Exactly 0 for H = 0 (the equation is linear).
inline double quadratic_probe(const StripProblem& pr, const DiscreteMap& u, int n_samples,
                              double radius, unsigned long long seed = 7, int n_dirs = 4) {
  pr.validate();
  Rng rng(seed);
  double c_hat = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    DiscreteMap xi = detail::random_mode_field(pr, rng);
    double nx = norm_1p(xi, pr.p);
    detail::scale_map(xi, radius / nx);
    nx = radius;
    DiscreteMap u_shift = detail::add_maps(u, xi, 1.0);
    double op = 0.0;
    for (int dch = 0; dch < n_dirs; ++dch) {
      DiscreteMap zeta = detail::random_mode_field(pr, rng);
      DiscreteMap d1 = linearized_field(pr, u_shift, zeta);
      DiscreteMap d0 = linearized_field(pr, u, zeta);
      DiscreteMap diff = detail::add_maps(d1, d0, -1.0);
      op = std::max(op, norm_0p(diff, pr.p) / norm_1p(zeta, pr.p));
    }
    c_hat = std::max(c_hat, op / nx);
  }
  return c_hat;
}

// ---------------------------------------------------------------------------
// Embedding constant
// ---------------------------------------------------------------------------

/// Measured Sobolev embedding ratio sup|f| / ||f||_{1,p} over random
/// boundary-compatible mode sums f = sum_k c_k e^{(alpha + k pi)(s + i t)},
/// k in {-2..1}.  The trials concentrate near the strip ends, which is what
/// makes the measured constant uniform in the strip length S.
inline double embedding_constant(double S, double p, int n_trials, unsigned long long seed = 11,
                                 double alpha = M_PI / 2, int n_t = 8, double h_s = 0.125) {
  if (!(S > 0) || !(p > 2)) throw std::invalid_argument("embedding_constant: need S > 0, p > 2");
  int n_s = std::max(8, static_cast<int>(std::lround(2 * S / h_s)));
  Rng rng(seed);
  double best = 0.0;
  for (int trial = 0; trial < n_trials; ++trial) {
    ModeSet m{alpha, {}};
    for (int k = -2; k <= 1; ++k) m.c[k] = rng.uniform(-1.0, 1.0);
    DiscreteMap f = DiscreteMap::zeros(n_s, n_t, S);
    for (int i = 0; i <= n_s; ++i)
      for (int j = 0; j <= n_t; ++j) f.at(0, i, j) = m.eval(Complex(f.s_of(i), f.t_of(j)));
    double sup = sup_norm(f);
    if (sup <= 0) continue;
    detail::scale_map(f, 1.0 / sup);  // ratio is scale-invariant; avoids overflow
    best = std::max(best, 1.0 / norm_1p(f, p));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Gromov neighborhood and surjectivity
// ---------------------------------------------------------------------------

struct BrokenPair {
  ModeSet m1;  ///< decays toward s -> +inf
  ModeSet m2;  ///< decays toward s -> -inf
};

struct GromovDiagnostics {
  bool member = false;
  bool parameter_ok = true;
  bool energy_ok = false;
  bool pointwise_ok = false;
  bool shift_ok = false;
  double energy_diff = 0.0;
  double pointwise_dist = 0.0;
  double best_tau = 0.0;
  std::string failed;  ///< first failing condition name, empty if member
};

/// R(eps): the truncation scale of the eps-Gromov neighborhood.
inline double gromov_R(double eps) { return std::max(1.0, -std::log(eps)); }

/// Membership of a candidate map in the eps-Gromov neighborhood of a broken
/// pair: existence of a shift tau >= 2 R(eps) (Type 3 neck parameter) such
/// that the candidate is pointwise close to the translated pieces on the
/// truncated windows and close in energy to the tau-translated broken
/// configuration b_tau(z) = m1(z + tau/2) + m2(z - tau/2).  Comparing
/// against b_tau (rather than the raw pieces) keeps the reference energy
/// finite: each piece alone is exponential and unbounded over the window.
inline GromovDiagnostics gromov_membership(const StripProblem& pr, const BrokenPair& broken,
                                           const DiscreteMap& cand, double eps) {
  pr.validate();
  GromovDiagnostics diag;
  const double E_cand = energy_profile(cand).E;
  const double tau_min = 2.0 * gromov_R(eps);
  const double h_s = 2.0 * cand.S / cand.n_s;
  // membership asks for one shift satisfying both conditions; for the
  // diagnostics, report the best pointwise distance among energy-compatible
  // shifts (or the best energy gap if no shift is energy-compatible)
  bool any_tau = false, any_energy = false;
  double best_pw = 0.0, best_E = 0.0;
  for (int m = 0; 2 * m * h_s <= 4.0 * cand.S; ++m) {
    double tau = 2 * m * h_s;
    if (tau < tau_min) continue;
    // pointwise windows: left piece on s <= -1, right piece on s >= 1
    double dist = 0.0;
    DiscreteMap b_tau = DiscreteMap::zeros(cand.n_s, cand.n_t, cand.S);
    for (int i = 0; i <= cand.n_s; ++i) {
      double s = cand.s_of(i);
      for (int j = 0; j <= cand.n_t; ++j) {
        Complex z(s, cand.t_of(j));
        Complex v1 = broken.m1.eval(z + tau / 2), v2 = broken.m2.eval(z - tau / 2);
        b_tau.at(0, i, j) = v1 + v2;
        if (s <= -1.0) dist = std::max(dist, std::abs(cand.at(0, i, j) - v1));
        if (s >= 1.0) dist = std::max(dist, std::abs(cand.at(0, i, j) - v2));
      }
    }
    double dE = std::abs(E_cand - energy_profile(b_tau).E);
    if (!any_tau || (!any_energy && dE < best_E)) best_E = dE;
    if (dE < eps) {
      if (!any_energy || dist < best_pw) {
        best_pw = dist;
        best_E = dE;
        diag.best_tau = tau;
      }
      any_energy = true;
    }
    any_tau = true;
  }
  diag.shift_ok = any_tau;
  if (!diag.shift_ok) {
    diag.failed = "shift";
    return diag;
  }
  diag.energy_diff = best_E;
  diag.energy_ok = any_energy;
  if (!diag.energy_ok) {
    diag.failed = "energy";
    return diag;
  }
  diag.pointwise_dist = best_pw;
  diag.pointwise_ok = best_pw < eps;
  if (!diag.pointwise_ok) {
    diag.failed = "pointwise";
    return diag;
  }
  diag.member = true;
  return diag;
}

struct SurjectivityReport {
  int n_candidates = 0;
  std::vector<double> distances;  ///< per candidate: min distance to the family
  double max_min_distance = 0.0;
  std::vector<double> family_R;   ///< sampled gluing parameters
  std::string warning;
  bool pass = false;
};

/// Newton solutions seeded from eps-perturbed preglued curves, compared
/// against the glued family {newton_glue(R')} sampled on nearby gluing
/// parameters (R' on grid-aligned values).
inline SurjectivityReport surjectivity_probe(const StripProblem& pr, const BrokenPair& broken,
                                             double R, double eps, int n_candidates,
                                             unsigned long long seed = 2025, double pass_tol = 1e-6) {
  pr.validate();
  SurjectivityReport rep;
  rep.n_candidates = n_candidates;
  if (n_candidates == 0) {
    rep.warning = "empty candidate set: trivially passing";
    rep.pass = true;
    return rep;
  }
  PregluedModes pg = make_preglued_modes(broken.m1, broken.m2, R);
  // glued family on grid-aligned parameters around R
  const double h_s = pr.h_s();
  std::vector<std::pair<double, DiscreteMap>> family;
  for (int dm = -2; dm <= 2; ++dm) {
    double Rp = R + 2.0 * dm * h_s;
    if (!(Rp > 0) || Rp / 2 + 1 >= pr.S) continue;  // cutoff bands must fit
    PregluedModes pgp = make_preglued_modes(broken.m1, broken.m2, Rp);
    DiscreteMap uRp = sample_preglued(pgp, pr.S, pr.n_s, pr.n_t);
    auto [xp, repp] = newton_glue(pr, uRp, Rp);
    if (!repp.converged) continue;
    rep.family_R.push_back(Rp);
    family.emplace_back(Rp, std::move(xp));
  }
  if (family.empty()) {
    rep.warning = "glued family empty (no converged members)";
    return rep;
  }
  DiscreteMap u_R = sample_preglued(pg, pr.S, pr.n_s, pr.n_t);
  Rng rng(seed);
  for (int cdx = 0; cdx < n_candidates; ++cdx) {
    // interior perturbation only: candidates share the decay data at the
    // pinned end columns
    DiscreteMap xi = detail::random_interior_field(pr, rng);
    double nx = norm_1p(xi, pr.p);
    detail::scale_map(xi, (eps / 4.0) / nx);
    DiscreteMap start = detail::add_maps(u_R, xi, 1.0);
    auto [x, nrep] = newton_glue(pr, start, R);
    double dmin = -1.0;
    for (const auto& [Rp, xp] : family) {
      DiscreteMap diff = detail::add_maps(x, xp, -1.0);
      double d = norm_1p(diff, pr.p);
      if (dmin < 0 || d < dmin) dmin = d;
    }
    rep.distances.push_back(dmin);
    rep.max_min_distance = std::max(rep.max_min_distance, dmin);
  }
  rep.pass = rep.max_min_distance <= pass_tol;
  return rep;
}

}  // namespace multiquilt
