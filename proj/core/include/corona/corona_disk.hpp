#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "corona/cauchy.hpp"
#include "corona/grid.hpp"
#include "corona/problem.hpp"
#include "corona/wirtinger.hpp"

/// Disk-side constructive corona solver.
///
/// Pipeline: check the data, build explicit *smooth* Bezout solutions
/// (h_j, k_j), derive the dbar data of the correction families, solve the
/// dbar equations by solid Cauchy transform, and assemble holomorphic
/// candidates (H_j, K_j).  Every step has an associated verifier that
/// evaluates the defining identities at points and reports sup residuals.
///
/// Index conventions (1-based, matching the algebra):
///   Fhat_j(z) = conj(F_j(conj z))  — the reflected conjugate, again a
///   polynomial, realized by conjugating coefficients.
/// The two Bezout equations for solutions (X_j, Y_j) are
///   sum_j F_j X_j - sum_j G_j Xhat... (see bezout_residuals for the
///   exact combination).
namespace corona {

// ---- data certificates ---------------------------------------------------

struct CoronaCheck {
  double delta_hat_sq = 0.0;  // measured inf over the grid of D
  bool ok = false;
};

/// Scans D(z) = sum_j |F_j(z)|^2 + |G_j(z)|^2 over the grid.
/// ok == true when the measured infimum clears the supplied delta^2 (if
/// the problem carries one) or the degeneracy threshold otherwise.
/// Throws CoronaViolation when the infimum is <= 1e-10 (common zero at
/// grid resolution).
CoronaCheck check_corona_condition(const DiskCoronaProblem& p, const DiskGridPtr& g);

/// inf over the grid of the pairing certificate
///   Delta(z) = sum_{r,j} |F_j Fhat_r + G_r Ghat_j|^2
///            + sum_{r<j} |Ghat_r F_j - Ghat_j F_r|^2
///            + sum_{r<j} |Fhat_r G_j - Fhat_j G_r|^2.
/// Positivity is necessary for the solvability of the multiplier system
/// below; the solver requires it quantitatively.
double delta_lower_bound(const DiskCoronaProblem& p, const DiskGridPtr& g);

/// C(delta, n) = C1 + C1 * (n/delta^4 + n^2/delta^8) with
/// C1 = 1/delta^2 + n/delta^4: the norm-accounting constant for the
/// corrected solutions. Rejects delta <= 0; accepts delta = 1 for tests.
double c_delta_n(double delta, int n);

/// Deterministic sample points: uniform in the disk |z| <= radius.
std::vector<Complex> random_disk_points(int count, double radius, std::uint64_t seed);

// ---- smooth solutions ----------------------------------------------------

/// The explicit smooth Bezout solutions
///   h_j = phi_j + sum_{r != j} lam_{r,j} F_r + sum_r mu_{r,j} G_r,
///   k_j = psi_j + sum_{r != j} alpha^_{r,j} Ghat_r + sum_r mu^_{j,r} Fhat_r,
/// built as one shared expression DAG:
///   phi_j = conj(F_j)/D,      psi_j(z) = -G_j(conj z)/D(conj z),
///   D = sum |F_j|^2 + |G_j|^2,
///   tau = sum_j (F_j psi_j + G_j phihat_j),
///   mu^_{k,j}    = -tau * conj(F_k Fhat_j + Ghat_k G_j) / Delta,
///   alpha^_{k,j} = -tau * conj(Ghat_k F_j - Ghat_j F_k) / Delta,
///   lam^_{k,j}   = -tau * conj(Fhat_k G_j - Fhat_j G_k) / Delta,
/// with the un-hatted multipliers obtained by the hat involution.
/// alpha and lam are antisymmetric: canonical (r<j) nodes are stored once
/// and accessed with sign, so the antisymmetry is exact by construction.
class SmoothSolution {
 public:
  /// Builds the full DAG. Throws CoronaViolation if the corona condition
  /// fails on the grid or inf Delta <= 1e-12 (degenerate multiplier
  /// system).
  SmoothSolution(DiskCoronaProblem p, DiskGridPtr grid);

  int n() const { return p_.n; }
  const DiskCoronaProblem& problem() const { return p_; }
  const DiskGridPtr& grid() const { return grid_; }

  // Data polynomials, 1-based.
  const CSeries& F(int j) const { return p_.F[idx(j)]; }
  const CSeries& G(int j) const { return p_.G[idx(j)]; }
  const CSeries& Fhat(int j) const { return Fh_[idx(j)]; }
  const CSeries& Ghat(int j) const { return Gh_[idx(j)]; }

  const WExpr& D() const { return D_; }
  const WExpr& tau() const { return tau_; }
  const WExpr& Delta() const { return Delta_; }

  double delta_hat_sq() const { return delta_hat_sq_; }  // measured inf D
  double inf_Delta() const { return inf_Delta_; }        // measured inf Delta
  /// Effective delta^2 the norm bounds are measured against: the supplied
  /// delta^2 when the problem carries one, else min(inf D, inf Delta) —
  /// both lower-bound conditions are assumed with the same delta.
  double effective_delta_sq() const;

  const WExpr& h(int j) const { return h_[idx(j)]; }
  const WExpr& k(int j) const { return k_[idx(j)]; }
  const WExpr& hhat(int j) const { return hhat_[idx(j)]; }
  const WExpr& khat(int j) const { return khat_[idx(j)]; }

  WExpr phi(int j) const { return phi_[idx(j)]; }
  WExpr psi(int j) const { return psi_[idx(j)]; }

  // Multiplier access (1-based, signed canonical): alternating families
  // return the zero expression when r == j and share the canonical node
  // under negation, so e.g. lam(r,j) + lam(j,r) evaluates to exactly 0.
  WExpr lam(int r, int j) const;
  WExpr alpha(int r, int j) const;
  WExpr lam_hat(int r, int j) const;
  WExpr alpha_hat(int r, int j) const;
  WExpr mu(int r, int j) const;
  WExpr mu_hat(int r, int j) const;

 private:
  std::size_t idx(int j) const;
  std::size_t pair_idx(int r, int j) const;  // canonical r<j pairs

  DiskCoronaProblem p_;
  DiskGridPtr grid_;
  std::vector<CSeries> Fh_, Gh_;
  double delta_hat_sq_ = 0.0;
  double inf_Delta_ = 0.0;

  WExpr D_, tau_, Delta_;
  std::vector<WExpr> phi_, psi_;
  std::vector<WExpr> muh_, mu_;              // n*n, row-major (r,j)
  std::vector<WExpr> alph_c_, alp_c_;        // canonical pairs r<j
  std::vector<WExpr> lamh_c_, lam_c_;
  std::vector<WExpr> h_, k_, hhat_, khat_;
};

// ---- bezout residuals ----------------------------------------------------

struct ResidualPair {
  double r1 = 0.0;  // sup |sum_j F_j X_j - sum_j G_j Yhat_j - 1|
  double r2 = 0.0;  // sup |sum_j F_j Y_j + sum_j G_j Xhat_j|
};

/// Evaluates a candidate solution at a point: fills X[j-1], Y[j-1].
using SolutionEvaluator =
    std::function<void(Complex z, std::vector<Complex>& X, std::vector<Complex>& Y)>;

/// Residuals of the two Bezout combinations over `pts`. Hats are taken by
/// conjugate-point evaluation: Xhat_j(z) = conj(X_j(conj z)).
ResidualPair bezout_residuals(const SolutionEvaluator& eval, const DiskCoronaProblem& p,
                              const std::vector<Complex>& pts, int threads = 1);

SolutionEvaluator make_smooth_evaluator(std::shared_ptr<const SmoothSolution> s);
SolutionEvaluator make_series_evaluator(std::vector<CSeries> X, std::vector<CSeries> Y);

// ---- n = 1 closed form ---------------------------------------------------

/// For a single pair the Bezout system is solved exactly by
///   H = Fhat / W,  K = -G / W,  W = Fhat*F + Ghat*G
/// (W is hat-invariant, so Khat = -Ghat/W and both equations close).
/// Requires inf |W| > 0 on the grid; throws CoronaViolation otherwise.
struct N1ClosedForm {
  CSeries Fhat, G, W;
  Complex H(Complex z) const { return Fhat(z) / W(z); }
  Complex K(Complex z) const { return -G(z) / W(z); }
};

N1ClosedForm solve_n1_closed_form(const CSeries& F, const CSeries& G,
                                  const DiskGridPtr& grid);

// ---- dbar data of the corrections ---------------------------------------

/// Canonical-orbit storage of the correction dbar data.  With the
/// shorthand columns  H_i = (h_i, k_i, dbar h_i)  and
/// K_i = (-khat_i, hhat_i, -dbar khat_i), the four families are signed
/// 3x3 determinants:
///   dbar beta_{r,s,j}  =  det[K_r, H_s, H_j]   (alternating in s,j)
///   dbar gamma_{r,s,j} = -det[K_r, K_s, H_j]   (alternating in r,s)
///   dbar eta_{r,s,j}   = -det[H_r, H_s, H_j]   (fully alternating)
///   dbar eta~_{r,s,j}  = -det[K_r, K_s, K_j]   (fully alternating)
/// Stored expanded (products of values and dbar-values), one expression
/// per canonical index; signed access mirrors the alternation exactly.
class DbarData {
 public:
  explicit DbarData(const SmoothSolution& s);

  int n() const { return n_; }

  WExpr beta(int r, int s, int j) const;       // zero expression when s == j
  WExpr gamma(int r, int s, int j) const;      // zero when r == s
  WExpr eta(int r, int s, int j) const;        // zero on any repeat
  WExpr eta_tilde(int r, int s, int j) const;  // zero on any repeat

  struct Entry {
    char family;  // 'b', 'g', 'e', 't'
    int r, s, j;  // canonical indices
    WExpr expr;
  };
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  int n_ = 0;
  std::map<std::array<int, 3>, std::size_t> bpos_, gpos_, epos_, tpos_;
  std::vector<Entry> entries_;
};

// ---- corrections ---------------------------------------------------------

/// The correction fields beta/gamma/eta/eta~ as point evaluators with the
/// same canonical-orbit + signed-access layout as DbarData.  The standard
/// construction solves dbar(field) = datum with the solid Cauchy
/// transform; the alternative constructor accepts arbitrary fields, which
/// exercises the fact that the assembled Bezout residuals do not depend
/// on the field values at all (homogeneous-system property).
class CorrectionField {
 public:
  using PointFn = std::function<Complex(Complex)>;

  CorrectionField(const DbarData& data, const DiskGridPtr& grid, int threads = 1,
                  bool subdivide_near = false);

  /// fields[i] pairs with DbarData-style canonical entries in the order
  /// given by `canonical_entries(n)`.
  CorrectionField(int n, std::vector<PointFn> fields);

  static std::vector<std::array<int, 4>> canonical_entries(int n);  // {fam,r,s,j}

  int n() const { return n_; }

  /// All canonical field values at one point (order = canonical_entries).
  std::vector<Complex> eval_canonical(Complex z) const;

  Complex beta(int r, int s, int j, Complex z) const;
  Complex gamma(int r, int s, int j, Complex z) const;
  Complex eta(int r, int s, int j, Complex z) const;
  Complex eta_tilde(int r, int s, int j, Complex z) const;

 private:
  friend class HoloSolution;
  int n_ = 0;
  std::vector<PointFn> fields_;  // canonical order
  std::map<std::array<int, 3>, std::size_t> bpos_, gpos_, epos_, tpos_;
};

// ---- holomorphic assembly ------------------------------------------------

/// Corrected candidates
///   H_j = h_j + sum_{r, s!=j} (Fhat_r F_s + Ghat_s G_r) beta_{r,s,j}
///             + sum_{r<s}     (Fhat_s G_r - Fhat_r G_s) gamma_{r,s,j}
///             + sum_{r<s, both != j} (Ghat_r F_s - Ghat_s F_r) eta_{r,s,j}
///   K_j = k_j + sum_{r, s!=j} (Fhat_r F_s + Ghat_s G_r) gammahat_{j,s,r}
///             + sum_{r<s}     (Fhat_r G_s - Fhat_s G_r) betahat_{j,s,r}
///             - sum_{r<s, both != j} (Ghat_r F_s - Ghat_s F_r) etatildehat_{r,s,j}
/// with hatted fields evaluated as conj(field(conj z)).  The Bezout
/// residuals of (H, K) vanish identically in the field values; what the
/// quadrature accuracy controls is only the holomorphy defect.
class HoloSolution {
 public:
  HoloSolution(std::shared_ptr<const SmoothSolution> smooth,
               std::shared_ptr<const CorrectionField> corrections);

  int n() const;
  const SmoothSolution& smooth() const { return *smooth_; }

  struct Values {
    std::vector<Complex> H, K;
  };
  /// All H_j, K_j at one point; correction fields are evaluated once per
  /// point (at z and conj z) and shared across j.
  Values eval(Complex z) const;

  Complex H(int j, Complex z) const;
  Complex K(int j, Complex z) const;

  /// Trigonometric-moment Taylor fit on the circle |z| = radius:
  /// c_m = mean_t V(radius e^{i th_t}) e^{-i m th_t} / radius^m.
  /// Returns fitted series for all H_j and K_j.
  struct Fit {
    std::vector<CSeries> H, K;
    double max_abs_H = 0.0;  // sup |H_j| over the sample circle
    double max_abs_K = 0.0;
  };
  Fit fit(double radius, int degree, int samples, int threads = 1) const;

 private:
  std::shared_ptr<const SmoothSolution> smooth_;
  std::shared_ptr<const CorrectionField> corr_;
};

SolutionEvaluator make_holo_evaluator(std::shared_ptr<const HoloSolution> hs);

// ---- identity verifiers --------------------------------------------------

/// The four conditional dbar identities satisfied by the smooth solution
/// (the dbar of both row combinations of the two Bezout equations, and
/// their hat images): returns the max residual over identities, rows s,
/// and points.
double verify_dbar_identities(const SmoothSolution& s, const std::vector<Complex>& pts,
                              int threads = 1);

struct DbarCancellation {
  double dh = 0.0;    // max | -dbar h_j - assembled beta/gamma/eta data |
  double dk = 0.0;    // max | -dbar k_j - assembled hatted data |
  double tsum = 0.0;  // max T-sum triple residual
};

/// Pointwise check that the correction data assembles to exactly the dbar
/// defect of the smooth solution (equivalently: dbar H_j = 0 and
/// dbar K_j = 0 once the fields solve their dbar equations exactly), plus
/// the two T-sum triple cancellations seen along the way.
DbarCancellation verify_dbar_cancellation(const SmoothSolution& s, const DbarData& d,
                                          const std::vector<Complex>& pts,
                                          int threads = 1);

/// Finite-difference holomorphy proxy for the assembled solution:
///   sup over pts, j of |fd_dbar(H_j)(z)| * (1 - |z|)  (and same for K_j).
/// The step must be held fixed across grids (see kHolomorphyFdStep).
double holomorphy_proxy(const HoloSolution& hs, const std::vector<Complex>& pts,
                        double fd_step, int threads = 1);

/// Finite-difference step for holomorphy_proxy.  The quotient scales like
/// (quadrature error)/step, so the step must not shrink with the grid:
/// a fixed step makes the proxy track the transform's pointwise error and
/// decrease under grid refinement, which is what a convergence study
/// compares.  0.02 keeps the difference quotient well above roundoff while
/// staying small against the unit scale of the disk.
inline constexpr double kHolomorphyFdStep = 0.02;

/// Step for finite differences of smooth expression-backed fields (Wolff
/// data estimates), as a fraction of the radial cell size.  Those fields
/// are exactly evaluable, so a cell-scale step balances truncation against
/// roundoff on any grid.
inline constexpr double kFdStepCellFraction = 0.75;

/// Wolff-style finiteness certificates for a dbar source given as an
/// expression (see wolff_data_estimates): B1/B2 Carleson box proxies and
/// the B3 sup bound.
WolffEstimates wolff_for_expr(const WExpr& g, const DiskGridPtr& grid, int threads = 1);

// ---- diagnostics ---------------------------------------------------------

struct DiskDiagnostics {
  double delta_hat_sq = 0.0;
  double inf_Delta = 0.0;
  double effective_delta_sq = 0.0;
  double c_of_delta_n = 0.0;
  double bound_hk = 0.0;      // 10 * (1/d^2 + n/d^4) at the effective delta
  double bound_HK = 0.0;      // 100 * C(d, n)
  std::vector<double> h_norms, k_norms;  // sup over the grid
  WolffEstimates wolff_max;   // max component-wise over canonical dbar data
};

/// Grid measurements for the smooth stage (holo-stage numbers are added
/// by the caller once corrections exist).
DiskDiagnostics diagnose_smooth(const SmoothSolution& s, const DbarData* data,
                                int threads = 1);

// ---- one-call pipeline ---------------------------------------------------

struct DiskSolveOptions {
  DiskGridConfig grid{};
  double fit_radius = 0.8;
  int fit_degree = 64;
  int fit_samples = 512;
  int threads = 1;
  bool subdivide_near = false;
  int check_points = 200;
  double check_radius = 0.9;      // residual sample radius for smooth/holo
  double fit_check_radius = 0.6;  // residual sample radius for the fitted series
  std::uint64_t check_seed = 2026;
};

struct DiskSolution {
  std::shared_ptr<const SmoothSolution> smooth;
  std::shared_ptr<const DbarData> data;
  std::shared_ptr<const CorrectionField> corrections;
  std::shared_ptr<const HoloSolution> holo;
  HoloSolution::Fit fit;
  ResidualPair smooth_residuals;  // of (h, k)
  ResidualPair holo_residuals;    // of (H, K), evaluated through the corrections
  ResidualPair fit_residuals;     // of the fitted Taylor polynomials
  DiskDiagnostics diagnostics;
};

/// Full pipeline: certificates, smooth solutions, dbar data, Cauchy-transform
/// corrections, holomorphic assembly, Taylor fit, and all residuals.
DiskSolution solve_disk(const DiskCoronaProblem& p, const DiskSolveOptions& opt = {});

}  // namespace corona
