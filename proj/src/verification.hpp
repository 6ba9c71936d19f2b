// Copyright 2026 The reglap authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "green_formula.hpp"
#include "viscous_solver.hpp"

namespace reglap {

/// One machine-checkable property: measured value vs threshold.  `anchor`
/// is a stable slug naming the property the record certifies.
struct CheckRecord {
  std::string name;
  std::string anchor;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;
  std::string note;
};

struct VerificationReport {
  std::vector<CheckRecord> records;
  bool all_pass() const {
    for (const auto& r : records)
      if (!r.pass) return false;
    return true;
  }
};

/// Smooth space-time test function psi(t,x) = W(t) B(x), nonnegative, with
/// compact support in (-inf, T) x R.  Interior functions vanish on the
/// boundary collar; boundary functions reach the faces.
struct TestPsi {
  std::string label;
  bool interior;
  std::function<double(double, double)> value;  // (t, x)
  std::function<double(double, double)> dt;
  std::function<double(double, double)> dx;
};

/// 5 space bumps x 2 time windows; interior bumps vanish outside
/// [x_lo + delta, x_hi - delta].
std::vector<TestPsi> make_test_dictionary(const Domain& domain, double t_end,
                                          double delta);

/// 7 entropy levels: a-1/2, a, quartiles, b, b+1/2.
std::vector<double> make_k_grid(double a, double b);

// ---------------------------------------------------------------------------
// Trajectory-level checks
// ---------------------------------------------------------------------------

CheckRecord check_maximum_principle(const Trajectory& traj,
                                    const DataBounds& bounds);

CheckRecord check_comparison(const Trajectory& traj_u,
                             const Trajectory& traj_v);

enum class ContractionMode { equal_boundary, full };

CheckRecord check_l1_contraction(const Grid& grid, const Trajectory& traj_u,
                                 const Trajectory& traj_v,
                                 ContractionMode mode,
                                 const DegeneracyModel& deg,
                                 const FractionalOrder& order);

/// Per-(k, sign, psi) entropy functional of the saved trajectory.  r_sch is
/// the scheme-exact discrete form (nonnegative up to iteration noise for
/// trajectories produced by the solver); r_raw is the plain four-term
/// functional of the weak entropy formulation, reported alongside.
struct EntropyPairResult {
  double k = 0.0;
  SemiSign sign = SemiSign::plus;
  std::string psi_label;
  bool admissible = false;
  double r_sch = 0.0;
  double r_raw = 0.0;
  double scale = 0.0;
  double viscous_term = 0.0;   // epsilon-weighted local pairing
  double boundary_gap = 0.0;   // numerical boundary flux minus L_f majorant
};

EntropyPairResult entropy_residual(const Trajectory& traj,
                                   const FluxModel& flux,
                                   const DegeneracyModel& deg_eps,
                                   const KernelWeights& weights, double l_f,
                                   double k, SemiSign sign,
                                   const TestPsi& psi);

struct EntropySummary {
  std::vector<EntropyPairResult> pairs;  // admissible only
  int skipped = 0;
  // min over pairs of the normalized margin r_sch / (tol*scale + floor);
  // values below -1 violate the tolerance
  double min_scaled_residual = 0.0;
};

EntropySummary entropy_residuals(const Trajectory& traj, const FluxModel& flux,
                                 const DegeneracyModel& deg_eps,
                                 const KernelWeights& weights, double l_f,
                                 std::span<const double> k_grid,
                                 std::span<const TestPsi> dictionary,
                                 double tol_factor = 1e-6);

CheckRecord check_entropy(const EntropySummary& summary, double tol_factor);

/// Piecewise-constant trajectory of the inadmissible traveling jump
/// 0 -> 1 for a convex flux (cell means of the exact step profile).
Trajectory make_non_entropic_trajectory(const Grid& grid, double t_end,
                                        double dt, double x0, double speed);

CheckRecord check_entropy_negative_control(const Grid& grid,
                                           const FluxModel& flux,
                                           const DegeneracyModel& deg_eps,
                                           const KernelWeights& weights,
                                           double l_f,
                                           std::span<const double> k_grid,
                                           std::span<const TestPsi> dictionary,
                                           double tol_factor);

/// Ratio checks over an eps sweep: max/min of the per-run maxima of the
/// time- and space-BV diagnostics.
std::vector<CheckRecord> check_bv_uniformity(const SweepResult& sweep,
                                             double ratio_limit = 1.25);

CheckRecord check_cauchy_sweep(const SweepResult& sweep);

// ---------------------------------------------------------------------------
// Operator- and geometry-level checks
// ---------------------------------------------------------------------------

std::vector<CheckRecord> check_operator_identities(const KernelWeights& weights,
                                                   unsigned seed = 2026);

std::vector<CheckRecord> check_sgn_lemma(const KernelWeights& weights,
                                         const DegeneracyModel& deg,
                                         unsigned seed = 2026);

std::vector<CheckRecord> check_appendix_decomposition(
    const KernelWeights& weights, const LayerPartition& partition,
    std::span<const double> psi, std::span<const double> phi,
    std::span<const double> xi);

CheckRecord check_vector_field_positivity(const KernelWeights& weights,
                                          const DegeneracyModel& deg,
                                          unsigned seed = 2026);

/// Forward-difference commutator of the operator versus the boundary
/// correction kernel (refinement study; residual must decrease).
CheckRecord check_derivative_commutator(const Domain& domain,
                                        const FractionalOrder& order,
                                        Normalization form);

/// rho -> 0 limit of int Psi L beta_rho against the boundary kernel
/// integral; asserts Cauchy decrease of consecutive differences.
CheckRecord check_boundary_flux_limit(const Domain& domain,
                                      const FractionalOrder& order,
                                      double delta, Normalization form);

/// Discrete weak differential inequality of the exponential cutoff and the
/// two vanishing limits of its L1 quantities.
std::vector<CheckRecord> check_cutoff_inequalities(const Domain& domain,
                                                   double l_f, double delta);

}  // namespace reglap
