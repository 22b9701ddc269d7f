#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "interp/engine.hpp"

namespace taucert {

// A random decomposition f = L_{t-1}^{d-1} L_t + sum_{i<=t-2} L_i^d with
// small integer coefficients, kept both exactly and as a float mirror.
struct PlantedInstance {
  int m = 0, d = 0, t = 0;
  std::vector<LinearForm<Rational>> forms;  // L_1..L_t
  DenseForm<Rational> f_exact;
  std::vector<double> theta;  // flattened t*(m+1) parameter vector
  std::vector<double> f;      // float mirror of f_exact
};

// Seeded instance with coefficients in [-9, 9]; pairwise non-proportional
// linear forms enforced by resampling. Hypotheses: m >= 2, d >= 6 (d >= 7
// when m <= 4), 3 <= t <= beta+1.
PlantedInstance plant(int m, int d, int t, std::uint64_t seed);

// Test-harness constructor: no gate, no invariant enforcement.
PlantedInstance make_instance_unchecked(int m, int d, int t,
                                        std::vector<LinearForm<Rational>> forms);

// Exact t(m+1) x C(m+d,m) Jacobian of the join parametrization at the
// instance; integer entries.
Matrix<BigInt> parametrization_jacobian(const PlantedInstance& inst);

// True iff the exact Jacobian rank equals t(m+1)-1 (the fiber near the
// instance is exactly the one-parameter rescaling of the tangent pair).
bool local_identifiability(const PlantedInstance& inst, std::int64_t* rank_out = nullptr);

// Phi(theta) over doubles: the coefficient vector of the parametrized form.
std::vector<double> phi_float(const FormRing& ring, int d, int t, const std::vector<double>& theta);

// Max over `probes` random parameter vectors of
// ||J_fd - J||_F / max(1, ||J||_F) with central differences.
double jacobian_fd_error(int m, int d, int t, std::uint64_t seed, int probes = 10);

// Canonical parameter vector: power blocks mapped to (unit direction with
// positive leading coordinate, scalar weight) and sorted, the tangent pair
// normalized with its lambda-freedom absorbed into the second form.
std::vector<double> canonicalize(const std::vector<double>& theta, int m, int d, int t);

// Tolerance-aware comparison of canonical vectors. The tangent tail is
// compared in place; power blocks are compared as a multiset, since nearly
// tied leading coordinates can leave the sort order to floating noise.
bool canonical_match(const std::vector<double>& a, const std::vector<double>& b, int m, int t,
                     double tol);

struct FitCandidate {
  double residual = 0.0;  // relative to the unit-normalized target
  bool converged = false;
  bool matches_plant = false;
  std::vector<double> theta_canonical;  // converged candidates only
};

struct RecoveryResult {
  int m = 0, d = 0, t = 0;
  int restarts = 0;
  std::uint64_t seed = 0;
  double tol = 0.0, match_tol = 0.0;
  std::vector<FitCandidate> candidates;
  int converged_count = 0;
  int matched_count = 0;
  bool matched = false;  // requires matched_count == converged_count > 0
  double min_residual = 0.0;
  Verdict verdict = Verdict::kInconclusive;  // kFailed = converged non-match (red alert)
};

// Multi-start Levenberg-Marquardt recovery of a degree-d decomposition with
// t_fit summands from the coefficient vector f. The target is normalized to
// unit 2-norm internally, so `tol` reads as a relative residual. When the
// planted parameters are supplied, every converged candidate is
// canonicalized and compared against the plant; a converged non-match is a
// red-alert verdict, never discarded.
RecoveryResult fit(const std::vector<double>& f, int m, int d, int t_fit, int restarts,
                   std::uint64_t seed, double tol = 1e-8, double match_tol = 1e-6,
                   const std::vector<double>* planted_theta = nullptr);

// Convenience wrapper fitting an instance against its own plant.
RecoveryResult fit(const PlantedInstance& inst, int restarts, std::uint64_t seed,
                   double tol = 1e-8, double match_tol = 1e-6);

// A batch of planted-recovery experiments at one (m,d,t).
struct UniqueLabReport {
  int m = 0, d = 0, t = 0;
  int instances = 0, restarts = 0;
  std::uint64_t seed = 0;
  double tol = 0.0, match_tol = 0.0;
  std::vector<RecoveryResult> results;
  int total_converged = 0;
  int total_matched = 0;
  double avg_convergence_rate = 0.0;
  // kFailed as soon as one instance reports a converged non-match.
  Verdict verdict = Verdict::kInconclusive;
};

UniqueLabReport unique_lab(int m, int d, int t, int instances, int restarts, std::uint64_t seed,
                           double tol = 1e-8, double match_tol = 1e-6);

}  // namespace taucert
