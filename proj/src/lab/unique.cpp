#include "lab/unique.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "support/errors.hpp"

namespace taucert {

namespace {

bool proportional(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const Rational det = a[i] * b[j] - a[j] * b[i];
      if (det != 0) return false;
    }
  return true;
}

void plant_gate(int m, int d, int t) {
  if (m < 2) throw HypothesisError("plant: requires m >= 2");
  if (d < 6) throw HypothesisError("plant: requires d >= 6");
  if (m <= 4 && d < 7) throw HypothesisError("plant: m <= 4 requires d >= 7");
  if (t < 3) throw HypothesisError("plant: requires t >= 3");
  const auto beta = parameter_table(m, d).beta;
  if (t > beta + 1)
    throw HypothesisError("plant: requires t <= beta+1 = " + std::to_string(beta + 1));
}

DenseForm<Rational> instance_form(const FormRing& ring, int d,
                                  const std::vector<LinearForm<Rational>>& forms) {
  const int t = static_cast<int>(forms.size());
  DenseForm<Rational> f =
      tangent_form(ring, forms[static_cast<std::size_t>(t - 2)], forms[static_cast<std::size_t>(t - 1)], d);
  for (int i = 0; i < t - 2; ++i)
    add_scaled(f, power_form(ring, forms[static_cast<std::size_t>(i)], d), Rational(1));
  return f;
}

}  // namespace

PlantedInstance make_instance_unchecked(int m, int d, int t,
                                        std::vector<LinearForm<Rational>> forms) {
  FormRing ring(m, d);
  PlantedInstance inst;
  inst.m = m;
  inst.d = d;
  inst.t = t;
  inst.forms = std::move(forms);
  inst.f_exact = instance_form(ring, d, inst.forms);
  for (const auto& L : inst.forms)
    for (const auto& c : L.c) inst.theta.push_back(static_cast<double>(c));
  for (const auto& c : inst.f_exact.c) inst.f.push_back(static_cast<double>(c));
  return inst;
}

PlantedInstance plant(int m, int d, int t, std::uint64_t seed) {
  plant_gate(m, d, t);
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<LinearForm<Rational>> forms;
    bool ok = true;
    for (int i = 0; i < t && ok; ++i) {
      LinearForm<Rational> L;
      bool nonzero = false;
      for (int j = 0; j <= m; ++j) {
        L.c.push_back(Rational(rng.int_in(-9, 9)));
        nonzero = nonzero || L.c.back() != 0;
      }
      if (!nonzero) {
        ok = false;
        break;
      }
      for (const auto& prev : forms)
        if (proportional(prev.c, L.c)) ok = false;
      forms.push_back(std::move(L));
    }
    if (ok) return make_instance_unchecked(m, d, t, std::move(forms));
  }
  throw std::runtime_error("plant: failed to draw a nondegenerate instance");
}

Matrix<BigInt> parametrization_jacobian(const PlantedInstance& inst) {
  FormRing ring(inst.m, inst.d);
  const int m = inst.m, d = inst.d, t = inst.t;
  const std::size_t cols = ring.basis(d).size();
  Matrix<BigInt> jac(0, cols, BigInt(0));

  auto push_shifted_rows = [&](const DenseForm<Rational>& head, const Rational& scale) {
    // Rows d/d(L_j): scale * head * x_j for each variable j.
    for (int var = 0; var <= m; ++var) {
      std::vector<BigInt> row(cols, BigInt(0));
      for (std::size_t i = 0; i < head.c.size(); ++i) {
        const Rational value = head.c[i] * scale;
        row[ring.shifted(d - 1, i, var)] = BigInt(numerator(value));
      }
      jac.append_row(row);
    }
  };

  for (int i = 0; i < t - 2; ++i)
    push_shifted_rows(power_form(ring, inst.forms[static_cast<std::size_t>(i)], d - 1), Rational(d));
  const auto& A = inst.forms[static_cast<std::size_t>(t - 2)];
  const auto& B = inst.forms[static_cast<std::size_t>(t - 1)];
  push_shifted_rows(multiply_by_linear(ring, power_form(ring, A, d - 2), B), Rational(d - 1));
  push_shifted_rows(power_form(ring, A, d - 1), Rational(1));
  return jac;
}

bool local_identifiability(const PlantedInstance& inst, std::int64_t* rank_out) {
  const auto r = static_cast<std::int64_t>(bareiss_rank(parametrization_jacobian(inst)));
  if (rank_out != nullptr) *rank_out = r;
  return r == static_cast<std::int64_t>(inst.t) * (inst.m + 1) - 1;
}

// --- float path -------------------------------------------------------------

namespace {

LinearForm<double> block(const std::vector<double>& theta, int m, int index) {
  LinearForm<double> L;
  const std::size_t base = static_cast<std::size_t>(index) * static_cast<std::size_t>(m + 1);
  for (int j = 0; j <= m; ++j) L.c.push_back(theta[base + static_cast<std::size_t>(j)]);
  return L;
}

}  // namespace

std::vector<double> phi_float(const FormRing& ring, int d, int t, const std::vector<double>& theta) {
  const int m = ring.m();
  DenseForm<double> f = tangent_form(ring, block(theta, m, t - 2), block(theta, m, t - 1), d);
  for (int i = 0; i < t - 2; ++i)
    add_scaled(f, power_form(ring, block(theta, m, i), d), 1.0);
  return f.c;
}

namespace {

Eigen::MatrixXd jacobian_float(const FormRing& ring, int d, int t,
                               const std::vector<double>& theta) {
  const int m = ring.m();
  const auto rows = static_cast<Eigen::Index>(ring.basis(d).size());
  const auto n = static_cast<Eigen::Index>(t * (m + 1));
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(rows, n);

  auto fill_block = [&](int index, const DenseForm<double>& head, double scale) {
    for (int var = 0; var <= m; ++var) {
      const Eigen::Index col = static_cast<Eigen::Index>(index * (m + 1) + var);
      for (std::size_t i = 0; i < head.c.size(); ++i)
        jac(static_cast<Eigen::Index>(ring.shifted(d - 1, i, var)), col) = scale * head.c[i];
    }
  };

  for (int i = 0; i < t - 2; ++i)
    fill_block(i, power_form(ring, block(theta, m, i), d - 1), static_cast<double>(d));
  const auto A = block(theta, m, t - 2);
  const auto B = block(theta, m, t - 1);
  fill_block(t - 2, multiply_by_linear(ring, power_form(ring, A, d - 2), B),
             static_cast<double>(d - 1));
  fill_block(t - 1, power_form(ring, A, d - 1), 1.0);
  return jac;
}

}  // namespace

double jacobian_fd_error(int m, int d, int t, std::uint64_t seed, int probes) {
  FormRing ring(m, d);
  SplitMix64 rng(seed);
  const int n = t * (m + 1);
  double worst = 0.0;
  for (int probe = 0; probe < probes; ++probe) {
    std::vector<double> theta(static_cast<std::size_t>(n));
    for (auto& x : theta) x = 2.0 * rng.unit() - 1.0;
    const Eigen::MatrixXd jac = jacobian_float(ring, d, t, theta);
    Eigen::MatrixXd fd = Eigen::MatrixXd::Zero(jac.rows(), jac.cols());
    for (int j = 0; j < n; ++j) {
      const double h = 1e-5 * std::max(1.0, std::abs(theta[static_cast<std::size_t>(j)]));
      auto plus = theta, minus = theta;
      plus[static_cast<std::size_t>(j)] += h;
      minus[static_cast<std::size_t>(j)] -= h;
      const auto fp = phi_float(ring, d, t, plus);
      const auto fm = phi_float(ring, d, t, minus);
      for (Eigen::Index i = 0; i < jac.rows(); ++i)
        fd(i, j) = (fp[static_cast<std::size_t>(i)] - fm[static_cast<std::size_t>(i)]) / (2.0 * h);
    }
    const double err = (fd - jac).norm() / std::max(1.0, jac.norm());
    worst = std::max(worst, err);
  }
  return worst;
}

// --- canonical form ----------------------------------------------------------

// The canonical vector has the same t*(m+1) layout as theta. Each power
// summand L_i^d is represented by its unique real canonical root: the unit
// direction with positive leading coordinate times sign(c)|c|^{1/d}, where
// c is the summand weight. The tangent pair is normalized to ||A|| = 1 with
// positive leading coordinate, the lambda-freedom absorbed into B. Power
// blocks are sorted, so permutations and allowed rescalings collapse to one
// representative, and the map is idempotent.
std::vector<double> canonicalize(const std::vector<double>& theta, int m, int d, int t) {
  const std::size_t width = static_cast<std::size_t>(m + 1);
  if (theta.size() != static_cast<std::size_t>(t) * width)
    throw std::invalid_argument("canonicalize: wrong parameter count");

  auto unit_block = [&](int index, double* norm_out, double* sign_out) {
    std::vector<double> u(width);
    double norm2 = 0.0;
    for (std::size_t j = 0; j < width; ++j) {
      u[j] = theta[static_cast<std::size_t>(index) * width + j];
      norm2 += u[j] * u[j];
    }
    const double norm = std::sqrt(norm2);
    if (norm < 1e-12) throw std::invalid_argument("canonicalize: zero block");
    // The sign pivot must ignore coordinates that are zero up to convergence
    // noise; candidates are polished well below this threshold.
    double sign = 1.0;
    for (std::size_t j = 0; j < width; ++j) {
      if (std::abs(u[j]) > norm * 1e-4) {
        sign = u[j] > 0 ? 1.0 : -1.0;
        break;
      }
    }
    for (std::size_t j = 0; j < width; ++j) u[j] = sign * u[j] / norm;
    *norm_out = norm;
    *sign_out = sign;
    return u;
  };

  std::vector<std::vector<double>> power_blocks;
  for (int i = 0; i < t - 2; ++i) {
    double norm = 0.0, sign = 1.0;
    auto u = unit_block(i, &norm, &sign);
    // L^d = c u^d with c = (sign*norm)^d; the canonical root is |c|^{1/d}
    // with the sign of c (d even forces c >= 0).
    const double c = std::pow(sign * norm, d);
    const double root = (c < 0 ? -1.0 : 1.0) * std::pow(std::abs(c), 1.0 / d);
    for (auto& x : u) x *= root;
    power_blocks.push_back(std::move(u));
  }
  std::sort(power_blocks.begin(), power_blocks.end());

  double norm_a = 0.0, sign_a = 1.0;
  const auto u = unit_block(t - 2, &norm_a, &sign_a);
  const double factor = std::pow(sign_a * norm_a, d - 1);

  std::vector<double> out;
  for (const auto& b : power_blocks) out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), u.begin(), u.end());
  for (std::size_t j = 0; j < width; ++j)
    out.push_back(factor * theta[static_cast<std::size_t>(t - 1) * width + j]);
  return out;
}

bool canonical_match(const std::vector<double>& a, const std::vector<double>& b, int m, int t,
                     double tol) {
  if (a.size() != b.size() || a.size() != static_cast<std::size_t>(t) * (m + 1)) return false;
  const std::size_t width = static_cast<std::size_t>(m + 1);
  auto close = [tol](double x, double y) {
    return std::abs(x - y) <= tol * (1.0 + std::max(std::abs(x), std::abs(y)));
  };

  // Tangent pair: positionally fixed.
  for (std::size_t j = static_cast<std::size_t>(t - 2) * width; j < a.size(); ++j)
    if (!close(a[j], b[j])) return false;

  // Power blocks: greedy multiset matching (blocks of distinct summands are
  // far apart relative to tol).
  std::vector<bool> used(static_cast<std::size_t>(t - 2), false);
  for (int i = 0; i < t - 2; ++i) {
    bool found = false;
    for (int j = 0; j < t - 2 && !found; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      bool same = true;
      for (std::size_t k = 0; k < width && same; ++k)
        same = close(a[static_cast<std::size_t>(i) * width + k],
                     b[static_cast<std::size_t>(j) * width + k]);
      if (same) {
        used[static_cast<std::size_t>(j)] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

// --- multi-start recovery ----------------------------------------------------

namespace {

double residual_norm(const FormRing& ring, int d, int t, const std::vector<double>& theta,
                     const Eigen::VectorXd& target, Eigen::VectorXd* r_out) {
  const auto values = phi_float(ring, d, t, theta);
  Eigen::VectorXd r(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    r(static_cast<Eigen::Index>(i)) = values[i] - target(static_cast<Eigen::Index>(i));
  if (r_out != nullptr) *r_out = r;
  return r.norm();
}

// Phi is degree-d homogeneous in theta, so a start can be rescaled onto the
// target sphere in closed form: gamma^d = <Phi(theta), target> / |Phi(theta)|^2.
void norm_match(const FormRing& ring, int d, int t, std::vector<double>& theta,
                const Eigen::VectorXd& target) {
  const auto values = phi_float(ring, d, t, theta);
  double dot = 0.0, norm2 = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    dot += values[i] * target(static_cast<Eigen::Index>(i));
    norm2 += values[i] * values[i];
  }
  if (norm2 < 1e-30 || std::abs(dot) < 1e-30) return;
  const double gd = dot / norm2;
  if (d % 2 == 0 && gd < 0) return;  // no real d-th root scales onto -Phi
  const double gamma = (gd < 0 ? -1.0 : 1.0) * std::pow(std::abs(gd), 1.0 / d);
  for (auto& x : theta) x *= gamma;
}

// One Levenberg-Marquardt descent from `theta`; returns the final residual.
double lm_descent(const FormRing& ring, int d, int t, std::vector<double>& theta,
                  const Eigen::VectorXd& target, double tol) {
  const int n = static_cast<int>(theta.size());
  Eigen::VectorXd r;
  double rnorm = residual_norm(ring, d, t, theta, target, &r);
  double lambda = 1e-3;

  for (int iter = 0; iter < 400; ++iter) {
    if (rnorm < tol) break;
    const Eigen::MatrixXd jac = jacobian_float(ring, d, t, theta);
    const Eigen::VectorXd g = jac.transpose() * r;
    if (g.lpNorm<Eigen::Infinity>() < 1e-16) break;
    const Eigen::MatrixXd h = jac.transpose() * jac;

    bool stepped = false;
    for (int damp = 0; damp < 30; ++damp) {
      Eigen::MatrixXd a = h;
      for (int i = 0; i < n; ++i) a(i, i) += lambda * (h(i, i) + 1e-12);
      const Eigen::VectorXd delta = a.ldlt().solve(-g);
      std::vector<double> trial = theta;
      for (int i = 0; i < n; ++i) trial[static_cast<std::size_t>(i)] += delta(i);
      Eigen::VectorXd r_trial;
      const double trial_norm = residual_norm(ring, d, t, trial, target, &r_trial);
      if (trial_norm < rnorm) {
        theta = std::move(trial);
        r = std::move(r_trial);
        rnorm = trial_norm;
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
        break;
      }
      lambda *= 4.0;
      if (lambda > 1e15) break;
    }
    if (!stepped) break;
  }
  return rnorm;
}

}  // namespace

RecoveryResult fit(const std::vector<double>& f, int m, int d, int t_fit, int restarts,
                   std::uint64_t seed, double tol, double match_tol,
                   const std::vector<double>* planted_theta) {
  if (restarts < 1) throw std::invalid_argument("fit: need restarts >= 1");
  FormRing ring(m, d);
  if (f.size() != ring.basis(d).size()) throw std::invalid_argument("fit: wrong coefficient count");

  // The analytic Jacobian must agree with central differences before any
  // fitting is trusted.
  const double fd_err = jacobian_fd_error(m, d, t_fit, derive_seed(seed, 0xFD), 10);
  if (fd_err > 1e-6)
    throw std::logic_error("fit: analytic Jacobian disagrees with finite differences");

  Eigen::VectorXd target(static_cast<Eigen::Index>(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i) target(static_cast<Eigen::Index>(i)) = f[i];
  const double fnorm = target.norm();
  if (fnorm == 0.0) throw std::invalid_argument("fit: zero target form");
  target /= fnorm;

  // Canonical data of the plant, rescaled so that Phi(plant) has unit norm
  // like the normalized target: dividing the form by s scales each power
  // block by s^{-1/d} and the second tangent form by 1/s. Using the norm of
  // Phi(plant) itself keeps the comparison invariant under rescaling f.
  std::vector<double> planted_canonical;
  if (planted_theta != nullptr) {
    std::vector<double> scaled = *planted_theta;
    const std::size_t width = static_cast<std::size_t>(m + 1);
    double pnorm2 = 0.0;
    for (double c : phi_float(ring, d, t_fit, scaled)) pnorm2 += c * c;
    const double pnorm = std::sqrt(pnorm2);
    const double root = std::pow(pnorm, -1.0 / d);
    for (int i = 0; i < t_fit - 2; ++i)
      for (std::size_t j = 0; j < width; ++j) scaled[static_cast<std::size_t>(i) * width + j] *= root;
    for (std::size_t j = 0; j < width; ++j)
      scaled[static_cast<std::size_t>(t_fit - 1) * width + j] /= pnorm;
    planted_canonical = canonicalize(scaled, m, d, t_fit);
  }

  RecoveryResult result;
  result.m = m;
  result.d = d;
  result.t = t_fit;
  result.restarts = restarts;
  result.seed = seed;
  result.tol = tol;
  result.match_tol = match_tol;
  result.min_residual = std::numeric_limits<double>::infinity();

  const int n = t_fit * (m + 1);
  const std::size_t width = static_cast<std::size_t>(m + 1);
  for (int restart = 0; restart < restarts; ++restart) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(restart)));
    std::vector<double> theta(static_cast<std::size_t>(n));
    for (auto& x : theta) x = 2.0 * rng.unit() - 1.0;
    norm_match(ring, d, t_fit, theta, target);

    double residual = lm_descent(ring, d, t_fit, theta, target, tol);

    // Local minima of this landscape are role traps (a power block sitting
    // where the tangent base belongs) or, for odd d, sign traps (a block
    // stuck mirroring its summand). Swapping or flipping the stalled blocks
    // and descending again is a deterministic escape that uses nothing but
    // the stall point itself.
    for (int sweep = 0; sweep < 2 && residual >= tol; ++sweep) {
      const double before = residual;
      auto try_escape = [&](const std::vector<double>& start) {
        std::vector<double> candidate = start;
        norm_match(ring, d, t_fit, candidate, target);
        const double escaped = lm_descent(ring, d, t_fit, candidate, target, tol);
        if (escaped < residual) {
          theta = std::move(candidate);
          residual = escaped;
        }
      };
      for (int i = 0; i < t_fit - 2 && residual >= tol; ++i) {
        for (int other : {t_fit - 2, t_fit - 1}) {
          std::vector<double> swapped = theta;
          for (std::size_t j = 0; j < width; ++j)
            std::swap(swapped[static_cast<std::size_t>(i) * width + j],
                      swapped[static_cast<std::size_t>(other) * width + j]);
          try_escape(swapped);
          if (residual < tol) break;
        }
      }
      for (int i = 0; i < t_fit && residual >= tol; ++i) {
        std::vector<double> flipped = theta;
        for (std::size_t j = 0; j < width; ++j)
          flipped[static_cast<std::size_t>(i) * width + j] *= -1.0;
        try_escape(flipped);
      }
      if (residual >= before) break;  // the sweep found nothing new
    }

    // Polish converged candidates to the numerical floor so that the
    // canonical comparison sees parameter noise far below match_tol.
    if (residual < tol) residual = lm_descent(ring, d, t_fit, theta, target, 1e-14);

    FitCandidate cand;
    cand.residual = residual;
    cand.converged = cand.residual < tol;
    result.min_residual = std::min(result.min_residual, cand.residual);
    if (cand.converged) {
      ++result.converged_count;
      cand.theta_canonical = canonicalize(theta, m, d, t_fit);
      if (planted_theta != nullptr) {
        cand.matches_plant =
            canonical_match(cand.theta_canonical, planted_canonical, m, t_fit, match_tol);
        if (cand.matches_plant) ++result.matched_count;
      }
    }
    result.candidates.push_back(std::move(cand));
  }

  result.matched = result.converged_count > 0 && result.matched_count == result.converged_count &&
                   planted_theta != nullptr;
  if (planted_theta == nullptr) {
    result.verdict = result.converged_count > 0 ? Verdict::kObserved : Verdict::kInconclusive;
  } else if (result.matched) {
    result.verdict = Verdict::kCertified;
  } else if (result.converged_count == 0) {
    result.verdict = Verdict::kInconclusive;
  } else {
    result.verdict = Verdict::kFailed;  // a converged decomposition that is not the plant
  }
  return result;
}

RecoveryResult fit(const PlantedInstance& inst, int restarts, std::uint64_t seed, double tol,
                   double match_tol) {
  return fit(inst.f, inst.m, inst.d, inst.t, restarts, seed, tol, match_tol, &inst.theta);
}

}  // namespace taucert

namespace taucert {

UniqueLabReport unique_lab(int m, int d, int t, int instances, int restarts, std::uint64_t seed,
                           double tol, double match_tol) {
  if (instances < 1) throw std::invalid_argument("unique_lab: need instances >= 1");
  UniqueLabReport report;
  report.m = m;
  report.d = d;
  report.t = t;
  report.instances = instances;
  report.restarts = restarts;
  report.seed = seed;
  report.tol = tol;
  report.match_tol = match_tol;

  bool red_alert = false;
  for (int i = 0; i < instances; ++i) {
    const auto inst = plant(m, d, t, derive_seed(seed, 2 * static_cast<std::uint64_t>(i)));
    auto result = fit(inst, restarts, derive_seed(seed, 2 * static_cast<std::uint64_t>(i) + 1),
                      tol, match_tol);
    report.total_converged += result.converged_count;
    report.total_matched += result.matched_count;
    report.avg_convergence_rate +=
        static_cast<double>(result.converged_count) / result.restarts / instances;
    red_alert = red_alert || result.verdict == Verdict::kFailed;
    report.results.push_back(std::move(result));
  }
  // Uniqueness evidence: every converged fit across all instances matched
  // its plant. An instance with no converged restarts weakens nothing; a
  // single converged non-match is a red alert.
  if (red_alert)
    report.verdict = Verdict::kFailed;
  else if (report.total_converged > 0)
    report.verdict = Verdict::kCertified;
  else
    report.verdict = Verdict::kInconclusive;
  return report;
}

}  // namespace taucert
