#pragma once

#include <cstdint>
#include <vector>

#include "interp/engine.hpp"

namespace taucert {

// Tangent vector of the Veronese: base point B = [v^d], direction w. The
// line it spans in P^N is {[v^{d-1}(av+bw)]}.
struct TangentVectorNu {
  LinearForm<Fp> v;
  LinearForm<Fp> w;

  TangentVectorNu(LinearForm<Fp> v_in, LinearForm<Fp> w_in);
};

enum class FrameLabel { kXAtPoint, kTauAtPoint };

struct TangentFrame {
  std::vector<DenseForm<Fp>> generators;
  FrameLabel label;
};

// Generators {v^{d-1} x_i} of the affine cone over T_{[v^d]} X.
TangentFrame frame_X(const FormRing& ring, const LinearForm<Fp>& v, int d);

// Generators {v^{d-2} x_i w} u {v^{d-1} x_i} of the affine cone over
// T_Q tau(X); 2m+2 generators of affine rank 2m+1 at generic (v, w).
TangentFrame frame_tau(const FormRing& ring, const TangentVectorNu& nu, int d);

// Affine rank of a set of stacked frames.
std::size_t frames_rank(const FormRing& ring, int d, const std::vector<TangentFrame>& frames,
                        std::uint64_t prime);

// Projective dimension of the Terracini span of tau(X,t) at seeded random
// parameters; by semicontinuity a lower bound for dim tau(X,t), and equal
// to it whenever the expected dimension is achieved.
std::int64_t join_dimension_tau(int m, int d, int t, std::uint64_t seed,
                                std::uint64_t prime = kDefaultPrime);

// Same for the secant variety sigma_t(X); t = 1 gives X itself.
std::int64_t join_dimension_sigma(int m, int d, int t, std::uint64_t seed,
                                  std::uint64_t prime = kDefaultPrime);

struct DualityReport {
  int m = 0, d = 0, t = 0;
  std::uint64_t seed = 0;
  std::uint64_t prime = 0;
  std::int64_t primal_dim = 0;  // Terracini span dimension
  std::int64_t dual_rank = 0;   // rank of the Z(O,L) u 2P_i condition matrix
  bool ok = false;              // primal_dim == dual_rank - 1
};

// Primal/dual consistency: the Terracini span of tau(X,t) and the condition
// matrix of Z = Z(O,L) u (union of 2P_i) are built from the same seeded
// points and must report the same dimension.
DualityReport duality_check(int m, int d, int t, std::uint64_t seed,
                            std::uint64_t prime = kDefaultPrime);

}  // namespace taucert
