#include "tangent/join.hpp"

namespace taucert {

namespace {

bool linearly_independent(const std::vector<Fp>& a, const std::vector<Fp>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return true;
  return false;
}

LinearForm<Fp> random_linear(SplitMix64& rng, int m, std::uint64_t prime) {
  LinearForm<Fp> L;
  for (int i = 0; i <= m; ++i) L.c.push_back(Fp::raw(rng.below(prime), prime));
  bool nonzero = false;
  for (const auto& c : L.c) nonzero = nonzero || !c.is_zero();
  if (!nonzero) L.c[0] = Fp::one(prime);
  return L;
}

LinearForm<Fp> coordinate(int var, int m, std::uint64_t prime) {
  LinearForm<Fp> x{std::vector<Fp>(static_cast<std::size_t>(m + 1), Fp::zero(prime))};
  x.c[static_cast<std::size_t>(var)] = Fp::one(prime);
  return x;
}

}  // namespace

TangentVectorNu::TangentVectorNu(LinearForm<Fp> v_in, LinearForm<Fp> w_in)
    : v(std::move(v_in)), w(std::move(w_in)) {
  if (!linearly_independent(v.c, w.c))
    throw std::invalid_argument("TangentVectorNu: direction must be independent of the base point");
}

TangentFrame frame_X(const FormRing& ring, const LinearForm<Fp>& v, int d) {
  if (d < 2) throw std::invalid_argument("frame_X: need d >= 2");
  const std::uint64_t prime = v.c[0].p;
  TangentFrame frame{{}, FrameLabel::kXAtPoint};
  const auto head = power_form(ring, v, d - 1);
  for (int var = 0; var <= ring.m(); ++var)
    frame.generators.push_back(multiply_by_linear(ring, head, coordinate(var, ring.m(), prime)));
  return frame;
}

TangentFrame frame_tau(const FormRing& ring, const TangentVectorNu& nu, int d) {
  if (d < 3) throw std::invalid_argument("frame_tau: need d >= 3");
  const std::uint64_t prime = nu.v.c[0].p;
  TangentFrame frame{{}, FrameLabel::kTauAtPoint};
  const auto head = multiply_by_linear(ring, power_form(ring, nu.v, d - 2), nu.w);
  for (int var = 0; var <= ring.m(); ++var)
    frame.generators.push_back(multiply_by_linear(ring, head, coordinate(var, ring.m(), prime)));
  const auto x_frame = frame_X(ring, nu.v, d);
  for (const auto& g : x_frame.generators) frame.generators.push_back(g);
  return frame;
}

std::size_t frames_rank(const FormRing& ring, int d, const std::vector<TangentFrame>& frames,
                        std::uint64_t prime) {
  Matrix<Fp> m(0, ring.basis(d).size(), Fp::zero(prime));
  for (const auto& frame : frames)
    for (const auto& g : frame.generators) m.append_row(g.c);
  return matrix_rank(std::move(m));
}

namespace {

struct JoinSample {
  TangentVectorNu nu;
  std::vector<LinearForm<Fp>> points;  // v_i for the X factors
};

JoinSample draw_join_sample(int m, int t, SplitMix64& rng, std::uint64_t prime) {
  LinearForm<Fp> v = random_linear(rng, m, prime);
  LinearForm<Fp> w = random_linear(rng, m, prime);
  while (!linearly_independent(v.c, w.c)) w = random_linear(rng, m, prime);
  JoinSample sample{TangentVectorNu(std::move(v), std::move(w)), {}};
  for (int i = 0; i < t - 2; ++i) sample.points.push_back(random_linear(rng, m, prime));
  return sample;
}

}  // namespace

std::int64_t join_dimension_tau(int m, int d, int t, std::uint64_t seed, std::uint64_t prime) {
  if (t < 2) throw std::invalid_argument("join_dimension_tau: need t >= 2");
  if (d < 3) throw std::invalid_argument("join_dimension_tau: need d >= 3");
  FormRing ring(m, d);
  SplitMix64 rng(seed);
  const auto sample = draw_join_sample(m, t, rng, prime);
  std::vector<TangentFrame> frames{frame_tau(ring, sample.nu, d)};
  for (const auto& v : sample.points) frames.push_back(frame_X(ring, v, d));
  return static_cast<std::int64_t>(frames_rank(ring, d, frames, prime)) - 1;
}

std::int64_t join_dimension_sigma(int m, int d, int t, std::uint64_t seed, std::uint64_t prime) {
  if (t < 1) throw std::invalid_argument("join_dimension_sigma: need t >= 1");
  if (d < 2) throw std::invalid_argument("join_dimension_sigma: need d >= 2");
  FormRing ring(m, d);
  SplitMix64 rng(seed);
  std::vector<TangentFrame> frames;
  for (int i = 0; i < t; ++i) frames.push_back(frame_X(ring, random_linear(rng, m, prime), d));
  return static_cast<std::int64_t>(frames_rank(ring, d, frames, prime)) - 1;
}

DualityReport duality_check(int m, int d, int t, std::uint64_t seed, std::uint64_t prime) {
  if (t < 2) throw std::invalid_argument("duality_check: need t >= 2");
  if (d < 3) throw std::invalid_argument("duality_check: need d >= 3");
  FormRing ring(m, d);
  SplitMix64 rng(seed);
  const auto sample = draw_join_sample(m, t, rng, prime);

  std::vector<TangentFrame> frames{frame_tau(ring, sample.nu, d)};
  for (const auto& v : sample.points) frames.push_back(frame_X(ring, v, d));
  const auto primal = static_cast<std::int64_t>(frames_rank(ring, d, frames, prime)) - 1;

  // Dual side: the same linear forms reread as points of P^m.
  SchemeUnion<Fp> z;
  z.components.push_back(
      TwoThreePoint<Fp>(ProjPoint<Fp>{sample.nu.v.c}, sample.nu.w.c));
  for (const auto& v : sample.points)
    z.components.push_back(FatPoint<Fp>{ProjPoint<Fp>{v.c}, 2});
  const auto dual = static_cast<std::int64_t>(rank(assemble(ring, z, d, Fp::zero(prime))));

  DualityReport report;
  report.m = m;
  report.d = d;
  report.t = t;
  report.seed = seed;
  report.prime = prime;
  report.primal_dim = primal;
  report.dual_rank = dual;
  report.ok = primal == dual - 1;
  return report;
}

}  // namespace taucert
