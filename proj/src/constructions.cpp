#include "phaselip/constructions.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

namespace phaselip {

namespace {

Vec embed(const Vec& v, std::size_t dim, std::size_t offset = 0) {
  Vec out(v.field(), dim);
  for (std::size_t i = 0; i < v.dim(); ++i) out.set(offset + i, v[i]);
  return out;
}

Frame gaussian_family(std::size_t n, std::size_t count, ScalarField field,
                      Rng& rng) {
  std::vector<Vec> vs;
  vs.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Vec v(field, n);
    for (std::size_t i = 0; i < n; ++i)
      v.set(i, field == ScalarField::Real
                   ? cx(rng.gaussian(), 0.0)
                   : cx(rng.gaussian(), rng.gaussian()));
    vs.push_back(std::move(v));
  }
  return Frame(field, n, std::move(vs));
}

void require_head_frame(const Frame& fr, std::size_t N, ScalarField field,
                        const char* name) {
  if (fr.dim() != N) throw SpecError(std::string(name) + ": wrong dimension");
  if (fr.field() != field) throw SpecError(std::string(name) + ": wrong field");
  const auto [a, b] = frame_bounds(fr);
  if (a <= 0.0 || b > 1.0 + 1e-8)
    throw SpecError(std::string(name) + ": frame bounds must satisfy 0 < A <= B <= 1");
}

}  // namespace

double GrowthFunction::operator()(int m) const { return std::ldexp(C, m); }

std::pair<Frame, double> stable_parseval_family(std::size_t n,
                                                std::size_t oversampling,
                                                ScalarField field, Rng& rng,
                                                const SearchConfig* estimate) {
  if (n < 1) throw SpecError("stable_parseval_family: n must be positive");
  const std::size_t count = oversampling * n;
  const std::size_t needed =
      field == ScalarField::Real ? (2 * n >= 1 ? 2 * n - 1 : 1) : 4 * n;
  if (count < needed)
    throw SpecError("stable_parseval_family: oversampling too small");
  for (int attempt = 0; attempt < 3; ++attempt) {
    try {
      Frame parseval = parsevalize(gaussian_family(n, count, field, rng));
      double c_est = 1.0;
      if (estimate && n > 1) {
        const SubspaceEstimate est = subspace_constant(parseval, n, *estimate);
        if (est.diverged)
          throw SearchError(
              "stable_parseval_family: family fails phase retrieval");
        c_est = std::max(1.0, est.value);
      }
      return {std::move(parseval), c_est};
    } catch (const RankError&) {
      if (attempt == 2) throw;
    }
  }
  throw RankError("stable_parseval_family: repeated rank-deficient draws");
}

CounterexampleSpec make_counterexample_spec(std::size_t D, double gamma,
                                            double R, double C,
                                            ScalarField field,
                                            std::uint64_t seed,
                                            const SearchConfig* estimate) {
  if (D < 2) throw SpecError("make_counterexample_spec: D must be at least 2");
  CounterexampleSpec spec;
  spec.D = D;
  spec.C = C;
  spec.gamma = gamma;
  spec.R = R;
  spec.field = field;
  const std::size_t oversampling = field == ScalarField::Real ? 3 : 4;
  spec.levels.reserve(D);
  for (std::size_t n = 1; n <= D; ++n) {
    Rng rng(derive_seed(seed, n));
    auto [fr, c_est] =
        stable_parseval_family(n, oversampling, field, rng, estimate);
    spec.levels.push_back(std::move(fr));
    if (estimate) spec.C = std::max(spec.C, c_est);
  }
  return spec;
}

std::pair<Frame, GrowthFunction> counterexample_frame(
    const CounterexampleSpec& spec) {
  if (spec.levels.size() != spec.D)
    throw SpecError("counterexample_frame: need one level family per n <= D");
  std::vector<Vec> vs;
  std::vector<std::string> labels;
  for (std::size_t n = 1; n <= spec.D; ++n) {
    vs.push_back(Vec::basis(spec.field, spec.D, n));
    labels.push_back("onb:" + std::to_string(n));
  }
  for (std::size_t n = 1; n <= spec.D; ++n) {
    const Frame& level = spec.levels[n - 1];
    if (level.dim() != n || level.field() != spec.field)
      throw SpecError("counterexample_frame: level family has wrong shape");
    const auto [a, b] = frame_bounds(level);
    if (std::abs(a - 1.0) > 1e-8 || std::abs(b - 1.0) > 1e-8)
      throw SpecError("counterexample_frame: level family is not Parseval");
    const double scale = std::ldexp(1.0, -int(n));
    for (std::size_t j = 0; j < level.size(); ++j) {
      Vec v = embed(level.vector(j), spec.D);
      v *= scale;
      vs.push_back(std::move(v));
      labels.push_back("level:" + std::to_string(n) + ":" + std::to_string(j + 1));
    }
  }
  return {Frame(spec.field, spec.D, std::move(vs), std::move(labels)),
          GrowthFunction{spec.C}};
}

Frame real_onedim_frame(std::size_t D, const SequenceEnvelope& env) {
  if (env.kind != ConstraintKind::Real3_1)
    throw SpecError("real_onedim_frame: envelope kind must be Real3_1");
  env.validate();
  if (D < 2) throw SpecError("real_onedim_frame: D must be at least 2");
  std::vector<Vec> vs;
  std::vector<std::string> labels;
  vs.push_back(Vec::basis(ScalarField::Real, D, 1));
  labels.push_back("phi:1");
  for (std::size_t n = 2; n <= D; ++n) {
    Vec v(ScalarField::Real, D);
    v.set(0, env.alpha_at(n));
    v.set(n - 1, 1.0);
    vs.push_back(std::move(v));
    labels.push_back("phi:" + std::to_string(n));
  }
  return Frame(ScalarField::Real, D, std::move(vs), std::move(labels));
}

Frame complex_onedim_frame(std::size_t D, const SequenceEnvelope& env) {
  if (env.kind != ConstraintKind::Complex3_2)
    throw SpecError("complex_onedim_frame: envelope kind must be Complex3_2");
  env.validate();
  if (D < 2) throw SpecError("complex_onedim_frame: D must be at least 2");
  std::vector<Vec> vs;
  std::vector<std::string> labels;
  vs.push_back(Vec::basis(ScalarField::Complex, D, 1));
  labels.push_back("phi:1");
  for (std::size_t n = 2; n <= D; ++n) {
    Vec v1(ScalarField::Complex, D);
    v1.set(0, env.alpha_at(n));
    v1.set(n - 1, 1.0);
    vs.push_back(std::move(v1));
    labels.push_back("phi:" + std::to_string(n) + ":1");
    Vec vi(ScalarField::Complex, D);
    vi.set(0, env.alpha_at(n));
    vi.set(n - 1, cx(0.0, 1.0));
    vs.push_back(std::move(vi));
    labels.push_back("phi:" + std::to_string(n) + ":i");
  }
  return Frame(ScalarField::Complex, D, std::move(vs), std::move(labels));
}

FlatnessResult flatness_check(const Frame& phi, double c, double kappa,
                              FlatnessMode mode, std::size_t samples,
                              Rng& rng) {
  if (phi.size() == 0) throw EmptyFrameError("flatness_check: empty family");
  if (samples < 1) throw SpecError("flatness_check: need at least one sample");
  const std::size_t N = phi.dim();
  const double sqrt_n = std::sqrt(double(N));
  auto random_unit = [&] {
    Vec x(phi.field(), N);
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        x.set(i, phi.field() == ScalarField::Real
                     ? cx(rng.gaussian(), 0.0)
                     : cx(rng.gaussian(), rng.gaussian()));
        n2 += std::norm(x[i]);
      }
    } while (n2 < 1e-12);
    x *= cx(1.0 / std::sqrt(n2), 0.0);
    return x;
  };
  auto band_ok = [&](const std::vector<cx>& coeffs, std::size_t j) {
    const double v = sqrt_n * std::abs(coeffs[j]);
    return v >= c && v <= 1.0 / c;
  };
  FlatnessResult res;
  res.worst_density = 1.0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t good = 0;
    if (mode == FlatnessMode::Real) {
      const Vec x = random_unit();
      const auto ax = analysis(phi, x);
      for (std::size_t j = 0; j < phi.size(); ++j)
        if (std::abs(ax[j]) >= c) ++good;
    } else {
      const Vec x = random_unit();
      const Vec y = random_unit();
      const auto ax = analysis(phi, x);
      const auto ay = analysis(phi, y);
      for (std::size_t j = 0; j < phi.size(); ++j)
        if (band_ok(ax, j) && band_ok(ay, j)) ++good;
    }
    res.worst_density =
        std::min(res.worst_density, double(good) / double(phi.size()));
  }
  res.pass = res.worst_density >= 1.0 / kappa;
  return res;
}

namespace {

Frame build_md_frame(const Frame& psi, const Frame& phi, const MDParams& params,
                     const SequenceEnvelope& env, std::size_t D,
                     bool complex_variant) {
  const ScalarField field =
      complex_variant ? ScalarField::Complex : ScalarField::Real;
  env.validate();
  const std::size_t N = std::size_t(params.N);
  if (D <= N) throw SpecError("md frame: D must exceed the head dimension");
  require_head_frame(psi, N, field, "md frame psi");
  require_head_frame(phi, N, field, "md frame phi");
  if (std::size_t(params.J_size) != phi.size() ||
      std::size_t(params.I_size) != psi.size())
    throw SpecError("md frame: index-set sizes disagree with the families");
  {
    Rng flat_rng(0x1f1a7ULL);
    const FlatnessResult fl =
        flatness_check(phi, params.c, complex_variant ? params.kappa : params.C,
                       complex_variant ? FlatnessMode::Complex : FlatnessMode::Real,
                       2000, flat_rng);
    if (!fl.pass) throw FlatnessError("md frame: phi fails the flatness condition");
  }
  const std::size_t tail = D - N;  // tail indices n = 2 .. tail + 1
  const double J = double(phi.size());
  const double tail_scale =
      complex_variant ? 1.0 / std::sqrt(2.0 * J) : 1.0 / std::sqrt(J);

  std::vector<Vec> vs;
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    vs.push_back(embed(psi.vector(j), D));
    labels.push_back("psi:" + std::to_string(j + 1));
  }
  for (std::size_t n = 2; n <= tail + 1; ++n) {
    const double a = env.alpha_at(n);
    const std::size_t coord = N + n - 2;  // tail index n -> coordinate N+n-1
    for (std::size_t j = 0; j < phi.size(); ++j) {
      Vec base = embed(phi.vector(j), D);
      base *= a;
      if (!complex_variant) {
        Vec v = base;
        v.set(coord, v[coord] + tail_scale);
        vs.push_back(std::move(v));
        labels.push_back("phi:" + std::to_string(j + 1) + ":" +
                         std::to_string(n) + ":1");
      } else {
        Vec v1 = base;
        v1.set(coord, v1[coord] + tail_scale);
        vs.push_back(std::move(v1));
        labels.push_back("phi:" + std::to_string(j + 1) + ":" +
                         std::to_string(n) + ":1");
        Vec vi = base;
        vi.set(coord, vi[coord] - cx(0.0, tail_scale));
        vs.push_back(std::move(vi));
        labels.push_back("phi:" + std::to_string(j + 1) + ":" +
                         std::to_string(n) + ":i");
      }
    }
  }
  return Frame(field, D, std::move(vs), std::move(labels));
}

}  // namespace

Frame real_md_frame(const Frame& psi, const Frame& phi, const MDParams& params,
                    const SequenceEnvelope& env, std::size_t D) {
  if (env.kind != ConstraintKind::RealMD4_1)
    throw SpecError("real_md_frame: envelope kind must be RealMD4_1");
  return build_md_frame(psi, phi, params, env, D, false);
}

Frame complex_md_frame(const Frame& psi, const Frame& phi,
                       const MDParams& params, const SequenceEnvelope& env,
                       std::size_t D) {
  if (env.kind != ConstraintKind::ComplexMD4_3)
    throw SpecError("complex_md_frame: envelope kind must be ComplexMD4_3");
  if (!(env.epsilon < std::min(0.125, params.A)))
    throw SpecError("complex_md_frame: epsilon must be below min(1/8, A)");
  return build_md_frame(psi, phi, params, env, D, true);
}

Frame rotated_onb_union(std::size_t N, std::size_t blocks, ScalarField field,
                        Rng& rng) {
  if (N < 1 || blocks < 1) throw SpecError("rotated_onb_union: bad shape");
  const auto d = static_cast<Eigen::Index>(N);
  const double scale = 1.0 / std::sqrt(double(blocks));
  std::vector<Vec> vs;
  std::vector<std::string> labels;
  for (std::size_t b = 0; b < blocks; ++b) {
    Eigen::MatrixXcd g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        g(i, j) = field == ScalarField::Real
                      ? cx(rng.gaussian(), 0.0)
                      : cx(rng.gaussian(), rng.gaussian());
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    const Eigen::MatrixXcd q =
        qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
      Vec v(field, N);
      for (Eigen::Index i = 0; i < d; ++i) {
        const cx val = scale * q(i, j);
        v.set(std::size_t(i),
              field == ScalarField::Real ? cx(val.real(), 0.0) : val);
      }
      vs.push_back(std::move(v));
      labels.push_back("rot:" + std::to_string(b + 1) + ":" +
                       std::to_string(j + 1));
    }
  }
  return Frame(field, N, std::move(vs), std::move(labels));
}

}  // namespace phaselip
