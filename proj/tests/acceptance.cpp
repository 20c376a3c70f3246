// Acceptance harness: each criterion prints exactly one PASS/FAIL line.
// Exit code is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "phaselip/constructions.hpp"
#include "phaselip/json_io.hpp"
#include "phaselip/priors.hpp"
#include "phaselip/stability.hpp"

using namespace phaselip;

namespace {

Vec random_vec(ScalarField field, std::size_t dim, Rng& rng) {
  Vec v(field, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (field == ScalarField::Real)
      v.set(i, rng.gaussian());
    else
      v.set(i, cx(rng.gaussian(), rng.gaussian()));
  }
  return v;
}

double grid_quotient(const Vec& f, const Vec& g, std::size_t grid) {
  const double a = f.norm_sq() + g.norm_sq();
  const cx ip = inner(f, g);
  if (f.field() == ScalarField::Real)
    return std::sqrt(std::max(0.0, std::min(a - 2.0 * ip.real(),
                                            a + 2.0 * ip.real())));
  double best = a - 2.0 * ip.real();
  for (std::size_t k = 1; k < grid; ++k) {
    const double th = 2.0 * M_PI * double(k) / double(grid);
    best = std::min(best, a - 2.0 * (ip.real() * std::cos(th) +
                                     ip.imag() * std::sin(th)));
  }
  return std::sqrt(std::max(0.0, best));
}

// Independent frame-bound oracle: complex Jacobi sweeps on the Gram matrix;
// the frame operator shares its nonzero spectrum with the Gram.
std::pair<double, double> gram_bounds(const Frame& fr) {
  const std::size_t K = fr.size(), d = fr.dim();
  std::vector<std::vector<cx>> G(K, std::vector<cx>(K));
  for (std::size_t j = 0; j < K; ++j)
    for (std::size_t k = 0; k < K; ++k)
      G[j][k] = inner(fr.vector(k), fr.vector(j));
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < K; ++p)
      for (std::size_t q = p + 1; q < K; ++q) off += std::norm(G[p][q]);
    if (off < 1e-28) break;
    for (std::size_t p = 0; p < K; ++p)
      for (std::size_t q = p + 1; q < K; ++q) {
        const cx apq = G[p][q];
        if (std::abs(apq) < 1e-18) continue;
        const double app = G[p][p].real(), aqq = G[q][q].real();
        const cx phase = apq / std::abs(apq);
        const double tau = (aqq - app) / (2.0 * std::abs(apq));
        const double t = (tau >= 0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
        for (std::size_t k = 0; k < K; ++k) {
          const cx gkp = G[k][p], gkq = G[k][q];
          G[k][p] = c * gkp - std::conj(phase) * s * gkq;
          G[k][q] = phase * s * gkp + c * gkq;
        }
        for (std::size_t k = 0; k < K; ++k) {
          const cx gpk = G[p][k], gqk = G[q][k];
          G[p][k] = c * gpk - phase * s * gqk;
          G[q][k] = std::conj(phase) * s * gpk + c * gqk;
        }
      }
  }
  std::vector<double> ev;
  for (std::size_t k = 0; k < K; ++k) ev.push_back(G[k][k].real());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  ev.resize(std::max(K, d), 0.0);
  double lo = ev[0], hi = ev[0];
  for (std::size_t k = 0; k < d; ++k) {
    lo = std::min(lo, ev[k]);
    hi = std::max(hi, ev[k]);
  }
  return {std::max(0.0, lo), hi};
}

struct MDSetup {
  Frame frame;
  PriorSet prior;
  double bound = 0.0;
  double bound_lo = 0.0;   // frame-bound window
  double bound_hi = 0.0;
};

MDSetup make_md(ScalarField field, std::size_t D, double eps,
                std::uint64_t seed) {
  const std::size_t N = 4, blocks = 2;
  Rng psi_rng(derive_seed(seed, 101));
  SearchConfig est;
  est.restarts = 8;
  est.max_iters = 120;
  est.seed = derive_seed(seed, 102);
  const bool real = field == ScalarField::Real;
  auto [psi, c_est] =
      stable_parseval_family(N, real ? 3 : 4, field, psi_rng, &est);
  Rng phi_rng(derive_seed(seed, 103));
  Frame phi = rotated_onb_union(N, blocks, field, phi_rng);

  MDParams md;
  md.N = int(N);
  // hypothesis margin 2; floor 4 keeps 1/C below the guaranteed flatness
  // density 1/4 of the two-block rotated basis union at c = 1/4
  md.C = std::max(4.0, 2.0 * c_est);
  md.A = 1.0;
  md.B = 1.0;
  md.J_size = int(phi.size());
  md.I_size = int(psi.size());
  md.c = real ? 0.25 : 0.1;
  md.kappa = real ? 4.0 : 8.0;

  SequenceEnvelope env = default_sequences(
      real ? ConstraintKind::RealMD4_1 : ConstraintKind::ComplexMD4_3, D - N,
      eps, md);
  Frame frame = real ? real_md_frame(psi, phi, md, env, D)
                     : complex_md_frame(psi, phi, md, env, D);
  PriorSet prior = envelope_from_beta(env, D, N, field);
  MDSetup s{std::move(frame), std::move(prior)};
  s.bound = real ? std::sqrt(1.0 / (1.0 - eps)) * md.C
                 : std::sqrt(std::max(md.C, 64.0 * md.kappa / (md.c * md.c)) /
                             (1.0 - eps));
  s.bound_lo = std::pow(1.0 - std::sqrt(eps / md.A), 2.0) * md.A;
  s.bound_hi = std::pow(1.0 + std::sqrt(eps), 2.0);
  return s;
}

int failures = 0;

void report(int n, const char* what, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", n, what,
              detail.c_str());
  if (!ok) ++failures;
}

char buf[256];

// ---- criteria ----

void criterion_1_frame_bounds(const Frame& frame) {
  const auto [A, B] = frame_bounds(frame);
  const bool ok = A >= 1.0 - 1e-8 && A <= 1.0 + 1e-6 &&
                  B >= 4.0 / 3.0 - 1e-6 && B <= 4.0 / 3.0 + 1e-8;
  std::snprintf(buf, sizeof buf, "A=%.12g B=%.12g", A, B);
  report(1, "counterexample frame bounds", ok, buf);
}

void criterion_2_witness_brackets(const Frame& frame, double gamma) {
  bool ok = true;
  const auto recs = holder_scan(frame, gamma, 1.0, 1.0, 5, 20);
  double worst = 0.0;
  for (const auto& r : recs) {
    const double dq = 2.0 * std::pow(2.0, -double(r.m) * gamma);
    const double rel = std::abs(r.dq - dq) / dq;
    worst = std::max(worst, rel);
    if (rel > 1e-12) ok = false;
    const double lo = std::ldexp(1.0, -int(r.m)) * r.dq;
    const double hi = 2.0 / std::sqrt(3.0) * std::ldexp(1.0, -int(r.m)) * r.dq;
    if (r.dm < lo * (1.0 - 1e-12) || r.dm > hi * (1.0 + 1e-12)) ok = false;
  }
  std::snprintf(buf, sizeof buf, "m=5..20, max dq rel err %.3g", worst);
  report(2, "witness-pair distance brackets", ok, buf);
}

void criterion_3_holder_exponent(std::uint64_t seed) {
  bool ok = true;
  std::string detail;
  for (double gamma : {1.5, 2.0, 3.0}) {
    const auto spec =
        make_counterexample_spec(40, gamma, 1.0, 1.0, ScalarField::Real, seed);
    const auto [frame, G] = counterexample_frame(spec);
    const auto fit = holder_fit(holder_scan(frame, gamma, 1.0, 1.0, 5, 20));
    const double target = gamma / (1.0 + gamma);
    const double floor = (gamma - 1.0) / gamma - 0.05;
    if (std::abs(fit.sigma - target) > 0.05) ok = false;
    if (fit.sigma > target + 0.05 || fit.sigma < floor) ok = false;
    std::snprintf(buf, sizeof buf, "%sgamma=%g sigma=%.4f", detail.empty() ? "" : ", ",
                  gamma, fit.sigma);
    detail += buf;
  }
  report(3, "Hoelder exponent fits", ok, detail);
}

void criterion_4_refutation(const Frame& frame, const PriorSet& prior,
                            std::uint64_t seed) {
  SearchConfig cfg;
  cfg.restarts = 16;
  cfg.max_iters = 100;
  cfg.seed = derive_seed(seed, 4);
  const auto rep = certify_lipschitz(frame, prior, 1e3, cfg, 2000);
  bool ok = rep.verdict == Verdict::Refuted;
  double recheck = 0.0;
  if (ok) {
    const auto& w = rep.best();
    const auto s = stability_ratio(frame, w.f, w.g);
    recheck = s.ratio;
    ok = s.injectivity_violation || s.ratio > 1e3;
  }
  std::snprintf(buf, sizeof buf, "verdict=%s recheck ratio=%.6g",
                to_string(rep.verdict), recheck);
  report(4, "Lipschitz refutation at bound 1e3", ok, buf);
}

void run_certification(int n, const char* what, const Frame& frame,
                       const PriorSet& prior, double bound, double tol_bound,
                       std::uint64_t seed) {
  SearchConfig cfg;
  cfg.restarts = 32;
  cfg.seed = derive_seed(seed, std::uint64_t(n));
  const auto rep = certify_lipschitz(frame, prior, bound, cfg, 10000);
  const bool ok =
      rep.verdict == Verdict::Certified && rep.max_ratio <= tol_bound;
  std::snprintf(buf, sizeof buf, "max ratio %.6f vs bound %.6f",
                rep.max_ratio, tol_bound);
  report(n, what, ok, buf);
}

void criterion_5(std::uint64_t seed) {
  const double eps = 0.1;
  const auto env = default_sequences(ConstraintKind::Real3_1, 63, eps);
  run_certification(5, "real one-dimensional-core certification",
                    real_onedim_frame(64, env),
                    envelope_from_beta(env, 64, 1, ScalarField::Real),
                    std::sqrt(1.0 / (1.0 - eps)),
                    std::sqrt(1.0 / (1.0 - eps)) + 1e-3, seed);
}

void criterion_6(std::uint64_t seed) {
  const auto env = default_sequences(ConstraintKind::Complex3_2, 63, 0.1);
  run_certification(6, "complex one-dimensional-core certification",
                    complex_onedim_frame(64, env),
                    envelope_from_beta(env, 64, 1, ScalarField::Complex), 5.0,
                    5.0 + 5e-3, seed);
}

void criterion_7(std::uint64_t seed) {
  const double eps = 1.0 / 16.0;
  const MDSetup s = make_md(ScalarField::Real, 24, eps, seed);
  const auto [A, B] = frame_bounds(s.frame);
  const bool bounds_ok =
      A >= s.bound_lo - 1e-6 && B <= s.bound_hi + 1e-6;
  SearchConfig cfg;
  cfg.restarts = 32;
  cfg.seed = derive_seed(seed, 7);
  const auto rep = certify_lipschitz(s.frame, s.prior, s.bound, cfg, 10000);
  const bool ok = bounds_ok && rep.verdict == Verdict::Certified &&
                  rep.max_ratio <= s.bound * (1.0 + 1e-3);
  std::snprintf(buf, sizeof buf,
                "max ratio %.4f vs %.4f, A=%.4f>=%.4f, B=%.4f<=%.4f",
                rep.max_ratio, s.bound * (1.0 + 1e-3), A, s.bound_lo, B,
                s.bound_hi);
  report(7, "real multidimensional certification", ok, buf);
}

void criterion_8(std::uint64_t seed) {
  const double eps = 1.0 / 16.0;
  const MDSetup s = make_md(ScalarField::Complex, 24, eps, seed);
  SearchConfig cfg;
  cfg.restarts = 32;
  cfg.seed = derive_seed(seed, 8);
  const auto rep = certify_lipschitz(s.frame, s.prior, s.bound, cfg, 10000);
  const bool ok = rep.verdict == Verdict::Certified &&
                  rep.max_ratio <= s.bound * (1.0 + 1e-3);
  std::snprintf(buf, sizeof buf, "max ratio %.4f vs %.4f", rep.max_ratio,
                s.bound * (1.0 + 1e-3));
  report(8, "complex multidimensional certification", ok, buf);
}

void criterion_9_oracles(std::uint64_t seed) {
  bool ok = true;
  std::string why;

  // quotient distance vs a 1e5-point unimodular grid, 1e4 pairs
  {
    Rng rng(derive_seed(seed, 91));
    for (int t = 0; t < 10000 && ok; ++t) {
      const auto field = (t % 2 == 0) ? ScalarField::Real : ScalarField::Complex;
      const Vec f = random_vec(field, 8, rng);
      const Vec g = random_vec(field, 8, rng);
      if (std::abs(quotient_distance(f, g) - grid_quotient(f, g, 100000)) >
          1e-6) {
        ok = false;
        why = "quotient grid mismatch";
      }
    }
  }

  // frame_bounds vs Gram-spectrum brute force
  if (ok) {
    Rng rng(derive_seed(seed, 92));
    for (int t = 0; t < 200 && ok; ++t) {
      const auto field = (t % 2 == 0) ? ScalarField::Real : ScalarField::Complex;
      const std::size_t dim = 2 + rng.next_u64() % 3;
      const std::size_t count = 1 + rng.next_u64() % 8;
      std::vector<Vec> vs;
      for (std::size_t k = 0; k < count; ++k)
        vs.push_back(random_vec(field, dim, rng));
      const Frame fr(field, dim, std::move(vs));
      const auto [A, B] = frame_bounds(fr);
      const auto [Ag, Bg] = gram_bounds(fr);
      if (std::abs(A - Ag) > 1e-10 * (1.0 + Bg) ||
          std::abs(B - Bg) > 1e-10 * (1.0 + Bg)) {
        ok = false;
        why = "frame_bounds vs Gram spectrum";
      }
    }
  }

  // sampler membership, 1e4 of 1e4
  if (ok) {
    Rng rng(derive_seed(seed, 93));
    const PriorSet B = envelope_from_G(
        [](int m) { return std::ldexp(1.0, m); }, 1.5, 1.0, 20);
    for (int t = 0; t < 10000 && ok; ++t) {
      if (!membership(B, sample(B, rng)).ok) {
        ok = false;
        why = "sampled vector left the prior";
      }
    }
  }

  // phase / scale invariance of the stability ratio
  if (ok) {
    Rng rng(derive_seed(seed, 94));
    std::vector<Vec> vs;
    for (int k = 0; k < 10; ++k)
      vs.push_back(random_vec(ScalarField::Complex, 5, rng));
    const Frame fr(ScalarField::Complex, 5, std::move(vs));
    for (int t = 0; t < 1000 && ok; ++t) {
      const Vec f = random_vec(ScalarField::Complex, 5, rng);
      const Vec g = random_vec(ScalarField::Complex, 5, rng);
      const auto base = stability_ratio(fr, f, g);
      const cx a = std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
      const double sscale = std::exp(rng.uniform(-1.0, 1.0));
      const auto rot = stability_ratio(fr, a * f, g);
      const auto sc = stability_ratio(fr, sscale * f, sscale * g);
      if (std::abs(rot.ratio - base.ratio) > 1e-12 * (1.0 + base.ratio) ||
          std::abs(sc.ratio - base.ratio) > 1e-12 * (1.0 + base.ratio)) {
        ok = false;
        why = "ratio invariance";
      }
    }
  }

  report(9, "oracle suites", ok, ok ? "all four oracle families agree" : why);
}

void criterion_10_section1_checks(std::uint64_t seed) {
  bool ok = true;
  std::string why = "reduction 100/100, V_4 Hoelder-to-Lipschitz consistent";

  const auto env = default_sequences(ConstraintKind::Real3_1, 15, 0.1);
  const Frame fr = real_onedim_frame(16, env);
  Rng rng(derive_seed(seed, 10));
  for (int t = 0; t < 100 && ok; ++t) {
    const Vec f = random_vec(ScalarField::Real, 16, rng);
    const Vec g = random_vec(ScalarField::Real, 16, rng);
    const auto res = orthogonal_reduction_check(fr, f, g, 1000, 1e-3);
    if (!res.found) {
      ok = false;
      why = "orthogonal pair not found at grid 1e3";
    }
  }

  if (ok) {
    const auto spec =
        make_counterexample_spec(12, 2.0, 1.0, 1.0, ScalarField::Real, seed);
    const auto [frame, G] = counterexample_frame(spec);
    Rng wrng(derive_seed(seed, 105));
    std::vector<Witness> ws;
    for (int t = 0; t < 200; ++t) {
      Vec f(ScalarField::Real, 12), g(ScalarField::Real, 12);
      for (std::size_t i = 0; i < 4; ++i) {
        f.set(i, wrng.gaussian());
        g.set(i, wrng.gaussian());
      }
      const auto s = stability_ratio(frame, f, g);
      Witness w;
      w.f = f;
      w.g = g;
      w.dq = s.dq;
      w.dm = s.dm;
      w.ratio = s.ratio;
      w.injectivity_violation = s.injectivity_violation;
      ws.push_back(std::move(w));
    }
    if (!holder_to_lip_check(ws, 0.5)) {
      ok = false;
      why = "V_4 witnesses broke the upgrade inequality";
    }
  }

  report(10, "orthogonal reduction and Hoelder upgrade", ok, why);
}

}  // namespace

int main() {
  const std::uint64_t seed = 7;
  const auto spec =
      make_counterexample_spec(40, 2.0, 1.0, 1.0, ScalarField::Real, seed);
  const auto [frame, G] = counterexample_frame(spec);
  const PriorSet prior =
      envelope_from_G([G](int m) { return G(m); }, 2.0, 1.0, 40);

  criterion_1_frame_bounds(frame);
  criterion_2_witness_brackets(frame, 2.0);
  criterion_3_holder_exponent(seed);
  criterion_4_refutation(frame, prior, seed);
  criterion_5(seed);
  criterion_6(seed);
  criterion_7(seed);
  criterion_8(seed);
  criterion_9_oracles(seed);
  criterion_10_section1_checks(seed);

  if (failures == 0)
    std::printf("all 10 acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures;
}
