#include "phaselip/stability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace phaselip {

namespace {

constexpr double kDenomFloor = 1e-300;  // line-search regularization only
constexpr double kSeparationFloor = 1e-8;

double objective(const RatioSample& s) {
  if (s.injectivity_violation) return std::numeric_limits<double>::infinity();
  return s.dq / (s.dm + kDenomFloor);
}

Vec embed_head(const std::vector<cx>& head, ScalarField field,
               std::size_t dim) {
  Vec v(field, dim);
  for (std::size_t i = 0; i < head.size(); ++i) v.set(i, head[i]);
  return v;
}

}  // namespace

void SearchConfig::validate() const {
  if (restarts <= 0 || max_iters <= 0 || !(step_init > 0.0) || !(tol > 0.0) ||
      !(step_shrink > 0.0 && step_shrink < 1.0))
    throw SpecError("SearchConfig: invalid parameters");
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::Refuted: return "refuted";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

const Witness& StabilityReport::best() const {
  if (witnesses.empty()) throw SearchError("report holds no witnesses");
  return witnesses.back();
}

RatioSample stability_ratio(const Frame& frame, const Vec& f, const Vec& g) {
  RatioSample s;
  s.dq = quotient_distance(f, g);
  s.dm = measurement_distance(frame, f, g);
  if (s.dm > 0.0) {
    s.ratio = s.dq / s.dm;
    s.injectivity_violation = s.dq > 0.0 && s.dm <= 1e-14 * s.dq;
  } else if (s.dq > 0.0) {
    s.ratio = std::numeric_limits<double>::infinity();
    s.injectivity_violation = true;
  } else {
    s.ratio = 0.0;
  }
  return s;
}

// ---------------------------------------------------------------------------
// subspace_constant

namespace {

struct HeadPairState {
  std::vector<double> u;  // raw parameters of f (re/im interleaved if complex)
  std::vector<double> v;  // raw parameters of g
};

struct HeadPairEval {
  RatioSample sample;
  Vec f;
  Vec g;
  bool valid = false;
};

std::vector<cx> params_to_coeffs(const std::vector<double>& p, bool complex) {
  std::vector<cx> c;
  if (complex) {
    c.reserve(p.size() / 2);
    for (std::size_t i = 0; i + 1 < p.size(); i += 2) c.emplace_back(p[i], p[i + 1]);
  } else {
    c.reserve(p.size());
    for (double x : p) c.emplace_back(x, 0.0);
  }
  return c;
}

/// Realizes the extremal regime ||f|| = 1, ||g|| <= 1, <f,g> = 0 from raw
/// parameters: f is normalized, g is orthogonalized against f and clipped.
HeadPairEval eval_head_pair(const Frame& frame, std::size_t m,
                            const HeadPairState& st) {
  HeadPairEval ev;
  const bool complex = frame.field() == ScalarField::Complex;
  std::vector<cx> fu = params_to_coeffs(st.u, complex);
  std::vector<cx> gv = params_to_coeffs(st.v, complex);
  double nf2 = 0.0;
  for (cx c : fu) nf2 += std::norm(c);
  if (nf2 < 1e-20) return ev;
  const double nf = std::sqrt(nf2);
  for (cx& c : fu) c /= nf;
  cx ip = 0.0;
  for (std::size_t i = 0; i < m; ++i) ip += gv[i] * std::conj(fu[i]);
  double ng2 = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    gv[i] -= ip * fu[i];
    ng2 += std::norm(gv[i]);
  }
  if (ng2 < 1e-20) {
    // g collapses onto span{f} (always at m = 1): the admissible orthogonal
    // partner is g = 0
    for (cx& c : gv) c = 0.0;
    ng2 = 0.0;
  }
  if (ng2 > 1.0) {
    const double ng = std::sqrt(ng2);
    for (cx& c : gv) c /= ng;
  }
  ev.f = embed_head(fu, frame.field(), frame.dim());
  ev.g = embed_head(gv, frame.field(), frame.dim());
  ev.sample = stability_ratio(frame, ev.f, ev.g);
  ev.valid = ev.sample.dq > kSeparationFloor;
  return ev;
}

}  // namespace

SubspaceEstimate subspace_constant(const Frame& frame, std::size_t m,
                                   const SearchConfig& cfg) {
  cfg.validate();
  if (m < 1 || m > frame.dim())
    throw RangeError("subspace_constant: head dimension out of range");
  const bool complex = frame.field() == ScalarField::Complex;
  const std::size_t nparams = complex ? 2 * m : m;

  // Structured starts: sign-flip pairs (e_i + e_j, e_i - e_j) are the
  // classical extremizers and detect frames that fail phase retrieval.
  std::vector<HeadPairState> starts;
  for (std::size_t i = 0; i < m && starts.size() + 1 < std::size_t(cfg.restarts);
       ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      HeadPairState st;
      st.u.assign(nparams, 0.0);
      st.v.assign(nparams, 0.0);
      const std::size_t si = complex ? 2 * i : i;
      const std::size_t sj = complex ? 2 * j : j;
      st.u[si] = 1.0; st.u[sj] = 1.0;
      st.v[si] = 1.0; st.v[sj] = -1.0;
      starts.push_back(std::move(st));
      if (starts.size() + 1 >= std::size_t(cfg.restarts)) break;
    }
  }
  while (starts.size() < std::size_t(cfg.restarts)) starts.push_back({});

  SubspaceEstimate best;
  bool any_valid = false;
  for (std::size_t r = 0; r < starts.size(); ++r) {
    Rng rng(derive_seed(cfg.seed, r));
    HeadPairState st = starts[r];
    if (st.u.empty()) {
      st.u.resize(nparams);
      st.v.resize(nparams);
      for (double& x : st.u) x = rng.gaussian();
      for (double& x : st.v) x = rng.gaussian();
    }
    HeadPairEval cur = eval_head_pair(frame, m, st);
    double cur_obj = cur.valid ? objective(cur.sample) : -1.0;
    double step = cfg.step_init;
    for (int it = 0; it < cfg.max_iters && step > 1e-9; ++it) {
      bool improved = false;
      for (std::size_t k = 0; k < 2 * nparams; ++k) {
        std::vector<double>& target = (k < nparams) ? st.u : st.v;
        const std::size_t idx = k % nparams;
        const double saved = target[idx];
        for (double dir : {1.0, -1.0}) {
          target[idx] = saved + dir * step;
          HeadPairEval cand = eval_head_pair(frame, m, st);
          if (cand.valid && objective(cand.sample) > cur_obj) {
            cur = std::move(cand);
            cur_obj = objective(cur.sample);
            improved = true;
            break;
          }
          target[idx] = saved;
        }
      }
      if (!improved) step *= cfg.step_shrink;
      if (cur.valid && cur.sample.injectivity_violation) break;
    }
    if (cur.valid) {
      any_valid = true;
      if (cur.sample.injectivity_violation) {
        best.diverged = true;
        best.value = std::numeric_limits<double>::infinity();
        return best;
      }
      best.value = std::max(best.value, cur.sample.ratio);
    }
  }
  if (!any_valid)
    throw SearchError("subspace_constant: no admissible pair found");
  return best;
}

// ---------------------------------------------------------------------------
// worst_pair_search

namespace {

void record_witness(StabilityReport& rep, const Frame& frame, const Vec& f,
                    const Vec& g) {
  const RatioSample s = stability_ratio(frame, f, g);
  const double r = s.injectivity_violation
                       ? std::numeric_limits<double>::infinity()
                       : s.ratio;
  if (rep.witnesses.empty() || r > rep.max_ratio) {
    rep.witnesses.push_back({f, g, s.dq, s.dm, s.ratio, s.injectivity_violation});
    rep.max_ratio = std::max(rep.max_ratio, s.ratio);
  }
}

/// Seeds with the analytic witness pairs x = e1 +- t_{m-1} e_m; for a FromG
/// prior t_{m-1} equals R 2^{-m gamma} C^{-gamma}, the analytic tau.
std::vector<std::pair<Vec, Vec>> envelope_witness_seeds(const PriorSet& B) {
  std::vector<std::pair<Vec, Vec>> out;
  if (B.provenance != PriorProvenance::FromG || B.head_dim != 1) return out;
  for (std::size_t m = 2; m <= B.D; ++m) {
    const double tau = B.t_at(m - 1);
    if (!(tau > 0.0)) continue;
    Vec x(B.field, B.D), y(B.field, B.D);
    x.set(0, 1.0);
    y.set(0, 1.0);
    x.set(m - 1, tau);
    y.set(m - 1, -tau);
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

}  // namespace

namespace {

/// One independent restart: starts from the supplied pair (or a fresh sample)
/// and hill-climbs the ratio, recording its own improving witnesses.
StabilityReport run_restart(const Frame& frame, const PriorSet& B,
                            const SearchConfig& cfg, std::size_t r,
                            const std::pair<Vec, Vec>* start) {
  StabilityReport rep;
  Rng rng(derive_seed(cfg.seed ^ 0x77a5f3ULL, r));
  Vec f = start ? start->first : sample(B, rng);
  Vec g = start ? start->second : sample(B, rng);
  RatioSample cur = stability_ratio(frame, f, g);
  record_witness(rep, frame, f, g);
  if (cur.injectivity_violation) return rep;
  double cur_obj = objective(cur);
  double step = cfg.step_init;
  const bool complex = B.field == ScalarField::Complex;
  for (int it = 0; it < cfg.max_iters && step > 1e-10; ++it) {
    bool improved = false;
    const int proposals = 8;
    for (int p = 0; p < proposals; ++p) {
      const bool target_f = (p % 2 == 0);
      const Vec& work = target_f ? f : g;
      const std::size_t i = rng.next_u64() % B.D;
      const double scale =
          std::max(std::abs(work[i]), i >= B.head_dim ? B.t_at(i) : 1.0);
      const cx delta = complex ? cx(rng.gaussian(), rng.gaussian())
                               : cx(rng.gaussian(), 0.0);
      Vec moved = work;
      moved.set(i, work[i] + step * scale * delta);
      Vec repaired;
      try {
        repaired = repair(B, moved);
      } catch (const DegenerateError&) {
        continue;
      }
      const Vec& other = target_f ? g : f;
      const RatioSample s = target_f ? stability_ratio(frame, repaired, other)
                                     : stability_ratio(frame, other, repaired);
      if (s.dq <= kSeparationFloor) continue;
      if (objective(s) > cur_obj) {
        if (target_f) f = repaired; else g = repaired;
        cur = s;
        cur_obj = objective(s);
        record_witness(rep, frame, f, g);
        improved = true;
      }
    }
    if (!improved) step *= cfg.step_shrink;
    if (cur.injectivity_violation) break;
  }
  return rep;
}

void merge_reports(StabilityReport& into, const StabilityReport& part) {
  for (const Witness& w : part.witnesses) {
    if (into.witnesses.empty() || w.ratio > into.max_ratio ||
        w.injectivity_violation) {
      into.witnesses.push_back(w);
      into.max_ratio = std::max(into.max_ratio, w.ratio);
    }
  }
}

}  // namespace

int worker_threads() {
  if (const char* env = std::getenv("PHASELIP_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

StabilityReport worst_pair_search(const Frame& frame, const PriorSet& B,
                                  const SearchConfig& cfg,
                                  const std::vector<Witness>* seeds) {
  cfg.validate();
  if (frame.dim() != B.D)
    throw DimensionError("worst_pair_search: frame and prior dimension differ");
  const auto analytic = envelope_witness_seeds(B);
  std::vector<std::pair<Vec, Vec>> starts;
  for (const auto& p : analytic) starts.push_back(p);
  if (seeds)
    for (const Witness& w : *seeds) starts.emplace_back(w.f, w.g);
  const std::size_t total =
      std::max<std::size_t>(std::size_t(cfg.restarts), starts.size());

  std::vector<StabilityReport> parts(total);
  const int threads = std::min<int>(worker_threads(), int(total));
  if (threads <= 1) {
    for (std::size_t r = 0; r < total; ++r)
      parts[r] = run_restart(frame, B, cfg, r,
                             r < starts.size() ? &starts[r] : nullptr);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t r = next.fetch_add(1); r < total;
             r = next.fetch_add(1))
          parts[r] = run_restart(frame, B, cfg, r,
                                 r < starts.size() ? &starts[r] : nullptr);
      });
    }
    for (std::thread& th : pool) th.join();
  }
  // merge in restart order: independent of scheduling
  StabilityReport rep;
  for (const StabilityReport& part : parts) merge_reports(rep, part);
  if (rep.witnesses.empty())
    throw SearchError("worst_pair_search: no valid pair found");
  for (const Witness& w : rep.witnesses)
    if (w.injectivity_violation) rep.verdict = Verdict::Refuted;
  return rep;
}

// ---------------------------------------------------------------------------
// scans and fits

std::vector<ScanRecord> holder_scan(const Frame& frame, double gamma, double R,
                                    double C, std::size_t m_lo,
                                    std::size_t m_hi) {
  if (m_lo < 2 || m_hi < m_lo || m_hi > frame.dim())
    throw RangeError("holder_scan: m range outside truncation");
  std::vector<ScanRecord> out;
  out.reserve(m_hi - m_lo + 1);
  for (std::size_t m = m_lo; m <= m_hi; ++m) {
    const auto [x, y] = paper_witness_pair(m, gamma, R, C, frame.dim(),
                                           frame.field());
    out.push_back({m, quotient_distance(x, y),
                   measurement_distance(frame, x, y)});
  }
  return out;
}

HolderFit holder_fit(const std::vector<ScanRecord>& records) {
  std::vector<std::pair<double, double>> pts;  // (log dm, log dq)
  for (const ScanRecord& r : records)
    if (r.dq > 0.0 && r.dm > 0.0)
      pts.emplace_back(std::log(r.dm), std::log(r.dq));
  if (pts.size() < 3) throw FitError("holder_fit: need at least 3 records");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) { mx += x; my += y; }
  mx /= double(pts.size());
  my /= double(pts.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) throw FitError("holder_fit: degenerate abscissae");
  HolderFit fit;
  fit.sigma = sxy / sxx;
  const double b = my - fit.sigma * mx;
  for (const auto& [x, y] : pts)
    fit.residual = std::max(fit.residual, std::abs(y - (fit.sigma * x + b)));
  return fit;
}

StabilityReport certify_lipschitz(const Frame& frame, const PriorSet& B,
                                  double claimed_bound, const SearchConfig& cfg,
                                  std::size_t sample_pairs) {
  cfg.validate();
  if (!(claimed_bound > 0.0))
    throw SpecError("certify_lipschitz: bound must be positive");
  StabilityReport rep;
  Rng rng(derive_seed(cfg.seed ^ 0x5eedULL, 0));
  for (std::size_t k = 0; k < sample_pairs; ++k) {
    const Vec f = sample(B, rng);
    const Vec g = sample(B, rng);
    if (quotient_distance(f, g) <= kSeparationFloor) continue;
    record_witness(rep, frame, f, g);
  }
  Verdict search_verdict = Verdict::Inconclusive;
  try {
    StabilityReport search = worst_pair_search(frame, B, cfg);
    for (const Witness& w : search.witnesses) {
      if (rep.witnesses.empty() || w.ratio > rep.max_ratio ||
          w.injectivity_violation) {
        rep.witnesses.push_back(w);
        rep.max_ratio = std::max(rep.max_ratio, w.ratio);
      }
    }
    search_verdict = Verdict::Certified;
  } catch (const SearchError&) {
    search_verdict = Verdict::Inconclusive;
  }
  rep.claimed_bound = claimed_bound;
  bool refuted = false;
  for (const Witness& w : rep.witnesses) {
    if (w.injectivity_violation) refuted = true;
    // independent re-evaluation of every would-be refuting witness
    if (w.ratio > claimed_bound * (1.0 + cfg.tol)) {
      const RatioSample s = stability_ratio(frame, w.f, w.g);
      if (s.injectivity_violation || s.ratio > claimed_bound * (1.0 + cfg.tol))
        refuted = true;
    }
  }
  if (refuted)
    rep.verdict = Verdict::Refuted;
  else if (search_verdict == Verdict::Certified)
    rep.verdict = Verdict::Certified;
  else
    rep.verdict = Verdict::Inconclusive;
  return rep;
}

// ---------------------------------------------------------------------------
// orthogonal reduction and Hoelder-to-Lipschitz checks

namespace {

struct SpanBasis {
  Vec u;
  Vec w;
};

SpanBasis orthonormal_span(const Vec& f, const Vec& g) {
  const double nf = f.norm();
  if (nf == 0.0) throw DegenerateError("orthogonal_reduction_check: f = 0");
  Vec u = (cx(1.0 / nf, 0.0)) * f;
  Vec w = g;
  const cx ip = inner(g, u);
  w -= ip * u;
  const double nw = w.norm();
  if (nw <= 1e-12 * g.norm())
    throw DegenerateError("orthogonal_reduction_check: dependent inputs");
  w *= cx(1.0 / nw, 0.0);
  return {std::move(u), std::move(w)};
}

double span_pair_dm(const std::vector<cx>& au, const std::vector<cx>& aw,
                    cx f1, cx f2, cx g1, cx g2) {
  double s = 0.0;
  for (std::size_t k = 0; k < au.size(); ++k) {
    const double d =
        std::abs(f1 * au[k] + f2 * aw[k]) - std::abs(g1 * au[k] + g2 * aw[k]);
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

ReductionResult orthogonal_reduction_check(const Frame& frame, const Vec& f,
                                           const Vec& g, std::size_t grid_size,
                                           double tol) {
  const SpanBasis basis = orthonormal_span(f, g);
  const double d = quotient_distance(f, g);
  const double dm0 = measurement_distance(frame, f, g);
  const double dm_budget = dm0 * (1.0 + tol);

  ReductionResult res;
  if (std::abs(inner(f, g)) <= 1e-12 * f.norm() * g.norm()) {
    res.found = true;
    res.f = f;
    res.g = g;
    res.dq = d;
    res.dm = dm0;
    return res;
  }

  const std::vector<cx> au = analysis(frame, basis.u);
  const std::vector<cx> aw = analysis(frame, basis.w);
  const bool complex = frame.field() == ScalarField::Complex;

  // coefficients of the orthogonal pair in the {u, w} basis:
  //   f' = r1 (cos(theta) u + e^{i phi} sin(theta) w)
  //   g' = r2 (-e^{-i phi} sin(theta) u + cos(theta) w)
  // with r1 = d cos(tau), r2 = d sin(tau); the split keeps
  // dq(f', g') = sqrt(r1^2 + r2^2) = d exactly.
  auto eval = [&](double theta, double phi, double tau) {
    const double r1 = d * std::cos(tau), r2 = d * std::sin(tau);
    const cx e = complex ? cx(std::cos(phi), std::sin(phi)) : cx(1.0, 0.0);
    const cx f1 = r1 * std::cos(theta), f2 = r1 * std::sin(theta) * e;
    const cx g1 = -r2 * std::sin(theta) * std::conj(e),
             g2 = r2 * std::cos(theta);
    return span_pair_dm(au, aw, f1, f2, g1, g2);
  };

  const std::size_t n = complex
                            ? std::max<std::size_t>(
                                  8, std::size_t(std::cbrt(double(grid_size) *
                                                           double(grid_size))))
                            : grid_size;
  double best_dm = std::numeric_limits<double>::infinity();
  double bt = 0.0, bp = 0.0, bs = M_PI / 4.0;
  const std::size_t nphi = complex ? n : 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = M_PI * double(i) / double(n);
    for (std::size_t j = 0; j < nphi; ++j) {
      const double phi = complex ? 2.0 * M_PI * double(j) / double(n) : 0.0;
      for (std::size_t k = 1; k < n; ++k) {
        const double tau = 0.5 * M_PI * double(k) / double(n);
        const double dm = eval(theta, phi, tau);
        if (dm < best_dm) {
          best_dm = dm;
          bt = theta; bp = phi; bs = tau;
        }
      }
    }
  }
  // local refinement from the best grid point
  double step = M_PI / double(n);
  for (int it = 0; it < 200 && step > 1e-12; ++it) {
    bool improved = false;
    for (int axis = 0; axis < (complex ? 3 : 2); ++axis) {
      for (double dir : {1.0, -1.0}) {
        double t = bt, p = bp, s = bs;
        if (axis == 0) t += dir * step;
        else if (axis == 1) s = std::clamp(s + dir * step, 1e-9, M_PI / 2 - 1e-9);
        else p += dir * step;
        const double dm = eval(t, p, s);
        if (dm < best_dm) {
          best_dm = dm;
          bt = t; bp = p; bs = s;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  const double r1 = d * std::cos(bs), r2 = d * std::sin(bs);
  const cx e = complex ? cx(std::cos(bp), std::sin(bp)) : cx(1.0, 0.0);
  Vec fp = (cx(r1 * std::cos(bt), 0.0)) * basis.u;
  {
    Vec tw = basis.w;
    tw *= r1 * std::sin(bt) * e;
    fp += tw;
  }
  Vec gp = basis.u;
  gp *= -r2 * std::sin(bt) * std::conj(e);
  {
    Vec tw = basis.w;
    tw *= cx(r2 * std::cos(bt), 0.0);
    gp += tw;
  }
  res.f = std::move(fp);
  res.g = std::move(gp);
  res.dq = quotient_distance(res.f, res.g);
  res.dm = measurement_distance(frame, res.f, res.g);
  res.found = std::abs(res.dq - d) <= tol && res.dm <= dm_budget;
  return res;
}

bool holder_to_lip_check(const std::vector<Witness>& witnesses, double sigma,
                         double tol) {
  if (witnesses.empty()) throw FitError("holder_to_lip_check: no witnesses");
  if (!(sigma > 0.0 && sigma <= 1.0))
    throw SpecError("holder_to_lip_check: sigma outside (0, 1]");
  double c_holder = 0.0;
  for (const Witness& w : witnesses) {
    if (w.dm <= 0.0) {
      if (w.dq > 0.0) return false;  // no Lipschitz constant exists
      continue;
    }
    const double scale = std::pow(w.dm, sigma) *
                         std::pow(w.f.norm() + w.g.norm(), 1.0 - sigma);
    if (scale > 0.0) c_holder = std::max(c_holder, w.dq / scale);
  }
  if (c_holder == 0.0) return true;
  const double lip = std::pow(4.0 * c_holder, 1.0 / sigma);
  for (const Witness& w : witnesses) {
    if (w.dm <= 0.0) continue;
    if (w.dq > lip * w.dm * (1.0 + tol)) return false;
  }
  return true;
}

}  // namespace phaselip
