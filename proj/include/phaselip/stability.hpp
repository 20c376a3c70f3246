#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phaselip/frame.hpp"
#include "phaselip/priors.hpp"

namespace phaselip {

struct SearchConfig {
  int restarts = 32;
  int max_iters = 200;
  double step_init = 0.5;
  double step_shrink = 0.5;
  double tol = 1e-3;
  std::uint64_t seed = 0;

  void validate() const;
};

struct RatioSample {
  double dq = 0.0;
  double dm = 0.0;
  double ratio = 0.0;        // dq / dm when dm > 0
  bool injectivity_violation = false;  // dm = 0 with dq > 0
};

struct Witness {
  Vec f;
  Vec g;
  double dq = 0.0;
  double dm = 0.0;
  double ratio = 0.0;
  bool injectivity_violation = false;
};

enum class Verdict { Certified, Refuted, Inconclusive };

const char* to_string(Verdict v);

struct StabilityReport {
  std::string frame_id;
  std::string prior_id;
  std::vector<Witness> witnesses;  // improving witnesses, best last
  double max_ratio = 0.0;
  std::optional<double> claimed_bound;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<double> sigma_fit;
  std::optional<double> sigma_residual;

  const Witness& best() const;
};

struct SubspaceEstimate {
  double value = 0.0;
  bool diverged = false;  // a pair with dm ~ 0 and dq > 0 was found
};

struct ScanRecord {
  std::size_t m = 0;
  double dq = 0.0;
  double dm = 0.0;
};

struct HolderFit {
  double sigma = 0.0;
  double residual = 0.0;  // max absolute log-log deviation
};

struct ReductionResult {
  bool found = false;
  Vec f;
  Vec g;
  double dq = 0.0;
  double dm = 0.0;
};

RatioSample stability_ratio(const Frame& frame, const Vec& f, const Vec& g);

/// Lower estimate of the stability constant of the frame restricted to the
/// head subspace V_m, by multi-start ascent over orthogonal pairs with
/// ||f|| = 1, ||g|| <= 1.  `diverged` flags an injectivity failure found
/// during the search (no finite constant).
SubspaceEstimate subspace_constant(const Frame& frame, std::size_t m,
                                   const SearchConfig& cfg);

/// Multi-start ratio maximization over B x B; proposals are repaired back
/// Worker count for parallel restarts; PHASELIP_THREADS overrides (default 1).
int worker_threads();

/// Multi-start ratio maximization over B x B; proposals are repaired back
/// into B.  Analytic witness pairs seed the search for FromG priors.
StabilityReport worst_pair_search(const Frame& frame, const PriorSet& B,
                                  const SearchConfig& cfg,
                                  const std::vector<Witness>* seeds = nullptr);

/// Exact (dq, dm) of the analytic witness pairs for m in [m_lo, m_hi].
std::vector<ScanRecord> holder_scan(const Frame& frame, double gamma, double R,
                                    double C, std::size_t m_lo,
                                    std::size_t m_hi);

/// Least-squares slope of log dq against log dm.
HolderFit holder_fit(const std::vector<ScanRecord>& records);

/// Sampled pairs plus worst-pair search against an explicit Lipschitz bound.
StabilityReport certify_lipschitz(const Frame& frame, const PriorSet& B,
                                  double claimed_bound, const SearchConfig& cfg,
                                  std::size_t sample_pairs = 10000);

/// Grid search in span{f, g} for an orthogonal pair with the same quotient
/// distance and no larger measurement distance.
ReductionResult orthogonal_reduction_check(const Frame& frame, const Vec& f,
                                           const Vec& g, std::size_t grid_size,
                                           double tol = 1e-3);

/// Sample-level consistency of the Hoelder-to-Lipschitz upgrade: with
/// C = max dq / (dm^sigma (||f||+||g||)^{1-sigma}) over the witnesses, every
/// witness must satisfy dq <= (4C)^{1/sigma} dm (1 + tol).
bool holder_to_lip_check(const std::vector<Witness>& witnesses, double sigma,
                         double tol = 1e-9);

}  // namespace phaselip
