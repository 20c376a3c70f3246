#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "phaselip/frame.hpp"
#include "phaselip/sequences.hpp"
#include "phaselip/stability.hpp"

namespace phaselip {

/// G(m) = 2^m C, the subspace stability growth of the counterexample frame.
struct GrowthFunction {
  double C = 1.0;
  double operator()(int m) const;
};

/// The counterexample data: truncation dimension, uniform per-level stability
/// constant, the prior parameters and one Parseval family per level.
struct CounterexampleSpec {
  std::size_t D = 1;
  double C = 1.0;
  double gamma = 2.0;
  double R = 1.0;
  ScalarField field = ScalarField::Real;
  std::vector<Frame> levels;  // levels[n-1] lives in dimension n
};

/// Random Gaussian family of `oversampling * n` vectors in dimension n made
/// Parseval; the stability constant estimate comes from subspace_constant.
/// Pass nullptr to skip the (expensive) estimate.
std::pair<Frame, double> stable_parseval_family(std::size_t n,
                                                std::size_t oversampling,
                                                ScalarField field, Rng& rng,
                                                const SearchConfig* estimate);

/// Builds the per-level families for a counterexample spec with derived
/// per-level seeds.  When `estimate` is set, C is replaced by the maximum
/// estimated level constant (at least the supplied C).
CounterexampleSpec make_counterexample_spec(std::size_t D, double gamma,
                                            double R, double C,
                                            ScalarField field,
                                            std::uint64_t seed,
                                            const SearchConfig* estimate = nullptr);

/// {e_n : n <= D} together with {2^{-n} x_{j,n}}; G(m) = 2^m C.
std::pair<Frame, GrowthFunction> counterexample_frame(
    const CounterexampleSpec& spec);

/// {e1} union {alpha_n e1 + e_n : 2 <= n <= D}  (real field).
Frame real_onedim_frame(std::size_t D, const SequenceEnvelope& env);

/// {e1} union {alpha_n e1 + e_n} union {alpha_n e1 + i e_n}  (complex field).
Frame complex_onedim_frame(std::size_t D, const SequenceEnvelope& env);

struct FlatnessResult {
  bool pass = false;
  double worst_density = 0.0;
};

enum class FlatnessMode { Real, Complex };

/// Real mode: sampled minimum of |{j : |<x, phi_j>| >= c ||x||}| / |J|,
/// pass when it stays at or above 1/kappa (kappa plays the C of the real
/// hypothesis).  Complex mode: sampled minimum density of indices j with
/// c <= sqrt(N) |<x, phi_j>| / ||x|| <= 1/c for both vectors of a random
/// pair, pass at or above 1/kappa.
FlatnessResult flatness_check(const Frame& phi, double c, double kappa,
                              FlatnessMode mode, std::size_t samples, Rng& rng);

/// (psi_j) union {alpha_n phi_j + |J|^{-1/2} e_n}.  V1 occupies coordinates
/// 1..N; tail index n >= 2 maps to coordinate N + n - 1.
Frame real_md_frame(const Frame& psi, const Frame& phi, const MDParams& params,
                    const SequenceEnvelope& env, std::size_t D);

/// (psi_j) union {alpha_n phi_j + (2|J|)^{-1/2} e_n}
///         union {alpha_n phi_j - (2|J|)^{-1/2} i e_n}.
Frame complex_md_frame(const Frame& psi, const Frame& phi,
                       const MDParams& params, const SequenceEnvelope& env,
                       std::size_t D);

/// Union of K random rotations of the scaled standard basis of V1, made
/// Parseval; the standard flat family used by the MD constructions.
Frame rotated_onb_union(std::size_t N, std::size_t blocks, ScalarField field,
                        Rng& rng);

}  // namespace phaselip
