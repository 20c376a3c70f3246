#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "phaselip/rng.hpp"
#include "phaselip/sequences.hpp"
#include "phaselip/vector.hpp"

namespace phaselip {

enum class PriorProvenance { FromG, Direct };

/// Envelope description of the tail-decay sets B_gamma(R) / B: at every head
/// depth m in [head_dim, D-1] the relative tail ||f - P_m f|| / ||f|| is at
/// most t_m.  Depths below head_dim (the V_1 block of the multidimensional
/// constructions) are unconstrained.
struct PriorSet {
  ScalarField field = ScalarField::Real;
  std::size_t D = 1;
  std::size_t head_dim = 1;
  std::vector<double> t;  // t[i] is the bound at depth head_dim + i
  PriorProvenance provenance = PriorProvenance::Direct;
  double gamma = 0.0;
  double R = 0.0;

  double t_at(std::size_t m) const;  // head_dim <= m <= D-1
  void validate() const;
};

struct Membership {
  bool ok = false;
  double margin = 0.0;  // min over depths of (t_m ||f|| - tail_m) / ||f||
};

/// t_m = G(m+1)^{-gamma} R, m = 1 .. D-1.
PriorSet envelope_from_G(const std::function<double(int)>& G, double gamma,
                         double R, std::size_t D,
                         ScalarField field = ScalarField::Real);

/// Prior defined directly by a beta sequence: t_m = beta_{m+1} at envelope
/// depth m, shifted past the head block for head_dim > 1.
PriorSet envelope_from_beta(const SequenceEnvelope& env, std::size_t D,
                            std::size_t head_dim, ScalarField field);

Membership membership(const PriorSet& B, const Vec& f);

/// Draws a member of B: head block from the unit sphere, tail coefficient at
/// depth d bounded by sqrt(t_{d-1}^2 - t_d^2) so the tail constraints
/// telescope.
Vec sample(const PriorSet& B, Rng& rng);

/// Shrinks tail blocks from depth D-1 down to head_dim until every envelope
/// constraint holds; identity on members, idempotent.
Vec repair(const PriorSet& B, const Vec& f);

/// The pair x = e1 + tau e_m, y = e1 - tau e_m with tau = R 2^{-m gamma}
/// C^{-gamma}.
std::pair<Vec, Vec> paper_witness_pair(std::size_t m, double gamma, double R,
                                       double C, std::size_t D,
                                       ScalarField field = ScalarField::Real);

}  // namespace phaselip
