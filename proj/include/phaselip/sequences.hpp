#pragma once

#include <cstddef>
#include <vector>

#include "phaselip/errors.hpp"

namespace phaselip {

enum class ConstraintKind { Real3_1, Complex3_2, RealMD4_1, ComplexMD4_3 };

const char* to_string(ConstraintKind k);

/// Parameters of the multidimensional constructions: head space dimension,
/// the stability constant of the (psi_j) family, flatness level c, flatness
/// density constant kappa and the index-set sizes.
struct MDParams {
  int N = 1;
  double C = 1.0;
  double A = 1.0;
  double B = 1.0;
  double c = 0.5;
  double kappa = 1.0;
  int J_size = 1;
  int I_size = 1;
};

/// The sequences alpha_n, beta_n (n >= 2) together with the constraint system
/// they must satisfy.  Index 0 corresponds to n = 2.
struct SequenceEnvelope {
  ConstraintKind kind;
  double epsilon = 0.0;
  MDParams md;  // used by the MD kinds only
  std::vector<double> alpha;
  std::vector<double> beta;

  std::size_t count() const { return alpha.size(); }
  double alpha_at(std::size_t n) const;  // n >= 2
  double beta_at(std::size_t n) const;   // n >= 2

  /// Throws ConstraintError when any hypothesis of the kind fails.
  void validate() const;
};

/// Geometric sequences with a factor-2 safety margin against every strict
/// inequality of the requested kind; `terms` is the number of entries
/// (n = 2 .. terms + 1).
SequenceEnvelope default_sequences(ConstraintKind kind, std::size_t terms,
                                   double epsilon, const MDParams& md = {});

}  // namespace phaselip
