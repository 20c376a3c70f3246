#include "phaselip/sequences.hpp"

#include <algorithm>
#include <cmath>

namespace phaselip {

const char* to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::Real3_1: return "real3_1";
    case ConstraintKind::Complex3_2: return "complex3_2";
    case ConstraintKind::RealMD4_1: return "real_md4_1";
    case ConstraintKind::ComplexMD4_3: return "complex_md4_3";
  }
  return "?";
}

double SequenceEnvelope::alpha_at(std::size_t n) const {
  if (n < 2 || n - 2 >= alpha.size())
    throw RangeError("SequenceEnvelope: alpha index out of range");
  return alpha[n - 2];
}

double SequenceEnvelope::beta_at(std::size_t n) const {
  if (n < 2 || n - 2 >= beta.size())
    throw RangeError("SequenceEnvelope: beta index out of range");
  return beta[n - 2];
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ConstraintError(what);
}

double alpha_sum_bound(const SequenceEnvelope& e) {
  switch (e.kind) {
    case ConstraintKind::Real3_1:
      return e.epsilon / 2.0;
    case ConstraintKind::Complex3_2:
      return 1.0 / 200.0;
    case ConstraintKind::RealMD4_1:
      return 0.25 / e.md.C / std::sqrt(double(e.md.J_size)) * e.epsilon;
    case ConstraintKind::ComplexMD4_3:
      // bound on sum of alpha_n^2, conditions (ii)
      return e.epsilon * e.epsilon / 11.0 / double(e.md.J_size) /
             (e.md.c * e.md.c) *
             std::min(1.0 / e.md.C,
                      e.md.c * e.md.c / (64.0 * e.md.kappa));
  }
  return 0.0;
}

double beta_bound(const SequenceEnvelope& e, double alpha_n) {
  switch (e.kind) {
    case ConstraintKind::Real3_1:
      return alpha_n / 2.0;
    case ConstraintKind::Complex3_2:
      return alpha_n * alpha_n / 2.0;
    case ConstraintKind::RealMD4_1:
      return e.md.c * e.md.c * alpha_n / 64.0;
    case ConstraintKind::ComplexMD4_3:
      return e.md.c * e.md.c * alpha_n / 64.0 / std::sqrt(double(e.md.N));
  }
  return 0.0;
}

}  // namespace

void SequenceEnvelope::validate() const {
  require(!alpha.empty() && alpha.size() == beta.size(),
          "SequenceEnvelope: empty or mismatched sequences");
  // the all-zero envelope is an admissible degenerate case (the perturbation
  // vanishes and every inequality holds trivially)
  const bool all_zero =
      std::all_of(alpha.begin(), alpha.end(), [](double a) { return a == 0.0; }) &&
      std::all_of(beta.begin(), beta.end(), [](double b) { return b == 0.0; });
  if (all_zero) return;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    require(alpha[i] > 0.0 && beta[i] > 0.0,
            "SequenceEnvelope: sequences must be positive");
    if (i + 1 < alpha.size()) {
      require(alpha[i + 1] < alpha[i], "SequenceEnvelope: alpha not decreasing");
      require(beta[i + 1] < beta[i], "SequenceEnvelope: beta not decreasing");
    }
    require(beta[i] < beta_bound(*this, alpha[i]),
            "SequenceEnvelope: beta bound violated");
  }
  double s = 0.0;
  for (double a : alpha)
    s += (kind == ConstraintKind::ComplexMD4_3) ? a * a : a;
  require(s < alpha_sum_bound(*this), "SequenceEnvelope: alpha sum too large");
  if (kind != ConstraintKind::Complex3_2)
    require(epsilon > 0.0 && epsilon < 0.125,
            "SequenceEnvelope: epsilon outside (0, 1/8)");
}

SequenceEnvelope default_sequences(ConstraintKind kind, std::size_t terms,
                                   double epsilon, const MDParams& md) {
  if (terms == 0) throw ConstraintError("default_sequences: no terms");
  if (kind != ConstraintKind::Complex3_2 &&
      !(epsilon > 0.0 && epsilon < 0.125))
    throw ConstraintError("default_sequences: epsilon must lie in (0, 1/8)");
  if (kind == ConstraintKind::ComplexMD4_3 && epsilon >= md.A)
    throw ConstraintError("default_sequences: epsilon must be below A");

  SequenceEnvelope env;
  env.kind = kind;
  env.epsilon = epsilon;
  env.md = md;

  const double budget = alpha_sum_bound(env);
  if (!(budget > 0.0))
    throw ConstraintError("default_sequences: infeasible parameters");
  env.alpha.resize(terms);
  env.beta.resize(terms);
  if (kind == ConstraintKind::ComplexMD4_3) {
    // geometric in alpha^2, total alpha^2 mass = budget / 2
    for (std::size_t i = 0; i < terms; ++i)
      env.alpha[i] = std::sqrt(budget / 4.0 * std::pow(0.5, double(i)));
  } else {
    // geometric with ratio 1/2, total mass = budget / 2
    for (std::size_t i = 0; i < terms; ++i)
      env.alpha[i] = budget / 4.0 * std::pow(0.5, double(i));
  }
  for (std::size_t i = 0; i < terms; ++i)
    env.beta[i] = beta_bound(env, env.alpha[i]) / 2.0;
  env.validate();
  return env;
}

}  // namespace phaselip
