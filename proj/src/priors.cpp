#include "phaselip/priors.hpp"

#include <algorithm>
#include <cmath>

namespace phaselip {

namespace {
constexpr double kMembershipSlack = 1e-12;
}

double PriorSet::t_at(std::size_t m) const {
  if (m < head_dim || m >= D)
    throw RangeError("PriorSet: depth out of range");
  return t[m - head_dim];
}

void PriorSet::validate() const {
  if (D < 1 || head_dim < 1 || head_dim > D)
    throw SpecError("PriorSet: bad dimensions");
  if (t.size() != D - head_dim)
    throw SpecError("PriorSet: envelope length must be D - head_dim");
  double prev = 1.0;
  for (double v : t) {
    if (!(v >= 0.0) || v >= 1.0)
      throw SpecError("PriorSet: envelope entries must lie in [0, 1)");
    if (v > prev) throw SpecError("PriorSet: envelope must be nonincreasing");
    prev = v;
  }
}

PriorSet envelope_from_G(const std::function<double(int)>& G, double gamma,
                         double R, std::size_t D, ScalarField field) {
  if (!(gamma > 1.0)) throw SpecError("envelope_from_G: gamma must exceed 1");
  if (!(R >= 0.0)) throw SpecError("envelope_from_G: R must be nonnegative");
  PriorSet B;
  B.field = field;
  B.D = D;
  B.head_dim = 1;
  B.provenance = PriorProvenance::FromG;
  B.gamma = gamma;
  B.R = R;
  B.t.resize(D - 1);
  double prev_g = G(1);
  for (std::size_t m = 1; m < D; ++m) {
    const double g = G(static_cast<int>(m) + 1);
    if (!(g > prev_g)) throw SpecError("envelope_from_G: G must be increasing");
    prev_g = g;
    B.t[m - 1] = std::pow(g, -gamma) * R;
  }
  B.validate();
  return B;
}

PriorSet envelope_from_beta(const SequenceEnvelope& env, std::size_t D,
                            std::size_t head_dim, ScalarField field) {
  PriorSet B;
  B.field = field;
  B.D = D;
  B.head_dim = head_dim;
  B.provenance = PriorProvenance::Direct;
  B.t.resize(D - head_dim);
  // envelope depth m maps to coordinate depth head_dim + m - 1
  for (std::size_t d = head_dim; d < D; ++d)
    B.t[d - head_dim] = env.beta_at(d - head_dim + 2);
  B.validate();
  return B;
}

Membership membership(const PriorSet& B, const Vec& f) {
  B.validate();
  if (f.dim() != B.D) throw DimensionError("membership: dimension mismatch");
  const double nf = f.norm();
  if (nf == 0.0) throw DegenerateError("membership: zero vector");
  // suffix norms: tail2[d] = sum_{i >= d} |f_i|^2
  Membership res;
  res.ok = true;
  res.margin = 1.0;
  double tail2 = 0.0;
  std::vector<double> tails(B.D - B.head_dim, 0.0);
  for (std::size_t i = B.D; i-- > B.head_dim;) {
    tail2 += std::norm(f[i]);
    tails[i - B.head_dim] = std::sqrt(tail2);
  }
  for (std::size_t m = B.head_dim; m < B.D; ++m) {
    const double tm = B.t_at(m);
    const double tail = tails[m - B.head_dim];
    if (tail > tm * nf * (1.0 + kMembershipSlack)) res.ok = false;
    res.margin = std::min(res.margin, (tm * nf - tail) / nf);
  }
  return res;
}

Vec sample(const PriorSet& B, Rng& rng) {
  B.validate();
  Vec f(B.field, B.D);
  // head block: random point on the unit sphere
  double hn2 = 0.0;
  std::vector<cx> head(B.head_dim);
  do {
    hn2 = 0.0;
    for (std::size_t i = 0; i < B.head_dim; ++i) {
      head[i] = B.field == ScalarField::Real
                    ? cx(rng.gaussian(), 0.0)
                    : cx(rng.gaussian(), rng.gaussian());
      hn2 += std::norm(head[i]);
    }
  } while (hn2 < 1e-12);
  const double hn = std::sqrt(hn2);
  for (std::size_t i = 0; i < B.head_dim; ++i) f.set(i, head[i] / hn);
  // tail: telescoping envelope keeps every constraint satisfied
  for (std::size_t d = B.head_dim; d < B.D; ++d) {
    const double td = B.t_at(d);
    const double tnext = (d + 1 < B.D) ? B.t_at(d + 1) : 0.0;
    const double cap = std::sqrt(std::max(0.0, td * td - tnext * tnext));
    const double mag = cap * rng.uniform();
    if (B.field == ScalarField::Real) {
      f.set(d, cx(mag * rng.sign(), 0.0));
    } else {
      const double theta = 2.0 * M_PI * rng.uniform();
      f.set(d, mag * cx(std::cos(theta), std::sin(theta)));
    }
  }
  return f;
}

Vec repair(const PriorSet& B, const Vec& f) {
  B.validate();
  if (f.dim() != B.D) throw DimensionError("repair: dimension mismatch");
  double head2 = 0.0;
  for (std::size_t i = 0; i < B.head_dim; ++i) head2 += std::norm(f[i]);
  if (head2 == 0.0) throw DegenerateError("repair: zero head block");
  std::vector<cx> c(f.coeffs());
  for (std::size_t m = B.D; m-- > B.head_dim;) {
    const double tm = B.t_at(m);
    double h2 = 0.0, t2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) h2 += std::norm(c[i]);
    for (std::size_t i = m; i < B.D; ++i) t2 += std::norm(c[i]);
    if (t2 == 0.0) continue;
    const double tail = std::sqrt(t2);
    const double n = std::sqrt(h2 + t2);
    if (tail <= tm * n) continue;
    double s = 0.0;
    if (tm > 0.0 && tm < 1.0)
      s = tm * std::sqrt(h2) / (tail * std::sqrt(1.0 - tm * tm));
    for (std::size_t i = m; i < B.D; ++i) c[i] *= s;
  }
  Vec g(f.field(), std::move(c));
  return g;
}

std::pair<Vec, Vec> paper_witness_pair(std::size_t m, double gamma, double R,
                                       double C, std::size_t D,
                                       ScalarField field) {
  if (m < 2 || m > D) throw RangeError("paper_witness_pair: m out of range");
  const double tau =
      R * std::pow(2.0, -double(m) * gamma) * std::pow(C, -gamma);
  Vec x(field, D), y(field, D);
  x.set(0, 1.0);
  y.set(0, 1.0);
  x.set(m - 1, tau);
  y.set(m - 1, -tau);
  return {x, y};
}

}  // namespace phaselip
