#include "phaselip/frame.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace phaselip {

namespace {

Eigen::MatrixXcd frame_operator(const Frame& frame) {
  const auto d = static_cast<Eigen::Index>(frame.dim());
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d, d);
  for (const Vec& v : frame.vectors()) {
    Eigen::VectorXcd col(d);
    for (Eigen::Index i = 0; i < d; ++i) col[i] = v[static_cast<std::size_t>(i)];
    s.noalias() += col * col.adjoint();
  }
  return s;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig_frame_operator(
    const Frame& frame) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(frame_operator(frame));
  if (es.info() != Eigen::Success)
    throw NumericalError("frame operator eigendecomposition failed");
  return es;
}

}  // namespace

Frame::Frame(ScalarField field, std::size_t dim, std::vector<Vec> vectors,
             std::vector<std::string> labels)
    : field_(field), dim_(dim), vectors_(std::move(vectors)),
      labels_(std::move(labels)) {
  if (dim_ == 0) throw DimensionError("Frame: dimension must be positive");
  for (const Vec& v : vectors_) {
    if (v.dim() != dim_) throw DimensionError("Frame: member dimension differs");
    if (v.field() != field_) throw FieldError("Frame: member field differs");
  }
  if (!labels_.empty() && labels_.size() != vectors_.size())
    throw SpecError("Frame: label count differs from vector count");
  if (labels_.empty()) labels_.resize(vectors_.size());
}

std::vector<cx> analysis(const Frame& frame, const Vec& f) {
  if (f.dim() != frame.dim()) throw DimensionError("analysis: dimension mismatch");
  if (f.field() != frame.field()) throw FieldError("analysis: field mismatch");
  std::vector<cx> out;
  out.reserve(frame.size());
  for (const Vec& phi : frame.vectors()) out.push_back(inner(f, phi));
  return out;
}

MeasurementVector measure(const Frame& frame, const Vec& f) {
  MeasurementVector out;
  out.reserve(frame.size());
  for (cx c : analysis(frame, f)) out.push_back(std::abs(c));
  return out;
}

double measurement_distance(const Frame& frame, const Vec& f, const Vec& g) {
  if (f.dim() != frame.dim() || g.dim() != frame.dim())
    throw DimensionError("measurement_distance: dimension mismatch");
  if (f.field() != frame.field() || g.field() != frame.field())
    throw FieldError("measurement_distance: field mismatch");
  const std::size_t d = frame.dim();
  std::vector<cx> p(d), q(d);
  for (std::size_t i = 0; i < d; ++i) {
    p[i] = 0.5 * (f[i] + g[i]);
    q[i] = 0.5 * (f[i] - g[i]);
  }
  double sum = 0.0;
  for (const Vec& phi : frame.vectors()) {
    cx pp = 0.0, qq = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const cx c = std::conj(phi[i]);
      pp += p[i] * c;
      qq += q[i] * c;
    }
    const double denom = std::abs(pp + qq) + std::abs(pp - qq);
    if (denom == 0.0) continue;
    const double diff =
        4.0 * (pp.real() * qq.real() + pp.imag() * qq.imag()) / denom;
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

std::pair<double, double> frame_bounds(const Frame& frame) {
  if (frame.size() == 0) throw EmptyFrameError("frame_bounds: empty frame");
  const auto es = eig_frame_operator(frame);
  const auto& ev = es.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

Frame parsevalize(const Frame& family) {
  if (family.size() == 0) throw EmptyFrameError("parsevalize: empty family");
  const auto es = eig_frame_operator(family);
  const auto& ev = es.eigenvalues();
  if (ev.minCoeff() < 1e-12)
    throw RankError("parsevalize: family is rank deficient");
  const auto d = static_cast<Eigen::Index>(family.dim());
  Eigen::VectorXd inv_sqrt(d);
  for (Eigen::Index i = 0; i < d; ++i) inv_sqrt[i] = 1.0 / std::sqrt(ev[i]);
  const Eigen::MatrixXcd root =
      es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
  std::vector<Vec> out;
  out.reserve(family.size());
  for (const Vec& v : family.vectors()) {
    Eigen::VectorXcd col(d);
    for (Eigen::Index i = 0; i < d; ++i) col[i] = v[static_cast<std::size_t>(i)];
    const Eigen::VectorXcd w = root * col;
    std::vector<cx> c(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) {
      // A real family stays real; scrub the zero imaginary dust so the Vec
      // field invariant holds.
      c[static_cast<std::size_t>(i)] =
          family.field() == ScalarField::Real ? cx(w[i].real(), 0.0) : w[i];
    }
    out.emplace_back(family.field(), std::move(c));
  }
  return Frame(family.field(), family.dim(), std::move(out), family.labels());
}

bool is_valid_frame(const Frame& frame) {
  if (frame.size() == 0) return false;
  return frame_bounds(frame).first > 1e-10;
}

}  // namespace phaselip
