#include "phaselip/vector.hpp"

#include <cmath>

namespace phaselip {

const char* to_string(ScalarField f) {
  return f == ScalarField::Real ? "real" : "complex";
}

namespace {

bool finite(cx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

Vec::Vec(ScalarField field, std::vector<cx> coeffs)
    : field_(field), c_(std::move(coeffs)) {
  if (c_.empty()) throw DimensionError("Vec: dimension must be positive");
  for (const cx& v : c_) {
    if (!finite(v)) throw NumericalError("Vec: non-finite coefficient");
    if (field_ == ScalarField::Real && v.imag() != 0.0)
      throw FieldError("Vec: real vector with nonzero imaginary part");
  }
}

Vec::Vec(ScalarField field, std::size_t dim) : field_(field), c_(dim) {
  if (dim == 0) throw DimensionError("Vec: dimension must be positive");
}

Vec Vec::basis(ScalarField field, std::size_t dim, std::size_t n) {
  if (n < 1 || n > dim) throw RangeError("Vec::basis: index out of range");
  Vec v(field, dim);
  v.c_[n - 1] = 1.0;
  return v;
}

Vec Vec::from_real(std::vector<double> coeffs) {
  std::vector<cx> c(coeffs.begin(), coeffs.end());
  return Vec(ScalarField::Real, std::move(c));
}

void Vec::set(std::size_t i, cx v) {
  if (i >= c_.size()) throw RangeError("Vec::set: index out of range");
  if (!finite(v)) throw NumericalError("Vec::set: non-finite coefficient");
  if (field_ == ScalarField::Real && v.imag() != 0.0)
    throw FieldError("Vec::set: complex value into real vector");
  c_[i] = v;
}

double Vec::norm_sq() const {
  double s = 0.0;
  for (const cx& v : c_) s += std::norm(v);
  return s;
}

double Vec::norm() const { return std::sqrt(norm_sq()); }

Vec& Vec::operator+=(const Vec& o) {
  require_compatible(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Vec& Vec::operator-=(const Vec& o) {
  require_compatible(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Vec& Vec::operator*=(cx s) {
  if (field_ == ScalarField::Real && s.imag() != 0.0)
    throw FieldError("Vec: complex scale of real vector");
  for (cx& v : c_) v *= s;
  return *this;
}

void require_compatible(const Vec& f, const Vec& g) {
  if (f.dim() != g.dim())
    throw DimensionError("vector dimensions differ");
  if (f.field() != g.field())
    throw FieldError("vector scalar fields differ");
}

cx inner(const Vec& f, const Vec& g) {
  require_compatible(f, g);
  cx s = 0.0;
  for (std::size_t i = 0; i < f.dim(); ++i) s += f[i] * std::conj(g[i]);
  return s;
}

Vec project_head(const Vec& f, std::size_t m) {
  if (m < 1 || m > f.dim())
    throw RangeError("project_head: depth out of range");
  std::vector<cx> c(f.coeffs());
  for (std::size_t i = m; i < c.size(); ++i) c[i] = 0.0;
  return Vec(f.field(), std::move(c));
}

double quotient_distance(const Vec& f, const Vec& g) {
  require_compatible(f, g);
  if (f.field() == ScalarField::Real) {
    double dminus = 0.0, dplus = 0.0;
    for (std::size_t i = 0; i < f.dim(); ++i) {
      const double a = f[i].real(), b = g[i].real();
      dminus += (a - b) * (a - b);
      dplus += (a + b) * (a + b);
    }
    return std::sqrt(std::min(dminus, dplus));
  }
  if (g.norm_sq() == 0.0) return f.norm();
  const cx alpha = align_phase(f, g);
  double s = 0.0;
  for (std::size_t i = 0; i < f.dim(); ++i) s += std::norm(f[i] - alpha * g[i]);
  return std::sqrt(s);
}

cx align_phase(const Vec& f, const Vec& g) {
  require_compatible(f, g);
  if (g.norm_sq() == 0.0) throw DegenerateError("align_phase: g = 0");
  const cx ip = inner(f, g);
  const double m = std::abs(ip);
  if (m == 0.0) return 1.0;  // every unimodular alpha minimizes
  cx alpha = ip / m;
  if (f.field() == ScalarField::Real) alpha = (ip.real() < 0.0) ? -1.0 : 1.0;
  return alpha;
}

}  // namespace phaselip
