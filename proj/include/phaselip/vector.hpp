#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "phaselip/errors.hpp"

namespace phaselip {

using cx = std::complex<double>;

enum class ScalarField { Real, Complex };

const char* to_string(ScalarField f);

/// Finite truncation of a coefficient sequence against the fixed orthonormal
/// basis (e_n).  Coefficients are stored as complex pairs; a Real vector keeps
/// every imaginary part at exactly zero.
class Vec {
 public:
  Vec() : field_(ScalarField::Real), c_(1) {}  // 1-dim zero vector
  Vec(ScalarField field, std::vector<cx> coeffs);
  Vec(ScalarField field, std::size_t dim);  // zero vector

  static Vec basis(ScalarField field, std::size_t dim, std::size_t n);
  static Vec from_real(std::vector<double> coeffs);

  ScalarField field() const { return field_; }
  std::size_t dim() const { return c_.size(); }
  const std::vector<cx>& coeffs() const { return c_; }

  cx operator[](std::size_t i) const { return c_[i]; }
  void set(std::size_t i, cx v);

  double norm() const;
  double norm_sq() const;

  Vec& operator+=(const Vec& o);
  Vec& operator-=(const Vec& o);
  Vec& operator*=(cx s);  // FieldError if s is non-real on a Real vector
  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(cx s, Vec v) { return v *= s; }

 private:
  ScalarField field_;
  std::vector<cx> c_;
};

void require_compatible(const Vec& f, const Vec& g);

/// <f, g> = sum_n f_n conj(g_n); conjugate-linear in g.
cx inner(const Vec& f, const Vec& g);

/// Orthogonal projection onto span{e_1, ..., e_m}.
Vec project_head(const Vec& f, std::size_t m);

/// inf over unimodular alpha of ||f - alpha g||.  Real field: the minimum of
/// ||f - g|| and ||f + g||.  Complex field: the aligned difference is formed
/// explicitly, which keeps the result accurate for nearly-equal pairs where
/// the closed form sqrt(||f||^2 + ||g||^2 - 2|<f,g>|) cancels.
double quotient_distance(const Vec& f, const Vec& g);

/// The minimizing unimodular alpha of ||f - alpha g||; phase of <f,g>, or 1
/// when <f,g> = 0.  DegenerateError for g = 0.
cx align_phase(const Vec& f, const Vec& g);

}  // namespace phaselip
