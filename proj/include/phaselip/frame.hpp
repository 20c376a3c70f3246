#pragma once

#include <string>
#include <utility>
#include <vector>

#include "phaselip/vector.hpp"

namespace phaselip {

/// Ordered finite family of vectors sharing one dimension and scalar field.
/// Labels are documentary only.
class Frame {
 public:
  Frame(ScalarField field, std::size_t dim, std::vector<Vec> vectors,
        std::vector<std::string> labels = {});

  ScalarField field() const { return field_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  const std::vector<Vec>& vectors() const { return vectors_; }
  const Vec& vector(std::size_t k) const { return vectors_[k]; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  ScalarField field_;
  std::size_t dim_;
  std::vector<Vec> vectors_;
  std::vector<std::string> labels_;
};

using MeasurementVector = std::vector<double>;

/// T_Phi(f): entry k is <f, phi_k>.
std::vector<cx> analysis(const Frame& frame, const Vec& f);

/// |T_Phi(f)|: entrywise modulus of the analysis coefficients.
MeasurementVector measure(const Frame& frame, const Vec& f);

/// || |T(f)| - |T(g)| ||_2, evaluated through the half-sum / half-difference
/// split p = (f+g)/2, q = (f-g)/2:
///     |<f,phi>| - |<g,phi>| = 4 Re(P conj(Q)) / (|P+Q| + |P-Q|),
/// with P = <p,phi>, Q = <q,phi>.  Algebraically identical to the naive
/// modulus difference but keeps full relative accuracy when f and g are close
/// (witness pairs at depth m ~ 20 separate at the 1e-18 scale, far below what
/// direct modulus subtraction resolves in doubles).
double measurement_distance(const Frame& frame, const Vec& f, const Vec& g);

/// Optimal frame bounds (A, B): extreme eigenvalues of the frame operator
/// S = sum_k phi_k phi_k^*.
std::pair<double, double> frame_bounds(const Frame& frame);

/// Canonical tight-frame transform {S^{-1/2} phi_k}; RankError if the family
/// has an eigenvalue below 1e-12.
Frame parsevalize(const Frame& family);

/// Lower frame bound exceeds 1e-10.
bool is_valid_frame(const Frame& frame);

}  // namespace phaselip
