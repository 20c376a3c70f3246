#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "phaselip/frame.hpp"
#include "phaselip/rng.hpp"

using namespace phaselip;

namespace {

Vec random_vec(ScalarField field, std::size_t dim, Rng& rng) {
  Vec v(field, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (field == ScalarField::Real)
      v.set(i, rng.gaussian());
    else
      v.set(i, cx(rng.gaussian(), rng.gaussian()));
  }
  return v;
}

Frame onb(ScalarField field, std::size_t dim) {
  std::vector<Vec> vs;
  for (std::size_t n = 1; n <= dim; ++n) vs.push_back(Vec::basis(field, dim, n));
  return Frame(field, dim, std::move(vs));
}

Frame random_frame(ScalarField field, std::size_t dim, std::size_t count,
                   Rng& rng) {
  std::vector<Vec> vs;
  for (std::size_t k = 0; k < count; ++k) vs.push_back(random_vec(field, dim, rng));
  return Frame(field, dim, std::move(vs));
}

// Frame bounds from the Gram matrix: the nonzero spectrum of the synthesis
// Gram G_{jk} = <phi_k, phi_j> agrees with the frame operator's, so the top
// `dim` eigenvalues (padded with zeros) recover (A, B) independently.
std::pair<double, double> gram_bounds(const Frame& fr) {
  const std::size_t K = fr.size(), d = fr.dim();
  // Jacobi eigenvalue iteration on the Hermitian Gram matrix
  std::vector<std::vector<cx>> G(K, std::vector<cx>(K));
  for (std::size_t j = 0; j < K; ++j)
    for (std::size_t k = 0; k < K; ++k)
      G[j][k] = inner(fr.vector(k), fr.vector(j));
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < K; ++p)
      for (std::size_t q = p + 1; q < K; ++q) off += std::norm(G[p][q]);
    if (off < 1e-28) break;
    for (std::size_t p = 0; p < K; ++p)
      for (std::size_t q = p + 1; q < K; ++q) {
        const cx apq = G[p][q];
        if (std::abs(apq) < 1e-18) continue;
        const double app = G[p][p].real(), aqq = G[q][q].real();
        const cx phase = apq / std::abs(apq);
        const double tau = (aqq - app) / (2.0 * std::abs(apq));
        const double t = (tau >= 0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
        for (std::size_t k = 0; k < K; ++k) {
          const cx gkp = G[k][p], gkq = G[k][q];
          G[k][p] = c * gkp - std::conj(phase) * s * gkq;
          G[k][q] = phase * s * gkp + c * gkq;
        }
        for (std::size_t k = 0; k < K; ++k) {
          const cx gpk = G[p][k], gqk = G[q][k];
          G[p][k] = c * gpk - phase * s * gqk;
          G[q][k] = std::conj(phase) * s * gpk + c * gqk;
        }
      }
  }
  std::vector<double> ev;
  for (std::size_t k = 0; k < K; ++k) ev.push_back(G[k][k].real());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  ev.resize(std::max(K, d), 0.0);
  double lo = ev[0], hi = ev[0];
  for (std::size_t k = 0; k < d; ++k) {
    lo = std::min(lo, k < ev.size() ? ev[k] : 0.0);
    hi = std::max(hi, k < ev.size() ? ev[k] : 0.0);
  }
  return {std::max(0.0, lo), hi};
}

}  // namespace

TEST_CASE("analysis against simple families") {
  const Frame B = onb(ScalarField::Real, 4);
  const Vec f = Vec::from_real({1, -2, 3, 0.5});
  const auto coeffs = analysis(B, f);
  for (std::size_t k = 0; k < 4; ++k) CHECK(coeffs[k] == f[k]);

  std::vector<Vec> vs{Vec::from_real({1, 0}),
                      Vec::from_real({1, 1})};
  const Frame fr(ScalarField::Real, 2, std::move(vs));
  const auto c = analysis(fr, Vec::basis(ScalarField::Real, 2, 2));
  CHECK(c[0] == cx(0, 0));
  CHECK(c[1] == cx(1, 0));
}

TEST_CASE("measure is the entrywise modulus and phase-invariant") {
  const Frame B = onb(ScalarField::Real, 2);
  const auto m = measure(B, Vec::from_real({3, -4}));
  CHECK(m[0] == 3.0);
  CHECK(m[1] == 4.0);

  const Frame Bc = onb(ScalarField::Complex, 1);
  Vec z(ScalarField::Complex, {cx(0, 2)});
  CHECK(measure(Bc, z)[0] == doctest::Approx(2.0).epsilon(1e-15));

  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const Vec f = random_vec(ScalarField::Complex, 5, rng);
    const cx a = std::polar(1.0, rng.uniform(0.0, 2.0 * M_PI));
    const Frame fr = random_frame(ScalarField::Complex, 5, 9, rng);
    const auto mf = measure(fr, f), ma = measure(fr, a * f);
    for (std::size_t k = 0; k < mf.size(); ++k)
      CHECK(std::abs(mf[k] - ma[k]) < 1e-12 * (1.0 + mf[k]));
  }
}

TEST_CASE("measurement_distance basics") {
  Rng rng(11);
  const Frame fr = random_frame(ScalarField::Real, 6, 10, rng);
  const Vec f = random_vec(ScalarField::Real, 6, rng);
  CHECK(measurement_distance(fr, f, f) == 0.0);
  CHECK(measurement_distance(fr, f, -1.0 * f) == 0.0);
}

TEST_CASE("measurement_distance agrees with the naive evaluation at benign scales") {
  Rng rng(13);
  for (int t = 0; t < 60; ++t) {
    const auto field = (t % 2 == 0) ? ScalarField::Real : ScalarField::Complex;
    const Frame fr = random_frame(field, 5, 12, rng);
    const Vec f = random_vec(field, 5, rng);
    const Vec g = random_vec(field, 5, rng);
    const auto mf = measure(fr, f), mg = measure(fr, g);
    double s = 0.0;
    for (std::size_t k = 0; k < mf.size(); ++k)
      s += (mf[k] - mg[k]) * (mf[k] - mg[k]);
    CHECK(measurement_distance(fr, f, g) ==
          doctest::Approx(std::sqrt(s)).epsilon(1e-10));
  }
}

TEST_CASE("measurement_distance is bounded by sqrt(B) ||f-g||") {
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    const Frame fr = random_frame(ScalarField::Complex, 4, 7, rng);
    const auto [A, B] = frame_bounds(fr);
    const Vec f = random_vec(ScalarField::Complex, 4, rng);
    const Vec g = random_vec(ScalarField::Complex, 4, rng);
    CHECK(measurement_distance(fr, f, g) <=
          std::sqrt(B) * (f - g).norm() * (1.0 + 1e-10) + 1e-12);
  }
}

TEST_CASE("frame_bounds on known families") {
  const auto [a1, b1] = frame_bounds(onb(ScalarField::Real, 5));
  CHECK(a1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b1 == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<Vec> vs{Vec::from_real({1, 0}), Vec::from_real({1, 0}),
                      Vec::from_real({0, 1})};
  const auto [a2, b2] = frame_bounds(Frame(ScalarField::Real, 2, std::move(vs)));
  CHECK(a2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b2 == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(frame_bounds(Frame(ScalarField::Real, 2, {})),
                  EmptyFrameError);
}

TEST_CASE("frame_bounds matches the Gram-spectrum oracle") {
  Rng rng(19);
  for (int t = 0; t < 60; ++t) {
    const auto field = (t % 2 == 0) ? ScalarField::Real : ScalarField::Complex;
    const std::size_t dim = 2 + rng.next_u64() % 3;       // <= 4
    const std::size_t count = 1 + rng.next_u64() % 8;     // <= 8
    const Frame fr = random_frame(field, dim, count, rng);
    const auto [A, B] = frame_bounds(fr);
    const auto [Ag, Bg] = gram_bounds(fr);
    CHECK(std::abs(A - Ag) < 1e-10 * (1.0 + Bg));
    CHECK(std::abs(B - Bg) < 1e-10 * (1.0 + Bg));
  }
}

TEST_CASE("frame inequality holds with computed bounds") {
  Rng rng(23);
  const Frame fr = random_frame(ScalarField::Complex, 6, 14, rng);
  const auto [A, B] = frame_bounds(fr);
  for (int t = 0; t < 1000; ++t) {
    Vec f = random_vec(ScalarField::Complex, 6, rng);
    f *= 1.0 / f.norm();
    double s = 0.0;
    for (const cx& c : analysis(fr, f)) s += std::norm(c);
    CHECK(s >= A - 1e-8);
    CHECK(s <= B + 1e-8);
  }
}

TEST_CASE("parsevalize") {
  const Frame B = onb(ScalarField::Real, 3);
  const Frame P = parsevalize(B);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK((P.vector(k) - B.vector(k)).norm() < 1e-12);

  std::vector<Vec> vs{Vec::from_real({2, 0}), Vec::from_real({0, 1})};
  const Frame Q = parsevalize(Frame(ScalarField::Real, 2, std::move(vs)));
  CHECK((Q.vector(0) - Vec::from_real({1, 0})).norm() < 1e-12);
  CHECK((Q.vector(1) - Vec::from_real({0, 1})).norm() < 1e-12);

  Rng rng(29);
  for (std::size_t n : {2, 3, 5}) {
    const Frame fam = random_frame(ScalarField::Real, n, 2 * n - 1, rng);
    const auto [A, Bu] = frame_bounds(parsevalize(fam));
    CHECK(std::abs(A - 1.0) < 1e-8);
    CHECK(std::abs(Bu - 1.0) < 1e-8);
  }

  std::vector<Vec> rank1{Vec::from_real({1, 1}), Vec::from_real({2, 2})};
  CHECK_THROWS_AS(parsevalize(Frame(ScalarField::Real, 2, std::move(rank1))),
                  RankError);
}

TEST_CASE("frame validity flag") {
  CHECK(is_valid_frame(onb(ScalarField::Real, 3)));
  std::vector<Vec> deficient{Vec::from_real({1, 0, 0}),
                             Vec::from_real({0, 1, 0})};
  CHECK_FALSE(is_valid_frame(Frame(ScalarField::Real, 3, std::move(deficient))));
}

TEST_CASE("frame construction validates members") {
  std::vector<Vec> bad{Vec::basis(ScalarField::Real, 2, 1),
                       Vec::basis(ScalarField::Real, 3, 1)};
  CHECK_THROWS_AS(Frame(ScalarField::Real, 2, std::move(bad)), DimensionError);
  std::vector<Vec> wrong{Vec::basis(ScalarField::Complex, 2, 1)};
  CHECK_THROWS_AS(Frame(ScalarField::Real, 2, std::move(wrong)), FieldError);
}
