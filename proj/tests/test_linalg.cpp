#include <doctest.h>

#include <cmath>
#include <random>

#include "l2dict/linalg.hpp"
#include "test_support.hpp"

using namespace l2dict;
using namespace l2dict_test;

namespace {

// Characteristic-polynomial oracle for 2x2 symmetric matrices.
struct Eig2 {
  double hi, lo;
};
Eig2 eig2_oracle(const SymMatrix& m) {
  const double tr = m(0, 0) + m(1, 1);
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const double disc = std::sqrt(tr * tr - 4.0 * det);
  return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

}  // namespace

TEST_CASE("sym_eig: identity and diagonal inputs stay canonical") {
  const SymMatrix id = SymMatrix::identity(2);
  EigenPair e = sym_eig(id);
  CHECK(e.values == Vec{1.0, 1.0});
  CHECK(max_abs_diff(e.vectors, Matrix::identity(2)) == 0.0);

  const SymMatrix diag = SymMatrix::diagonal({4.0, 1.0});
  e = sym_eig(diag);
  CHECK(e.values == Vec{4.0, 1.0});
  CHECK(max_abs_diff(e.vectors, Matrix::identity(2)) == 0.0);
}

TEST_CASE("sym_eig matches the 2x2 characteristic-polynomial oracle") {
  const SymMatrix sigma = example_moment();
  const Eig2 expect = eig2_oracle(sigma);
  EigenPair e = sym_eig(sigma);
  CHECK(e.values[0] == doctest::Approx(expect.hi).epsilon(1e-12));
  CHECK(e.values[1] == doctest::Approx(expect.lo).epsilon(1e-12));
  // Frozen from the oracle: 4.61111..., 0.0555555...
  CHECK(e.values[0] == doctest::Approx(4.6111).epsilon(1e-4));
  CHECK(e.values[1] == doctest::Approx(0.05556).epsilon(1e-3));

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const SymMatrix m = random_symmetric(rng, 2, 3.0);
    const Eig2 oracle = eig2_oracle(m);
    EigenPair p = sym_eig(m);
    CHECK(p.values[0] == doctest::Approx(oracle.hi).epsilon(1e-11));
    CHECK(p.values[1] == doctest::Approx(oracle.lo).epsilon(1e-11));
  }
}

TEST_CASE("sym_eig reconstruction and orthogonality bounds") {
  std::mt19937_64 rng(26);
  for (int n : {1, 3, 7, 14, 20}) {
    const SymMatrix m = random_symmetric(rng, n, 2.0);
    const EigenPair e = sym_eig(m);
    const Matrix qt = e.vectors.transposed();
    CHECK((qt.multiply(e.vectors) - Matrix::identity(n)).frobenius_norm() <= 1e-10 * n);
    Matrix scaled = e.vectors;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) scaled(i, j) *= e.values[j];
    CHECK((scaled.multiply(qt) - m.entries()).frobenius_norm() <= 1e-8 * std::max(1.0, m.frobenius_norm()));
    for (int j = 0; j + 1 < n; ++j) CHECK(e.values[j] >= e.values[j + 1]);
  }
}

TEST_CASE("sym_eig rejects non-finite input") {
  Matrix m(2, 2);
  m(0, 0) = std::nan("");
  CHECK_THROWS_WITH_AS(SymMatrix{m}, doctest::Contains("non-finite"), Error);
}

TEST_CASE("matrix_sqrt: examples") {
  CHECK(max_abs_diff(matrix_sqrt(SymMatrix::identity(3)).entries(), Matrix::identity(3)) <= 1e-15);
  const SymMatrix root = matrix_sqrt(SymMatrix::diagonal({4.0, 9.0}));
  CHECK(root(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(root(1, 1) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(std::abs(root(0, 1)) <= 1e-14);

  const SymMatrix sigma = example_moment();
  const Eig2 oracle = eig2_oracle(sigma);
  const double expected_trace = std::sqrt(oracle.hi) + std::sqrt(oracle.lo);
  CHECK(matrix_sqrt(sigma).trace() == doctest::Approx(expected_trace).epsilon(1e-12));
  CHECK(matrix_sqrt(sigma).trace() == doctest::Approx(2.3831).epsilon(5e-4));
}

TEST_CASE("matrix_sqrt rejects indefinite matrices") {
  CHECK_THROWS_AS((void)matrix_sqrt(SymMatrix::diagonal({1.0, -1.0})), Error);
  try {
    (void)matrix_sqrt(SymMatrix::diagonal({1.0, -1.0}));
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_psd);
  }
}

TEST_CASE("matrix_sqrt squares back to the input on random psd matrices") {
  std::mt19937_64 rng(22);
  for (int n : {1, 2, 5, 11, 20}) {
    const SymMatrix m = random_psd_rank(rng, n, n);
    const SymMatrix r = matrix_sqrt(m);
    const Matrix back = r.entries().multiply(r.entries());
    CHECK((back - m.entries()).frobenius_norm() <= 1e-8 * std::max(1.0, m.frobenius_norm()));
    CHECK(r.definiteness() != Definiteness::indefinite);
  }
}

TEST_CASE("factor_ggt: examples and residuals") {
  const Matrix c_id = factor_ggt(SymMatrix::identity(2), 2);
  CHECK(max_abs_diff(c_id, Matrix::identity(2)) == 0.0);

  const Matrix c_rank1 = factor_ggt(SymMatrix::diagonal({4.0, 0.0}), 2);
  CHECK(c_rank1(0, 0) == doctest::Approx(2.0));
  CHECK(c_rank1(1, 0) == 0.0);
  CHECK(c_rank1(0, 1) == 0.0);
  CHECK(c_rank1(1, 1) == 0.0);

  const SymMatrix sigma = example_moment();
  const SymMatrix root = matrix_sqrt(sigma);
  const SymMatrix m_star((3.0 / root.trace()) * root.entries());
  const Matrix c = factor_ggt(m_star, 2);
  CHECK((c.multiply_transposed(c) - m_star.entries()).frobenius_norm() <= 1e-8);

  CHECK_THROWS_AS((void)factor_ggt(SymMatrix::identity(2), 1), Error);
}

TEST_CASE("gram_schmidt: examples") {
  const Vec e1{1.0, 0.0}, e2{0.0, 1.0};
  OrthoResult plain = gram_schmidt({e1, e2});
  CHECK(plain.kept.size() == 2);
  CHECK(plain.dropped_indices.empty());
  CHECK(plain.kept[0] == e1);
  CHECK(plain.kept[1] == e2);

  OrthoResult dup = gram_schmidt({e1, e1, e2});
  CHECK(dup.kept.size() == 2);
  REQUIRE(dup.dropped_indices.size() == 1);
  CHECK(dup.dropped_indices[0] == 1);

  const double inv_rt2 = 1.0 / std::sqrt(2.0);
  const Vec x1{inv_rt2, inv_rt2};
  OrthoResult fixed = gram_schmidt({x1, e1, e2}, 1);
  REQUIRE(fixed.kept.size() == 2);
  CHECK(fixed.dropped_indices.size() == 1);
  CHECK(fixed.kept[0] == x1);  // prefix untouched
  CHECK(fixed.kept[1][0] == doctest::Approx(inv_rt2).epsilon(1e-14));
  CHECK(fixed.kept[1][1] == doctest::Approx(-inv_rt2).epsilon(1e-14));

  CHECK(gram_schmidt({}).kept.empty());
}

TEST_CASE("gram_schmidt spans the input set") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const int count = 1 + static_cast<int>(rng() % (2 * n));
    std::vector<Vec> inputs;
    for (int i = 0; i < count; ++i) {
      if (!inputs.empty() && rng() % 4 == 0) {
        inputs.push_back(inputs[rng() % inputs.size()]);  // force dependence
      } else {
        Vec v(n);
        for (double& x : v) x = uniform(rng);
        inputs.push_back(std::move(v));
      }
    }
    OrthoResult ortho = gram_schmidt(inputs);
    CHECK(ortho.kept.size() + ortho.dropped_indices.size() == inputs.size());
    for (size_t i = 0; i + 1 < ortho.kept.size(); ++i)
      for (size_t j = i + 1; j < ortho.kept.size(); ++j)
        CHECK(std::abs(dot(ortho.kept[i], ortho.kept[j])) <= 1e-10);
    for (const Vec& v : inputs) {
      Vec r = v;
      for (const Vec& b : ortho.kept) {
        const double proj = dot(b, r);
        for (int i = 0; i < n; ++i) r[i] -= proj * b[i];
      }
      CHECK(norm(r) <= 1e-8 * std::max(1.0, norm(v)));
    }
  }
}

TEST_CASE("pinv: examples") {
  CHECK(max_abs_diff(pinv(Matrix::identity(2)), Matrix::identity(2)) <= 1e-14);

  const Matrix rank1(2, 2, {1.0, 0.0, 0.0, 0.0});
  CHECK(max_abs_diff(pinv(rank1), rank1) <= 1e-14);

  const Matrix two_copies(2, 2, {1.0, 1.0, 0.0, 0.0});  // columns e1, e1
  const Matrix p = pinv(two_copies);
  CHECK(p(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p(1, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(p(0, 1)) <= 1e-12);
  CHECK(std::abs(p(1, 1)) <= 1e-12);
}

TEST_CASE("pinv satisfies the four Penrose identities") {
  std::mt19937_64 rng(24);
  auto check_penrose = [](const Matrix& d) {
    const Matrix p = pinv(d);
    const double scale = std::max(1.0, d.frobenius_norm());
    CHECK((d.multiply(p).multiply(d) - d).frobenius_norm() <= 1e-8 * scale);
    CHECK((p.multiply(d).multiply(p) - p).frobenius_norm() <= 1e-8 * std::max(1.0, p.frobenius_norm()));
    const Matrix dp = d.multiply(p);
    CHECK((dp - dp.transposed()).frobenius_norm() <= 1e-8 * std::max(1.0, dp.frobenius_norm()));
    const Matrix pd = p.multiply(d);
    CHECK((pd - pd.transposed()).frobenius_norm() <= 1e-8 * std::max(1.0, pd.frobenius_norm()));
  };
  for (auto [r, c] : {std::array{20, 40}, std::array{40, 20}, std::array{7, 7}, std::array{1, 5}})
    check_penrose(random_matrix(rng, r, c));
  // Exactly rank-deficient: product of thin factors.
  const Matrix lowrank = random_matrix(rng, 12, 3).multiply(random_matrix(rng, 3, 9));
  check_penrose(lowrank);
}

TEST_CASE("range_basis: examples and capture") {
  CHECK(max_abs_diff(range_basis(SymMatrix::identity(3)), Matrix::identity(3)) == 0.0);

  const Matrix b1 = range_basis(SymMatrix::diagonal({1.0, 0.0}));
  CHECK(b1.cols() == 1);
  CHECK(b1(0, 0) == 1.0);
  CHECK(b1(1, 0) == 0.0);

  const Matrix b2 = range_basis(SymMatrix::diagonal({2.0, 1e-16}));
  CHECK(b2.cols() == 1);
  CHECK(b2(0, 0) == 1.0);

  CHECK_THROWS_AS((void)range_basis(SymMatrix(2, {0.0, 0.0, 0.0, 0.0})), Error);

  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const int r = 1 + static_cast<int>(rng() % n);
    const SymMatrix m = random_psd_rank(rng, n, r);
    const Matrix b = range_basis(m);
    CHECK(b.cols() == r);
    const Matrix bt = b.transposed();
    CHECK((bt.multiply(b) - Matrix::identity(r)).frobenius_norm() <= 1e-10);
    const Matrix projected = b.multiply(bt.multiply(m.entries()).multiply(b)).multiply(bt);
    CHECK((projected - m.entries()).frobenius_norm() <= 1e-8 * m.frobenius_norm());
  }
}
