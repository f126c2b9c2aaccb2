#include <doctest.h>

#include <cmath>
#include <random>

#include "l2dict/linalg.hpp"
#include "l2dict/rank1.hpp"
#include "test_support.hpp"

using namespace l2dict;
using namespace l2dict_test;

namespace {

double balance_g(double theta, double a, double b, double c, double t) {
  const double omt = 1.0 - theta;
  return (omt * omt * a + 2.0 * theta * omt * b + theta * theta * c) - t * (omt * omt + theta * theta);
}

// Independent root finder: plain bisection on g over [0,1].
double bisect_theta(double a, double b, double c, double t) {
  double lo = 0.0, hi = 1.0, glo = balance_g(lo, a, b, c, t);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gmid = balance_g(mid, a, b, c, t);
    if ((glo <= 0.0) == (gmid <= 0.0)) {
      lo = mid;
      glo = gmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void check_balanced(const BalancedBasis& basis) {
  const int n = basis.dim;
  const Matrix& x = basis.vectors;
  const Matrix gram = x.transposed().multiply(x);
  CHECK((gram - Matrix::identity(n)).frobenius_norm() <= 1e-8 * n);
  const double bound = 1e-8 * std::max(1.0, std::abs(basis.form_matrix.trace()));
  for (int j = 0; j < n; ++j) {
    const Vec xj = x.column(j);
    CHECK(std::abs(dot(xj, basis.form_matrix.apply(xj)) - basis.target) <= bound);
  }
}

void check_decomposition(const Rank1Decomposition& dec) {
  const Matrix sum = dec.vectors.multiply_transposed(dec.vectors);
  CHECK((sum - dec.source.entries()).frobenius_norm() <=
        1e-8 * std::max(1.0, dec.source.frobenius_norm()));
  const double bound = 1e-8 * std::max(1.0, std::abs(trace_product(dec.source, dec.weight_form)));
  for (int j = 0; j < dec.count; ++j) {
    const Vec yj = dec.vectors.column(j);
    CHECK(std::abs(dot(yj, dec.weight_form.apply(yj)) - dec.common_value) <= bound);
  }
}

}  // namespace

TEST_CASE("solve_theta: examples") {
  CHECK(solve_theta(1.0, 0.7, 1.0, 1.0) == 0.0);  // a = t = c picks the smallest root
  CHECK(solve_theta(0.0, 0.0, 2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));

  const double theta = solve_theta(0.5, 0.0, 1.5, 1.0);
  CHECK(theta == doctest::Approx(bisect_theta(0.5, 0.0, 1.5, 1.0)).epsilon(1e-10));
  CHECK(std::abs(balance_g(theta, 0.5, 0.0, 1.5, 1.0)) <= 1e-10);

  CHECK_THROWS_AS((void)solve_theta(2.0, 0.0, 3.0, 1.0), Error);
  try {
    (void)solve_theta(2.0, 0.0, 3.0, 1.0);
  } catch (const Error& e) {
    CHECK(e.code() == errc::invalid_bracket);
  }
}

TEST_CASE("solve_theta residual over random brackets") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10000; ++trial) {
    const double t = uniform(rng, -5.0, 5.0);
    const double a = t - std::abs(uniform(rng, 0.0, 5.0));
    const double c = t + std::abs(uniform(rng, 0.0, 5.0));
    const double b = uniform(rng, -5.0, 5.0);
    const double theta = solve_theta(a, b, c, t);
    CHECK(theta >= 0.0);
    CHECK(theta <= 1.0);
    CHECK(std::abs(balance_g(theta, a, b, c, t)) <= 1e-10 * std::max(1.0, std::abs(t)));
  }
}

TEST_CASE("balanced_orthonormal: identity gives the standard basis") {
  const BalancedBasis basis = balanced_orthonormal(SymMatrix::identity(4));
  CHECK(basis.target == 1.0);
  CHECK(max_abs_diff(basis.vectors, Matrix::identity(4)) == 0.0);
  check_balanced(basis);
}

TEST_CASE("balanced_orthonormal: diag(2,0) blends the axes") {
  const BalancedBasis basis = balanced_orthonormal(SymMatrix::diagonal({2.0, 0.0}));
  const double inv_rt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(basis.vectors(0, 0)) == doctest::Approx(inv_rt2).epsilon(1e-12));
  CHECK(std::abs(basis.vectors(1, 0)) == doctest::Approx(inv_rt2).epsilon(1e-12));
  check_balanced(basis);
}

TEST_CASE("balanced_orthonormal: diag(3,2,1) balances at 2") {
  const BalancedBasis basis = balanced_orthonormal(SymMatrix::diagonal({3.0, 2.0, 1.0}));
  CHECK(basis.target == doctest::Approx(2.0));
  check_balanced(basis);
}

TEST_CASE("balanced_orthonormal: dimension one short-circuits") {
  const BalancedBasis basis = balanced_orthonormal(SymMatrix::diagonal({-7.0}));
  CHECK(basis.vectors(0, 0) == 1.0);
  CHECK(basis.target == -7.0);
}

TEST_CASE("balanced_orthonormal on random symmetric forms") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 15);
    check_balanced(balanced_orthonormal(random_symmetric(rng, n, 2.0)));
  }
}

TEST_CASE("decompose_exact_rank: examples") {
  const Rank1Decomposition full = decompose_exact_rank(SymMatrix::identity(2), SymMatrix::identity(2));
  CHECK(full.count == 2);
  CHECK(full.common_value == doctest::Approx(1.0));
  check_decomposition(full);

  const Rank1Decomposition rank1 = decompose_exact_rank(SymMatrix::diagonal({4.0, 0.0}), SymMatrix::identity(2));
  CHECK(rank1.count == 1);
  CHECK(std::abs(rank1.vectors(0, 0)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(rank1.vectors(1, 0)) <= 1e-12);
  CHECK(rank1.common_value == doctest::Approx(4.0));

  std::mt19937_64 rng(33);
  check_decomposition(decompose_exact_rank(random_pd(rng, 3), SymMatrix::identity(3)));

  CHECK_THROWS_AS((void)decompose_exact_rank(SymMatrix::diagonal({1.0, -1.0}), SymMatrix::identity(2)), Error);
}

TEST_CASE("decompose_padded: examples") {
  const Rank1Decomposition pair = decompose_padded(SymMatrix::identity(2), SymMatrix::identity(2), 2);
  CHECK(pair.count == 2);
  check_decomposition(pair);

  // Padding the identity to three vectors spreads the norms to 2/3.
  const Rank1Decomposition spread = decompose_padded(SymMatrix::identity(2), SymMatrix::identity(2), 3);
  CHECK(spread.count == 3);
  for (int j = 0; j < 3; ++j) {
    const Vec y = spread.vectors.column(j);
    CHECK(dot(y, y) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  }
  check_decomposition(spread);

  const SymMatrix sigma = example_moment();
  const SymMatrix root = matrix_sqrt(sigma);
  const SymMatrix m_star((3.0 / root.trace()) * root.entries());
  const Rank1Decomposition dict = decompose_padded(m_star, SymMatrix::identity(2), 3);
  for (int j = 0; j < 3; ++j) CHECK(norm(dict.vectors.column(j)) == doctest::Approx(1.0).epsilon(1e-10));
  check_decomposition(dict);

  CHECK_THROWS_AS((void)decompose_padded(SymMatrix::identity(2), SymMatrix::identity(2), 1), Error);
  try {
    (void)decompose_padded(SymMatrix::identity(2), SymMatrix::identity(2), 1);
  } catch (const Error& e) {
    CHECK(e.code() == errc::rank_too_low);
  }
}

TEST_CASE("decompose_padded equalizes norms for any K at or above the rank") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const int r = 1 + static_cast<int>(rng() % n);
    const SymMatrix m = random_psd_rank(rng, n, r);
    const int rank = m.numeric_rank();
    const int count = rank + static_cast<int>(rng() % 6);
    const Rank1Decomposition dec = decompose_padded(m, SymMatrix::identity(n), count);
    check_decomposition(dec);
    const double want = m.trace() / count;
    for (int j = 0; j < count; ++j) {
      const Vec y = dec.vectors.column(j);
      CHECK(dot(y, y) == doctest::Approx(want).epsilon(1e-8));
    }
  }
}

TEST_CASE("decompose_padded is insensitive to eigenvalue ordering of the input") {
  const Vec up{1.0, 2.0, 3.0};
  const Vec down{3.0, 2.0, 1.0};
  for (const Vec& d : {up, down}) {
    const Rank1Decomposition dec = decompose_padded(SymMatrix::diagonal(d), SymMatrix::identity(3), 5);
    check_decomposition(dec);
  }
}
