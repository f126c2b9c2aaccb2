#include "l2dict/rank1.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "l2dict/linalg.hpp"

namespace l2dict {

namespace {

double balance_residual(double theta, double a, double b, double c, double target) {
  const double omt = 1.0 - theta;
  return (omt * omt * a + 2.0 * theta * omt * b + theta * theta * c) - target * (omt * omt + theta * theta);
}

// C * basis-of(C^T T C): the shared tail of both decomposition corollaries.
Matrix balanced_image(const SymMatrix& x, const SymMatrix& t, int count) {
  const Matrix c = factor_ggt(x, count);
  const SymMatrix lambda(c.transposed().multiply(t.entries()).multiply(c));
  const BalancedBasis basis = balanced_orthonormal(lambda);
  return c.multiply(basis.vectors);
}

}  // namespace

double solve_theta(double a, double b, double c, double target) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(c), std::abs(target)});
  const double slack = 1e-10 * scale;
  if (a > target + slack || c < target - slack)
    fail(errc::invalid_bracket, "solve_theta requires a <= target <= c");
  a = std::min(a, target);
  c = std::max(c, target);

  const double u = a - target;  // g(0) <= 0
  const double w = c - target;  // g(1) >= 0
  const double qa = u + w - 2.0 * b;
  const double qb = 2.0 * (b - u);
  const double qc = u;
  const double residual_bound = 1e-10 * std::max(1.0, std::abs(target));

  auto admissible = [&](double theta) {
    return theta >= -1e-12 && theta <= 1.0 + 1e-12 &&
           std::abs(balance_residual(std::clamp(theta, 0.0, 1.0), a, b, c, target)) <= residual_bound;
  };

  double best = -1.0;
  if (std::abs(qa) <= 1e-14 * scale) {
    if (std::abs(qb) > 1e-14 * scale) {
      const double theta = -qc / qb;
      if (admissible(theta)) best = std::clamp(theta, 0.0, 1.0);
    } else if (std::abs(qc) <= slack) {
      best = 0.0;  // degenerate: g vanishes identically
    }
  } else {
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0 && disc > -1e-12 * scale * scale) disc = 0.0;
    if (disc >= 0.0) {
      const double root = std::sqrt(disc);
      const double q = -0.5 * (qb + std::copysign(root, qb));
      double candidates[2] = {2.0, 2.0};
      if (qa != 0.0) candidates[0] = q / qa;
      if (q != 0.0) candidates[1] = qc / q;
      std::sort(candidates, candidates + 2);
      for (double theta : candidates)
        if (admissible(theta)) {
          best = std::clamp(theta, 0.0, 1.0);
          break;
        }
    }
  }

  if (best < 0.0) {
    // g(0) <= 0 <= g(1), so bisection always lands on a root.
    double lo = 0.0, hi = 1.0;
    double glo = balance_residual(lo, a, b, c, target);
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double gmid = balance_residual(mid, a, b, c, target);
      if ((glo <= 0.0) == (gmid <= 0.0)) {
        lo = mid;
        glo = gmid;
      } else {
        hi = mid;
      }
    }
    best = 0.5 * (lo + hi);
  }
  return std::clamp(best, 0.0, 1.0);
}

BalancedBasis balanced_orthonormal(const SymMatrix& form) {
  const int n = form.dim();
  const double target = form.trace() / n;
  if (n == 1) {
    Matrix single(1, 1);
    single(0, 0) = 1.0;
    return {1, single, form, target};
  }

  std::vector<Vec> unit(n, Vec(n, 0.0));
  for (int i = 0; i < n; ++i) unit[i][i] = 1.0;

  std::vector<Vec> chosen;
  chosen.reserve(n);
  for (int step = 0; step < n - 1; ++step) {
    std::vector<Vec> inputs = chosen;
    inputs.insert(inputs.end(), unit.begin(), unit.end());
    OrthoResult ortho = gram_schmidt(inputs, chosen.size());
    const std::size_t fresh = chosen.size();
    if (ortho.kept.size() != static_cast<std::size_t>(n))
      fail(errc::invalid_input, "balanced basis: orthonormal completion lost dimensions");

    // Extremal candidates bracket the trace average.
    std::size_t jmin = fresh, jmax = fresh;
    double qmin = 0.0, qmax = 0.0;
    std::vector<double> quad(ortho.kept.size() - fresh);
    for (std::size_t j = fresh; j < ortho.kept.size(); ++j) {
      quad[j - fresh] = dot(ortho.kept[j], form.apply(ortho.kept[j]));
      if (j == fresh || quad[j - fresh] < qmin) {
        qmin = quad[j - fresh];
        jmin = j;
      }
      if (j == fresh || quad[j - fresh] > qmax) {
        qmax = quad[j - fresh];
        jmax = j;
      }
    }

    Vec x;
    if (jmin == jmax) {
      x = ortho.kept[jmin];
    } else {
      const Vec& pj = ortho.kept[jmin];
      const Vec& pk = ortho.kept[jmax];
      const double cross = dot(pj, form.apply(pk));
      const double theta = solve_theta(qmin, cross, qmax, target);
      if (theta == 0.0) {
        x = pj;
      } else {
        const double scale = 1.0 / std::sqrt((1.0 - theta) * (1.0 - theta) + theta * theta);
        x.resize(n);
        for (int i = 0; i < n; ++i) x[i] = scale * ((1.0 - theta) * pj[i] + theta * pk[i]);
      }
    }
    chosen.push_back(std::move(x));
  }

  std::vector<Vec> inputs = chosen;
  inputs.insert(inputs.end(), unit.begin(), unit.end());
  OrthoResult final_ortho = gram_schmidt(inputs, chosen.size());
  if (final_ortho.kept.size() != static_cast<std::size_t>(n))
    fail(errc::invalid_input, "balanced basis: final completion lost dimensions");

  return {n, Matrix::from_columns(final_ortho.kept), form, target};
}

Rank1Decomposition decompose_exact_rank(const SymMatrix& x, const SymMatrix& t) {
  if (x.definiteness() == Definiteness::indefinite)
    fail(errc::not_psd, "rank-1 decomposition requires a positive semidefinite matrix");
  if (t.dim() != x.dim()) fail(errc::invalid_input, "weight form dimension mismatch");
  const int rank = x.numeric_rank();
  if (rank == 0) fail(errc::invalid_input, "zero matrix has an empty decomposition");
  return {x, rank, balanced_image(x, t, rank), t, trace_product(x, t) / rank};
}

Rank1Decomposition decompose_padded(const SymMatrix& m, const SymMatrix& a, int count) {
  if (m.definiteness() == Definiteness::indefinite)
    fail(errc::not_psd, "rank-1 decomposition requires a positive semidefinite matrix");
  if (a.dim() != m.dim()) fail(errc::invalid_input, "weight form dimension mismatch");
  const int rank = m.numeric_rank();
  if (rank == 0) fail(errc::invalid_input, "zero matrix has an empty decomposition");
  if (count < rank)
    fail(errc::rank_too_low,
         "need at least rank(M) = " + std::to_string(rank) + " vectors, got " + std::to_string(count));

  const int n = m.dim();
  Matrix image;
  if (count == rank) {
    image = balanced_image(m, a, count);
  } else {
    const int pad = count - rank;
    const SymMatrix x = SymMatrix::block_diag(m, SymMatrix::identity(pad));
    Matrix t_raw(n + pad, n + pad);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t_raw(i, j) = a(i, j);
    image = balanced_image(x, SymMatrix(t_raw), count).top_rows(n);
  }
  return {m, count, std::move(image), a, trace_product(m, a) / count};
}

}  // namespace l2dict
