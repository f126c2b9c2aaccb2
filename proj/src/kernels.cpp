#include "l2dict/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace l2dict::kernels {

namespace {

constexpr double kTinyPivot = 1e-300;

// (c, s) zeroing the (p,q) entry; |angle| <= pi/4 so any cyclic ordering of
// rotations converges (Forsythe-Henrici).
inline void jacobi_rotation(double app, double aqq, double apq, double& c, double& s) {
  if (std::abs(apq) <= kTinyPivot) {
    c = 1.0;
    s = 0.0;
    return;
  }
  const double tau = (aqq - app) / (2.0 * apq);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  c = 1.0 / std::sqrt(1.0 + t * t);
  s = t * c;
}

inline double off_diagonal_norm(const double* a, int n) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) sum += a[static_cast<size_t>(i) * n + j] * a[static_cast<size_t>(i) * n + j];
  return std::sqrt(2.0 * sum);
}

constexpr double kOffTolerance = 1e-15;
constexpr int kMaxSweeps = 64;

template <class F>
double pairwise_reduce(std::size_t first, std::size_t count, F&& term) {
  if (count <= 16) {
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) sum += term(first + i);
    return sum;
  }
  const std::size_t half = count / 2;
  return pairwise_reduce(first, half, term) + pairwise_reduce(first + half, count - half, term);
}

}  // namespace

void matmul(const double* a, const double* b, double* c, int m, int k, int n) {
#pragma omp parallel for schedule(static) if (static_cast<long long>(m) * k * n > 32768)
  for (int i = 0; i < m; ++i) {
    double* ci = c + static_cast<size_t>(i) * n;
    std::fill(ci, ci + n, 0.0);
    const double* ai = a + static_cast<size_t>(i) * k;
    for (int p = 0; p < k; ++p) {
      const double aip = ai[p];
      const double* bp = b + static_cast<size_t>(p) * n;
      for (int j = 0; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
}

void syrk(const double* a, double* c, int m, int k) {
#pragma omp parallel for schedule(static) if (static_cast<long long>(m) * m * k > 32768)
  for (int i = 0; i < m; ++i) {
    const double* ai = a + static_cast<size_t>(i) * k;
    for (int j = i; j < m; ++j) {
      const double* aj = a + static_cast<size_t>(j) * k;
      double sum = 0.0;
      for (int p = 0; p < k; ++p) sum += ai[p] * aj[p];
      c[static_cast<size_t>(i) * m + j] = sum;
    }
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < i; ++j) c[static_cast<size_t>(i) * m + j] = c[static_cast<size_t>(j) * m + i];
}

EigResult jacobi_eig(const double* input, int n, bool want_vectors) {
  EigResult out;
  out.values.assign(n, 0.0);
  out.vectors.assign(want_vectors ? static_cast<size_t>(n) * n : 0, 0.0);
  if (n == 0) return out;

  std::vector<double> a(input, input + static_cast<size_t>(n) * n);
  std::vector<double> next(a.size());
  std::vector<double> v;
  std::vector<double> vnext;
  if (want_vectors) {
    v.assign(a.size(), 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;
    vnext.assign(a.size(), 0.0);
  }

  // Round-robin tournament schedule: m players (one bye when n is odd),
  // m-1 rounds per sweep, each round pairing all players disjointly.
  const int m = (n % 2 == 0) ? n : n + 1;
  const int rounds = m - 1;
  const int pairs_per_round = m / 2;
  std::vector<int> pp(pairs_per_round), qq(pairs_per_round), skip(pairs_per_round);
  std::vector<double> cs(pairs_per_round), sn(pairs_per_round);

  const double fro = std::sqrt(pairwise_reduce(0, a.size(), [&](std::size_t i) { return a[i] * a[i]; }));
  const double stop = kOffTolerance * std::max(fro, kTinyPivot);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a.data(), n) <= stop) break;
    out.sweeps = sweep + 1;
    for (int round = 0; round < rounds; ++round) {
      int live = 0;
      for (int slot = 0; slot < pairs_per_round; ++slot) {
        int x = (slot == 0) ? 0 : 1 + (round + slot - 1) % (m - 1);
        int y = 1 + (round + (m - 1 - slot) - 1) % (m - 1);
        if (x >= n || y >= n) continue;  // bye
        pp[live] = std::min(x, y);
        qq[live] = std::max(x, y);
        ++live;
      }
      for (int t = 0; t < live; ++t) {
        const double app = a[static_cast<size_t>(pp[t]) * n + pp[t]];
        const double aqq = a[static_cast<size_t>(qq[t]) * n + qq[t]];
        const double apq = a[static_cast<size_t>(pp[t]) * n + qq[t]];
        jacobi_rotation(app, aqq, apq, cs[t], sn[t]);
        skip[t] = (cs[t] == 1.0 && sn[t] == 0.0);
      }

      // Phase 1: next = a * J (columns p,q mix); untouched columns copied.
      std::memcpy(next.data(), a.data(), a.size() * sizeof(double));
#pragma omp parallel for schedule(static) if (static_cast<long long>(live) * n > 4096)
      for (int t = 0; t < live; ++t) {
        if (skip[t]) continue;
        const int p = pp[t], q = qq[t];
        const double c = cs[t], s = sn[t];
        for (int i = 0; i < n; ++i) {
          const double aip = a[static_cast<size_t>(i) * n + p];
          const double aiq = a[static_cast<size_t>(i) * n + q];
          next[static_cast<size_t>(i) * n + p] = c * aip - s * aiq;
          next[static_cast<size_t>(i) * n + q] = s * aip + c * aiq;
        }
      }
      // Phase 2: next = J^T * next (rows p,q mix), in place.
#pragma omp parallel for schedule(static) if (static_cast<long long>(live) * n > 4096)
      for (int t = 0; t < live; ++t) {
        if (skip[t]) continue;
        const int p = pp[t], q = qq[t];
        const double c = cs[t], s = sn[t];
        double* rp = next.data() + static_cast<size_t>(p) * n;
        double* rq = next.data() + static_cast<size_t>(q) * n;
        for (int j = 0; j < n; ++j) {
          const double xp = rp[j], xq = rq[j];
          rp[j] = c * xp - s * xq;
          rq[j] = s * xp + c * xq;
        }
      }
      // Keep the matrix bitwise symmetric so every rotation sees one value.
#pragma omp parallel for schedule(static) if (static_cast<long long>(n) * n > 16384)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          next[static_cast<size_t>(j) * n + i] = next[static_cast<size_t>(i) * n + j];
      a.swap(next);

      if (want_vectors) {
#pragma omp parallel for schedule(static) if (static_cast<long long>(live) * n > 4096)
        for (int t = 0; t < live; ++t) {
          if (skip[t]) continue;
          const int p = pp[t], q = qq[t];
          const double c = cs[t], s = sn[t];
          for (int i = 0; i < n; ++i) {
            const double vip = v[static_cast<size_t>(i) * n + p];
            const double viq = v[static_cast<size_t>(i) * n + q];
            v[static_cast<size_t>(i) * n + p] = c * vip - s * viq;
            v[static_cast<size_t>(i) * n + q] = s * vip + c * viq;
          }
        }
      }
    }
  }

  for (int i = 0; i < n; ++i) out.values[i] = a[static_cast<size_t>(i) * n + i];
  if (want_vectors) out.vectors = std::move(v);
  return out;
}

void second_moment(const double* samples, std::size_t count, int dim, double* out) {
  const std::size_t entries = static_cast<std::size_t>(dim) * dim;
  // Chunk boundaries depend only on (count, dim), never on the thread
  // count; partial sums are folded pairwise in a fixed order.
  const std::size_t mem_cap = std::max<std::size_t>(1, (std::size_t{1} << 21) / entries);
  const std::size_t nchunks = std::clamp<std::size_t>(count / 8192, 1, mem_cap);
  const std::size_t chunk = (count + nchunks - 1) / nchunks;
  std::vector<double> partials(nchunks * entries, 0.0);

#pragma omp parallel for schedule(static) if (nchunks > 1)
  for (long c = 0; c < static_cast<long>(nchunks); ++c) {
    double* acc = partials.data() + static_cast<std::size_t>(c) * entries;
    const std::size_t lo = static_cast<std::size_t>(c) * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    for (std::size_t k = lo; k < hi; ++k) {
      const double* vk = samples + k * dim;
      for (int i = 0; i < dim; ++i) {
        const double vi = vk[i];
        double* row = acc + static_cast<std::size_t>(i) * dim;
        for (int j = 0; j < dim; ++j) row[j] += vi * vk[j];
      }
    }
  }

  std::size_t width = nchunks;
  while (width > 1) {
    const std::size_t folded = (width + 1) / 2;
    for (std::size_t t = 0; t < folded; ++t) {
      double* dst = partials.data() + t * entries;
      const double* a = partials.data() + 2 * t * entries;
      const double* b = (2 * t + 1 < width) ? partials.data() + (2 * t + 1) * entries : nullptr;
      for (std::size_t e = 0; e < entries; ++e) dst[e] = b ? a[e] + b[e] : a[e];
    }
    width = folded;
  }
  std::copy(partials.begin(), partials.begin() + entries, out);
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= (1u << 17)) {
    return pairwise_reduce(0, xs.size(), [&](std::size_t i) { return xs[i]; });
  }
  // Expand the recursion tree to a fixed frontier, evaluate subtrees in
  // parallel, then fold adjacent partials back up the same tree.
  struct Range {
    std::size_t first, count;
  };
  std::vector<Range> frontier{{0, xs.size()}};
  constexpr int kDepth = 6;  // 64 subtrees
  for (int d = 0; d < kDepth; ++d) {
    std::vector<Range> split;
    split.reserve(frontier.size() * 2);
    for (const Range& r : frontier) {
      const std::size_t half = r.count / 2;
      split.push_back({r.first, half});
      split.push_back({r.first + half, r.count - half});
    }
    frontier.swap(split);
  }
  std::vector<double> partials(frontier.size());
#pragma omp parallel for schedule(static)
  for (long t = 0; t < static_cast<long>(frontier.size()); ++t)
    partials[t] = pairwise_reduce(frontier[t].first, frontier[t].count, [&](std::size_t i) { return xs[i]; });
  for (int d = 0; d < kDepth; ++d)
    for (std::size_t t = 0; 2 * t + 1 < partials.size(); ++t) partials[t] = partials[2 * t] + partials[2 * t + 1];
  // After kDepth folds only index 0 holds the full sum.
  return partials[0];
}

namespace serial {

void matmul(const double* a, const double* b, double* c, int m, int k, int n) {
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      double sum = 0.0;
      for (int p = 0; p < k; ++p) sum += a[static_cast<size_t>(i) * k + p] * b[static_cast<size_t>(p) * n + j];
      c[static_cast<size_t>(i) * n + j] = sum;
    }
}

void syrk(const double* a, double* c, int m, int k) {
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double sum = 0.0;
      for (int p = 0; p < k; ++p) sum += a[static_cast<size_t>(i) * k + p] * a[static_cast<size_t>(j) * k + p];
      c[static_cast<size_t>(i) * m + j] = sum;
    }
}

EigResult jacobi_eig(const double* input, int n, bool want_vectors) {
  EigResult out;
  out.values.assign(n, 0.0);
  out.vectors.assign(want_vectors ? static_cast<size_t>(n) * n : 0, 0.0);
  if (n == 0) return out;

  std::vector<double> a(input, input + static_cast<size_t>(n) * n);
  std::vector<double> v;
  if (want_vectors) {
    v.assign(a.size(), 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;
  }
  auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };

  double fro = 0.0;
  for (double x : a) fro += x * x;
  const double stop = kOffTolerance * std::max(std::sqrt(fro), kTinyPivot);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a.data(), n) <= stop) break;
    out.sweeps = sweep + 1;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double c, s;
        jacobi_rotation(at(p, p), at(q, q), at(p, q), c, s);
        if (c == 1.0 && s == 0.0) continue;
        const double app = at(p, p), aqq = at(q, q), apq = at(p, q);
        at(p, p) = c * c * app - 2.0 * c * s * apq + s * s * aqq;
        at(q, q) = s * s * app + 2.0 * c * s * apq + c * c * aqq;
        at(p, q) = at(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = at(i, p), aiq = at(i, q);
          at(i, p) = at(p, i) = c * aip - s * aiq;
          at(i, q) = at(q, i) = s * aip + c * aiq;
        }
        if (want_vectors) {
          for (int i = 0; i < n; ++i) {
            const double vip = v[static_cast<size_t>(i) * n + p];
            const double viq = v[static_cast<size_t>(i) * n + q];
            v[static_cast<size_t>(i) * n + p] = c * vip - s * viq;
            v[static_cast<size_t>(i) * n + q] = s * vip + c * viq;
          }
        }
      }
    }
  }

  for (int i = 0; i < n; ++i) out.values[i] = a[static_cast<size_t>(i) * n + i];
  if (want_vectors) out.vectors = std::move(v);
  return out;
}

void second_moment(const double* samples, std::size_t count, int dim, double* out) {
  std::fill(out, out + static_cast<size_t>(dim) * dim, 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    const double* vk = samples + k * dim;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out[static_cast<size_t>(i) * dim + j] += vk[i] * vk[j];
  }
}

double naive_sum(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum;
}

}  // namespace serial

}  // namespace l2dict::kernels
