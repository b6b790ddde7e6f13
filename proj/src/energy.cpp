#include "gmcons/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "gmcons/kernels.hpp"

namespace gmcons {

namespace {

void require_positive_input(std::span<const double> x) {
  for (double v : x)
    if (!(v > 0.0)) throw NonPositiveInput();
}

}  // namespace

double free_energy(std::span<const double> x, std::span<const double> y, double c) {
  if (x.size() != y.size()) throw LengthMismatch(x.size(), y.size());
  require_positive_input(x);
  require_positive_input(y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * (std::log(x[i] / y[i]) - 1.0);
  return s + c;
}

double free_energy_uniform_ref(std::span<const double> x) {
  require_positive_input(x);
  double s = 0.0;
  for (double v : x) s += v * (std::log(v) - 1.0);
  return s + static_cast<double>(x.size());
}

double relative_entropy(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw LengthMismatch(x.size(), y.size());
  require_positive_input(x);
  require_positive_input(y);
  if (std::abs(kernels::sum(x) - 1.0) > 1e-9 || std::abs(kernels::sum(y) - 1.0) > 1e-9)
    throw NotProbabilityVector();
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::log(x[i] / y[i]);
  return s;
}

std::vector<double> projected_gradient(const Matrix& l, std::span<const double> x) {
  if (l.rows() != l.cols() || l.rows() != x.size()) throw LengthMismatch(l.rows(), x.size());
  for (double v : x)
    if (!(v > 0.0)) throw NonPositiveState();
  for (std::size_t i = 0; i < l.rows(); ++i) {
    double rs = 0.0;
    for (std::size_t j = 0; j < l.cols(); ++j) rs += l(i, j);
    if (std::abs(rs) > 1e-9) throw Error("matrix is not a Laplacian (row sums nonzero)");
  }
  std::vector<double> u(x.size()), out(x.size());
  kernels::vlog(x, u);
  l.apply(u, out);
  return out;
}

EigenDecomposition jacobi_eigen_symmetric(const Matrix& a, double tol) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw NotSymmetric();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(a(i, j) - a(j, i)) > 1e-12 * std::max(1.0, scale)) throw NotSymmetric();

  Matrix m = a;
  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += m(i, j) * m(i, j);
    return std::sqrt(2.0 * s);
  };

  const double stop = tol * std::max(1.0, scale);
  for (int sweep = 0; sweep < 100 && off_norm() > stop; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (std::abs(apq) <= stop / (n * n)) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return m(i, i) < m(j, j); });

  EigenDecomposition dec;
  dec.values.resize(n);
  dec.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    dec.values[k] = m(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) dec.vectors(i, k) = v(i, order[k]);
  }
  return dec;
}

double eigendecomposition_projection_residual(const Matrix& l_sym, std::span<const double> x) {
  const std::size_t n = l_sym.rows();
  if (x.size() != n) throw LengthMismatch(x.size(), n);
  for (std::size_t i = 0; i < n; ++i) {
    double rs = 0.0;
    for (std::size_t j = 0; j < n; ++j) rs += l_sym(i, j);
    if (std::abs(rs) > 1e-9) throw Error("matrix is not a Laplacian (row sums nonzero)");
  }

  EigenDecomposition dec = jacobi_eigen_symmetric(l_sym);
  const double scale = std::max(1.0, std::abs(dec.values.back()));
  if (std::abs(dec.values[0]) > 1e-8 * scale) throw NotConnected();
  for (std::size_t k = 1; k < n; ++k)
    if (dec.values[k] <= 1e-8 * scale) throw NotConnected();

  // null eigenvector must be the normalized all-ones vector
  const double ref = 1.0 / std::sqrt(static_cast<double>(n));
  const double sign = dec.vectors(0, 0) >= 0 ? 1.0 : -1.0;
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(sign * dec.vectors(i, 0) - ref) > 1e-6) throw NotConnected();

  std::vector<double> lx(n);
  l_sym.apply(x, lx);
  std::vector<double> proj(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double dotkx = 0.0;
    for (std::size_t i = 0; i < n; ++i) dotkx += dec.vectors(i, k) * x[i];
    for (std::size_t i = 0; i < n; ++i) proj[i] += dec.vectors(i, k) * dec.values[k] * dotkx;
  }
  double resid = 0.0;
  for (std::size_t i = 0; i < n; ++i) resid = std::max(resid, std::abs(lx[i] - proj[i]));
  return resid;
}

EnergyReport audit_energy_descent(const Trajectory& traj, const WeightedDigraph& g,
                                  double slack) {
  EnergyReport rep;
  for (std::size_t k = 0; k < traj.samples(); ++k) {
    if (traj.states[k].size() != static_cast<std::size_t>(g.node_count()))
      throw LengthMismatch(traj.states[k].size(), g.node_count());
    rep.times.push_back(traj.times[k]);
    rep.values.push_back(free_energy_uniform_ref(traj.states[k]));
  }
  for (std::size_t k = 1; k < rep.values.size(); ++k) {
    const double up = rep.values[k] - rep.values[k - 1];
    if (up > slack) {
      rep.monotone = false;
      rep.max_uptick = std::max(rep.max_uptick, up);
    }
  }
  return rep;
}

void write_energy_csv(std::ostream& os, const EnergyReport& report) {
  os << "t,free_energy\n";
  char buf[64];
  for (std::size_t k = 0; k < report.times.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", report.times[k], report.values[k]);
    os << buf;
  }
}

}  // namespace gmcons
