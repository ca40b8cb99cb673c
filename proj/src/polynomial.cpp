#include "bdiv/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "bdiv/errors.hpp"

namespace bdiv::poly {

Poly multiply(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, cplx(0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly subtract(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), cplx(0.0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

Poly scale(const Poly& a, cplx s) {
  Poly out(a);
  for (auto& c : out) c *= s;
  return out;
}

Poly derivative(const Poly& a) {
  if (a.size() <= 1) return {cplx(0.0)};
  Poly out(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k)
    out[k - 1] = static_cast<double>(k) * a[k];
  return out;
}

Poly shift(const Poly& a, int k) {
  Poly out(static_cast<std::size_t>(k), cplx(0.0));
  out.insert(out.end(), a.begin(), a.end());
  return out;
}

cplx eval(const Poly& a, cplx z) {
  cplx acc(0.0);
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly from_roots(std::span<const cplx> roots) {
  Poly out{cplx(1.0)};
  for (const auto& r : roots) out = multiply(out, Poly{-r, cplx(1.0)});
  return out;
}

void trim(Poly& a, double rel_tol) {
  double big = 0.0;
  for (const auto& c : a) big = std::max(big, std::abs(c));
  while (!a.empty() && std::abs(a.back()) <= rel_tol * big) a.pop_back();
}

std::vector<cplx> roots(Poly a, int polish_steps) {
  trim(a);
  if (a.size() <= 1) return {};
  const Poly original = a;
  const auto n = static_cast<Eigen::Index>(a.size() - 1);
  const cplx lead = a.back();

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i)
    companion(i, n - 1) = -a[static_cast<std::size_t>(i)] / lead;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("companion eigenvalue iteration did not converge");
  }
  std::vector<cplx> out(solver.eigenvalues().data(),
                        solver.eigenvalues().data() + n);

  // A step may not travel more than a third of the way to the nearest other
  // root, so clustered roots cannot collapse onto one another.
  const Poly deriv = derivative(original);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double sep = INFINITY;
    for (std::size_t j = 0; j < out.size(); ++j)
      if (j != i) sep = std::min(sep, std::abs(out[i] - out[j]));
    cplx z = out[i];
    double res = std::abs(eval(original, z));
    for (int s = 0; s < polish_steps && res > 0.0; ++s) {
      const cplx dp = eval(deriv, z);
      if (dp == cplx(0.0)) break;
      const cplx next = z - eval(original, z) / dp;
      const double next_res = std::abs(eval(original, next));
      if (!(next_res < res) || std::abs(next - out[i]) > sep / 3.0) break;
      z = next;
      res = next_res;
    }
    out[i] = z;
  }
  return out;
}

}  // namespace bdiv::poly
