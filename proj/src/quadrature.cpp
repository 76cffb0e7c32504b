#include "subwave/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include "subwave/errors.hpp"

namespace subwave::quad {

GaussRule gauss_jacobi_unit(int n, double s) {
  if (n < 1) throw DomainError("gauss_jacobi_unit: n must be >= 1");
  if (!(s > -1.0)) throw DomainError("gauss_jacobi_unit: exponent must exceed -1");
  // Jacobi weight (1-y)^a (1+y)^b on [-1,1], a = 0 and b = s, then y -> (1+y)/2.
  const double a = 0.0, b = s, ab = a + b;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) {
    const double m = 2.0 * k + ab;
    diag(k) = (k == 0 && std::abs(ab) < 1e-14) ? (b - a) / (ab + 2.0)
                                                 : (b * b - a * a) / (m * (m + 2.0));
    if (k >= 1) {
      const double num = 4.0 * k * (k + a) * (k + b) * (k + ab);
      const double den = m * m * (m + 1.0) * (m - 1.0);
      sub(k - 1) = std::sqrt(num / den);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                              std::lgamma(ab + 2.0));
  const double to_unit = std::pow(2.0, -s - 1.0);
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[i] = 0.5 * (1.0 + solver.eigenvalues()(i));
    rule.weights[i] = mu0 * v0 * v0 * to_unit;
  }
  return rule;
}

}  // namespace subwave::quad
