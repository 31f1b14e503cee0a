#include "nzd/zd_core.hpp"

#include <cmath>
#include <string>

#include "nzd/errors.hpp"

namespace nzd {

Eigen::Vector4d effective_column_x(const MemoryOneStrategy& x,
                                   const NoiseModel& noise) {
  const double a = noise.correct_prob(), b = noise.error_prob();
  return {a * x[0] + b * x[1] - 1.0, b * x[0] + a * x[1] - 1.0,
          a * x[2] + b * x[3], b * x[2] + a * x[3]};
}

Eigen::Vector4d effective_column_y(const MemoryOneStrategy& y,
                                   const NoiseModel& noise) {
  // same construction seen from the column player: profiles CD and DC trade
  // places
  const double a = noise.correct_prob(), b = noise.error_prob();
  return {a * y[0] + b * y[1] - 1.0, a * y[2] + b * y[3],
          b * y[0] + a * y[1] - 1.0, b * y[2] + a * y[3]};
}

double determinant(const MemoryOneStrategy& x, const MemoryOneStrategy& y,
                   const NoiseModel& noise, const Eigen::Vector4d& f) {
  const Eigen::Matrix4d m = transition_matrix(x, y, noise);
  Eigen::Matrix4d d;
  d.col(0) = m.col(0) - Eigen::Vector4d::Unit(0);
  d.col(1) = effective_column_x(x, noise);
  d.col(2) = effective_column_y(y, noise);
  d.col(3) = f;
  return d.determinant();
}

double determinant_score(const MemoryOneStrategy& x,
                         const MemoryOneStrategy& y, const NoiseModel& noise,
                         const Eigen::Vector4d& f, const NumericPolicy& policy) {
  const double norm = determinant(x, y, noise, Eigen::Vector4d::Ones());
  if (std::abs(norm) < policy.singularity_tol)
    throw DegenerateChainError("D(p, q, 1) = " + std::to_string(norm) +
                               " is numerically singular");
  return determinant(x, y, noise, f) / norm;
}

RelationCheck verify_linear_relation(const MemoryOneStrategy& x,
                                     const NoiseModel& noise,
                                     const ExpectedPayoffs& payoffs,
                                     const LinearRelation& relation,
                                     const NumericPolicy& policy) {
  // componentwise equality of the effective column; holds against every
  // opponent, which is what makes the relation unconditional
  const Eigen::Vector4d want = relation.alpha * payoffs.row_vector() +
                               relation.beta * payoffs.col_vector() +
                               relation.gamma * Eigen::Vector4d::Ones();
  const double residual =
      (effective_column_x(x, noise) - want).lpNorm<Eigen::Infinity>();
  return {residual <= policy.residual_tol, residual};
}

RelationFit fit_linear_relation(const MemoryOneStrategy& x,
                                const NoiseModel& noise,
                                const ExpectedPayoffs& payoffs) {
  Eigen::Matrix<double, 4, 3> basis;
  basis.col(0) = payoffs.row_vector();
  basis.col(1) = payoffs.col_vector();
  basis.col(2) = Eigen::Vector4d::Ones();
  const Eigen::Vector4d target = effective_column_x(x, noise);
  const Eigen::Vector3d coef =
      basis.colPivHouseholderQr().solve(target);
  RelationFit fit;
  fit.relation = {coef(0), coef(1), coef(2)};
  fit.residual = (basis * coef - target).lpNorm<Eigen::Infinity>();
  return fit;
}

}  // namespace nzd
