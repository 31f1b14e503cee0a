#pragma once

#include <Eigen/Dense>

#include "nzd/game_model.hpp"
#include "nzd/markov.hpp"
#include "nzd/numeric_policy.hpp"

namespace nzd {

// The column a memory-one player controls in the determinant identity: the
// noise-weighted transition column minus the unit vector on cooperation
// rows. X controls it exactly; Y's version has rows 2 and 3 exchanged
// because the profile order is (CC, CD, DC, DD) from X's point of view.
Eigen::Vector4d effective_column_x(const MemoryOneStrategy& x,
                                   const NoiseModel& noise);
Eigen::Vector4d effective_column_y(const MemoryOneStrategy& y,
                                   const NoiseModel& noise);

// D(p, q, f): 4x4 determinant with columns (first column of M - I,
// effective column of X, effective column of Y, f).
double determinant(const MemoryOneStrategy& x, const MemoryOneStrategy& y,
                   const NoiseModel& noise, const Eigen::Vector4d& f);

// Stationary average of f via the determinant route:
// D(p, q, f) / D(p, q, 1). Throws DegenerateChainError when the
// normalizer is below policy.singularity_tol.
double determinant_score(const MemoryOneStrategy& x,
                         const MemoryOneStrategy& y, const NoiseModel& noise,
                         const Eigen::Vector4d& f,
                         const NumericPolicy& policy = {});

// alpha s_X + beta s_Y + gamma = 0.
struct LinearRelation {
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
};

struct RelationCheck {
  bool enforced = false;
  // || effective_column_x - (alpha U_X + beta U_Y + gamma 1) ||_inf
  double residual = 0.0;
};

// A relation is enforced by X alone iff X's effective column equals
// alpha U_X + beta U_Y + gamma 1 componentwise; no opponent enters.
RelationCheck verify_linear_relation(const MemoryOneStrategy& x,
                                     const NoiseModel& noise,
                                     const ExpectedPayoffs& payoffs,
                                     const LinearRelation& relation,
                                     const NumericPolicy& policy = {});

struct RelationFit {
  LinearRelation relation;
  double residual = 0.0;  // infinity norm of the least-squares misfit
};

// Least-squares projection of X's effective column onto
// span{U_X, U_Y, 1}: the relation X comes closest to enforcing.
RelationFit fit_linear_relation(const MemoryOneStrategy& x,
                                const NoiseModel& noise,
                                const ExpectedPayoffs& payoffs);

}  // namespace nzd
