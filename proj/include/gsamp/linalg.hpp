#pragma once

#include <Eigen/Dense>

namespace gsamp {

/// Singular values below max(rows, cols) * sigma_max * 2^-45 are treated as zero.
double rank_tolerance(Eigen::Index rows, Eigen::Index cols, double sigma_max);

/// Singular values, nonincreasing.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& a);

/// Moore-Penrose pseudoinverse via SVD with the rank tolerance above.
Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& a);

/// sigma_max / sigma_min over all min(rows, cols) singular values.
/// +inf when sigma_min is exactly zero.
double condition_number(const Eigen::MatrixXd& a);

/// sigma_max over the smallest singular value above the rank tolerance.
double effective_condition_number(const Eigen::MatrixXd& a);

int numerical_rank(const Eigen::MatrixXd& a);

double max_abs(const Eigen::MatrixXd& a);

}  // namespace gsamp
