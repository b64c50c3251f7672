#include "gsamp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsamp/errors.hpp"

namespace gsamp {

namespace {

void require_nonempty(const Eigen::MatrixXd& a, const char* op) {
  if (a.rows() == 0 || a.cols() == 0) throw InvalidArgument(std::string(op) + ": empty matrix");
}

template <class Svd>
void check(const Svd& svd, const char* op) {
  if (svd.info() != Eigen::Success) throw ConvergenceError(std::string(op) + ": SVD did not converge");
}

}  // namespace

double rank_tolerance(Eigen::Index rows, Eigen::Index cols, double sigma_max) {
  return static_cast<double>(std::max(rows, cols)) * sigma_max * std::ldexp(1.0, -45);
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) {
  require_nonempty(a, "singular_values");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  check(svd, "singular_values");
  return svd.singularValues();
}

Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& a) {
  require_nonempty(a, "pseudoinverse");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  check(svd, "pseudoinverse");
  const auto& s = svd.singularValues();
  const double tol = rank_tolerance(a.rows(), a.cols(), s.size() ? s(0) : 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

double condition_number(const Eigen::MatrixXd& a) {
  const auto s = singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return std::numeric_limits<double>::infinity();
  const double smallest = s(s.size() - 1);
  if (smallest == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smallest;
}

double effective_condition_number(const Eigen::MatrixXd& a) {
  const auto s = singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return std::numeric_limits<double>::infinity();
  const double tol = rank_tolerance(a.rows(), a.cols(), s(0));
  double smallest = s(0);
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol) smallest = s(i);
  return s(0) / smallest;
}

int numerical_rank(const Eigen::MatrixXd& a) {
  const auto s = singular_values(a);
  if (s.size() == 0) return 0;
  const double tol = rank_tolerance(a.rows(), a.cols(), s(0));
  return static_cast<int>((s.array() > tol).count());
}

double max_abs(const Eigen::MatrixXd& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace gsamp
