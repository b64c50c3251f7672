#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gsamp/rng.hpp"
#include "gsamp/sampler.hpp"
#include "gsamp/spectral.hpp"

namespace gsamp {

inline constexpr double kPerfectRecoveryDb = -40.0;
inline constexpr double kMseFloorDb = -400.0;

enum class SupportModel { bandlimited, random };

SupportModel parse_support_model(std::string_view name);
std::string to_string(SupportModel model);

struct SparseSignalSpec {
  std::vector<int> support;
  std::vector<double> coefficients;
  SupportModel model = SupportModel::bandlimited;
  Seed seed = 0;
};

/// Bandlimited: support = {0..k-1}; random: k distinct indices, sorted.
/// Coefficients are standard normal, then scaled to unit norm.
SparseSignalSpec make_signal_spec(int n, int k, SupportModel model, Seed seed);

/// x = U_S x̂_S.
Eigen::VectorXd synthesize(const OrthoBasis& basis, const SparseSignalSpec& spec);

struct SolverStats {
  int iterations = 0;
  bool converged = true;
  int rank = 0;
  bool rank_deficient = false;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double feasibility = 0.0;  ///< ||Ψx̂ - y||_2
  std::vector<double> objective;  ///< ||x̂||_1 per iteration when requested
};

struct ReconResult {
  Eigen::VectorXd x_star;
  Eigen::VectorXd xhat_star;
  double mse_db = 0.0;
  bool perfect = false;
  SolverStats stats;
};

/// Fills mse_db and perfect against the ground truth.
void assess(ReconResult& result, const Eigen::VectorXd& x_true);

/// x̂*_S = (Φ U_S)^+ y; zero off the support.
ReconResult ls_known_support(const SamplingOperator& op, const OrthoBasis& basis, std::span<const int> support,
                             const Eigen::VectorXd& y);

struct BasisPursuitParams {
  double rho = 1.0;
  double relaxation = 1.0;  ///< over-relaxation factor in (0, 2); 1 is plain ADMM
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  double feas_tol = 1e-8;
  int max_iter = 50000;
  bool record_objective = false;
};

/// min ||x̂||_1 s.t. Ψx̂ = y by ADMM on the split x = z: the x-step projects
/// onto the affine feasible set, the z-step soft-thresholds at 1/rho, the
/// scaled dual accumulates x - z. Stops on the usual primal/dual residual
/// tests. Returns the feasible iterate; non-convergence is flagged in stats.
ReconResult basis_pursuit(const Eigen::MatrixXd& psi, const Eigen::VectorXd& y,
                          const BasisPursuitParams& params = {});

/// Ψ = ΦU; x* = U x̂*.
ReconResult bp_l1(const SamplingOperator& op, const OrthoBasis& basis, const Eigen::VectorXd& y,
                  const BasisPursuitParams& params = {});

/// 10 log10(||x* - x||^2 / n), floored at -400 dB.
double mse_db(const Eigen::VectorXd& x_star, const Eigen::VectorXd& x);

}  // namespace gsamp
