#include "gsamp/recon.hpp"

#include <algorithm>
#include <cmath>

#include "gsamp/errors.hpp"
#include "gsamp/linalg.hpp"

namespace gsamp {

namespace {

Eigen::MatrixXd support_columns(const OrthoBasis& basis, std::span<const int> support) {
  Eigen::MatrixXd cols(basis.size(), static_cast<Eigen::Index>(support.size()));
  for (std::size_t c = 0; c < support.size(); ++c) {
    if (support[c] < 0 || support[c] >= basis.size()) throw InvalidArgument("support index out of range");
    cols.col(static_cast<Eigen::Index>(c)) = basis.u.col(support[c]);
  }
  return cols;
}

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double t) {
  return v.unaryExpr([t](double a) { return a > t ? a - t : (a < -t ? a + t : 0.0); });
}

}  // namespace

SupportModel parse_support_model(std::string_view name) {
  if (name == "bandlimited") return SupportModel::bandlimited;
  if (name == "random" || name == "random-support") return SupportModel::random;
  throw InvalidArgument("unknown support model '" + std::string(name) + "'");
}

std::string to_string(SupportModel model) {
  return model == SupportModel::bandlimited ? "bandlimited" : "random";
}

SparseSignalSpec make_signal_spec(int n, int k, SupportModel model, Seed seed) {
  if (k < 1 || k > n) throw InvalidArgument("make_signal_spec: k must lie in [1, n]");
  Rng rng(seed);
  SparseSignalSpec spec;
  spec.model = model;
  spec.seed = seed;
  if (model == SupportModel::bandlimited) {
    spec.support.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) spec.support[i] = i;
  } else {
    spec.support = sample_without_replacement(rng, n, k);
    std::sort(spec.support.begin(), spec.support.end());
  }
  double norm2 = 0.0;
  for (int i = 0; i < k; ++i) {
    const double c = rng.gaussian();
    spec.coefficients.push_back(c);
    norm2 += c * c;
  }
  const double norm = std::sqrt(norm2);
  for (auto& c : spec.coefficients) c /= norm;
  return spec;
}

Eigen::VectorXd synthesize(const OrthoBasis& basis, const SparseSignalSpec& spec) {
  if (spec.support.size() != spec.coefficients.size())
    throw InvalidArgument("synthesize: support and coefficient counts differ");
  const Eigen::MatrixXd cols = support_columns(basis, spec.support);
  return cols * Eigen::Map<const Eigen::VectorXd>(spec.coefficients.data(), cols.cols());
}

double mse_db(const Eigen::VectorXd& x_star, const Eigen::VectorXd& x) {
  if (x_star.size() != x.size()) throw InvalidArgument("mse_db: length mismatch");
  if (x.size() == 0) throw InvalidArgument("mse_db: empty signals");
  const double mse = (x_star - x).squaredNorm() / static_cast<double>(x.size());
  if (mse == 0.0) return kMseFloorDb;
  return std::max(10.0 * std::log10(mse), kMseFloorDb);
}

void assess(ReconResult& result, const Eigen::VectorXd& x_true) {
  result.mse_db = mse_db(result.x_star, x_true);
  result.perfect = result.mse_db < kPerfectRecoveryDb;
}

ReconResult ls_known_support(const SamplingOperator& op, const OrthoBasis& basis, std::span<const int> support,
                             const Eigen::VectorXd& y) {
  if (op.cols() != basis.size()) throw InvalidArgument("ls_known_support: operator width differs from basis");
  if (y.size() != op.rows()) throw InvalidArgument("ls_known_support: measurement length mismatch");
  if (support.empty()) throw InvalidArgument("ls_known_support: empty support");
  const Eigen::MatrixXd cols = support_columns(basis, support);
  const Eigen::MatrixXd psi_s = op.phi * cols;
  const Eigen::VectorXd coef = pseudoinverse(psi_s) * y;

  ReconResult out;
  out.xhat_star = Eigen::VectorXd::Zero(basis.size());
  for (std::size_t c = 0; c < support.size(); ++c) out.xhat_star(support[c]) = coef(static_cast<Eigen::Index>(c));
  out.x_star = cols * coef;
  out.stats.rank = numerical_rank(psi_s);
  out.stats.rank_deficient = out.stats.rank < static_cast<int>(support.size());
  out.stats.feasibility = (psi_s * coef - y).norm();
  return out;
}

ReconResult basis_pursuit(const Eigen::MatrixXd& psi, const Eigen::VectorXd& y, const BasisPursuitParams& params) {
  if (y.size() != psi.rows()) throw InvalidArgument("basis_pursuit: measurement length mismatch");
  if (!(params.rho > 0.0)) throw InvalidArgument("basis_pursuit: rho must be positive");
  if (!(params.relaxation > 0.0 && params.relaxation < 2.0))
    throw InvalidArgument("basis_pursuit: relaxation must lie in (0, 2)");
  if (params.max_iter < 1) throw InvalidArgument("basis_pursuit: max_iter must be positive");
  const Eigen::Index n = psi.cols();
  const Eigen::MatrixXd pinv = pseudoinverse(psi);
  // x-step: x = P v + q projects v onto {x : Ψx = y} (least-squares set when rank deficient).
  const Eigen::MatrixXd projector = Eigen::MatrixXd::Identity(n, n) - pinv * psi;
  const Eigen::VectorXd offset = pinv * y;

  ReconResult out;
  SolverStats& st = out.stats;
  st.rank = numerical_rank(psi);
  st.rank_deficient = st.rank < std::min(psi.rows(), psi.cols());
  st.converged = false;

  Eigen::VectorXd x = offset;
  Eigen::VectorXd z = x;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd z_prev(n);
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  const double threshold = 1.0 / params.rho;
  for (int it = 1; it <= params.max_iter; ++it) {
    x.noalias() = projector * (z - u);
    x += offset;
    z_prev = z;
    const Eigen::VectorXd x_relaxed = params.relaxation * x + (1.0 - params.relaxation) * z_prev;
    z = soft_threshold(x_relaxed + u, threshold);
    u += x_relaxed - z;
    st.iterations = it;
    st.primal_residual = (x - z).norm();
    st.dual_residual = params.rho * (z - z_prev).norm();
    if (params.record_objective) st.objective.push_back(x.lpNorm<1>());
    const double eps_primal = sqrt_n * params.abs_tol + params.rel_tol * std::max(x.norm(), z.norm());
    const double eps_dual = sqrt_n * params.abs_tol + params.rel_tol * params.rho * u.norm();
    if (st.primal_residual <= eps_primal && st.dual_residual <= eps_dual) {
      st.converged = true;
      break;
    }
  }
  st.feasibility = (psi * x - y).norm();
  if (st.feasibility > params.feas_tol * std::max(1.0, y.norm())) st.converged = false;
  out.xhat_star = std::move(x);
  return out;
}

ReconResult bp_l1(const SamplingOperator& op, const OrthoBasis& basis, const Eigen::VectorXd& y,
                  const BasisPursuitParams& params) {
  if (op.cols() != basis.size()) throw InvalidArgument("bp_l1: operator width differs from basis");
  if (op.rows() > op.cols()) throw InvalidArgument("bp_l1: more measurements than signal length");
  ReconResult out = basis_pursuit(op.phi * basis.u, y, params);
  out.x_star = basis.u * out.xhat_star;
  return out;
}

}  // namespace gsamp
