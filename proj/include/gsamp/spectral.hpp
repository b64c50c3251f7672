#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "gsamp/graph.hpp"

namespace gsamp {

enum class Ordering { frequency, natural };

/// n×n matrix with orthonormal columns defining a sparsity domain.
/// `eigenvalues` is filled for graph Fourier bases (nondecreasing) and
/// empty otherwise.
struct OrthoBasis {
  Eigen::MatrixXd u;
  Eigen::VectorXd eigenvalues;
  Ordering ordering = Ordering::natural;
  std::string label;

  int size() const noexcept { return static_cast<int>(u.rows()); }
};

/// Combinatorial L = D - W, or normalized D^-1/2 L D^-1/2 with zero
/// rows/columns for isolated nodes. Exactly symmetric.
Eigen::MatrixXd laplacian(const Graph& g, bool normalized);

/// Eigenvectors of the chosen Laplacian, by nondecreasing eigenvalue.
///
/// Within a numerically repeated eigenvalue cluster the basis is replaced by
/// a canonical one: project e_0, e_1, ... onto the cluster subspace and
/// Gram-Schmidt the first significant projections. Each column is then
/// signed so its first nonzero entry is positive. Throws ConvergenceError
/// if the eigensolver fails or the eigenpair residual exceeds
/// 1e-8 * ||L||_max.
OrthoBasis gft_basis(const Graph& g, bool normalized);

/// Orthonormal DCT-II; column k is the k-th frequency atom.
OrthoBasis dct_basis(int n);

OrthoBasis identity_basis(int n);

struct CoherenceReport {
  double mu = 1.0;
  double max_abs_entry = 0.0;
  int max_closed_neighborhood = 0;
};

/// mu = min(sqrt(|N̄*|) * ||U||_max, 1) where |N̄*| is the largest closed
/// neighborhood over the sampling nodes `r` in `g`.
CoherenceReport graph_basis_coherence(const Graph& g, std::span<const int> r, const OrthoBasis& basis);

/// Row-major CSV, 17 significant digits.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& a);
Eigen::MatrixXd read_matrix_csv(std::istream& in);

}  // namespace gsamp
