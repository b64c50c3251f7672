#include "gsamp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "gsamp/errors.hpp"
#include "gsamp/linalg.hpp"

namespace gsamp {

namespace {

// Canonical orthonormal basis of span(v): Gram-Schmidt (two passes) over the
// projections of e_0, e_1, ... onto the subspace, skipping negligible ones.
Eigen::MatrixXd canonical_cluster_basis(const Eigen::MatrixXd& v) {
  const Eigen::Index n = v.rows();
  const Eigen::Index c = v.cols();
  Eigen::MatrixXd out(n, c);
  Eigen::Index found = 0;
  for (Eigen::Index i = 0; i < n && found < c; ++i) {
    Eigen::VectorXd w = v * v.row(i).transpose();
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index t = 0; t < found; ++t) w -= out.col(t).dot(w) * out.col(t);
    const double norm = w.norm();
    if (norm > 1e-6) out.col(found++) = w / norm;
  }
  if (found < c) throw ConvergenceError("gft_basis: could not canonicalize a repeated eigenspace");
  return out;
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> col) {
  const double scale = col.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < col.size(); ++i)
    if (std::abs(col(i)) > 1e-10 * scale) {
      if (col(i) < 0.0) col = -col;
      return;
    }
}

}  // namespace

Eigen::MatrixXd laplacian(const Graph& g, bool normalized) {
  if (g.directed()) throw InvalidArgument("laplacian: directed graph");
  const int n = g.size();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd deg(n);
  for (int i = 0; i < n; ++i) deg(i) = g.weighted_degree(i);
  for (const auto& e : g.edges()) {
    l(e.u, e.v) = -e.w;
    l(e.v, e.u) = -e.w;
  }
  for (int i = 0; i < n; ++i) l(i, i) = deg(i);
  if (!normalized) return l;
  Eigen::VectorXd inv_sqrt(n);
  for (int i = 0; i < n; ++i) inv_sqrt(i) = deg(i) > 0.0 ? 1.0 / std::sqrt(deg(i)) : 0.0;
  for (int i = 0; i < n; ++i) l(i, i) = deg(i) > 0.0 ? 1.0 : 0.0;
  for (const auto& e : g.edges()) {
    const double v = -e.w * inv_sqrt(e.u) * inv_sqrt(e.v);
    l(e.u, e.v) = v;
    l(e.v, e.u) = v;
  }
  return l;
}

OrthoBasis gft_basis(const Graph& g, bool normalized) {
  const Eigen::MatrixXd l = laplacian(g, normalized);
  const int n = g.size();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l);
  if (solver.info() != Eigen::Success) throw ConvergenceError("gft_basis: eigensolver did not converge");
  Eigen::VectorXd values = solver.eigenvalues();
  Eigen::MatrixXd vectors = solver.eigenvectors();

  const double l_max = max_abs(l);
  const double cluster_tol = 1e-9 * std::max(l_max, 1.0);
  for (int a = 0; a < n;) {
    int b = a + 1;
    while (b < n && values(b) - values(b - 1) <= cluster_tol) ++b;
    if (b - a > 1) vectors.middleCols(a, b - a) = canonical_cluster_basis(vectors.middleCols(a, b - a));
    a = b;
  }
  for (int k = 0; k < n; ++k) fix_sign(vectors.col(k));

  const double residual = max_abs(l * vectors - vectors * values.asDiagonal());
  if (residual > 1e-8 * l_max)
    throw ConvergenceError("gft_basis: eigenpair residual " + std::to_string(residual) + " above tolerance");
  return {std::move(vectors), std::move(values), Ordering::frequency,
          normalized ? "gft-normalized" : "gft-combinatorial"};
}

OrthoBasis dct_basis(int n) {
  if (n < 1) throw InvalidArgument("dct_basis: n must be positive");
  Eigen::MatrixXd u(n, n);
  for (int k = 0; k < n; ++k) {
    const double c = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
    for (int i = 0; i < n; ++i) u(i, k) = c * std::cos(std::numbers::pi * (2.0 * i + 1.0) * k / (2.0 * n));
  }
  return {std::move(u), {}, Ordering::natural, "dct"};
}

OrthoBasis identity_basis(int n) {
  if (n < 1) throw InvalidArgument("identity_basis: n must be positive");
  return {Eigen::MatrixXd::Identity(n, n), {}, Ordering::natural, "identity"};
}

CoherenceReport graph_basis_coherence(const Graph& g, std::span<const int> r, const OrthoBasis& basis) {
  if (r.empty()) throw InvalidArgument("graph_basis_coherence: empty sampling set");
  if (basis.size() != g.size()) throw InvalidArgument("graph_basis_coherence: basis size differs from graph");
  CoherenceReport report;
  for (int i : r) report.max_closed_neighborhood = std::max(report.max_closed_neighborhood, g.degree(i) + 1);
  report.max_abs_entry = max_abs(basis.u);
  report.mu = std::min(std::sqrt(static_cast<double>(report.max_closed_neighborhood)) * report.max_abs_entry, 1.0);
  return report;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& a) {
  const auto old = out.precision(17);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) out << ',';
      out << a(i, j);
    }
    out << '\n';
  }
  out.precision(old);
}

Eigen::MatrixXd read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw ParseError(line_no, "not a number: '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) throw ParseError(line_no, "ragged row");
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()),
                    rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) a(i, j) = rows[i][j];
  return a;
}

}  // namespace gsamp
