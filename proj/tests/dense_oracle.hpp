#pragma once

// Dense symmetric eigensolve of a tridiagonal matrix, used as brute-force
// reference for the Sturm-sequence routines.

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

#include "kgbound/tridiagonal.hpp"

namespace oracle {

inline Eigen::MatrixXd dense(const kgb::SymTridiagonal& t) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) = t.diag[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    a(i, i + 1) = a(i + 1, i) = t.off[static_cast<std::size_t>(i)];
  }
  return a;
}

inline std::vector<double> dense_eigenvalues(const kgb::SymTridiagonal& t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense(t), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
