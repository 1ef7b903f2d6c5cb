#pragma once

// Symmetric tridiagonal eigenvalue kernel: Sturm-sequence counting,
// bisection for individual eigenvalues, and inverse iteration.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace kgb {

struct SymTridiagonal {
  std::vector<double> diag;  ///< size n
  std::vector<double> off;   ///< size n - 1; off[i] couples rows i and i + 1

  std::size_t size() const { return diag.size(); }
};

/// Number of eigenvalues strictly below `shift`, from the signs of the
/// LDL^T pivots of T - shift I.
std::size_t sturm_count(const SymTridiagonal& t, double shift);

/// Interval [lo, hi] containing every eigenvalue.
std::pair<double, double> gershgorin_bounds(const SymTridiagonal& t);

/// k-th smallest eigenvalue (k = 0 is the lowest), by bisection to
/// floating-point resolution.
double kth_eigenvalue(const SymTridiagonal& t, std::size_t k);

/// All eigenvalues, ascending.
std::vector<double> eigenvalues(const SymTridiagonal& t);

/// The eigenvalue of smallest |lambda - target|.
double eigenvalue_nearest(const SymTridiagonal& t, double target);

/// Solves (T - shift I) x = rhs with partial pivoting. Exactly zero pivots
/// are nudged to a tiny value so a shift at an eigenvalue still yields the
/// (huge) inverse-iteration direction.
std::vector<double> solve_shifted(const SymTridiagonal& t, double shift, std::span<const double> rhs);

/// Eigenvector for the eigenvalue nearest `shift`, normalized to unit
/// Euclidean length with a positive first significant component.
std::vector<double> inverse_iteration(const SymTridiagonal& t, double shift, int iterations = 3);

}  // namespace kgb
