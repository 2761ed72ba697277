#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "locc/prob_vector.hpp"

namespace locc {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Bipartite pure state |psi> on A (x) B, stored as the amplitude matrix
// A[a][b] = <a|<b|psi>.  Unit Frobenius norm within 1e-10.
class PureState {
 public:
  PureState(Eigen::Index dim_a, Eigen::Index dim_b, Matrix amplitudes);

  Eigen::Index dim_a() const { return amplitudes_.rows(); }
  Eigen::Index dim_b() const { return amplitudes_.cols(); }
  const Matrix& amplitudes() const { return amplitudes_; }

 private:
  Matrix amplitudes_;
};

// Hermitian, unit-trace, positive-semidefinite matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }

 private:
  Matrix entries_;
};

// Result of a Schmidt decomposition: descending squared coefficients lambda_i
// and matched orthonormal bases so that sum_i sqrt(lambda_i)|a_i>|b_i>
// reconstructs the source state.
struct SchmidtForm {
  ProbVector coefficients;
  std::vector<Vector> basis_a;
  std::vector<Vector> basis_b;

  PureState reconstruct(Eigen::Index dim_a, Eigen::Index dim_b) const;
};

SchmidtForm schmidt_decompose(const PureState& s);

DensityMatrix reduced_state_alice(const PureState& s);
DensityMatrix reduced_state_bob(const PureState& s);

// Descending eigenvalues of Alice's reduced state.
ProbVector schmidt_spectrum(const PureState& s);

// Number of Schmidt coefficients above the rank threshold (1e-12).
std::size_t schmidt_rank(const PureState& s);

// Canonical state sum_i sqrt(p_i)|i>|i> on the computational bases.
PureState from_schmidt_coefficients(const ProbVector& p, Eigen::Index dim_a,
                                    Eigen::Index dim_b);

// True iff the states are related by local unitaries, i.e. their sorted
// zero-padded Schmidt spectra agree within 1e-8 per entry.
bool locally_equivalent(const PureState& x, const PureState& y);

// |<x|y>|^2.
double fidelity(const PureState& x, const PureState& y);

}  // namespace locc
