#include "locc/states.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "locc/errors.hpp"

namespace locc {

PureState::PureState(Eigen::Index dim_a, Eigen::Index dim_b, Matrix amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (dim_a < 1 || dim_b < 1 || amplitudes_.rows() != dim_a ||
      amplitudes_.cols() != dim_b) {
    throw DimensionMismatch("amplitude matrix does not match declared dims");
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw InvariantViolation("PureState norm is " + std::to_string(norm) +
                             ", expected 1");
  }
}

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw DimensionMismatch("density matrix must be square");
  }
  if ((entries_ - entries_.adjoint()).norm() > 1e-10) {
    throw InvariantViolation("density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace().real() - 1.0) > 1e-10) {
    throw InvariantViolation("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("eigendecomposition failed");
  }
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw InvariantViolation("density matrix has a negative eigenvalue");
  }
}

PureState SchmidtForm::reconstruct(Eigen::Index dim_a,
                                   Eigen::Index dim_b) const {
  Matrix amp = Matrix::Zero(dim_a, dim_b);
  for (std::size_t i = 0; i < basis_a.size(); ++i) {
    amp += std::sqrt(coefficients[i]) * basis_a[i] * basis_b[i].transpose();
  }
  return PureState(dim_a, dim_b, amp);
}

namespace {

// Lexicographic order on complex vectors by (real, imag) per component;
// used only to break ties between degenerate Schmidt coefficients.
bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (a(k).real() != b(k).real()) return a(k).real() < b(k).real();
    if (a(k).imag() != b(k).imag()) return a(k).imag() < b(k).imag();
  }
  return false;
}

}  // namespace

SchmidtForm schmidt_decompose(const PureState& s) {
  Eigen::JacobiSVD<Matrix> svd(s.amplitudes(),
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const Eigen::Index r = sigma.size();

  SchmidtForm form;
  std::vector<double> lambda(r);
  form.basis_a.resize(r);
  form.basis_b.resize(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    lambda[i] = sigma(i) * sigma(i);
    Vector a = svd.matrixU().col(i);
    Vector b = svd.matrixV().col(i).conjugate();
    // Phase convention: first nonzero Alice component real and positive.
    for (Eigen::Index k = 0; k < a.size(); ++k) {
      if (std::abs(a(k)) > 1e-12) {
        const std::complex<double> phase = a(k) / std::abs(a(k));
        a *= std::conj(phase);
        b *= phase;
        break;
      }
    }
    form.basis_a[i] = std::move(a);
    form.basis_b[i] = std::move(b);
  }

  // Stable order: descending coefficient, lexicographic Alice vector within
  // degenerate groups.
  std::vector<Eigen::Index> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) {
                     if (std::abs(lambda[i] - lambda[j]) > 1e-12) {
                       return lambda[i] > lambda[j];
                     }
                     return lex_less(form.basis_a[i], form.basis_a[j]);
                   });
  std::vector<double> lam_sorted(r);
  std::vector<Vector> ba(r), bb(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    lam_sorted[i] = lambda[order[i]];
    ba[i] = form.basis_a[order[i]];
    bb[i] = form.basis_b[order[i]];
  }
  form.coefficients = ProbVector(std::move(lam_sorted));
  form.basis_a = std::move(ba);
  form.basis_b = std::move(bb);
  return form;
}

DensityMatrix reduced_state_alice(const PureState& s) {
  return DensityMatrix(s.amplitudes() * s.amplitudes().adjoint());
}

DensityMatrix reduced_state_bob(const PureState& s) {
  return DensityMatrix(
      (s.amplitudes().adjoint() * s.amplitudes()).transpose());
}

ProbVector schmidt_spectrum(const PureState& s) {
  Eigen::JacobiSVD<Matrix> svd(s.amplitudes());
  const auto& sigma = svd.singularValues();
  std::vector<double> lambda(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    lambda[i] = sigma(i) * sigma(i);
  }
  return ProbVector(std::move(lambda));
}

std::size_t schmidt_rank(const PureState& s) {
  const ProbVector p = schmidt_spectrum(s);
  std::size_t rank = 0;
  for (double v : p.entries()) {
    if (v > 1e-12) ++rank;
  }
  return rank;
}

PureState from_schmidt_coefficients(const ProbVector& p, Eigen::Index dim_a,
                                    Eigen::Index dim_b) {
  if (static_cast<Eigen::Index>(p.size()) > std::min(dim_a, dim_b)) {
    throw DimensionMismatch("more Schmidt coefficients than local dimensions");
  }
  Matrix amp = Matrix::Zero(dim_a, dim_b);
  for (std::size_t i = 0; i < p.size(); ++i) {
    amp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
        std::sqrt(p[i]);
  }
  return PureState(dim_a, dim_b, amp);
}

bool locally_equivalent(const PureState& x, const PureState& y) {
  const ProbVector px = schmidt_spectrum(x);
  const ProbVector py = schmidt_spectrum(y);
  const std::size_t n = std::max(px.size(), py.size());
  const auto xs = px.padded(n).sorted_desc();
  const auto ys = py.padded(n).sorted_desc();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(xs[i] - ys[i]) > 1e-8) return false;
  }
  return true;
}

double fidelity(const PureState& x, const PureState& y) {
  if (x.dim_a() != y.dim_a() || x.dim_b() != y.dim_b()) {
    throw DimensionMismatch("fidelity requires equal dimensions");
  }
  const std::complex<double> overlap =
      (x.amplitudes().conjugate().cwiseProduct(y.amplitudes())).sum();
  return std::norm(overlap);
}

}  // namespace locc
