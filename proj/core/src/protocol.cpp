#include "locc/protocol.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "locc/errors.hpp"

namespace locc {

const char* to_string(Party p) { return p == Party::Alice ? "alice" : "bob"; }

namespace {

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

// 2x2 block placed at coordinates (p, q) of an n x n identity.
Matrix embed_block(const Eigen::Matrix2cd& block, Eigen::Index p,
                   Eigen::Index q, Eigen::Index n) {
  Matrix m = identity(n);
  m(p, p) = block(0, 0);
  m(p, q) = block(0, 1);
  m(q, p) = block(1, 0);
  m(q, q) = block(1, 1);
  return m;
}

// Permutation sending i -> 0, j -> 1, remaining indices below d in ascending
// order, indices >= d fixed.
Matrix block_permutation(Eigen::Index i, Eigen::Index j, Eigen::Index d,
                         Eigen::Index n) {
  std::vector<Eigen::Index> dest(n);
  Eigen::Index next = 2;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k == i) {
      dest[k] = 0;
    } else if (k == j) {
      dest[k] = 1;
    } else if (k < d) {
      dest[k] = next++;
    } else {
      dest[k] = k;
    }
  }
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m(dest[k], k) = 1.0;
  return m;
}

// Extend orthonormal columns to a full unitary by Gram-Schmidt over the
// standard basis (two orthogonalization passes).
Matrix complete_unitary(const std::vector<Vector>& cols, Eigen::Index n) {
  Matrix u(n, n);
  Eigen::Index filled = 0;
  for (const Vector& c : cols) u.col(filled++) = c;
  for (Eigen::Index k = 0; k < n && filled < n; ++k) {
    Vector v = Vector::Zero(n);
    v(k) = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index c = 0; c < filled; ++c) {
        v -= u.col(c).dot(v) * u.col(c);
      }
    }
    const double norm = v.norm();
    if (norm > 1e-8) u.col(filled++) = v / norm;
  }
  if (filled < n) {
    throw NumericalFailure("could not complete orthonormal basis");
  }
  return u;
}

Matrix hermitian_sqrt(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("eigendecomposition failed");
  }
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

double unitarity_residual(const Matrix& u) {
  if (u.rows() != u.cols()) return 1.0;
  return (u.adjoint() * u - identity(u.rows())).norm();
}

Eigen::Index party_dim(const Protocol& p, Party party) {
  return party == Party::Alice ? p.dim_a : p.dim_b;
}

PureState normalized_state(Eigen::Index da, Eigen::Index db, Matrix amp) {
  const double n = amp.norm();
  if (n < 1e-12) throw NumericalFailure("state norm vanished");
  return PureState(da, db, amp / n);
}

}  // namespace

bool can_transform(const PureState& psi, const PureState& phi) {
  return majorizes(schmidt_spectrum(psi), schmidt_spectrum(phi));
}

std::pair<Matrix, Matrix> correction_unitaries(const PureState& post,
                                               const PureState& target) {
  if (post.dim_a() != target.dim_a() || post.dim_b() != target.dim_b()) {
    throw DimensionMismatch("correction_unitaries requires equal dimensions");
  }
  if (!locally_equivalent(post, target)) {
    throw NotLocallyEquivalent("states have different Schmidt spectra");
  }
  const SchmidtForm fp = schmidt_decompose(post);
  const SchmidtForm ft = schmidt_decompose(target);

  std::vector<Vector> pa, pb, ta, tb;
  for (std::size_t i = 0; i < fp.coefficients.size(); ++i) {
    if (fp.coefficients[i] > 1e-12) {
      pa.push_back(fp.basis_a[i]);
      pb.push_back(fp.basis_b[i]);
      ta.push_back(ft.basis_a[i]);
      tb.push_back(ft.basis_b[i]);
    }
  }
  const Matrix pa_full = complete_unitary(pa, post.dim_a());
  const Matrix pb_full = complete_unitary(pb, post.dim_b());
  const Matrix ta_full = complete_unitary(ta, post.dim_a());
  const Matrix tb_full = complete_unitary(tb, post.dim_b());
  return {ta_full * pa_full.adjoint(), tb_full * pb_full.adjoint()};
}

Protocol synthesize(const PureState& psi, const PureState& phi) {
  return synthesize(psi, phi, nullptr);
}

Protocol synthesize(const PureState& psi, const PureState& phi,
                    std::vector<SynthesisStepParams>* params_out) {
  if (psi.dim_a() != phi.dim_a() || psi.dim_b() != phi.dim_b()) {
    throw DimensionMismatch("synthesize requires states on the same spaces");
  }
  const Eigen::Index da = psi.dim_a();
  const Eigen::Index db = psi.dim_b();
  const Eigen::Index d = std::min(da, db);

  const ProbVector x = schmidt_spectrum(psi).padded(d);
  const ProbVector y = schmidt_spectrum(phi).padded(d);
  if (!majorizes(x, y)) {
    throw NotMajorized("source spectrum is not majorized by target spectrum");
  }

  // Spectrum chain from the target back to the source: v[0] = y_sorted,
  // v[k] = T_k applied to v[k-1], v[r] = x_sorted.  The protocol walks it in
  // reverse, undoing one T-transform per measurement round.
  const std::vector<TTransform> chain = decompose_t_transforms(x, y);
  std::vector<ProbVector> v;
  v.push_back(ProbVector(y.sorted_desc()));
  for (const TTransform& t : chain) {
    v.push_back(apply_t_transform(v.back(), t));
  }

  Protocol proto;
  proto.dim_a = da;
  proto.dim_b = db;

  // Bring psi to canonical sorted Schmidt form.
  PureState state = from_schmidt_coefficients(ProbVector(x.sorted_desc()), da, db);
  {
    auto [ua, ub] = correction_unitaries(psi, state);
    proto.steps.push_back(LocalUnitary{Party::Alice, ua});
    proto.steps.push_back(LocalUnitary{Party::Bob, ub});
  }

  int round = 0;
  for (std::size_t k = chain.size(); k >= 1; --k) {
    const auto& cur = v[k].entries();
    const auto& nxt = v[k - 1].entries();
    const Eigen::Index bi = static_cast<Eigen::Index>(chain[k - 1].i);
    const Eigen::Index bj = static_cast<Eigen::Index>(chain[k - 1].j);

    const double s = cur[bi] + cur[bj];
    if (s < 1e-12) continue;
    const double alpha_plus = cur[bi] / s;
    const double alpha_minus = cur[bj] / s;
    const double beta_plus = nxt[bi] / s;
    const double beta_minus = nxt[bj] / s;
    if (alpha_plus > 1.0 - 1e-12) continue;  // degenerate block, nothing to do
    if (std::abs(beta_plus - alpha_plus) < 1e-14) continue;

    const double gamma = std::acos(2.0 * alpha_plus - 1.0);
    const double sin_gamma = std::sin(gamma);
    const double arg =
        std::clamp(2.0 * std::sqrt(beta_plus * beta_minus) / sin_gamma, 0.0, 1.0);
    const double delta = 0.5 * std::asin(arg);

    if (params_out) {
      params_out->push_back(SynthesisStepParams{
          {static_cast<std::size_t>(bi), static_cast<std::size_t>(bj)},
          alpha_plus,
          alpha_minus,
          beta_plus,
          beta_minus,
          std::acos(std::sqrt(s)),
          gamma,
          delta});
    }

    // Conjugate so the active block sits at coordinates (0, 1).
    if (bi != 0 || bj != 1) {
      proto.steps.push_back(
          LocalUnitary{Party::Alice, block_permutation(bi, bj, d, da)});
      proto.steps.push_back(
          LocalUnitary{Party::Bob, block_permutation(bi, bj, d, db)});
      state = PureState(da, db,
                        block_permutation(bi, bj, d, da) * state.amplitudes() *
                            block_permutation(bi, bj, d, db).transpose());
    }

    // Equalize Alice's block amplitudes: Hadamard on Alice, a gamma/2 block
    // rotation on Bob, yielding (|00> + |1>(cos g|0> + sin g|1>))-type form.
    Eigen::Matrix2cd wa;
    wa << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0),
        -1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd wb;
    wb << std::sqrt(alpha_plus), std::sqrt(alpha_minus),
        std::sqrt(alpha_minus), -std::sqrt(alpha_plus);
    const Matrix wa_full = embed_block(wa, 0, 1, da);
    const Matrix wb_full = embed_block(wb, 0, 1, db);
    proto.steps.push_back(LocalUnitary{Party::Alice, wa_full});
    proto.steps.push_back(LocalUnitary{Party::Bob, wb_full});
    state = PureState(da, db,
                      wa_full * state.amplitudes() * wb_full.transpose());

    // Two-outcome measurement on Alice: diag(cos d, sin d) on the block,
    // 1/sqrt(2) elsewhere, preserving coherence with the untouched part.
    Matrix m1 = Matrix::Zero(da, da);
    Matrix m2 = Matrix::Zero(da, da);
    for (Eigen::Index q = 0; q < da; ++q) {
      m1(q, q) = m2(q, q) = 1.0 / std::sqrt(2.0);
    }
    m1(0, 0) = std::cos(delta);
    m1(1, 1) = std::sin(delta);
    m2(0, 0) = std::sin(delta);
    m2(1, 1) = std::cos(delta);

    const std::string label = "m" + std::to_string(round++);
    proto.steps.push_back(Measurement{Party::Alice, {m1, m2}, label});
    proto.steps.push_back(ClassicalMessage{Party::Alice, Party::Bob, label});

    // Both outcomes are corrected back to the canonical form of the next
    // spectrum in the chain (which also undoes the block permutation).
    const PureState next_state = from_schmidt_coefficients(v[k - 1], da, db);
    std::map<int, Matrix> table_a, table_b;
    const Matrix ops[2] = {m1, m2};
    for (int m = 0; m < 2; ++m) {
      const PureState post =
          normalized_state(da, db, ops[m] * state.amplitudes());
      auto [ca, cb] = correction_unitaries(post, next_state);
      table_a[m] = ca;
      table_b[m] = cb;
    }
    proto.steps.push_back(ConditionalUnitary{Party::Bob, label, table_b});
    proto.steps.push_back(ConditionalUnitary{Party::Alice, label, table_a});
    state = next_state;
  }

  // Canonical target form to phi.
  {
    auto [ua, ub] = correction_unitaries(state, phi);
    proto.steps.push_back(LocalUnitary{Party::Alice, ua});
    proto.steps.push_back(LocalUnitary{Party::Bob, ub});
  }
  return proto;
}

ValidationReport validate(const Protocol& p) {
  ValidationReport rep;
  rep.valid = true;
  std::map<std::string, std::size_t> produced;  // label -> outcome count

  for (std::size_t idx = 0; idx < p.steps.size(); ++idx) {
    const Step& step = p.steps[idx];
    StepCheck check;
    check.index = idx;

    if (const auto* lu = std::get_if<LocalUnitary>(&step)) {
      check.kind = "local_unitary";
      const Eigen::Index n = party_dim(p, lu->party);
      if (lu->matrix.rows() != n || lu->matrix.cols() != n) {
        rep.violations.push_back("step " + std::to_string(idx) +
                                 ": operator has support outside " +
                                 to_string(lu->party) + "'s space");
      } else {
        check.unitarity_residual = unitarity_residual(lu->matrix);
      }
    } else if (const auto* ms = std::get_if<Measurement>(&step)) {
      check.kind = "measurement";
      const Eigen::Index n = party_dim(p, ms->party);
      if (ms->operators.empty()) {
        rep.violations.push_back("step " + std::to_string(idx) +
                                 ": measurement with no operators");
      } else {
        Matrix sum = Matrix::Zero(n, n);
        bool dims_ok = true;
        for (const Matrix& m : ms->operators) {
          if (m.rows() != n || m.cols() != n) {
            dims_ok = false;
            break;
          }
          sum += m.adjoint() * m;
        }
        if (!dims_ok) {
          rep.violations.push_back("step " + std::to_string(idx) +
                                   ": operator has support outside " +
                                   to_string(ms->party) + "'s space");
        } else {
          check.completeness_residual = (sum - identity(n)).norm();
        }
        if (produced.count(ms->outcome_label)) {
          rep.violations.push_back("step " + std::to_string(idx) +
                                   ": duplicate outcome label '" +
                                   ms->outcome_label + "'");
        }
        produced[ms->outcome_label] = ms->operators.size();
      }
    } else if (const auto* msg = std::get_if<ClassicalMessage>(&step)) {
      check.kind = "message";
      if (!produced.count(msg->outcome_label)) {
        rep.violations.push_back("step " + std::to_string(idx) +
                                 ": message references unknown outcome '" +
                                 msg->outcome_label + "'");
      }
      if (msg->from_party == msg->to_party) {
        rep.violations.push_back("step " + std::to_string(idx) +
                                 ": message sender equals receiver");
      }
    } else if (const auto* cu = std::get_if<ConditionalUnitary>(&step)) {
      check.kind = "conditional_unitary";
      const Eigen::Index n = party_dim(p, cu->party);
      if (!produced.count(cu->outcome_label)) {
        rep.violations.push_back("step " + std::to_string(idx) +
                                 ": conditional references outcome '" +
                                 cu->outcome_label + "' not yet produced");
      }
      double worst = 0.0;
      for (const auto& [value, u] : cu->table) {
        if (u.rows() != n || u.cols() != n) {
          rep.violations.push_back("step " + std::to_string(idx) +
                                   ": operator has support outside " +
                                   to_string(cu->party) + "'s space");
        } else {
          worst = std::max(worst, unitarity_residual(u));
        }
      }
      check.unitarity_residual = worst;
    }

    if (check.completeness_residual > 1e-10 ||
        check.unitarity_residual > 1e-10) {
      rep.valid = false;
    }
    rep.checks.push_back(std::move(check));
  }
  if (!rep.violations.empty()) rep.valid = false;
  return rep;
}

namespace {

struct CertBranch {
  Matrix amp;       // unnormalized joint amplitudes
  Matrix alice_op;  // product of Alice-side operators so far
  std::map<std::string, int> outcomes;
};

}  // namespace

NecessityCertificate necessity_certificate(const Protocol& p,
                                           const PureState& psi,
                                           const PureState& phi) {
  const ValidationReport rep = validate(p);
  if (!rep.valid) {
    throw InvalidProtocol("protocol fails validation");
  }
  if (psi.dim_a() != p.dim_a || psi.dim_b() != p.dim_b ||
      phi.dim_a() != p.dim_a || phi.dim_b() != p.dim_b) {
    throw DimensionMismatch("states do not match protocol dimensions");
  }

  std::vector<CertBranch> branches;
  branches.push_back(
      {psi.amplitudes(), Matrix::Identity(p.dim_a, p.dim_a), {}});

  for (const Step& step : p.steps) {
    if (const auto* lu = std::get_if<LocalUnitary>(&step)) {
      for (CertBranch& b : branches) {
        if (lu->party == Party::Alice) {
          b.amp = lu->matrix * b.amp;
          b.alice_op = lu->matrix * b.alice_op;
        } else {
          b.amp = b.amp * lu->matrix.transpose();
        }
      }
    } else if (const auto* ms = std::get_if<Measurement>(&step)) {
      if (ms->party != Party::Alice) {
        throw InvalidProtocol(
            "certificate extraction requires unitary Bob-side steps");
      }
      std::vector<CertBranch> next;
      for (const CertBranch& b : branches) {
        for (std::size_t m = 0; m < ms->operators.size(); ++m) {
          CertBranch nb = b;
          nb.amp = ms->operators[m] * b.amp;
          if (nb.amp.squaredNorm() < 1e-14) continue;
          nb.alice_op = ms->operators[m] * b.alice_op;
          nb.outcomes[ms->outcome_label] = static_cast<int>(m);
          next.push_back(std::move(nb));
        }
      }
      branches = std::move(next);
    } else if (const auto* cu = std::get_if<ConditionalUnitary>(&step)) {
      for (CertBranch& b : branches) {
        const auto it_out = b.outcomes.find(cu->outcome_label);
        if (it_out == b.outcomes.end()) {
          throw InvalidProtocol("conditional references missing outcome");
        }
        const auto it_u = cu->table.find(it_out->second);
        if (it_u == cu->table.end()) {
          throw InvalidProtocol("conditional table lacks outcome value");
        }
        if (cu->party == Party::Alice) {
          b.amp = it_u->second * b.amp;
          b.alice_op = it_u->second * b.alice_op;
        } else {
          b.amp = b.amp * it_u->second.transpose();
        }
      }
    }
  }

  const Matrix rho_psi = psi.amplitudes() * psi.amplitudes().adjoint();
  const Matrix rho_phi = phi.amplitudes() * phi.amplitudes().adjoint();
  const Matrix sqrt_rho_psi = hermitian_sqrt(rho_psi);

  std::vector<double> probs;
  std::vector<Matrix> unitaries;
  Matrix reconstruction = Matrix::Zero(p.dim_a, p.dim_a);
  for (const CertBranch& b : branches) {
    const double pm = b.amp.squaredNorm();
    const PureState final_state =
        normalized_state(p.dim_a, p.dim_b, b.amp);
    if (fidelity(final_state, phi) < 1.0 - 1e-8) {
      throw BranchNotPure("a branch output deviates from the target state");
    }
    // Polar decomposition M sqrt(rho_psi) = sqrt(M rho_psi M^dag) U.
    const Matrix bmat = b.alice_op * sqrt_rho_psi;
    Eigen::JacobiSVD<Matrix> svd(bmat,
                                 Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix u = svd.matrixU() * svd.matrixV().adjoint();
    reconstruction += pm * u.adjoint() * rho_phi * u;
    probs.push_back(pm);
    unitaries.push_back(u);
  }

  NecessityCertificate cert;
  cert.probabilities = ProbVector(std::move(probs));
  cert.unitaries = std::move(unitaries);
  cert.reconstruction_residual = (rho_psi - reconstruction).norm();
  return cert;
}

int communication_cost(const Protocol& p) {
  int bits = 0;
  for (const Step& step : p.steps) {
    if (const auto* ms = std::get_if<Measurement>(&step)) {
      const auto n = ms->operators.size();
      int b = 0;
      while ((std::size_t{1} << b) < n) ++b;
      bits += b;
    }
  }
  return bits;
}

}  // namespace locc
