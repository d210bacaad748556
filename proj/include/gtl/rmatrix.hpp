// rmatrix.hpp — tensor bracket of the banded matrix against the quadratic r-matrix forms
#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "gtl/lax.hpp"
#include "gtl/poisson.hpp"
#include "gtl/states.hpp"

namespace gtl {

// kron(A,B)((i,k),(j,l)) = A(i,j)B(k,l) with composite row index i*rows(B)+k
inline Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  Eigen::MatrixXd C(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      C.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return C;
}

// r = sum_i E_ii (x) E_ii + 2 sum_{i<j} E_ij (x) E_ji on the d*d tensor square
inline Eigen::MatrixXd r_matrix(int d) {
  if (d < 1) throw std::invalid_argument("r_matrix: dimension must be positive");
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) r(i * d + i, i * d + i) += 1.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) r(i * d + j, j * d + i) += 2.0;
  return r;
}

// which coordinate the matrix entry (i,j) carries, or -1 for an identically
// zero slot; diagonal -> p, first band -> a/b, inner corners -> u/v
inline int lax_entry_coord(const GtlState& s, int i, int j) {
  const int np = 2 * s.N + 1, nb = 2 * s.N;
  if (i == j) return i;
  if (j == i + 1) return np + i;
  if (i == j + 1) return np + nb + j;
  if (i == s.idx(1) && j == s.idx(-1)) return np + 2 * nb;
  if (i == s.idx(-1) && j == s.idx(1)) return np + 2 * nb + 1;
  return -1;
}

// lhs of the tensor relation: B((i,k),(j,l)) = {L_ij, L_kl} from the table
inline Eigen::MatrixXd tensor_bracket(const GtlState& s, const BracketTable& t = gtl_table()) {
  const int d = s.dim();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const int cij = lax_entry_coord(s, i, j);
      if (cij < 0) continue;
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const int ckl = lax_entry_coord(s, k, l);
          if (ckl < 0) continue;
          B(i * d + k, j * d + l) = bracket_coord(s, cij, ckl, t);
        }
    }
  return B;
}

// the two published right-hand sides: the split form subtracts the transposed
// action on the second factor, the symmetric form commutes r with the sum
enum class RMatrixForm { split, symmetric_sum };

inline const char* r_matrix_form_name(RMatrixForm f) {
  return f == RMatrixForm::split ? "split" : "symmetric_sum";
}

// max abs entry of lhs - rhs; this is a measured quantity reported as-is, the
// library never asserts it small (the split form fails on classic states while
// the symmetric form annihilates the residual — both values belong in reports)
inline double r_matrix_residual(const GtlState& s, const BracketTable& t = gtl_table(),
                                RMatrixForm form = RMatrixForm::split) {
  const int d = s.dim();
  const Eigen::MatrixXd L = build_lax(s).L;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd L1 = kron(L, I);
  const Eigen::MatrixXd L2 = kron(I, L);
  const Eigen::MatrixXd r = r_matrix(d);
  const Eigen::MatrixXd rhs = form == RMatrixForm::split
                                  ? (commutator(r, L1) - commutator(r.transpose(), L2))
                                  : commutator(r, Eigen::MatrixXd(L1 + L2));
  return (tensor_bracket(s, t) - rhs).cwiseAbs().maxCoeff();
}

}  // namespace gtl
