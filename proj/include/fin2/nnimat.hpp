#pragma once

#include <Eigen/Core>

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fin2/error.hpp"

namespace fin2 {

template <std::unsigned_integral Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Exact non-negative integer matrix. Arithmetic through the free functions
/// below is overflow-checked; Eigen's own operator* is not and is never used
/// on these.
using NNIMatrix = DenseMatrix<std::uint64_t>;

template <std::unsigned_integral Scalar>
Scalar checked_add(Scalar x, Scalar y) {
  Scalar out;
  if (__builtin_add_overflow(x, y, &out)) throw Error("Overflow", "integer overflow in addition");
  return out;
}

template <std::unsigned_integral Scalar>
Scalar checked_mul(Scalar x, Scalar y) {
  Scalar out;
  if (__builtin_mul_overflow(x, y, &out)) throw Error("Overflow", "integer overflow in multiplication");
  return out;
}

template <std::unsigned_integral Scalar>
DenseMatrix<Scalar> nni_multiply(const DenseMatrix<Scalar>& lhs, const DenseMatrix<Scalar>& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw Error("DimensionMismatch", "cannot multiply " + std::to_string(lhs.rows()) + "x" +
                                         std::to_string(lhs.cols()) + " by " + std::to_string(rhs.rows()) +
                                         "x" + std::to_string(rhs.cols()));
  }
  DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(lhs.rows(), rhs.cols());
  for (Eigen::Index i = 0; i < lhs.rows(); ++i) {
    for (Eigen::Index k = 0; k < lhs.cols(); ++k) {
      const Scalar x = lhs(i, k);
      if (x == 0) continue;
      for (Eigen::Index j = 0; j < rhs.cols(); ++j) {
        out(i, j) = checked_add(out(i, j), checked_mul(x, rhs(k, j)));
      }
    }
  }
  return out;
}

template <std::unsigned_integral Scalar>
bool same_matrix(const DenseMatrix<Scalar>& x, const DenseMatrix<Scalar>& y) {
  return x.rows() == y.rows() && x.cols() == y.cols() && (x.array() == y.array()).all();
}

template <std::unsigned_integral Scalar>
bool is_idempotent_matrix(const DenseMatrix<Scalar>& m) {
  if (m.rows() != m.cols()) throw Error("NotSquare", "idempotency needs a square matrix");
  return same_matrix(nni_multiply(m, m), m);
}

template <std::unsigned_integral Scalar>
Scalar trace(const DenseMatrix<Scalar>& m) {
  Scalar t = 0;
  for (Eigen::Index i = 0; i < std::min(m.rows(), m.cols()); ++i) t = checked_add(t, m(i, i));
  return t;
}

/// Simultaneous row/column permutation: out(p, q) = m(perm[p], perm[q]).
NNIMatrix conjugate(const NNIMatrix& m, const std::vector<std::size_t>& perm);

/// Witness that a square idempotent matrix is permutation-similar to
///
///     | 0_a  A    A*B |
///     | 0    1_b  B   |
///     | 0    0    0_c |
///
/// `perm[k]` is the original index placed at position k.
struct FlorBlockForm {
  std::vector<std::size_t> perm;
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t c = 0;
  NNIMatrix blockA;  // a x b
  NNIMatrix blockB;  // b x c

  /// The block matrix the permuted source must equal.
  NNIMatrix assemble() const;
};

/// True iff conjugate(m, form.perm) equals form.assemble() exactly.
bool satisfies_block_form(const NNIMatrix& m, const FlorBlockForm& form);

/// Deterministic normal form: b-class = unit diagonal, a-class = zero column,
/// c-class = zero row; an index with both a zero row and a zero column goes to
/// the c-class. Classes keep their original relative order. Every block
/// equation is re-checked before returning.
FlorBlockForm flor_normal_form(const NNIMatrix& m);

/// Exhaustive search over splits (a ascending) and permutations
/// (lexicographic), returning the first witness. Only for n <= 7.
FlorBlockForm flor_oracle(const NNIMatrix& m);

inline constexpr std::size_t kFlorOracleMaxSize = 7;

NNIMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const NNIMatrix& m);

nlohmann::json flor_to_json(const FlorBlockForm& form);
FlorBlockForm flor_from_json(const nlohmann::json& j);

}  // namespace fin2
