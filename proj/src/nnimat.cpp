#include "fin2/nnimat.hpp"

#include <algorithm>
#include <numeric>

namespace fin2 {

namespace {

using Index = Eigen::Index;

Index as_index(std::size_t i) { return static_cast<Index>(i); }

void require_square(const NNIMatrix& m) {
  if (m.rows() != m.cols()) throw Error("NotSquare", "expected a square matrix");
}

bool is_permutation_of_range(const std::vector<std::size_t>& perm, std::size_t n) {
  if (perm.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) return false;
    seen[p] = true;
  }
  return true;
}

NNIMatrix sub_block(const NNIMatrix& m, std::size_t row0, std::size_t rows, std::size_t col0, std::size_t cols) {
  return m.block(as_index(row0), as_index(col0), as_index(rows), as_index(cols));
}

// Reads A and B off a permuted matrix for a given split and checks every block
// equation. Returns false on the first mismatch.
bool try_split(const NNIMatrix& permuted, std::size_t a, std::size_t b, FlorBlockForm& out) {
  const std::size_t n = static_cast<std::size_t>(permuted.rows());
  const std::size_t c = n - a - b;
  FlorBlockForm form;
  form.a = a;
  form.b = b;
  form.c = c;
  form.blockA = sub_block(permuted, 0, a, a, b);
  form.blockB = sub_block(permuted, a, b, a + b, c);
  NNIMatrix expected = form.assemble();
  if (!same_matrix(expected, permuted)) return false;
  out = std::move(form);
  return true;
}

}  // namespace

NNIMatrix conjugate(const NNIMatrix& m, const std::vector<std::size_t>& perm) {
  require_square(m);
  const std::size_t n = static_cast<std::size_t>(m.rows());
  if (!is_permutation_of_range(perm, n)) throw Error("InvalidPermutation", "not a permutation of 0..n-1");
  NNIMatrix out(m.rows(), m.cols());
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) out(as_index(p), as_index(q)) = m(as_index(perm[p]), as_index(perm[q]));
  }
  return out;
}

NNIMatrix FlorBlockForm::assemble() const {
  const Index n = as_index(a + b + c);
  NNIMatrix out = NNIMatrix::Zero(n, n);
  if (blockA.rows() != as_index(a) || blockA.cols() != as_index(b) || blockB.rows() != as_index(b) ||
      blockB.cols() != as_index(c)) {
    throw Error("DimensionMismatch", "block sizes do not match (a, b, c)");
  }
  out.block(0, as_index(a), as_index(a), as_index(b)) = blockA;
  out.block(0, as_index(a + b), as_index(a), as_index(c)) = nni_multiply(blockA, blockB);
  out.block(as_index(a), as_index(a), as_index(b), as_index(b)) = NNIMatrix::Identity(as_index(b), as_index(b));
  out.block(as_index(a), as_index(a + b), as_index(b), as_index(c)) = blockB;
  return out;
}

bool satisfies_block_form(const NNIMatrix& m, const FlorBlockForm& form) {
  if (m.rows() != m.cols()) return false;
  const std::size_t n = static_cast<std::size_t>(m.rows());
  if (form.a + form.b + form.c != n || !is_permutation_of_range(form.perm, n)) return false;
  try {
    return same_matrix(conjugate(m, form.perm), form.assemble());
  } catch (const Error&) {
    return false;
  }
}

FlorBlockForm flor_normal_form(const NNIMatrix& m) {
  require_square(m);
  if (!is_idempotent_matrix(m)) throw Error("NotIdempotent", "matrix does not square to itself");
  const std::size_t n = static_cast<std::size_t>(m.rows());

  std::vector<std::size_t> a_class;
  std::vector<std::size_t> b_class;
  std::vector<std::size_t> c_class;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t d = m(as_index(i), as_index(i));
    if (d > 1) throw Error("MalformedDiagonal", "diagonal entry " + std::to_string(d) + " at index " + std::to_string(i));
    if (d == 1) {
      b_class.push_back(i);
      continue;
    }
    const bool zero_row = (m.row(as_index(i)).array() == 0).all();
    const bool zero_col = (m.col(as_index(i)).array() == 0).all();
    if (zero_row) {
      c_class.push_back(i);
    } else if (zero_col) {
      a_class.push_back(i);
    } else {
      throw Error("VerificationFailed", "index " + std::to_string(i) + " fits no block class");
    }
  }

  std::vector<std::size_t> perm;
  perm.reserve(n);
  perm.insert(perm.end(), a_class.begin(), a_class.end());
  perm.insert(perm.end(), b_class.begin(), b_class.end());
  perm.insert(perm.end(), c_class.begin(), c_class.end());

  FlorBlockForm form;
  if (!try_split(conjugate(m, perm), a_class.size(), b_class.size(), form)) {
    throw Error("VerificationFailed", "block equations do not hold for the computed permutation");
  }
  form.perm = std::move(perm);
  return form;
}

FlorBlockForm flor_oracle(const NNIMatrix& m) {
  require_square(m);
  const std::size_t n = static_cast<std::size_t>(m.rows());
  if (n > kFlorOracleMaxSize) throw Error("TooLarge", "oracle limited to n <= 7");
  if (!is_idempotent_matrix(m)) throw Error("NotIdempotent", "matrix does not square to itself");

  for (std::size_t a = 0; a <= n; ++a) {
    for (std::size_t b = 0; a + b <= n; ++b) {
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      do {
        FlorBlockForm form;
        if (try_split(conjugate(m, perm), a, b, form)) {
          form.perm = perm;
          return form;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  throw Error("NoWitness", "no permutation and split satisfy the block equations");
}

NNIMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error("ParseError", "matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
  NNIMatrix m(as_index(rows), as_index(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != cols) throw Error("ParseError", "matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number_integer() || (!row[c].is_number_unsigned() && row[c].get<std::int64_t>() < 0)) throw Error("ParseError", "matrix entries must be non-negative integers");
      m(as_index(r), as_index(c)) = row[c].get<std::uint64_t>();
    }
  }
  return m;
}

nlohmann::json matrix_to_json(const NNIMatrix& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

nlohmann::json flor_to_json(const FlorBlockForm& form) {
  return {{"perm", form.perm},
          {"a", form.a},
          {"b", form.b},
          {"c", form.c},
          {"A", matrix_to_json(form.blockA)},
          {"B", matrix_to_json(form.blockB)}};
}

namespace {

NNIMatrix sized_block(const nlohmann::json& j, std::size_t rows, std::size_t cols) {
  // An empty JSON array loses the column count, so empty blocks are rebuilt.
  if (rows == 0 || cols == 0) return NNIMatrix(as_index(rows), as_index(cols));
  NNIMatrix m = matrix_from_json(j);
  if (m.rows() != as_index(rows) || m.cols() != as_index(cols)) throw Error("ParseError", "block has wrong shape");
  return m;
}

}  // namespace

FlorBlockForm flor_from_json(const nlohmann::json& j) {
  try {
    FlorBlockForm form;
    form.perm = j.at("perm").get<std::vector<std::size_t>>();
    form.a = j.at("a").get<std::size_t>();
    form.b = j.at("b").get<std::size_t>();
    form.c = j.at("c").get<std::size_t>();
    form.blockA = sized_block(j.at("A"), form.a, form.b);
    form.blockB = sized_block(j.at("B"), form.b, form.c);
    return form;
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", e.what());
  }
}

}  // namespace fin2
