#pragma once
#include <optional>
#include <vector>

#include "comorita/matrix.hpp"

namespace comorita {

enum class FormKind { RREF, HNF, SNF, Howell };
enum class FormMode { Echelon, Smith };

struct CanonicalForm {
  Matrix form;
  Matrix row_transform;
  Matrix col_transform;
  FormKind kind;
};

// Echelon mode: RREF over fields, HNF over Z, Howell over Z/n. For Howell
// the row transform may have more rows than the input (annihilator rows are
// appended), so form = row_transform * m still holds but the transform is
// not square.
CanonicalForm canonical_form(const Matrix& m, FormMode mode = FormMode::Echelon);

// Canonical generators of the row span (nonzero rows of the echelon form).
Matrix echelon_rows(const Matrix& m);

// Canonical representative of each column of v modulo the row span whose
// canonical echelon rows are given.
Matrix reduce_columns(const Matrix& echelon, const Matrix& v);

struct RowOp {
  enum Kind { Swap, Pair, Scale } kind;
  std::size_t i, j;
  Scalar s, t, u, v;
};

// U * A * V = diag, with U recorded as a replayable log.
struct Diagonalization {
  Matrix diag;
  std::vector<RowOp> log;
  Matrix V;
  Matrix V_inv; // empty unless requested
  std::size_t steps = 0; // nonzero diagonal positions
  std::vector<Scalar> d;  // diagonal entries, length min(rows, cols)
};

Diagonalization diagonalize(const Matrix& a, bool want_inverse = false, bool divisibility_chain = false);
void apply_log(const std::vector<RowOp>& log, Matrix& b);

// Invariant factors d_1 | d_2 | ... (zero entries included, length min(rows, cols)).
std::vector<Scalar> invariant_factors(const Matrix& a);

// Generators (as columns, canonical) of {x : a x = 0}.
Matrix kernel_basis(const Matrix& a);

// Some x with a x = b (column-wise), or nothing if a column is unsolvable.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

} // namespace comorita
