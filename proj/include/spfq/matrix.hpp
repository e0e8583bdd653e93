#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spfq/field.hpp"

namespace spfq {

struct Entry {
  std::uint32_t col;
  Element val;
  friend bool operator==(const Entry&, const Entry&) = default;
};

using SparseRow = std::vector<Entry>;

// Row-major sparse matrix; rows hold strictly increasing columns and no zeros.
class SparseMatrix {
 public:
  SparseMatrix(Field field, std::size_t rows, std::size_t cols);

  // Validates every row (InvalidArgument / ValueOutOfRange on violation).
  static SparseMatrix from_rows(Field field, std::size_t cols, std::vector<SparseRow> rows);
  // Row-major dense data; zeros are dropped.
  static SparseMatrix from_dense(Field field, std::size_t rows, std::size_t cols,
                                 const std::vector<Element>& data);
  static SparseMatrix identity(Field field, std::size_t n);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const SparseRow& row(std::size_t i) const { return rows_[i]; }
  const std::vector<SparseRow>& row_data() const { return rows_; }
  std::size_t nnz() const;
  Element at(std::size_t i, std::size_t j) const;
  std::vector<Element> dense() const;

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  SparseMatrix(Field field, std::size_t cols, std::vector<SparseRow> rows, bool)
      : field_(std::move(field)), cols_(cols), rows_(std::move(rows)) {}

  Field field_;
  std::size_t cols_;
  std::vector<SparseRow> rows_;
};

// Exact rank. Sparse elimination in column order, switching to a dense
// kernel once the active submatrix is more than 20% full.
std::size_t matrix_rank(const SparseMatrix& m);

// Dense reference elimination over field operations only; used as a
// cross-check for matrix_rank.
std::size_t dense_rank_reference(const SparseMatrix& m);

SparseMatrix matrix_stack(const SparseMatrix& top, const SparseMatrix& bottom);

// new row i = old row row_perm[i]; new column j = old column col_perm[j].
SparseMatrix permute(const SparseMatrix& m, const std::vector<std::size_t>& row_perm,
                     const std::vector<std::size_t>& col_perm);

// SMS text: "<rows> <cols> M", then 1-based "i j v" lines, then "0 0 0".
SparseMatrix read_sms(std::istream& in, const Field& field);
SparseMatrix read_sms(const std::string& text, const Field& field);
void write_sms(std::ostream& out, const SparseMatrix& m);
std::string to_sms(const SparseMatrix& m);

}  // namespace spfq
