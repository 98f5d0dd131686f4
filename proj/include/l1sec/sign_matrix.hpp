#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace l1sec {

struct SignEntry {
  std::uint32_t row;
  std::uint32_t col;
  std::int8_t sign;  // +1 or -1

  bool operator==(const SignEntry&) const = default;
};

// A contiguous run of rows produced by one construction step.
struct RowBlock {
  std::size_t begin;
  std::size_t end;
  std::string label;

  bool operator==(const RowBlock&) const = default;
};

// Sparse {+1,-1} matrix whose kernel is the represented subspace. Entries are
// kept sorted by (row, col); each row is nonempty with distinct columns.
class SignCheckMatrix {
 public:
  SignCheckMatrix() = default;
  SignCheckMatrix(std::size_t rows, std::size_t cols,
                  std::vector<SignEntry> entries,
                  std::vector<RowBlock> blocks = {});

  // Row-major dense signs, rows x cols, entries must be +1 or -1 (0 skipped).
  static SignCheckMatrix from_dense(std::size_t rows, std::size_t cols,
                                    const std::vector<std::int8_t>& signs,
                                    std::string label = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  const std::vector<SignEntry>& entries() const { return entries_; }
  const std::vector<RowBlock>& blocks() const { return blocks_; }

  Eigen::MatrixXd to_dense() const;
  Eigen::SparseMatrix<double, Eigen::RowMajor> to_sparse() const;
  // Dense row-major signs (0 where no entry).
  std::vector<std::int8_t> dense_signs() const;

  // Vertical concatenation; kernel of the result is the intersection.
  static SignCheckMatrix stack(const std::vector<SignCheckMatrix>& parts);

  // Same matrix as a single block carrying `label`.
  SignCheckMatrix relabel_block(std::string label) const;

  bool operator==(const SignCheckMatrix&) const = default;

 private:
  void validate() const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SignEntry> entries_;
  std::vector<RowBlock> blocks_;
};

// CHECK text format: "CHECK k N nnz" header, then nnz lines "row col sign"
// (0-based, sign +1/-1). A comment line "# <label>" opens each row block.
void write_check(std::ostream& out, const SignCheckMatrix& m);
SignCheckMatrix read_check(std::istream& in);
std::string to_check_string(const SignCheckMatrix& m);

}  // namespace l1sec
