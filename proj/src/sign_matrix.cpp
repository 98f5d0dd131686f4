#include "l1sec/sign_matrix.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "l1sec/errors.hpp"

namespace l1sec {

SignCheckMatrix::SignCheckMatrix(std::size_t rows, std::size_t cols,
                                 std::vector<SignEntry> entries,
                                 std::vector<RowBlock> blocks)
    : rows_(rows), cols_(cols), entries_(std::move(entries)),
      blocks_(std::move(blocks)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const SignEntry& a, const SignEntry& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  validate();
}

void SignCheckMatrix::validate() const {
  std::vector<bool> seen(rows_, false);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.row >= rows_ || e.col >= cols_)
      throw std::invalid_argument("entry outside matrix bounds");
    if (e.sign != 1 && e.sign != -1)
      throw std::invalid_argument("entries must be +1 or -1");
    if (i > 0 && entries_[i - 1].row == e.row && entries_[i - 1].col == e.col)
      throw std::invalid_argument("duplicate column within a row");
    seen[e.row] = true;
  }
  for (std::size_t r = 0; r < rows_; ++r)
    if (!seen[r])
      throw std::invalid_argument("row " + std::to_string(r) + " is empty");
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& blk = blocks_[b];
    const std::size_t expected_end =
        b + 1 < blocks_.size() ? blocks_[b + 1].begin : rows_;
    if (blk.begin >= blk.end || blk.end != expected_end)
      throw std::invalid_argument("row blocks must be contiguous and nonempty");
    if (blk.label.find('\n') != std::string::npos)
      throw std::invalid_argument("block labels are single-line");
  }
}

SignCheckMatrix SignCheckMatrix::from_dense(std::size_t rows, std::size_t cols,
                                            const std::vector<std::int8_t>& signs,
                                            std::string label) {
  if (signs.size() != rows * cols)
    throw std::invalid_argument("dense sign buffer has wrong size");
  std::vector<SignEntry> e;
  e.reserve(signs.size());
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (auto s = signs[r * cols + c]; s != 0)
        e.push_back({static_cast<std::uint32_t>(r),
                     static_cast<std::uint32_t>(c), s});
  std::vector<RowBlock> blocks;
  if (!label.empty() && rows > 0) blocks.push_back({0, rows, std::move(label)});
  return SignCheckMatrix(rows, cols, std::move(e), std::move(blocks));
}

Eigen::MatrixXd SignCheckMatrix::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows_),
                                            static_cast<Eigen::Index>(cols_));
  for (const auto& e : entries_) m(e.row, e.col) = e.sign;
  return m;
}

Eigen::SparseMatrix<double, Eigen::RowMajor> SignCheckMatrix::to_sparse() const {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(entries_.size());
  for (const auto& e : entries_) t.emplace_back(e.row, e.col, e.sign);
  Eigen::SparseMatrix<double, Eigen::RowMajor> m(
      static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

std::vector<std::int8_t> SignCheckMatrix::dense_signs() const {
  std::vector<std::int8_t> d(rows_ * cols_, 0);
  for (const auto& e : entries_) d[e.row * cols_ + e.col] = e.sign;
  return d;
}

SignCheckMatrix SignCheckMatrix::stack(const std::vector<SignCheckMatrix>& parts) {
  if (parts.empty()) throw std::invalid_argument("nothing to stack");
  const std::size_t cols = parts.front().cols();
  std::size_t rows = 0;
  std::vector<SignEntry> e;
  std::vector<RowBlock> blocks;
  for (const auto& p : parts) {
    if (p.cols() != cols)
      throw std::invalid_argument("stacked matrices must share column count");
    for (auto x : p.entries()) {
      x.row += static_cast<std::uint32_t>(rows);
      e.push_back(x);
    }
    if (p.blocks().empty()) {
      if (p.rows() > 0) blocks.push_back({rows, rows + p.rows(), "block"});
    } else {
      // Rows before the first labelled block fold into it.
      for (std::size_t b = 0; b < p.blocks().size(); ++b) {
        const auto& blk = p.blocks()[b];
        blocks.push_back({rows + (b == 0 ? 0 : blk.begin), rows + blk.end,
                          blk.label});
      }
    }
    rows += p.rows();
  }
  return SignCheckMatrix(rows, cols, std::move(e), std::move(blocks));
}

SignCheckMatrix SignCheckMatrix::relabel_block(std::string label) const {
  std::vector<RowBlock> b;
  if (rows_ > 0) b.push_back({0, rows_, std::move(label)});
  return SignCheckMatrix(rows_, cols_, entries_, std::move(b));
}

void write_check(std::ostream& out, const SignCheckMatrix& m) {
  out << "CHECK " << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  std::size_t next_block = 0;
  const auto& blocks = m.blocks();
  for (const auto& e : m.entries()) {
    while (next_block < blocks.size() && blocks[next_block].begin <= e.row) {
      out << "# " << blocks[next_block].label << '\n';
      ++next_block;
    }
    out << e.row << ' ' << e.col << ' ' << (e.sign > 0 ? "+1" : "-1") << '\n';
  }
}

std::string to_check_string(const SignCheckMatrix& m) {
  std::ostringstream os;
  write_check(os, m);
  return os.str();
}

namespace {

std::uint64_t parse_uint(const std::string& tok, std::size_t line,
                         const char* field) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line, std::string("bad value for field '") + field +
                               "': '" + tok + "'");
  try {
    return std::stoull(tok);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("field '") + field + "' out of range");
  }
}

}  // namespace

SignCheckMatrix read_check(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing CHECK header");
  ++lineno;
  std::istringstream hs(line);
  std::string magic, k_tok, n_tok, nnz_tok, extra;
  hs >> magic >> k_tok >> n_tok >> nnz_tok;
  if (magic != "CHECK")
    throw ParseError(lineno, "header field 'CHECK' expected, got '" + magic + "'");
  const auto k = parse_uint(k_tok, lineno, "k");
  const auto n = parse_uint(n_tok, lineno, "N");
  const auto nnz = parse_uint(nnz_tok, lineno, "nnz");
  if (hs >> extra) throw ParseError(lineno, "trailing header field '" + extra + "'");

  std::vector<SignEntry> entries;
  entries.reserve(nnz);
  std::vector<RowBlock> blocks;
  std::string pending_label;
  bool have_pending = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) throw ParseError(lineno, "empty line");
    if (line[0] == '#') {
      if (have_pending) throw ParseError(lineno, "block comment without entries");
      pending_label = line.size() >= 2 && line[1] == ' ' ? line.substr(2)
                                                         : line.substr(1);
      have_pending = true;
      continue;
    }
    std::istringstream ls(line);
    std::string r_tok, c_tok, s_tok;
    ls >> r_tok >> c_tok >> s_tok;
    if (ls >> extra) throw ParseError(lineno, "trailing field '" + extra + "'");
    const auto r = parse_uint(r_tok, lineno, "row");
    const auto c = parse_uint(c_tok, lineno, "col");
    std::int8_t s;
    if (s_tok == "+1") s = 1;
    else if (s_tok == "-1") s = -1;
    else throw ParseError(lineno, "field 'sign' must be +1 or -1, got '" + s_tok + "'");
    if (r >= k) throw ParseError(lineno, "row index exceeds k");
    if (c >= n) throw ParseError(lineno, "column index exceeds N");
    if (have_pending) {
      if (!blocks.empty()) blocks.back().end = r;
      blocks.push_back({r, k, pending_label});
      have_pending = false;
    }
    entries.push_back({static_cast<std::uint32_t>(r),
                       static_cast<std::uint32_t>(c), s});
  }
  if (have_pending) throw ParseError(lineno, "trailing block comment");
  if (entries.size() != nnz)
    throw ParseError(lineno, "header field 'nnz' says " + std::to_string(nnz) +
                                 " entries, found " +
                                 std::to_string(entries.size()));
  try {
    return SignCheckMatrix(k, n, std::move(entries), std::move(blocks));
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
}

}  // namespace l1sec
