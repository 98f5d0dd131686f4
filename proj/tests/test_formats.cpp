#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "l1sec/errors.hpp"
#include "l1sec/kerdock.hpp"
#include "l1sec/report.hpp"
#include "l1sec/sign_matrix.hpp"

using namespace l1sec;

namespace {

SignCheckMatrix parse_check(const std::string& text) {
  std::istringstream in(text);
  return read_check(in);
}

}  // namespace

TEST_CASE("CHECK round trip keeps entries and block labels") {
  const auto a = local_subspace(4, 6).check.relabel_block("first");
  const auto b = SignCheckMatrix::from_dense(1, 6, {1, 0, -1, 0, 0, 1}, "second");
  const auto m = SignCheckMatrix::stack({a, b});
  CHECK(m.rows() == 5);
  CHECK(m.blocks().size() == 2);
  CHECK(parse_check(to_check_string(m)) == m);
  CHECK(to_check_string(m).rfind("CHECK 5 6 " + std::to_string(m.nnz()) + "\n", 0) == 0);
}

TEST_CASE("dense and sparse views agree") {
  const auto m = local_subspace(16, 24).check;
  const Eigen::MatrixXd dense = m.to_dense();
  CHECK((dense - Eigen::MatrixXd(m.to_sparse())).cwiseAbs().maxCoeff() == 0.0);
  const auto signs = m.dense_signs();
  for (Eigen::Index i = 0; i < dense.rows(); ++i)
    for (Eigen::Index j = 0; j < dense.cols(); ++j)
      CHECK(signs[i * dense.cols() + j] == dense(i, j));
}

TEST_CASE("malformed CHECK files name the offending line") {
  CHECK_THROWS_WITH_AS(parse_check("CHEK 1 2 2\n0 0 +1\n0 1 -1\n"), doctest::Contains("line 1"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_check("CHECK 1 2 2\n0 0 +1\n0 1 2\n"), doctest::Contains("line 3"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_check("CHECK 1 2 2\n0 0 +1\n0 5 +1\n"), doctest::Contains("line 3"),
                       ParseError);
  CHECK_THROWS_AS(parse_check("CHECK 1 2 2\n0 0 +1\n"), ParseError);
  CHECK_THROWS_AS(parse_check("CHECK 1 2 2\n0 0 +1\n0 0 -1\n"), ParseError);
  CHECK_THROWS_AS(parse_check("CHECK 1 2 1\n0 0 1\n"), ParseError);
}

TEST_CASE("invalid sign matrices are rejected at construction") {
  CHECK_THROWS(SignCheckMatrix(1, 2, {{0, 3, 1}}));
  CHECK_THROWS(SignCheckMatrix(1, 2, {{0, 0, 2}}));
  CHECK_THROWS(SignCheckMatrix(2, 2, {{0, 0, 1}}));  // empty row
}

TEST_CASE("reports round trip") {
  Report r;
  r.add("N", std::uint64_t{1024}).add("eps", 0.1).add("label", "a b=c").add("ok", true);
  std::istringstream in(r.str());
  const Report back = Report::parse(in);
  CHECK(back.entries() == r.entries());
  CHECK(back.at("eps") == "0.1");
  CHECK(back.at("ok") == "true");
  CHECK(back.contains("label"));
  CHECK_FALSE(back.contains("missing"));
  CHECK_THROWS_AS(back.at("missing"), std::out_of_range);
  std::istringstream bad("N=1\nnot a pair\n");
  CHECK_THROWS_AS(Report::parse(bad), ParseError);
}

TEST_CASE("doubles print in shortest round-trip form") {
  for (double v : {0.1, 1.0 / 3, 1e-300, 12345.678, -2.5})
    CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(std::nan("")) == "nan");
}
