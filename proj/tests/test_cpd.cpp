#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "tkm/cpd.hpp"
#include "tkm/errors.hpp"
#include "test_util.hpp"

using namespace tkm;

TEST_SUITE_BEGIN("cpd");

TEST_CASE("khatri_rao of single-column factors") {
  Eigen::MatrixXd a(2, 1), b(2, 1);
  a << 1, 2;
  b << 3, 4;
  const Eigen::MatrixXd kr = khatri_rao(a, b);
  REQUIRE(kr.rows() == 4);
  REQUIRE(kr.cols() == 1);
  CHECK(kr(0, 0) == doctest::Approx(3.0));
  CHECK(kr(1, 0) == doctest::Approx(4.0));
  CHECK(kr(2, 0) == doctest::Approx(6.0));
  CHECK(kr(3, 0) == doctest::Approx(8.0));
}

TEST_CASE("khatri_rao shape law") {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Random(4, 3);
  const Eigen::MatrixXd b = Eigen::MatrixXd::Random(5, 3);
  const Eigen::MatrixXd kr = khatri_rao(a, b);
  CHECK(kr.rows() == 20);
  CHECK(kr.cols() == 3);
}

TEST_CASE("khatri_rao matches the elementwise Kronecker definition") {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Random(6, 4);
  const Eigen::MatrixXd b = Eigen::MatrixXd::Random(3, 4);
  const Eigen::MatrixXd kr = khatri_rao(a, b);
  for (Eigen::Index c = 0; c < 4; ++c)
    for (Eigen::Index i = 0; i < 6; ++i)
      for (Eigen::Index p = 0; p < 3; ++p)
        CHECK(kr(i * 3 + p, c) == doctest::Approx(a(i, c) * b(p, c)).epsilon(1e-14));
}

TEST_CASE("khatri_rao rejects mismatched column counts") {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Random(4, 3);
  const Eigen::MatrixXd b = Eigen::MatrixXd::Random(5, 2);
  CHECK_THROWS_AS(khatri_rao(a, b), DimensionError);
}

TEST_CASE("hadamard basics") {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Random(4, 4);
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(4, 4);
  CHECK((hadamard(a, ones) - a).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  const Eigen::MatrixXd b = Eigen::MatrixXd::Random(4, 4);
  CHECK((hadamard(a, b) - hadamard(b, a)).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK_THROWS_AS(hadamard(a, Eigen::MatrixXd::Random(3, 4)), DimensionError);
}

TEST_CASE("cpd_to_dense of a rank-one pair is the outer product") {
  CpdTensor w;
  Eigen::MatrixXd f0(2, 1), f1(2, 1);
  f0 << 1, 2;
  f1 << 3, 4;
  w.factors = {f0, f1};
  const DenseTensor t = cpd_to_dense(w);
  REQUIRE(t.shape == std::vector<Eigen::Index>{2, 2});
  CHECK(t({0, 0}) == doctest::Approx(3.0));
  CHECK(t({0, 1}) == doctest::Approx(4.0));
  CHECK(t({1, 0}) == doctest::Approx(6.0));
  CHECK(t({1, 1}) == doctest::Approx(8.0));
  // Column-major flat layout: first index fastest.
  CHECK(t.values(0) == doctest::Approx(3.0));
  CHECK(t.values(1) == doctest::Approx(6.0));
  CHECK(t.values(2) == doctest::Approx(4.0));
  CHECK(t.values(3) == doctest::Approx(8.0));
}

TEST_CASE("cpd_to_dense agrees with an independent entrywise expansion") {
  const CpdTensor w = test::random_cpd({3, 4, 2}, 2, 11);
  const DenseTensor t = cpd_to_dense(w);
  const std::vector<double> oracle = test::dense_oracle(w);
  REQUIRE(t.values.size() == static_cast<Eigen::Index>(oracle.size()));
  for (Eigen::Index i = 0; i < t.values.size(); ++i)
    CHECK(t.values(i) == doctest::Approx(oracle[static_cast<std::size_t>(i)]).epsilon(1e-12));
}

TEST_CASE("a zero factor column contributes nothing") {
  CpdTensor w = test::random_cpd({3, 3}, 2, 5);
  CpdTensor zeroed = w;
  for (auto& f : zeroed.factors) f.col(1).setZero();
  CpdTensor rank1;
  rank1.factors = {w.factors[0].col(0), w.factors[1].col(0)};
  const DenseTensor a = cpd_to_dense(zeroed);
  const DenseTensor b = cpd_to_dense(rank1);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("vec of a two-way CPD is the Khatri-Rao contraction") {
  const CpdTensor w = test::random_cpd({4, 5}, 3, 17);
  const DenseTensor t = cpd_to_dense(w);
  // First mode fastest, so the last factor sits on the left of the product.
  const Eigen::VectorXd vec =
      khatri_rao(w.factors[1], w.factors[0]) * Eigen::VectorXd::Ones(3);
  REQUIRE(vec.size() == t.values.size());
  CHECK((vec - t.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("materialization cap is enforced") {
  // 10^8 entries exceeds the default cap.
  const CpdTensor w = test::random_cpd({10, 10, 10, 10, 10, 10, 10, 10}, 1, 3);
  CHECK_THROWS_AS(cpd_to_dense(w), SizeError);
}

TEST_CASE("validate rejects malformed tensors") {
  CpdTensor empty;
  CHECK_THROWS_AS(empty.validate(), DimensionError);
  CpdTensor ragged = test::random_cpd({3, 3}, 2, 5);
  ragged.factors[1] = Eigen::MatrixXd::Random(3, 3);
  CHECK_THROWS_AS(ragged.validate(), DimensionError);
  CpdTensor nan = test::random_cpd({3, 3}, 2, 5);
  nan.factors[0](1, 1) = std::nan("");
  CHECK_THROWS_AS(nan.validate(), DimensionError);
}

TEST_CASE("cpd_inner_product matches the densified dot product") {
  const CpdTensor a = test::random_cpd({3, 4, 2}, 3, 21);
  const CpdTensor b = test::random_cpd({3, 4, 2}, 2, 22);
  const double via_grams = cpd_inner_product(a, b);
  const double via_dense = cpd_to_dense(a).values.dot(cpd_to_dense(b).values);
  CHECK(via_grams == doctest::Approx(via_dense).epsilon(1e-10));
  CHECK(cpd_inner_product(a, a) >= 0.0);
}

TEST_CASE("orthogonal components have zero inner product") {
  CpdTensor a, b;
  Eigen::MatrixXd e0 = Eigen::MatrixXd::Zero(3, 1);
  Eigen::MatrixXd e1 = Eigen::MatrixXd::Zero(3, 1);
  e0(0, 0) = 1.0;
  e1(1, 0) = 1.0;
  a.factors = {e0, e0};
  b.factors = {e1, e1};
  CHECK(cpd_inner_product(a, b) == doctest::Approx(0.0));
}

TEST_CASE("cpd_inner_product rejects mode mismatches") {
  const CpdTensor a = test::random_cpd({3, 4}, 2, 1);
  const CpdTensor b = test::random_cpd({3, 5}, 2, 2);
  CHECK_THROWS_AS(cpd_inner_product(a, b), DimensionError);
  const CpdTensor c = test::random_cpd({3, 4, 2}, 2, 3);
  CHECK_THROWS_AS(cpd_inner_product(a, c), DimensionError);
}

TEST_CASE("parameter counts") {
  std::vector<Eigen::Index> modes(32, 20);
  CHECK(cpd_param_count(test::random_cpd(modes, 30, 1)) == 19200);
  CHECK(cpd_param_count(test::random_cpd({5}, 2, 1)) == 10);
  CHECK(cpd_param_count(test::random_cpd({2, 3, 4}, 1, 1)) == 9);
}

TEST_CASE("normalize_cpd produces unit columns and exact weights") {
  CpdTensor w;
  Eigen::MatrixXd f(2, 1);
  f << 3, 4;
  w.factors = {f};
  const NormalizedCpd n = normalize_cpd(w);
  REQUIRE(n.weights.size() == 1);
  CHECK(n.weights(0) == doctest::Approx(5.0));
  CHECK(n.tensor.factors[0](0, 0) == doctest::Approx(0.6));
  CHECK(n.tensor.factors[0](1, 0) == doctest::Approx(0.8));
}

TEST_CASE("normalize_cpd is idempotent and invertible") {
  const CpdTensor w = test::random_cpd({3, 4, 2}, 3, 31);
  const NormalizedCpd n = normalize_cpd(w);
  for (const auto& f : n.tensor.factors)
    for (Eigen::Index c = 0; c < f.cols(); ++c)
      CHECK(f.col(c).norm() == doctest::Approx(1.0).epsilon(1e-12));
  const NormalizedCpd again = normalize_cpd(n.tensor);
  for (Eigen::Index c = 0; c < again.weights.size(); ++c)
    CHECK(again.weights(c) == doctest::Approx(1.0).epsilon(1e-12));

  // Push the weights back into the first factor and compare densifications.
  CpdTensor restored = n.tensor;
  for (Eigen::Index c = 0; c < n.weights.size(); ++c)
    restored.factors[0].col(c) *= n.weights(c);
  const Eigen::VectorXd orig = cpd_to_dense(w).values;
  const Eigen::VectorXd back = cpd_to_dense(restored).values;
  CHECK((orig - back).cwiseAbs().maxCoeff() < 1e-12 * orig.cwiseAbs().maxCoeff());
}

TEST_CASE("normalize_cpd maps zero columns to weight zero") {
  CpdTensor w = test::random_cpd({3, 2}, 2, 9);
  for (auto& f : w.factors) f.col(0).setZero();
  const NormalizedCpd n = normalize_cpd(w);
  CHECK(n.weights(0) == doctest::Approx(0.0));
  CHECK(n.tensor.factors[0].col(0).norm() == doctest::Approx(1.0));
  CHECK(cpd_param_count(n.tensor) == cpd_param_count(w));
}

TEST_SUITE_END();
