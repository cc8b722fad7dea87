#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "tkm/cpd.hpp"
#include "tkm/errors.hpp"
#include "tkm/feature_map.hpp"
#include "test_util.hpp"

using namespace tkm;

namespace {

double grid_error(Eigen::Index basis, double half_width, double lengthscale) {
  const FeatureMapConfig cfg = FeatureMapConfig::uniform(1, basis, half_width, lengthscale);
  double worst = 0.0;
  for (int a = 0; a <= 20; ++a) {
    for (int b = 0; b <= 20; ++b) {
      Eigen::VectorXd x(1), y(1);
      x << -1.0 + 0.1 * a;
      y << -1.0 + 0.1 * b;
      worst = std::max(worst, std::abs(approx_kernel(x, y, cfg) -
                                       exact_rbf_kernel(x, y, lengthscale)));
    }
  }
  return worst;
}

}  // namespace

TEST_SUITE_BEGIN("feature_map");

TEST_CASE("spectral density closed form and symmetry") {
  CHECK(rbf_spectral_density(0.0, 1.0) == doctest::Approx(std::sqrt(2.0 * M_PI)));
  for (double w : {0.3, 1.0, 2.5, 7.0})
    CHECK(rbf_spectral_density(w, 0.8) == doctest::Approx(rbf_spectral_density(-w, 0.8)));
  CHECK_THROWS_AS(rbf_spectral_density(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(rbf_spectral_density(1.0, -1.0), DomainError);
}

TEST_CASE("spectral density integrates to the kernel variance") {
  for (double l : {0.5, 1.0, 2.0}) {
    const double lim = 40.0 / l;
    const Eigen::Index n = 20001;
    const double h = 2.0 * lim / static_cast<double>(n - 1);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double w = -lim + h * static_cast<double>(i);
      const double s = rbf_spectral_density(w, l);
      sum += (i == 0 || i == n - 1) ? 0.5 * s : s;
    }
    CHECK(sum * h / (2.0 * M_PI) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("local feature map vanishes at the boundary") {
  const FeatureMapConfig cfg = FeatureMapConfig::uniform(1, 16, 1.5, 0.6);
  const Eigen::VectorXd at_low = local_feature_map(-1.5, 0, cfg);
  CHECK(at_low.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  const Eigen::VectorXd at_high = local_feature_map(1.5, 0, cfg);
  CHECK(at_high.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("local feature map rejects out-of-domain points") {
  const FeatureMapConfig cfg = FeatureMapConfig::uniform(2, 8, 1.0, 0.6);
  CHECK_THROWS_AS(local_feature_map(1.0 + 1e-9, 0, cfg), DomainError);
  CHECK_THROWS_AS(local_feature_map(-2.0, 1, cfg), DomainError);
  CHECK_THROWS_AS(local_feature_map(0.0, 2, cfg), DimensionError);
}

TEST_CASE("kernel approximation error on the 1-D grid") {
  // 21 x 21 grid over [-1, 1]^2 of (x, x') pairs; M = 32, U = 2, l = 0.5.
  const double err = grid_error(32, 2.0, 0.5);
  CHECK(err <= 1e-3);
  // Regression pin: the measured value of this specific setup.
  CHECK(err == doctest::Approx(3.355e-4).epsilon(0.05));
}

TEST_CASE("kernel approximation error is non-increasing in the basis count") {
  double prev = grid_error(4, 2.0, 0.5);
  for (Eigen::Index m : {8, 16, 32, 64}) {
    const double cur = grid_error(m, 2.0, 0.5);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("feature_tensor stacks the per-dimension local maps") {
  const FeatureMapConfig cfg = FeatureMapConfig::uniform(3, 12, 1.25, 0.7);
  Eigen::VectorXd x(3);
  x << 0.3, -0.9, 1.1;
  const std::vector<Eigen::VectorXd> t = feature_tensor(x, cfg);
  REQUIRE(t.size() == 3);
  for (Eigen::Index d = 0; d < 3; ++d) {
    const Eigen::VectorXd direct = local_feature_map(x(d), d, cfg);
    CHECK((t[static_cast<std::size_t>(d)] - direct).cwiseAbs().maxCoeff() ==
          doctest::Approx(0.0));
  }
}

TEST_CASE("approx kernel is symmetric with bounded diagonal") {
  const FeatureMapConfig cfg = FeatureMapConfig::uniform(3, 24, 2.0, 0.7);
  const Eigen::MatrixXd pts = test::random_points(20, 3, 1.0, 91);
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    const Eigen::VectorXd x = pts.row(i).transpose();
    CHECK(approx_kernel(x, x, cfg) <= 1.0 + 1e-3);
    for (Eigen::Index j = i + 1; j < pts.rows(); ++j) {
      const Eigen::VectorXd y = pts.row(j).transpose();
      CHECK(approx_kernel(x, y, cfg) == doctest::Approx(approx_kernel(y, x, cfg)));
    }
  }
}

TEST_CASE("multivariate approximation error stays within the bound") {
  const FeatureMapConfig cfg = FeatureMapConfig::uniform(3, 32, 2.0, 0.7);
  const Eigen::MatrixXd a = test::random_points(50, 3, 1.0, 101);
  const Eigen::MatrixXd b = test::random_points(50, 3, 1.0, 102);
  for (Eigen::Index i = 0; i < 50; ++i) {
    const Eigen::VectorXd x = a.row(i).transpose();
    const Eigen::VectorXd y = b.row(i).transpose();
    CHECK(std::abs(approx_kernel(x, y, cfg) - exact_rbf_kernel(x, y, 0.7)) < 5e-3);
  }
}

TEST_CASE("approx kernel factorizes over dimensions") {
  const FeatureMapConfig joint = FeatureMapConfig::uniform(3, 16, 1.5, 0.8);
  const Eigen::MatrixXd a = test::random_points(10, 3, 1.2, 111);
  const Eigen::MatrixXd b = test::random_points(10, 3, 1.2, 112);
  const FeatureMapConfig single = FeatureMapConfig::uniform(1, 16, 1.5, 0.8);
  for (Eigen::Index i = 0; i < 10; ++i) {
    double prod = 1.0;
    for (Eigen::Index d = 0; d < 3; ++d) {
      Eigen::VectorXd xd(1), yd(1);
      xd << a(i, d);
      yd << b(i, d);
      prod *= approx_kernel(xd, yd, single);
    }
    const double joint_val =
        approx_kernel(a.row(i).transpose(), b.row(i).transpose(), joint);
    CHECK(joint_val == doctest::Approx(prod).epsilon(1e-12));
  }
}

TEST_CASE("exact RBF closed forms") {
  Eigen::VectorXd x(2), y(2);
  x << 0.4, -0.2;
  y = x;
  CHECK(exact_rbf_kernel(x, y, 0.9) == doctest::Approx(1.0));
  const double l = 0.55;
  y << x(0) + l, x(1) + l;  // squared distance 2 l^2 -> exp(-1)
  CHECK(exact_rbf_kernel(x, y, l) == doctest::Approx(std::exp(-1.0)));
  CHECK_THROWS_AS(exact_rbf_kernel(x, y, 0.0), DomainError);
}

TEST_CASE("approximate Gram matrices are numerically PSD") {
  const FeatureMapConfig cfg = FeatureMapConfig::uniform(2, 12, 1.5, 0.6);
  const Eigen::MatrixXd pts = test::random_points(30, 2, 1.2, 121);
  Eigen::MatrixXd gram(30, 30);
  for (Eigen::Index i = 0; i < 30; ++i)
    for (Eigen::Index j = 0; j < 30; ++j)
      gram(i, j) = approx_kernel(pts.row(i).transpose(), pts.row(j).transpose(), cfg);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-9);
}

TEST_CASE("feature_matrix stacks local maps row-wise") {
  const FeatureMapConfig cfg = FeatureMapConfig::uniform(2, 9, 1.5, 0.6);
  Eigen::VectorXd values(4);
  values << -1.5, -0.4, 0.7, 1.5;
  const Eigen::MatrixXd f = feature_matrix(values, 1, cfg);
  REQUIRE(f.rows() == 4);
  REQUIRE(f.cols() == 9);
  for (Eigen::Index n = 0; n < 4; ++n)
    CHECK((f.row(n).transpose() - local_feature_map(values(n), 1, cfg))
              .cwiseAbs()
              .maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(FeatureMapConfig::uniform(0, 8, 1.0, 0.5).validate(), DimensionError);
  CHECK_THROWS_AS(FeatureMapConfig::uniform(2, 0, 1.0, 0.5).validate(), DimensionError);
  CHECK_THROWS_AS(FeatureMapConfig::uniform(2, 8, 0.0, 0.5).validate(), DomainError);
  CHECK_THROWS_AS(FeatureMapConfig::uniform(2, 8, 1.0, 0.0).validate(), DomainError);
  FeatureMapConfig ragged = FeatureMapConfig::uniform(2, 8, 1.0, 0.5);
  ragged.basis_counts.push_back(8);
  CHECK_THROWS_AS(ragged.validate(), DimensionError);
  CHECK_NOTHROW(FeatureMapConfig::uniform(3, 8, 1.0, 0.5).validate());
}

TEST_SUITE_END();
