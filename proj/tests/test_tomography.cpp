#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <stdexcept>

#include "ddlab/bloch.hpp"
#include "ddlab/csv.hpp"
#include "ddlab/rng.hpp"
#include "ddlab/tomography.hpp"
#include "doctest.h"

using namespace ddlab;

namespace {
const double kPi = std::acos(-1.0);
using Mat2c = Eigen::Matrix2cd;
using Vec4c = Eigen::Vector4cd;
const std::complex<double> kI(0.0, 1.0);

Mat2c sigma(int i) {
  Mat2c m;
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

// apply a process matrix to a Bloch vector through the operator-sum form
Vec3 apply_chi(const Eigen::Matrix4cd& chi, const Vec3& r) {
  Mat2c rho = 0.5 * (sigma(0) + r.x() * sigma(1) + r.y() * sigma(2) + r.z() * sigma(3));
  Mat2c out = Mat2c::Zero();
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) out += chi(m, n) * sigma(m) * rho * sigma(n);
  return Vec3((out * sigma(1)).trace().real(), (out * sigma(2)).trace().real(),
              (out * sigma(3)).trace().real());
}

void check_physical(const ProcessMatrix& pm) {
  CHECK((pm.chi - pm.chi.adjoint()).norm() < 1e-12);
  CHECK(pm.chi.trace().real() == doctest::Approx(1.0).epsilon(1e-10));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(pm.chi);
  for (int i = 0; i < 4; ++i) CHECK(es.eigenvalues()[i] > -1e-10);
}
}  // namespace

TEST_CASE("the identity channel reconstructs to a pure identity process") {
  ProcessMatrix pm = qpt([](const Vec3& r) { return r; });
  CHECK(pm.chi_II() == doctest::Approx(1.0).epsilon(1e-12));
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      if (m != 0 || n != 0) CHECK(std::abs(pm.chi(m, n)) < 1e-12);
  CHECK(!pm.projected);
  CHECK(pm.projection_distance < 1e-9);
  check_physical(pm);
}

TEST_CASE("pure dephasing splits weight between identity and z") {
  const double t2 = 666.9, duration = 480.0;
  StorageChannel storage = dephasing_storage(t2);
  ProcessMatrix pm = qpt([&](const Vec3& r) { return storage(r, duration); });
  double c = std::exp(-duration / t2);
  CHECK(pm.chi_II() == doctest::Approx((1 + c) / 2).epsilon(1e-12));
  CHECK(pm.chi_II() == doctest::Approx(0.743437445029).epsilon(1e-9));
  CHECK(pm.chi(3, 3).real() == doctest::Approx((1 - c) / 2).epsilon(1e-12));
  CHECK(std::abs(pm.chi(1, 1)) < 1e-12);
  CHECK(std::abs(pm.chi(2, 2)) < 1e-12);
  CHECK(std::abs(pm.chi(0, 3)) < 1e-12);
  check_physical(pm);
  CHECK_THROWS_AS(dephasing_storage(0.0), std::invalid_argument);
  CHECK_THROWS_AS(dephasing_storage(-5.0), std::invalid_argument);
}

TEST_CASE("unitary channels give rank-one process matrices") {
  RandomStream rng(131, 0);
  for (int rep = 0; rep < 10; ++rep) {
    Vec3 axis(rng.normal(), rng.normal(), rng.normal());
    axis.normalize();
    double theta = rng.uniform(0.1, 3.0);
    Mat3 rot = axis_rotation(axis, theta);
    ProcessMatrix pm = qpt([&](const Vec3& r) { return rot * r; });
    Vec4c a;
    a << std::cos(theta / 2), -kI * axis.x() * std::sin(theta / 2),
        -kI * axis.y() * std::sin(theta / 2), -kI * axis.z() * std::sin(theta / 2);
    Eigen::Matrix4cd expect = a * a.adjoint();
    CHECK((pm.chi - expect).norm() < 1e-10);
    CHECK(!pm.projected);
    check_physical(pm);
  }
}

TEST_CASE("a depolarizing channel spreads weight evenly over the paulis") {
  const double p = 0.2;
  ProcessMatrix pm = qpt([&](const Vec3& r) { return Vec3((1 - p) * r); });
  CHECK(pm.chi_II() == doctest::Approx(1 - 3 * p / 4).epsilon(1e-12));
  for (int k = 1; k < 4; ++k)
    CHECK(pm.chi(k, k).real() == doctest::Approx(p / 4).epsilon(1e-12));
  check_physical(pm);
}

TEST_CASE("a non-unital channel round-trips through its process matrix") {
  const double gamma = 0.3;  // amplitude damping toward +z
  auto damp = [&](const Vec3& r) {
    return Vec3(std::sqrt(1 - gamma) * r.x(), std::sqrt(1 - gamma) * r.y(),
                (1 - gamma) * r.z() + gamma);
  };
  ProcessMatrix pm = qpt(damp);
  CHECK(!pm.projected);
  check_physical(pm);
  RandomStream rng(171, 0);
  for (int rep = 0; rep < 8; ++rep) {
    Vec3 r(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    r *= rng.uniform(0.0, 1.0) / std::max(r.norm(), 1e-12);
    CHECK((apply_chi(pm.chi, r) - damp(r)).norm() < 1e-9);
  }
}

TEST_CASE("an unphysical map is projected back onto the physical cone") {
  ProcessMatrix pm = qpt([](const Vec3& r) { return Vec3(1.5 * r); });
  CHECK(pm.projected);
  CHECK(pm.projection_distance > 1e-6);
  check_physical(pm);
  // the projected channel still contracts toward something trace preserving
  CHECK(pm.chi_II() <= 1.0 + 1e-12);
}

TEST_CASE("random noisy channels always reconstruct to physical processes") {
  RandomStream rng(191, 0);
  for (int rep = 0; rep < 10; ++rep) {
    Vec3 axis(rng.normal(), rng.normal(), rng.normal());
    axis.normalize();
    double theta = rng.uniform(0.0, 2 * kPi);
    double shrink = rng.uniform(0.5, 1.0);
    Mat3 rot = shrink * axis_rotation(axis, theta);
    ProcessMatrix pm = qpt([&](const Vec3& r) { return Vec3(rot * r); });
    check_physical(pm);
    CHECK(pm.chi_II() >= -1e-12);
    CHECK(pm.chi_II() <= 1.0 + 1e-12);
  }
}

TEST_CASE("a missing channel is rejected") {
  CHECK_THROWS_AS(qpt(std::function<Vec3(const Vec3&)>{}), std::invalid_argument);
}

TEST_CASE("process matrices are written as real and imaginary blocks") {
  StorageChannel storage = dephasing_storage(100.0);
  ProcessMatrix pm = qpt([&](const Vec3& r) { return storage(r, 50.0); });
  write_chi_csv("/tmp/ddlab_chi.csv", pm, {"command=test"});
  CsvTable t = read_csv("/tmp/ddlab_chi.csv");
  REQUIRE(t.rows.size() == 8);
  CHECK(t.has_column("block"));
  CHECK(t.has_column("row"));
  for (const char* c : {"I", "X", "Y", "Z"}) CHECK(t.has_column(c));
  int ci = t.column("I"), cb = t.column("block"), cr = t.column("row");
  for (const auto& row : t.rows)
    if (row[cb] == 0.0 && row[cr] == 0.0)
      CHECK(row[ci] == doctest::Approx(pm.chi_II()).epsilon(1e-10));
  bool basis_comment = false;
  for (const auto& c : t.comments)
    if (c.find("basis=") != std::string::npos) basis_comment = true;
  CHECK(basis_comment);
}
