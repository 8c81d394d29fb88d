#include "ddlab/tomography.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace ddlab {

namespace {

using Mat2c = Eigen::Matrix2cd;
const std::complex<double> kI(0.0, 1.0);

const std::array<Mat2c, 4>& pauli() {
  static const std::array<Mat2c, 4> p = [] {
    std::array<Mat2c, 4> m;
    m[0] << 1, 0, 0, 1;
    m[1] << 0, 1, 1, 0;
    m[2] << 0, -kI, kI, 0;
    m[3] << 1, 0, 0, -1;
    return m;
  }();
  return p;
}

Mat2c from_bloch_op(double id_part, const Vec3& v) {
  const auto& s = pauli();
  return id_part * s[0] + v.x() * s[1] + v.y() * s[2] + v.z() * s[3];
}

// Euclidean projection of eigenvalues onto the probability simplex.
Eigen::Vector4d simplex_project(Eigen::Vector4d lam) {
  Eigen::Vector4d sorted = lam;
  std::sort(sorted.data(), sorted.data() + 4, std::greater<double>());
  double cum = 0.0, theta = 0.0;
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    cum += sorted[i];
    double t = (cum - 1.0) / (i + 1);
    if (sorted[i] - t > 0) {
      theta = t;
      k = i + 1;
    }
  }
  (void)k;
  for (int i = 0; i < 4; ++i) lam[i] = std::max(lam[i] - theta, 0.0);
  return lam;
}

}  // namespace

ProcessMatrix qpt(const std::function<Vec3(const Vec3&)>& channel) {
  if (!channel) throw std::invalid_argument("channel required");
  Vec3 zp = channel(Vec3(0, 0, 1)), zm = channel(Vec3(0, 0, -1));
  Vec3 xp = channel(Vec3(1, 0, 0)), yp = channel(Vec3(0, 1, 0));
  Vec3 d = 0.5 * (zp + zm);
  Mat3 M;
  M.col(0) = xp - d;
  M.col(1) = yp - d;
  M.col(2) = 0.5 * (zp - zm);

  // linear extension to the operator basis: E(I) = I + d.sigma,
  // E(sigma_j) = (M e_j).sigma
  std::array<Mat2c, 4> image;
  image[0] = from_bloch_op(1.0, d);
  for (int j = 0; j < 3; ++j)
    image[j + 1] = from_bloch_op(0.0, M.col(j));

  const auto& s = pauli();
  Eigen::Matrix<std::complex<double>, 16, 16> A;
  Eigen::Matrix<std::complex<double>, 16, 1> rhs;
  for (int b = 0; b < 4; ++b) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        int row = b * 4 + i * 2 + j;
        rhs[row] = image[b](i, j);
        for (int m = 0; m < 4; ++m)
          for (int n = 0; n < 4; ++n)
            A(row, m * 4 + n) = (s[m] * s[b] * s[n])(i, j);
      }
    }
  }
  Eigen::Matrix<std::complex<double>, 16, 1> x = A.colPivHouseholderQr().solve(rhs);

  Eigen::Matrix4cd raw;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) raw(m, n) = x[m * 4 + n];

  Eigen::Matrix4cd herm = 0.5 * (raw + raw.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(herm);
  Eigen::Vector4d lam = simplex_project(es.eigenvalues());
  ProcessMatrix pm;
  pm.chi = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
  pm.chi = 0.5 * (pm.chi + pm.chi.adjoint().eval());
  pm.projection_distance = (pm.chi - raw).norm();
  pm.projected = pm.projection_distance > 1e-6;
  return pm;
}

StorageChannel dephasing_storage(double t2_s) {
  if (!(t2_s > 0)) throw std::invalid_argument("t2 must be positive");
  return [t2_s](const Vec3& r, double duration) {
    double c = std::exp(-duration / t2_s);
    return Vec3(r.x() * c, r.y() * c, r.z());
  };
}

void write_chi_csv(const std::string& path, const ProcessMatrix& pm,
                   const std::vector<std::string>& header_comments) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& c : header_comments) std::fprintf(f, "# %s\n", c.c_str());
  std::fprintf(f, "# basis=I,X,Y,Z\n");
  std::fprintf(f, "# block 0 = real part, block 1 = imaginary part\n");
  std::fprintf(f, "block,row,I,X,Y,Z\n");
  for (int block = 0; block < 2; ++block)
    for (int r = 0; r < 4; ++r) {
      std::fprintf(f, "%d,%d", block, r);
      for (int c = 0; c < 4; ++c)
        std::fprintf(f, ",%.12g",
                     block == 0 ? pm.chi(r, c).real() : pm.chi(r, c).imag());
      std::fputc('\n', f);
    }
  std::fclose(f);
}

}  // namespace ddlab
