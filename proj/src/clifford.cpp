#include "ddlab/clifford.hpp"

#include <stdexcept>

namespace ddlab {

namespace {

std::array<Mat3, 24> build_group() {
  std::array<Mat3, 24> g;
  int idx = 0;
  int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (auto& p : perms) {
    for (int bits = 0; bits < 8; ++bits) {
      Mat3 m = Mat3::Zero();
      for (int r = 0; r < 3; ++r)
        m(r, p[r]) = (bits >> (2 - r)) & 1 ? -1.0 : 1.0;
      if (m.determinant() > 0) g[idx++] = m;
    }
  }
  return g;
}

struct Tables {
  std::array<Mat3, 24> group = build_group();
  std::array<std::array<int, 24>, 24> compose{};
  std::array<int, 24> inverse{};
  Tables() {
    for (int a = 0; a < 24; ++a) {
      for (int b = 0; b < 24; ++b) compose[a][b] = find(group[a] * group[b]);
      inverse[a] = find(group[a].transpose());
    }
  }
  int find(const Mat3& m) const {
    for (int i = 0; i < 24; ++i)
      if ((group[i] - m).cwiseAbs().maxCoeff() < 1e-9) return i;
    throw std::invalid_argument("matrix is not a signed rotation");
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

const std::array<Mat3, 24>& clifford_group() { return tables().group; }

int clifford_index(const Mat3& m) { return tables().find(m); }

int clifford_compose(int after, int first) {
  if (after < 0 || after >= 24 || first < 0 || first >= 24)
    throw std::invalid_argument("clifford index out of range");
  return tables().compose[after][first];
}

int clifford_inverse(int idx) {
  if (idx < 0 || idx >= 24) throw std::invalid_argument("clifford index out of range");
  return tables().inverse[idx];
}

}  // namespace ddlab
