#pragma once
#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "ddlab/benchmark.hpp"
#include "ddlab/bloch.hpp"

namespace ddlab {

// Process matrix in the operator basis {I, X, Y, Z}:
// E(rho) = sum_mn chi[m][n] sigma_m rho sigma_n.
struct ProcessMatrix {
  Eigen::Matrix4cd chi = Eigen::Matrix4cd::Zero();
  double projection_distance = 0.0;  // Frobenius move to the physical cone
  bool projected = false;            // distance exceeded 1e-6
  double chi_II() const { return chi(0, 0).real(); }
};

// Single-qubit process tomography by linear inversion from the four probe
// states +z, -z, +x, +y (all three Pauli expectations read from the returned
// Bloch vectors), followed by projection to the nearest Hermitian, trace-1,
// positive semidefinite chi.
ProcessMatrix qpt(const std::function<Vec3(const Vec3&)>& channel);

// Pure dephasing: coherences shrink by exp(-duration/t2), populations kept.
StorageChannel dephasing_storage(double t2_s);
inline StorageChannel identity_storage() {
  return [](const Vec3& r, double) { return r; };
}

// CSV blocks `block,row,I,X,Y,Z` with block 0 = real, block 1 = imaginary.
void write_chi_csv(const std::string& path, const ProcessMatrix& pm,
                   const std::vector<std::string>& header_comments = {});

}  // namespace ddlab
