#pragma once
#include <array>

#include "ddlab/bloch.hpp"

namespace ddlab {

// The 24 single-qubit Cliffords as Bloch rotations: the signed 3x3
// permutation matrices with determinant +1, enumerated in lexicographic
// order of (permutation, sign pattern). Group structure is precomputed.
const std::array<Mat3, 24>& clifford_group();
int clifford_index(const Mat3& m);       // exact entry match; throws otherwise
int clifford_compose(int after, int first);  // index of group[after] * group[first]
int clifford_inverse(int idx);           // index of the transpose

}  // namespace ddlab
