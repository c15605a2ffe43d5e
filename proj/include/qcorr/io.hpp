#pragma once

#include <iosfwd>
#include <string>

#include "qcorr/matrix.hpp"
#include "qcorr/states.hpp"

// File formats: matrices are stored as
//   {"dim": 4, "re": [[...]], "im": [[...]]}
// row-major. State readers enforce the density-matrix invariants, the
// unitary reader enforces unitarity.
namespace qcorr {

std::string density_matrix_to_json(const DensityMatrix& rho);
DensityMatrix read_density_matrix(std::istream& in);
DensityMatrix read_density_matrix_file(const std::string& path);

Mat4 read_unitary(std::istream& in);
Mat4 read_unitary_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace qcorr
