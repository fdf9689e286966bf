#pragma once

#include <stdexcept>
#include <string>

#include "cren/measures.hpp"
#include "cren/tensor.hpp"

namespace cren {

/// Parse or format error carrying line/field coordinates in the message.
class StateFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StateFile {
    BipartiteCut cut;
    ComplexMatrix matrix;
};

/// Text format: line 1 is `dims dA dB`, then one matrix row per line as
/// whitespace-separated re,im pairs. NaN/Inf entries are rejected.
StateFile read_state_file(const std::string& path);

void write_state_file(const std::string& path, const ComplexMatrix& matrix,
                      const BipartiteCut& cut);

/// Density-matrix checks for parsed inputs: Hermitian and unit trace within
/// 1e-8, eigenvalues above -1e-8. Throws StateFileError otherwise.
void require_density_matrix(const StateFile& file);

}  // namespace cren
