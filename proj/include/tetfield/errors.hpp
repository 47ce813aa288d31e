#pragma once

#include <stdexcept>
#include <string>

namespace tetfield {

/// Degenerate or invalid geometric input (collinear triangle, coplanar
/// tetrahedron, vanishing right-triangle parameters).
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid numeric parameter (non-positive h/k/l, zero-distance dipole point).
struct ParameterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Quadrature failed to converge within the subdivision budget.
struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed mesh or point file. Message carries file name and line number.
struct MeshParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Structurally valid file with inconsistent content (bad index, coplanar
/// element, magnetization count mismatch, no elements).
struct MeshValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tetfield
