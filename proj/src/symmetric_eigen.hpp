#pragma once

#include <cstddef>
#include <vector>

namespace mixcert::detail {

// Eigen-decomposition of a real symmetric matrix.
struct EigenDecomposition {
    std::size_t n = 0;
    std::vector<double> values;  // ascending
    std::vector<double> vectors; // row-major n x n, column k is the eigenvector of values[k]; empty when not requested

    double vector_entry(std::size_t row, std::size_t k) const { return vectors[row * n + k]; }
};

// Householder tridiagonalisation followed by implicit QL.
// `matrix` is row-major n x n and only its lower triangle is read.
EigenDecomposition symmetric_eigen(std::vector<double> matrix, std::size_t n, bool want_vectors);

// Implicit QL on a symmetric tridiagonal matrix (diag of size m, offdiag of size m-1).
EigenDecomposition tridiagonal_eigen(std::vector<double> diag, std::vector<double> offdiag,
                                     bool want_vectors);

} // namespace mixcert::detail
