#include "gravicollapse/density_matrix.hpp"

#include <Eigen/Eigenvalues>

namespace gravicollapse {

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() * grid.spacing();
}

} // namespace gravicollapse
