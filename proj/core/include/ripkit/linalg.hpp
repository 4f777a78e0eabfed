#pragma once

#include <Eigen/Dense>

namespace ripkit {

struct SymEig {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};

// Full eigendecomposition of a real symmetric matrix. Large problems go
// through LAPACK divide-and-conquer.
SymEig sym_eig(const Eigen::MatrixXd& a);

double hermiticity_defect(const Eigen::MatrixXd& a);

}  // namespace ripkit
