#include "ripkit/linalg.hpp"

#include <lapacke.h>

#include "ripkit/errors.hpp"

namespace ripkit {

namespace {
constexpr Eigen::Index kLapackThreshold = 200;
}

SymEig sym_eig(const Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw ConfigError("sym_eig: matrix not square");
  SymEig out;
  if (n < kLapackThreshold) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) throw NumericalError("sym_eig: eigensolver failed");
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
    return out;
  }
  out.vectors = a;
  out.values.resize(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n),
                                         out.vectors.data(), static_cast<lapack_int>(n),
                                         out.values.data());
  if (info != 0) throw NumericalError("sym_eig: dsyevd failed with info " + std::to_string(info));
  return out;
}

double hermiticity_defect(const Eigen::MatrixXd& a) {
  const double scale = std::max(a.norm(), 1e-300);
  return (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
}

}  // namespace ripkit
