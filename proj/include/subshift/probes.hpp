#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "subshift/errors.hpp"

namespace subshift {

// Finite self-adjoint matrix; operator norms of real polynomials in it are
// exact maxima over the eigenvalues, which keeps the probes free of iteration
// tolerances.
class FiniteSelfAdjoint {
 public:
  explicit FiniteSelfAdjoint(Eigen::MatrixXcd m, double tol = 1e-12) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("matrix must be square");
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("matrix is not self-adjoint");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericError("eigensolver failed");
    eigenvalues_.assign(solver.eigenvalues().data(),
                        solver.eigenvalues().data() + solver.eigenvalues().size());
  }

  static FiniteSelfAdjoint diagonal(const std::vector<double>& d) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return FiniteSelfAdjoint(std::move(m));
  }

  const std::vector<double>& eigenvalues() const { return eigenvalues_; }

  double norm() const {
    double n = 0;
    for (double l : eigenvalues_) n = std::max(n, std::abs(l));
    return n;
  }

  double shifted_norm(double x) const {
    double n = 0;
    for (double l : eigenvalues_) n = std::max(n, std::abs(l - x));
    return n;
  }

 private:
  Eigen::MatrixXcd m_;
  std::vector<double> eigenvalues_;
};

class FiniteUnitary {
 public:
  explicit FiniteUnitary(Eigen::MatrixXcd m, double tol = 1e-12) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("matrix must be square");
    Eigen::MatrixXcd gram = m_.adjoint() * m_;
    gram -= Eigen::MatrixXcd::Identity(m_.rows(), m_.cols());
    if (gram.cwiseAbs().maxCoeff() > tol) throw std::invalid_argument("matrix is not unitary");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m_);
    if (solver.info() != Eigen::Success) throw NumericError("eigensolver failed");
    eigenvalues_.assign(solver.eigenvalues().data(),
                        solver.eigenvalues().data() + solver.eigenvalues().size());
  }

  static FiniteUnitary diagonal(const std::vector<std::complex<double>>& d) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return FiniteUnitary(std::move(m));
  }

  const std::vector<std::complex<double>>& eigenvalues() const { return eigenvalues_; }

 private:
  Eigen::MatrixXcd m_;
  std::vector<std::complex<double>> eigenvalues_;
};

// ||m^2 - (A - x)^2|| > m^2 - r^2 detects spectrum in the open ball B_r(x);
// the shift makes m >= ||A - x|| the only precondition.
inline bool presence_probe(const FiniteSelfAdjoint& a, double x, double m, double r) {
  if (m < a.shifted_norm(x))
    throw std::invalid_argument("presence probe needs m >= ||A - x||");
  if (r >= m) throw std::invalid_argument("presence probe needs r < m");
  double norm = 0;
  for (double l : a.eigenvalues()) norm = std::max(norm, std::abs(m * m - (l - x) * (l - x)));
  return norm > m * m - r * r;
}

// ||1 + conj(E) U|| > sqrt(4 - r^2) detects spectrum of a unitary in B_r(E).
inline bool unitary_probe(const FiniteUnitary& u, std::complex<double> e, double r) {
  if (std::abs(std::abs(e) - 1.0) > 1e-12)
    throw std::invalid_argument("probe direction must have unit modulus");
  if (!(r < 2.0) || r <= 0.0) throw std::invalid_argument("radius must lie in (0, 2)");
  double norm = 0;
  for (const auto& l : u.eigenvalues()) norm = std::max(norm, std::abs(1.0 + std::conj(e) * l));
  return norm > std::sqrt(4.0 - r * r);
}

// ||p0 + p1 A + p2 A^2||.
inline double p2_norm(const FiniteSelfAdjoint& a, double p0, double p1, double p2) {
  double norm = 0;
  for (double l : a.eigenvalues()) norm = std::max(norm, std::abs(p0 + p1 * l + p2 * l * l));
  return norm;
}

}  // namespace subshift
