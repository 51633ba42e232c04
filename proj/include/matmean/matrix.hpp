#pragma once

// Hermitian/PSD matrix types with a spectral cache, and the spectral-calculus
// primitives (fractional powers on the support, log/exp, order predicates)
// that the rest of the library is built on.

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace matmean {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// Dimensions are capped: tensor products of small blocks are the largest
// objects this library ever touches.
inline constexpr int kMaxDim = 16;

inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kRankCut = 1e-12;   // relative to lambda_max
inline constexpr double kReconTol = 1e-11;

// Spectral norm ||X||_inf (operator norm).
double opnorm(const Matrix& x);

void check_dim(int n);

struct SpectralDecomposition {
  RealVector eigenvalues;  // descending
  Matrix eigenvectors;     // unitary; column i pairs with eigenvalues[i]
};

class HermitianMatrix {
 public:
  // Rejects inputs with ||A - A*||_inf > tol * (1 + ||A||_inf), then stores
  // the symmetrization (A + A*)/2 so the held value is exactly Hermitian.
  explicit HermitianMatrix(Matrix m, double tol = kHermiticityTol);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& mat() const { return m_; }

 private:
  Matrix m_;
};

HermitianMatrix herm_zero(int n);

// Descending eigensystem of a Hermitian-certified matrix.
SpectralDecomposition eig_hermitian(const HermitianMatrix& a);

class PsdMatrix {
 public:
  static PsdMatrix from_matrix(Matrix m, double psd_tol = kPsdTol);
  static PsdMatrix from_hermitian(HermitianMatrix h, double psd_tol = kPsdTol);
  // Assembles U f(diag) U* from a known eigensystem without re-running the
  // eigensolver. eigenvalues must be nonnegative and descending.
  static PsdMatrix from_spectral(SpectralDecomposition s);
  static PsdMatrix zero(int n);
  static PsdMatrix identity(int n);

  int dim() const { return base_.dim(); }
  const Matrix& mat() const { return base_.mat(); }
  const HermitianMatrix& base() const { return base_; }
  const SpectralDecomposition& spectral() const { return spec_; }
  const RealVector& eigenvalues() const { return spec_.eigenvalues; }

  int rank(double rel_cut = kRankCut) const;
  double trace() const;
  bool is_zero(double rel = 1e-14) const;

 private:
  PsdMatrix(HermitianMatrix base, SpectralDecomposition spec)
      : base_(std::move(base)), spec_(std::move(spec)) {}
  HermitianMatrix base_;
  SpectralDecomposition spec_;
};

struct SupportInfo {
  int rank;
  HermitianMatrix projection;
  double threshold_used;
};

// Projection onto eigenvectors with lambda > rel_cut * lambda_max; rank 0 for
// the zero matrix.
SupportInfo support_projection(const PsdMatrix& a, double rel_cut = kRankCut);

// True when s(A) >= s(B), i.e. range(B) is contained in range(A) up to tol.
bool support_dominates(const PsdMatrix& a, const PsdMatrix& b, double tol = 1e-8);

// Spectral calculus lambda -> lambda^r on the support, 0 off it; negative r
// uses the generalized inverse convention, and r = 0 yields s(A).
PsdMatrix mat_pow(const PsdMatrix& a, double r, double rel_cut = kRankCut);

// log on the support (domain error for A = 0); exp of a Hermitian matrix.
HermitianMatrix mat_log_support(const PsdMatrix& a, double rel_cut = kRankCut);
PsdMatrix mat_exp(const HermitianMatrix& h);

// Loewner order: lambda_min(B - A) >= -tol * (1 + ||B - A||_inf).
bool loewner_le(const HermitianMatrix& a, const HermitianMatrix& b, double tol = 1e-10);
bool loewner_le(const PsdMatrix& a, const PsdMatrix& b, double tol = 1e-10);

// Sum of log eigenvalues over the support; by convention 0 for the zero matrix.
double log_det_support(const PsdMatrix& a, double rel_cut = kRankCut);

Matrix kron(const Matrix& a, const Matrix& b);
PsdMatrix kron(const PsdMatrix& a, const PsdMatrix& b);

// Partial trace over the leading factor of dim_front in a (dim_front*dim_back)
// square matrix.
Matrix partial_trace_front(const Matrix& z, int dim_front, int dim_back);

// Matrix exchange format: {"dim": n, "re": [[..]], "im": [[..]]}, row-major.
std::string matrix_to_exchange_json(const Matrix& m);
Matrix matrix_from_exchange_json(const std::string& text);
HermitianMatrix hermitian_from_exchange_json(const std::string& text);

}  // namespace matmean
