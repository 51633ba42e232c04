#include "matmean/matrix.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace matmean {

using json = nlohmann::json;

double opnorm(const Matrix& x) {
  if (x.rows() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues()(0);
}

void check_dim(int n) {
  if (n < 1) throw std::invalid_argument("matrix dimension must be >= 1");
  if (n > kMaxDim)
    throw std::invalid_argument("matrix dimension " + std::to_string(n) +
                                " exceeds cap " + std::to_string(kMaxDim));
}

HermitianMatrix::HermitianMatrix(Matrix m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix not square");
  check_dim(static_cast<int>(m.rows()));
  const double dev = opnorm(m - m.adjoint());
  if (dev > tol * (1.0 + opnorm(m)))
    throw std::invalid_argument("matrix not Hermitian within tolerance: dev=" +
                                std::to_string(dev));
  m_ = 0.5 * (m + m.adjoint().eval());
}

HermitianMatrix herm_zero(int n) { return HermitianMatrix(Matrix::Zero(n, n)); }

SpectralDecomposition eig_hermitian(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.mat());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("Hermitian eigensolver failed to converge");
  const int n = a.dim();
  SpectralDecomposition s;
  s.eigenvalues = RealVector(n);
  s.eigenvectors = Matrix(n, n);
  for (int i = 0; i < n; ++i) {  // Eigen returns ascending order
    s.eigenvalues(i) = es.eigenvalues()(n - 1 - i);
    s.eigenvectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return s;
}

PsdMatrix PsdMatrix::from_hermitian(HermitianMatrix h, double psd_tol) {
  SpectralDecomposition s = eig_hermitian(h);
  const int n = h.dim();
  const double lmax = n > 0 ? std::max(s.eigenvalues(0), 0.0) : 0.0;
  const double floor = -psd_tol * std::max(lmax, 1e-300);
  for (int i = 0; i < n; ++i) {
    if (s.eigenvalues(i) < floor)
      throw std::invalid_argument("matrix not PSD: eigenvalue " +
                                  std::to_string(s.eigenvalues(i)));
    if (s.eigenvalues(i) < 0) s.eigenvalues(i) = 0.0;
  }
  // Reconstruction guard against a silently broken eigensystem.
  Matrix rec = s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.adjoint();
  if (opnorm(rec - h.mat()) > kReconTol * (1.0 + opnorm(h.mat())))
    throw std::runtime_error("spectral reconstruction error exceeds tolerance");
  return PsdMatrix(std::move(h), std::move(s));
}

PsdMatrix PsdMatrix::from_matrix(Matrix m, double psd_tol) {
  return from_hermitian(HermitianMatrix(std::move(m)), psd_tol);
}

PsdMatrix PsdMatrix::from_spectral(SpectralDecomposition s) {
  const int n = static_cast<int>(s.eigenvalues.size());
  check_dim(n);
  for (int i = 0; i < n; ++i)
    if (s.eigenvalues(i) < 0) s.eigenvalues(i) = 0.0;
  Matrix m = s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.adjoint();
  HermitianMatrix h(0.5 * (m + m.adjoint().eval()));
  return PsdMatrix(std::move(h), std::move(s));
}

PsdMatrix PsdMatrix::zero(int n) {
  SpectralDecomposition s;
  s.eigenvalues = RealVector::Zero(n);
  s.eigenvectors = Matrix::Identity(n, n);
  return PsdMatrix(herm_zero(n), std::move(s));
}

PsdMatrix PsdMatrix::identity(int n) {
  SpectralDecomposition s;
  s.eigenvalues = RealVector::Ones(n);
  s.eigenvectors = Matrix::Identity(n, n);
  return PsdMatrix(HermitianMatrix(Matrix::Identity(n, n)), std::move(s));
}

int PsdMatrix::rank(double rel_cut) const {
  const double lmax = spec_.eigenvalues.size() ? spec_.eigenvalues(0) : 0.0;
  if (lmax <= 0) return 0;
  int r = 0;
  for (int i = 0; i < spec_.eigenvalues.size(); ++i)
    if (spec_.eigenvalues(i) > rel_cut * lmax) ++r;
  return r;
}

double PsdMatrix::trace() const { return spec_.eigenvalues.sum(); }

bool PsdMatrix::is_zero(double rel) const {
  (void)rel;
  return spec_.eigenvalues.size() == 0 || spec_.eigenvalues(0) <= 0.0;
}

SupportInfo support_projection(const PsdMatrix& a, double rel_cut) {
  if (rel_cut <= 0 || rel_cut >= 1)
    throw std::invalid_argument("rel_cut must lie in (0,1)");
  const int n = a.dim();
  const int r = a.rank(rel_cut);
  Matrix p = Matrix::Zero(n, n);
  const Matrix& u = a.spectral().eigenvectors;
  for (int i = 0; i < r; ++i) p += u.col(i) * u.col(i).adjoint();
  const double lmax = n > 0 && a.eigenvalues().size() ? a.eigenvalues()(0) : 0.0;
  return SupportInfo{r, HermitianMatrix(std::move(p)), rel_cut * lmax};
}

bool support_dominates(const PsdMatrix& a, const PsdMatrix& b, double tol) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  if (b.is_zero()) return true;
  SupportInfo pa = support_projection(a);
  SupportInfo pb = support_projection(b);
  if (pb.rank > pa.rank) return false;
  // ||(I - P_A) P_B||^2 = lambda_max(P_B (I-P_A) P_B)
  Matrix q = Matrix::Identity(a.dim(), a.dim()) - pa.projection.mat();
  return opnorm(q * pb.projection.mat()) <= tol;
}

namespace {

PsdMatrix spectral_map_support(const PsdMatrix& a, double rel_cut,
                               const std::function<double(double)>& f) {
  SpectralDecomposition s = a.spectral();
  const double lmax = s.eigenvalues.size() ? s.eigenvalues(0) : 0.0;
  const double cut = rel_cut * lmax;
  for (int i = 0; i < s.eigenvalues.size(); ++i)
    s.eigenvalues(i) = (lmax > 0 && s.eigenvalues(i) > cut) ? f(s.eigenvalues(i)) : 0.0;
  // f may break the descending order (e.g. negative exponents); restore it.
  std::vector<int> idx(s.eigenvalues.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) {
    return s.eigenvalues(i) > s.eigenvalues(j);
  });
  SpectralDecomposition out;
  out.eigenvalues = RealVector(s.eigenvalues.size());
  out.eigenvectors = Matrix(s.eigenvectors.rows(), s.eigenvectors.cols());
  for (size_t i = 0; i < idx.size(); ++i) {
    out.eigenvalues(static_cast<int>(i)) = s.eigenvalues(idx[i]);
    out.eigenvectors.col(static_cast<int>(i)) = s.eigenvectors.col(idx[i]);
  }
  return PsdMatrix::from_spectral(std::move(out));
}

}  // namespace

PsdMatrix mat_pow(const PsdMatrix& a, double r, double rel_cut) {
  if (r == 1.0) return a;
  return spectral_map_support(a, rel_cut, [r](double x) { return std::pow(x, r); });
}

HermitianMatrix mat_log_support(const PsdMatrix& a, double rel_cut) {
  if (a.is_zero()) throw std::domain_error("log of the zero matrix");
  const auto& s = a.spectral();
  const double cut = rel_cut * s.eigenvalues(0);
  const int n = a.dim();
  Matrix out = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    if (s.eigenvalues(i) > cut)
      out += std::log(s.eigenvalues(i)) * s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint();
  return HermitianMatrix(std::move(out));
}

PsdMatrix mat_exp(const HermitianMatrix& h) {
  SpectralDecomposition s = eig_hermitian(h);
  for (int i = 0; i < s.eigenvalues.size(); ++i)
    s.eigenvalues(i) = std::exp(s.eigenvalues(i));
  return PsdMatrix::from_spectral(std::move(s));
}

bool loewner_le(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  Matrix d = b.mat() - a.mat();
  Eigen::SelfAdjointEigenSolver<Matrix> es(d);
  const double lmin = es.eigenvalues()(0);
  return lmin >= -tol * (1.0 + opnorm(d));
}

bool loewner_le(const PsdMatrix& a, const PsdMatrix& b, double tol) {
  return loewner_le(a.base(), b.base(), tol);
}

double log_det_support(const PsdMatrix& a, double rel_cut) {
  const auto& ev = a.eigenvalues();
  if (ev.size() == 0 || ev(0) <= 0) return 0.0;
  const double cut = rel_cut * ev(0);
  double s = 0.0;
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) > cut) s += std::log(ev(i));
  return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

PsdMatrix kron(const PsdMatrix& a, const PsdMatrix& b) {
  return PsdMatrix::from_matrix(kron(a.mat(), b.mat()));
}

Matrix partial_trace_front(const Matrix& z, int dim_front, int dim_back) {
  if (z.rows() != dim_front * dim_back || z.cols() != z.rows())
    throw std::invalid_argument("partial_trace_front: dimension mismatch");
  Matrix out = Matrix::Zero(dim_back, dim_back);
  for (int k = 0; k < dim_front; ++k)
    out += z.block(k * dim_back, k * dim_back, dim_back, dim_back);
  return out;
}

std::string matrix_to_exchange_json(const Matrix& m) {
  json j;
  const int n = static_cast<int>(m.rows());
  j["dim"] = n;
  json re = json::array(), im = json::array();
  for (int i = 0; i < n; ++i) {
    json rrow = json::array(), irow = json::array();
    for (int k = 0; k < n; ++k) {
      rrow.push_back(m(i, k).real());
      irow.push_back(m(i, k).imag());
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  j["re"] = re;
  j["im"] = im;
  return j.dump(2);
}

Matrix matrix_from_exchange_json(const std::string& text) {
  json j = json::parse(text);
  if (!j.contains("dim") || !j.contains("re") || !j.contains("im"))
    throw std::invalid_argument("exchange JSON must have dim/re/im fields");
  const int n = j["dim"].get<int>();
  check_dim(n);
  const auto& re = j["re"];
  const auto& im = j["im"];
  if (static_cast<int>(re.size()) != n || static_cast<int>(im.size()) != n)
    throw std::invalid_argument("exchange JSON: row count != dim");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(re[i].size()) != n || static_cast<int>(im[i].size()) != n)
      throw std::invalid_argument("exchange JSON: column count != dim");
    for (int k = 0; k < n; ++k)
      m(i, k) = Complex(re[i][k].get<double>(), im[i][k].get<double>());
  }
  return m;
}

HermitianMatrix hermitian_from_exchange_json(const std::string& text) {
  return HermitianMatrix(matrix_from_exchange_json(text));
}

}  // namespace matmean
