#include "sepvol/matcore.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <string>

#include "sepvol/error.hpp"

namespace sepvol::mat {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(op) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

void require_square(const ComplexMatrix& a, const char* op) {
  if (!a.is_square() || a.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, std::string(op) + ": expected a nonempty square matrix");
  }
  if (a.rows() > kMaxDimension) {
    throw Error(ErrorCode::InvalidArgument, std::string(op) + ": dimension exceeds " +
                                                std::to_string(kMaxDimension));
  }
}

// Rotation J with J_pp = J_qq = c, J_pq = s*phase, J_qp = -s*conj(phase).
// J^dagger [[app, apq], [conj(apq), aqq]] J is diagonal; returns t = s/c so
// that the new diagonal is (app - t|apq|, aqq + t|apq|).
struct Rotation {
  double c;
  double s;
  complex phase;
  double t;
};

Rotation jacobi_rotation(double app, double aqq, complex apq, double mag) {
  const double theta = (aqq - app) / (2.0 * mag);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  return {c, t * c, apq / mag, t};
}

// In-place cyclic Jacobi on a Hermitian matrix stored row-major. When `v` is
// non-null the rotations are accumulated into it (v must start as identity).
void jacobi_hermitian(ComplexMatrix& a, ComplexMatrix* v) {
  const std::size_t n = a.rows();
  double norm2 = 0.0;
  for (const complex& z : a.entries()) norm2 += std::norm(z);
  if (norm2 == 0.0) return;

  const double converged = 16.0 * DBL_EPSILON * DBL_EPSILON * norm2;
  // Below this a pair is left alone; small enough that skipping every pair
  // still satisfies the convergence test.
  const double skip = 4.0 * DBL_EPSILON * std::sqrt(norm2) / static_cast<double>(n);

  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off <= converged) return;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= skip) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const Rotation r = jacobi_rotation(app, aqq, apq, mag);
        const complex sp = r.s * r.phase;
        const complex spc = r.s * std::conj(r.phase);

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const complex akp = a(k, p);
          const complex akq = a(k, q);
          const complex nkp = r.c * akp - spc * akq;
          const complex nkq = sp * akp + r.c * akq;
          a(k, p) = nkp;
          a(k, q) = nkq;
          a(p, k) = std::conj(nkp);
          a(q, k) = std::conj(nkq);
        }
        a(p, p) = app - r.t * mag;
        a(q, q) = aqq + r.t * mag;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        if (v != nullptr) {
          for (std::size_t k = 0; k < n; ++k) {
            const complex vkp = (*v)(k, p);
            const complex vkq = (*v)(k, q);
            (*v)(k, p) = r.c * vkp - spc * vkq;
            (*v)(k, q) = sp * vkp + r.c * vkq;
          }
        }
      }
    }
  }

  double off = 0.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
  if (off > converged) {
    throw Error(ErrorCode::NoConvergence,
                "Jacobi eigensolver exceeded " + std::to_string(kMaxJacobiSweeps) + " sweeps");
  }
}

void require_hermitian(const ComplexMatrix& a, const char* op) {
  require_square(a, op);
  if (!is_hermitian(a)) {
    throw Error(ErrorCode::NonHermitianInput, std::string(op) + ": |A - A^dagger|_F exceeds tolerance");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "entry count " + std::to_string(entries_.size()) +
                                                  " does not match " + std::to_string(rows) + "x" +
                                                  std::to_string(cols));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const complex> a, std::span<const complex> b) {
  ComplexMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

complex ComplexMatrix::trace() const {
  complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const complex& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complex scale) {
  for (complex& z : entries_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, complex scale) { return a *= scale; }
ComplexMatrix operator*(complex scale, ComplexMatrix a) { return a *= scale; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix product: inner dimensions differ");
  }
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexVector operator*(const ComplexMatrix& a, std::span<const complex> v) {
  if (a.cols() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix-vector product: size mismatch");
  }
  ComplexVector w(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    complex s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    w[i] = s;
  }
  return w;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t s = 0; s < b.cols(); ++s)
          k(i * b.rows() + r, j * b.cols() + s) = a(i, j) * b(r, s);
  return k;
}

complex dot(std::span<const complex> a, std::span<const complex> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "dot: size mismatch");
  complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(std::span<const complex> v) {
  double s = 0.0;
  for (const complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "frobenius_inner");
  // Tr(B^dagger A) = sum_ij conj(B_ij) A_ij
  complex s = 0.0;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) s += std::conj(eb[i]) * ea[i];
  return s;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (!a.is_square()) return false;
  double diff = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) diff += std::norm(a(i, j) - std::conj(a(j, i)));
  return std::sqrt(diff) <= tol * a.frobenius_norm();
}

HermitianEigenDecomposition eigh(const ComplexMatrix& a) {
  require_hermitian(a, "eigh");
  const std::size_t n = a.rows();
  ComplexMatrix work = a;
  ComplexMatrix v = ComplexMatrix::identity(n);
  jacobi_hermitian(work, &v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return work(i, i).real() < work(j, j).real(); });

  HermitianEigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = work(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> eigvalsh(const ComplexMatrix& a) {
  require_hermitian(a, "eigvalsh");
  ComplexMatrix work = a;
  return eigvalsh_unchecked(work);
}

std::vector<double> eigvalsh_unchecked(ComplexMatrix& a) {
  jacobi_hermitian(a, nullptr);
  std::vector<double> values(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) values[i] = a(i, i).real();
  std::sort(values.begin(), values.end());
  return values;
}

namespace {

// Orthogonalizes the columns of w in place, accumulating the rotations in v.
void hestenes(ComplexMatrix& w, ComplexMatrix& v) {
  const std::size_t n = w.cols();
  const std::size_t m = w.rows();
  const double tol = static_cast<double>(m) * DBL_EPSILON;
  // Columns whose norm is at rounding level relative to |W|_F carry no
  // information; rotating them only chases noise and can cycle forever.
  double fro2 = 0.0;
  for (const complex& x : w.entries()) fro2 += std::norm(x);
  const double negligible = tol * tol * fro2;
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0;
        double beta = 0.0;
        complex gamma = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          alpha += std::norm(w(k, p));
          beta += std::norm(w(k, q));
          gamma += std::conj(w(k, p)) * w(k, q);
        }
        const double mag = std::abs(gamma);
        if (alpha <= negligible || beta <= negligible) continue;
        if (mag == 0.0 || mag <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Rotation r = jacobi_rotation(alpha, beta, gamma, mag);
        const complex sp = r.s * r.phase;
        const complex spc = r.s * std::conj(r.phase);
        for (std::size_t k = 0; k < m; ++k) {
          const complex wp = w(k, p);
          const complex wq = w(k, q);
          w(k, p) = r.c * wp - spc * wq;
          w(k, q) = sp * wp + r.c * wq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const complex vp = v(k, p);
          const complex vq = v(k, q);
          v(k, p) = r.c * vp - spc * vq;
          v(k, q) = sp * vp + r.c * vq;
        }
      }
    }
    if (!rotated) return;
  }
  throw Error(ErrorCode::NoConvergence,
              "one-sided Jacobi SVD exceeded " + std::to_string(kMaxJacobiSweeps) + " sweeps");
}

std::vector<double> column_norms(const ComplexMatrix& w) {
  std::vector<double> s(w.cols(), 0.0);
  for (std::size_t k = 0; k < w.rows(); ++k)
    for (std::size_t j = 0; j < w.cols(); ++j) s[j] += std::norm(w(k, j));
  for (double& x : s) x = std::sqrt(x);
  return s;
}

}  // namespace

SingularValueDecomposition svd(const ComplexMatrix& c) {
  require_square(c, "svd");
  const std::size_t n = c.rows();
  ComplexMatrix w = c;
  ComplexMatrix v = ComplexMatrix::identity(n);
  hestenes(w, v);

  const std::vector<double> s = column_norms(w);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return s[i] > s[j]; });
  const double smax = s[order[0]];

  SingularValueDecomposition out{ComplexMatrix(n, n), std::vector<double>(n), ComplexMatrix(n, n)};
  std::vector<bool> filled(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.singular_values[k] = s[j];
    for (std::size_t i = 0; i < n; ++i) out.right(i, k) = v(i, j);
    if (s[j] > DBL_EPSILON * smax && s[j] > 0.0) {
      for (std::size_t i = 0; i < n; ++i) out.left(i, k) = w(i, j) / s[j];
      filled[k] = true;
    }
  }

  // Numerically null columns: complete the left factor to a unitary by
  // Gram-Schmidt on standard basis vectors.
  std::size_t candidate = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (filled[k]) continue;
    while (candidate < n) {
      ComplexVector e(n, 0.0);
      e[candidate++] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < n; ++j) {
          if (!filled[j]) continue;
          complex proj = 0.0;
          for (std::size_t i = 0; i < n; ++i) proj += std::conj(out.left(i, j)) * e[i];
          for (std::size_t i = 0; i < n; ++i) e[i] -= proj * out.left(i, j);
        }
      }
      const double len = norm(e);
      if (len > 0.5) {
        for (std::size_t i = 0; i < n; ++i) out.left(i, k) = e[i] / len;
        filled[k] = true;
        break;
      }
    }
  }
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& c) {
  require_square(c, "singular_values");
  ComplexMatrix w = c;
  ComplexMatrix v = ComplexMatrix::identity(c.cols());
  hestenes(w, v);
  std::vector<double> s = column_norms(w);
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

ComplexVector range_solve(const ComplexMatrix& a, std::span<const complex> v) {
  if (a.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "range_solve: size mismatch");
  const HermitianEigenDecomposition eig = eigh(a);
  const std::size_t n = a.rows();
  const double lambda_max = eig.eigenvalues.back();
  const double cutoff = kRankTol * lambda_max;

  ComplexVector w(n, 0.0);
  ComplexVector residual(v.begin(), v.end());
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues[k];
    if (lambda_max <= 0.0 || lambda <= cutoff) continue;
    complex coeff = 0.0;
    for (std::size_t i = 0; i < n; ++i) coeff += std::conj(eig.eigenvectors(i, k)) * v[i];
    for (std::size_t i = 0; i < n; ++i) {
      w[i] += (coeff / lambda) * eig.eigenvectors(i, k);
      residual[i] -= coeff * eig.eigenvectors(i, k);
    }
  }
  if (norm(residual) > kRangeResidualTol * norm(v)) {
    throw Error(ErrorCode::NotInRange, "range_solve: vector has a component outside the range");
  }
  return w;
}

}  // namespace sepvol::mat
