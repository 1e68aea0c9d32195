#include "telebell/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace telebell::la {

bool valid_dim(int n) { return n == 1 || n == 2 || n == 4 || n == 8; }

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (!valid_dim(rows) || !valid_dim(cols))
    throw std::invalid_argument("ComplexMatrix: dimensions must be 1, 2, 4 or 8");
  a_.assign(static_cast<size_t>(rows) * cols, cplx(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

cplx ComplexMatrix::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace: matrix not square");
  cplx t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx &z : a_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

bool ComplexMatrix::all_finite() const {
  for (const cplx &z : a_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("operator+=: shape mismatch");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("operator-=: shape mismatch");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cplx s) {
  for (cplx &z : a_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("operator*: shape mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexMatrix ket(std::initializer_list<cplx> amplitudes) {
  return ket(std::vector<cplx>(amplitudes));
}

ComplexMatrix ket(const std::vector<cplx> &amplitudes) {
  ComplexMatrix v(static_cast<int>(amplitudes.size()), 1);
  for (size_t i = 0; i < amplitudes.size(); ++i) v(static_cast<int>(i), 0) = amplitudes[i];
  return v;
}

ComplexMatrix outer(const ComplexMatrix &v, const ComplexMatrix &w) {
  if (v.cols() != 1 || w.cols() != 1) throw std::invalid_argument("outer: expects column vectors");
  ComplexMatrix m(v.rows(), w.rows());
  for (int i = 0; i < v.rows(); ++i)
    for (int j = 0; j < w.rows(); ++j) m(i, j) = v(i, 0) * std::conj(w(j, 0));
  return m;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  const int r = a.rows() * b.rows();
  const int c = a.cols() * b.cols();
  if (r > 8 || c > 8) throw std::invalid_argument("kron: product dimension exceeds 8");
  ComplexMatrix m(r, c);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return m;
}

namespace {

double off_diagonal_norm(const ComplexMatrix &a) {
  double s = 0.0;
  for (int p = 0; p < a.rows(); ++p)
    for (int q = p + 1; q < a.cols(); ++q) s += std::norm(a(p, q));
  return std::sqrt(s);
}

}  // namespace

HermitianEigenResult hermitian_eigen(const ComplexMatrix &h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("hermitian_eigen: matrix not square");
  if (!h.is_hermitian(1e-10)) throw std::invalid_argument("hermitian_eigen: input not Hermitian");

  const int n = h.rows();
  ComplexMatrix a = h;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, a.max_abs());

  const int max_sweeps = 100;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-14 * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double ab = std::abs(apq);
        if (ab <= 1e-300) continue;
        const cplx phase = apq / ab;  // apq = ab * phase
        const double alpha = a(p, p).real();
        const double gamma = a(q, q).real();
        const double tau = (alpha - gamma) / (2.0 * ab);
        double t;
        if (tau >= 0.0)
          t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
        else
          t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Unitary column transform: col_p <- c*col_p + s*conj(phase)*col_q,
        //                           col_q <- -s*phase*col_p + c*col_q.
        const cplx upp = c, upq = -s;
        const cplx uqp = s * std::conj(phase), uqq = c * std::conj(phase);
        for (int k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
      }
    }
  }
  if (sweep == max_sweeps && off_diagonal_norm(a) > 1e-12 * scale)
    throw std::runtime_error("hermitian_eigen: Jacobi iteration did not converge");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

  HermitianEigenResult res;
  res.eigenvalues.resize(n);
  res.eigenvectors = ComplexMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    res.eigenvalues[j] = a(order[j], order[j]).real();
    for (int i = 0; i < n; ++i) res.eigenvectors(i, j) = v(i, order[j]);
  }
  return res;
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, const std::vector<int> &keep) {
  if (rho.rows() != rho.cols() || (rho.rows() != 4 && rho.rows() != 8))
    throw std::invalid_argument("partial_trace: state must be 4x4 or 8x8");
  const int nq = rho.rows() == 4 ? 2 : 3;
  if (keep.empty() || static_cast<int>(keep.size()) >= nq + 1)
    throw std::invalid_argument("partial_trace: invalid subsystem selector");
  for (size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 1 || keep[i] > nq) throw std::invalid_argument("partial_trace: qubit index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw std::invalid_argument("partial_trace: selector must be strictly increasing");
  }

  std::vector<int> traced;
  for (int q = 1; q <= nq; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
  if (traced.empty()) return rho;

  const int nk = static_cast<int>(keep.size());
  const int nt = static_cast<int>(traced.size());
  const int m = 1 << nk;

  // Qubit q occupies bit (nq - q) of the basis index (qubit 1 is the
  // leftmost tensor factor, basis |up> = 0, |down> = 1).
  auto assemble = [&](int kept_bits, int traced_bits) {
    int idx = 0;
    for (int i = 0; i < nk; ++i)
      if (kept_bits & (1 << (nk - 1 - i))) idx |= 1 << (nq - keep[i]);
    for (int i = 0; i < nt; ++i)
      if (traced_bits & (1 << (nt - 1 - i))) idx |= 1 << (nq - traced[i]);
    return idx;
  };

  ComplexMatrix out(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      cplx s = 0.0;
      for (int t = 0; t < (1 << nt); ++t) s += rho(assemble(i, t), assemble(j, t));
      out(i, j) = s;
    }
  return out;
}

double dot(const Vec3 &a, const Vec3 &b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm(const Vec3 &v) { return std::sqrt(dot(v, v)); }

Vec3 add(const Vec3 &a, const Vec3 &b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

Vec3 sub(const Vec3 &a, const Vec3 &b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Vec3 scale(double s, const Vec3 &v) { return {s * v[0], s * v[1], s * v[2]}; }

Vec3 normalized(const Vec3 &v) {
  const double n = norm(v);
  if (n < 1e-300) throw std::invalid_argument("normalized: zero vector");
  return scale(1.0 / n, v);
}

Mat3 transpose(const Mat3 &m) {
  Mat3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

Vec3 matvec(const Mat3 &m, const Vec3 &v) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i) r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return r;
}

Mat3 matmul(const Mat3 &a, const Mat3 &b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

std::array<double, 3> symmetric3_eigenvalues(const Mat3 &m) {
  Mat3 a = m;
  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = std::sqrt(a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]);
    if (off <= 1e-15 * std::max(1.0, std::abs(a[0][0]) + std::abs(a[1][1]) + std::abs(a[2][2]))) break;
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double tau = (a[p][p] - a[q][q]) / (2.0 * a[p][q]);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp + s * akq;
          a[k][q] = -s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk + s * aqk;
          a[q][k] = -s * apk + c * aqk;
        }
      }
  }
  std::array<double, 3> ev{a[0][0], a[1][1], a[2][2]};
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  return ev;
}

}  // namespace telebell::la
