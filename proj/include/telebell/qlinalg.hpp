#pragma once

// Dense complex linear algebra for the tiny dimensions this project needs
// (1, 2, 4, 8): products, Kronecker products, Hermitian eigendecomposition
// by cyclic Jacobi rotations, partial traces, plus small real 3-vector and
// 3x3 matrix helpers used for correlation data.

#include <array>
#include <complex>
#include <vector>

namespace telebell::la {

using cplx = std::complex<double>;

bool valid_dim(int n);

class ComplexMatrix {
public:
  ComplexMatrix() : rows_(1), cols_(1), a_(1) {}
  ComplexMatrix(int rows, int cols);

  static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }
  static ComplexMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cplx &operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const cplx &operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double max_abs() const;
  bool is_hermitian(double tol) const;
  bool all_finite() const;

  ComplexMatrix &operator+=(const ComplexMatrix &o);
  ComplexMatrix &operator-=(const ComplexMatrix &o);
  ComplexMatrix &operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

private:
  int rows_, cols_;
  std::vector<cplx> a_;
};

// Column vector as an n x 1 matrix.
ComplexMatrix ket(std::initializer_list<cplx> amplitudes);
ComplexMatrix ket(const std::vector<cplx> &amplitudes);

// |v><w| for column vectors v, w.
ComplexMatrix outer(const ComplexMatrix &v, const ComplexMatrix &w);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

struct HermitianEigenResult {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // orthonormal columns, paired with eigenvalues
};

// Cyclic Jacobi on a complex Hermitian matrix. Throws std::invalid_argument
// for non-Hermitian input and std::runtime_error if the sweep budget runs out.
HermitianEigenResult hermitian_eigen(const ComplexMatrix &h);

// Partial trace over the qubits NOT listed in `keep`. `keep` holds 1-based
// qubit indices, strictly increasing; qubit 1 is the leftmost tensor factor.
// rho must be 4x4 (two qubits) or 8x8 (three qubits).
ComplexMatrix partial_trace(const ComplexMatrix &rho, const std::vector<int> &keep);

// --- real 3-space helpers -------------------------------------------------

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

double dot(const Vec3 &a, const Vec3 &b);
double norm(const Vec3 &v);
Vec3 add(const Vec3 &a, const Vec3 &b);
Vec3 sub(const Vec3 &a, const Vec3 &b);
Vec3 scale(double s, const Vec3 &v);
Vec3 normalized(const Vec3 &v);  // throws on (near-)zero input
Mat3 transpose(const Mat3 &m);
Vec3 matvec(const Mat3 &m, const Vec3 &v);
Mat3 matmul(const Mat3 &a, const Mat3 &b);

// Eigenvalues of a real symmetric 3x3 matrix, descending, via Jacobi sweeps.
std::array<double, 3> symmetric3_eigenvalues(const Mat3 &m);

}  // namespace telebell::la
