// Copyright 2026 The Frame Lab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Finite frames, frame operators, canonical duals and the affine space of all duals.
//
// A frame of N vectors in an n-dimensional space is stored as its n x N synthesis
// matrix T whose columns are the frame vectors. With this layout
//
//   analysis      f -> T^H f
//   frame op.     S = T T^H
//   G is a dual   <=>  G T^H = I
//   perturbation  U T^H = 0
//   cross-Gram    alpha(i, j) = <g_i, f_j> = (G^T conj(T))(i, j)

#ifndef FRAME_LAB_FRAME_HPP_
#define FRAME_LAB_FRAME_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "frame_lab/common.hpp"

namespace frame_lab {

/// Hermitian matrix with its eigendecomposition cached at construction.
template <typename Scalar>
class HermitianMatrix {
 public:
  using Matrix = MatrixX<Scalar>;
  using Real = RealOf<Scalar>;
  using RealVector = VectorX<Real>;

  explicit HermitianMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0)
      throw Error(ErrorCode::kShapeMismatch, "hermitian matrix must be square and non-empty");
    const Real scale = std::max<Real>(1, m_.cwiseAbs().maxCoeff());
    const Real skew = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (skew > tolerance::kHermitian * scale)
      throw Error(ErrorCode::kNotHermitian, "asymmetry " + std::to_string(skew));
    // symmetrize so round-off asymmetry does not leak into the solver
    m_ = (m_ + m_.adjoint()).eval() / Real(2);
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_);
    if (es.info() != Eigen::Success)
      throw Error(ErrorCode::kEigenFailure, "hermitian eigendecomposition did not converge");
    eigenvalues_ = es.eigenvalues();
    eigenvectors_ = es.eigenvectors();
  }

  Index order() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

  /// Ascending.
  const RealVector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }

  Real min_eigenvalue() const { return eigenvalues_(0); }
  Real max_eigenvalue() const { return eigenvalues_(eigenvalues_.size() - 1); }

  Real condition_number() const {
    const Real lo = min_eigenvalue();
    return lo > 0 ? max_eigenvalue() / lo : std::numeric_limits<Real>::infinity();
  }

  /// Applies a real function to the spectrum: V diag(fn(lambda)) V^H.
  template <typename Fn>
  Matrix apply(Fn fn) const {
    RealVector mapped = eigenvalues_.unaryExpr(fn);
    return eigenvectors_ * mapped.asDiagonal() * eigenvectors_.adjoint();
  }

  Matrix inverse() const {
    return apply([](Real x) { return Real(1) / x; });
  }

 private:
  Matrix m_;
  RealVector eigenvalues_;
  Matrix eigenvectors_;
};

/// An ordered spanning sequence of N vectors in an n-dimensional space, N >= n.
template <typename Scalar>
class Frame {
 public:
  using Matrix = MatrixX<Scalar>;
  using Vector = VectorX<Scalar>;
  using Real = RealOf<Scalar>;

  /// Validates that the columns of `synthesis` span the ambient space.
  explicit Frame(Matrix synthesis) : t_(std::move(synthesis)) {
    if (t_.rows() == 0 || t_.cols() == 0)
      throw Error(ErrorCode::kInvalidArgument, "frame needs at least one vector of positive dimension");
    if (t_.cols() < t_.rows())
      throw Error(ErrorCode::kNotSpanning, std::to_string(t_.cols()) + " vectors cannot span dimension " +
                                               std::to_string(t_.rows()));
    Eigen::JacobiSVD<Matrix> svd(t_);
    const auto& sv = svd.singularValues();
    if (!sv.allFinite()) throw Error(ErrorCode::kSvdFailure, "non-finite singular values");
    const Real largest = sv(0);
    const Real smallest = sv(t_.rows() - 1);
    if (!(largest > 0) || smallest <= tolerance::kRank * largest)
      throw Error(ErrorCode::kNotSpanning,
                  "smallest singular value " + std::to_string(smallest) + " relative to " + std::to_string(largest));
    HermitianMatrix<Scalar> s(t_ * t_.adjoint());
    lower_ = s.min_eigenvalue();
    upper_ = s.max_eigenvalue();
  }

  Index dim() const { return t_.rows(); }
  Index count() const { return t_.cols(); }

  const Matrix& synthesis() const { return t_; }
  auto vector(Index i) const { return t_.col(i); }

  /// Optimal frame bounds: extreme eigenvalues of the frame operator.
  Real lower_bound() const { return lower_; }
  Real upper_bound() const { return upper_; }

  bool is_tight(Real tol) const { return upper_ - lower_ <= tol * std::max<Real>(1, upper_); }

 private:
  Matrix t_;
  Real lower_ = 0;
  Real upper_ = 0;
};

using FrameXd = Frame<double>;
using FrameXcd = Frame<cplx>;

template <typename Scalar>
Frame<Scalar> build_frame(Index dim, const std::vector<VectorX<Scalar>>& vectors) {
  if (vectors.empty()) throw Error(ErrorCode::kInvalidArgument, "empty vector list");
  MatrixX<Scalar> t(dim, static_cast<Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim)
      throw Error(ErrorCode::kDimensionMismatch, "vector " + std::to_string(i) + " has length " +
                                                     std::to_string(vectors[i].size()) + ", expected " +
                                                     std::to_string(dim));
    t.col(static_cast<Index>(i)) = vectors[i];
  }
  return Frame<Scalar>(std::move(t));
}

template <typename Scalar>
Frame<Scalar> build_frame(Index dim, const std::vector<std::vector<Scalar>>& vectors) {
  std::vector<VectorX<Scalar>> converted;
  converted.reserve(vectors.size());
  for (const auto& v : vectors)
    converted.push_back(Eigen::Map<const VectorX<Scalar>>(v.data(), static_cast<Index>(v.size())));
  return build_frame<Scalar>(dim, converted);
}

/// Embeds a real frame into the complex space of the same dimension.
inline FrameXcd to_complex(const FrameXd& f) { return FrameXcd(f.synthesis().cast<cplx>()); }

template <typename Scalar>
HermitianMatrix<Scalar> frame_operator(const Frame<Scalar>& f) {
  return HermitianMatrix<Scalar>(f.synthesis() * f.synthesis().adjoint());
}

/// max |G T^H - I|, the defect of the reconstruction identity.
template <typename Scalar>
RealOf<Scalar> dual_residual(const Frame<Scalar>& f, const Frame<Scalar>& g) {
  if (f.dim() != g.dim() || f.count() != g.count())
    throw Error(ErrorCode::kShapeMismatch, "frame and candidate dual differ in shape");
  const auto n = f.dim();
  return (g.synthesis() * f.synthesis().adjoint() - MatrixX<Scalar>::Identity(n, n)).cwiseAbs().maxCoeff();
}

template <typename Scalar>
bool verify_dual(const Frame<Scalar>& f, const Frame<Scalar>& g, double tol = tolerance::kDual) {
  return dual_residual(f, g) <= tol;
}

/// A frame together with a verified dual and its cross-Gram matrix.
template <typename Scalar>
class DualPair {
 public:
  using Matrix = MatrixX<Scalar>;

  DualPair(Frame<Scalar> frame, Frame<Scalar> dual, double tol = tolerance::kDual)
      : frame_(std::move(frame)), dual_(std::move(dual)) {
    const auto residual = dual_residual(frame_, dual_);
    if (!(residual <= tol))
      throw Error(ErrorCode::kNotDual, "reconstruction residual " + std::to_string(residual));
    alpha_ = dual_.synthesis().transpose() * frame_.synthesis().conjugate();
    const auto trace_defect = std::abs(alpha_.trace() - Scalar(double(frame_.dim())));
    if (!(trace_defect <= tol * std::max<double>(1, double(frame_.dim()))))
      throw Error(ErrorCode::kNotDual, "cross-Gram trace defect " + std::to_string(trace_defect));
  }

  const Frame<Scalar>& frame() const { return frame_; }
  const Frame<Scalar>& dual() const { return dual_; }

  /// alpha(i, j) = <g_i, f_j>.
  const Matrix& cross_gram() const { return alpha_; }

  Index dim() const { return frame_.dim(); }
  Index count() const { return frame_.count(); }

 private:
  Frame<Scalar> frame_;
  Frame<Scalar> dual_;
  Matrix alpha_;
};

template <typename Scalar>
const MatrixX<Scalar>& cross_gram(const DualPair<Scalar>& pair) {
  return pair.cross_gram();
}

template <typename Scalar>
DualPair<Scalar> canonical_dual(const Frame<Scalar>& f) {
  const auto s = frame_operator(f);
  if (s.condition_number() > tolerance::kCondition)
    throw Error(ErrorCode::kIllConditioned, "frame operator condition number " +
                                                std::to_string(double(s.condition_number())));
  return DualPair<Scalar>(f, Frame<Scalar>(s.inverse() * f.synthesis()));
}

/// Orthonormal basis {U_k} of the perturbations U with U T^H = 0. Every dual of the
/// base frame is S^{-1} F + sum_k c_k U_k.
///
/// With V the N x (N - n) matrix of null vectors of T, the elements are U_k = e_r v_l^H
/// for k = l * n + r, so sum_k c_k U_k = C V^H where C is the column-major n x (N - n)
/// reshape of the coefficients.
template <typename Scalar>
class DualPerturbationBasis {
 public:
  using Matrix = MatrixX<Scalar>;
  using Vector = VectorX<Scalar>;

  explicit DualPerturbationBasis(Frame<Scalar> f) : frame_(std::move(f)) {
    const Index n = frame_.dim();
    const Index big_n = frame_.count();
    Eigen::JacobiSVD<Matrix> svd(frame_.synthesis(), Eigen::ComputeFullV);
    null_ = svd.matrixV().rightCols(big_n - n);
    for (Index l = 0; l < null_.cols(); ++l) normalize_phase(null_.col(l));
  }

  const Frame<Scalar>& base_frame() const { return frame_; }
  Index size() const { return frame_.dim() * null_.cols(); }
  bool empty() const { return size() == 0; }

  /// Orthonormal null vectors of the synthesis matrix, N x (N - n).
  const Matrix& null_space() const { return null_; }

  Matrix element(Index k) const {
    const Index n = frame_.dim();
    Matrix u = Matrix::Zero(n, frame_.count());
    u.row(k % n) = null_.col(k / n).adjoint();
    return u;
  }

  std::vector<Matrix> elements() const {
    std::vector<Matrix> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (Index k = 0; k < size(); ++k) out.push_back(element(k));
    return out;
  }

  template <typename Derived>
  Matrix perturbation(const Eigen::MatrixBase<Derived>& coeffs) const {
    if (coeffs.size() != size())
      throw Error(ErrorCode::kLengthMismatch,
                  "expected " + std::to_string(size()) + " coefficients, got " + std::to_string(coeffs.size()));
    if (empty()) return Matrix::Zero(frame_.dim(), frame_.count());
    const Vector c = coeffs;
    Eigen::Map<const Matrix> cm(c.data(), frame_.dim(), null_.cols());
    return cm * null_.adjoint();
  }

  /// Orthogonal projection of an n x N matrix onto the span of the basis, as coefficients.
  template <typename Derived>
  Vector coefficients_of(const Eigen::MatrixBase<Derived>& u) const {
    if (u.rows() != frame_.dim() || u.cols() != frame_.count())
      throw Error(ErrorCode::kShapeMismatch, "perturbation must be n x N");
    const Matrix cm = u * null_;
    return Eigen::Map<const Vector>(cm.data(), cm.size());
  }

 private:
  // Largest-modulus entry made real positive so the basis is reproducible.
  template <typename Col>
  static void normalize_phase(Col&& v) {
    Index best = 0;
    double best_abs = -1;
    for (Index i = 0; i < v.size(); ++i) {
      const double a = std::abs(v(i));
      if (a > best_abs + 1e-12) {
        best = i;
        best_abs = a;
      }
    }
    if constexpr (is_complex_v<Scalar>) {
      v *= std::conj(v(best)) / std::abs(v(best));
    } else {
      if (v(best) < 0) v = -v;
    }
  }

  Frame<Scalar> frame_;
  Matrix null_;
};

template <typename Scalar>
DualPerturbationBasis<Scalar> dual_perturbation_basis(const Frame<Scalar>& f) {
  return DualPerturbationBasis<Scalar>(f);
}

template <typename Scalar, typename Derived>
DualPair<Scalar> dual_from_coefficients(const DualPerturbationBasis<Scalar>& basis,
                                        const Eigen::MatrixBase<Derived>& coeffs) {
  const auto& f = basis.base_frame();
  const auto canonical = canonical_dual(f);
  MatrixX<Scalar> g = canonical.dual().synthesis() + basis.perturbation(coeffs);
  return DualPair<Scalar>(f, Frame<Scalar>(std::move(g)));
}

}  // namespace frame_lab

#endif  // FRAME_LAB_FRAME_HPP_
