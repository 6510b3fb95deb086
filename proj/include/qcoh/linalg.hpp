// Copyright 2026 The qcoh Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "qcoh/errors.hpp"

namespace qcoh {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Numerical tolerances for validating domain types. Defaults are tuned for
/// double precision with dimensions up to a few hundred.
struct Tolerances {
    double herm = 1e-10;
    double trace = 1e-10;
    double psd = 1e-9;
    double ortho = 1e-10;
    double recon_per_dim = 1e-9;

    double recon(Index n) const { return recon_per_dim * static_cast<double>(n); }
};

namespace detail {

inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

inline void require_square(const Matrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorCode::NotSquare, std::string(what) + " must be a non-empty square matrix, got " +
                                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

inline void require_same_dim(Index a, Index b, const char *what) {
    if (a != b) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + ": dimensions " + std::to_string(a) + " and " + std::to_string(b) + " differ");
    }
}

}  // namespace detail

/// max |m_ij - conj(m_ji)|
inline double hermiticity_error(const Matrix &m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

/// max |<v_i|v_j> - delta_ij| over the columns of `frame`.
inline double orthonormality_error(const Matrix &frame) {
    const Index k = frame.cols();
    return (frame.adjoint() * frame - Matrix::Identity(k, k)).cwiseAbs().maxCoeff();
}

/// Ordered orthonormal basis of C^n, stored as the unitary whose columns are
/// the basis vectors.
class OrthonormalBasis {
   public:
    static OrthonormalBasis from_unitary(Matrix u, const Tolerances &tol = {}) {
        detail::require_square(u, "basis");
        const double err = orthonormality_error(u);
        if (!(err <= tol.ortho)) {
            throw Error(ErrorCode::NotOrthonormal,
                        "basis vectors are not orthonormal: max |<v_i|v_j> - delta_ij| = " + detail::fmt(err));
        }
        return OrthonormalBasis(std::move(u));
    }

    static OrthonormalBasis standard(Index n) { return OrthonormalBasis(Matrix::Identity(n, n)); }

    Index dim() const { return unitary_.rows(); }
    const Matrix &unitary() const { return unitary_; }
    Vector vector(Index i) const { return unitary_.col(i); }

   private:
    explicit OrthonormalBasis(Matrix u) : unitary_(std::move(u)) {}

    Matrix unitary_;
};

struct Eigensystem {
    RealVector spectrum;  // ascending
    OrthonormalBasis eigenbasis;
};

/// Eigendecomposition of a Hermitian matrix (only the lower triangle is read).
/// For degenerate spectra the basis is whichever one the solver returns.
inline Eigensystem hermitian_eigendecomposition(const Matrix &a) {
    detail::require_square(a, "operator");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
    }
    return Eigensystem{solver.eigenvalues(), OrthonormalBasis::from_unitary(solver.eigenvectors())};
}

/// Hermitian matrix together with its spectrum and an eigenbasis.
class HermitianObservable {
   public:
    static HermitianObservable from_matrix(Matrix a, const Tolerances &tol = {}) {
        detail::require_square(a, "observable");
        const double herr = hermiticity_error(a);
        if (!(herr <= tol.herm)) {
            throw Error(ErrorCode::NotHermitian, "observable is not Hermitian: max |a_ij - conj(a_ji)| = " +
                                                     detail::fmt(herr));
        }
        Matrix sym = (a + a.adjoint()) / 2.0;
        Eigensystem es = hermitian_eigendecomposition(sym);
        const Matrix &v = es.eigenbasis.unitary();
        const double rerr = (v * es.spectrum.cast<Complex>().asDiagonal() * v.adjoint() - sym).cwiseAbs().maxCoeff();
        if (!(rerr <= tol.recon(sym.rows()))) {
            throw Error(ErrorCode::ConvergenceFailure,
                        "eigendecomposition reconstruction error " + detail::fmt(rerr) + " exceeds tolerance");
        }
        return HermitianObservable(std::move(sym), std::move(es));
    }

    Index dim() const { return matrix_.rows(); }
    const Matrix &matrix() const { return matrix_; }
    const RealVector &spectrum() const { return eig_.spectrum; }
    const OrthonormalBasis &eigenbasis() const { return eig_.eigenbasis; }
    const Eigensystem &eigensystem() const { return eig_; }

   private:
    HermitianObservable(Matrix m, Eigensystem e) : matrix_(std::move(m)), eig_(std::move(e)) {}

    Matrix matrix_;
    Eigensystem eig_;
};

inline Eigensystem hermitian_eigendecomposition(const HermitianObservable &a) { return a.eigensystem(); }

class DensityMatrix;
DensityMatrix validate_density(Matrix m, const Tolerances &tol);

/// Hermitian, positive semidefinite, unit-trace matrix. Only obtainable via
/// validate_density(), so every instance satisfies the invariants.
class DensityMatrix {
   public:
    Index dim() const { return matrix_.rows(); }
    const Matrix &matrix() const { return matrix_; }
    const RealVector &spectrum() const { return eig_.spectrum; }
    const OrthonormalBasis &eigenbasis() const { return eig_.eigenbasis; }

   private:
    friend DensityMatrix validate_density(Matrix m, const Tolerances &tol);
    DensityMatrix(Matrix m, Eigensystem e) : matrix_(std::move(m)), eig_(std::move(e)) {}

    Matrix matrix_;
    Eigensystem eig_;
};

/// Checks Hermiticity, unit trace and positivity (in that order) and returns
/// the Hermitian-symmetrized state.
inline DensityMatrix validate_density(Matrix m, const Tolerances &tol = {}) {
    detail::require_square(m, "density matrix");
    const double herr = hermiticity_error(m);
    if (!(herr <= tol.herm)) {
        throw Error(ErrorCode::NotHermitian,
                    "density matrix is not Hermitian: max |m_ij - conj(m_ji)| = " + detail::fmt(herr));
    }
    const double terr = std::abs(m.trace() - Complex(1.0, 0.0));
    if (!(terr <= tol.trace)) {
        throw Error(ErrorCode::TraceNotOne, "density matrix trace is " + detail::fmt(m.trace().real()) +
                                                ", |tr - 1| = " + detail::fmt(terr));
    }
    Matrix sym = (m + m.adjoint()) / 2.0;
    Eigensystem es = hermitian_eigendecomposition(sym);
    const double lmin = es.spectrum(0);
    if (!(lmin >= -tol.psd)) {
        throw Error(ErrorCode::NotPSD, "density matrix is not positive semidefinite: smallest eigenvalue " +
                                           detail::fmt(lmin));
    }
    return DensityMatrix(std::move(sym), std::move(es));
}

/// k orthonormal vectors of C^n spanning a subspace F.
class Subspace {
   public:
    static Subspace from_frame(Matrix frame, const Tolerances &tol = {}) {
        if (frame.cols() == 0 || frame.cols() > frame.rows()) {
            throw Error(ErrorCode::InvalidArgument, "subspace frame must have 1 <= k <= n columns");
        }
        const double err = orthonormality_error(frame);
        if (!(err <= tol.ortho)) {
            throw Error(ErrorCode::NotOrthonormal, "subspace frame is not orthonormal: error " + detail::fmt(err));
        }
        return Subspace(std::move(frame));
    }

    Index ambient_dim() const { return frame_.rows(); }
    Index dim() const { return frame_.cols(); }
    const Matrix &frame() const { return frame_; }
    Matrix projector() const { return frame_ * frame_.adjoint(); }

   private:
    explicit Subspace(Matrix f) : frame_(std::move(f)) {}

    Matrix frame_;
};

/// Largest singular value.
inline double operator_norm(const Matrix &m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

/// -sum l ln l in nats, with 0 ln 0 = 0 and eigenvalues clamped to [0, 1].
inline double von_neumann_entropy(const DensityMatrix &rho) {
    double s = 0.0;
    for (double l : rho.spectrum()) {
        l = std::clamp(l, 0.0, 1.0);
        if (l > 0.0) s -= l * std::log(l);
    }
    return std::max(s, 0.0);
}

/// tr(rho^2), evaluated as the squared Frobenius norm.
inline double purity(const DensityMatrix &rho) { return rho.matrix().squaredNorm(); }

}  // namespace qcoh
