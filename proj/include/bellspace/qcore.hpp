// Copyright 2026 The bellspace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex linear algebra for one and two qubits.
//
// Everything here is templated on the real scalar type and works on fixed-size
// Eigen matrices. The `double` aliases at the bottom are what the rest of the
// library uses.
//
// Pauli convention: sigma_1 = X (real off-diagonal), sigma_2 = Y (+i in the
// lower-left entry), sigma_3 = Z = diag(1, -1). A Hermitian 2x2 operator is
// written op = c0 * sigma_0 + v . sigma, so a density matrix has c0 = 1/2 and
// v = s / 2 where s is its Bloch vector.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "bellspace/errors.hpp"

namespace bellspace {

namespace tol {
/// Absolute tolerance for validity checks (Hermiticity, trace, positivity).
inline constexpr double kValidity = 1e-10;
/// Absolute tolerance for algebraic identities and round-trips.
inline constexpr double kAlgebra = 1e-12;
}  // namespace tol

template <typename Scalar>
using QubitOperatorT = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using TwoQubitOperatorT = Eigen::Matrix<std::complex<Scalar>, 4, 4>;
template <typename Scalar>
using QubitKetT = Eigen::Matrix<std::complex<Scalar>, 2, 1>;
template <typename Scalar>
using TwoQubitKetT = Eigen::Matrix<std::complex<Scalar>, 4, 1>;
template <typename Scalar>
using BlochVectorT = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
struct BlochDecompositionT {
    Scalar c0;
    BlochVectorT<Scalar> v;
};

/// sigma_0 .. sigma_3.
template <typename Scalar>
QubitOperatorT<Scalar> pauli(int index) {
    using C = std::complex<Scalar>;
    QubitOperatorT<Scalar> m;
    switch (index) {
        case 0:
            m << C(1), C(0), C(0), C(1);
            break;
        case 1:
            m << C(0), C(1), C(1), C(0);
            break;
        case 2:
            m << C(0), C(0, -1), C(0, 1), C(0);
            break;
        case 3:
            m << C(1), C(0), C(0), C(-1);
            break;
        default:
            throw std::out_of_range("pauli index must be in [0, 3], got " + std::to_string(index));
    }
    return m;
}

/// v . sigma
template <typename Scalar>
QubitOperatorT<Scalar> dot_sigma(const BlochVectorT<Scalar> &v) {
    using C = std::complex<Scalar>;
    QubitOperatorT<Scalar> m;
    m << C(v.z()), C(v.x(), -v.y()), C(v.x(), v.y()), C(-v.z());
    return m;
}

template <typename Scalar>
QubitOperatorT<Scalar> op_from_bloch(Scalar c0, const BlochVectorT<Scalar> &v) {
    return QubitOperatorT<Scalar>::Identity() * std::complex<Scalar>(c0) + dot_sigma(v);
}

/// Largest elementwise |op - op^dagger|.
template <typename Derived>
typename Derived::RealScalar hermiticity_residual(const Eigen::MatrixBase<Derived> &op) {
    return (op - op.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Scalar>
BlochDecompositionT<Scalar> bloch_decompose(const QubitOperatorT<Scalar> &op) {
    if (hermiticity_residual(op) > Scalar(tol::kValidity)) {
        throw DomainError("bloch_decompose: operator is not Hermitian");
    }
    BlochDecompositionT<Scalar> out;
    out.c0 = (op(0, 0).real() + op(1, 1).real()) / Scalar(2);
    // op(1,0) = vx + i vy, op(0,1) = vx - i vy; averaging symmetrizes round-off.
    out.v.x() = (op(1, 0).real() + op(0, 1).real()) / Scalar(2);
    out.v.y() = (op(1, 0).imag() - op(0, 1).imag()) / Scalar(2);
    out.v.z() = (op(0, 0).real() - op(1, 1).real()) / Scalar(2);
    return out;
}

/// Kronecker product a (x) b, with `a` acting on the first (most significant) qubit.
template <typename Scalar>
TwoQubitOperatorT<Scalar> tensor(const QubitOperatorT<Scalar> &a, const QubitOperatorT<Scalar> &b) {
    TwoQubitOperatorT<Scalar> out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.template block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return out;
}

template <typename Scalar>
TwoQubitKetT<Scalar> tensor(const QubitKetT<Scalar> &a, const QubitKetT<Scalar> &b) {
    TwoQubitKetT<Scalar> out;
    out << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    return out;
}

/// |ket><ket|, not normalized.
template <typename Derived>
auto outer(const Eigen::MatrixBase<Derived> &ket) {
    return (ket * ket.adjoint()).eval();
}

/// Re tr[rho op]. Both operands must have the same dimension.
template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar expectation(const Eigen::MatrixBase<DerivedA> &rho,
                                          const Eigen::MatrixBase<DerivedB> &op) {
    static_assert(DerivedA::RowsAtCompileTime == Eigen::Dynamic || DerivedB::RowsAtCompileTime == Eigen::Dynamic ||
                      DerivedA::RowsAtCompileTime == DerivedB::RowsAtCompileTime,
                  "expectation: dimension mismatch");
    if (rho.rows() != op.rows() || rho.cols() != op.cols() || rho.rows() != rho.cols()) {
        throw DomainError("expectation: dimension mismatch");
    }
    // tr[A B] = sum_ij A_ij B_ji
    return (rho.array() * op.transpose().array()).sum().real();
}

template <typename Scalar>
QubitOperatorT<Scalar> partial_trace_second(const TwoQubitOperatorT<Scalar> &rho) {
    QubitOperatorT<Scalar> out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
        }
    }
    return out;
}

template <typename Scalar>
QubitOperatorT<Scalar> partial_trace_first(const TwoQubitOperatorT<Scalar> &rho) {
    return rho.template block<2, 2>(0, 0) + rho.template block<2, 2>(2, 2);
}

/// Ascending eigenvalues of a Hermitian 2x2 matrix in closed form.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> hermitian_eigenvalues(const QubitOperatorT<Scalar> &op) {
    const Scalar mean = (op(0, 0).real() + op(1, 1).real()) / Scalar(2);
    const Scalar half_gap = (op(0, 0).real() - op(1, 1).real()) / Scalar(2);
    const std::complex<Scalar> off = (op(0, 1) + std::conj(op(1, 0))) / Scalar(2);
    const Scalar radius = std::hypot(half_gap, std::abs(off));
    return {mean - radius, mean + radius};
}

/// Ascending eigenvalues of a Hermitian 4x4 matrix (iterative tridiagonal QR).
template <typename Scalar>
Eigen::Matrix<Scalar, 4, 1> hermitian_eigenvalues(const TwoQubitOperatorT<Scalar> &op) {
    Eigen::SelfAdjointEigenSolver<TwoQubitOperatorT<Scalar>> solver(op, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

template <typename Scalar>
struct DensityReportT {
    Scalar hermiticity_residual = 0;
    Scalar trace_residual = 0;      // |tr op - 1|
    Scalar min_eigenvalue = 0;
    bool hermitian = false;
    bool unit_trace = false;
    bool positive = false;

    bool valid() const { return hermitian && unit_trace && positive; }

    std::string describe() const {
        if (valid()) {
            return "valid";
        }
        std::string out;
        auto add = [&out](const std::string &what) { out += (out.empty() ? "" : "; ") + what; };
        if (!hermitian) add("not Hermitian (residual " + std::to_string(hermiticity_residual) + ")");
        if (!unit_trace) add("trace != 1 (residual " + std::to_string(trace_residual) + ")");
        if (!positive) add("not positive semidefinite (min eigenvalue " + std::to_string(min_eigenvalue) + ")");
        return out;
    }
};

/// Hermiticity, unit trace and positivity at tolerance `tolerance`. Positivity
/// is evaluated on the Hermitian part so a failed Hermiticity check still yields
/// a meaningful spectrum.
template <typename Derived>
DensityReportT<typename Derived::RealScalar> validate_density(const Eigen::MatrixBase<Derived> &op,
                                                              double tolerance = tol::kValidity) {
    using Scalar = typename Derived::RealScalar;
    using Matrix = typename Derived::PlainObject;
    DensityReportT<Scalar> report;
    const Matrix m = op;
    report.hermiticity_residual = hermiticity_residual(m);
    report.hermitian = report.hermiticity_residual <= tolerance;
    report.trace_residual = std::abs(m.trace().real() - Scalar(1));
    report.unit_trace = report.trace_residual <= tolerance && std::abs(m.trace().imag()) <= tolerance;
    const Matrix herm = (m + m.adjoint()) / Scalar(2);
    report.min_eigenvalue = hermitian_eigenvalues<Scalar>(herm).minCoeff();
    report.positive = report.min_eigenvalue >= -tolerance;
    return report;
}

/// Bloch vector s of a qubit density matrix, rho = (sigma_0 + s . sigma) / 2.
template <typename Scalar>
BlochVectorT<Scalar> bloch_vector(const QubitOperatorT<Scalar> &rho) {
    return Scalar(2) * bloch_decompose(rho).v;
}

template <typename Scalar>
QubitOperatorT<Scalar> density_from_bloch(const BlochVectorT<Scalar> &s) {
    return op_from_bloch(Scalar(0.5), BlochVectorT<Scalar>(s / Scalar(2)));
}

using QubitOperator = QubitOperatorT<double>;
using TwoQubitOperator = TwoQubitOperatorT<double>;
using QubitKet = QubitKetT<double>;
using TwoQubitKet = TwoQubitKetT<double>;
using BlochVector = BlochVectorT<double>;
using BlochDecomposition = BlochDecompositionT<double>;
using DensityReport = DensityReportT<double>;
/// Composite-system density matrix, first qubit = subsystem A.
using TwoQubitState = TwoQubitOperator;

/// Throws DomainError unless |mu|^2 + |nu|^2 = 1 within `tolerance`.
inline void require_normalized(const QubitKet &ket, double tolerance = tol::kAlgebra) {
    const double norm2 = ket.squaredNorm();
    if (std::abs(norm2 - 1.0) > tolerance) {
        throw DomainError("pure state is not normalized: |mu|^2 + |nu|^2 = " + std::to_string(norm2));
    }
}

}  // namespace bellspace
