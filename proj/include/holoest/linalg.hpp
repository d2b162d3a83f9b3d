// SPDX-License-Identifier: Apache-2.0
//
// holoest - channel estimation for holographic MIMO arrays with mutual coupling
// Copyright (C) 2026 The holoest authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef HOLOEST_LINALG_HPP
#define HOLOEST_LINALG_HPP

#include <string>

#include "holoest/types.hpp"

namespace holoest
{
    struct Eigendecomposition
    {
        CMatrix basis;  // orthonormal columns
        RVector values; // nonincreasing
    };

    /// Left singular vectors and squared singular values of F, ordered like hermitian_eig.
    Eigendecomposition factor_eig(const CMatrix &F);

    /// Largest |A(i,j) - conj(A(j,i))|.
    double hermitian_defect(const CMatrix &A);

    /// Eigendecomposition of a Hermitian matrix with deterministic ordering:
    /// values nonincreasing, each eigenvector scaled so its largest-magnitude
    /// entry is real positive, near-equal values ordered lexicographically by
    /// eigenvector. Throws ShapeError for non-square or non-Hermitian input
    /// (defect above 1e-10 relative to the largest entry).
    Eigendecomposition hermitian_eig(const CMatrix &A);

    enum class CovarianceKind
    {
        isotropic,
        cluster,
        effective,
        custom
    };

    std::string to_string(CovarianceKind kind);

    /// Hermitian PSD matrix with its eigendecomposition. Construction clamps
    /// eigenvalues below rel_tol * lambda_1 to zero and removes exactly those
    /// components from the entries, so an already well-conditioned input is kept
    /// bit-for-bit.
    class CovarianceMatrix
    {
    public:
        CovarianceMatrix() = default;
        explicit CovarianceMatrix(const CMatrix &entries, CovarianceKind kind = CovarianceKind::custom,
                                  double rel_tol = kClampTolerance);

        /// F F^H with the eigendecomposition taken from the singular value
        /// decomposition of F, which resolves small eigenvalues far better than
        /// decomposing the product.
        static CovarianceMatrix from_factor(const CMatrix &F, CovarianceKind kind = CovarianceKind::custom,
                                            double rel_tol = kClampTolerance);

        const CMatrix &entries() const { return entries_; }
        CovarianceKind kind() const { return kind_; }
        const Eigendecomposition &eig() const { return eig_; }
        Index size() const { return entries_.rows(); }

        /// Smallest eigenvalue seen before clamping, relative to lambda_1.
        double min_relative_eigenvalue() const { return min_relative_eigenvalue_; }

        double trace() const { return entries_.trace().real(); }
        double largest_eigenvalue() const { return eig_.values.size() ? eig_.values(0) : 0.0; }

        /// Number of eigenvalues above rel_tol * lambda_1.
        Index rank(double rel_tol = kRankTolerance) const;

    private:
        void clamp(double rel_tol);

        CMatrix entries_;
        CovarianceKind kind_ = CovarianceKind::custom;
        Eigendecomposition eig_;
        double min_relative_eigenvalue_ = 0.0;
    };

    /// Clamp the spectrum of a Hermitian matrix: ||A - clamp(A)||_F <= rel_tol lambda_1 sqrt(M).
    CovarianceMatrix psd_clamp(const CMatrix &A, double rel_tol = kClampTolerance);

    /// Unique PSD square root U sqrt(Lambda) U^H.
    CMatrix psd_sqrt(const CovarianceMatrix &A);

    /// Square root of a raw Hermitian matrix. Throws DomainError if an eigenvalue
    /// is below -kClampTolerance * lambda_1.
    CMatrix psd_sqrt(const CMatrix &A);

    /// Eigenvectors whose eigenvalue exceeds rel_rank_tol * lambda_1 (M x r).
    CMatrix principal_subspace(const CovarianceMatrix &A, double rel_rank_tol = kRankTolerance);

    /// Orthonormal basis of the column space of an arbitrary M x n matrix: left
    /// singular vectors whose squared singular value exceeds rel_rank_tol times
    /// the largest one.
    CMatrix column_space(const CMatrix &F, double rel_rank_tol = kRankTolerance);

    struct ContainmentResult
    {
        bool contained;
        double residual; // ||(I - B_big B_big^H) B_small||_2
    };

    /// Throws ShapeError if either basis is not orthonormal or the row counts differ.
    ContainmentResult subspace_contained(const CMatrix &small, const CMatrix &big, double tol);

    /// Largest singular value.
    double spectral_norm(const CMatrix &A);
}

#endif
