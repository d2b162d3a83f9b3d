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

#include "holoest/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "holoest/errors.hpp"

namespace holoest
{
    namespace
    {
        constexpr double hermitian_tolerance = 1e-10;
        constexpr double orthonormal_tolerance = 1e-8;

        bool is_real(const CMatrix &A)
        {
            for (Index j = 0; j < A.cols(); ++j)
                for (Index i = 0; i < A.rows(); ++i)
                    if (A(i, j).imag() != 0.0)
                        return false;
            return true;
        }

        void check_hermitian(const CMatrix &A, const char *who)
        {
            if (A.rows() != A.cols())
                throw ShapeError(std::string(who) + ": matrix is not square");
            const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
            if (A.size() > 0 && hermitian_defect(A) > hermitian_tolerance * scale)
                throw ShapeError(std::string(who) + ": matrix is not Hermitian");
        }

        // Make the largest-magnitude entry real positive. The first entry within
        // a relative 1e-12 of the maximum is used so that ties resolve the same
        // way on every run.
        void normalize_phase(Eigen::Ref<CVector> v)
        {
            if (v.size() == 0)
                return;
            const double vmax = v.cwiseAbs().maxCoeff();
            if (vmax == 0.0)
                return;
            Index pivot = 0;
            for (Index i = 0; i < v.size(); ++i)
                if (std::abs(v(i)) >= vmax * (1.0 - 1e-12))
                {
                    pivot = i;
                    break;
                }
            const cdouble phase = std::conj(v(pivot)) / std::abs(v(pivot));
            v *= phase;
            v(pivot) = cdouble(v(pivot).real(), 0.0);
        }

        bool lexicographic_less(const CVector &a, const CVector &b)
        {
            for (Index i = 0; i < a.size(); ++i)
            {
                if (a(i).real() != b(i).real())
                    return a(i).real() < b(i).real();
                if (a(i).imag() != b(i).imag())
                    return a(i).imag() < b(i).imag();
            }
            return false;
        }
    }

    Eigendecomposition ordered_eig(const RVector &values, CMatrix vectors)
    {
        const Index M = values.size();
        Eigendecomposition out;
        for (Index j = 0; j < M; ++j)
            normalize_phase(vectors.col(j));

        std::vector<Index> order(static_cast<size_t>(M));
        std::iota(order.begin(), order.end(), Index{0});
        std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return values(a) > values(b); });

        // Within runs of near-equal values order eigenvectors lexicographically.
        const double scale = M > 0 ? std::max(std::abs(values.maxCoeff()), std::abs(values.minCoeff())) : 0.0;
        const double tie = 1e-13 * (scale > 0.0 ? scale : 1.0);
        size_t start = 0;
        while (start < order.size())
        {
            size_t stop = start + 1;
            while (stop < order.size() && values(order[stop - 1]) - values(order[stop]) <= tie)
                ++stop;
            if (stop - start > 1)
                std::stable_sort(order.begin() + static_cast<long>(start), order.begin() + static_cast<long>(stop),
                                 [&](Index a, Index b)
                                 { return lexicographic_less(vectors.col(a), vectors.col(b)); });
            start = stop;
        }

        out.basis.resize(vectors.rows(), M);
        out.values.resize(M);
        for (Index j = 0; j < M; ++j)
        {
            out.basis.col(j) = vectors.col(order[static_cast<size_t>(j)]);
            out.values(j) = values(order[static_cast<size_t>(j)]);
        }
        return out;
    }

    Eigendecomposition factor_eig(const CMatrix &F)
    {
        const Index M = F.rows();
        if (M == 0)
            return {CMatrix(0, 0), RVector(0)};
        // Pad to a square factor so the left singular vectors span the whole space.
        CMatrix G = CMatrix::Zero(M, std::max(M, F.cols()));
        G.leftCols(F.cols()) = F;
        Eigen::JacobiSVD<CMatrix> svd(G, Eigen::ComputeFullU);
        const RVector values = svd.singularValues().head(M).cwiseAbs2();
        return ordered_eig(values, svd.matrixU());
    }

    double hermitian_defect(const CMatrix &A)
    {
        if (A.rows() != A.cols())
            throw ShapeError("hermitian_defect: matrix is not square");
        if (A.size() == 0)
            return 0.0;
        return (A - A.adjoint()).cwiseAbs().maxCoeff();
    }

    Eigendecomposition hermitian_eig(const CMatrix &A)
    {
        check_hermitian(A, "hermitian_eig");
        const Index M = A.rows();
        Eigendecomposition out;
        if (M == 0)
        {
            out.basis = CMatrix(0, 0);
            out.values = RVector(0);
            return out;
        }

        const CMatrix Ah = 0.5 * (A + A.adjoint());
        RVector values;
        CMatrix vectors;
        if (is_real(Ah))
        {
            Eigen::SelfAdjointEigenSolver<RMatrix> solver(Ah.real());
            if (solver.info() != Eigen::Success)
                throw DomainError("hermitian_eig: eigensolver did not converge");
            values = solver.eigenvalues();
            vectors = solver.eigenvectors().cast<cdouble>();
        }
        else
        {
            Eigen::SelfAdjointEigenSolver<CMatrix> solver(Ah);
            if (solver.info() != Eigen::Success)
                throw DomainError("hermitian_eig: eigensolver did not converge");
            values = solver.eigenvalues();
            vectors = solver.eigenvectors();
        }

        return ordered_eig(values, vectors);
    }

    std::string to_string(CovarianceKind kind)
    {
        switch (kind)
        {
        case CovarianceKind::isotropic:
            return "isotropic";
        case CovarianceKind::cluster:
            return "cluster";
        case CovarianceKind::effective:
            return "effective";
        case CovarianceKind::custom:
            return "custom";
        }
        return "custom";
    }

    CovarianceMatrix::CovarianceMatrix(const CMatrix &entries, CovarianceKind kind, double rel_tol) : kind_(kind)
    {
        check_hermitian(entries, "CovarianceMatrix");
        entries_ = 0.5 * (entries + entries.adjoint());
        if (kind == CovarianceKind::isotropic)
            entries_ = entries_.real().cast<cdouble>();
        eig_ = hermitian_eig(entries_);
        clamp(rel_tol);
    }

    CovarianceMatrix CovarianceMatrix::from_factor(const CMatrix &F, CovarianceKind kind, double rel_tol)
    {
        CovarianceMatrix out;
        out.kind_ = kind;
        out.entries_ = F * F.adjoint();
        out.entries_ = 0.5 * (out.entries_ + out.entries_.adjoint()).eval();
        if (kind == CovarianceKind::isotropic)
            out.entries_ = out.entries_.real().cast<cdouble>();
        out.eig_ = factor_eig(F);
        out.clamp(rel_tol);
        return out;
    }

    void CovarianceMatrix::clamp(double rel_tol)
    {
        const Index M = entries_.rows();
        if (M == 0)
            return;
        const CovarianceKind kind = kind_;

        const double lambda1 = eig_.values(0);
        if (lambda1 <= 0.0)
        {
            // Nothing positive survives: the clamped matrix is zero.
            min_relative_eigenvalue_ = lambda1 == 0.0 ? 0.0 : -1.0;
            entries_.setZero();
            eig_.values.setZero();
            return;
        }
        min_relative_eigenvalue_ = eig_.values(M - 1) / lambda1;

        const double floor = rel_tol * lambda1;
        Index keep = M;
        while (keep > 0 && eig_.values(keep - 1) < floor)
            --keep;
        if (keep < M)
        {
            const auto U = eig_.basis.rightCols(M - keep);
            const RVector lam = eig_.values.tail(M - keep);
            entries_ -= U * lam.cast<cdouble>().asDiagonal() * U.adjoint();
            entries_ = 0.5 * (entries_ + entries_.adjoint()).eval();
            if (kind == CovarianceKind::isotropic)
                entries_ = entries_.real().cast<cdouble>();
            eig_.values.tail(M - keep).setZero();
        }
    }

    Index CovarianceMatrix::rank(double rel_tol) const
    {
        const double lambda1 = largest_eigenvalue();
        if (lambda1 <= 0.0)
            return 0;
        Index r = 0;
        while (r < eig_.values.size() && eig_.values(r) > rel_tol * lambda1)
            ++r;
        return r;
    }

    CovarianceMatrix psd_clamp(const CMatrix &A, double rel_tol)
    {
        return CovarianceMatrix(A, CovarianceKind::custom, rel_tol);
    }

    CMatrix psd_sqrt(const CovarianceMatrix &A)
    {
        const auto &e = A.eig();
        const RVector root = e.values.cwiseMax(0.0).cwiseSqrt();
        CMatrix S = e.basis * root.cast<cdouble>().asDiagonal() * e.basis.adjoint();
        S = 0.5 * (S + S.adjoint()).eval();
        if (A.kind() == CovarianceKind::isotropic)
            S = S.real().cast<cdouble>();
        return S;
    }

    CMatrix psd_sqrt(const CMatrix &A)
    {
        const CovarianceMatrix cov(A);
        if (cov.min_relative_eigenvalue() < -kClampTolerance)
            throw DomainError("psd_sqrt: matrix has a negative eigenvalue beyond the clamp tolerance");
        return psd_sqrt(cov);
    }

    CMatrix principal_subspace(const CovarianceMatrix &A, double rel_rank_tol)
    {
        return A.eig().basis.leftCols(A.rank(rel_rank_tol));
    }

    CMatrix column_space(const CMatrix &F, double rel_rank_tol)
    {
        const CovarianceMatrix cov = CovarianceMatrix::from_factor(F, CovarianceKind::custom, 0.0);
        return principal_subspace(cov, rel_rank_tol);
    }

    double spectral_norm(const CMatrix &A)
    {
        if (A.size() == 0)
            return 0.0;
        Eigen::JacobiSVD<CMatrix> svd(A);
        return svd.singularValues()(0);
    }

    ContainmentResult subspace_contained(const CMatrix &small, const CMatrix &big, double tol)
    {
        if (small.rows() != big.rows() && small.cols() > 0 && big.cols() > 0)
            throw ShapeError("subspace_contained: row counts differ");
        for (const CMatrix *B : {&small, &big})
        {
            if (B->cols() == 0)
                continue;
            const CMatrix G = B->adjoint() * *B;
            const double defect = (G - CMatrix::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
            if (defect > orthonormal_tolerance)
                throw ShapeError("subspace_contained: basis is not orthonormal");
        }
        if (small.cols() == 0)
            return {true, 0.0};
        if (big.cols() == 0)
            return {false, 1.0};
        const CMatrix residual = small - big * (big.adjoint() * small);
        const double r = spectral_norm(residual);
        return {r < tol, r};
    }
}
