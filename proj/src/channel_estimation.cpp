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

#include "holoest/channel_estimation.hpp"

#include <algorithm>
#include <cmath>

#include "holoest/errors.hpp"

namespace holoest
{
    std::string to_string(EstimatorKind kind)
    {
        switch (kind)
        {
        case EstimatorKind::mmse_true:
            return "mmse_true";
        case EstimatorKind::mmse_coupling_aware_iso:
            return "mmse_coupling_aware_iso";
        case EstimatorKind::mmse_iso:
            return "mmse_iso";
        case EstimatorKind::ls:
            return "ls";
        }
        return "ls";
    }

    EstimatorKind parse_estimator_kind(const std::string &s)
    {
        for (auto k : all_estimator_kinds())
            if (to_string(k) == s)
                return k;
        throw DomainError("unknown estimator '" + s + "'");
    }

    std::vector<EstimatorKind> all_estimator_kinds()
    {
        return {EstimatorKind::mmse_true, EstimatorKind::mmse_coupling_aware_iso, EstimatorKind::mmse_iso,
                EstimatorKind::ls};
    }

    CVector sample_channel(const CMatrix &R_sqrt, RandomStream &rng)
    {
        CVector h_iid(R_sqrt.cols());
        rng.fill_complex_normal(h_iid);
        return R_sqrt * h_iid;
    }

    PilotObservation observe_pilot(const CVector &h, double rho, RandomStream &rng)
    {
        if (!(rho > 0.0))
            throw DomainError("observe_pilot: rho must be positive");
        CVector n(h.size());
        rng.fill_complex_normal(n);
        return {std::sqrt(rho) * h + n, rho, rng.seed()};
    }

    EstimatorSpec mmse_filter(const CovarianceMatrix &R_hat, double rho, EstimatorKind kind)
    {
        if (!(rho > 0.0))
            throw DomainError("mmse_filter: rho must be positive");
        if (kind == EstimatorKind::ls)
            throw DomainError("mmse_filter: ls is not an MMSE-structured estimator");
        const auto &e = R_hat.eig();
        const double s = std::sqrt(rho);
        RVector g(e.values.size());
        for (Index i = 0; i < g.size(); ++i)
        {
            const double lam = std::max(e.values(i), 0.0);
            g(i) = s * lam / (rho * lam + 1.0);
        }
        CMatrix W = e.basis * g.cast<cdouble>().asDiagonal() * e.basis.adjoint();
        W = 0.5 * (W + W.adjoint()).eval();
        return {kind, W, rho, R_hat};
    }

    EstimatorSpec ls_filter(double rho, Index m)
    {
        if (!(rho > 0.0))
            throw DomainError("ls_filter: rho must be positive");
        if (m < 1)
            throw DomainError("ls_filter: dimension must be positive");
        const CMatrix W = CMatrix::Identity(m, m) * cdouble(1.0 / std::sqrt(rho));
        return {EstimatorKind::ls, W, rho, std::nullopt};
    }

    CVector estimate(const EstimatorSpec &spec, const PilotObservation &obs)
    {
        if (spec.filter.cols() != obs.y.size())
            throw ShapeError("estimate: dimension mismatch");
        return spec.filter * obs.y;
    }

    CMatrix error_covariance(const EstimatorSpec &spec, const CovarianceMatrix &R_mc)
    {
        const Index M = R_mc.size();
        if (spec.filter.rows() != M || spec.filter.cols() != M)
            throw ShapeError("error_covariance: dimension mismatch");
        const CMatrix &W = spec.filter;
        const CMatrix &R = R_mc.entries();
        const double s = std::sqrt(spec.rho);
        const CMatrix Ry = spec.rho * R + CMatrix::Identity(M, M);
        const CMatrix Rhy = s * R;
        CMatrix Re = W * Ry * W.adjoint() - Rhy * W.adjoint() + R - W * Rhy.adjoint();
        return 0.5 * (Re + Re.adjoint());
    }

    double analytic_mse(const EstimatorSpec &spec, const CovarianceMatrix &R_mc)
    {
        return error_covariance(spec, R_mc).trace().real();
    }

    double mse_eigen_expansion(const EstimatorSpec &spec, const CovarianceMatrix &R_mc)
    {
        const Index M = R_mc.size();
        if (spec.filter.rows() != M || spec.filter.cols() != M)
            throw ShapeError("mse_eigen_expansion: dimension mismatch");
        const double scale = std::max(1.0, spec.filter.cwiseAbs().maxCoeff());
        if (hermitian_defect(spec.filter) > 1e-10 * scale)
            throw DomainError("mse_eigen_expansion: filter is not Hermitian");

        const Eigendecomposition w = hermitian_eig(spec.filter);
        const Eigendecomposition &h = R_mc.eig();
        const RMatrix overlap = (w.basis.adjoint() * h.basis).cwiseAbs2();
        const double s = std::sqrt(spec.rho);
        double sum = 0.0;
        for (Index l = 0; l < M; ++l)
        {
            const double lh = h.values(l);
            double inner = 0.0;
            for (Index k = 0; k < M; ++k)
            {
                const double lw = w.values(k);
                const double beta = (spec.rho * lh + 1.0) * lw * lw - 2.0 * s * lh * lw;
                inner += beta * overlap(k, l);
            }
            sum += inner + lh;
        }
        return sum;
    }

    double mse_mismatched_beta(double lambda_h, double lambda_w, double rho)
    {
        if (!(rho > 0.0))
            throw DomainError("mse_mismatched_beta: rho must be positive");
        const double inv = 1.0 / rho;
        const double den = lambda_w + inv;
        return (lambda_h + inv) / (den * den) * lambda_w * lambda_w - 2.0 * lambda_h * lambda_w / den;
    }

    double mse_prior_expansion(const EstimatorSpec &spec, const CovarianceMatrix &R_mc)
    {
        if (!spec.prior)
            throw DomainError("mse_prior_expansion: estimator has no prior covariance");
        const Eigendecomposition &w = spec.prior->eig();
        const Eigendecomposition &h = R_mc.eig();
        if (w.basis.rows() != h.basis.rows())
            throw ShapeError("mse_prior_expansion: dimension mismatch");
        const RMatrix overlap = (w.basis.adjoint() * h.basis).cwiseAbs2();
        const Index M = h.values.size();
        double sum = 0.0;
        for (Index l = 0; l < M; ++l)
        {
            double inner = 0.0;
            for (Index k = 0; k < M; ++k)
                inner += mse_mismatched_beta(h.values(l), std::max(w.values(k), 0.0), spec.rho) * overlap(k, l);
            sum += inner + h.values(l);
        }
        return sum;
    }

    ColumnSpaceReport verify_column_space(const EstimatorSpec &spec, const CMatrix &expected_factor, double tol,
                                          double expected_rank_tol, std::uint64_t seed, int batch)
    {
        const Index M = spec.filter.rows();
        if (expected_factor.rows() != M)
            throw ShapeError("verify_column_space: factor has the wrong number of rows");

        CMatrix filter_basis;
        if (spec.prior)
        {
            // W shares the prior's eigenvectors and keeps exactly the prior's
            // support, so the rank decision is made on the prior's spectrum.
            filter_basis = principal_subspace(*spec.prior, kRankTolerance);
        }
        else
        {
            filter_basis = principal_subspace(CovarianceMatrix(spec.filter), kRankTolerance);
        }
        const CMatrix expected = column_space(expected_factor, expected_rank_tol);

        const ContainmentResult c = subspace_contained(filter_basis, expected, tol);

        RandomStream rng(seed);
        CMatrix Y(M, batch);
        rng.fill_complex_normal(Y);
        const CMatrix E = spec.filter * Y;
        double worst = 0.0;
        for (Index j = 0; j < E.cols(); ++j)
        {
            const double norm = E.col(j).norm();
            if (norm == 0.0)
                continue;
            const CVector res = E.col(j) - expected * (expected.adjoint() * E.col(j));
            worst = std::max(worst, res.norm() / norm);
        }
        return {c.contained && worst < tol, c.residual, worst, filter_basis.cols(), expected.cols()};
    }
}
