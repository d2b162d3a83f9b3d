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

#ifndef HOLOEST_CHANNEL_ESTIMATION_HPP
#define HOLOEST_CHANNEL_ESTIMATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holoest/linalg.hpp"
#include "holoest/random.hpp"

namespace holoest
{
    enum class EstimatorKind
    {
        mmse_true,               // prior C^1/2 R C^1/2
        mmse_coupling_aware_iso, // prior C^1/2 R_iso C^1/2
        mmse_iso,                // prior R_iso
        ls
    };

    std::string to_string(EstimatorKind kind);
    EstimatorKind parse_estimator_kind(const std::string &s);
    std::vector<EstimatorKind> all_estimator_kinds();

    struct EstimatorSpec
    {
        EstimatorKind kind;
        CMatrix filter; // W
        double rho;     // linear pilot SNR
        std::optional<CovarianceMatrix> prior; // R_hat for the MMSE kinds
    };

    struct PilotObservation
    {
        CVector y;
        double rho;
        std::uint64_t noise_seed;
    };

    /// h = R_sqrt h_iid.
    CVector sample_channel(const CMatrix &R_sqrt, RandomStream &rng);

    /// y = sqrt(rho) h + n. Throws DomainError for rho <= 0.
    PilotObservation observe_pilot(const CVector &h, double rho, RandomStream &rng);

    /// W = sqrt(rho) R_hat (rho R_hat + I)^-1 evaluated per eigenvalue.
    EstimatorSpec mmse_filter(const CovarianceMatrix &R_hat, double rho,
                              EstimatorKind kind = EstimatorKind::mmse_true);

    /// W = I / sqrt(rho).
    EstimatorSpec ls_filter(double rho, Index m);

    /// W y. Throws ShapeError on a dimension mismatch.
    CVector estimate(const EstimatorSpec &spec, const PilotObservation &obs);

    /// R_e = W R_y W^H - R_hy W^H + R_mc - W R_hy^H with R_y = rho R_mc + I and R_hy = sqrt(rho) R_mc.
    CMatrix error_covariance(const EstimatorSpec &spec, const CovarianceMatrix &R_mc);

    /// tr(R_e).
    double analytic_mse(const EstimatorSpec &spec, const CovarianceMatrix &R_mc);

    /// MSE = sum_k sum_l beta_kl |<u_w,k, u_h,l>|^2 + sum_l lambda_h,l with
    /// beta_kl = (rho lambda_h,l + 1) lambda_w,k^2 - 2 sqrt(rho) lambda_h,l lambda_w,k.
    /// Throws DomainError when W is not Hermitian.
    double mse_eigen_expansion(const EstimatorSpec &spec, const CovarianceMatrix &R_mc);

    /// beta for an MMSE-structured filter whose prior has eigenvalue lambda_w.
    double mse_mismatched_beta(double lambda_h, double lambda_w_source, double rho);

    /// The same expansion written in the prior's eigenbasis with mse_mismatched_beta.
    /// Throws DomainError when spec has no prior.
    double mse_prior_expansion(const EstimatorSpec &spec, const CovarianceMatrix &R_mc);

    struct ColumnSpaceReport
    {
        bool contained;
        double filter_residual;   // span(W) against span(expected_factor)
        double estimate_residual; // worst relative residual of W y over a batch of y
        Index filter_rank;
        Index expected_rank;
    };

    /// Checks that span(W) and a batch of estimates W y lie in span(expected_factor).
    /// The filter basis is the prior's principal subspace at kRankTolerance (the
    /// filter itself for ls); the expected basis is taken at
    /// expected_rank_tol (finer, so directions W keeps are not cut away).
    ColumnSpaceReport verify_column_space(const EstimatorSpec &spec, const CMatrix &expected_factor, double tol,
                                          double expected_rank_tol = 1e-12, std::uint64_t seed = 1, int batch = 32);
}

#endif
