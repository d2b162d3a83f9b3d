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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "holoest/errors.hpp"
#include "holoest/linalg.hpp"
#include "holoest/random.hpp"

using namespace holoest;
using Catch::Matchers::WithinAbs;

namespace
{
    CMatrix random_matrix(Index rows, Index cols, std::uint64_t seed)
    {
        RandomStream rng(seed);
        CMatrix A(rows, cols);
        rng.fill_complex_normal(A);
        return A;
    }

    CMatrix random_hermitian(Index m, std::uint64_t seed)
    {
        const CMatrix A = random_matrix(m, m, seed);
        return 0.5 * (A + A.adjoint());
    }

    double max_abs(const CMatrix &A) { return A.size() ? A.cwiseAbs().maxCoeff() : 0.0; }
}

TEST_CASE("eigendecomposition ordering", "[linalg]")
{
    const Eigendecomposition id = hermitian_eig(CMatrix::Identity(4, 4));
    CHECK((id.values.array() == 1.0).all());

    CMatrix D = CMatrix::Zero(3, 3);
    D(0, 0) = 3.0;
    D(1, 1) = 1.0;
    D(2, 2) = 2.0;
    const Eigendecomposition e = hermitian_eig(D);
    CHECK(e.values(0) == 3.0);
    CHECK(e.values(1) == 2.0);
    CHECK(e.values(2) == 1.0);
    CHECK(std::abs(e.basis(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(e.basis(2, 1) - 1.0) < 1e-15);
}

TEST_CASE("eigendecomposition of random Hermitian matrices", "[linalg][property]")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
    {
        const CMatrix A = random_hermitian(12, seed);
        const Eigendecomposition e = hermitian_eig(A);
        const CMatrix U = e.basis;
        CHECK(max_abs(U.adjoint() * U - CMatrix::Identity(12, 12)) < 1e-10);
        const double scale = e.values.cwiseAbs().maxCoeff();
        CHECK(max_abs(U * e.values.cast<cdouble>().asDiagonal() * U.adjoint() - A) < 1e-10 * scale);
        for (Index i = 1; i < 12; ++i)
            CHECK(e.values(i) <= e.values(i - 1));
        for (Index j = 0; j < 12; ++j)
        {
            Index arg = 0;
            U.col(j).cwiseAbs().maxCoeff(&arg);
            CHECK(U(arg, j).imag() == 0.0);
            CHECK(U(arg, j).real() > 0.0);
        }
    }
}

TEST_CASE("eigendecomposition is deterministic", "[linalg][property]")
{
    const CMatrix A = random_hermitian(20, 99);
    const Eigendecomposition a = hermitian_eig(A), b = hermitian_eig(A);
    CHECK(a.values == b.values);
    CHECK(a.basis == b.basis);
}

TEST_CASE("eigendecomposition rejects non-Hermitian input", "[linalg]")
{
    CMatrix A = CMatrix::Identity(3, 3);
    A(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(A), ShapeError);
    CHECK_THROWS_AS(hermitian_eig(CMatrix::Zero(2, 3)), ShapeError);
    CHECK_THROWS_AS(CovarianceMatrix(A), ShapeError);
}

TEST_CASE("factor eigendecomposition agrees with the product", "[linalg]")
{
    const CMatrix F = random_matrix(8, 5, 7);
    const Eigendecomposition e = factor_eig(F);
    const Eigendecomposition p = hermitian_eig(F * F.adjoint());
    CHECK(max_abs(e.values - p.values) < 1e-12 * p.values(0));
    const CMatrix rebuilt = e.basis * e.values.cast<cdouble>().asDiagonal() * e.basis.adjoint();
    CHECK(max_abs(rebuilt - F * F.adjoint()) < 1e-12 * p.values(0));
    CHECK(max_abs(e.basis.adjoint() * e.basis - CMatrix::Identity(8, 8)) < 1e-12);
}

TEST_CASE("PSD clamp", "[linalg]")
{
    const CovarianceMatrix I = psd_clamp(CMatrix::Identity(5, 5), 0.5);
    CHECK(I.entries() == CMatrix::Identity(5, 5));

    CMatrix D = CMatrix::Zero(2, 2);
    D(0, 0) = 1.0;
    D(1, 1) = -1e-14;
    const CovarianceMatrix c = psd_clamp(D, 1e-10);
    CHECK(c.entries()(0, 0) == 1.0);
    CHECK(std::abs(c.entries()(1, 1)) < 1e-30);
    CHECK(c.eig().values(1) == 0.0);
    CHECK(c.min_relative_eigenvalue() == -1e-14);
}

TEST_CASE("PSD clamp of a perturbed PSD matrix", "[linalg][property]")
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
    {
        const CMatrix F = random_matrix(10, 4, seed);
        const CMatrix A = F * F.adjoint() + 1e-13 * random_hermitian(10, seed + 100);
        const double rel_tol = 1e-10;
        const CovarianceMatrix c = psd_clamp(A, rel_tol);
        CHECK(c.eig().values.minCoeff() >= 0.0);
        CHECK(hermitian_eig(c.entries()).values.minCoeff() >= -1e-12);
        const double lambda1 = c.largest_eigenvalue();
        CHECK((A - c.entries()).norm() <= rel_tol * lambda1 * std::sqrt(10.0) + 1e-14);
        CHECK(c.rank() == 4);
    }
}

TEST_CASE("PSD square root", "[linalg]")
{
    CHECK(max_abs(psd_sqrt(CMatrix(CMatrix::Identity(3, 3))) - CMatrix::Identity(3, 3)) < 1e-15);

    CMatrix D = CMatrix::Zero(2, 2);
    D(0, 0) = 4.0;
    D(1, 1) = 9.0;
    const CMatrix S = psd_sqrt(D);
    CHECK_THAT(S(0, 0).real(), WithinAbs(2.0, 1e-15));
    CHECK_THAT(S(1, 1).real(), WithinAbs(3.0, 1e-15));
    CHECK(std::abs(S(0, 1)) < 1e-15);

    CMatrix N = CMatrix::Identity(2, 2);
    N(1, 1) = -0.5;
    CHECK_THROWS_AS(psd_sqrt(N), DomainError);
}

TEST_CASE("PSD square root squares back and matches the spectral form", "[linalg][property]")
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
    {
        const CMatrix F = random_matrix(9, 6, seed);
        const CovarianceMatrix A(F * F.adjoint());
        const CMatrix S = psd_sqrt(A);
        CHECK(max_abs(S - S.adjoint()) < 1e-15 * max_abs(S));
        CHECK(max_abs(S * S - A.entries()) < 1e-8 * A.largest_eigenvalue());
        const auto &e = A.eig();
        const CMatrix spectral = e.basis * e.values.cwiseSqrt().cast<cdouble>().asDiagonal() * e.basis.adjoint();
        CHECK(max_abs(S - spectral) < 1e-10);
    }
}

TEST_CASE("principal subspace", "[linalg]")
{
    CHECK(principal_subspace(CovarianceMatrix(CMatrix::Identity(6, 6))).cols() == 6);
    CHECK(principal_subspace(CovarianceMatrix(CMatrix::Zero(4, 4))).cols() == 0);

    CVector v(3);
    v << cdouble(1, 2), cdouble(0, -1), cdouble(3, 0);
    const CMatrix B = principal_subspace(CovarianceMatrix(v * v.adjoint()));
    REQUIRE(B.cols() == 1);
    CHECK(std::abs(std::abs(B.col(0).dot(v)) - v.norm()) < 1e-12);
}

TEST_CASE("column space of a factor", "[linalg]")
{
    const CMatrix F = random_matrix(7, 3, 5);
    const CMatrix B = column_space(F);
    REQUIRE(B.cols() == 3);
    CHECK(max_abs(F - B * (B.adjoint() * F)) < 1e-12 * max_abs(F));
}

TEST_CASE("subspace containment", "[linalg]")
{
    const CMatrix I = CMatrix::Identity(4, 4);
    const ContainmentResult same = subspace_contained(I.leftCols(2), I.leftCols(2), 1e-12);
    CHECK(same.contained);
    CHECK(same.residual == 0.0);

    const ContainmentResult apart = subspace_contained(I.col(0), I.col(1), 0.5);
    CHECK_FALSE(apart.contained);
    CHECK_THAT(apart.residual, WithinAbs(1.0, 1e-15));

    CHECK_THROWS_AS(subspace_contained(2.0 * I.leftCols(1), I, 0.1), ShapeError);
    CHECK_THROWS_AS(subspace_contained(I.leftCols(1), CMatrix::Identity(3, 3), 0.1), ShapeError);
}

TEST_CASE("subspace containment is reflexive and monotone under truncation", "[linalg][property]")
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
    {
        const CMatrix F = random_matrix(10, 6, seed);
        const CMatrix B = column_space(F);
        CHECK(subspace_contained(B, B, 1e-12).contained);
        for (Index r = 1; r <= B.cols(); ++r)
        {
            CHECK(subspace_contained(B.leftCols(r), B, 1e-12).contained);
            // Shrinking the big basis can only increase the residual.
            const double smaller = subspace_contained(B, B.leftCols(r), 1.0).residual;
            const double larger = r > 1 ? subspace_contained(B, B.leftCols(r - 1), 1.0).residual : 1.0;
            CHECK(smaller <= larger + 1e-14);
        }
    }
}

TEST_CASE("spectral norm", "[linalg]")
{
    CMatrix D = CMatrix::Zero(3, 3);
    D(1, 1) = -5.0;
    D(2, 2) = cdouble(0, 2);
    CHECK_THAT(spectral_norm(D), WithinAbs(5.0, 1e-14));
    CHECK(spectral_norm(CMatrix(0, 0)) == 0.0);
}
