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

#ifndef HOLOEST_ERRORS_HPP
#define HOLOEST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace holoest
{
    // Argument outside the mathematical domain of an operation.
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Element or cluster index out of range.
    class IndexError : public std::out_of_range
    {
    public:
        using std::out_of_range::out_of_range;
    };

    // Dimension mismatch, non-Hermitian input, non-orthonormal basis.
    class ShapeError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Missing entry in a keyed result table.
    class LookupError : public std::out_of_range
    {
    public:
        using std::out_of_range::out_of_range;
    };

    // Adaptive quadrature failed to reach its error target.
    class IntegrationError : public std::runtime_error
    {
    public:
        IntegrationError(const std::string &what, double error_estimate)
            : std::runtime_error(what), error_estimate_(error_estimate) {}

        double error_estimate() const noexcept { return error_estimate_; }

    private:
        double error_estimate_;
    };

    // File could not be opened, read or written.
    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // A validation check did not hold.
    class ValidationFailure : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Malformed configuration file or flag; line is 0 when not tied to a file line.
    class ConfigError : public std::invalid_argument
    {
    public:
        ConfigError(const std::string &what, int line = 0)
            : std::invalid_argument(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

        int line() const noexcept { return line_; }

    private:
        int line_;
    };
}

#endif
