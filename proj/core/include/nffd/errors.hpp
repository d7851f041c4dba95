// Copyright 2026 The nffdgate Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace nffd {

// Error taxonomy. The CLI maps each family onto a distinct exit status.

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller broke a documented precondition (grid mismatch, unnormalized input, ...).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Invalid run or propagator configuration, detected before any work starts.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Trap geometry has no usable interior minimum.
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A running simulation lost integrity (norm drift, leakage to the boundary).
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative method did not converge. Carries the last residual.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Quadrature could not reach the requested tolerance. Carries the error estimate.
class AccuracyError : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
    double estimate() const noexcept { return residual(); }
};

/// Target value not bracketed by the supplied search interval.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nffd
