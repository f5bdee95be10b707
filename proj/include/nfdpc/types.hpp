// SPDX-License-Identifier: Apache-2.0
//
// nfdpc - zero-forcing and dirty-paper-coding precoding for near-field MISO
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

#ifndef NFDPC_TYPES_HPP
#define NFDPC_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace nfdpc {

using Complex = std::complex<double>;

// Column-major complex matrix (precoders, Q factors, Gram matrices).
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

// Row-major complex matrix; each user's channel row is contiguous.
using CRowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using CVector = Eigen::VectorXcd;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: malformed configuration, violated precondition, unknown key.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Numerical failure on otherwise valid input.
class NumericalError : public Error {
public:
    using Error::Error;
};

// H*H^H is too ill-conditioned for zero forcing (e.g. coincident users).
class RankDeficientError : public NumericalError {
public:
    RankDeficientError(const std::string& what, double condition)
        : NumericalError(what), condition_(condition) {}

    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

// Exhaustive ordering search requested above the permutation cap.
class CapExceededError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

} // namespace nfdpc

#endif
