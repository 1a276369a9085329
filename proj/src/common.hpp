// Copyright 2026 The kfpq Authors
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
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace kfpq {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

enum class ErrorCode : int {
    Ok = 0,
    InvalidParameter = 1,
    NonFinite = 2,
    SingularBiquaternion = 3,
    NonSymmetricInput = 4,
    NonRealDelta0 = 5,
    DegenerateEigenbasis = 6,
    QuadratureNotConverged = 7,
    GridUnderResolved = 8,
    ExpNotConverged = 9,
    PowerIterationStalled = 10,
    TruncationNotConverged = 11,
    IndefinitePencil = 12,
    UnknownLabel = 13,
    Config = 14,
};

const char *error_name(ErrorCode c) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorCode c, const std::string &what) : std::runtime_error(what), code_(c) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string &what) { throw Error(c, what); }

inline bool finite(cplx z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

template <class M> bool all_finite(const M &m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!finite(cplx(m(i, j)))) return false;
    return true;
}

} // namespace kfpq
