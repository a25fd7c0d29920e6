// SPDX-License-Identifier: Apache-2.0
//
// ris_cf: joint active/passive precoding for RIS-aided cell-free downlink
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

#ifndef RIS_CF_TYPES_HPP
#define RIS_CF_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace ris_cf {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Problem dimensions. B base stations with M antennas each, R surfaces with
/// N elements each, K users with U antennas each, P subcarriers.
struct Dims
{
    std::size_t B = 1; // base stations
    std::size_t R = 0; // reflecting surfaces, 0 for the no-RIS baseline
    std::size_t K = 1; // users
    std::size_t P = 1; // subcarriers
    std::size_t M = 1; // antennas per BS
    std::size_t U = 1; // antennas per user
    std::size_t N = 1; // elements per surface

    std::size_t bm() const { return B * M; }
    std::size_t rn() const { return R * N; }

    friend bool operator==(const Dims &, const Dims &) = default;
};

inline void validate(const Dims &d)
{
    if (d.B == 0 || d.K == 0 || d.P == 0 || d.M == 0 || d.U == 0 || d.N == 0)
        throw std::invalid_argument("all dimensions except the surface count must be >= 1");
}

/// Raised when an iterative subsolver exhausts its iteration budget. Carries
/// the last iterate so callers can inspect or reuse it.
template <typename Iterate>
class SolverFailure : public std::runtime_error
{
  public:
    SolverFailure(const std::string &what, Iterate last)
        : std::runtime_error(what), last_iterate_(std::move(last))
    {
    }

    const Iterate &last_iterate() const noexcept { return last_iterate_; }

  private:
    Iterate last_iterate_;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

} // namespace ris_cf

#endif
