// SPDX-License-Identifier: Apache-2.0
//
// maopt: channel estimation, position selection and beamforming for
// multiuser wideband movable-antenna systems
// Copyright (C) 2026 The maopt authors
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

#ifndef MAOPT_LINALG_HPP
#define MAOPT_LINALG_HPP

#include <Eigen/Dense>

#include <complex>

namespace maopt {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Default relative singular-value cutoff for pseudo-inverses.
inline constexpr double kPinvCutoff = 1e-10;

/// Moore-Penrose pseudo-inverse; singular values below cutoff * sigma_max are dropped.
CMatrix pinv(const CMatrix& a, double rel_cutoff = kPinvCutoff);

/// Least-squares solution of min ||a x - b|| through the truncated SVD.
CMatrix lstsq(const CMatrix& a, const CMatrix& b, double rel_cutoff = kPinvCutoff);

/// Numerical rank with the same relative cutoff convention.
Eigen::Index numerical_rank(const CMatrix& a, double rel_cutoff = kPinvCutoff);

} // namespace maopt

#endif
