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

#include "maopt/linalg.hpp"

namespace maopt {

namespace {

Eigen::BDCSVD<CMatrix> thin_svd(const CMatrix& a, double rel_cutoff)
{
    Eigen::BDCSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(rel_cutoff);
    return svd;
}

} // namespace

CMatrix pinv(const CMatrix& a, double rel_cutoff)
{
    if (a.size() == 0)
        return CMatrix::Zero(a.cols(), a.rows());
    const auto svd = thin_svd(a, rel_cutoff);
    const RVector& s = svd.singularValues();
    const double floor = s.size() > 0 ? s(0) * rel_cutoff : 0.0;
    RVector s_inv = RVector::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > floor && s(i) > 0.0)
            s_inv(i) = 1.0 / s(i);
    return svd.matrixV() * s_inv.asDiagonal() * svd.matrixU().adjoint();
}

CMatrix lstsq(const CMatrix& a, const CMatrix& b, double rel_cutoff)
{
    return pinv(a, rel_cutoff) * b;
}

Eigen::Index numerical_rank(const CMatrix& a, double rel_cutoff)
{
    if (a.size() == 0)
        return 0;
    return thin_svd(a, rel_cutoff).rank();
}

} // namespace maopt
