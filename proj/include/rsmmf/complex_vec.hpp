// rsmmf - closed-form max-min fair rate and power allocation for a
// two-user rate-splitting multiple access downlink
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

#pragma once

#include <complex>
#include <vector>

namespace rsmmf
{

using Complex = std::complex<double>;
using ComplexVec = std::vector<Complex>;

/// Hermitian inner product <a,b> = sum_i conj(a_i) * b_i.
/// Throws std::invalid_argument if the lengths differ or either vector is empty.
Complex inner_product(const ComplexVec &a, const ComplexVec &b);

/// Squared Euclidean norm, sum_i |a_i|^2.
double norm_sq(const ComplexVec &a);

/// Euclidean norm.
double norm(const ComplexVec &a);

/// True when every real and imaginary part is finite.
bool all_finite(const ComplexVec &a);

/// a / ||a||. Throws DegenerateChannelError when ||a|| == 0.
ComplexVec normalized(const ComplexVec &a);

} // namespace rsmmf
