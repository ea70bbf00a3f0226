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

#include "rsmmf/complex_vec.hpp"

#include "rsmmf/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace rsmmf
{

Complex inner_product(const ComplexVec &a, const ComplexVec &b)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("inner_product: vectors must be non-empty");
    if (a.size() != b.size())
        throw std::invalid_argument("inner_product: dimension mismatch (" + std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");

    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += std::conj(a[i]) * b[i];
    return acc;
}

double norm_sq(const ComplexVec &a)
{
    double acc = 0.0;
    for (const auto &x : a)
        acc += std::norm(x);
    return acc;
}

double norm(const ComplexVec &a)
{
    return std::sqrt(norm_sq(a));
}

bool all_finite(const ComplexVec &a)
{
    for (const auto &x : a)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            return false;
    return true;
}

ComplexVec normalized(const ComplexVec &a)
{
    const double n = norm(a);
    if (n == 0.0)
        throw DegenerateChannelError("normalized: zero-norm vector");

    ComplexVec out(a);
    for (auto &x : out)
        x /= n;
    return out;
}

} // namespace rsmmf
