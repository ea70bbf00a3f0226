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

#include "rsmmf/complex_vec.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace rsmmf
{

/// SplitMix64 mixing step (Steele, Lea, Flood 2014). Bijective on uint64,
/// used here to derive decorrelated engine seeds from structured indices.
inline constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Engine seed for one draw stream. Streams are addressed as
/// (base seed, pair index, user index) so that any channel pair of an
/// ensemble can be regenerated in isolation, in any order, on any thread.
///
/// seed(p, u) = splitmix64(splitmix64(base ^ (p + 1)) ^ (u + 1))
inline constexpr std::uint64_t stream_seed(std::uint64_t base, std::uint64_t pair_index, std::uint64_t user_index)
{
    return splitmix64(splitmix64(base ^ (pair_index + 1)) ^ (user_index + 1));
}

/// Circularly-symmetric complex Gaussian stream with a fixed, portable
/// draw path: mt19937_64 raw output -> 53-bit uniform in (0,1] -> Box-Muller.
/// std::normal_distribution is deliberately avoided because its draw
/// sequence is implementation-defined; this class produces identical bytes
/// on every conforming platform.
class GaussianStream
{
  public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    /// One CN(0, variance) sample: real and imaginary parts are
    /// independent N(0, variance / 2).
    Complex next_complex(double variance)
    {
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-variance * std::log(u1));
        const double phi = 2.0 * M_PI * u2;
        return Complex(r * std::cos(phi), r * std::sin(phi));
    }

  private:
    // (0,1]: log() of the first uniform stays finite.
    double uniform01()
    {
        const std::uint64_t bits = engine_() >> 11; // 53 significant bits
        return static_cast<double>(bits + 1) * 0x1.0p-53;
    }

    std::mt19937_64 engine_;
};

} // namespace rsmmf
