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
//
// Fixed beamforming layer. Private streams use zero-forcing directions,
// the common stream uses the matched equal-projection direction
//
//   p_c = (h1n + h2n e^{-j arg(z)}) / sqrt(2 (1 + |z|)),  z = <h1n, h2n>,
//
// which projects onto both unit channels with the same magnitude
// sqrt((1+|z|)/2). Everything downstream (allocator, oracle) only sees the
// scalar effective gains collected in EffectiveGains.

#pragma once

#include "rsmmf/channel.hpp"
#include "rsmmf/complex_vec.hpp"

#include <json.hpp>

#include <cmath>
#include <utility>

namespace rsmmf
{

/// Channels with subspace separation rho <= this are treated as parallel:
/// zf_directions refuses to build private beams and gamma_gap becomes +inf.
inline constexpr double kCollinearEps = 1e-10;

/// Unit-norm transmit directions: dir1, dir2 are the private (zero-forcing)
/// beams, dir_c the common beam.
struct PrecoderSet
{
    ComplexVec dir1;
    ComplexVec dir2;
    ComplexVec dir_c;
};

/// Scalar channel/precoder summary the allocation layer runs on.
///
///   rho    = 1 - |z|^2          subspace separation, in [0, 1]
///   rho_k  = ||h_k||^2 rho      private-stream gain of user k
///   rho_ck = |h_k^H p_c|^2      common-stream gain of user k
///   gamma_gap = 1/rho2 - 1/rho1 (+inf when the pair is collinear)
struct EffectiveGains
{
    double rho = 0.0;
    double rho1 = 0.0;
    double rho2 = 0.0;
    double rho_c1 = 0.0;
    double rho_c2 = 0.0;
    double gamma_gap = 0.0;

    bool collinear() const { return std::isinf(gamma_gap); }
};

/// Zero-forcing directions: first ⊥ h2, second ⊥ h1, both unit norm, built
/// by Gram-Schmidt with one re-orthogonalization pass.
/// Throws CollinearChannelsError when rho <= kCollinearEps and
/// std::invalid_argument for channels with fewer than two antennas.
std::pair<ComplexVec, ComplexVec> zf_directions(const ChannelPair &pair);

/// Matched equal-projection common direction (see file header). Defined for
/// any channel pair; for z == 0 the phase convention is arg = 0.
ComplexVec common_precoder(const ChannelPair &pair);

/// All three directions. Propagates CollinearChannelsError from zf_directions.
PrecoderSet precoder_set(const ChannelPair &pair);

/// Effective scalar gains of `pair` under the fixed precoders. rho_ck is
/// evaluated from the actual common direction, not the closed form, so the
/// identity rho_k = 2 rho_ck (1 - |z|) holds to rounding error by
/// construction. Never throws on collinear input; gamma_gap = +inf flags it.
EffectiveGains effective_gains(const ChannelPair &pair);

nlohmann::json precoders_to_json(const PrecoderSet &set);
nlohmann::json gains_to_json(const EffectiveGains &g);

} // namespace rsmmf
