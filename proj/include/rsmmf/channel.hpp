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

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace rsmmf
{

/// A two-user MISO channel, stored in canonical order: ||h1|| >= ||h2||.
/// `swapped` records whether the inputs arrived in the other order, so
/// results can be mapped back to the caller's user labels.
struct ChannelPair
{
    ComplexVec h1; ///< stronger user (ties keep input order)
    ComplexVec h2; ///< weaker user
    double norm1 = 0.0;
    double norm2 = 0.0;
    bool swapped = false;
};

/// Validate and canonically order a channel pair.
///
/// Throws std::invalid_argument for empty, mismatched or non-finite inputs
/// and DegenerateChannelError when either channel has zero norm. Ordering
/// uses a strict comparison: equal norms keep the input order.
ChannelPair make_channel_pair(const ComplexVec &h_a, const ComplexVec &h_b);

/// Parameters of an i.i.d. Rayleigh ensemble, h_k ~ CN(0, sigma_k^2 I).
struct ChannelEnsembleSpec
{
    int n_t = 2;             ///< transmit antennas (>= 2, the ZF design needs that many)
    double sigma1_sq = 1.0;  ///< per-entry variance, user a
    double sigma2_sq = 0.3;  ///< per-entry variance, user b
    std::uint64_t seed = 1;  ///< base seed of the stream-split scheme
    int count = 100;         ///< number of channel pairs

    void validate() const;
};

/// Draw `spec.count` channel pairs. Pair p, user u is generated from the
/// stream (spec.seed, p, u), so the ensemble is reproducible element-wise
/// and independent of evaluation order.
std::vector<ChannelPair> sample_gaussian_ensemble(const ChannelEnsembleSpec &spec);

/// Deterministic two-antenna channel family used for the region maps:
///
///   h1 = (1/sqrt(2)) [1, 1],   h2 = (g/sqrt(2)) [1, e^{-j theta}]
///
/// with g = 10^(gamma_db/20). The subspace angle obeys
/// rho = 1 - |<h1n,h2n>|^2 = sin^2(theta/2), so theta = 2 asin(sqrt(rho))
/// places the pair at a prescribed rho.
ChannelPair make_region_channel(double gamma_db, double theta);

/// JSON round trip for a single pair. Keys "h1"/"h2" always refer to the
/// caller-facing labels (input order), each an array of [re, im] pairs.
nlohmann::json channel_to_json(const ChannelPair &pair);
ChannelPair channel_from_json(const nlohmann::json &j);

ChannelPair load_channel(const std::string &path);
void save_channel(const std::string &path, const ChannelPair &pair);

} // namespace rsmmf
