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

#include "rsmmf/channel.hpp"

#include "rsmmf/errors.hpp"
#include "rsmmf/rng.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace rsmmf
{

ChannelPair make_channel_pair(const ComplexVec &h_a, const ComplexVec &h_b)
{
    if (h_a.empty() || h_b.empty())
        throw std::invalid_argument("make_channel_pair: channels must be non-empty");
    if (h_a.size() != h_b.size())
        throw std::invalid_argument("make_channel_pair: dimension mismatch (" + std::to_string(h_a.size()) + " vs " +
                                    std::to_string(h_b.size()) + ")");
    if (!all_finite(h_a) || !all_finite(h_b))
        throw std::invalid_argument("make_channel_pair: non-finite channel entry");

    const double na = norm(h_a);
    const double nb = norm(h_b);
    if (na == 0.0 || nb == 0.0)
        throw DegenerateChannelError("make_channel_pair: zero-norm channel");

    ChannelPair pair;
    if (na < nb)
    {
        pair.h1 = h_b;
        pair.h2 = h_a;
        pair.norm1 = nb;
        pair.norm2 = na;
        pair.swapped = true;
    }
    else
    {
        pair.h1 = h_a;
        pair.h2 = h_b;
        pair.norm1 = na;
        pair.norm2 = nb;
        pair.swapped = false;
    }
    return pair;
}

void ChannelEnsembleSpec::validate() const
{
    if (n_t < 2)
        throw std::invalid_argument("ChannelEnsembleSpec: n_t must be >= 2, got " + std::to_string(n_t));
    if (!(sigma1_sq > 0.0) || !(sigma2_sq > 0.0))
        throw std::invalid_argument("ChannelEnsembleSpec: per-entry variances must be positive");
    if (count < 1)
        throw std::invalid_argument("ChannelEnsembleSpec: count must be >= 1, got " + std::to_string(count));
}

std::vector<ChannelPair> sample_gaussian_ensemble(const ChannelEnsembleSpec &spec)
{
    spec.validate();

    std::vector<ChannelPair> out;
    out.reserve(static_cast<std::size_t>(spec.count));

    for (int p = 0; p < spec.count; ++p)
    {
        ComplexVec h_a(static_cast<std::size_t>(spec.n_t));
        ComplexVec h_b(static_cast<std::size_t>(spec.n_t));

        GaussianStream sa(stream_seed(spec.seed, static_cast<std::uint64_t>(p), 0));
        GaussianStream sb(stream_seed(spec.seed, static_cast<std::uint64_t>(p), 1));

        for (int i = 0; i < spec.n_t; ++i)
        {
            h_a[static_cast<std::size_t>(i)] = sa.next_complex(spec.sigma1_sq);
            h_b[static_cast<std::size_t>(i)] = sb.next_complex(spec.sigma2_sq);
        }
        out.push_back(make_channel_pair(h_a, h_b));
    }
    return out;
}

ChannelPair make_region_channel(double gamma_db, double theta)
{
    if (!std::isfinite(gamma_db) || !std::isfinite(theta))
        throw std::invalid_argument("make_region_channel: non-finite parameter");

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double g = std::pow(10.0, gamma_db / 20.0);

    ComplexVec h_a = {Complex(inv_sqrt2, 0.0), Complex(inv_sqrt2, 0.0)};
    ComplexVec h_b = {Complex(g * inv_sqrt2, 0.0),
                      Complex(g * inv_sqrt2 * std::cos(theta), -g * inv_sqrt2 * std::sin(theta))};
    return make_channel_pair(h_a, h_b);
}

namespace
{

nlohmann::json vec_to_json(const ComplexVec &v)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &x : v)
        arr.push_back({x.real(), x.imag()});
    return arr;
}

ComplexVec vec_from_json(const nlohmann::json &arr, const char *key)
{
    if (!arr.is_array())
        throw std::invalid_argument(std::string("channel_from_json: \"") + key + "\" must be an array");

    ComplexVec v;
    v.reserve(arr.size());
    for (const auto &e : arr)
    {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw std::invalid_argument(std::string("channel_from_json: entries of \"") + key +
                                        "\" must be [re, im] number pairs");
        v.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return v;
}

} // namespace

nlohmann::json channel_to_json(const ChannelPair &pair)
{
    // Emit in the caller's label order so that to/from is idempotent.
    const ComplexVec &first = pair.swapped ? pair.h2 : pair.h1;
    const ComplexVec &second = pair.swapped ? pair.h1 : pair.h2;
    return nlohmann::json{{"h1", vec_to_json(first)}, {"h2", vec_to_json(second)}};
}

ChannelPair channel_from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("h1") || !j.contains("h2"))
        throw std::invalid_argument("channel_from_json: expected object with \"h1\" and \"h2\"");
    return make_channel_pair(vec_from_json(j.at("h1"), "h1"), vec_from_json(j.at("h2"), "h2"));
}

ChannelPair load_channel(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("load_channel: cannot open " + path);

    nlohmann::json j;
    try
    {
        in >> j;
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw std::invalid_argument("load_channel: " + path + ": " + e.what());
    }
    return channel_from_json(j);
}

void save_channel(const std::string &path, const ChannelPair &pair)
{
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("save_channel: cannot open " + path);
    out << channel_to_json(pair).dump(2) << "\n";
}

} // namespace rsmmf
