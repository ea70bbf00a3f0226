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

#include <stdexcept>
#include <string>

namespace rsmmf
{

/// A channel input the model cannot work with (zero-norm user channel).
class DegenerateChannelError : public std::runtime_error
{
  public:
    explicit DegenerateChannelError(const std::string &msg) : std::runtime_error(msg) {}
};

/// Raised by the ZF direction design when the two channels are (numerically) parallel.
/// Callers fall back to common-stream-only transmission.
class CollinearChannelsError : public std::runtime_error
{
  public:
    explicit CollinearChannelsError(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace rsmmf
