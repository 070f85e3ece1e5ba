// Copyright 2026 The BAROCCO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BAROCCO_Q_CHECKPOINT_H_
#define BAROCCO_Q_CHECKPOINT_H_

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "barocco/numerics/dense_network.h"

namespace barocco {

using NamedNetworks = std::vector<std::pair<std::string, DenseNetwork*>>;

inline constexpr std::string_view kCheckpointMagic = "barocco-checkpoint";
inline constexpr int kCheckpointVersion = 1;

// Text format: magic and version, config hash, then per network a line
// "<name> <count>" followed by the parameters as hex floats, one per line.
void SaveCheckpoint(std::ostream& out, std::string_view config_hash,
                    const NamedNetworks& networks);

// Throws ConfigError on a hash, name or size mismatch.
void LoadCheckpoint(std::istream& in, std::string_view config_hash,
                    const NamedNetworks& networks);

}  // namespace barocco

#endif  // BAROCCO_Q_CHECKPOINT_H_
