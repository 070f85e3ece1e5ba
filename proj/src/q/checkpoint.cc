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

#include "barocco/q/checkpoint.h"

#include <cstdio>
#include <cstdlib>

#include "barocco/common/errors.h"

namespace barocco {

void SaveCheckpoint(std::ostream& out, std::string_view config_hash,
                    const NamedNetworks& networks) {
  out << kCheckpointMagic << ' ' << kCheckpointVersion << '\n';
  out << "config_hash " << config_hash << '\n';
  char buffer[64];
  for (const auto& [name, net] : networks) {
    out << name << ' ' << net->num_parameters() << '\n';
    for (double p : net->parameters()) {
      std::snprintf(buffer, sizeof(buffer), "%a\n", p);
      out << buffer;
    }
  }
  if (!out) throw Error("SaveCheckpoint: write failed");
}

void LoadCheckpoint(std::istream& in, std::string_view config_hash,
                    const NamedNetworks& networks) {
  std::string magic, key, hash;
  int version = 0;
  if (!(in >> magic >> version) || magic != kCheckpointMagic) {
    throw ConfigError("LoadCheckpoint: not a checkpoint");
  }
  if (version != kCheckpointVersion) {
    throw ConfigError("LoadCheckpoint: unsupported version " + std::to_string(version));
  }
  if (!(in >> key >> hash) || key != "config_hash") {
    throw ConfigError("LoadCheckpoint: missing config hash");
  }
  if (hash != config_hash) {
    throw ConfigError("LoadCheckpoint: checkpoint was written for config " + hash);
  }
  for (const auto& [name, net] : networks) {
    std::string stored;
    std::size_t count = 0;
    if (!(in >> stored >> count) || stored != name) {
      throw ConfigError("LoadCheckpoint: expected network " + name);
    }
    if (count != net->num_parameters()) {
      throw ConfigError("LoadCheckpoint: size mismatch for " + name);
    }
    std::vector<double> values(count);
    std::string token;
    for (double& v : values) {
      if (!(in >> token)) throw ConfigError("LoadCheckpoint: truncated " + name);
      char* end = nullptr;
      v = std::strtod(token.c_str(), &end);
      if (end == token.c_str() || *end != '\0') {
        throw ConfigError("LoadCheckpoint: bad number in " + name);
      }
    }
    net->SetParameters(values);
  }
}

}  // namespace barocco
