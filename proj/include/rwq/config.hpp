// Copyright 2026 The rwq Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rwq/errors.hpp"
#include "rwq/expr.hpp"
#include "rwq/model.hpp"
#include "rwq/parse.hpp"
#include "rwq/rational.hpp"

namespace rwq {

/// Contents of a configuration document (schema version "1"):
///
///   {
///     "version": "1",
///     "nodes": [{"name": "a", "read_cap": 4000, "write_cap": 2000,
///                "latency_s": 1}, ...],
///     "reads": "a*b + c*d*e",           // and/or "writes"
///     "read_fraction": {"0.9": "10/470", "0.8": "20/470", ...}
///   }
///
/// Numbers may be JSON numbers or strings holding a decimal or a fraction.
/// Omitted capacities and latency default to 1. "read_fraction" is either a
/// scalar or an object mapping decimal strings to probabilities.
struct Config {
  std::vector<Node> nodes;
  std::optional<Expr> reads;
  std::optional<Expr> writes;
  Workload workload = Workload::Fixed(1);
};

namespace internal {

inline Rational JsonRational(const nlohmann::json& value, const std::string& what) {
  try {
    if (value.is_number_integer()) return Rational(value.get<long long>());
    if (value.is_number()) return ParseRational(value.dump());
    if (value.is_string()) return ParseRational(value.get<std::string>());
  } catch (const DomainError& err) {
    throw ConfigError(what + ": " + err.what());
  }
  throw ConfigError(what + " must be a number");
}

}  // namespace internal

/// Throws ConfigError for schema violations; expression text errors surface
/// as ParseError or DomainError.
inline Config ParseConfig(const nlohmann::json& doc, bool require_quorums = true) {
  using internal::JsonRational;
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  if (doc.contains("version")) {
    const auto& v = doc["version"];
    bool ok = (v.is_string() && v.get<std::string>() == "1") ||
              (v.is_number_integer() && v.get<int>() == 1);
    if (!ok) throw ConfigError("unsupported configuration version " + v.dump());
  }

  Config config;
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw ConfigError("'nodes' must be an array");
  }
  if (doc["nodes"].empty()) throw ConfigError("'nodes' is empty");
  for (const auto& entry : doc["nodes"]) {
    if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string()) {
      throw ConfigError("every node needs a string 'name'");
    }
    std::string name = entry["name"].get<std::string>();
    Rational read_cap = entry.contains("read_cap")
                            ? JsonRational(entry["read_cap"], name + ".read_cap")
                            : Rational(1);
    Rational write_cap = entry.contains("write_cap")
                             ? JsonRational(entry["write_cap"], name + ".write_cap")
                             : Rational(1);
    Rational latency = entry.contains("latency_s")
                           ? JsonRational(entry["latency_s"], name + ".latency_s")
                           : Rational(1);
    try {
      config.nodes.push_back(MakeNode(name, read_cap, write_cap, latency));
    } catch (const DomainError& err) {
      throw ConfigError(err.what());
    }
  }

  auto expression = [&](const char* key) -> std::optional<Expr> {
    if (!doc.contains(key)) return std::nullopt;
    if (!doc[key].is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
    return Parse(doc[key].get<std::string>());
  };
  config.reads = expression("reads");
  config.writes = expression("writes");
  if (require_quorums && !config.reads && !config.writes) {
    throw ConfigError("configuration needs 'reads' or 'writes'");
  }

  if (!doc.contains("read_fraction")) throw ConfigError("'read_fraction' is required");
  const auto& fr = doc["read_fraction"];
  try {
    if (fr.is_object()) {
      std::vector<Workload::Point> points;
      for (const auto& [key, probability] : fr.items()) {
        points.push_back({ParseRational(key),
                          JsonRational(probability, "read_fraction[" + key + "]")});
      }
      config.workload = Workload::Distribution(std::move(points));
    } else {
      config.workload = Workload::Fixed(JsonRational(fr, "read_fraction"));
    }
  } catch (const DomainError& err) {
    throw ConfigError(std::string("read_fraction: ") + err.what());
  }
  return config;
}

inline Config LoadConfig(const std::string& path, bool require_quorums = true) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError("'" + path + "': " + err.what());
  }
  return ParseConfig(doc, require_quorums);
}

}  // namespace rwq
