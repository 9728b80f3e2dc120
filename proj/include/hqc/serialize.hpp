// Copyright 2026 The hqc Authors
//
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

#include <string>
#include <string_view>

#include <json.hpp>

#include "hqc/compiler.hpp"
#include "hqc/dynamics.hpp"
#include "hqc/model.hpp"
#include "hqc/subspace.hpp"

namespace hqc {

using Json = nlohmann::ordered_json;

// Doubles are written in shortest round-trip form, so parse(dump(x)) == x
// bit for bit and dump(parse(dump(x))) == dump(x) byte for byte.

Json to_json(const TermList& h);
TermList term_list_from_json(const Json& j);

Json to_json(const ClockMap& clock);
ClockMap clock_map_from_json(const Json& j);

/// {"backend", "sites", "terms", "clock_map"}
Json to_json(const Compiled& c);
Compiled compiled_from_json(const Json& j);

std::string dump_compiled(const Compiled& c);
/// Throws std::invalid_argument on malformed input.
Compiled parse_compiled(std::string_view text);

Json to_json(const AuditReport& a);
Json to_json(const VerifyReport& v);
Json to_json(const EvolutionReport& r);
Json to_json(const MixingEstimate& m);

/// time,p_success,p_output_one,fidelity rows; undefined entries are empty.
std::string evolution_csv(const EvolutionReport& r);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

}  // namespace hqc
