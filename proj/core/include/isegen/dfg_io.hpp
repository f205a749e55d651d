/*
Copyright 2026 The isegen Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "isegen/dfg.hpp"

namespace isegen {

// Block file format, line oriented, '#' starts a comment:
//   block <name> freq=<uint>
//   node <id> op=<opcode> [mem] [liveout]
//   edge <src-id> <dst-id>
// Latency table format:
//   op <opcode> sw=<uint> hw=<decimal> [ar=<uint>]

std::vector<RawDfg> parse_app_text(std::istream &in, const std::string &filename);
std::vector<RawDfg> parse_app_file(const std::string &path);

LatencyTable parse_latency_text(std::istream &in, const std::string &filename);
LatencyTable parse_latency_file(const std::string &path);

/// Canonical form: nodes ascending by id, edges sorted by (src, dst).
void write_app_text(std::ostream &out, std::span<const RawDfg> blocks);
void write_app_text(std::ostream &out, const Dfg &block);
void write_latency_text(std::ostream &out, const LatencyTable &lat);

RawDfg to_raw(const Dfg &dfg);

} // namespace isegen
