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

#include "isegen/driver.hpp"

namespace isegen {

/// Human-readable summary.
void write_report_text(std::ostream &out, const Application &app, const IseReport &report);

/// Machine-readable `key = value` lines with a stable key order and
/// reals fixed to six decimals, so identical runs are byte-identical.
void write_report_structured(std::ostream &out, const Application &app, const IseReport &report);

/// Graphviz export: one digraph per block, members colored per ISE and
/// instance occurrences annotated.
void write_dot(std::ostream &out, const Application &app, const IseReport &report);

} // namespace isegen
