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

#include "isegen/report_io.hpp"

#include <cstdio>
#include <map>
#include <ostream>

namespace isegen {

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string id_list(const std::vector<NodeId> &ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i)
            s += ' ';
        s += std::to_string(ids[i]);
    }
    return s;
}

const char *const kPalette[] = {"lightblue", "palegreen",  "lightsalmon", "plum",
                                "khaki",     "lightcyan",  "mistyrose",   "wheat"};

} // namespace

void write_report_text(std::ostream &out, const Application &app, const IseReport &report) {
    out << "blocks: " << app.blocks.size() << "\n";
    out << "constraints: n_in=" << report.constraints.n_in << " n_out=" << report.constraints.n_out
        << " n_ise=" << report.constraints.n_ise << "\n";
    out << "lambda_overall: " << fixed6(report.lambda_overall) << "\n";
    out << "ises: " << report.ises.size() << "\n";
    for (const IseEntry &e : report.ises) {
        out << "ISE " << e.index << ": block=" << e.block << " inputs=" << e.io.inputs
            << " outputs=" << e.io.outputs << " merit=" << fixed6(e.merit_value)
            << " instances=" << e.instances.size() << " n_c=" << e.n_c << "\n";
        out << "  members: " << id_list(e.members) << "\n";
        for (std::size_t k = 0; k < e.instances.size(); ++k)
            out << "  instance " << k << ": " << id_list(e.instances[k]) << "\n";
    }
    out << "selection trace:\n";
    for (const TraceEntry &t : report.trace) {
        out << "  round " << t.round << ": block=" << t.block
            << " potential=" << fixed6(t.potential) << " -> "
            << (t.committed ? "committed ISE " + std::to_string(t.ise_index) : "retired") << "\n";
    }
    out << "speedup: " << fixed6(report.speedup) << "\n";
}

void write_report_structured(std::ostream &out, const Application &app, const IseReport &report) {
    out << "format.version = 1\n";
    out << "app.blocks = " << app.blocks.size() << "\n";
    out << "app.constraints.n_in = " << report.constraints.n_in << "\n";
    out << "app.constraints.n_out = " << report.constraints.n_out << "\n";
    out << "app.constraints.n_ise = " << report.constraints.n_ise << "\n";
    out << "app.lambda_overall = " << fixed6(report.lambda_overall) << "\n";
    out << "app.num_ises = " << report.ises.size() << "\n";
    out << "app.speedup = " << fixed6(report.speedup) << "\n";
    for (const IseEntry &e : report.ises) {
        const std::string p = "ise." + std::to_string(e.index) + ".";
        out << p << "block = " << e.block << "\n";
        out << p << "members = " << id_list(e.members) << "\n";
        out << p << "inputs = " << e.io.inputs << "\n";
        out << p << "outputs = " << e.io.outputs << "\n";
        out << p << "merit = " << fixed6(e.merit_value) << "\n";
        out << p << "instances = " << e.instances.size() << "\n";
        for (std::size_t k = 0; k < e.instances.size(); ++k)
            out << p << "instance." << k << ".members = " << id_list(e.instances[k]) << "\n";
        out << p << "n_c = " << e.n_c << "\n";
    }
    for (std::size_t i = 0; i < report.trace.size(); ++i) {
        const TraceEntry &t = report.trace[i];
        const std::string p = "trace." + std::to_string(i) + ".";
        out << p << "round = " << t.round << "\n";
        out << p << "block = " << t.block << "\n";
        out << p << "potential = " << fixed6(t.potential) << "\n";
        out << p << "action = " << (t.committed ? "committed" : "retired") << "\n";
        if (t.committed)
            out << p << "ise = " << t.ise_index << "\n";
    }
}

void write_dot(std::ostream &out, const Application &app, const IseReport &report) {
    // node id -> (ise index, instance index) per block
    std::map<std::string, std::map<NodeId, std::pair<int, int>>> marks;
    for (const IseEntry &e : report.ises)
        for (std::size_t k = 0; k < e.instances.size(); ++k)
            for (NodeId id : e.instances[k])
                marks[e.block][id] = {e.index, static_cast<int>(k)};

    for (const Dfg &blk : app.blocks) {
        out << "digraph \"" << blk.name() << "\" {\n";
        out << "  label=\"" << blk.name() << " freq=" << blk.exec_freq() << "\";\n";
        const auto &blk_marks = marks[blk.name()];
        for (const OpNode &n : blk.nodes()) {
            out << "  n" << n.id << " [label=\"" << n.id << ": " << n.opcode << "\"";
            if (n.is_memory)
                out << ", shape=box";
            if (n.is_live_out)
                out << ", peripheries=2";
            auto it = blk_marks.find(n.id);
            if (it != blk_marks.end()) {
                const auto [ise, inst] = it->second;
                out << ", style=filled, fillcolor=" << kPalette[ise % 8] << ", ise=" << ise
                    << ", instance=\"" << ise << "." << inst << "\"";
            }
            out << "];\n";
        }
        for (auto [src, dst] : blk.edges())
            out << "  n" << src << " -> n" << dst << ";\n";
        out << "}\n";
    }
}

} // namespace isegen
