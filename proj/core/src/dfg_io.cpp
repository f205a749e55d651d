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

#include "isegen/dfg_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace isegen {

namespace {

std::vector<std::string> tokenize(const std::string &line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) {
        if (t[0] == '#')
            break;
        toks.push_back(t);
    }
    return toks;
}

std::uint64_t parse_uint(const std::string &tok, const std::string &file, int line,
                         const std::string &what) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw ParseError(file, line, "expected unsigned integer for " + what + ", got '" + tok + "'");
    return v;
}

double parse_decimal(const std::string &tok, const std::string &file, int line,
                     const std::string &what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size())
            throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception &) {
        throw ParseError(file, line, "expected decimal for " + what + ", got '" + tok + "'");
    }
}

// Splits "key=value"; returns false if tok has no '='.
bool split_kv(const std::string &tok, std::string &key, std::string &value) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
        return false;
    key = tok.substr(0, eq);
    value = tok.substr(eq + 1);
    return true;
}

} // namespace

std::vector<RawDfg> parse_app_text(std::istream &in, const std::string &filename) {
    std::vector<RawDfg> blocks;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty())
            continue;
        const std::string &dir = toks[0];
        if (dir == "block") {
            if (toks.size() != 3)
                throw ParseError(filename, lineno, "expected: block <name> freq=<uint>");
            std::string k, v;
            if (!split_kv(toks[2], k, v) || k != "freq")
                throw ParseError(filename, lineno, "expected freq=<uint> after block name");
            RawDfg b;
            b.name = toks[1];
            b.exec_freq = parse_uint(v, filename, lineno, "freq");
            b.source_file = filename;
            b.line = lineno;
            for (const RawDfg &prev : blocks)
                if (prev.name == b.name)
                    throw ParseError(filename, lineno, "duplicate block name '" + b.name + "'");
            blocks.push_back(std::move(b));
        } else if (dir == "node") {
            if (blocks.empty())
                throw ParseError(filename, lineno, "node line before any block");
            if (toks.size() < 3)
                throw ParseError(filename, lineno, "expected: node <id> op=<opcode> [mem] [liveout]");
            RawNode n;
            n.id = static_cast<NodeId>(parse_uint(toks[1], filename, lineno, "node id"));
            n.line = lineno;
            std::string k, v;
            if (!split_kv(toks[2], k, v) || k != "op" || v.empty())
                throw ParseError(filename, lineno, "expected op=<opcode> after node id");
            n.opcode = v;
            for (std::size_t i = 3; i < toks.size(); ++i) {
                if (toks[i] == "mem")
                    n.is_memory = true;
                else if (toks[i] == "liveout")
                    n.is_live_out = true;
                else
                    throw ParseError(filename, lineno, "unknown node flag '" + toks[i] + "'");
            }
            blocks.back().nodes.push_back(std::move(n));
        } else if (dir == "edge") {
            if (blocks.empty())
                throw ParseError(filename, lineno, "edge line before any block");
            if (toks.size() != 3)
                throw ParseError(filename, lineno, "expected two node ids");
            RawEdge e;
            e.src = static_cast<NodeId>(parse_uint(toks[1], filename, lineno, "edge source"));
            e.dst = static_cast<NodeId>(parse_uint(toks[2], filename, lineno, "edge target"));
            e.line = lineno;
            blocks.back().edges.push_back(e);
        } else {
            throw ParseError(filename, lineno, "unknown directive '" + dir + "'");
        }
    }
    return blocks;
}

std::vector<RawDfg> parse_app_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(path, 0, "cannot open file");
    return parse_app_text(in, path);
}

LatencyTable parse_latency_text(std::istream &in, const std::string &filename) {
    LatencyTable lat;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty())
            continue;
        if (toks[0] != "op")
            throw ParseError(filename, lineno, "unknown directive '" + toks[0] + "'");
        if (toks.size() < 4)
            throw ParseError(filename, lineno, "expected: op <opcode> sw=<uint> hw=<decimal> [ar=<uint>]");
        const std::string &opcode = toks[1];
        LatencyEntry e;
        bool have_sw = false, have_hw = false;
        for (std::size_t i = 2; i < toks.size(); ++i) {
            std::string k, v;
            if (!split_kv(toks[i], k, v))
                throw ParseError(filename, lineno, "expected key=value, got '" + toks[i] + "'");
            if (k == "sw") {
                e.sw_latency = static_cast<int>(parse_uint(v, filename, lineno, "sw"));
                have_sw = true;
            } else if (k == "hw") {
                e.hw_latency = parse_decimal(v, filename, lineno, "hw");
                have_hw = true;
            } else if (k == "ar") {
                e.arity = static_cast<int>(parse_uint(v, filename, lineno, "ar"));
            } else {
                throw ParseError(filename, lineno, "unknown field '" + k + "'");
            }
        }
        if (!have_sw || !have_hw)
            throw ParseError(filename, lineno, "op entry needs both sw= and hw=");
        if (e.sw_latency < 1)
            throw ParseError(filename, lineno, "sw latency must be >= 1");
        if (!(e.hw_latency > 0.0))
            throw ParseError(filename, lineno, "hw latency must be > 0");
        if (lat.find(opcode))
            throw ParseError(filename, lineno, "duplicate op entry '" + opcode + "'");
        lat.set(opcode, e);
    }
    return lat;
}

LatencyTable parse_latency_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(path, 0, "cannot open file");
    return parse_latency_text(in, path);
}

namespace {

void write_block(std::ostream &out, const RawDfg &b) {
    out << "block " << b.name << " freq=" << b.exec_freq << "\n";
    std::vector<RawNode> nodes = b.nodes;
    std::sort(nodes.begin(), nodes.end(),
              [](const RawNode &a, const RawNode &c) { return a.id < c.id; });
    for (const RawNode &n : nodes) {
        out << "node " << n.id << " op=" << n.opcode;
        if (n.is_memory)
            out << " mem";
        if (n.is_live_out)
            out << " liveout";
        out << "\n";
    }
    std::vector<RawEdge> edges = b.edges;
    std::sort(edges.begin(), edges.end(), [](const RawEdge &a, const RawEdge &c) {
        return a.src != c.src ? a.src < c.src : a.dst < c.dst;
    });
    for (const RawEdge &e : edges)
        out << "edge " << e.src << " " << e.dst << "\n";
}

} // namespace

void write_app_text(std::ostream &out, std::span<const RawDfg> blocks) {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (i)
            out << "\n";
        write_block(out, blocks[i]);
    }
}

void write_app_text(std::ostream &out, const Dfg &block) {
    RawDfg raw = to_raw(block);
    write_block(out, raw);
}

void write_latency_text(std::ostream &out, const LatencyTable &lat) {
    for (const auto &[opcode, e] : lat.entries()) {
        out << "op " << opcode << " sw=" << e.sw_latency << " hw=" << e.hw_latency;
        if (e.arity != 2)
            out << " ar=" << e.arity;
        out << "\n";
    }
}

RawDfg to_raw(const Dfg &dfg) {
    RawDfg raw;
    raw.name = dfg.name();
    raw.exec_freq = dfg.exec_freq();
    for (const OpNode &n : dfg.nodes())
        raw.nodes.push_back({n.id, n.opcode, n.is_memory, n.is_live_out, 0});
    for (auto [s, d] : dfg.edges())
        raw.edges.push_back({s, d, 0});
    return raw;
}

} // namespace isegen
