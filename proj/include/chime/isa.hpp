/*
 * Copyright 2026 The CHIME Simulator Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CHIME_ISA_HPP
#define CHIME_ISA_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace chime {

enum class OpKind : std::uint8_t {
  AND, OR, NAND, NOR, XOR, NOT,
  ADD, SUB, MULT, SHIFT, ROTATE,
  CMP_LT, CMP_GT, CMP_EQ,
  MOVE, COPY, INVALIDATE,
  CPU_OP
};

inline constexpr std::size_t kNumKinds = 18;
inline constexpr std::uint32_t kBlockBytes = 64;

inline constexpr std::array<const char *, kNumKinds> kKindNames = {
    "AND",    "OR",     "NAND",   "NOR",    "XOR",  "NOT",
    "ADD",    "SUB",    "MULT",   "SHIFT",  "ROTATE",
    "CMP_LT", "CMP_GT", "CMP_EQ",
    "MOVE",   "COPY",   "INVALIDATE",
    "CPU_OP"};

inline const char *kind_name(OpKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

inline std::optional<OpKind> kind_from_name(const std::string &s)
{
  for (std::size_t i = 0; i < kNumKinds; ++i)
    if (s == kKindNames[i]) return static_cast<OpKind>(i);
  return std::nullopt;
}

inline bool is_compute(OpKind k) { return k <= OpKind::CMP_EQ; }
inline bool is_data_management(OpKind k)
{
  return k == OpKind::MOVE || k == OpKind::COPY || k == OpKind::INVALIDATE;
}
inline bool is_logical(OpKind k) { return k <= OpKind::NOT; }

inline std::vector<OpKind> compute_kinds()
{
  std::vector<OpKind> v;
  for (std::size_t i = 0; i <= static_cast<std::size_t>(OpKind::CMP_EQ); ++i)
    v.push_back(static_cast<OpKind>(i));
  return v;
}

struct BlockAddr {
  std::uint64_t address = 0;
  std::uint32_t size_bits = 32;

  std::uint64_t block() const { return address / kBlockBytes; }
  bool operator==(const BlockAddr &o) const = default;
  auto operator<=>(const BlockAddr &o) const = default;
};

struct Instruction {
  std::uint32_t id = 0;
  OpKind kind = OpKind::ADD;
  std::uint8_t nsrc = 0;
  std::array<BlockAddr, 2> src{};
  std::optional<BlockAddr> dest;
  std::uint32_t width_bits = 32;
  // MOVE target level name; empty otherwise
  std::string to_level;

  std::vector<BlockAddr> srcs() const { return {src.begin(), src.begin() + nsrc}; }
  void add_src(BlockAddr b)
  {
    if (nsrc >= 2) throw std::invalid_argument("instruction takes at most two sources");
    src[nsrc++] = b;
  }
};

using Edge = std::pair<std::uint32_t, std::uint32_t>;

struct Trace {
  std::string name;
  std::vector<Instruction> instrs;
  std::vector<Edge> deps;
};

struct Violation {
  std::uint32_t id;
  std::string rule;
  std::string detail;
};

// Latest prior producer per source operand. Duplicate edges collapse.
inline std::vector<Edge> dependence_edges(const std::vector<Instruction> &instrs)
{
  std::unordered_map<std::uint64_t, std::uint32_t> last;
  std::vector<Edge> out;
  for (std::size_t i = 0; i < instrs.size(); ++i) {
    const auto &in = instrs[i];
    std::uint32_t seen[2];
    int ns = 0;
    for (int s = 0; s < in.nsrc; ++s) {
      auto it = last.find(in.src[s].address);
      if (it == last.end()) continue;
      if (ns == 1 && seen[0] == it->second) continue;
      seen[ns++] = it->second;
      out.emplace_back(it->second, static_cast<std::uint32_t>(i));
    }
    if (in.dest) last[in.dest->address] = static_cast<std::uint32_t>(i);
  }
  return out;
}

inline Trace make_trace(std::string name, std::vector<Instruction> instrs)
{
  for (std::size_t i = 0; i < instrs.size(); ++i) instrs[i].id = static_cast<std::uint32_t>(i);
  Trace t{std::move(name), std::move(instrs), {}};
  t.deps = dependence_edges(t.instrs);
  return t;
}

inline std::vector<Violation> validate_trace(const Trace &t)
{
  std::vector<Violation> v;
  auto bad = [&](std::uint32_t id, const char *rule, std::string d) {
    v.push_back({id, rule, std::move(d)});
  };
  for (std::size_t i = 0; i < t.instrs.size(); ++i) {
    const auto &in = t.instrs[i];
    const auto id = in.id;
    if (id != i) bad(id, "id-order", "id " + std::to_string(id) + " at position " + std::to_string(i));
    std::vector<BlockAddr> ops = in.srcs();
    if (in.dest) ops.push_back(*in.dest);
    for (const auto &b : ops) {
      if (b.size_bits < 1 || b.size_bits > kBlockBytes * 8)
        bad(id, "block-size", "operand of " + std::to_string(b.size_bits) + " bits");
      else if ((b.address % kBlockBytes) * 8 + b.size_bits > kBlockBytes * 8)
        bad(id, "block-straddle", "operand crosses a 64-byte block");
    }
    if (is_compute(in.kind)) {
      if (in.width_bits < 1 || in.width_bits > 32)
        bad(id, "width", std::to_string(in.width_bits) + "-bit compute op");
      if (in.kind == OpKind::MULT) {
        bool wide = in.width_bits > 16;
        for (int s = 0; s < in.nsrc; ++s) wide = wide || in.src[s].size_bits > 16;
        if (wide) bad(id, "mult-width", "multiplier inputs exceed 16 bits");
        if (in.dest && in.dest->size_bits > 32) bad(id, "mult-width", "product exceeds 32 bits");
      }
      if (in.nsrc < 1 || !in.dest) bad(id, "operands", "compute op needs a source and a destination");
    } else if (in.kind == OpKind::INVALIDATE) {
      if (in.nsrc != 1 || in.dest) bad(id, "operands", "INVALIDATE takes one source and no destination");
    } else if (in.kind == OpKind::MOVE) {
      if (in.nsrc != 1 || in.to_level.empty()) bad(id, "operands", "MOVE takes one source and a target level");
    } else if (in.kind == OpKind::COPY) {
      if (in.nsrc != 1 || !in.dest) bad(id, "operands", "COPY takes one source and a destination");
    }
  }
  std::set<Edge> real;
  for (const auto &e : dependence_edges(t.instrs)) real.insert(e);
  for (const auto &[p, c] : t.deps) {
    if (p >= c || c >= t.instrs.size()) {
      bad(c, "dep-order", "edge " + std::to_string(p) + "->" + std::to_string(c) + " is not forward");
      continue;
    }
    if (!real.count({p, c}))
      bad(c, "dep-mismatch", "edge " + std::to_string(p) + "->" + std::to_string(c) + " has no def-use");
  }
  return v;
}

inline std::vector<std::pair<OpKind, OpKind>> extract_instruction_pairs(const Trace &t)
{
  std::vector<std::pair<OpKind, OpKind>> out;
  out.reserve(t.deps.size());
  for (const auto &[p, c] : t.deps) {
    OpKind a = t.instrs[p].kind, b = t.instrs[c].kind;
    if (is_compute(a) && is_compute(b)) out.emplace_back(a, b);
  }
  return out;
}

// Text form, one instruction per line:
//   id KIND width dest src1 [src2] [@LEVEL]
// operands are 0xADDR:bits, '-' for no destination, '#' starts a comment
namespace detail {

inline std::string fmt_block(const BlockAddr &b)
{
  std::ostringstream os;
  os << "0x" << std::hex << b.address << std::dec << ':' << b.size_bits;
  return os.str();
}

inline BlockAddr parse_block(const std::string &tok, std::size_t line)
{
  auto colon = tok.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument("no size");
    BlockAddr b;
    b.address = std::stoull(tok.substr(0, colon), nullptr, 0);
    b.size_bits = static_cast<std::uint32_t>(std::stoul(tok.substr(colon + 1)));
    return b;
  } catch (const std::exception &) {
    throw std::runtime_error("line " + std::to_string(line) + ": bad operand '" + tok + "'");
  }
}

} // namespace detail

inline std::string trace_to_text(const Trace &t)
{
  std::ostringstream os;
  os << "# trace " << (t.name.empty() ? "unnamed" : t.name) << '\n';
  for (const auto &in : t.instrs) {
    os << in.id << ' ' << kind_name(in.kind) << ' ' << in.width_bits << ' '
       << (in.dest ? detail::fmt_block(*in.dest) : "-");
    for (int s = 0; s < in.nsrc; ++s) os << ' ' << detail::fmt_block(in.src[s]);
    if (!in.to_level.empty()) os << " @" << in.to_level;
    os << '\n';
  }
  return os.str();
}

inline Trace trace_from_text(const std::string &text, std::string name = {})
{
  std::istringstream is(text);
  std::string line;
  std::vector<Instruction> ins;
  std::size_t ln = 0;
  while (std::getline(is, line)) {
    ++ln;
    auto hash = line.find('#');
    if (hash == 0 && name.empty() && line.rfind("# trace ", 0) == 0) name = line.substr(8);
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    if (tok.size() < 4) throw std::runtime_error("line " + std::to_string(ln) + ": too few fields");
    Instruction in;
    auto k = kind_from_name(tok[1]);
    if (!k) throw std::runtime_error("line " + std::to_string(ln) + ": unknown kind '" + tok[1] + "'");
    in.kind = *k;
    try {
      in.id = static_cast<std::uint32_t>(std::stoul(tok[0]));
      in.width_bits = static_cast<std::uint32_t>(std::stoul(tok[2]));
    } catch (const std::exception &) {
      throw std::runtime_error("line " + std::to_string(ln) + ": bad id or width");
    }
    if (tok[3] != "-") in.dest = detail::parse_block(tok[3], ln);
    for (std::size_t i = 4; i < tok.size(); ++i) {
      if (tok[i][0] == '@') {
        in.to_level = tok[i].substr(1);
        continue;
      }
      if (in.nsrc == 2) throw std::runtime_error("line " + std::to_string(ln) + ": more than two sources");
      in.add_src(detail::parse_block(tok[i], ln));
    }
    ins.push_back(std::move(in));
  }
  Trace t{std::move(name), std::move(ins), {}};
  t.deps = dependence_edges(t.instrs);
  return t;
}

} // namespace chime

#endif // CHIME_ISA_HPP
