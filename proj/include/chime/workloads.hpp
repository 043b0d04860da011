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

#ifndef CHIME_WORKLOADS_HPP
#define CHIME_WORKLOADS_HPP

#include "chime/isa.hpp"

#include <map>
#include <random>

namespace chime {

enum class KernelId : std::uint8_t { BNN, GRAY, THRESHOLDING, MAC, MAT_ADD, MAT_MULT, RMSE, WORDCOUNT };

inline constexpr std::array<KernelId, 8> kAllKernels = {
    KernelId::BNN, KernelId::GRAY,     KernelId::THRESHOLDING, KernelId::MAC,
    KernelId::MAT_ADD, KernelId::MAT_MULT, KernelId::RMSE,     KernelId::WORDCOUNT};

inline const char *kernel_name(KernelId k)
{
  static const char *n[] = {"bnn", "gray", "thresholding", "mac", "mat_add", "mat_mult", "rmse", "wordcount"};
  return n[static_cast<int>(k)];
}

inline std::optional<KernelId> kernel_from_name(const std::string &s)
{
  for (auto k : kAllKernels)
    if (s == kernel_name(k)) return k;
  return std::nullopt;
}

struct SizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// n is the matrix/image dimension for bnn, gray, thresholding, mat_add and
// mat_mult, and the element count for mac, rmse and wordcount.
struct KernelSpec {
  KernelId id = KernelId::MAT_ADD;
  std::uint64_t n = 64;
  std::uint32_t width_bits = 32;
  std::uint64_t seed = 1;
};

// Full evaluation sizes and the scaled-down sizes used for routine runs.
inline std::uint64_t full_size(KernelId k)
{
  switch (k) {
  case KernelId::MAC: return 1048576;
  case KernelId::RMSE: return 100000;
  case KernelId::WORDCOUNT: return 20000;
  default: return 1024;
  }
}

inline std::uint64_t desk_size(KernelId k)
{
  switch (k) {
  case KernelId::MAC:
  case KernelId::RMSE: return 4096;
  case KernelId::WORDCOUNT: return 1024;
  default: return 64;
  }
}

// partial accumulators in mac/wordcount cover this many elements each
inline constexpr std::uint64_t kChainLength = 64;

inline std::uint64_t mult_width(const KernelSpec &s) { return std::min<std::uint32_t>(16, s.width_bits); }

// Closed-form kind histogram; used at sizes too large to generate.
inline std::map<OpKind, std::uint64_t> kind_histogram(const KernelSpec &s)
{
  const std::uint64_t n = s.n;
  std::map<OpKind, std::uint64_t> h;
  auto add = [&](OpKind k, std::uint64_t c) {
    if (c) h[k] += c;
  };
  const std::uint64_t ch = (n + kChainLength - 1) / kChainLength;
  switch (s.id) {
  case KernelId::BNN:
    add(OpKind::XOR, n * n * n);
    add(OpKind::ADD, n * n * (n - 1));
    add(OpKind::CMP_GT, n * n);
    break;
  case KernelId::GRAY:
    add(OpKind::ADD, 3 * n * n);
    add(OpKind::SHIFT, n * n);
    break;
  case KernelId::THRESHOLDING: add(OpKind::CMP_GT, n * n); break;
  case KernelId::MAC:
    add(OpKind::MULT, n);
    add(OpKind::ADD, n + (ch ? ch - 1 : 0));
    break;
  case KernelId::MAT_ADD: add(OpKind::ADD, n * n); break;
  case KernelId::MAT_MULT:
    add(OpKind::MULT, n * n * n);
    add(OpKind::ADD, n * n * (n - 1));
    break;
  case KernelId::RMSE:
    add(OpKind::SUB, n);
    add(OpKind::MULT, n);
    add(OpKind::ADD, n ? n - 1 : 0);
    add(OpKind::CPU_OP, n ? 2 : 0);
    break;
  case KernelId::WORDCOUNT:
    add(OpKind::CMP_EQ, n);
    add(OpKind::ADD, n + (ch ? ch - 1 : 0));
    break;
  }
  return h;
}

inline std::uint64_t instruction_count(const KernelSpec &s)
{
  std::uint64_t c = 0;
  for (const auto &[k, v] : kind_histogram(s)) c += v;
  return c;
}

using PairKey = std::pair<OpKind, OpKind>;

// Closed-form (producer kind, consumer kind) counts over compute pairs.
inline std::map<PairKey, std::uint64_t> pair_histogram(const KernelSpec &s)
{
  const std::uint64_t n = s.n;
  std::map<PairKey, std::uint64_t> h;
  auto add = [&](OpKind a, OpKind b, std::uint64_t c) {
    if (c) h[{a, b}] += c;
  };
  // edges of a balanced pairwise reduction over k produced leaves
  auto tree = [&](OpKind leaf, std::uint64_t k, std::uint64_t copies) {
    if (k < 2) return;
    add(leaf, OpKind::ADD, k * copies);
    add(OpKind::ADD, OpKind::ADD, (k - 2) * copies);
  };
  const std::uint64_t ch = (n + kChainLength - 1) / kChainLength;
  switch (s.id) {
  case KernelId::BNN:
    tree(OpKind::XOR, n, n * n);
    add(n >= 2 ? OpKind::ADD : OpKind::XOR, OpKind::CMP_GT, n * n);
    break;
  case KernelId::GRAY:
    add(OpKind::ADD, OpKind::ADD, 2 * n * n);
    add(OpKind::ADD, OpKind::SHIFT, n * n);
    break;
  case KernelId::THRESHOLDING:
  case KernelId::MAT_ADD: break;
  case KernelId::MAC:
  case KernelId::WORDCOUNT: {
    OpKind e = s.id == KernelId::MAC ? OpKind::MULT : OpKind::CMP_EQ;
    add(e, OpKind::ADD, n);
    add(OpKind::ADD, OpKind::ADD, n - ch);
    if (ch >= 2) add(OpKind::ADD, OpKind::ADD, ch + ch - 2);
    break;
  }
  case KernelId::MAT_MULT: tree(OpKind::MULT, n, n * n); break;
  case KernelId::RMSE:
    add(OpKind::SUB, OpKind::MULT, n);
    tree(OpKind::MULT, n, 1);
    break;
  }
  return h;
}

namespace detail {

struct Alloc {
  std::uint64_t next = 0;
  std::uint64_t limit = 0;

  // packed array of count elements, starting on a block boundary
  std::uint64_t array(std::uint64_t count, std::uint32_t bits)
  {
    std::uint64_t base = (next + kBlockBytes - 1) / kBlockBytes * kBlockBytes;
    std::uint64_t bytes = count * ((bits + 7) / 8);
    if (limit && base + bytes > limit)
      throw SizeError("workload needs more than " + std::to_string(limit) + " bytes of memory");
    next = base + bytes;
    return base;
  }
  static BlockAddr at(std::uint64_t base, std::uint64_t i, std::uint32_t bits)
  {
    return {base + i * ((bits + 7) / 8), bits};
  }
};

struct Builder {
  std::vector<Instruction> out;
  Alloc mem;

  BlockAddr op(OpKind k, std::uint32_t width, BlockAddr dest, BlockAddr a)
  {
    Instruction in;
    in.kind = k;
    in.width_bits = width;
    in.dest = dest;
    in.add_src(a);
    out.push_back(in);
    return dest;
  }
  BlockAddr op(OpKind k, std::uint32_t width, BlockAddr dest, BlockAddr a, BlockAddr b)
  {
    Instruction in;
    in.kind = k;
    in.width_bits = width;
    in.dest = dest;
    in.add_src(a);
    in.add_src(b);
    out.push_back(in);
    return dest;
  }
  BlockAddr scratch(std::uint32_t bits) { return {mem.array(1, bits), bits}; }

  // pairwise reduction, level by level; odd leftovers carry upward
  BlockAddr reduce(std::vector<BlockAddr> v, std::uint32_t width)
  {
    std::vector<std::vector<BlockAddr>> one{std::move(v)};
    return reduce_all(one, width).front();
  }

  // Reduce many independent vectors together, one tree level at a time,
  // so that each level is a run of independent ADDs.
  std::vector<BlockAddr> reduce_all(std::vector<std::vector<BlockAddr>> &vs, std::uint32_t width)
  {
    for (bool more = true; more;) {
      more = false;
      for (auto &v : vs) {
        if (v.size() < 2) continue;
        std::vector<BlockAddr> nx;
        std::uint64_t base = mem.array(v.size() / 2, width);
        for (std::size_t i = 0; i + 1 < v.size(); i += 2)
          nx.push_back(op(OpKind::ADD, width, Alloc::at(base, i / 2, width), v[i], v[i + 1]));
        if (v.size() % 2) nx.push_back(v.back());
        v.swap(nx);
        more = more || v.size() > 1;
      }
    }
    std::vector<BlockAddr> out;
    for (auto &v : vs) out.push_back(v.front());
    return out;
  }
};

} // namespace detail

inline constexpr std::uint64_t kDefaultMemoryBytes = 8ull << 30;
inline constexpr std::uint64_t kMaxGeneratedInstructions = 64ull << 20;

inline Trace generate(const KernelSpec &s, std::uint64_t memory_bytes = kDefaultMemoryBytes)
{
  if (s.n == 0) throw SizeError("kernel size must be positive");
  if (s.width_bits < 8 || s.width_bits > 32) throw SizeError("width must be 8..32 bits");
  if (instruction_count(s) > kMaxGeneratedInstructions)
    throw SizeError(std::string(kernel_name(s.id)) + " n=" + std::to_string(s.n) +
                    " is too large to generate; use the closed-form histograms");
  const std::uint64_t n = s.n;
  const std::uint32_t w = s.width_bits;
  const std::uint32_t mw = static_cast<std::uint32_t>(mult_width(s));
  detail::Builder b;
  b.mem.limit = memory_bytes;
  std::mt19937_64 rng(s.seed);
  b.mem.next = (rng() % 4096) * kBlockBytes;
  using detail::Alloc;

  switch (s.id) {
  case KernelId::BNN: {
    std::uint64_t W = b.mem.array(n * n, w), X = b.mem.array(n * n, w), T = b.mem.array(n * n, 16);
    std::uint64_t O = b.mem.array(n * n, 8);
    std::vector<std::vector<BlockAddr>> v(n * n);
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = 0; j < n; ++j) {
        std::uint64_t P = b.mem.array(n, w);
        for (std::uint64_t k = 0; k < n; ++k)
          v[i * n + j].push_back(
              b.op(OpKind::XOR, w, Alloc::at(P, k, w), Alloc::at(W, i * n + k, w), Alloc::at(X, k * n + j, w)));
      }
    auto sums = b.reduce_all(v, 16);
    for (std::uint64_t o = 0; o < n * n; ++o)
      b.op(OpKind::CMP_GT, 16, Alloc::at(O, o, 8), sums[o], Alloc::at(T, o, 16));
    break;
  }
  case KernelId::GRAY: {
    std::uint64_t R = b.mem.array(n * n, 8), G = b.mem.array(n * n, 8), B = b.mem.array(n * n, 8);
    std::uint64_t S1 = b.mem.array(n * n, 16), S2 = b.mem.array(n * n, 16), S3 = b.mem.array(n * n, 16);
    std::uint64_t Y = b.mem.array(n * n, 8);
    for (std::uint64_t p = 0; p < n * n; ++p)
      b.op(OpKind::ADD, 16, Alloc::at(S1, p, 16), Alloc::at(R, p, 8), Alloc::at(B, p, 8));
    for (std::uint64_t p = 0; p < n * n; ++p)
      b.op(OpKind::ADD, 16, Alloc::at(S2, p, 16), Alloc::at(G, p, 8), Alloc::at(G, p, 8));
    for (std::uint64_t p = 0; p < n * n; ++p)
      b.op(OpKind::ADD, 16, Alloc::at(S3, p, 16), Alloc::at(S1, p, 16), Alloc::at(S2, p, 16));
    for (std::uint64_t p = 0; p < n * n; ++p) b.op(OpKind::SHIFT, 16, Alloc::at(Y, p, 8), Alloc::at(S3, p, 16));
    break;
  }
  case KernelId::THRESHOLDING: {
    std::uint64_t I = b.mem.array(n * n, 8), T = b.mem.array(1, 8), O = b.mem.array(n * n, 8);
    for (std::uint64_t p = 0; p < n * n; ++p)
      b.op(OpKind::CMP_GT, 8, Alloc::at(O, p, 8), Alloc::at(I, p, 8), Alloc::at(T, 0, 8));
    break;
  }
  case KernelId::MAC:
  case KernelId::WORDCOUNT: {
    const bool mac = s.id == KernelId::MAC;
    const std::uint32_t ew = mac ? mw : 8;
    std::uint64_t A = b.mem.array(n, ew), B = b.mem.array(mac ? n : 1, ew);
    std::uint64_t E = b.mem.array(n, mac ? 2 * mw : 8);
    const std::uint64_t ch = (n + kChainLength - 1) / kChainLength;
    std::uint64_t C = b.mem.array(ch, w);
    // strip-mined: one element per partial accumulator per round
    for (std::uint64_t r0 = 0; r0 < n; r0 += ch) {
      std::uint64_t r1 = std::min(n, r0 + ch);
      for (std::uint64_t i = r0; i < r1; ++i) {
        if (mac)
          b.op(OpKind::MULT, mw, Alloc::at(E, i, 2 * mw), Alloc::at(A, i, ew), Alloc::at(B, i, ew));
        else
          b.op(OpKind::CMP_EQ, 8, Alloc::at(E, i, 8), Alloc::at(A, i, 8), Alloc::at(B, 0, 8));
      }
      for (std::uint64_t i = r0; i < r1; ++i) {
        BlockAddr acc = Alloc::at(C, i % ch, w);
        b.op(OpKind::ADD, w, acc, acc, Alloc::at(E, i, mac ? 2 * mw : 8));
      }
    }
    std::vector<BlockAddr> parts;
    for (std::uint64_t c = 0; c < ch; ++c) parts.push_back(Alloc::at(C, c, w));
    b.reduce(parts, w);
    break;
  }
  case KernelId::MAT_ADD: {
    std::uint64_t A = b.mem.array(n * n, w), B = b.mem.array(n * n, w), C = b.mem.array(n * n, w);
    for (std::uint64_t p = 0; p < n * n; ++p)
      b.op(OpKind::ADD, w, Alloc::at(C, p, w), Alloc::at(A, p, w), Alloc::at(B, p, w));
    break;
  }
  case KernelId::MAT_MULT: {
    std::uint64_t A = b.mem.array(n * n, mw), B = b.mem.array(n * n, mw);
    std::vector<std::vector<BlockAddr>> v(n * n);
    for (std::uint64_t i = 0; i < n; ++i)
      for (std::uint64_t j = 0; j < n; ++j) {
        std::uint64_t P = b.mem.array(n, 2 * mw);
        for (std::uint64_t k = 0; k < n; ++k)
          v[i * n + j].push_back(b.op(OpKind::MULT, mw, Alloc::at(P, k, 2 * mw), Alloc::at(A, i * n + k, mw),
                                      Alloc::at(B, k * n + j, mw)));
      }
    b.reduce_all(v, w);
    break;
  }
  case KernelId::RMSE: {
    std::uint64_t X = b.mem.array(n, mw), Yv = b.mem.array(n, mw), D = b.mem.array(n, mw), Q = b.mem.array(n, 2 * mw);
    std::vector<BlockAddr> sq;
    for (std::uint64_t i = 0; i < n; ++i)
      b.op(OpKind::SUB, mw, Alloc::at(D, i, mw), Alloc::at(X, i, mw), Alloc::at(Yv, i, mw));
    for (std::uint64_t i = 0; i < n; ++i)
      sq.push_back(b.op(OpKind::MULT, mw, Alloc::at(Q, i, 2 * mw), Alloc::at(D, i, mw), Alloc::at(D, i, mw)));
    BlockAddr sum = b.reduce(sq, w);
    BlockAddr mean = b.op(OpKind::CPU_OP, w, b.scratch(w), sum);
    b.op(OpKind::CPU_OP, w, b.scratch(w), mean);
    break;
  }
  }
  return make_trace(std::string(kernel_name(s.id)) + "_" + std::to_string(n), std::move(b.out));
}

} // namespace chime

#endif // CHIME_WORKLOADS_HPP
