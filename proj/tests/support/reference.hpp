#pragma once

// Brute-force reference implementations used as independent oracles.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "entombed/maze_analysis.hpp"
#include "entombed/romscan.hpp"

namespace reference {

using Byte = std::uint8_t;

// Checks every offset by comparing fixed bytes directly and every pair of
// equally named slots pairwise. No binding map.
inline std::vector<std::size_t> brute_force_offsets(const std::vector<Byte>& buf,
                                                    const entombed::romscan::SignatureTemplate& sig) {
  const auto& el = sig.elements();
  std::vector<std::size_t> out;
  if (buf.size() < el.size()) return out;
  for (std::size_t off = 0; off + el.size() <= buf.size(); ++off) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < el.size(); ++i) {
      if (std::holds_alternative<Byte>(el[i])) {
        ok = std::get<Byte>(el[i]) == buf[off + i];
        continue;
      }
      for (std::size_t j = i + 1; ok && j < el.size(); ++j) {
        if (std::holds_alternative<entombed::cpu::Slot>(el[j]) &&
            std::get<entombed::cpu::Slot>(el[j]).name == std::get<entombed::cpu::Slot>(el[i]).name) {
          ok = buf[off + i] == buf[off + j];
        }
      }
    }
    if (ok) out.push_back(off);
  }
  return out;
}

// 4-neighbour connectivity between top and bottom rows via union-find with a
// virtual top node and bottom node.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

inline bool top_connects_to_bottom(const entombed::maze::Grid& g) {
  const std::size_t w = g.width(), h = g.height();
  const std::size_t top = w * h, bottom = w * h + 1;
  UnionFind uf(w * h + 2);
  for (std::size_t r = 0; r < h; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      if (g.wall(r, c)) continue;
      const std::size_t id = r * w + c;
      if (r == 0) uf.unite(id, top);
      if (r == h - 1) uf.unite(id, bottom);
      if (c + 1 < w && !g.wall(r, c + 1)) uf.unite(id, id + 1);
      if (r + 1 < h && !g.wall(r + 1, c)) uf.unite(id, id + w);
    }
  }
  return uf.find(top) == uf.find(bottom);
}

// Random bytes guaranteed to contain no match of `sig`, checked by the brute
// force matcher.
inline std::vector<Byte> clean_noise(std::mt19937_64& rng, std::size_t n,
                                     const entombed::romscan::SignatureTemplate& sig) {
  std::uniform_int_distribution<int> byte(0, 255);
  for (;;) {
    std::vector<Byte> buf(n);
    for (auto& b : buf) b = static_cast<Byte>(byte(rng));
    if (brute_force_offsets(buf, sig).empty()) return buf;
  }
}

struct PlantedFile {
  std::filesystem::path path;
  std::size_t offset = 0;
  entombed::romscan::Bindings bindings;
};

// Ten 4 KiB files; three of them carry one instantiated PRNG routine each.
inline std::vector<PlantedFile> write_synthetic_corpus(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const auto sig = entombed::romscan::prng_signature();
  std::mt19937_64 rng(0xE7B0'0001);
  std::vector<PlantedFile> planted;
  const std::map<int, std::pair<std::size_t, entombed::romscan::Bindings>> plan{
      {2, {0x0CA5, {{"W", 0xDD}, {"X", 0xDE}, {"Y", 0xDF}, {"Z", 0xE0}}}},
      {5, {100, {{"W", 0x10}, {"X", 0x11}, {"Y", 0x12}, {"Z", 0x13}}}},
      {9, {4096 - 37, {{"W", 0x80}, {"X", 0x80}, {"Y", 0x81}, {"Z", 0x9A}}}},
  };
  for (int i = 0; i < 10; ++i) {
    auto buf = clean_noise(rng, 4096, sig);
    const fs::path path = dir / ("rom_" + std::to_string(i) + ".bin");
    if (auto it = plan.find(i); it != plan.end()) {
      const auto bytes = sig.instantiate(it->second.second);
      std::copy(bytes.begin(), bytes.end(), buf.begin() + static_cast<long>(it->second.first));
      planted.push_back({path, it->second.first, it->second.second});
    }
    std::ofstream(path, std::ios::binary)
        .write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  }
  return planted;
}

}  // namespace reference
