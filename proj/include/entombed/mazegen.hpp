#pragma once

// Row-streaming maze generator. Each new 8-bit row is produced left to right
// from a five-bit wall context (two bits to the left, three above) looked up
// in a fixed 32-entry table, followed by two postprocessing rules that break
// up long vertical runs.

#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <random>
#include <vector>

#include "entombed/prng.hpp"

namespace entombed::maze {

using Row = std::uint8_t;  // bit 7 = leftmost generated cell, 1 = wall

enum class CellRule : std::uint8_t { Wall, Open, Random };

const char* to_string(CellRule r) noexcept;

// Indexed by (ab << 3) | cde, where ab are the two cells to the left of the
// new cell (a furthest) and cde the three cells above it.
class MysteryTable {
 public:
  static constexpr std::size_t kEntries = 32;

  MysteryTable() = default;
  explicit MysteryTable(const std::array<CellRule, kEntries>& entries) : entries_(entries) {}

  static constexpr std::size_t index(unsigned ab, unsigned cde) noexcept {
    return ((ab & 0b11u) << 3) | (cde & 0b111u);
  }

  CellRule at(unsigned ab, unsigned cde) const noexcept { return entries_[index(ab, cde)]; }
  CellRule operator[](std::size_t i) const noexcept { return entries_[i]; }
  const std::array<CellRule, kEntries>& entries() const noexcept { return entries_; }

  bool operator==(const MysteryTable&) const = default;

 private:
  std::array<CellRule, kEntries> entries_{};
};

// The table shipped in the game.
const MysteryTable& default_table();

enum class BitKind : std::uint8_t { Left, Right, Mid };

const char* to_string(BitKind k) noexcept;

class RandomBitSource {
 public:
  virtual ~RandomBitSource() = default;
  virtual int draw(BitKind kind) = 0;
};

// Steps the buggy PRNG once per draw and returns bit 7 of the low byte X.
// This is a model, not a claim about which bit the game reads.
class ModelBitSource final : public RandomBitSource {
 public:
  explicit ModelBitSource(prng::Word seed) : state_(seed) {}
  int draw(BitKind) override;
  prng::Word state() const noexcept { return state_; }

 private:
  prng::Word state_;
};

class ConstantBitSource final : public RandomBitSource {
 public:
  explicit ConstantBitSource(int bit) : bit_(bit & 1) {}
  int draw(BitKind) override { return bit_; }

 private:
  int bit_;
};

// Reproducible bits for tests, independent of the game's generator.
class SeededTestSource final : public RandomBitSource {
 public:
  explicit SeededTestSource(std::uint64_t seed) : engine_(seed) {}
  int draw(BitKind) override { return static_cast<int>(engine_() >> 63); }

 private:
  std::mt19937_64 engine_;
};

struct BitRecord {
  BitKind kind = BitKind::Mid;
  int bit = 0;
  bool operator==(const BitRecord&) const = default;
};

// Replays a recorded stream. Each draw must request the kind that was
// recorded (Fault TraceDesync) and the stream must not run dry (Fault
// BitUnderflow).
class ReplayBitSource final : public RandomBitSource {
 public:
  explicit ReplayBitSource(std::vector<BitRecord> bits) : bits_(std::move(bits)) {}
  int draw(BitKind kind) override;

  std::size_t consumed() const noexcept { return cursor_; }
  std::size_t leftover() const noexcept { return bits_.size() - cursor_; }
  bool exhausted() const noexcept { return cursor_ == bits_.size(); }

 private:
  std::vector<BitRecord> bits_;
  std::size_t cursor_ = 0;
};

std::unique_ptr<ReplayBitSource> replay_source(std::vector<BitRecord> bits);

// Forwards to another source and keeps every draw.
class RecordingBitSource final : public RandomBitSource {
 public:
  explicit RecordingBitSource(RandomBitSource& inner) : inner_(inner) {}
  int draw(BitKind kind) override;
  const std::vector<BitRecord>& records() const noexcept { return records_; }
  std::vector<BitRecord> take_records() noexcept { return std::move(records_); }

 private:
  RandomBitSource& inner_;
  std::vector<BitRecord> records_;
};

enum class Postprocess : std::uint8_t { None, Condition1, Condition2 };

const char* to_string(Postprocess p) noexcept;

struct RowTrace {
  int left_bit = 0;
  int right_bit = 0;
  std::vector<int> mid_bits;
  Row row_before_postprocess = 0;
  Row row_after_postprocess = 0;
  Postprocess postprocess_fired = Postprocess::None;
  // Table index used for each generated cell, leftmost first.
  std::array<std::uint8_t, 8> lookups{};

  bool operator==(const RowTrace&) const = default;
};

// The most recent rows, oldest first; never empty and never longer than 11.
class MazeHistory {
 public:
  static constexpr std::size_t kCapacity = 11;

  MazeHistory() : rows_{0x00} {}
  explicit MazeHistory(std::vector<Row> rows);

  void push(Row r);
  Row newest() const noexcept { return rows_.back(); }
  Row& newest() noexcept { return rows_.back(); }
  std::size_t size() const noexcept { return rows_.size(); }
  const std::deque<Row>& rows() const noexcept { return rows_; }

  // 1 = newest.
  Row from_newest(std::size_t n) const { return rows_[rows_.size() - n]; }

  bool operator==(const MazeHistory&) const = default;

 private:
  std::deque<Row> rows_;
};

struct GeneratedRow {
  Row row = 0;
  RowTrace trace;
};

// Builds the next row from the newest row in `history`. Does not modify
// history and does not postprocess.
GeneratedRow generate_row(const MazeHistory& history, RandomBitSource& source,
                          const MysteryTable& table = default_table());

// Applies both postprocessing rules in order to the newest row. Condition 1
// zeroes the row, after which Condition 2 cannot fire.
Postprocess postprocess(MazeHistory& history);

struct Maze {
  std::vector<Row> rows;  // after postprocessing
  std::vector<RowTrace> traces;
};

// Starts from history [0x00]. Throws std::invalid_argument when rows == 0.
Maze generate_maze(RandomBitSource& source, std::size_t rows = 60,
                   const MysteryTable& table = default_table());

}  // namespace entombed::maze
