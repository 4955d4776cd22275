#pragma once

// Playfield expansion, text rendering, solvability and summary statistics
// for generated mazes.

#include <bitset>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entombed/mazegen.hpp"
#include "entombed/prng.hpp"

namespace entombed::maze {

inline constexpr std::size_t kPlayfieldWidth = 40;

// Bit c is column c (0 = screen left). Four fixed wall columns, then each
// generated bit doubled, then the whole half mirrored.
std::bitset<kPlayfieldWidth> expand_row(Row row) noexcept;

// "X" for wall, "_" for open: the 20-column left half, one space, then the
// reversed half. Always 41 characters.
std::string render_row(Row row);

// Inverse of render_row. Throws Fault(BadRow) on anything render_row could
// not have produced.
Row parse_row(std::string_view line);

struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;
  bool operator==(const Cell&) const = default;
};

// Boolean wall matrix, row-major.
class Grid {
 public:
  Grid(std::size_t width, std::size_t height);

  static Grid from_rows(std::span<const Row> rows);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  bool wall(std::size_t r, std::size_t c) const { return cells_[r * width_ + c] != 0; }
  void set_wall(std::size_t r, std::size_t c, bool w) { cells_[r * width_ + c] = w ? 1 : 0; }

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> cells_;
};

struct SolvabilityReport {
  bool solvable = false;
  std::optional<std::vector<Cell>> witness_path;  // top row first
};

// Static proxy for "can the player get from the top to the bottom": BFS over
// open cells with 4-neighbour moves from every open top-row cell.
SolvabilityReport is_solvable(const Grid& grid);

struct PatternStats {
  std::size_t mazes_generated = 0;
  std::size_t rows_generated = 0;
  std::size_t condition1_fires = 0;
  std::size_t condition2_fires = 0;
  std::size_t unsolvable_count = 0;
  std::size_t table_entries_used = 0;  // distinct table keys hit, 0..32

  double unsolvable_fraction() const noexcept {
    return mazes_generated == 0 ? 0.0
                                : static_cast<double>(unsolvable_count) /
                                      static_cast<double>(mazes_generated);
  }
};

// Seed for maze `index` in a survey: (seed + index) pushed through the buggy
// step once.
prng::Word survey_maze_seed(prng::Word seed, std::size_t index) noexcept;

// Generates n_mazes mazes from ModelBitSource(survey_maze_seed(seed, i)).
// Throws std::invalid_argument when n_mazes or rows_per_maze is zero.
PatternStats maze_survey(std::size_t n_mazes, std::size_t rows_per_maze = 60,
                         prng::Word seed = 1);

// Same tally over an arbitrary source, for deterministic test sources.
PatternStats maze_survey(std::size_t n_mazes, std::size_t rows_per_maze,
                         RandomBitSource& source);

struct TableStats {
  std::size_t wall = 0;
  std::size_t open = 0;
  std::size_t random = 0;
  bool operator==(const TableStats&) const = default;
};

TableStats table_stats(const MysteryTable& table) noexcept;

}  // namespace entombed::maze
