#include "entombed/maze_analysis.hpp"

#include <algorithm>
#include <bitset>
#include <deque>
#include <limits>
#include <stdexcept>

#include "entombed/fault.hpp"

namespace entombed::maze {

namespace {

constexpr std::size_t kHalf = kPlayfieldWidth / 2;
constexpr std::size_t kSideWall = 4;

void tally(const Maze& maze, PatternStats& stats, std::bitset<MysteryTable::kEntries>& used) {
  ++stats.mazes_generated;
  stats.rows_generated += maze.rows.size();
  for (const RowTrace& t : maze.traces) {
    if (t.postprocess_fired == Postprocess::Condition1) ++stats.condition1_fires;
    if (t.postprocess_fired == Postprocess::Condition2) ++stats.condition2_fires;
    for (auto key : t.lookups) used.set(key);
  }
  if (!is_solvable(Grid::from_rows(maze.rows)).solvable) ++stats.unsolvable_count;
}

}  // namespace

std::bitset<kPlayfieldWidth> expand_row(Row row) noexcept {
  std::bitset<kPlayfieldWidth> out;
  for (std::size_t c = 0; c < kSideWall; ++c) out.set(c);
  for (std::size_t j = 0; j < 8; ++j) {
    // j = 0 is bit 7, the cell beside the side wall.
    const bool wall = (row >> (7 - j)) & 1;
    out.set(kSideWall + 2 * j, wall);
    out.set(kSideWall + 2 * j + 1, wall);
  }
  for (std::size_t c = 0; c < kHalf; ++c) out.set(kPlayfieldWidth - 1 - c, out.test(c));
  return out;
}

std::string render_row(Row row) {
  const auto bits = expand_row(row);
  std::string line;
  line.reserve(kPlayfieldWidth + 1);
  for (std::size_t c = 0; c < kHalf; ++c) line.push_back(bits.test(c) ? 'X' : '_');
  line.push_back(' ');
  for (std::size_t c = kHalf; c < kPlayfieldWidth; ++c) line.push_back(bits.test(c) ? 'X' : '_');
  return line;
}

Row parse_row(std::string_view line) {
  if (line.size() != kPlayfieldWidth + 1 || line[kHalf] != ' ') {
    throw Fault(FaultKind::BadRow, "expected 41 characters with a space at column 20");
  }
  auto wall_at = [&](std::size_t i) {
    const char ch = line[i];
    if (ch != 'X' && ch != '_') throw Fault(FaultKind::BadRow, "unexpected character");
    return ch == 'X';
  };
  for (std::size_t c = 0; c < kSideWall; ++c) {
    if (!wall_at(c)) throw Fault(FaultKind::BadRow, "side wall missing");
  }
  unsigned row = 0;
  for (std::size_t j = 0; j < 8; ++j) {
    const bool a = wall_at(kSideWall + 2 * j);
    if (a != wall_at(kSideWall + 2 * j + 1)) {
      throw Fault(FaultKind::BadRow, "cell pair disagrees");
    }
    row = (row << 1) | (a ? 1u : 0u);
  }
  // The right half must mirror the left half exactly.
  for (std::size_t c = 0; c < kHalf; ++c) {
    if (wall_at(c) != wall_at(kPlayfieldWidth - c)) {
      throw Fault(FaultKind::BadRow, "halves are not mirrored");
    }
  }
  return static_cast<Row>(row);
}

Grid::Grid(std::size_t width, std::size_t height)
    : width_(width), height_(height), cells_(width * height, 0) {}

Grid Grid::from_rows(std::span<const Row> rows) {
  Grid g(kPlayfieldWidth, rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto bits = expand_row(rows[r]);
    for (std::size_t c = 0; c < kPlayfieldWidth; ++c) g.set_wall(r, c, bits.test(c));
  }
  return g;
}

SolvabilityReport is_solvable(const Grid& grid) {
  SolvabilityReport report;
  const std::size_t w = grid.width();
  const std::size_t h = grid.height();
  if (w == 0 || h == 0) return report;

  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> parent(w * h, kUnseen);
  std::deque<std::size_t> queue;
  for (std::size_t c = 0; c < w; ++c) {
    if (!grid.wall(0, c)) {
      parent[c] = c;
      queue.push_back(c);
    }
  }

  std::size_t goal = kUnseen;
  while (!queue.empty()) {
    const std::size_t at = queue.front();
    queue.pop_front();
    const std::size_t r = at / w;
    const std::size_t c = at % w;
    if (r == h - 1) {
      goal = at;
      break;
    }
    auto visit = [&](std::size_t nr, std::size_t nc) {
      const std::size_t n = nr * w + nc;
      if (parent[n] != kUnseen || grid.wall(nr, nc)) return;
      parent[n] = at;
      queue.push_back(n);
    };
    if (r + 1 < h) visit(r + 1, c);
    if (r > 0) visit(r - 1, c);
    if (c + 1 < w) visit(r, c + 1);
    if (c > 0) visit(r, c - 1);
  }

  if (goal == kUnseen) return report;
  report.solvable = true;
  std::vector<Cell> path;
  for (std::size_t at = goal;; at = parent[at]) {
    path.push_back({at / w, at % w});
    if (parent[at] == at) break;
  }
  std::reverse(path.begin(), path.end());
  report.witness_path = std::move(path);
  return report;
}

prng::Word survey_maze_seed(prng::Word seed, std::size_t index) noexcept {
  return prng::buggy_step(static_cast<prng::Word>((seed + index) & 0xFFFF));
}

PatternStats maze_survey(std::size_t n_mazes, std::size_t rows_per_maze, prng::Word seed) {
  if (n_mazes == 0 || rows_per_maze == 0) {
    throw std::invalid_argument("maze survey needs at least one maze and one row");
  }
  PatternStats stats;
  std::bitset<MysteryTable::kEntries> used;
  for (std::size_t i = 0; i < n_mazes; ++i) {
    ModelBitSource source(survey_maze_seed(seed, i));
    tally(generate_maze(source, rows_per_maze), stats, used);
  }
  stats.table_entries_used = used.count();
  return stats;
}

PatternStats maze_survey(std::size_t n_mazes, std::size_t rows_per_maze,
                         RandomBitSource& source) {
  if (n_mazes == 0 || rows_per_maze == 0) {
    throw std::invalid_argument("maze survey needs at least one maze and one row");
  }
  PatternStats stats;
  std::bitset<MysteryTable::kEntries> used;
  for (std::size_t i = 0; i < n_mazes; ++i) {
    tally(generate_maze(source, rows_per_maze), stats, used);
  }
  stats.table_entries_used = used.count();
  return stats;
}

TableStats table_stats(const MysteryTable& table) noexcept {
  TableStats s;
  for (CellRule r : table.entries()) {
    switch (r) {
      case CellRule::Wall: ++s.wall; break;
      case CellRule::Open: ++s.open; break;
      case CellRule::Random: ++s.random; break;
    }
  }
  return s;
}

}  // namespace entombed::maze
