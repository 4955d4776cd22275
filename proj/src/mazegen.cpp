#include "entombed/mazegen.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "entombed/fault.hpp"

namespace entombed::maze {

namespace {

constexpr CellRule W = CellRule::Wall;
constexpr CellRule O = CellRule::Open;
constexpr CellRule R = CellRule::Random;

// Rows are ab = 00, 01, 10, 11; columns cde = 000 ... 111.
constexpr std::array<CellRule, 32> kGameTable{
    W, W, W, R, O, O, R, R,
    W, W, W, W, R, O, O, O,
    W, W, W, R, O, O, O, O,
    R, O, W, R, R, O, O, O,
};

}  // namespace

const char* to_string(CellRule r) noexcept {
  switch (r) {
    case CellRule::Wall: return "wall";
    case CellRule::Open: return "open";
    case CellRule::Random: return "random";
  }
  return "?";
}

const char* to_string(BitKind k) noexcept {
  switch (k) {
    case BitKind::Left: return "left";
    case BitKind::Right: return "right";
    case BitKind::Mid: return "mid";
  }
  return "?";
}

const char* to_string(Postprocess p) noexcept {
  switch (p) {
    case Postprocess::None: return "none";
    case Postprocess::Condition1: return "condition1";
    case Postprocess::Condition2: return "condition2";
  }
  return "?";
}

const MysteryTable& default_table() {
  static const MysteryTable table{kGameTable};
  return table;
}

int ModelBitSource::draw(BitKind) {
  state_ = prng::buggy_step(state_);
  return (prng::low_byte(state_) >> 7) & 1;
}

int ReplayBitSource::draw(BitKind kind) {
  if (cursor_ >= bits_.size()) {
    throw Fault(FaultKind::BitUnderflow,
                std::string("wanted ") + to_string(kind) + " after " + std::to_string(cursor_) +
                    " bits");
  }
  const BitRecord& rec = bits_[cursor_];
  if (rec.kind != kind) {
    throw Fault(FaultKind::TraceDesync, std::string("wanted ") + to_string(kind) + ", recorded " +
                                            to_string(rec.kind) + " at bit " +
                                            std::to_string(cursor_));
  }
  ++cursor_;
  return rec.bit & 1;
}

std::unique_ptr<ReplayBitSource> replay_source(std::vector<BitRecord> bits) {
  return std::make_unique<ReplayBitSource>(std::move(bits));
}

int RecordingBitSource::draw(BitKind kind) {
  const int bit = inner_.draw(kind) & 1;
  records_.push_back({kind, bit});
  return bit;
}

MazeHistory::MazeHistory(std::vector<Row> rows) : rows_(rows.begin(), rows.end()) {
  if (rows_.empty()) throw std::invalid_argument("maze history cannot be empty");
  while (rows_.size() > kCapacity) rows_.pop_front();
}

void MazeHistory::push(Row r) {
  rows_.push_back(r);
  while (rows_.size() > kCapacity) rows_.pop_front();
}

GeneratedRow generate_row(const MazeHistory& history, RandomBitSource& source,
                          const MysteryTable& table) {
  GeneratedRow out;
  RowTrace& trace = out.trace;

  // Previous row framed by one random bit on each side: 10 bits, MSB first.
  trace.left_bit = source.draw(BitKind::Left) & 1;
  trace.right_bit = source.draw(BitKind::Right) & 1;
  const unsigned padded = (static_cast<unsigned>(trace.left_bit) << 9) |
                          (static_cast<unsigned>(history.newest()) << 1) |
                          static_cast<unsigned>(trace.right_bit);

  unsigned lasttwo = 0b10;  // a = 1, b = 0 inside the fixed left wall
  unsigned row = 0;
  for (int i = 7; i >= 0; --i) {
    const unsigned above = (padded >> i) & 0b111u;
    const std::size_t key = MysteryTable::index(lasttwo, above);
    trace.lookups[static_cast<std::size_t>(7 - i)] = static_cast<std::uint8_t>(key);

    unsigned bit = 0;
    switch (table[key]) {
      case CellRule::Wall: bit = 1; break;
      case CellRule::Open: bit = 0; break;
      case CellRule::Random: {
        const int drawn = source.draw(BitKind::Mid) & 1;
        trace.mid_bits.push_back(drawn);
        bit = static_cast<unsigned>(drawn);
        break;
      }
    }
    row = (row << 1) | bit;
    lasttwo = ((lasttwo << 1) | bit) & 0b11u;
  }

  out.row = static_cast<Row>(row);
  trace.row_before_postprocess = out.row;
  trace.row_after_postprocess = out.row;
  return out;
}

Postprocess postprocess(MazeHistory& history) {
  Postprocess fired = Postprocess::None;
  const auto& rows = history.rows();

  // Condition 1: every remembered row has a wall somewhere in its left half,
  // yet none has one in the leftmost cell.
  bool high_nibbles_nonzero = true;
  bool leftmost_clear = true;
  for (Row r : rows) {
    if ((r & 0xF0) == 0) high_nibbles_nonzero = false;
    if ((r & 0x80) != 0) leftmost_clear = false;
  }
  if (high_nibbles_nonzero && leftmost_clear) {
    history.newest() = 0;
    fired = Postprocess::Condition1;
  }

  // Condition 2: the newest seven rows all have a wall in their right half
  // and their centre cells all equal the centre cell nine rows back.
  const std::size_t recent = std::min<std::size_t>(7, rows.size());
  bool low_nibbles_nonzero = true;
  unsigned centre_sum = 0;
  for (std::size_t n = 1; n <= recent; ++n) {
    const Row r = history.from_newest(n);
    if ((r & 0x0F) == 0) low_nibbles_nonzero = false;
    centre_sum += r & 1u;
  }
  if (low_nibbles_nonzero && rows.size() >= 9) {
    const unsigned comparator = history.from_newest(9) & 1u;
    if (centre_sum == comparator * 7) {
      history.newest() &= 0xF0;
      if (fired == Postprocess::None) fired = Postprocess::Condition2;
    }
  }
  return fired;
}

Maze generate_maze(RandomBitSource& source, std::size_t rows, const MysteryTable& table) {
  if (rows == 0) throw std::invalid_argument("a maze needs at least one row");
  Maze maze;
  maze.rows.reserve(rows);
  maze.traces.reserve(rows);
  MazeHistory history;
  for (std::size_t i = 0; i < rows; ++i) {
    GeneratedRow g = generate_row(history, source, table);
    history.push(g.row);
    g.trace.postprocess_fired = postprocess(history);
    g.trace.row_after_postprocess = history.newest();
    maze.rows.push_back(history.newest());
    maze.traces.push_back(std::move(g.trace));
  }
  return maze;
}

}  // namespace entombed::maze
