#pragma once

// Instruction-level model of the nine 6502 forms used by the game's PRNG
// routine. Executes the routine exactly as written and assembles it into
// bytes, optionally with named slots in place of the zero-page operands.

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "entombed/prng.hpp"

namespace entombed::cpu {

using Byte = std::uint8_t;

enum class Op : std::uint8_t {
  LdaZp,
  StaZp,
  LdaImm,
  AslA,
  RolZp,
  Clc,
  AdcZp,
  IncZp,
  Rts,
};

const char* mnemonic(Op op) noexcept;
bool takes_operand(Op op) noexcept;

// A named placeholder for an operand byte.
struct Slot {
  std::string name;
  bool operator==(const Slot&) const = default;
  auto operator<=>(const Slot&) const = default;
};

using Operand = std::variant<std::monostate, Byte, Slot>;

struct Instr {
  Op op = Op::Rts;
  Operand operand;

  bool operator==(const Instr&) const = default;
};

struct Routine {
  std::vector<Instr> instrs;

  bool operator==(const Routine&) const = default;
};

// Throws Fault(MalformedRoutine) if an operand is missing or superfluous, or
// the routine does not end in RTS.
void validate(const Routine& r);

// Zero-page cells the PRNG routine touches.
struct PrngCells {
  Operand w;
  Operand x;
  Operand y;
  Operand z;
};

// $dd, $de, $df, $e0 in the shipped game.
PrngCells entombed_cells();
// Slots named W, X, Y, Z.
PrngCells symbolic_cells();

Routine prng_routine(const PrngCells& cells);

struct MicroMachine {
  Byte acc = 0;
  bool carry = false;
  std::map<Byte, Byte> mem;

  bool operator==(const MicroMachine&) const = default;
};

enum class IncCarry {
  Untouched,    // real 6502: INC leaves C alone
  SetOnWrap,    // counterfactual: INC sets C when the cell wraps to zero
};

// Runs r until its RTS. Throws Fault(UnmappedCell) for a cell missing from
// m.mem and Fault(UnboundSlot) for an operand that is still a Slot.
MicroMachine execute(MicroMachine m, const Routine& r, IncCarry inc = IncCarry::Untouched);

// Runs the PRNG routine on W = high(s), X = low(s) and returns the new WX.
prng::Word oracle_prng_step(prng::Word s, IncCarry inc, Byte initial_acc = 0,
                            bool initial_carry = false);

// One assembled byte: either a concrete value or a named slot.
using PatternByte = std::variant<Byte, Slot>;

// Encodes with the standard 6502 opcode map. Slot operands become slot
// elements carrying their name.
std::vector<PatternByte> assemble(const Routine& r);

// Inverse of assemble for the supported repertoire. Throws
// Fault(MalformedRoutine) on an unknown opcode, a truncated operand, or a
// slot in opcode position.
Routine disassemble(std::span<const PatternByte> bytes);

}  // namespace entombed::cpu
