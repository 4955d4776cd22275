#include "entombed/cpu_oracle.hpp"

#include <array>
#include <optional>

#include "entombed/fault.hpp"

namespace entombed::cpu {

namespace {

struct Encoding {
  Op op;
  Byte opcode;
  const char* mnemonic;
  bool operand;
};

// Standard NMOS 6502 opcode map, restricted to the forms in the routine.
constexpr std::array<Encoding, 9> kEncodings{{
    {Op::LdaZp, 0xA5, "LDA zp", true},
    {Op::StaZp, 0x85, "STA zp", true},
    {Op::LdaImm, 0xA9, "LDA #imm", true},
    {Op::AslA, 0x0A, "ASL A", false},
    {Op::RolZp, 0x26, "ROL zp", true},
    {Op::Clc, 0x18, "CLC", false},
    {Op::AdcZp, 0x65, "ADC zp", true},
    {Op::IncZp, 0xE6, "INC zp", true},
    {Op::Rts, 0x60, "RTS", false},
}};

const Encoding& encoding_of(Op op) {
  return kEncodings[static_cast<std::size_t>(op)];
}

std::optional<Op> decode_opcode(Byte opcode) {
  for (const auto& e : kEncodings) {
    if (e.opcode == opcode) return e.op;
  }
  return std::nullopt;
}

Byte concrete(const Operand& operand) {
  if (const auto* b = std::get_if<Byte>(&operand)) return *b;
  if (const auto* s = std::get_if<Slot>(&operand)) {
    throw Fault(FaultKind::UnboundSlot, "operand ?" + s->name);
  }
  throw Fault(FaultKind::MalformedRoutine, "missing operand");
}

Byte& cell(MicroMachine& m, Byte address) {
  auto it = m.mem.find(address);
  if (it == m.mem.end()) {
    throw Fault(FaultKind::UnmappedCell, "$" + std::to_string(address));
  }
  return it->second;
}

void adc(MicroMachine& m, Byte value) {
  const unsigned sum = static_cast<unsigned>(m.acc) + value + (m.carry ? 1u : 0u);
  m.acc = static_cast<Byte>(sum & 0xFF);
  m.carry = sum > 0xFF;
}

}  // namespace

const char* mnemonic(Op op) noexcept { return kEncodings[static_cast<std::size_t>(op)].mnemonic; }

bool takes_operand(Op op) noexcept { return kEncodings[static_cast<std::size_t>(op)].operand; }

void validate(const Routine& r) {
  if (r.instrs.empty() || r.instrs.back().op != Op::Rts) {
    throw Fault(FaultKind::MalformedRoutine, "routine must end with RTS");
  }
  for (std::size_t i = 0; i < r.instrs.size(); ++i) {
    const Instr& in = r.instrs[i];
    const bool has = !std::holds_alternative<std::monostate>(in.operand);
    if (has != takes_operand(in.op)) {
      throw Fault(FaultKind::MalformedRoutine,
                  std::string(mnemonic(in.op)) + " at index " + std::to_string(i) +
                      (has ? " takes no operand" : " needs an operand"));
    }
  }
}

PrngCells entombed_cells() {
  return {Byte{0xDD}, Byte{0xDE}, Byte{0xDF}, Byte{0xE0}};
}

PrngCells symbolic_cells() {
  return {Slot{"W"}, Slot{"X"}, Slot{"Y"}, Slot{"Z"}};
}

Routine prng_routine(const PrngCells& c) {
  const Operand none{};
  return Routine{{
      {Op::LdaZp, c.w},         // copy WX into YZ
      {Op::StaZp, c.y},
      {Op::LdaZp, c.x},
      {Op::StaZp, c.z},
      {Op::AslA, none},         // WX *= 4
      {Op::RolZp, c.w},
      {Op::AslA, none},
      {Op::RolZp, c.w},
      {Op::Clc, none},          // WX += YZ
      {Op::AdcZp, c.z},
      {Op::StaZp, c.x},
      {Op::LdaImm, Byte{0x00}},
      {Op::AdcZp, c.w},
      {Op::Clc, none},
      {Op::AdcZp, c.y},
      {Op::StaZp, c.w},
      {Op::LdaImm, Byte{0x00}}, // WX += 1, but INC does not set C
      {Op::IncZp, c.x},
      {Op::AdcZp, c.w},
      {Op::StaZp, c.w},
      {Op::Rts, none},
  }};
}

MicroMachine execute(MicroMachine m, const Routine& r, IncCarry inc) {
  validate(r);
  for (const Instr& in : r.instrs) {
    switch (in.op) {
      case Op::LdaZp:
        m.acc = cell(m, concrete(in.operand));
        break;
      case Op::StaZp:
        cell(m, concrete(in.operand)) = m.acc;
        break;
      case Op::LdaImm:
        m.acc = concrete(in.operand);
        break;
      case Op::AslA:
        m.carry = (m.acc & 0x80) != 0;
        m.acc = static_cast<Byte>(m.acc << 1);
        break;
      case Op::RolZp: {
        Byte& v = cell(m, concrete(in.operand));
        const bool out = (v & 0x80) != 0;
        v = static_cast<Byte>((v << 1) | (m.carry ? 1 : 0));
        m.carry = out;
        break;
      }
      case Op::Clc:
        m.carry = false;
        break;
      case Op::AdcZp:
        adc(m, cell(m, concrete(in.operand)));
        break;
      case Op::IncZp: {
        Byte& v = cell(m, concrete(in.operand));
        v = static_cast<Byte>(v + 1);
        if (inc == IncCarry::SetOnWrap) m.carry = v == 0;
        break;
      }
      case Op::Rts:
        return m;
    }
  }
  return m;  // unreachable after validate()
}

prng::Word oracle_prng_step(prng::Word s, IncCarry inc, Byte initial_acc, bool initial_carry) {
  static const Routine routine = prng_routine(entombed_cells());
  MicroMachine m;
  m.acc = initial_acc;
  m.carry = initial_carry;
  m.mem = {{0xDD, prng::high_byte(s)}, {0xDE, prng::low_byte(s)}, {0xDF, 0}, {0xE0, 0}};
  m = execute(std::move(m), routine, inc);
  return prng::make_word(m.mem.at(0xDD), m.mem.at(0xDE));
}

std::vector<PatternByte> assemble(const Routine& r) {
  std::vector<PatternByte> out;
  out.reserve(r.instrs.size() * 2);
  for (const Instr& in : r.instrs) {
    const Encoding& e = encoding_of(in.op);
    out.emplace_back(e.opcode);
    if (!e.operand) continue;
    if (const auto* b = std::get_if<Byte>(&in.operand)) {
      out.emplace_back(*b);
    } else if (const auto* s = std::get_if<Slot>(&in.operand)) {
      out.emplace_back(*s);
    } else {
      throw Fault(FaultKind::MalformedRoutine, std::string(e.mnemonic) + " needs an operand");
    }
  }
  return out;
}

Routine disassemble(std::span<const PatternByte> bytes) {
  Routine r;
  std::size_t i = 0;
  while (i < bytes.size()) {
    const auto* opcode = std::get_if<Byte>(&bytes[i]);
    if (opcode == nullptr) {
      throw Fault(FaultKind::MalformedRoutine, "slot in opcode position " + std::to_string(i));
    }
    const auto op = decode_opcode(*opcode);
    if (!op) {
      throw Fault(FaultKind::MalformedRoutine, "unsupported opcode " + std::to_string(*opcode));
    }
    Instr in{*op, {}};
    ++i;
    if (takes_operand(*op)) {
      if (i >= bytes.size()) {
        throw Fault(FaultKind::MalformedRoutine, "truncated operand");
      }
      std::visit([&in](const auto& v) { in.operand = v; }, bytes[i]);
      ++i;
    }
    r.instrs.push_back(std::move(in));
  }
  return r;
}

}  // namespace entombed::cpu
