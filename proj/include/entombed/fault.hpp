#pragma once

#include <stdexcept>
#include <string>

namespace entombed {

enum class FaultKind {
  UnmappedCell,
  UnboundSlot,
  MalformedRoutine,
  BitUnderflow,
  TraceDesync,
  BadSignature,
  BadRow,
};

inline const char* to_string(FaultKind kind) noexcept {
  switch (kind) {
    case FaultKind::UnmappedCell: return "unmapped cell";
    case FaultKind::UnboundSlot: return "unbound slot";
    case FaultKind::MalformedRoutine: return "malformed routine";
    case FaultKind::BitUnderflow: return "bit underflow";
    case FaultKind::TraceDesync: return "trace desync";
    case FaultKind::BadSignature: return "bad signature";
    case FaultKind::BadRow: return "bad row";
  }
  return "fault";
}

// All library errors are reported as a Fault; kind() lets callers branch
// without parsing the message.
class Fault : public std::runtime_error {
 public:
  Fault(FaultKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  FaultKind kind() const noexcept { return kind_; }

 private:
  FaultKind kind_;
};

}  // namespace entombed
