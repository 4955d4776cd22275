#pragma once

// Wildcard byte-signature search over ROM images, used to find copies of the
// PRNG routine whose zero-page addresses may have moved.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entombed/cpu_oracle.hpp"

namespace entombed::romscan {

using Byte = std::uint8_t;
using Bindings = std::map<std::string, Byte>;

// A byte pattern where every slot with the same name must match the same
// byte. Must contain at least one fixed byte.
class SignatureTemplate {
 public:
  // Throws Fault(BadSignature) when elements is empty or all slots.
  explicit SignatureTemplate(std::vector<cpu::PatternByte> elements);

  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t slot_count() const noexcept;
  std::vector<std::string> slot_names() const;  // sorted, unique
  const std::vector<cpu::PatternByte>& elements() const noexcept { return elements_; }

  // Throws Fault(UnboundSlot) when a slot has no binding.
  std::vector<Byte> instantiate(const Bindings& bindings) const;

  bool operator==(const SignatureTemplate&) const = default;

 private:
  std::vector<cpu::PatternByte> elements_;
};

// The PRNG routine with W, X, Y, Z as slots; 37 elements with the final RTS,
// 36 without.
SignatureTemplate prng_signature(bool include_rts = true);

// Whitespace-separated tokens: two hex digits for a fixed byte, `?name` for
// a slot. Throws Fault(BadSignature).
SignatureTemplate parse_signature(std::string_view text);
std::string format_signature(const SignatureTemplate& sig);

struct ScanHit {
  std::string source;
  std::size_t offset = 0;
  Bindings bindings;
  bool distinct_bindings = false;     // no two slots share a byte
  bool consecutive_bindings = false;  // slots in name order bind v, v+1, ...

  bool operator==(const ScanHit&) const = default;
};

// Match at exactly `offset`, or nothing.
std::optional<Bindings> match_at(std::span<const Byte> buf, const SignatureTemplate& sig,
                                 std::size_t offset);

// All matches starting in [first, last), overlapping ones included. Matches
// may extend past `last` as long as they fit in buf.
std::vector<ScanHit> scan_range(std::span<const Byte> buf, const SignatureTemplate& sig,
                                std::size_t first, std::size_t last,
                                const std::string& source = {});

std::vector<ScanHit> scan_bytes(std::span<const Byte> buf, const SignatureTemplate& sig,
                                const std::string& source = {});

// Lowercase hex MD5 digest.
std::string md5_of(std::span<const Byte> buf);

struct CorpusReport {
  std::vector<std::string> files_scanned;     // sorted
  std::vector<ScanHit> hits;                  // by (source, offset)
  std::map<std::string, std::string> checksums;
  std::map<std::string, std::string> errors;  // unreadable files
};

CorpusReport scan_corpus(std::vector<std::filesystem::path> paths, const SignatureTemplate& sig);

// Regular files under root, recursively, sorted. Throws
// std::filesystem::filesystem_error when root cannot be listed.
std::vector<std::filesystem::path> list_corpus(const std::filesystem::path& root);

std::vector<Byte> read_file(const std::filesystem::path& path);

}  // namespace entombed::romscan
