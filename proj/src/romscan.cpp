#include "entombed/romscan.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iterator>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "entombed/fault.hpp"

namespace entombed::romscan {

namespace fs = std::filesystem;

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

void annotate(ScanHit& hit) {
  std::set<Byte> values;
  for (const auto& [name, v] : hit.bindings) values.insert(v);
  hit.distinct_bindings = values.size() == hit.bindings.size();

  hit.consecutive_bindings = true;
  int prev = -1;
  for (const auto& [name, v] : hit.bindings) {
    if (prev >= 0 && v != prev + 1) {
      hit.consecutive_bindings = false;
      break;
    }
    prev = v;
  }
}

}  // namespace

SignatureTemplate::SignatureTemplate(std::vector<cpu::PatternByte> elements)
    : elements_(std::move(elements)) {
  const bool any_fixed = std::any_of(elements_.begin(), elements_.end(), [](const auto& e) {
    return std::holds_alternative<Byte>(e);
  });
  if (!any_fixed) throw Fault(FaultKind::BadSignature, "needs at least one fixed byte");
}

std::size_t SignatureTemplate::slot_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(elements_.begin(), elements_.end(), [](const auto& e) {
    return std::holds_alternative<cpu::Slot>(e);
  }));
}

std::vector<std::string> SignatureTemplate::slot_names() const {
  std::set<std::string> names;
  for (const auto& e : elements_) {
    if (const auto* s = std::get_if<cpu::Slot>(&e)) names.insert(s->name);
  }
  return {names.begin(), names.end()};
}

std::vector<Byte> SignatureTemplate::instantiate(const Bindings& bindings) const {
  std::vector<Byte> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) {
    if (const auto* b = std::get_if<Byte>(&e)) {
      out.push_back(*b);
      continue;
    }
    const auto& name = std::get<cpu::Slot>(e).name;
    const auto it = bindings.find(name);
    if (it == bindings.end()) throw Fault(FaultKind::UnboundSlot, "?" + name);
    out.push_back(it->second);
  }
  return out;
}

SignatureTemplate prng_signature(bool include_rts) {
  auto bytes = cpu::assemble(cpu::prng_routine(cpu::symbolic_cells()));
  if (!include_rts) bytes.pop_back();
  return SignatureTemplate(std::move(bytes));
}

SignatureTemplate parse_signature(std::string_view text) {
  std::vector<cpu::PatternByte> elements;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token.front() == '?') {
      const std::string name = token.substr(1);
      const bool ok = !name.empty() && std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
      });
      if (!ok) throw Fault(FaultKind::BadSignature, "bad slot token '" + token + "'");
      elements.emplace_back(cpu::Slot{name});
    } else if (token.size() == 2 && hex_value(token[0]) >= 0 && hex_value(token[1]) >= 0) {
      elements.emplace_back(static_cast<Byte>(hex_value(token[0]) * 16 + hex_value(token[1])));
    } else {
      throw Fault(FaultKind::BadSignature, "bad token '" + token + "'");
    }
  }
  if (elements.empty()) throw Fault(FaultKind::BadSignature, "empty signature");
  return SignatureTemplate(std::move(elements));
}

std::string format_signature(const SignatureTemplate& sig) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (const auto& e : sig.elements()) {
    if (!out.empty()) out.push_back(' ');
    if (const auto* b = std::get_if<Byte>(&e)) {
      out.push_back(kHex[*b >> 4]);
      out.push_back(kHex[*b & 0xF]);
    } else {
      out += "?" + std::get<cpu::Slot>(e).name;
    }
  }
  return out;
}

std::optional<Bindings> match_at(std::span<const Byte> buf, const SignatureTemplate& sig,
                                 std::size_t offset) {
  const auto& elems = sig.elements();
  if (offset > buf.size() || buf.size() - offset < elems.size()) return std::nullopt;
  Bindings bindings;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const Byte actual = buf[offset + i];
    if (const auto* b = std::get_if<Byte>(&elems[i])) {
      if (*b != actual) return std::nullopt;
      continue;
    }
    const auto [it, inserted] = bindings.try_emplace(std::get<cpu::Slot>(elems[i]).name, actual);
    if (!inserted && it->second != actual) return std::nullopt;
  }
  return bindings;
}

std::vector<ScanHit> scan_range(std::span<const Byte> buf, const SignatureTemplate& sig,
                                std::size_t first, std::size_t last, const std::string& source) {
  std::vector<ScanHit> hits;
  if (buf.size() < sig.size()) return hits;
  last = std::min(last, buf.size() - sig.size() + 1);
  for (std::size_t off = first; off < last; ++off) {
    if (auto b = match_at(buf, sig, off)) {
      ScanHit hit{source, off, std::move(*b), false, false};
      annotate(hit);
      hits.push_back(std::move(hit));
    }
  }
  return hits;
}

std::vector<ScanHit> scan_bytes(std::span<const Byte> buf, const SignatureTemplate& sig,
                                const std::string& source) {
  return scan_range(buf, sig, 0, buf.size(), source);
}

std::string md5_of(std::span<const Byte> buf) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_md5(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), buf.data(), buf.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw std::runtime_error("md5 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::vector<Byte> read_file(const fs::path& path) {
  if (fs::is_directory(path)) throw std::runtime_error(path.string() + " is a directory");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<Byte> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw std::runtime_error("read error on " + path.string());
  return data;
}

std::vector<fs::path> list_corpus(const fs::path& root) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

CorpusReport scan_corpus(std::vector<fs::path> paths, const SignatureTemplate& sig) {
  std::sort(paths.begin(), paths.end());
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());

  CorpusReport report;
  for (const auto& path : paths) {
    const std::string name = path.generic_string();
    std::vector<Byte> data;
    try {
      data = read_file(path);
    } catch (const std::exception& e) {
      report.errors[name] = e.what();
      continue;
    }
    report.files_scanned.push_back(name);
    report.checksums[name] = md5_of(data);
    auto hits = scan_bytes(data, sig, name);
    report.hits.insert(report.hits.end(), std::make_move_iterator(hits.begin()),
                       std::make_move_iterator(hits.end()));
  }
  std::stable_sort(report.hits.begin(), report.hits.end(), [](const ScanHit& a, const ScanHit& b) {
    return std::tie(a.source, a.offset) < std::tie(b.source, b.offset);
  });
  return report;
}

}  // namespace entombed::romscan
