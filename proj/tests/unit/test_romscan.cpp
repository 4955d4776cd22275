#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "../support/reference.hpp"
#include "entombed/fault.hpp"
#include "entombed/romscan.hpp"

namespace {

using namespace entombed::romscan;
namespace fs = std::filesystem;

const Bindings kGameCells{{"W", 0xDD}, {"X", 0xDE}, {"Y", 0xDF}, {"Z", 0xE0}};

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("entombed_romscan_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(PrngSignature, Shape) {
  const SignatureTemplate with = prng_signature(true);
  EXPECT_EQ(with.size(), 37u);
  EXPECT_EQ(with.slot_count(), 14u);
  EXPECT_EQ(with.slot_names(), (std::vector<std::string>{"W", "X", "Y", "Z"}));
  EXPECT_EQ(prng_signature(false).size(), 36u);
}

TEST(PrngSignature, InstantiatesToTheGameRoutine) {
  const std::vector<Byte> expected{
      0xA5, 0xDD, 0x85, 0xDF, 0xA5, 0xDE, 0x85, 0xE0, 0x0A, 0x26, 0xDD, 0x0A, 0x26,
      0xDD, 0x18, 0x65, 0xE0, 0x85, 0xDE, 0xA9, 0x00, 0x65, 0xDD, 0x18, 0x65, 0xDF,
      0x85, 0xDD, 0xA9, 0x00, 0xE6, 0xDE, 0x65, 0xDD, 0x85, 0xDD, 0x60};
  EXPECT_EQ(prng_signature().instantiate(kGameCells), expected);
  EXPECT_THROW(prng_signature().instantiate({{"W", 1}}), entombed::Fault);
}

TEST(SignatureTemplate, NeedsAFixedByte) {
  EXPECT_THROW(SignatureTemplate({entombed::cpu::Slot{"A"}}), entombed::Fault);
  EXPECT_THROW(SignatureTemplate(std::vector<entombed::cpu::PatternByte>{}), entombed::Fault);
}

TEST(ParseSignature, TextFormat) {
  const SignatureTemplate sig = parse_signature("a5 ?w 85\n?y  A9 00\t?w");
  EXPECT_EQ(sig.size(), 7u);
  EXPECT_EQ(sig.slot_names(), (std::vector<std::string>{"w", "y"}));
  EXPECT_EQ(format_signature(sig), "a5 ?w 85 ?y a9 00 ?w");
  EXPECT_EQ(parse_signature(format_signature(prng_signature())), prng_signature());
}

TEST(ParseSignature, Rejects) {
  EXPECT_THROW(parse_signature(""), entombed::Fault);
  EXPECT_THROW(parse_signature("?a ?b"), entombed::Fault);
  EXPECT_THROW(parse_signature("a5 ?"), entombed::Fault);
  EXPECT_THROW(parse_signature("a5 5"), entombed::Fault);
  EXPECT_THROW(parse_signature("zz"), entombed::Fault);
  EXPECT_THROW(parse_signature("a5 ?w-x"), entombed::Fault);
}

TEST(ScanBytes, PlantedRoutineIsFoundOnce) {
  const auto sig = prng_signature();
  std::mt19937_64 rng(100);
  auto buf = reference::clean_noise(rng, 4096, sig);
  const Bindings b{{"W", 0x10}, {"X", 0x11}, {"Y", 0x12}, {"Z", 0x13}};
  const auto bytes = sig.instantiate(b);
  std::copy(bytes.begin(), bytes.end(), buf.begin() + 100);

  const auto hits = scan_bytes(buf, sig, "buf");
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].offset, 100u);
  EXPECT_EQ(hits[0].bindings, b);
  EXPECT_EQ(hits[0].source, "buf");
  EXPECT_TRUE(hits[0].distinct_bindings);
  EXPECT_TRUE(hits[0].consecutive_bindings);

  buf[100] ^= 0xFF;  // corrupt the first LDA opcode
  EXPECT_TRUE(scan_bytes(buf, sig).empty());
}

TEST(ScanBytes, ShortBufferHasNoHits) {
  const std::vector<Byte> buf(36, 0xA5);
  EXPECT_TRUE(scan_bytes(buf, prng_signature()).empty());
  EXPECT_TRUE(scan_bytes(std::vector<Byte>{}, prng_signature()).empty());
}

TEST(ScanBytes, InconsistentSlotBindingIsRejected) {
  const auto sig = prng_signature();
  auto bytes = sig.instantiate(kGameCells);
  bytes[10] = 0xAA;  // second W operand no longer equals the first
  EXPECT_TRUE(scan_bytes(bytes, sig).empty());
}

TEST(ScanBytes, OverlappingMatchesAreAllReported) {
  const auto sig = parse_signature("aa ?x aa");
  const std::vector<Byte> buf{0xAA, 0x01, 0xAA, 0x01, 0xAA};
  const auto hits = scan_bytes(buf, sig);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].offset, 0u);
  EXPECT_EQ(hits[1].offset, 2u);
}

TEST(ScanBytes, SharedBindingsAreAllowedAndAnnotated) {
  const auto sig = prng_signature();
  const Bindings same{{"W", 0x80}, {"X", 0x80}, {"Y", 0x80}, {"Z", 0x80}};
  const auto hits = scan_bytes(sig.instantiate(same), sig);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_FALSE(hits[0].distinct_bindings);
  EXPECT_FALSE(hits[0].consecutive_bindings);
}

// Random plants at random offsets with random bindings: every one is found,
// every hit re-verifies, and the result does not depend on how the buffer is
// split into ranges.
TEST(ScanBytes, SoundCompleteAndPartitionIndependent) {
  const auto sig = prng_signature();
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 37 + rng() % 3000;
    auto buf = reference::clean_noise(rng, n, sig);
    const std::size_t off = rng() % (n - 36);
    Bindings b;
    for (const char* name : {"W", "X", "Y", "Z"}) b[name] = static_cast<Byte>(rng());
    const auto bytes = sig.instantiate(b);
    std::copy(bytes.begin(), bytes.end(), buf.begin() + static_cast<long>(off));

    const auto hits = scan_bytes(buf, sig);
    std::vector<std::size_t> offsets;
    for (const auto& h : hits) {
      offsets.push_back(h.offset);
      const auto again = sig.instantiate(h.bindings);
      ASSERT_TRUE(std::equal(again.begin(), again.end(), buf.begin() + static_cast<long>(h.offset)));
    }
    ASSERT_NE(std::find(offsets.begin(), offsets.end(), off), offsets.end());
    ASSERT_EQ(offsets, reference::brute_force_offsets(buf, sig));

    std::vector<ScanHit> pieces;
    std::size_t first = 0;
    while (first < n) {
      const std::size_t last = std::min(n, first + 1 + rng() % 500);
      auto part = scan_range(buf, sig, first, last);
      pieces.insert(pieces.end(), part.begin(), part.end());
      first = last;
    }
    ASSERT_EQ(pieces, hits);
  }
}

TEST(Md5, KnownVectors) {
  EXPECT_EQ(md5_of({}), "d41d8cd98f00b204e9800998ecf8427e");
  const std::string abc = "abc";
  EXPECT_EQ(md5_of({reinterpret_cast<const Byte*>(abc.data()), abc.size()}),
            "900150983cd24fb0d6963f7d28e17f72");
  const std::string fox = "The quick brown fox jumps over the lazy dog";
  EXPECT_EQ(md5_of({reinterpret_cast<const Byte*>(fox.data()), fox.size()}),
            "9e107d9d372bb6826bd81d3542a419d6");
}

TEST(ScanCorpus, EmptyCorpus) {
  const CorpusReport r = scan_corpus({}, prng_signature());
  EXPECT_TRUE(r.files_scanned.empty());
  EXPECT_TRUE(r.hits.empty());
}

TEST(ScanCorpus, SyntheticCorpusHasThreeHits) {
  const fs::path dir = fresh_dir("synthetic");
  const auto planted = reference::write_synthetic_corpus(dir);
  const CorpusReport r = scan_corpus(list_corpus(dir), prng_signature());
  EXPECT_EQ(r.files_scanned.size(), 10u);
  EXPECT_EQ(r.checksums.size(), 10u);
  ASSERT_EQ(r.hits.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(r.hits[i].source, planted[i].path.generic_string());
    EXPECT_EQ(r.hits[i].offset, planted[i].offset);
    EXPECT_EQ(r.hits[i].bindings, planted[i].bindings);
    EXPECT_NE(std::find(r.files_scanned.begin(), r.files_scanned.end(), r.hits[i].source),
              r.files_scanned.end());
  }
  for (const auto& [path, digest] : r.checksums) {
    EXPECT_EQ(digest, md5_of(read_file(path)));
  }
}

TEST(ScanCorpus, UnreadableFileIsRecordedAndScanContinues) {
  const fs::path dir = fresh_dir("unreadable");
  reference::write_synthetic_corpus(dir);
  std::vector<fs::path> paths = list_corpus(dir);
  paths.push_back(dir / "does_not_exist.bin");
  const CorpusReport r = scan_corpus(paths, prng_signature());
  EXPECT_EQ(r.files_scanned.size(), 10u);
  EXPECT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.hits.size(), 3u);
}

}  // namespace
