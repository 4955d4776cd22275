#pragma once

// Entombed's 16-bit PRNG, both as the game computes it and as it was meant
// to be computed, plus exhaustive comparison and orbit tooling.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace entombed::prng {

using Word = std::uint16_t;
using Byte = std::uint8_t;

constexpr Byte high_byte(Word w) noexcept { return static_cast<Byte>(w >> 8); }
constexpr Byte low_byte(Word w) noexcept { return static_cast<Byte>(w & 0xFF); }
constexpr Word make_word(Byte high, Byte low) noexcept {
  return static_cast<Word>((static_cast<unsigned>(high) << 8) | low);
}

// Generator word WX: W is the high byte, X the low byte.
struct PrngState {
  Word value = 0;

  constexpr Byte w() const noexcept { return high_byte(value); }
  constexpr Byte x() const noexcept { return low_byte(value); }
  constexpr bool operator==(const PrngState&) const = default;
};

enum class Generator { Buggy, Correct };

const char* to_string(Generator g) noexcept;

// (5 * s + 1) mod 65536.
Word correct_step(Word s) noexcept;

// What the game's routine actually produces. The INC that should carry into
// the high byte leaves the carry flag alone, so the high byte instead picks up
// whatever carry the high-byte addition left behind.
Word buggy_step(Word s) noexcept;

Word step(Generator g, Word s) noexcept;

// The game seeds by duplicating one byte into both halves.
constexpr Word canonical_seed(Byte b) noexcept { return make_word(b, b); }

struct StepComparison {
  Word state = 0;
  Word buggy = 0;
  Word correct = 0;
  bool equal = false;
  bool low_bytes_equal = false;
  Byte high_delta_mod256 = 0;  // (high(buggy) - high(correct)) mod 256

  bool operator==(const StepComparison&) const = default;
};

StepComparison compare_step(Word s) noexcept;

struct AgreementReport {
  std::size_t states = 0;
  std::size_t equal_count = 0;
  double fraction_equal = 0.0;
  std::vector<StepComparison> mismatches;  // ascending by state
};

// Per-state comparison of buggy_step against correct_step over all 65536
// states.
AgreementReport compare_all_steps();

struct OrbitStats {
  Word seed = 0;
  std::size_t steps = 0;
  // Distinct values visited, counting the seed itself.
  std::size_t distinct_values = 0;
  // Distinct values produced by the generator; the seed only counts if it is
  // produced again.
  std::size_t distinct_generated = 0;
  bool returns_to_seed = false;
};

// Iterates `steps` times from `seed`. Requires steps >= 1.
OrbitStats orbit_survey(Word seed, std::size_t steps, Generator g = Generator::Buggy);

struct CanonicalSurvey {
  // Largest number of distinct generated values over the 256 canonical seeds.
  std::size_t max_distinct = 0;
  Word argmax_seed = 0;
  // Same maximum with the seed counted as visited.
  std::size_t max_distinct_inclusive = 0;
  Word argmax_seed_inclusive = 0;
  std::vector<OrbitStats> per_seed;  // indexed by the duplicated byte
};

CanonicalSurvey max_distinct_over_canonical_seeds(std::size_t steps = 65536,
                                                  Generator g = Generator::Buggy);

}  // namespace entombed::prng
