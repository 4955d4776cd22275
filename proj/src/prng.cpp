#include "entombed/prng.hpp"

#include <bitset>
#include <memory>

namespace entombed::prng {

namespace {

constexpr unsigned bit8(unsigned v) noexcept { return (v >> 8) & 1u; }

}  // namespace

const char* to_string(Generator g) noexcept {
  return g == Generator::Buggy ? "buggy" : "correct";
}

Word correct_step(Word s) noexcept {
  return static_cast<Word>((5u * s + 1u) & 0xFFFFu);
}

Word buggy_step(Word s) noexcept {
  const unsigned product = 5u * s;  // up to 17 bits
  unsigned high = high_byte(static_cast<Word>(product & 0xFFFF));
  if (product > 0xFFFFu) {
    // Reconstruct the carry left over from the high-byte addition. The first
    // term is the low-byte carry of 4*X + X, the second the carry out of
    // (4*W + low carry) + W, where 4*W has already lost its top bits.
    const unsigned x = low_byte(s);
    const unsigned w = high_byte(s);
    const unsigned w_times4 = ((static_cast<unsigned>(s) << 2) >> 8) & 0xFFu;
    unsigned carry = bit8(((4u * x) & 0xFFu) + x);
    carry = bit8(((w_times4 + carry) & 0xFFu) + w);
    high = (high + carry) & 0xFFu;
  }
  // The increment wraps the low byte without carrying into the high byte.
  const unsigned low = (product + 1u) & 0xFFu;
  return make_word(static_cast<Byte>(high), static_cast<Byte>(low));
}

Word step(Generator g, Word s) noexcept {
  return g == Generator::Buggy ? buggy_step(s) : correct_step(s);
}

StepComparison compare_step(Word s) noexcept {
  StepComparison c;
  c.state = s;
  c.buggy = buggy_step(s);
  c.correct = correct_step(s);
  c.equal = c.buggy == c.correct;
  c.low_bytes_equal = low_byte(c.buggy) == low_byte(c.correct);
  c.high_delta_mod256 = static_cast<Byte>((high_byte(c.buggy) - high_byte(c.correct)) & 0xFF);
  return c;
}

AgreementReport compare_all_steps() {
  AgreementReport report;
  report.states = 65536;
  for (unsigned s = 0; s < 65536; ++s) {
    const StepComparison c = compare_step(static_cast<Word>(s));
    if (c.equal) {
      ++report.equal_count;
    } else {
      report.mismatches.push_back(c);
    }
  }
  report.fraction_equal =
      static_cast<double>(report.equal_count) / static_cast<double>(report.states);
  return report;
}

OrbitStats orbit_survey(Word seed, std::size_t steps, Generator g) {
  OrbitStats stats;
  stats.seed = seed;
  stats.steps = steps;

  auto generated = std::make_unique<std::bitset<65536>>();
  Word s = seed;
  for (std::size_t i = 0; i < steps; ++i) {
    s = step(g, s);
    if (s == seed) stats.returns_to_seed = true;
    generated->set(s);
  }
  stats.distinct_generated = generated->count();
  stats.distinct_values = stats.distinct_generated + (generated->test(seed) ? 0 : 1);
  return stats;
}

CanonicalSurvey max_distinct_over_canonical_seeds(std::size_t steps, Generator g) {
  CanonicalSurvey survey;
  survey.per_seed.reserve(256);
  for (unsigned b = 0; b < 256; ++b) {
    const OrbitStats stats = orbit_survey(canonical_seed(static_cast<Byte>(b)), steps, g);
    if (stats.distinct_generated > survey.max_distinct) {
      survey.max_distinct = stats.distinct_generated;
      survey.argmax_seed = stats.seed;
    }
    if (stats.distinct_values > survey.max_distinct_inclusive) {
      survey.max_distinct_inclusive = stats.distinct_values;
      survey.argmax_seed_inclusive = stats.seed;
    }
    survey.per_seed.push_back(stats);
  }
  return survey;
}

}  // namespace entombed::prng
