#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "childplay/chem/depiction.hpp"
#include "childplay/chem/fingerprint.hpp"
#include "childplay/chem/sampler.hpp"
#include "childplay/chem/smiles.hpp"

namespace childplay::chem {

/// `valid == false` implies similarity -1 and `correct == false`.
struct GtsScore {
  bool correct = false;
  bool valid = false;
  double chemical_similarity = -1.0;
  std::size_t string_distance = 0;
  friend bool operator==(const GtsScore&, const GtsScore&) = default;
};

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

/// Trims whitespace and unwraps the first ``` fenced block, if any.
inline std::string clean_prediction(std::string_view raw) {
  const auto fence = raw.find("```");
  if (fence == std::string_view::npos) return trim(raw);
  auto body = raw.substr(fence + 3);
  const auto line_end = body.find('\n');
  // Drop an info string such as "smiles" on the opening fence line.
  if (line_end != std::string_view::npos && body.substr(0, line_end).find("```") == std::string_view::npos) {
    const auto info = trim(body.substr(0, line_end));
    if (info.find_first_not_of("abcdefghijklmnopqrstuvwxyz") == std::string::npos) body = body.substr(line_end + 1);
  }
  const auto close = body.find("```");
  if (close != std::string_view::npos) body = body.substr(0, close);
  return trim(body);
}

struct GtsPuzzle {
  Molecule molecule;
  std::string canonical;
  AsciiDepiction depiction;
};

inline GtsPuzzle make_puzzle(Rng& rng, const SampleOptions& options = {}) {
  Molecule m = sample_molecule(rng, options);
  auto d = render_ascii(m);
  auto canonical = canonical_smiles(m);
  return {std::move(m), std::move(canonical), std::move(d)};
}

inline GtsScore evaluate_prediction(const Molecule& puzzle, std::string_view raw) {
  const std::string cleaned = clean_prediction(raw);
  const std::string answer = canonical_smiles(puzzle);
  GtsScore score;
  score.string_distance = levenshtein(cleaned, answer);
  const auto parsed = parse_smiles(cleaned);
  if (!parsed) return score;
  score.valid = true;
  score.correct = parsed.molecule->atom_count() == puzzle.atom_count() &&
                  parsed.molecule->bond_count() == puzzle.bond_count() && canonical_smiles(*parsed.molecule) == answer;
  score.chemical_similarity = score.correct ? 1.0 : tanimoto(path_fingerprint(*parsed.molecule), path_fingerprint(puzzle));
  return score;
}

/// 100 * correct / (correct + incorrect); invalid answers are excluded.
inline std::optional<double> gts_accuracy(long correct, long incorrect) {
  if (correct + incorrect < 1) return std::nullopt;
  return 100.0 * static_cast<double>(correct) / static_cast<double>(correct + incorrect);
}

struct GtsTally {
  long correct = 0;
  long incorrect = 0;  // valid but wrong
  long invalid = 0;
  double similarity_sum = 0.0;  // invalid answers contribute -1
  double distance_sum = 0.0;

  void add(const GtsScore& s) {
    if (!s.valid) {
      ++invalid;
    } else if (s.correct) {
      ++correct;
    } else {
      ++incorrect;
    }
    similarity_sum += s.chemical_similarity;
    distance_sum += static_cast<double>(s.string_distance);
  }

  long total() const { return correct + incorrect + invalid; }
  double avg_similarity() const { return total() ? similarity_sum / static_cast<double>(total()) : 0.0; }
  double avg_string_distance() const { return total() ? distance_sum / static_cast<double>(total()) : 0.0; }
  std::optional<double> accuracy() const { return gts_accuracy(correct, incorrect); }
};

inline std::string gts_intro_prompt() {
  return "Below is an ASCII drawing of a molecule. Letters are heavy atoms (C, N, O, S) and hydrogens are implicit. "
         "Horizontal bonds are drawn with '-' (single) or '=' (double), vertical bonds with '|' (single) or ':' "
         "(double). Reply only with the SMILES string of this molecule, write nothing else.";
}

}  // namespace childplay::chem
