#include <gtest/gtest.h>

#include "childplay/chem/fingerprint.hpp"
#include "childplay/chem/sampler.hpp"
#include "childplay/chem/smiles.hpp"
#include "support/chem_helpers.hpp"

using namespace childplay;
using namespace childplay::chem;

namespace {
Molecule mol(const char* s) { return *parse_smiles(s).molecule; }

std::size_t levenshtein_oracle(const std::string& a, const std::string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] != b[j - 1])});
  return d[a.size()][b.size()];
}
}  // namespace

TEST(Fingerprint, IdenticalMoleculesScoreOne) {
  Rng rng(30);
  for (int i = 0; i < 200; ++i) {
    const auto m = sample_molecule(rng);
    const auto p = m.permuted(testing_chem::random_perm(m.atom_count(), rng));
    ASSERT_EQ(path_fingerprint(m), path_fingerprint(p));
    ASSERT_DOUBLE_EQ(tanimoto(path_fingerprint(m), path_fingerprint(p)), 1.0);
  }
}

TEST(Fingerprint, SimilarityOrdering) {
  const auto base = path_fingerprint(mol("CCCCO"));
  const double near = tanimoto(base, path_fingerprint(mol("CCCCN")));
  const double far = tanimoto(base, path_fingerprint(mol("N#N")));
  EXPECT_GT(near, far);
  EXPECT_LT(near, 1.0);
  EXPECT_GE(far, 0.0);
}

TEST(Fingerprint, TanimotoMatchesDefinition) {
  std::bitset<16> a("1100110000000000"), b("1010100000000001");
  EXPECT_DOUBLE_EQ(tanimoto(a, b), 2.0 / 6.0);
  EXPECT_DOUBLE_EQ(tanimoto(std::bitset<16>{}, std::bitset<16>{}), 1.0);
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const auto x = path_fingerprint(sample_molecule(rng));
    const auto y = path_fingerprint(sample_molecule(rng));
    const double t = tanimoto(x, y);
    ASSERT_GE(t, 0.0);
    ASSERT_LE(t, 1.0);
    ASSERT_DOUBLE_EQ(t, tanimoto(y, x));
  }
}

TEST(Levenshtein, MatchesTableOracle) {
  EXPECT_EQ(levenshtein("kitten", "sitting"), 3u);
  EXPECT_EQ(levenshtein("", "abc"), 3u);
  EXPECT_EQ(levenshtein("CCO", "CCO"), 0u);
  Rng rng(32);
  const std::string alphabet = "CNO=()1";
  for (int i = 0; i < 2000; ++i) {
    std::string a, b;
    for (auto n = rng.uniform_int(0, 9); n > 0; --n) a += alphabet[rng.index(alphabet.size())];
    for (auto n = rng.uniform_int(0, 9); n > 0; --n) b += alphabet[rng.index(alphabet.size())];
    ASSERT_EQ(levenshtein(a, b), levenshtein_oracle(a, b)) << a << " / " << b;
  }
}
