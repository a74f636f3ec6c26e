#pragma once

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "childplay/chem/molecule.hpp"

namespace childplay::chem {

inline constexpr std::size_t kFingerprintBits = 2048;
inline constexpr int kMaxPathAtoms = 7;

using Fingerprint = std::bitset<kFingerprintBits>;

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Path encoding "C1C2O": element, bond order, element, ...
inline std::string encode_path(const Molecule& m, const std::vector<int>& atoms, const std::vector<int>& orders) {
  std::string s(1, symbol(m.element(atoms.front())));
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    s += static_cast<char>('0' + orders[i - 1]);
    s += symbol(m.element(atoms[i]));
  }
  return s;
}

/// Linear-path fingerprint over all simple paths of 1..7 atoms. A path and
/// its reverse hash to the same bit.
inline Fingerprint path_fingerprint(const Molecule& m) {
  Fingerprint fp;
  std::vector<int> path;
  std::vector<int> orders;
  std::vector<bool> on_path(static_cast<std::size_t>(m.atom_count()), false);
  auto record = [&] {
    std::string forward = encode_path(m, path, orders);
    std::string backward = forward;
    std::reverse(backward.begin(), backward.end());
    fp.set(fnv1a(std::min(forward, backward)) % kFingerprintBits);
  };
  auto extend = [&](auto&& self, int atom) -> void {
    record();
    if (static_cast<int>(path.size()) == kMaxPathAtoms) return;
    for (int id : m.bonds_of(atom)) {
      const int next = m.bond(id).other(atom);
      if (on_path[static_cast<std::size_t>(next)]) continue;
      on_path[static_cast<std::size_t>(next)] = true;
      path.push_back(next);
      orders.push_back(m.bond(id).order);
      self(self, next);
      path.pop_back();
      orders.pop_back();
      on_path[static_cast<std::size_t>(next)] = false;
    }
  };
  for (int a = 0; a < m.atom_count(); ++a) {
    path = {a};
    orders.clear();
    on_path[static_cast<std::size_t>(a)] = true;
    extend(extend, a);
    on_path[static_cast<std::size_t>(a)] = false;
  }
  return fp;
}

/// |a & b| / |a | b|; two empty sets compare as identical.
template <std::size_t N>
double tanimoto(const std::bitset<N>& a, const std::bitset<N>& b) {
  const auto either = (a | b).count();
  if (either == 0) return 1.0;
  return static_cast<double>((a & b).count()) / static_cast<double>(either);
}

inline std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace childplay::chem
