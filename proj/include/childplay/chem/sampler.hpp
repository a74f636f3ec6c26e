#pragma once

#include <array>
#include <vector>

#include "childplay/chem/depiction.hpp"
#include "childplay/chem/molecule.hpp"
#include "childplay/core/rng.hpp"

namespace childplay::chem {

struct SampleOptions {
  bool include_sulfur = false;
  double ring_probability = 0.3;
  double double_bond_probability = 0.2;
  int min_tree_atoms = 3;
  int max_tree_atoms = 9;
  int max_ring_substituents = 4;
};

namespace detail {

inline Element draw_element(Rng& rng, bool sulfur) {
  static constexpr std::array<double, 4> plain = {0.7, 0.15, 0.15, 0.0};
  static constexpr std::array<double, 4> with_s = {0.6, 0.15, 0.15, 0.1};
  return kElements[rng.weighted(sulfur ? std::span<const double>(with_s) : std::span<const double>(plain))];
}

inline void grow_tree(Molecule& m, int extra_atoms, Rng& rng, bool sulfur) {
  for (int i = 0; i < extra_atoms; ++i) {
    std::vector<int> parents;
    for (int a = 0; a < m.atom_count(); ++a)
      if (m.free_valence(a) >= 1) parents.push_back(a);
    if (parents.empty()) return;
    const int parent = parents[rng.index(parents.size())];
    m.add_bond(parent, m.add_atom(draw_element(rng, sulfur)));
  }
}

inline Molecule draw_candidate(Rng& rng, const SampleOptions& opt) {
  Molecule m;
  if (rng.bernoulli(opt.ring_probability)) {
    const int ring = rng.bernoulli(0.5) ? 5 : 6;
    for (int i = 0; i < ring; ++i) m.add_atom(draw_element(rng, opt.include_sulfur));
    for (int i = 0; i < ring; ++i) m.add_bond(i, (i + 1) % ring);
    grow_tree(m, static_cast<int>(rng.uniform_int(0, opt.max_ring_substituents)), rng, opt.include_sulfur);
  } else {
    m.add_atom(draw_element(rng, opt.include_sulfur));
    grow_tree(m, static_cast<int>(rng.uniform_int(opt.min_tree_atoms, opt.max_tree_atoms)) - 1, rng,
              opt.include_sulfur);
  }
  for (int id = 0; id < m.bond_count(); ++id) {
    const auto& b = m.bond(id);
    if (m.free_valence(b.a) >= 1 && m.free_valence(b.b) >= 1 && rng.bernoulli(opt.double_bond_probability))
      m.set_bond_order(id, 2);
  }
  return m;
}

}  // namespace detail

/// Small random molecule satisfying the puzzle invariants and guaranteed to
/// have an ASCII depiction. Rejection-resamples until both hold.
inline Molecule sample_molecule(Rng& rng, const SampleOptions& options = {}) {
  while (true) {
    Molecule m = detail::draw_candidate(rng, options);
    if (satisfies_puzzle_invariants(m) && try_render_ascii(m)) return m;
  }
}

}  // namespace childplay::chem
