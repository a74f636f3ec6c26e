#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace childplay::chem {

enum class Element : std::uint8_t { C, N, O, S };

inline constexpr std::array kElements = {Element::C, Element::N, Element::O, Element::S};

inline char symbol(Element e) {
  switch (e) {
    case Element::C: return 'C';
    case Element::N: return 'N';
    case Element::O: return 'O';
    case Element::S: return 'S';
  }
  return '?';
}

inline std::optional<Element> element_from_symbol(char c) {
  switch (c) {
    case 'C': return Element::C;
    case 'N': return Element::N;
    case 'O': return Element::O;
    case 'S': return Element::S;
    default: return std::nullopt;
  }
}

/// Maximum total bond order per element (neutral, lowest valence state).
inline int max_valence(Element e) {
  switch (e) {
    case Element::C: return 4;
    case Element::N: return 3;
    case Element::O: return 2;
    case Element::S: return 2;
  }
  return 0;
}

struct Bond {
  int a = 0;
  int b = 0;
  int order = 1;
  int other(int atom) const { return atom == a ? b : a; }
};

/// Heavy-atom graph; hydrogens are implicit and derived from valence.
class Molecule {
 public:
  Molecule() = default;

  int add_atom(Element e) {
    atoms_.push_back(e);
    adjacency_.emplace_back();
    return static_cast<int>(atoms_.size()) - 1;
  }

  /// Returns the bond index. Callers guarantee a != b and no duplicate bond.
  int add_bond(int a, int b, int order = 1) {
    bonds_.push_back({a, b, order});
    const int id = static_cast<int>(bonds_.size()) - 1;
    adjacency_[static_cast<std::size_t>(a)].push_back(id);
    adjacency_[static_cast<std::size_t>(b)].push_back(id);
    return id;
  }

  void set_bond_order(int bond, int order) { bonds_[static_cast<std::size_t>(bond)].order = order; }

  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int bond_count() const { return static_cast<int>(bonds_.size()); }
  Element element(int atom) const { return atoms_[static_cast<std::size_t>(atom)]; }
  const std::vector<Element>& elements() const { return atoms_; }
  const std::vector<Bond>& bonds() const { return bonds_; }
  const Bond& bond(int id) const { return bonds_[static_cast<std::size_t>(id)]; }
  const std::vector<int>& bonds_of(int atom) const { return adjacency_[static_cast<std::size_t>(atom)]; }
  int degree(int atom) const { return static_cast<int>(bonds_of(atom).size()); }

  std::optional<int> bond_between(int a, int b) const {
    for (int id : bonds_of(a))
      if (bond(id).other(a) == b) return id;
    return std::nullopt;
  }

  int bond_order_sum(int atom) const {
    int sum = 0;
    for (int id : bonds_of(atom)) sum += bond(id).order;
    return sum;
  }

  int free_valence(int atom) const { return max_valence(element(atom)) - bond_order_sum(atom); }
  int implicit_hydrogens(int atom) const { return std::max(0, free_valence(atom)); }

  bool valence_ok() const {
    for (int i = 0; i < atom_count(); ++i)
      if (free_valence(i) < 0) return false;
    return true;
  }

  bool connected() const {
    if (atoms_.empty()) return true;
    std::vector<bool> seen(atoms_.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (int id : bonds_of(a)) {
        const int n = bond(id).other(a);
        if (!seen[static_cast<std::size_t>(n)]) {
          seen[static_cast<std::size_t>(n)] = true;
          ++reached;
          stack.push_back(n);
        }
      }
    }
    return reached == atom_count();
  }

  /// Independent cycles (bonds - atoms + 1 for a connected graph).
  int ring_count() const { return atoms_.empty() ? 0 : bond_count() - atom_count() + 1; }

  /// Copy with atoms renumbered: new index of old atom i is perm[i].
  Molecule permuted(const std::vector<int>& perm) const {
    Molecule out;
    std::vector<Element> elems(atoms_.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i) elems[static_cast<std::size_t>(perm[i])] = atoms_[i];
    for (Element e : elems) out.add_atom(e);
    for (const auto& b : bonds_) out.add_bond(perm[static_cast<std::size_t>(b.a)], perm[static_cast<std::size_t>(b.b)], b.order);
    return out;
  }

 private:
  std::vector<Element> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<int>> adjacency_;
};

/// Atoms of the single ring when the molecule has exactly one, in cyclic order.
inline std::vector<int> ring_atoms(const Molecule& m) {
  if (m.ring_count() != 1) return {};
  // Strip leaves until only the cycle remains.
  std::vector<int> degree(static_cast<std::size_t>(m.atom_count()));
  std::vector<bool> removed(degree.size(), false);
  std::vector<int> leaves;
  for (int i = 0; i < m.atom_count(); ++i) {
    degree[static_cast<std::size_t>(i)] = m.degree(i);
    if (m.degree(i) <= 1) leaves.push_back(i);
  }
  while (!leaves.empty()) {
    const int a = leaves.back();
    leaves.pop_back();
    if (removed[static_cast<std::size_t>(a)]) continue;
    removed[static_cast<std::size_t>(a)] = true;
    for (int id : m.bonds_of(a)) {
      const int n = m.bond(id).other(a);
      if (!removed[static_cast<std::size_t>(n)] && --degree[static_cast<std::size_t>(n)] == 1) leaves.push_back(n);
    }
  }
  int start = -1;
  for (int i = 0; i < m.atom_count(); ++i)
    if (!removed[static_cast<std::size_t>(i)]) {
      start = i;
      break;
    }
  std::vector<int> cycle;
  int prev = -1;
  int cur = start;
  do {
    cycle.push_back(cur);
    int next = -1;
    for (int id : m.bonds_of(cur)) {
      const int n = m.bond(id).other(cur);
      if (!removed[static_cast<std::size_t>(n)] && n != prev) {
        next = n;
        break;
      }
    }
    prev = cur;
    cur = next;
  } while (cur != start && cur != -1);
  return cycle;
}

struct DomainLimits {
  int min_atoms = 3;
  int max_atoms = 12;
};

/// Checks the puzzle-molecule invariants: connected, valence caps, atom
/// count bounds, at most one ring of size 5 or 6.
inline bool satisfies_puzzle_invariants(const Molecule& m, DomainLimits limits = {}) {
  if (m.atom_count() < limits.min_atoms || m.atom_count() > limits.max_atoms) return false;
  if (!m.connected() || !m.valence_ok()) return false;
  for (const auto& b : m.bonds())
    if (b.order < 1 || b.order > 3 || b.a == b.b) return false;
  const int rings = m.ring_count();
  if (rings > 1) return false;
  if (rings == 1) {
    const auto size = ring_atoms(m).size();
    if (size != 5 && size != 6) return false;
  }
  return true;
}

}  // namespace childplay::chem
