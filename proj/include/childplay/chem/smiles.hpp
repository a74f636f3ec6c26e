#pragma once

// Restricted SMILES: organic-subset atoms C, N, O, S written without
// brackets; '-', '=', '#' bonds; branches; ring closures 1-9 (and %nn).
// Aromatic (lowercase) atoms, brackets, charges, stereo and dot-disconnected
// parts are rejected.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "childplay/chem/molecule.hpp"

namespace childplay::chem {

enum class SmilesError : std::uint8_t { None, Syntax, UnclosedRing, UnclosedBranch, Valence };

inline std::string_view to_string(SmilesError e) {
  switch (e) {
    case SmilesError::None: return "none";
    case SmilesError::Syntax: return "syntax";
    case SmilesError::UnclosedRing: return "unclosed_ring";
    case SmilesError::UnclosedBranch: return "unclosed_branch";
    case SmilesError::Valence: return "valence";
  }
  return "?";
}

struct SmilesResult {
  std::optional<Molecule> molecule;
  SmilesError error = SmilesError::None;
  std::size_t offset = 0;

  explicit operator bool() const { return molecule.has_value(); }
};

inline constexpr int kMaxParsedAtoms = 256;

inline SmilesResult parse_smiles(std::string_view raw) {
  Molecule m;
  int prev = -1;
  int pending = 0;
  struct Branch {
    int atom;
    int atoms_at_open;
  };
  std::vector<Branch> branches;
  struct OpenRing {
    int atom;
    int order;
  };
  std::map<int, OpenRing> rings;
  auto fail = [](SmilesError e, std::size_t at) { return SmilesResult{std::nullopt, e, at}; };

  std::size_t i = 0;
  while (i < raw.size()) {
    const char c = raw[i];
    if (auto e = element_from_symbol(c)) {
      if (m.atom_count() >= kMaxParsedAtoms) return fail(SmilesError::Syntax, i);
      const int atom = m.add_atom(*e);
      if (prev >= 0) {
        m.add_bond(prev, atom, pending ? pending : 1);
      } else if (pending) {
        return fail(SmilesError::Syntax, i);
      }
      prev = atom;
      pending = 0;
      ++i;
    } else if (c == '-' || c == '=' || c == '#') {
      if (prev < 0 || pending) return fail(SmilesError::Syntax, i);
      pending = c == '-' ? 1 : (c == '=' ? 2 : 3);
      ++i;
    } else if (c == '(') {
      if (prev < 0 || pending) return fail(SmilesError::Syntax, i);
      branches.push_back({prev, m.atom_count()});
      ++i;
    } else if (c == ')') {
      if (branches.empty() || pending || branches.back().atoms_at_open == m.atom_count())
        return fail(SmilesError::Syntax, i);
      prev = branches.back().atom;
      branches.pop_back();
      ++i;
    } else if ((c >= '1' && c <= '9') || c == '%') {
      const std::size_t at = i;
      int digit = c - '0';
      if (c == '%') {
        if (i + 2 >= raw.size() || !std::isdigit(static_cast<unsigned char>(raw[i + 1])) ||
            !std::isdigit(static_cast<unsigned char>(raw[i + 2])))
          return fail(SmilesError::Syntax, i);
        digit = (raw[i + 1] - '0') * 10 + (raw[i + 2] - '0');
        i += 3;
      } else {
        ++i;
      }
      if (prev < 0) return fail(SmilesError::Syntax, at);
      auto it = rings.find(digit);
      if (it == rings.end()) {
        rings[digit] = {prev, pending};
      } else {
        const auto open = it->second;
        if (open.atom == prev || m.bond_between(open.atom, prev)) return fail(SmilesError::Syntax, at);
        if (open.order && pending && open.order != pending) return fail(SmilesError::Syntax, at);
        const int order = pending ? pending : (open.order ? open.order : 1);
        m.add_bond(open.atom, prev, order);
        rings.erase(it);
      }
      pending = 0;
    } else {
      return fail(SmilesError::Syntax, i);
    }
  }
  if (m.atom_count() == 0 || pending) return fail(SmilesError::Syntax, raw.size());
  if (!branches.empty()) return fail(SmilesError::UnclosedBranch, raw.size());
  if (!rings.empty()) return fail(SmilesError::UnclosedRing, raw.size());
  if (!m.valence_ok()) return fail(SmilesError::Valence, raw.size());
  return {std::move(m), SmilesError::None, 0};
}

namespace detail {

/// Dense ranks (0..k-1) of `keys`, equal keys share a rank.
template <typename Key>
std::vector<int> dense_ranks(const std::vector<Key>& keys) {
  std::vector<Key> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> ranks(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i)
    ranks[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
  return ranks;
}

inline int class_count(const std::vector<int>& ranks) {
  return ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end()) + 1;
}

/// Extended-connectivity refinement to a fixed point.
inline std::vector<int> refine(const Molecule& m, std::vector<int> ranks) {
  using Key = std::pair<int, std::vector<std::pair<int, int>>>;
  int classes = class_count(ranks);
  while (true) {
    std::vector<Key> keys(ranks.size());
    for (int a = 0; a < m.atom_count(); ++a) {
      auto& [own, neighbours] = keys[static_cast<std::size_t>(a)];
      own = ranks[static_cast<std::size_t>(a)];
      for (int id : m.bonds_of(a))
        neighbours.emplace_back(ranks[static_cast<std::size_t>(m.bond(id).other(a))], m.bond(id).order);
      std::sort(neighbours.begin(), neighbours.end());
    }
    auto next = dense_ranks(keys);
    const int next_classes = class_count(next);
    if (next_classes == classes) return next;
    ranks = std::move(next);
    classes = next_classes;
  }
}

inline std::vector<int> initial_ranks(const Molecule& m) {
  using Key = std::tuple<int, int, std::vector<int>>;
  std::vector<Key> keys;
  for (int a = 0; a < m.atom_count(); ++a) {
    std::vector<int> orders;
    for (int id : m.bonds_of(a)) orders.push_back(m.bond(id).order);
    std::sort(orders.begin(), orders.end());
    keys.emplace_back(static_cast<int>(m.element(a)), m.degree(a), std::move(orders));
  }
  return dense_ranks(keys);
}

inline std::string ring_label(int digit) {
  if (digit < 10) return std::string(1, static_cast<char>('0' + digit));
  return "%" + std::to_string(digit);
}

inline std::string_view bond_symbol(int order) {
  switch (order) {
    case 2: return "=";
    case 3: return "#";
    default: return "";
  }
}

/// Depth-first SMILES writer driven by a total atom order.
class Writer {
 public:
  Writer(const Molecule& m, const std::vector<int>& ranks)
      : m_(m), ranks_(ranks), visit_(static_cast<std::size_t>(m.atom_count()), -1),
        children_(static_cast<std::size_t>(m.atom_count())), opens_(static_cast<std::size_t>(m.atom_count())),
        closes_(static_cast<std::size_t>(m.atom_count())), bond_seen_(static_cast<std::size_t>(m.bond_count()), false) {}

  std::string write() {
    if (m_.atom_count() == 0) return {};
    const int start = static_cast<int>(std::min_element(ranks_.begin(), ranks_.end()) - ranks_.begin());
    discover(start, -1);
    emit(start);
    return out_;
  }

 private:
  std::vector<int> neighbour_bonds(int atom) const {
    auto ids = m_.bonds_of(atom);
    std::sort(ids.begin(), ids.end(), [&](int x, int y) {
      return ranks_[static_cast<std::size_t>(m_.bond(x).other(atom))] <
             ranks_[static_cast<std::size_t>(m_.bond(y).other(atom))];
    });
    return ids;
  }

  void discover(int atom, int via_bond) {
    visit_[static_cast<std::size_t>(atom)] = counter_++;
    for (int id : neighbour_bonds(atom)) {
      if (id == via_bond || bond_seen_[static_cast<std::size_t>(id)]) continue;
      bond_seen_[static_cast<std::size_t>(id)] = true;
      const int next = m_.bond(id).other(atom);
      if (visit_[static_cast<std::size_t>(next)] < 0) {
        children_[static_cast<std::size_t>(atom)].push_back(id);
        discover(next, id);
      } else {
        opens_[static_cast<std::size_t>(next)].push_back(id);
        closes_[static_cast<std::size_t>(atom)].push_back(id);
      }
    }
  }

  void emit(int atom) {
    out_ += symbol(m_.element(atom));
    for (int id : closes_[static_cast<std::size_t>(atom)]) {
      const int digit = digit_of_.at(id);
      out_ += ring_label(digit);
      in_use_.erase(std::find(in_use_.begin(), in_use_.end(), digit));
    }
    for (int id : opens_[static_cast<std::size_t>(atom)]) {
      int digit = 1;
      while (std::find(in_use_.begin(), in_use_.end(), digit) != in_use_.end()) ++digit;
      in_use_.push_back(digit);
      digit_of_[id] = digit;
      out_ += bond_symbol(m_.bond(id).order);
      out_ += ring_label(digit);
    }
    const auto& kids = children_[static_cast<std::size_t>(atom)];
    for (std::size_t k = 0; k < kids.size(); ++k) {
      const bool branch = k + 1 < kids.size();
      if (branch) out_ += '(';
      out_ += bond_symbol(m_.bond(kids[k]).order);
      emit(m_.bond(kids[k]).other(atom));
      if (branch) out_ += ')';
    }
  }

  const Molecule& m_;
  const std::vector<int>& ranks_;
  std::vector<int> visit_;
  int counter_ = 0;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> opens_;
  std::vector<std::vector<int>> closes_;
  std::vector<bool> bond_seen_;
  std::map<int, int> digit_of_;
  std::vector<int> in_use_;
  std::string out_;
};

struct CanonicalSearch {
  const Molecule& m;
  int budget;
  std::optional<std::string> best;
  std::vector<int> best_ranks;

  void explore(std::vector<int> ranks) {
    ranks = refine(m, std::move(ranks));
    const int n = m.atom_count();
    if (class_count(ranks) == n) {
      std::string s = Writer(m, ranks).write();
      --budget;
      if (!best || s < *best) {
        best = std::move(s);
        best_ranks = ranks;
      }
      return;
    }
    // Smallest tied class: branch on which member is singled out.
    std::vector<int> size(static_cast<std::size_t>(n), 0);
    for (int r : ranks) ++size[static_cast<std::size_t>(r)];
    int target = 0;
    while (size[static_cast<std::size_t>(target)] < 2) ++target;
    bool first = true;
    for (int a = 0; a < n; ++a) {
      if (ranks[static_cast<std::size_t>(a)] != target) continue;
      if (!first && budget <= 0) break;
      first = false;
      std::vector<std::pair<int, int>> keys(static_cast<std::size_t>(n));
      for (int b = 0; b < n; ++b)
        keys[static_cast<std::size_t>(b)] = {ranks[static_cast<std::size_t>(b)],
                                             (ranks[static_cast<std::size_t>(b)] == target && b != a) ? 1 : 0};
      explore(dense_ranks(keys));
    }
  }
};

}  // namespace detail

/// Canonical atom ranks (a permutation of 0..n-1) consistent with `canonical_smiles`.
inline std::vector<int> canonical_ranks(const Molecule& m) {
  if (m.atom_count() == 0) return {};
  detail::CanonicalSearch search{m, 20000, std::nullopt, {}};
  search.explore(detail::initial_ranks(m));
  return search.best_ranks;
}

/// Unique text per isomorphism class: the lexicographically smallest
/// depth-first string over all symmetry-breaking choices left after
/// extended-connectivity refinement.
inline std::string canonical_smiles(const Molecule& m) {
  if (m.atom_count() == 0) return {};
  detail::CanonicalSearch search{m, 20000, std::nullopt, {}};
  search.explore(detail::initial_ranks(m));
  return *search.best;
}

/// Writes `m` with the given total order (non-canonical output for tests and tools).
inline std::string write_smiles(const Molecule& m, const std::vector<int>& ranks) { return detail::Writer(m, ranks).write(); }

}  // namespace childplay::chem
