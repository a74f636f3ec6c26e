#pragma once

// Rectilinear ASCII depiction. Atoms sit on a lattice 4 columns and 2 rows
// apart; horizontal bonds are runs of '-', '=' or '#', vertical bonds are
// '|', ':' or '#'. The longest chain (or the ring, drawn as a rectangle)
// runs left to right and side chains branch off it without diagonals.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "childplay/chem/molecule.hpp"
#include "childplay/chem/smiles.hpp"
#include "childplay/core/game.hpp"

namespace childplay::chem {

class LayoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AsciiDepiction {
  std::vector<std::string> grid;
  std::vector<Cell> atom_cells;  // indexed by atom

  std::string text() const {
    std::string out;
    for (const auto& row : grid) {
      out += row;
      out += '\n';
    }
    return out;
  }
};

inline char horizontal_glyph(int order) { return order == 1 ? '-' : (order == 2 ? '=' : '#'); }
inline char vertical_glyph(int order) { return order == 1 ? '|' : (order == 2 ? ':' : '#'); }

namespace detail {

struct Point {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Point&, const Point&) = default;
};

class Layout {
 public:
  explicit Layout(const Molecule& m) : m_(m), ranks_(canonical_ranks(m)), pos_(static_cast<std::size_t>(m.atom_count())) {}

  bool run() {
    if (m_.atom_count() == 0) return false;
    if (m_.ring_count() > 1) return false;
    if (m_.ring_count() == 1) {
      if (!place_ring()) return false;
    } else {
      place_chain();
    }
    order_attachments();
    long budget = 200000;
    return attach(0, budget);
  }

  const std::vector<std::optional<Point>>& positions() const { return pos_; }

 private:
  int rank(int atom) const { return ranks_[static_cast<std::size_t>(atom)]; }

  void put(int atom, Point p) {
    pos_[static_cast<std::size_t>(atom)] = p;
    used_.insert(p);
  }

  bool free(Point p) const { return !used_.count(p) && !blocked_.count(p); }

  bool place_ring() {
    auto cycle = ring_atoms(m_);
    if (cycle.size() != 5 && cycle.size() != 6) return false;
    auto lowest = std::min_element(cycle.begin(), cycle.end(), [&](int a, int b) { return rank(a) < rank(b); });
    std::rotate(cycle.begin(), lowest, cycle.end());
    if (rank(cycle.back()) < rank(cycle[1])) std::reverse(cycle.begin() + 1, cycle.end());
    static constexpr std::array<Point, 6> six = {{{0, 0}, {1, 0}, {2, 0}, {2, 1}, {1, 1}, {0, 1}}};
    static constexpr std::array<Point, 5> five = {{{0, 0}, {1, 0}, {2, 0}, {2, 1}, {0, 1}}};
    for (std::size_t i = 0; i < cycle.size(); ++i) put(cycle[i], cycle.size() == 6 ? six[i] : five[i]);
    if (cycle.size() == 5) blocked_.insert({1, 1});
    return true;
  }

  std::vector<int> bfs_from(int start, std::vector<int>& parent) const {
    const auto n = static_cast<std::size_t>(m_.atom_count());
    std::vector<int> dist(n, -1);
    parent.assign(n, -1);
    std::vector<int> queue{start};
    dist[static_cast<std::size_t>(start)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int a = queue[head];
      for (int nb : sorted_neighbours(a)) {
        if (dist[static_cast<std::size_t>(nb)] >= 0) continue;
        dist[static_cast<std::size_t>(nb)] = dist[static_cast<std::size_t>(a)] + 1;
        parent[static_cast<std::size_t>(nb)] = a;
        queue.push_back(nb);
      }
    }
    return dist;
  }

  int farthest(const std::vector<int>& dist) const {
    int best = 0;
    for (int a = 1; a < m_.atom_count(); ++a) {
      const auto da = dist[static_cast<std::size_t>(a)];
      const auto db = dist[static_cast<std::size_t>(best)];
      if (da > db || (da == db && rank(a) < rank(best))) best = a;
    }
    return best;
  }

  void place_chain() {
    const int root = static_cast<int>(std::min_element(ranks_.begin(), ranks_.end()) - ranks_.begin());
    std::vector<int> parent;
    const int a = farthest(bfs_from(root, parent));
    const int b = farthest(bfs_from(a, parent));
    std::vector<int> chain;
    for (int cur = b; cur != -1; cur = parent[static_cast<std::size_t>(cur)]) chain.push_back(cur);
    if (rank(chain.back()) < rank(chain.front())) std::reverse(chain.begin(), chain.end());
    for (std::size_t i = 0; i < chain.size(); ++i) put(chain[i], {static_cast<int>(i), 0});
  }

  std::vector<int> sorted_neighbours(int atom) const {
    std::vector<int> out;
    for (int id : m_.bonds_of(atom)) out.push_back(m_.bond(id).other(atom));
    std::sort(out.begin(), out.end(), [&](int x, int y) { return rank(x) < rank(y); });
    return out;
  }

  void order_attachments() {
    std::vector<int> queue;
    std::vector<bool> seen(static_cast<std::size_t>(m_.atom_count()), false);
    for (int a = 0; a < m_.atom_count(); ++a)
      if (pos_[static_cast<std::size_t>(a)]) {
        queue.push_back(a);
        seen[static_cast<std::size_t>(a)] = true;
      }
    std::sort(queue.begin(), queue.end(), [&](int x, int y) { return rank(x) < rank(y); });
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int a = queue[head];
      for (int nb : sorted_neighbours(a)) {
        if (seen[static_cast<std::size_t>(nb)]) continue;
        seen[static_cast<std::size_t>(nb)] = true;
        pending_.emplace_back(a, nb);
        queue.push_back(nb);
      }
    }
  }

  bool attach(std::size_t k, long& budget) {
    if (k == pending_.size()) return true;
    if (--budget < 0) return false;
    const auto [parent, child] = pending_[k];
    const Point at = *pos_[static_cast<std::size_t>(parent)];
    static constexpr std::array<Point, 4> directions = {{{0, -1}, {0, 1}, {1, 0}, {-1, 0}}};
    for (auto d : directions) {
      const Point target{at.x + d.x, at.y + d.y};
      if (!free(target)) continue;
      put(child, target);
      if (attach(k + 1, budget)) return true;
      used_.erase(target);
      pos_[static_cast<std::size_t>(child)].reset();
    }
    return false;
  }

  const Molecule& m_;
  std::vector<int> ranks_;
  std::vector<std::optional<Point>> pos_;
  std::set<Point> used_;
  std::set<Point> blocked_;
  std::vector<std::pair<int, int>> pending_;
};

}  // namespace detail

inline std::optional<AsciiDepiction> try_render_ascii(const Molecule& m) {
  detail::Layout layout(m);
  if (!layout.run()) return std::nullopt;
  const auto& pos = layout.positions();
  int min_x = pos[0]->x, max_x = pos[0]->x, min_y = pos[0]->y, max_y = pos[0]->y;
  for (const auto& p : pos) {
    min_x = std::min(min_x, p->x);
    max_x = std::max(max_x, p->x);
    min_y = std::min(min_y, p->y);
    max_y = std::max(max_y, p->y);
  }
  AsciiDepiction d;
  d.grid.assign(static_cast<std::size_t>(2 * (max_y - min_y) + 1), std::string(static_cast<std::size_t>(4 * (max_x - min_x) + 1), ' '));
  auto cell_of = [&](const detail::Point& p) { return Cell{2 * (p.y - min_y), 4 * (p.x - min_x)}; };
  auto at = [&](int r, int c) -> char& { return d.grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; };
  for (int a = 0; a < m.atom_count(); ++a) {
    const Cell c = cell_of(*pos[static_cast<std::size_t>(a)]);
    d.atom_cells.push_back(c);
    at(c.row, c.col) = symbol(m.element(a));
  }
  for (const auto& b : m.bonds()) {
    Cell u = d.atom_cells[static_cast<std::size_t>(b.a)];
    Cell v = d.atom_cells[static_cast<std::size_t>(b.b)];
    if (u.row == v.row) {
      if (u.col > v.col) std::swap(u, v);
      for (int c = u.col + 1; c < v.col; ++c) at(u.row, c) = horizontal_glyph(b.order);
    } else if (u.col == v.col) {
      if (u.row > v.row) std::swap(u, v);
      for (int r = u.row + 1; r < v.row; ++r) at(r, u.col) = vertical_glyph(b.order);
    } else {
      return std::nullopt;
    }
  }
  for (auto& row : d.grid) {
    while (!row.empty() && row.back() == ' ') row.pop_back();
  }
  return d;
}

inline AsciiDepiction render_ascii(const Molecule& m) {
  auto d = try_render_ascii(m);
  if (!d) throw LayoutError("molecule cannot be laid out without glyph collisions");
  return *std::move(d);
}

}  // namespace childplay::chem
