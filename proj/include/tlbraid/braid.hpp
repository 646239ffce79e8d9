#pragma once

// Braid words, plat closures, component tracing and writhe.
//
// Letter +i is the Artin generator sigma_i, -i its inverse.  Letters are listed
// top to bottom: in sigma_i the strand leaving upper peg i+1 for lower peg i
// passes over the strand leaving upper peg i for lower peg i+1.

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "tlbraid/error.hpp"

namespace tlbraid {

struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  BraidWord() = default;
  BraidWord(int n, std::vector<int> word) : strands(n), letters(std::move(word)) { validate(); }

  void validate() const {
    if (strands < 1) throw DomainError("braid: strand count must be positive");
    for (int l : letters)
      if (l == 0 || std::abs(l) > strands - 1)
        throw DomainError("braid: letter " + std::to_string(l) + " out of range for B_" +
                          std::to_string(strands));
  }

  std::size_t length() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }

  /// Same word with every crossing reversed.
  BraidWord mirrored() const {
    BraidWord m = *this;
    for (int& l : m.letters) l = -l;
    return m;
  }

  /// Group inverse: reversed order, inverted letters.
  BraidWord inverse() const {
    BraidWord inv(strands, {});
    inv.letters.assign(letters.rbegin(), letters.rend());
    for (int& l : inv.letters) l = -l;
    return inv;
  }

  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

/// b1 placed above b2.
inline BraidWord compose(const BraidWord& b1, const BraidWord& b2) {
  if (b1.strands != b2.strands) throw DomainError("compose: strand mismatch");
  BraidWord r = b1;
  r.letters.insert(r.letters.end(), b2.letters.begin(), b2.letters.end());
  return r;
}

/// Text form: "strands N\n" followed by the space-separated letters and "\n".
inline std::string serialize_braid(const BraidWord& b) {
  std::string out = "strands " + std::to_string(b.strands) + "\n";
  for (std::size_t j = 0; j < b.letters.size(); ++j) {
    if (j) out += ' ';
    out += std::to_string(b.letters[j]);
  }
  out += '\n';
  return out;
}

inline BraidWord parse_braid(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw ParseError(1, "empty braid file");
  std::istringstream header(line);
  std::string keyword;
  int n = 0;
  if (!(header >> keyword >> n) || keyword != "strands")
    throw ParseError(1, "expected 'strands N'");
  std::vector<int> letters;
  if (std::getline(is, line)) {
    std::istringstream body(line);
    std::string tok;
    while (body >> tok) {
      char* end = nullptr;
      long v = std::strtol(tok.c_str(), &end, 10);
      if (*end != '\0') throw ParseError(2, "bad letter '" + tok + "'");
      letters.push_back(static_cast<int>(v));
    }
  }
  try {
    return BraidWord(n, std::move(letters));
  } catch (const DomainError& e) {
    throw ParseError(2, e.what());
  }
}

// ---------------------------------------------------------------------------
// Plat closure

struct Crossing {
  int position;  // the crossing involves columns position and position+1
  int sign;      // +1 for sigma_i, -1 for its inverse
};

/// Plat closure: caps join top pegs (1,2),(3,4),...; cups join the bottom pegs
/// the same way.
struct PlatDiagram {
  int strands = 0;
  std::vector<Crossing> crossings;  // top to bottom
};

inline PlatDiagram plat_close(const BraidWord& b) {
  b.validate();
  if (b.strands % 2 != 0) throw DomainError("plat_close: odd strand count");
  PlatDiagram d;
  d.strands = b.strands;
  d.crossings.reserve(b.letters.size());
  for (int l : b.letters) d.crossings.push_back({std::abs(l), l > 0 ? 1 : -1});
  return d;
}

/// Where a component passes through a crossing, and in which vertical direction.
struct CrossingVisit {
  int component = -1;
  bool downward = true;
};

struct CrossingOrientation {
  CrossingVisit over;
  CrossingVisit under;
};

struct OrientedLink {
  PlatDiagram diagram;
  int component_count = 0;
  /// for each crossing: the components and traversal directions of both strands
  std::vector<CrossingOrientation> crossings;
  /// for each component: the top peg its traversal starts from (odd, 1-based)
  std::vector<int> start_peg;
};

inline OrientedLink trace_components(const PlatDiagram& d) {
  const int n = d.strands;
  const int m = static_cast<int>(d.crossings.size());
  OrientedLink link;
  link.diagram = d;
  link.crossings.assign(m, {});
  // visited[level][peg] for vertical segments leaving a level downward
  std::vector<std::vector<char>> used(m + 1, std::vector<char>(n + 1, 0));

  for (int cap = 1; cap <= n; cap += 2) {
    if (used[0][cap]) continue;
    const int comp = link.component_count++;
    link.start_peg.push_back(cap);
    int level = 0, peg = cap;
    bool down = true;
    while (true) {
      if (down) {
        used[level][peg] = 1;
        while (level < m) {
          const Crossing& c = d.crossings[level];
          int next = peg;
          if (peg == c.position || peg == c.position + 1) {
            // left-to-right strand is the under strand of sigma_i, over of its inverse
            const bool left_to_right = (peg == c.position);
            const bool is_over = (c.sign > 0) != left_to_right;
            CrossingVisit& v = is_over ? link.crossings[level].over : link.crossings[level].under;
            v.component = comp;
            v.downward = true;
            next = left_to_right ? peg + 1 : peg - 1;
          }
          ++level;
          peg = next;
          if (level < m) used[level][peg] = 1;
        }
        // bottom cup
        peg = (peg % 2 == 1) ? peg + 1 : peg - 1;
        down = false;
      } else {
        while (level > 0) {
          const Crossing& c = d.crossings[level - 1];
          int next = peg;
          if (peg == c.position || peg == c.position + 1) {
            // moving up from lower peg `peg`
            const bool from_lower_left = (peg == c.position);
            // lower-left end belongs to the strand from upper i+1 to lower i
            const bool is_over = (c.sign > 0) == from_lower_left;
            CrossingVisit& v = is_over ? link.crossings[level - 1].over
                                       : link.crossings[level - 1].under;
            v.component = comp;
            v.downward = false;
            next = from_lower_left ? peg + 1 : peg - 1;
          }
          --level;
          peg = next;
          used[level][peg] = 1;
        }
        // top cap
        peg = (peg % 2 == 1) ? peg + 1 : peg - 1;
        if (peg == cap) break;
        down = true;
      }
    }
  }
  return link;
}

/// Sign of one crossing: +1 when the (over, under) direction pair is
/// right-handed, i.e. the cross product over x under points out of the page.
inline int crossing_sign(int letter_sign, bool over_down, bool under_down) {
  // direction vectors when both strands are traversed downward
  int ox = letter_sign > 0 ? -1 : 1, oy = -1;
  int ux = letter_sign > 0 ? 1 : -1, uy = -1;
  if (!over_down) ox = -ox, oy = -oy;
  if (!under_down) ux = -ux, uy = -uy;
  return (ox * uy - oy * ux) > 0 ? 1 : -1;
}

/// Writhe of the traced link.  `reversed` optionally flips the orientation of
/// individual components (indexed by component id).
inline int writhe(const OrientedLink& link, const std::vector<bool>& reversed = {}) {
  auto flip = [&](int comp) {
    return comp >= 0 && comp < static_cast<int>(reversed.size()) && reversed[comp];
  };
  int w = 0;
  for (std::size_t j = 0; j < link.crossings.size(); ++j) {
    const auto& co = link.crossings[j];
    bool od = co.over.downward != flip(co.over.component);
    bool ud = co.under.downward != flip(co.under.component);
    w += crossing_sign(link.diagram.crossings[j].sign, od, ud);
  }
  return w;
}

inline int writhe(const BraidWord& b) { return writhe(trace_components(plat_close(b))); }

}  // namespace tlbraid
