#pragma once

// Graphviz output. Hasse diagrams are drawn bottom to top; node order
// follows element ids, so the text is deterministic.

#include <sstream>
#include <string>

#include "chainrep/colored_chain.hpp"
#include "chainrep/congruence.hpp"
#include "chainrep/dist_lattice.hpp"

namespace chainrep {

  namespace detail {
    inline std::string dot_quote(std::string const& s) {
      std::string r = "\"";
      for (char c : s) {
        if (c == '"' || c == '\\') {
          r += '\\';
        }
        r += c;
      }
      return r + '"';
    }
  }  // namespace detail

  // Join-irreducibles get a double circle.
  inline std::string to_dot(DistLattice const& d) {
    std::ostringstream out;
    out << "digraph lattice {\n  rankdir=BT;\n  node [shape=circle];\n";
    for (Element x = 0; x < d.size(); ++x) {
      out << "  n" << x << " [label=" << detail::dot_quote(d.name(x));
      if (d.is_join_irreducible(x)) {
        out << ", shape=doublecircle";
      }
      out << "];\n";
    }
    for (auto [x, y] : d.covers()) {
      out << "  n" << x << " -> n" << y << ";\n";
    }
    out << "}\n";
    return out.str();
  }

  inline std::string to_dot(ColoredChain const& ch) {
    std::ostringstream out;
    out << "digraph chain {\n  rankdir=BT;\n  node [shape=point];\n";
    for (std::size_t i = 0; i < ch.size(); ++i) {
      out << "  c" << i << " [xlabel=" << i << "];\n";
    }
    for (std::size_t i = 0; i < ch.edges(); ++i) {
      out << "  c" << i << " -> c" << i + 1
          << " [label=" << detail::dot_quote(ch.lattice().name(ch.color(i)))
          << "];\n";
    }
    out << "}\n";
    return out.str();
  }

  // Nodes are labeled by their blocks; join-irreducibles get a double box.
  inline std::string to_dot(ConLattice const& con) {
    std::ostringstream out;
    out << "digraph congruences {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < con.size(); ++i) {
      std::string label;
      for (auto const& block : con.at(i).blocks()) {
        label += '{';
        for (std::size_t k = 0; k < block.size(); ++k) {
          label += (k ? "," : "") + std::to_string(block[k]);
        }
        label += '}';
      }
      out << "  k" << i << " [label=" << detail::dot_quote(label);
      if (con.is_join_irreducible(i)) {
        out << ", peripheries=2";
      }
      out << "];\n";
    }
    for (auto [x, y] : con.covers()) {
      out << "  k" << x << " -> k" << y << ";\n";
    }
    out << "}\n";
    return out.str();
  }

}  // namespace chainrep
