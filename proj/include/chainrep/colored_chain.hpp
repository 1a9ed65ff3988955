#pragma once

// J(D)-colored chains: a chain 0 < 1 < ... < n-1 whose edges [i, i+1] carry
// join-irreducible colors of D, every join-irreducible being used. An
// interval represents the join of its edge colors; the chain represents the
// set of all such joins.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chainrep/dist_lattice.hpp"
#include "chainrep/error.hpp"
#include "chainrep/planar.hpp"

namespace chainrep {

  using LatticePtr = std::shared_ptr<DistLattice const>;

  // Sorted, duplicate-free list of element ids of d.
  inline std::vector<Element> normalize_subset(DistLattice const&       d,
                                               std::span<Element const> ids) {
    std::vector<Element> q(ids.begin(), ids.end());
    for (Element x : q) {
      d.check_element(x);
    }
    std::sort(q.begin(), q.end());
    q.erase(std::unique(q.begin(), q.end()), q.end());
    return q;
  }

  class ColoredChain {
   public:
    // colors[i] is the color of the edge [i, i+1]; the chain has
    // colors.size() + 1 elements.
    ColoredChain(LatticePtr lattice, std::vector<Element> colors)
        : lattice_(std::move(lattice)), colors_(std::move(colors)) {
      if (!lattice_) {
        throw std::invalid_argument("colored chain needs a lattice");
      }
      auto const&       d = *lattice_;
      std::vector<char> used(d.size(), 0);
      for (std::size_t i = 0; i < colors_.size(); ++i) {
        Element const c = colors_[i];
        d.check_element(c);
        if (!d.is_join_irreducible(c)) {
          throw std::invalid_argument("color " + d.name(c) + " of edge "
                                      + std::to_string(i)
                                      + " is not join-irreducible");
        }
        used[c] = 1;
      }
      for (Element u : d.join_irreducibles()) {
        if (!used[u]) {
          throw std::invalid_argument("coloring is not surjective: "
                                      + d.name(u) + " is never used");
        }
      }
    }

    // Number of chain elements.
    std::size_t size() const noexcept { return colors_.size() + 1; }
    std::size_t edges() const noexcept { return colors_.size(); }

    std::vector<Element> const& colors() const noexcept { return colors_; }
    Element                     color(std::size_t edge) const {
      return colors_.at(edge);
    }
    DistLattice const& lattice() const noexcept { return *lattice_; }
    LatticePtr const&  lattice_ptr() const noexcept { return lattice_; }

    friend bool operator==(ColoredChain const& a, ColoredChain const& b) {
      return a.colors_ == b.colors_
             && (a.lattice_ == b.lattice_ || *a.lattice_ == *b.lattice_);
    }

   private:
    LatticePtr           lattice_;
    std::vector<Element> colors_;
  };

  // Join of the colors of edges inside [i, j]; the empty interval gives 0.
  inline Element erep(ColoredChain const& ch, std::size_t i, std::size_t j) {
    if (i > j || j >= ch.size()) {
      throw std::out_of_range("interval [" + std::to_string(i) + ","
                              + std::to_string(j)
                              + "] is not an interval of a chain of size "
                              + std::to_string(ch.size()));
    }
    auto const& d = ch.lattice();
    Element     x = d.bottom();
    for (std::size_t k = i; k < j; ++k) {
      x = d.join(x, ch.color(k));
    }
    return x;
  }

  // All represented elements, sorted. One left-to-right sweep per start point.
  inline std::vector<Element> srep(ColoredChain const& ch) {
    auto const&       d = ch.lattice();
    std::vector<char> hit(d.size(), 0);
    hit[d.bottom()] = 1;
    auto const& colors = ch.colors();
    for (std::size_t i = 0; i < colors.size(); ++i) {
      Element acc = d.bottom();
      for (std::size_t j = i; j < colors.size(); ++j) {
        acc      = d.join(acc, colors[j]);
        hit[acc] = 1;
      }
    }
    std::vector<Element> result;
    for (Element x = 0; x < d.size(); ++x) {
      if (hit[x]) {
        result.push_back(x);
      }
    }
    return result;
  }

  struct NecessaryConditions {
    bool                   satisfied = false;
    std::optional<Element> missing;  // least element of J+(D) not in Q
  };

  // Every represented set contains J+(D): 0 from empty intervals, 1 from the
  // whole chain, each join-irreducible from an edge of that color.
  inline NecessaryConditions necessary_conditions(DistLattice const&       d,
                                                  std::span<Element const> q) {
    auto const       subset = normalize_subset(d, q);
    NecessaryConditions r;
    for (Element x : j_sets(d).jplus) {
      if (!std::binary_search(subset.begin(), subset.end(), x)) {
        r.missing = x;
        return r;
      }
    }
    r.satisfied = true;
    return r;
  }

  // The element c used as the separator color: the top if it is
  // join-irreducible, otherwise the least join-irreducible coatom.
  inline std::optional<Element> separator_color(DistLattice const& d) {
    if (d.is_join_irreducible(d.top())) {
      return d.top();
    }
    for (Element c : coatom_report(d).coatoms) {
      if (d.is_join_irreducible(c)) {
        return c;
      }
    }
    return std::nullopt;
  }

  // Elements of Q listed after the join-irreducibles: Q minus J(D) and 0.
  inline std::vector<Element> extra_elements(DistLattice const&       d,
                                             std::span<Element const> q) {
    std::vector<Element> xs;
    for (Element x : normalize_subset(d, q)) {
      if (x != d.bottom() && !d.is_join_irreducible(x)) {
        xs.push_back(x);
      }
    }
    return xs;
  }

  // Builds a chain representing Q for a planar D with at most one
  // join-reducible coatom. With u_1 < ... < u_m the join-irreducibles and
  // x_1 < ... < x_k the remaining nonzero elements of Q (by id), the edge
  // colors bottom to top are
  //
  //   u_1, c, u_2, c, ..., c, u_m, then c, ljsp(x_i), rjsp(x_i) for each i,
  //
  // for 2m + 3k - 1 edges. Any interval of two or more edges either contains
  // a c-edge, so lands in the filter of c (which Q contains), or is exactly
  // some ljsp(x_i), rjsp(x_i) pair, whose join is x_i.
  inline ColoredChain build_full_chain(LatticePtr const&         lattice,
                                       std::span<Element const>  q,
                                       BoundaryAssignment const& ba) {
    auto const& d      = *lattice;
    auto const  subset = normalize_subset(d, q);
    auto const  nc     = necessary_conditions(d, subset);
    if (!nc.satisfied) {
      throw PreconditionFailed(Clause::inclusion,
                               d.name(*nc.missing) + " is in J+(D) but not Q");
    }
    if (d.size() == 1) {
      return ColoredChain(lattice, {});
    }
    if (!is_planar(d)) {
      throw PreconditionFailed(Clause::planarity,
                               "J(D) contains a three-element antichain");
    }
    if (coatom_report(d).join_reducible.size() > 1) {
      throw PreconditionFailed(Clause::coatom_condition,
                               "D has two join-reducible coatoms");
    }
    auto const c = separator_color(d);
    if (!c) {
      // Unreachable once the coatom condition holds.
      throw PreconditionFailed(Clause::coatom_condition,
                               "no join-irreducible coatom");
    }

    auto const&          us = d.join_irreducibles();
    std::vector<Element> colors;
    for (std::size_t i = 0; i < us.size(); ++i) {
      if (i > 0) {
        colors.push_back(*c);
      }
      colors.push_back(us[i]);
    }
    for (Element x : extra_elements(d, subset)) {
      colors.push_back(*c);
      colors.push_back(ljsp(d, ba, x));
      colors.push_back(rjsp(d, ba, x));
    }
    return ColoredChain(lattice, std::move(colors));
  }

  inline constexpr std::size_t kDefaultSearchEdgeCap = 16;

  // Exhaustive search for a chain with at most max_edges edges representing
  // Q. Shorter chains come first, then colorings in lexicographic order of
  // color id, so the result is the first match in that order. std::nullopt
  // only says that no chain within the bound exists.
  inline std::optional<ColoredChain>
  bounded_chain_search(LatticePtr const&        lattice,
                       std::span<Element const> q,
                       std::size_t              max_edges,
                       std::size_t              cap = kDefaultSearchEdgeCap) {
    if (max_edges > cap) {
      throw LimitExceeded("bounded_chain_search: max_edges "
                          + std::to_string(max_edges) + " exceeds the cap "
                          + std::to_string(cap));
    }
    auto const& d      = *lattice;
    auto const  subset = normalize_subset(d, q);
    auto const& ji     = d.join_irreducibles();

    std::vector<char> in_q(d.size(), 0);
    for (Element x : subset) {
      in_q[x] = 1;
    }
    if (!in_q[d.bottom()]) {
      return std::nullopt;  // empty intervals always represent 0
    }
    if (ji.empty()) {
      if (subset.size() == 1) {
        return ColoredChain(lattice, {});
      }
      return std::nullopt;
    }

    std::vector<Element>     colors;
    std::vector<std::size_t> hits(d.size(), 0);  // multiplicity per element
    std::vector<std::size_t> uses(ji.size(), 0);
    std::size_t              distinct_hits = 0;  // nonzero elements hit
    std::size_t              unused_colors = ji.size();
    // suffix[t] holds joins of colors[i..t) for i < t.
    std::vector<std::vector<Element>> suffix(max_edges + 1);

    std::size_t target_edges = 0;

    auto const wanted = subset.size() - 1;  // elements other than 0

    std::function<bool(std::size_t)> dfs = [&](std::size_t t) -> bool {
      if (t == target_edges) {
        return unused_colors == 0 && distinct_hits == wanted;
      }
      if (target_edges - t < unused_colors) {
        return false;
      }
      for (std::size_t ci = 0; ci < ji.size(); ++ci) {
        Element const c = ji[ci];
        if (!in_q[c]) {
          continue;
        }
        auto& next = suffix[t + 1];
        next.clear();
        bool ok = true;
        for (Element s : suffix[t]) {
          Element const x = d.join(s, c);
          if (!in_q[x]) {
            ok = false;
            break;
          }
          next.push_back(x);
        }
        if (!ok) {
          continue;
        }
        next.push_back(c);
        for (Element x : next) {
          if (hits[x]++ == 0) {
            ++distinct_hits;
          }
        }
        if (uses[ci]++ == 0) {
          --unused_colors;
        }
        colors.push_back(c);
        if (dfs(t + 1)) {
          return true;
        }
        colors.pop_back();
        if (--uses[ci] == 0) {
          ++unused_colors;
        }
        for (Element x : suffix[t + 1]) {
          if (--hits[x] == 0) {
            --distinct_hits;
          }
        }
      }
      return false;
    };

    for (target_edges = 1; target_edges <= max_edges; ++target_edges) {
      if (dfs(0)) {
        return ColoredChain(lattice, colors);
      }
    }
    return std::nullopt;
  }

}  // namespace chainrep
