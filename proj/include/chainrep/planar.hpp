#pragma once

// Boundary-chain structure of planar distributive lattices, stated without
// reference to a drawn diagram: the "left" and "right" boundary chains are
// replaced by any split of J(D) into two chains.

#include <algorithm>
#include <optional>
#include <vector>

#include "chainrep/dist_lattice.hpp"
#include "chainrep/error.hpp"
#include "chainrep/poset.hpp"

namespace chainrep {

  // A split of J(D) into two chains, as lattice element ids listed bottom to
  // top. `right` is empty for chains.
  struct BoundaryAssignment {
    std::vector<Element> left;
    std::vector<Element> right;

    friend bool operator==(BoundaryAssignment const&,
                           BoundaryAssignment const&)
        = default;
  };

  inline BoundaryAssignment boundary_assignment(DistLattice const& d) {
    if (!is_planar(d)) {
      throw PreconditionFailed(Clause::planarity,
                               "J(D) contains a three-element antichain");
    }
    auto const&        ji    = d.join_irreducibles();
    auto const         split = two_chain_partition(d.ji_poset());
    BoundaryAssignment ba;
    for (auto i : split.left) {
      ba.left.push_back(ji[i]);
    }
    for (auto i : split.right) {
      ba.right.push_back(ji[i]);
    }
    return ba;
  }

  namespace detail {
    inline Element largest_below(DistLattice const&          d,
                                 std::vector<Element> const& chain,
                                 Element                     x) {
      Element best = d.bottom();
      for (Element c : chain) {
        if (d.leq(c, x)) {
          best = c;  // chain is sorted bottom to top
        }
      }
      return best;
    }
  }  // namespace detail

  // Largest element of (left + 0) below x.
  inline Element ljsp(DistLattice const&        d,
                      BoundaryAssignment const& ba,
                      Element                   x) {
    d.check_element(x);
    return detail::largest_below(d, ba.left, x);
  }

  inline Element rjsp(DistLattice const&        d,
                      BoundaryAssignment const& ba,
                      Element                   x) {
    d.check_element(x);
    return detail::largest_below(d, ba.right, x);
  }

  // Two distinct join-reducible coatoms c_l, c_r with e = c_l ^ c_r; d_l and
  // d_r are the lower covers of c_l and c_r other than e. c_l is the coatom
  // above the top of the left chain.
  struct TwoCoatomConfig {
    Element c_l;
    Element c_r;
    Element e;
    Element d_l;
    Element d_r;
  };

  inline std::optional<TwoCoatomConfig>
  two_coatom_config(DistLattice const& d, BoundaryAssignment const& ba) {
    auto const report = coatom_report(d);
    if (report.coatoms.size() != 2 || report.join_reducible.size() != 2) {
      return std::nullopt;
    }
    Element c_l = report.coatoms[0];
    Element c_r = report.coatoms[1];
    if (!ba.left.empty() && !d.leq(ba.left.back(), c_l)
        && d.leq(ba.left.back(), c_r)) {
      std::swap(c_l, c_r);
    }
    Element const e = d.meet(c_l, c_r);
    auto other_cover = [&](Element c) {
      for (Element y : d.lower_covers(c)) {
        if (y != e) {
          return y;
        }
      }
      return e;
    };
    return TwoCoatomConfig{c_l, c_r, e, other_cover(c_l), other_cover(c_r)};
  }

  // Each field is one assertion about a lattice with two join-reducible
  // coatoms, phrased with {p, q} = the maximal join-irreducibles.
  struct SupportLemmaReport {
    bool maxima_pair_spans_top      = false;  // |{p,q}|=2, p || q, p v q = 1
    bool maxima_outside_meet        = false;  // J(D) \ down(e) = {p, q}
    bool maxima_not_below_meet_join = false;  // p !<= e v q, q !<= e v p
    bool meet_not_below_maxima      = false;  // e !<= p, e !<= q
    bool meet_covered_by_both       = false;  // e < c_l and e < c_r are covers
    bool supports_span_top          = false;  // ljsp(d_l) v rjsp(d_r) = 1

    bool all() const noexcept {
      return maxima_pair_spans_top && maxima_outside_meet
             && maxima_not_below_meet_join && meet_not_below_maxima
             && meet_covered_by_both && supports_span_top;
    }
  };

  inline SupportLemmaReport check_support_lemmas(DistLattice const&        d,
                                                 BoundaryAssignment const& ba) {
    auto const config = two_coatom_config(d, ba);
    if (!config) {
      throw PreconditionFailed(Clause::coatom_condition,
                               "lattice does not have exactly two coatoms, "
                               "both join-reducible");
    }
    auto const& [c_l, c_r, e, d_l, d_r] = *config;
    Element const one                   = d.top();

    std::vector<Element> maxima;
    for (Element u : d.join_irreducibles()) {
      bool maximal = true;
      for (Element v : d.join_irreducibles()) {
        maximal = maximal && !d.lt(u, v);
      }
      if (maximal) {
        maxima.push_back(u);
      }
    }

    SupportLemmaReport r;
    auto is_cover = [&](Element lo, Element hi) {
      auto const& lc = d.lower_covers(hi);
      return std::find(lc.begin(), lc.end(), lo) != lc.end();
    };
    r.meet_covered_by_both = is_cover(e, c_l) && is_cover(e, c_r);
    r.supports_span_top
        = d.join(ljsp(d, ba, d_l), rjsp(d, ba, d_r)) == one;
    if (maxima.size() != 2) {
      return r;
    }
    Element const p = maxima[0];
    Element const q = maxima[1];

    r.maxima_pair_spans_top = !d.comparable(p, q) && d.join(p, q) == one;

    std::vector<Element> outside;
    for (Element u : d.join_irreducibles()) {
      if (!d.leq(u, e)) {
        outside.push_back(u);
      }
    }
    r.maxima_outside_meet = outside == maxima;

    r.maxima_not_below_meet_join
        = !d.leq(p, d.join(e, q)) && !d.leq(q, d.join(e, p));
    r.meet_not_below_maxima = !d.leq(e, p) && !d.leq(e, q);
    return r;
  }

}  // namespace chainrep
