#pragma once

// Congruences of finite unary algebras by brute force: principal congruences
// via union-find closure, the full congruence lattice as the join-closure of
// the principal ones, and the checks that a chain-built algebra has the
// intended congruence lattice and principal congruences.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chainrep/algebra.hpp"
#include "chainrep/colored_chain.hpp"
#include "chainrep/dist_lattice.hpp"
#include "chainrep/error.hpp"

namespace chainrep {

  // An equivalence on {0..n-1}, stored as the least member of each element's
  // block. Equal partitions have equal label vectors.
  class Congruence {
   public:
    Congruence() = default;

    // `labels` may use any block names; they are canonicalized.
    explicit Congruence(std::vector<Element> labels)
        : block_(std::move(labels)) {
      canonicalize();
    }

    static Congruence identity(std::size_t n) {
      std::vector<Element> b(n);
      for (Element x = 0; x < n; ++x) {
        b[x] = x;
      }
      return Congruence(std::move(b));
    }

    static Congruence total(std::size_t n) {
      return Congruence(std::vector<Element>(n, 0));
    }

    static Congruence from_blocks(std::size_t                              n,
                                  std::vector<std::vector<Element>> const& blocks) {
      constexpr Element    unset = static_cast<Element>(-1);
      std::vector<Element> b(n, unset);
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (Element x : blocks[i]) {
          if (x >= n) {
            throw std::out_of_range("block member outside the carrier");
          }
          if (b[x] != unset) {
            throw std::invalid_argument("element " + std::to_string(x)
                                        + " is in two blocks");
          }
          b[x] = i;
        }
      }
      if (std::find(b.begin(), b.end(), unset) != b.end()) {
        throw std::invalid_argument("blocks do not cover the carrier");
      }
      return Congruence(std::move(b));
    }

    std::size_t size() const noexcept { return block_.size(); }
    Element     block(Element x) const { return block_[x]; }
    bool same(Element x, Element y) const { return block_[x] == block_[y]; }
    std::vector<Element> const& labels() const noexcept { return block_; }

    std::size_t block_count() const {
      std::size_t k = 0;
      for (Element x = 0; x < block_.size(); ++x) {
        k += block_[x] == x;
      }
      return k;
    }

    // Blocks in order of their least member, members ascending.
    std::vector<std::vector<Element>> blocks() const {
      std::vector<std::vector<Element>> result;
      std::vector<std::size_t>          slot(block_.size());
      for (Element x = 0; x < block_.size(); ++x) {
        if (block_[x] == x) {
          slot[x] = result.size();
          result.emplace_back();
        }
        result[slot[block_[x]]].push_back(x);
      }
      return result;
    }

    // this <= other in the refinement order.
    bool refines(Congruence const& other) const {
      for (Element x = 0; x < block_.size(); ++x) {
        if (!other.same(x, block_[x])) {
          return false;
        }
      }
      return true;
    }

    friend bool operator==(Congruence const&, Congruence const&) = default;
    friend auto operator<=>(Congruence const&, Congruence const&) = default;

   private:
    void canonicalize() {
      std::map<Element, Element> least;
      for (Element x = 0; x < block_.size(); ++x) {
        least.try_emplace(block_[x], x);
      }
      for (auto& b : block_) {
        b = least[b];
      }
    }

    std::vector<Element> block_;
  };

  // Description of the first (operation, pair) the equivalence fails to
  // respect, if any.
  inline std::optional<std::string> respect_violation(Congruence const&   c,
                                                      UnaryAlgebra const& a) {
    for (auto const& op : a.ops()) {
      for (Element x = 0; x < a.size(); ++x) {
        Element const y = c.block(x);
        if (!c.same(op.map[x], op.map[y])) {
          return to_string(op.tag) + " maps the pair (" + std::to_string(y)
                 + "," + std::to_string(x) + ") to ("
                 + std::to_string(op.map[y]) + ","
                 + std::to_string(op.map[x]) + ")";
        }
      }
    }
    return std::nullopt;
  }

  inline bool respects(Congruence const& c, UnaryAlgebra const& a) {
    return !respect_violation(c, a).has_value();
  }

  namespace detail {
    class UnionFind {
     public:
      explicit UnionFind(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i) {
          parent_[i] = i;
        }
      }
      std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
          parent_[x] = parent_[parent_[x]];
          x          = parent_[x];
        }
        return x;
      }
      bool unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x == y) {
          return false;
        }
        if (y < x) {
          std::swap(x, y);
        }
        parent_[y] = x;
        return true;
      }

     private:
      std::vector<std::size_t> parent_;
    };
  }  // namespace detail

  // Least congruence containing every seed pair. Whenever a pair (x, y)
  // merges two classes, (f(x), f(y)) is queued for every operation f; pairs
  // that are already related need nothing new, since their images are
  // related through the pairs that related them.
  inline Congruence generate(UnaryAlgebra const&          a,
                             std::span<ElementPair const> seeds) {
    std::size_t const        n = a.size();
    detail::UnionFind        uf(n);
    std::vector<ElementPair> work(seeds.begin(), seeds.end());
    for (auto [x, y] : work) {
      if (x >= n || y >= n) {
        throw std::out_of_range("seed pair outside the carrier");
      }
    }
    auto const& ops = a.ops();
    while (!work.empty()) {
      auto const [x, y] = work.back();
      work.pop_back();
      if (!uf.unite(x, y)) {
        continue;
      }
      for (auto const& op : ops) {
        Element const fx = op.map[x];
        Element const fy = op.map[y];
        if (fx != fy) {
          work.emplace_back(fx, fy);
        }
      }
    }
    std::vector<Element> labels(n);
    for (Element x = 0; x < n; ++x) {
      labels[x] = uf.find(x);
    }
    return Congruence(std::move(labels));
  }

  inline Congruence principal_congruence(UnaryAlgebra const& a,
                                         Element             x,
                                         Element             y) {
    ElementPair const seed{x, y};
    return generate(a, std::span<ElementPair const>(&seed, 1));
  }

  // Least congruence containing both; the union is re-closed under the
  // operations and transitivity.
  inline Congruence join(UnaryAlgebra const& a,
                         Congruence const&   s,
                         Congruence const&   t) {
    std::vector<ElementPair> seeds;
    for (Element x = 0; x < a.size(); ++x) {
      if (s.block(x) != x) {
        seeds.emplace_back(s.block(x), x);
      }
      if (t.block(x) != x) {
        seeds.emplace_back(t.block(x), x);
      }
    }
    return generate(a, seeds);
  }

  inline Congruence meet(Congruence const& s, Congruence const& t) {
    std::size_t const                     n = s.size();
    std::map<ElementPair, Element>        least;
    std::vector<Element>                  labels(n);
    for (Element x = 0; x < n; ++x) {
      auto [it, fresh] = least.try_emplace({s.block(x), t.block(x)}, x);
      labels[x]        = it->second;
    }
    return Congruence(std::move(labels));
  }

  // con(x, y) for every pair of carrier elements.
  class PrincipalTable {
   public:
    explicit PrincipalTable(UnaryAlgebra const& a)
        : n_(a.size()), table_(a.size() * a.size()) {
      auto const delta = Congruence::identity(n_);
      for (Element x = 0; x < n_; ++x) {
        table_[x * n_ + x] = delta;
        for (Element y = x + 1; y < n_; ++y) {
          table_[x * n_ + y] = table_[y * n_ + x]
              = principal_congruence(a, x, y);
        }
      }
    }

    std::size_t       size() const noexcept { return n_; }
    Congruence const& operator()(Element x, Element y) const {
      return table_.at(x * n_ + y);
    }

    // Princ(A), sorted, without duplicates; always contains the identity.
    std::vector<Congruence> distinct() const {
      std::vector<Congruence> r(table_);
      std::sort(r.begin(), r.end());
      r.erase(std::unique(r.begin(), r.end()), r.end());
      return r;
    }

   private:
    std::size_t             n_;
    std::vector<Congruence> table_;
  };

  inline std::vector<Congruence> princ_set(UnaryAlgebra const& a) {
    return PrincipalTable(a).distinct();
  }

  inline constexpr std::size_t kDefaultCongruenceCap = 10000;

  // Con(A) with its order and operation tables. Members are sorted by
  // decreasing number of blocks (then by labels), so index 0 is the identity
  // and the last index is the total relation.
  class ConLattice {
   public:
    // Join-closure of `generators`. Every congruence of a finite algebra is a
    // join of principal ones, so passing Princ(A) yields all of Con(A).
    static ConLattice generate(UnaryAlgebra const&     a,
                               std::vector<Congruence> generators,
                               std::size_t cap = kDefaultCongruenceCap) {
      std::size_t const n = a.size();
      generators.push_back(Congruence::identity(n));
      std::sort(generators.begin(), generators.end());
      generators.erase(std::unique(generators.begin(), generators.end()),
                       generators.end());

      std::vector<Congruence>           members = std::move(generators);
      std::map<Congruence, std::size_t> index;
      for (std::size_t i = 0; i < members.size(); ++i) {
        index.emplace(members[i], i);
      }
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> joins;
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          Congruence jn            = chainrep::join(a, members[i], members[j]);
          auto [it, fresh]         = index.try_emplace(jn, members.size());
          joins[{i, j}]            = it->second;
          if (fresh) {
            if (members.size() == cap) {
              throw LimitExceeded("congruence lattice has more than "
                                  + std::to_string(cap) + " members");
            }
            members.push_back(std::move(jn));
          }
        }
      }

      // Reorder canonically and remap the join results.
      std::vector<std::size_t> order(members.size());
      for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
      }
      std::vector<std::size_t> blocks(members.size());
      for (std::size_t i = 0; i < members.size(); ++i) {
        blocks[i] = members[i].block_count();
      }
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (blocks[x] != blocks[y]) {
          return blocks[x] > blocks[y];
        }
        return members[x] < members[y];
      });
      std::vector<std::size_t> rank(members.size());
      for (std::size_t i = 0; i < order.size(); ++i) {
        rank[order[i]] = i;
      }

      ConLattice l;
      std::size_t const k = members.size();
      l.members_.reserve(k);
      for (auto i : order) {
        l.members_.push_back(members[i]);
      }
      for (std::size_t i = 0; i < k; ++i) {
        l.index_.emplace(l.members_[i], i);
      }
      l.join_.assign(k * k, 0);
      l.meet_.assign(k * k, 0);
      l.leq_.assign(k * k, 0);
      for (std::size_t i = 0; i < k; ++i) {
        l.join_[rank[i] * k + rank[i]] = rank[i];
      }
      for (auto const& [ij, r] : joins) {
        auto const [i, j]              = ij;
        l.join_[rank[i] * k + rank[j]] = rank[r];
        l.join_[rank[j] * k + rank[i]] = rank[r];
      }
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          l.leq_[i * k + j] = l.members_[i].refines(l.members_[j]);
          if (j < i) {
            continue;
          }
          auto const m  = chainrep::meet(l.members_[i], l.members_[j]);
          auto const it = l.index_.find(m);
          if (it == l.index_.end()) {
            throw Error("congruence lattice is not closed under meets");
          }
          l.meet_[i * k + j] = l.meet_[j * k + i] = it->second;
        }
      }
      l.lower_covers_.assign(k, {});
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          if (i == j || !l.leq_[j * k + i]) {
            continue;
          }
          bool between = false;
          for (std::size_t z = 0; z < k && !between; ++z) {
            between = z != i && z != j && l.leq_[j * k + z] && l.leq_[z * k + i];
          }
          if (!between) {
            l.lower_covers_[i].push_back(j);
          }
        }
      }
      return l;
    }

    std::size_t       size() const noexcept { return members_.size(); }
    Congruence const& at(std::size_t i) const { return members_.at(i); }
    std::vector<Congruence> const& members() const noexcept {
      return members_;
    }
    std::optional<std::size_t> index_of(Congruence const& c) const {
      auto it = index_.find(c);
      if (it == index_.end()) {
        return std::nullopt;
      }
      return it->second;
    }
    bool leq(std::size_t i, std::size_t j) const {
      return leq_[i * size() + j] != 0;
    }
    std::size_t join(std::size_t i, std::size_t j) const {
      return join_[i * size() + j];
    }
    std::size_t meet(std::size_t i, std::size_t j) const {
      return meet_[i * size() + j];
    }
    std::size_t bottom() const noexcept { return 0; }
    std::size_t top() const noexcept { return size() - 1; }
    std::vector<std::size_t> const& lower_covers(std::size_t i) const {
      return lower_covers_.at(i);
    }
    bool is_join_irreducible(std::size_t i) const {
      return lower_covers_.at(i).size() == 1;
    }
    // Hasse edges (lower, upper), lexicographic.
    std::vector<std::pair<std::size_t, std::size_t>> covers() const {
      std::vector<std::pair<std::size_t, std::size_t>> r;
      for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j : lower_covers_[i]) {
          r.emplace_back(j, i);
        }
      }
      std::sort(r.begin(), r.end());
      return r;
    }

   private:
    ConLattice() = default;

    std::vector<Congruence>               members_;
    std::map<Congruence, std::size_t>     index_;
    std::vector<std::size_t>              join_;
    std::vector<std::size_t>              meet_;
    std::vector<std::uint8_t>             leq_;
    std::vector<std::vector<std::size_t>> lower_covers_;
  };

  inline ConLattice con_lattice(UnaryAlgebra const& a,
                                std::size_t         cap = kDefaultCongruenceCap) {
    return ConLattice::generate(a, princ_set(a), cap);
  }

  // phi(x) relates u and v iff every edge between them has color <= x. Its
  // blocks are the maximal runs of such edges.
  inline Congruence phi(ColoredChain const& ch, Element x) {
    auto const& d = ch.lattice();
    d.check_element(x);
    std::vector<Element> labels(ch.size(), 0);
    for (std::size_t i = 0; i < ch.edges(); ++i) {
      labels[i + 1] = d.leq(ch.color(i), x) ? labels[i] : i + 1;
    }
    return Congruence(std::move(labels));
  }

  // Join of the colors of the edges that theta collapses.
  inline Element psi(ColoredChain const& ch, Congruence const& theta) {
    if (theta.size() != ch.size()) {
      throw std::invalid_argument("psi: congruence is not on the chain");
    }
    auto const& d = ch.lattice();
    Element     x = d.bottom();
    for (std::size_t i = 0; i < ch.edges(); ++i) {
      if (theta.same(i, i + 1)) {
        x = d.join(x, ch.color(i));
      }
    }
    return x;
  }

  struct CheckOutcome {
    bool        ran    = false;
    bool        passed = false;
    std::string witness;  // first counterexample, empty when passed
  };

  struct RepresentationReport {
    static constexpr std::array<char const*, 6> kCheckNames{
        "carrier_size",     // |A| = |C|
        "phi_isomorphism",  // phi: D -> Con(A) is an order isomorphism
        "phi_psi_inverse",  // psi o phi = id, phi o psi = id
        "edge_colors",      // color(p) = psi(con(0_p, 1_p))
        "covering_joins",   // con(w,z) = join of con(t_i, t_i+1)
        "principal_image",  // phi(Q) = Princ(A)
    };

    std::array<CheckOutcome, 6> checks;
    std::size_t                 carrier_size    = 0;
    std::size_t                 chain_size      = 0;
    std::size_t                 con_size        = 0;
    std::size_t                 principal_count = 0;

    bool passed() const {
      return std::all_of(checks.begin(), checks.end(),
                         [](auto const& c) { return c.ran && c.passed; });
    }
    std::optional<std::size_t> first_failure() const {
      for (std::size_t i = 0; i < checks.size(); ++i) {
        if (!checks[i].passed) {
          return i;
        }
      }
      return std::nullopt;
    }
  };

  // Checks that A (built from ch over D) represents Q: Con(A) is isomorphic
  // to D via phi with inverse psi, and phi carries Q onto Princ(A). Throws
  // std::invalid_argument if A's operation tags are not those synthesize(ch)
  // would produce, or ch is not over D; differing maps are reported.
  inline RepresentationReport verify_representation(DistLattice const&  d,
                                                    std::span<Element const> q,
                                                    ColoredChain const& ch,
                                                    UnaryAlgebra const& a) {
    if (!(ch.lattice() == d)) {
      throw std::invalid_argument("chain is not colored by this lattice");
    }
    auto const subset = normalize_subset(d, q);

    RepresentationReport report;
    report.carrier_size = a.size();
    report.chain_size   = ch.size();
    auto& [size_ok, iso, inverse, colors, covering, principal] = report.checks;

    size_ok.ran    = true;
    size_ok.passed = a.size() == ch.size();
    if (!size_ok.passed) {
      size_ok.witness = "|A| = " + std::to_string(a.size()) + " but |C| = "
                        + std::to_string(ch.size());
      return report;
    }
    {
      auto const expected = synthesize(ch);
      bool       same     = expected.ops().size() == a.ops().size();
      for (std::size_t i = 0; same && i < a.ops().size(); ++i) {
        same = expected.ops()[i].tag == a.ops()[i].tag;
      }
      if (!same) {
        throw std::invalid_argument(
            "algebra was not synthesized from this chain");
      }
    }

    std::size_t const n   = a.size();
    PrincipalTable const table(a);
    auto const           princ = table.distinct();
    ConLattice const     con   = ConLattice::generate(a, princ);
    report.con_size            = con.size();
    report.principal_count     = princ.size();

    // (2) phi is an order isomorphism onto Con(A).
    iso.ran = true;
    std::vector<std::size_t> phi_index(d.size());
    std::vector<Congruence>  phis(d.size());
    bool                     all_in = true;
    for (Element x = 0; x < d.size() && all_in; ++x) {
      phis[x] = phi(ch, x);
      auto idx = con.index_of(phis[x]);
      if (!idx) {
        all_in = false;
        auto why = respect_violation(phis[x], a);
        iso.witness = "phi(" + d.name(x) + ") is not a congruence"
                      + (why ? ": " + *why : std::string());
        break;
      }
      phi_index[x] = *idx;
    }
    if (all_in) {
      iso.passed = true;
      for (Element x = 0; x < d.size() && iso.passed; ++x) {
        for (Element y = 0; y < d.size() && iso.passed; ++y) {
          if (x != y && phi_index[x] == phi_index[y]) {
            iso.passed  = false;
            iso.witness = "phi(" + d.name(x) + ") = phi(" + d.name(y) + ")";
          } else if (d.leq(x, y) != con.leq(phi_index[x], phi_index[y])) {
            iso.passed  = false;
            iso.witness = "order not preserved between " + d.name(x) + " and "
                          + d.name(y);
          }
        }
      }
      if (iso.passed && con.size() != d.size()) {
        iso.passed  = false;
        iso.witness = "|Con(A)| = " + std::to_string(con.size())
                      + " but |D| = " + std::to_string(d.size());
      }
    }

    // (3) psi inverts phi on both sides.
    inverse.ran    = true;
    inverse.passed = true;
    for (Element x = 0; x < d.size() && inverse.passed; ++x) {
      if (psi(ch, phi(ch, x)) != x) {
        inverse.passed  = false;
        inverse.witness = "psi(phi(" + d.name(x) + ")) != " + d.name(x);
      }
    }
    for (std::size_t i = 0; i < con.size() && inverse.passed; ++i) {
      if (phi(ch, psi(ch, con.at(i))) != con.at(i)) {
        inverse.passed  = false;
        inverse.witness = "phi(psi(theta_" + std::to_string(i)
                          + ")) != theta_" + std::to_string(i);
      }
    }

    // (4) each edge color is recovered from the congruence it generates.
    colors.ran    = true;
    colors.passed = true;
    for (std::size_t p = 0; p < ch.edges() && colors.passed; ++p) {
      Element const got = psi(ch, table(p, p + 1));
      if (got != ch.color(p)) {
        colors.passed  = false;
        colors.witness = "edge " + std::to_string(p) + ": color "
                         + d.name(ch.color(p)) + ", psi(con) = "
                         + d.name(got);
      }
    }

    // (5) con(w, z) is the join of the covering steps between w and z.
    covering.ran    = true;
    covering.passed = true;
    for (Element w = 0; w < n && covering.passed; ++w) {
      if (w + 1 >= n) {
        break;
      }
      Congruence acc = table(w, w + 1);
      for (Element z = w + 2; z < n && covering.passed; ++z) {
        acc = join(a, acc, table(z - 1, z));
        if (acc != table(w, z)) {
          covering.passed  = false;
          covering.witness = "con(" + std::to_string(w) + ","
                             + std::to_string(z)
                             + ") differs from the join of its covering steps";
        }
      }
    }

    // (6) phi(Q) = Princ(A).
    principal.ran = true;
    std::vector<Congruence> image;
    for (Element x : subset) {
      image.push_back(phi(ch, x));
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    principal.passed = image == princ;
    if (!principal.passed) {
      for (Element x : subset) {
        if (!std::binary_search(princ.begin(), princ.end(), phi(ch, x))) {
          principal.witness = "phi(" + d.name(x) + ") is not principal";
          break;
        }
      }
      if (principal.witness.empty()) {
        for (auto const& c : princ) {
          if (!std::binary_search(image.begin(), image.end(), c)) {
            principal.witness
                = "principal congruence " + std::to_string(psi(ch, c))
                  + " (as psi-image) is outside phi(Q)";
            break;
          }
        }
      }
    }
    return report;
  }

  // A path u = w_0, ..., w_k = v in which every con(w_i, w_i+1) is
  // join-irreducible in Con(A); breadth-first, so shortest.
  inline std::vector<Element> ji_path(PrincipalTable const& table,
                                      ConLattice const&     con,
                                      Element               u,
                                      Element               v) {
    std::size_t const n = table.size();
    if (u >= n || v >= n) {
      throw std::out_of_range("ji_path: element outside the carrier");
    }
    if (u == v) {
      throw std::invalid_argument("ji_path: endpoints must differ");
    }
    std::vector<char> ji_edge(n * n, 0);
    for (Element x = 0; x < n; ++x) {
      for (Element y = x + 1; y < n; ++y) {
        auto idx = con.index_of(table(x, y));
        if (!idx) {
          throw std::invalid_argument("ji_path: Con(A) does not match A");
        }
        ji_edge[x * n + y] = ji_edge[y * n + x] = con.is_join_irreducible(*idx);
      }
    }
    constexpr Element    none = static_cast<Element>(-1);
    std::vector<Element> prev(n, none);
    std::vector<Element> queue{u};
    prev[u] = u;
    for (std::size_t head = 0; head < queue.size() && prev[v] == none;
         ++head) {
      Element const x = queue[head];
      for (Element y = 0; y < n; ++y) {
        if (prev[y] == none && ji_edge[x * n + y]) {
          prev[y] = x;
          queue.push_back(y);
        }
      }
    }
    if (prev[v] == none) {
      throw NotFound("no path of join-irreducible principal congruences from "
                     + std::to_string(u) + " to " + std::to_string(v));
    }
    std::vector<Element> path{v};
    while (path.back() != u) {
      path.push_back(prev[path.back()]);
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

  inline std::vector<Element> ji_path(UnaryAlgebra const& a,
                                      ConLattice const&   con,
                                      Element             u,
                                      Element             v) {
    return ji_path(PrincipalTable(a), con, u, v);
  }

}  // namespace chainrep
