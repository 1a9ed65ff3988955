#pragma once

// Finite unary algebras, and the algebra built on the carrier of a colored
// chain from contraction and forcing operations.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chainrep/colored_chain.hpp"

namespace chainrep {

  // The prime interval [index, index + 1] of a chain.
  struct Edge {
    std::size_t index;

    Element bottom() const noexcept { return index; }
    Element top() const noexcept { return index + 1; }

    friend auto operator<=>(Edge const&, Edge const&) = default;
  };

  enum class OpKind : int { contraction = 0, forcing = 1, basic = 2 };

  // Contraction g_uv: a = u, b = v. Forcing f_ph: a = p, b = h (edge indices).
  // Basic: an untagged operation, a = its position, b = 0.
  struct OpTag {
    OpKind      kind;
    std::size_t a;
    std::size_t b;

    friend auto operator<=>(OpTag const&, OpTag const&) = default;
  };

  inline std::string to_string(OpTag const& t) {
    switch (t.kind) {
      case OpKind::contraction:
        return "g(" + std::to_string(t.a) + "," + std::to_string(t.b) + ")";
      case OpKind::forcing:
        return "f(" + std::to_string(t.a) + "," + std::to_string(t.b) + ")";
      case OpKind::basic: return "op" + std::to_string(t.a);
    }
    return "?";
  }

  using UnaryMap = std::vector<Element>;

  struct Operation {
    OpTag    tag;
    UnaryMap map;

    friend bool operator==(Operation const&, Operation const&) = default;
  };

  class UnaryAlgebra {
   public:
    UnaryAlgebra() = default;

    UnaryAlgebra(std::size_t size, std::vector<Operation> ops)
        : size_(size), ops_(std::move(ops)) {
      if (size_ == 0) {
        throw std::invalid_argument("algebra carrier must be nonempty");
      }
      for (auto const& op : ops_) {
        if (op.map.size() != size_) {
          throw std::invalid_argument("operation " + to_string(op.tag)
                                      + " is not total on the carrier");
        }
        for (Element y : op.map) {
          if (y >= size_) {
            throw std::invalid_argument("operation " + to_string(op.tag)
                                        + " leaves the carrier");
          }
        }
      }
      std::vector<OpTag> tags;
      for (auto const& op : ops_) {
        tags.push_back(op.tag);
      }
      std::sort(tags.begin(), tags.end());
      if (std::adjacent_find(tags.begin(), tags.end()) != tags.end()) {
        throw std::invalid_argument("duplicate operation tag");
      }
    }

    // Untagged operations, e.g. for randomly generated algebras.
    static UnaryAlgebra from_maps(std::size_t size, std::vector<UnaryMap> maps) {
      std::vector<Operation> ops;
      for (std::size_t i = 0; i < maps.size(); ++i) {
        ops.push_back({{OpKind::basic, i, 0}, std::move(maps[i])});
      }
      return UnaryAlgebra(size, std::move(ops));
    }

    std::size_t                   size() const noexcept { return size_; }
    std::vector<Operation> const& ops() const noexcept { return ops_; }

    friend bool operator==(UnaryAlgebra const&, UnaryAlgebra const&) = default;

   private:
    std::size_t            size_ = 0;
    std::vector<Operation> ops_;
  };

  // g_uv clamps the chain 0 < ... < n-1 into [u, v].
  inline UnaryMap contraction(std::size_t n, Element u, Element v) {
    if (u >= v) {
      throw std::invalid_argument("contraction needs u < v");
    }
    if (v >= n) {
      throw std::out_of_range("contraction bound outside the chain");
    }
    UnaryMap map(n);
    for (Element x = 0; x < n; ++x) {
      map[x] = std::clamp(x, u, v);
    }
    return map;
  }

  struct InteriorExterior {
    std::vector<Element> interior;
    std::vector<Element> exterior;
    Element              interior_target;
    Element              exterior_target;
  };

  // The interior set of edges p != h is the closed stretch of chain between
  // them; its target is the endpoint of h nearest to p, and the exterior
  // target is the other endpoint of h.
  inline InteriorExterior interior_exterior(std::size_t n, Edge p, Edge h) {
    if (p == h) {
      throw std::invalid_argument("interior set needs two distinct edges");
    }
    if (p.top() >= n || h.top() >= n) {
      throw std::out_of_range("edge outside the chain");
    }
    InteriorExterior r{};
    Element          lo, hi;
    if (p.top() <= h.bottom()) {
      lo                = p.top();
      hi                = h.bottom();
      r.interior_target = h.bottom();
      r.exterior_target = h.top();
    } else {
      lo                = h.top();
      hi                = p.bottom();
      r.interior_target = h.top();
      r.exterior_target = h.bottom();
    }
    for (Element x = 0; x < n; ++x) {
      (lo <= x && x <= hi ? r.interior : r.exterior).push_back(x);
    }
    return r;
  }

  // f_ph sends the interior set to the interior target and everything else
  // to the exterior target, so its image is {0_h, 1_h}.
  inline UnaryMap forcing(std::size_t n, Edge p, Edge h) {
    auto const ie = interior_exterior(n, p, h);
    UnaryMap   map(n, ie.exterior_target);
    for (Element x : ie.interior) {
      map[x] = ie.interior_target;
    }
    return map;
  }

  // The algebra on the chain's carrier with every contraction g_uv (u < v)
  // and every forcing f_ph with p != h and color(p) >= color(h) in D.
  // Operations come sorted by tag.
  inline UnaryAlgebra synthesize(ColoredChain const& ch) {
    std::size_t const      n = ch.size();
    auto const&            d = ch.lattice();
    std::vector<Operation> ops;
    for (Element u = 0; u < n; ++u) {
      for (Element v = u + 1; v < n; ++v) {
        ops.push_back({{OpKind::contraction, u, v}, contraction(n, u, v)});
      }
    }
    for (std::size_t p = 0; p < ch.edges(); ++p) {
      for (std::size_t h = 0; h < ch.edges(); ++h) {
        if (p != h && d.leq(ch.color(h), ch.color(p))) {
          ops.push_back({{OpKind::forcing, p, h}, forcing(n, {p}, {h})});
        }
      }
    }
    return UnaryAlgebra(n, std::move(ops));
  }

}  // namespace chainrep
