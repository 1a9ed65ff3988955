#pragma once

// JSON file formats.
//
//   poset       {"size": n, "covers": [[i, j], ...]}
//   lattice     {"size": N, "covers": [[i, j], ...], "names": [...]?}
//   subset      {"elements": [ids]}
//   chain       {"n": n, "colors": [ids], "lattice": <lattice> | "path"}
//   algebra     {"size": n, "ops": [{"tag": "g", "u", "v", "map"},
//                                   {"tag": "f", "p", "h", "map"},
//                                   {"tag": "op", "id", "map"}]}
//   congruence  {"blocks": [[ids], ...]}
//
// Loaders throw InputError for malformed documents, naming the offending
// field; semantic errors (not a lattice, not distributive, ...) propagate
// from the constructors.

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "chainrep/algebra.hpp"
#include "chainrep/colored_chain.hpp"
#include "chainrep/congruence.hpp"
#include "chainrep/dist_lattice.hpp"
#include "chainrep/error.hpp"
#include "chainrep/poset.hpp"

namespace chainrep {

  using json = nlohmann::json;

  class InputError : public Error {
   public:
    using Error::Error;
  };

  namespace detail {
    inline json const& field(json const& j, char const* key,
                             std::string const& where) {
      if (!j.is_object()) {
        throw InputError(where + ": expected an object");
      }
      auto it = j.find(key);
      if (it == j.end()) {
        throw InputError(where + ": missing field \"" + key + "\"");
      }
      return *it;
    }

    inline std::size_t as_index(json const& j, std::string const& where) {
      if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw InputError(where + ": expected a non-negative integer");
      }
      return j.get<std::size_t>();
    }

    inline std::vector<std::size_t> as_indices(json const&        j,
                                               std::string const& where) {
      if (!j.is_array()) {
        throw InputError(where + ": expected an array");
      }
      std::vector<std::size_t> r;
      for (std::size_t i = 0; i < j.size(); ++i) {
        r.push_back(as_index(j[i], where + "[" + std::to_string(i) + "]"));
      }
      return r;
    }

    inline std::vector<ElementPair> as_pairs(json const&        j,
                                             std::size_t        n,
                                             std::string const& where) {
      if (!j.is_array()) {
        throw InputError(where + ": expected an array of pairs");
      }
      std::vector<ElementPair> r;
      for (std::size_t i = 0; i < j.size(); ++i) {
        std::string const at = where + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2) {
          throw InputError(at + ": expected a pair [i, j]");
        }
        auto const x = as_index(j[i][0], at);
        auto const y = as_index(j[i][1], at);
        if (x >= n || y >= n) {
          throw InputError(at + ": index out of range for size "
                           + std::to_string(n));
        }
        r.emplace_back(x, y);
      }
      return r;
    }

    inline json pairs_to_json(std::vector<ElementPair> const& pairs) {
      json arr = json::array();
      for (auto [x, y] : pairs) {
        arr.push_back({x, y});
      }
      return arr;
    }
  }  // namespace detail

  inline json read_json_file(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InputError(path.string() + ": cannot open file");
    }
    try {
      return json::parse(in);
    } catch (json::parse_error const& e) {
      throw InputError(path.string() + ": parse error at byte "
                       + std::to_string(e.byte) + ": " + e.what());
    }
  }

  inline void write_json_file(std::filesystem::path const& path,
                              json const&                  j) {
    std::ofstream out(path);
    if (!out) {
      throw InputError(path.string() + ": cannot write file");
    }
    out << j.dump(2) << '\n';
  }

  // ---------------------------------------------------------------- poset

  inline json to_json(Poset const& p) {
    return {{"size", p.size()}, {"covers", detail::pairs_to_json(covers(p))}};
  }

  inline Poset poset_from_json(json const& j, std::string const& where = "poset") {
    auto const n = detail::as_index(detail::field(j, "size", where),
                                    where + ".size");
    auto const pairs = detail::as_pairs(detail::field(j, "covers", where), n,
                                        where + ".covers");
    try {
      return Poset::from_relations(n, pairs);
    } catch (std::invalid_argument const& e) {
      throw InputError(where + ": " + e.what());
    }
  }

  // -------------------------------------------------------------- lattice

  inline json to_json(DistLattice const& d) {
    json j{{"size", d.size()}, {"covers", detail::pairs_to_json(d.covers())}};
    if (!d.names().empty()) {
      j["names"] = d.names();
    }
    return j;
  }

  inline DistLattice lattice_from_json(json const&        j,
                                       std::string const& where = "lattice") {
    auto const n = detail::as_index(detail::field(j, "size", where),
                                    where + ".size");
    auto const pairs = detail::as_pairs(detail::field(j, "covers", where), n,
                                        where + ".covers");
    std::vector<std::string> names;
    if (auto it = j.find("names"); it != j.end()) {
      if (!it->is_array() || it->size() != n) {
        throw InputError(where + ".names: expected " + std::to_string(n)
                         + " strings");
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (!(*it)[i].is_string()) {
          throw InputError(where + ".names[" + std::to_string(i)
                           + "]: expected a string");
        }
        names.push_back((*it)[i].get<std::string>());
      }
    }
    try {
      return DistLattice::from_covers(n, pairs, std::move(names));
    } catch (std::invalid_argument const& e) {
      throw InputError(where + ": " + e.what());
    }
  }

  // --------------------------------------------------------------- subset

  inline json subset_to_json(std::vector<Element> const& q) {
    return {{"elements", q}};
  }

  inline std::vector<Element> subset_from_json(json const&        j,
                                               std::string const& where
                                               = "subset") {
    return detail::as_indices(detail::field(j, "elements", where),
                              where + ".elements");
  }

  // ---------------------------------------------------------------- chain

  inline json to_json(ColoredChain const& ch) {
    return {{"n", ch.size()},
            {"colors", ch.colors()},
            {"lattice", to_json(ch.lattice())}};
  }

  // A string "lattice" field is a path, resolved relative to `base_dir`.
  inline ColoredChain chain_from_json(json const&                  j,
                                      std::filesystem::path const& base_dir = {},
                                      std::string const& where = "chain") {
    auto const  n      = detail::as_index(detail::field(j, "n", where),
                                    where + ".n");
    auto const  colors = detail::as_indices(detail::field(j, "colors", where),
                                           where + ".colors");
    auto const& lj     = detail::field(j, "lattice", where);
    LatticePtr  lattice;
    if (lj.is_string()) {
      std::filesystem::path path = lj.get<std::string>();
      if (path.is_relative()) {
        path = base_dir / path;
      }
      lattice = std::make_shared<DistLattice const>(
          lattice_from_json(read_json_file(path), path.string()));
    } else {
      lattice = std::make_shared<DistLattice const>(
          lattice_from_json(lj, where + ".lattice"));
    }
    if (n != colors.size() + 1) {
      throw InputError(where + ": n = " + std::to_string(n) + " but "
                       + std::to_string(colors.size()) + " edge colors");
    }
    try {
      return ColoredChain(std::move(lattice), colors);
    } catch (std::exception const& e) {
      throw InputError(where + ": " + e.what());
    }
  }

  // -------------------------------------------------------------- algebra

  inline json to_json(UnaryAlgebra const& a) {
    json ops = json::array();
    for (auto const& op : a.ops()) {
      json o;
      switch (op.tag.kind) {
        case OpKind::contraction:
          o = {{"tag", "g"}, {"u", op.tag.a}, {"v", op.tag.b}};
          break;
        case OpKind::forcing:
          o = {{"tag", "f"}, {"p", op.tag.a}, {"h", op.tag.b}};
          break;
        case OpKind::basic: o = {{"tag", "op"}, {"id", op.tag.a}}; break;
      }
      o["map"] = op.map;
      ops.push_back(std::move(o));
    }
    return {{"size", a.size()}, {"ops", std::move(ops)}};
  }

  // Contraction and forcing maps must agree with their tags.
  inline UnaryAlgebra algebra_from_json(json const&        j,
                                        std::string const& where = "algebra") {
    auto const  n   = detail::as_index(detail::field(j, "size", where),
                                    where + ".size");
    auto const& ops = detail::field(j, "ops", where);
    if (!ops.is_array()) {
      throw InputError(where + ".ops: expected an array");
    }
    std::vector<Operation> result;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      std::string const at  = where + ".ops[" + std::to_string(i) + "]";
      auto const&       tag = detail::field(ops[i], "tag", at);
      auto const map = detail::as_indices(detail::field(ops[i], "map", at),
                                          at + ".map");
      Operation op;
      op.map = map;
      try {
        if (tag == "g") {
          op.tag = {OpKind::contraction,
                    detail::as_index(detail::field(ops[i], "u", at), at + ".u"),
                    detail::as_index(detail::field(ops[i], "v", at), at + ".v")};
          if (map != contraction(n, op.tag.a, op.tag.b)) {
            throw InputError(at + ": map does not match contraction tag");
          }
        } else if (tag == "f") {
          op.tag = {OpKind::forcing,
                    detail::as_index(detail::field(ops[i], "p", at), at + ".p"),
                    detail::as_index(detail::field(ops[i], "h", at), at + ".h")};
          if (map != forcing(n, {op.tag.a}, {op.tag.b})) {
            throw InputError(at + ": map does not match forcing tag");
          }
        } else if (tag == "op") {
          op.tag = {OpKind::basic,
                    detail::as_index(detail::field(ops[i], "id", at),
                                     at + ".id"),
                    0};
        } else {
          throw InputError(at + ".tag: unknown tag " + tag.dump());
        }
      } catch (InputError const&) {
        throw;
      } catch (std::exception const& e) {
        throw InputError(at + ": " + e.what());
      }
      result.push_back(std::move(op));
    }
    try {
      return UnaryAlgebra(n, std::move(result));
    } catch (std::invalid_argument const& e) {
      throw InputError(where + ": " + e.what());
    }
  }

  // ----------------------------------------------------------- congruence

  inline json to_json(Congruence const& c) {
    return {{"blocks", c.blocks()}};
  }

  inline Congruence congruence_from_json(json const& j, std::size_t n,
                                         std::string const& where
                                         = "congruence") {
    auto const& blocks = detail::field(j, "blocks", where);
    if (!blocks.is_array()) {
      throw InputError(where + ".blocks: expected an array");
    }
    std::vector<std::vector<Element>> bs;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      bs.push_back(detail::as_indices(
          blocks[i], where + ".blocks[" + std::to_string(i) + "]"));
    }
    try {
      return Congruence::from_blocks(n, bs);
    } catch (std::exception const& e) {
      throw InputError(where + ": " + e.what());
    }
  }

  inline json to_json(ConLattice const& con) {
    json members = json::array();
    for (auto const& c : con.members()) {
      members.push_back(to_json(c));
    }
    json ji = json::array();
    for (std::size_t i = 0; i < con.size(); ++i) {
      if (con.is_join_irreducible(i)) {
        ji.push_back(i);
      }
    }
    json covers = json::array();
    for (auto [x, y] : con.covers()) {
      covers.push_back({x, y});
    }
    return {{"size", con.size()},
            {"members", std::move(members)},
            {"covers", std::move(covers)},
            {"join_irreducible", std::move(ji)}};
  }

  // --------------------------------------------------------------- reports

  inline json to_json(RepresentationReport const& r) {
    json checks = json::object();
    for (std::size_t i = 0; i < r.checks.size(); ++i) {
      auto const& c = r.checks[i];
      json        o{{"ran", c.ran}, {"passed", c.passed}};
      if (!c.witness.empty()) {
        o["witness"] = c.witness;
      }
      checks[RepresentationReport::kCheckNames[i]] = std::move(o);
    }
    json j{{"passed", r.passed()},
           {"carrier_size", r.carrier_size},
           {"chain_size", r.chain_size},
           {"con_size", r.con_size},
           {"principal_count", r.principal_count},
           {"checks", std::move(checks)}};
    if (auto f = r.first_failure()) {
      j["first_failure"] = RepresentationReport::kCheckNames[*f];
    }
    return j;
  }

  inline json to_json(RepresentabilityReport const& r) {
    return {{"fully_chain_rep", r.fully_chain_rep},
            {"fully_a_rep", r.fully_a_rep},
            {"fully_ae_cond", r.fully_ae_cond}};
  }

}  // namespace chainrep
