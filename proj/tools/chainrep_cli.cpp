// chainrep: command-line front end.
//
// Exit codes: 0 success, 1 verification failure, 2 precondition or
// representability failure, 3 input error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chainrep/algebra.hpp"
#include "chainrep/colored_chain.hpp"
#include "chainrep/congruence.hpp"
#include "chainrep/corpus.hpp"
#include "chainrep/dist_lattice.hpp"
#include "chainrep/dot.hpp"
#include "chainrep/error.hpp"
#include "chainrep/io.hpp"
#include "chainrep/planar.hpp"

namespace fs = std::filesystem;
using namespace chainrep;

namespace {

  enum Exit : int { ok = 0, verify_failed = 1, precondition = 2, input = 3 };

  struct Options {
    std::string              path;
    std::string              q;
    std::string              format = "text";
    std::string              out;
    std::string              chain_path;
    std::string              algebra_path;
    std::size_t              max_edges = 8;
    std::size_t              max_ji    = kDefaultCorpusCap;
    std::uint64_t            seed      = 1;
    std::size_t              jobs      = 1;
    std::optional<std::size_t> from;
    std::optional<std::size_t> to;
    bool                     verbose = false;
  };

  // Any failure while loading is an input error naming the file.
  template <class F>
  auto load(std::string const& path, F&& f) {
    json const j = read_json_file(path);
    try {
      return f(j);
    } catch (InputError const&) {
      throw;
    } catch (std::exception const& e) {
      throw InputError(path + ": " + e.what());
    }
  }

  LatticePtr load_lattice(std::string const& path) {
    return load(path, [&](json const& j) {
      return std::make_shared<DistLattice const>(lattice_from_json(j, path));
    });
  }

  ColoredChain load_chain(std::string const& path) {
    return load(path, [&](json const& j) {
      return chain_from_json(j, fs::path(path).parent_path(), path);
    });
  }

  UnaryAlgebra load_algebra(std::string const& path) {
    return load(path, [&](json const& j) { return algebra_from_json(j, path); });
  }

  // Comma-separated ids or element names, or @file for a subset document.
  // A numeric token is always an id, even where some name is numeric.
  std::vector<Element> parse_q(DistLattice const& d, std::string const& text) {
    if (!text.empty() && text[0] == '@') {
      auto const path = text.substr(1);
      auto const q    = load(path, [&](json const& j) {
        return subset_from_json(j, path);
      });
      for (Element x : q) {
        if (x >= d.size()) {
          throw InputError(path + ": element " + std::to_string(x)
                           + " is not in the lattice");
        }
      }
      return normalize_subset(d, q);
    }
    std::vector<Element> q;
    std::stringstream    in(text);
    std::string          tok;
    while (std::getline(in, tok, ',')) {
      tok.erase(0, tok.find_first_not_of(" \t"));
      tok.erase(tok.find_last_not_of(" \t") + 1);
      if (tok.empty()) {
        continue;
      }
      std::optional<Element> id;
      if (tok.find_first_not_of("0123456789") == std::string::npos) {
        id = std::stoul(tok);
      } else {
        for (Element x = 0; x < d.size(); ++x) {
          if (d.name(x) == tok) {
            id = x;
          }
        }
      }
      if (!id || *id >= d.size()) {
        throw InputError("--q: unknown element \"" + tok + "\"");
      }
      q.push_back(*id);
    }
    return normalize_subset(d, q);
  }

  std::string names(DistLattice const& d, std::vector<Element> const& xs) {
    std::string r = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      r += (i ? ", " : "") + d.name(xs[i]);
    }
    return r + "}";
  }

  json boundary_json(BoundaryAssignment const& ba) {
    return {{"left", ba.left}, {"right", ba.right}};
  }

  void emit(json const& j, std::string const& out) {
    if (out.empty()) {
      std::cout << j.dump(2) << '\n';
    } else {
      write_json_file(out, j);
    }
  }

  std::string chain_text(ColoredChain const& ch) {
    std::string r = "chain of " + std::to_string(ch.size()) + " elements: ";
    for (std::size_t i = 0; i < ch.edges(); ++i) {
      r += (i ? " " : "") + ch.lattice().name(ch.color(i));
    }
    return r + "\n";
  }

  void print_chain(ColoredChain const& ch, Options const& o) {
    if (o.format == "dot") {
      std::cout << to_dot(ch);
    } else if (o.format == "json" || !o.out.empty()) {
      emit(to_json(ch), o.out);
    } else {
      std::cout << chain_text(ch);
    }
  }

  // ------------------------------------------------------------ commands

  int lattice_check(Options const& o) {
    auto const  lp      = load_lattice(o.path);
    auto const& d       = *lp;
    bool const  planar  = is_planar(d);
    auto const  coatoms = coatom_report(d);
    auto const  verdict = representability_report(d);
    if (o.format == "dot") {
      std::cout << to_dot(d);
      return ok;
    }
    json j{{"size", d.size()},
           {"join_irreducibles", d.join_irreducibles()},
           {"planar", planar},
           {"coatoms", coatoms.coatoms},
           {"join_reducible_coatoms", coatoms.join_reducible},
           {"verdicts", to_json(verdict)}};
    if (o.verbose && planar) {
      j["boundary"] = boundary_json(boundary_assignment(d));
    }
    if (o.format == "json") {
      std::cout << j.dump(2) << '\n';
      return ok;
    }
    auto yes = [](bool b) { return b ? "true" : "false"; };
    std::cout << "size: " << d.size() << "\n"
              << "join-irreducibles: " << names(d, d.join_irreducibles())
              << "\n"
              << "planar: " << yes(planar) << "\n"
              << "coatoms: " << names(d, coatoms.coatoms) << "\n"
              << "join-reducible coatoms: "
              << names(d, coatoms.join_reducible) << "\n"
              << "fully_chain_rep: " << yes(verdict.fully_chain_rep) << "\n"
              << "fully_a_rep: " << yes(verdict.fully_a_rep) << "\n"
              << "fully_ae_cond: " << yes(verdict.fully_ae_cond) << "\n";
    if (o.verbose && planar) {
      auto const ba = boundary_assignment(d);
      std::cout << "left boundary: " << names(d, ba.left) << "\n"
                << "right boundary: " << names(d, ba.right) << "\n";
    }
    return ok;
  }

  int chain_build(Options const& o) {
    auto const lp = load_lattice(o.path);
    auto const q  = parse_q(*lp, o.q);
    BoundaryAssignment ba;  // unused when D is not planar
    if (is_planar(*lp)) {
      ba = boundary_assignment(*lp);
    }
    auto const ch = build_full_chain(lp, q, ba);
    if (o.verbose) {
      std::cerr << "boundary: " << boundary_json(ba).dump() << "\n";
    }
    print_chain(ch, o);
    return ok;
  }

  int chain_eval(Options const& o) {
    auto const ch = load_chain(o.path);
    auto const& d = ch.lattice();
    if (o.from || o.to) {
      std::size_t const i = o.from.value_or(0);
      std::size_t const j = o.to.value_or(ch.size() - 1);
      Element const     x = erep(ch, i, j);
      if (o.format == "json") {
        std::cout << json{{"i", i}, {"j", j}, {"erep", x}}.dump(2) << '\n';
      } else {
        std::cout << "erep[" << i << "," << j << "] = " << d.name(x) << "\n";
      }
      return ok;
    }
    auto const s = srep(ch);
    if (o.format == "json") {
      std::cout << subset_to_json(s).dump(2) << '\n';
    } else {
      std::cout << "srep = " << names(d, s) << "\n";
    }
    return ok;
  }

  int chain_search(Options const& o) {
    auto const lp = load_lattice(o.path);
    auto const q  = parse_q(*lp, o.q);
    auto const ch = bounded_chain_search(lp, q, o.max_edges);
    if (!ch) {
      std::cerr << "chain-search: no chain with at most " << o.max_edges
                << " edges represents " << names(*lp, q) << "\n";
      return precondition;
    }
    print_chain(*ch, o);
    return ok;
  }

  int algebra_synth(Options const& o) {
    auto const ch = load_chain(o.path);
    auto const a  = synthesize(ch);
    if (o.format == "text" && o.out.empty()) {
      std::cout << "carrier: " << a.size() << "\noperations: " << a.ops().size()
                << "\n";
      for (auto const& op : a.ops()) {
        std::cout << "  " << to_string(op.tag) << ":";
        for (Element y : op.map) {
          std::cout << ' ' << y;
        }
        std::cout << "\n";
      }
      return ok;
    }
    emit(to_json(a), o.out);
    return ok;
  }

  int algebra_analyze(Options const& o) {
    auto const a     = load_algebra(o.path);
    auto const con   = con_lattice(a);
    auto const princ = princ_set(a);
    if (o.format == "dot") {
      std::cout << to_dot(con);
      return ok;
    }
    if (o.format == "json") {
      json j = to_json(con);
      j["principal"] = json::array();
      for (auto const& c : princ) {
        j["principal"].push_back(*con.index_of(c));
      }
      std::cout << j.dump(2) << '\n';
      return ok;
    }
    std::size_t ji = 0;
    for (std::size_t i = 0; i < con.size(); ++i) {
      ji += con.is_join_irreducible(i);
    }
    std::cout << "carrier: " << a.size() << "\n"
              << "congruences: " << con.size() << "\n"
              << "principal: " << princ.size() << "\n"
              << "join-irreducible: " << ji << "\n";
    if (o.verbose) {
      for (std::size_t i = 0; i < con.size(); ++i) {
        std::cout << "  " << i << ": " << to_json(con.at(i))["blocks"].dump()
                  << (con.is_join_irreducible(i) ? " ji" : "") << "\n";
      }
    }
    return ok;
  }

  int verify(Options const& o) {
    auto const lp = load_lattice(o.path);
    auto const& d = *lp;
    auto const q  = parse_q(d, o.q);
    std::optional<ColoredChain> chain;
    std::optional<UnaryAlgebra> algebra;
    if (!o.chain_path.empty()) {
      chain = load_chain(o.chain_path);
    }
    if (!o.algebra_path.empty()) {
      algebra = load_algebra(o.algebra_path);
    }

    json        result{{"q", q}};
    std::string stage;
    auto fail = [&](std::string const& what, int code) {
      result["passed"]       = false;
      result["failed_stage"] = stage;
      result["error"]        = what;
      std::cerr << "verify: failed at " << stage << ": " << what << "\n";
      if (o.format == "json") {
        std::cout << result.dump(2) << '\n';
      }
      return code;
    };

    try {
      stage = "necessary_conditions";
      auto const nc = necessary_conditions(d, q);
      if (!nc.satisfied) {
        return fail(d.name(*nc.missing) + " is in J+(D) but not in Q",
                    precondition);
      }
      if (!chain) {
        stage = "build_full_chain";
        BoundaryAssignment ba;
        if (is_planar(d)) {
          ba = boundary_assignment(d);
          if (o.verbose) {
            result["boundary"] = boundary_json(ba);
          }
        }
        chain = build_full_chain(lp, q, ba);
      }
      if (!algebra) {
        stage   = "synthesize";
        algebra = synthesize(*chain);
      }
    } catch (PreconditionFailed const& e) {
      return fail(e.what(), precondition);
    }

    stage = "verify_representation";
    RepresentationReport report;
    try {
      report = verify_representation(d, q, *chain, *algebra);
    } catch (std::invalid_argument const& e) {
      return fail(e.what(), input);
    }
    result["chain_size"]   = chain->size();
    result["carrier_size"] = algebra->size();
    result["report"]       = to_json(report);
    result["passed"]       = report.passed();

    if (!o.out.empty()) {
      fs::create_directories(o.out);
      write_json_file(fs::path(o.out) / "chain.json", to_json(*chain));
      write_json_file(fs::path(o.out) / "algebra.json", to_json(*algebra));
      write_json_file(fs::path(o.out) / "report.json", result);
    }
    if (o.format == "json") {
      std::cout << result.dump(2) << '\n';
    } else {
      std::cout << chain_text(*chain) << "algebra: " << algebra->size()
                << " elements, " << algebra->ops().size() << " operations\n"
                << "Con(A): " << report.con_size
                << " congruences, Princ(A): " << report.principal_count
                << "\n";
      for (std::size_t i = 0; i < report.checks.size(); ++i) {
        auto const& c = report.checks[i];
        std::cout << (!c.ran ? "skip " : c.passed ? "ok   " : "FAIL ")
                  << RepresentationReport::kCheckNames[i];
        if (!c.witness.empty()) {
          std::cout << "  " << c.witness;
        }
        std::cout << "\n";
      }
    }
    if (!report.passed()) {
      stage = "verify_representation";
      std::cerr << "verify: failed at verify_representation: "
                << RepresentationReport::kCheckNames[*report.first_failure()]
                << "\n";
      return verify_failed;
    }
    return ok;
  }

  int corpus(Options const& o) {
    CorpusConfig config;
    config.max_ji = o.max_ji;
    config.seed   = o.seed;
    config.jobs   = o.jobs;
    auto const r  = run_corpus(config);
    if (o.format == "json" || !o.out.empty()) {
      emit(to_json(r), o.out);
    } else {
      std::cout << to_text(r);
    }
    return r.passed() ? ok : verify_failed;
  }

  // The kind is read off the document: "colors" marks a chain, "ops" an
  // algebra (drawn as its congruence lattice), "covers" a lattice.
  int export_dot(Options const& o) {
    json const j = read_json_file(o.path);
    if (j.is_object() && j.contains("colors")) {
      std::cout << to_dot(load_chain(o.path));
    } else if (j.is_object() && j.contains("ops")) {
      std::cout << to_dot(con_lattice(load_algebra(o.path)));
    } else if (j.is_object() && j.contains("covers")) {
      std::cout << to_dot(*load_lattice(o.path));
    } else {
      throw InputError(o.path + ": unknown object kind");
    }
    return ok;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chain representations of distributive lattices"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "dot", "text"}));
  };
  auto add_q = [&](CLI::App* sub) {
    sub->add_option("--q", o.q, "Subset Q: comma-separated ids or names, or @file")
        ->required();
  };

  auto* check = app.add_subcommand("lattice-check",
                                   "Planarity, coatoms and verdicts");
  check->add_option("lattice", o.path)->required();
  check->add_flag("--verbose,-v", o.verbose, "Show boundary chains");
  add_format(check);

  auto* build = app.add_subcommand("chain-build", "Build a chain for Q");
  build->add_option("lattice", o.path)->required();
  add_q(build);
  build->add_option("--out,-o", o.out, "Write chain JSON here");
  build->add_flag("--verbose,-v", o.verbose);
  add_format(build);

  auto* eval = app.add_subcommand("chain-eval", "srep of a chain, or erep");
  eval->add_option("chain", o.path)->required();
  eval->add_option("--i", o.from, "Interval start");
  eval->add_option("--j", o.to, "Interval end");
  add_format(eval);

  auto* search = app.add_subcommand("chain-search",
                                    "Bounded search for a chain representing Q");
  search->add_option("lattice", o.path)->required();
  add_q(search);
  search->add_option("--max-edges", o.max_edges)
      ->check(CLI::Range(std::size_t{0}, kDefaultSearchEdgeCap));
  search->add_option("--out,-o", o.out);
  add_format(search);

  auto* synth = app.add_subcommand("algebra-synth", "Algebra of a chain");
  synth->add_option("chain", o.path)->required();
  synth->add_option("--out,-o", o.out);
  add_format(synth);

  auto* analyze = app.add_subcommand("algebra-analyze",
                                     "Congruence lattice of an algebra");
  analyze->add_option("algebra", o.path)->required();
  analyze->add_flag("--verbose,-v", o.verbose);
  add_format(analyze);

  auto* ver = app.add_subcommand("verify", "Build, synthesize and verify");
  ver->add_option("lattice", o.path)->required();
  add_q(ver);
  ver->add_option("--chain", o.chain_path, "Use this chain instead");
  ver->add_option("--algebra", o.algebra_path, "Use this algebra instead");
  ver->add_option("--out,-o", o.out, "Directory for artifacts");
  ver->add_flag("--verbose,-v", o.verbose);
  add_format(ver);

  auto* corp = app.add_subcommand("corpus", "Run the property suites");
  corp->add_option("--max-ji", o.max_ji)->capture_default_str();
  corp->add_option("--seed", o.seed)->capture_default_str();
  corp->add_option("--jobs", o.jobs)->capture_default_str();
  corp->add_option("--out,-o", o.out);
  add_format(corp);

  auto* dot = app.add_subcommand("export-dot", "DOT for a lattice, chain or algebra");
  dot->add_option("object", o.path)->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e);
    return code == 0 ? ok : input;
  }

  try {
    if (*check) return lattice_check(o);
    if (*build) return chain_build(o);
    if (*eval) return chain_eval(o);
    if (*search) return chain_search(o);
    if (*synth) return algebra_synth(o);
    if (*analyze) return algebra_analyze(o);
    if (*ver) return verify(o);
    if (*corp) return corpus(o);
    if (*dot) return export_dot(o);
  } catch (PreconditionFailed const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return precondition;
  } catch (NotTwoChainCoverable const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return precondition;
  } catch (NotFound const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return precondition;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input;
  }
  return input;
}
