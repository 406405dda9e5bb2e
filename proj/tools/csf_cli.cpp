// csf: chromatic symmetric functions in the elementary basis.
//
//   csf compute   --graph g.txt | --chain C4+C3 | --cycle 6 | --clique k | --path k
//   csf formula   --cycle a | --cycle-piece a i | --b a k | --b-piece a k i | --two-cycles a b | --chain spec
//   csf verify    <source> --against forest-triples|formula:cycle|formula:two-cycles|formula:chain
//   csf audit     --cycle a | --cycle-tree a k [--shape path|star] | --chain spec | --graph g.txt
//   csf enumerate <source>
//
// Exit codes: 0 ok, 1 not equal / not e-positive / audit failed, 2 usage,
// 3 resource cap, 4 internal error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csf/algebra.hpp"
#include "csf/errors.hpp"
#include "csf/formulas.hpp"
#include "csf/forest_triples.hpp"
#include "csf/graph.hpp"
#include "csf/involutions.hpp"
#include "csf/json.hpp"
#include "csf/oracle.hpp"

namespace {

using namespace csf;

enum ExitCode { ok = 0, negative = 1, usage = 2, resource = 3, internal = 4 };

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  bool pretty = false;
  int max_n = default_oracle_cap;
  std::size_t max_triples = default_max_triples;
  int threads = 1;
};

/// Mutually exclusive graph sources shared by several subcommands.
struct GraphSource {
  std::string graph_file;
  std::string chain;
  int cycle = 0;
  int clique = 0;
  int path = 0;

  void add_to(CLI::App* cmd) {
    auto* group = cmd->add_option_group("source", "graph to operate on");
    group->add_option("--graph", graph_file, "graph text file (n <count> / e <u> <v>)")->check(CLI::ExistingFile);
    group->add_option("--chain", chain, "chain spec such as C4+C3+K5");
    group->add_option("--cycle", cycle, "cycle C_a")->check(CLI::PositiveNumber);
    group->add_option("--clique", clique, "clique K_k")->check(CLI::PositiveNumber);
    group->add_option("--path", path, "path P_k")->check(CLI::PositiveNumber);
    group->require_option(1);
  }

  [[nodiscard]] std::optional<ChainSpec> chain_spec() const {
    if (!chain.empty()) return parse_chain_spec(chain);
    if (cycle) return ChainSpec{{SegmentKind::cycle, cycle}};
    if (clique) return ChainSpec{{SegmentKind::clique, clique}};
    return std::nullopt;
  }

  [[nodiscard]] LabeledGraph load() const {
    if (!graph_file.empty()) {
      std::ifstream in(graph_file);
      if (!in) throw usage_error("cannot open " + graph_file);
      return parse_graph_text(in);
    }
    if (path) return path_graph(path);
    return chain_graph(*chain_spec());
  }
};

void emit(const Json& j) { std::cout << j.dump() << '\n'; }

void emit_expansion(const ESym& x, int degree, const GlobalOptions& opt, Json extra = Json::object()) {
  Json j = expansion_to_json(x, degree);
  for (auto& [key, value] : extra.items()) j[key] = value;
  if (opt.pretty) j["pretty"] = x.to_string();
  emit(j);
}

void check_vertex_cap(const LabeledGraph& g, const GlobalOptions& opt) {
  if (g.vertex_count() > opt.max_n)
    throw resource_error(std::to_string(g.vertex_count()) + " vertices exceeds --max-n " + std::to_string(opt.max_n));
}

// ---------------------------------------------------------------------------

struct ComputeCmd {
  GraphSource source;
  std::string method = "forest-triples";
  int piece = 0;
  bool require_positive = false;

  int run(const GlobalOptions& opt) const {
    LabeledGraph g = source.load();
    check_vertex_cap(g, opt);
    ESym x;
    if (piece) {
      if (method == "literal") {
        x = csf_i_literal(g, piece);
      } else if (method == "forest-triples") {
        x = csf_i(g, piece);
      } else {
        throw usage_error("--piece is only available with --method forest-triples or literal");
      }
      emit_expansion(x, g.vertex_count() - piece, opt, Json{{"piece", piece}});
    } else {
      if (method == "forest-triples") {
        x = csf_forest_triples(g);
      } else if (method == "literal") {
        if (count_forest_triples(g) > opt.max_triples) throw resource_error("forest triples exceed --max-triples");
        x = csf_forest_triples_literal(g);
      } else if (method == "oracle") {
        x = csf_oracle_e(g, opt.max_n);
      } else {
        throw usage_error("unknown --method " + method);
      }
      emit_expansion(x, g.vertex_count(), opt);
    }
    return require_positive && !x.is_nonnegative() ? negative : ok;
  }
};

struct FormulaCmd {
  int cycle = 0;
  std::vector<int> cycle_piece, b, b_piece, two_cycles;
  std::string chain;
  bool require_positive = false;

  void add_to(CLI::App* cmd) {
    auto* group = cmd->add_option_group("formula", "closed form to evaluate");
    group->add_option("--cycle", cycle, "X of the cycle C_a");
    group->add_option("--cycle-piece", cycle_piece, "X^(i) of C_a: a i")->expected(2);
    group->add_option("--b", b, "attachment factor B_{a,k}: a k")->expected(2);
    group->add_option("--b-piece", b_piece, "B^(i)_{a,k}: a k i")->expected(3);
    group->add_option("--two-cycles", two_cycles, "X of C_a + C_b: a b")->expected(2);
    group->add_option("--chain", chain, "adjacent cycle/clique chain, e.g. C2+C4+C3");
    group->require_option(1);
    cmd->add_flag("--require-positive", require_positive, "exit 1 if any coefficient is negative");
  }

  int run(const GlobalOptions& opt) const {
    ESym x;
    int degree = 0;
    if (cycle) {
      x = cycle_csf(cycle);
      degree = cycle;
    } else if (!cycle_piece.empty()) {
      x = cycle_csf_i(cycle_piece[0], cycle_piece[1]);
      degree = cycle_piece[0] - cycle_piece[1];
    } else if (!b.empty()) {
      x = b_formula(b[0], b[1]);
      degree = b[0] + b[1] - 1;
    } else if (!b_piece.empty()) {
      x = b_i_formula(b_piece[0], b_piece[1], b_piece[2]);
      degree = b_piece[0] + b_piece[1] - 1 - b_piece[2];
    } else if (!two_cycles.empty()) {
      x = two_cycle_csf(two_cycles[0], two_cycles[1]);
      degree = two_cycles[0] + two_cycles[1] - 1;
    } else {
      ChainSpec spec = parse_chain_spec(chain);
      x = chain_csf(spec, opt.max_n);
      degree = chain_vertex_count(spec);
    }
    emit_expansion(x, degree, opt);
    return require_positive && !x.is_nonnegative() ? negative : ok;
  }
};

struct VerifyCmd {
  GraphSource source;
  std::string against = "forest-triples";

  int run(const GlobalOptions& opt) const {
    LabeledGraph g = source.load();
    check_vertex_cap(g, opt);
    ESym x;
    if (against == "forest-triples") {
      x = csf_forest_triples(g);
    } else if (against.rfind("formula:", 0) == 0) {
      const std::string name = against.substr(8);
      std::optional<ChainSpec> spec = source.chain_spec();
      if (!spec) throw usage_error("formula checks need --chain, --cycle or --clique");
      if (name == "cycle") {
        if (spec->size() != 1 || (*spec)[0].kind != SegmentKind::cycle) throw usage_error("formula:cycle needs a single cycle");
        x = cycle_csf((*spec)[0].size);
      } else if (name == "two-cycles") {
        if (spec->size() != 2 || (*spec)[0].kind != SegmentKind::cycle || (*spec)[1].kind != SegmentKind::cycle)
          throw usage_error("formula:two-cycles needs a chain of two cycles");
        x = two_cycle_csf((*spec)[0].size, (*spec)[1].size);
      } else if (name == "chain") {
        x = chain_csf(*spec, opt.max_n);
      } else {
        throw usage_error("unknown formula '" + name + "'");
      }
    } else {
      throw usage_error("--against must be forest-triples or formula:<name>");
    }
    const bool equal = check_equal(x, g, opt.max_n);
    emit(Json{{"equal", equal}});
    return equal ? ok : negative;
  }
};

struct AuditCmd {
  int cycle = 0;
  std::vector<int> cycle_tree;
  std::string shape = "path";
  std::string chain;
  std::string graph_file;

  void add_to(CLI::App* cmd) {
    auto* group = cmd->add_option_group("target", "involution to audit");
    group->add_option("--cycle", cycle, "cycle involution on FT(C_a)");
    group->add_option("--cycle-tree", cycle_tree, "cycle+tree involution on FT'(C_a + U_k): a k")->expected(2);
    group->add_option("--chain", chain, "composed involution on a two-segment chain C_a + G'");
    group->add_option("--graph", graph_file, "tabulated first-preserving involution on FT(G)")->check(CLI::ExistingFile);
    group->require_option(1);
    cmd->add_option("--shape", shape, "shape of U_k for --cycle-tree")->check(CLI::IsMember({"path", "star"}));
  }

  static Involution inner_for(const LabeledGraph& g, const ChainSegment& seg, std::size_t max_triples) {
    if (seg.kind == SegmentKind::cycle && seg.size >= 2) return make_cycle_involution(seg.size);
    auto tab = make_tabulated_involution(enumerate_forest_triples(g, max_triples));
    if (!tab) throw domain_error("no first-preserving pairing exists for " + segment_name(seg));
    return *tab;
  }

  static std::string segment_name(const ChainSegment& seg) {
    return (seg.kind == SegmentKind::cycle ? "C" : "K") + std::to_string(seg.size);
  }

  int run(const GlobalOptions& opt) const {
    std::vector<ForestTriple> domain;
    Involution phi;
    std::string name;
    if (cycle) {
      domain = enumerate_forest_triples(cycle_graph(cycle), opt.max_triples);
      phi = make_cycle_involution(cycle);
      name = "cycle";
    } else if (!cycle_tree.empty()) {
      LabeledGraph u = shape == "star" ? star_graph(cycle_tree[1]) : path_graph(cycle_tree[1]);
      domain = ft_prime_members(cycle_tree[0], u, std::nullopt, opt.max_triples);
      phi = make_cycle_tree_involution(cycle_tree[0], u);
      name = "cycle-tree";
    } else if (!chain.empty()) {
      ChainSpec spec = parse_chain_spec(chain);
      if (spec.size() != 2 || spec[0].kind != SegmentKind::cycle)
        throw usage_error("--chain for audit must be C_a followed by one more segment");
      LabeledGraph inner = segment_graph(spec[1]);
      domain = enumerate_forest_triples(chain_graph(spec), opt.max_triples);
      phi = make_composed_involution(spec[0].size, inner, inner_for(inner, spec[1], opt.max_triples));
      name = "composed";
    } else {
      std::ifstream in(graph_file);
      if (!in) throw usage_error("cannot open " + graph_file);
      LabeledGraph g = parse_graph_text(in);
      domain = enumerate_forest_triples(g, opt.max_triples);
      auto tab = make_tabulated_involution(domain);
      if (!tab) {
        emit(Json{{"involution", "tabulated"}, {"domain_size", domain.size()}, {"exists", false}});
        return negative;
      }
      phi = *tab;
      name = "tabulated";
    }
    InvolutionAuditReport rep = audit_involution(domain, phi, true);
    Json j{{"involution", name}};
    const Json body = audit_to_json(rep);
    for (auto& [key, value] : body.items()) j[key] = value;
    emit(j);
    return rep.ok() ? ok : negative;
  }
};

struct EnumerateCmd {
  GraphSource source;

  int run(const GlobalOptions& opt) const {
    LabeledGraph g = source.load();
    Json j;
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["broken_circuits"] = broken_circuits(g).size();
    j["nbc_forests"] = enumerate_nbc_forests(g).size();
    j["forest_triples"] = integer_to_json(count_forest_triples(g));
    emit(j);
    return ok;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chromatic symmetric functions in the elementary basis"};
  app.require_subcommand(1);
  GlobalOptions opt;
  app.add_flag("--pretty", opt.pretty, "add a human-readable \"pretty\" field");
  app.add_option("--max-n", opt.max_n, "vertex cap for enumeration and the coloring oracle")
      ->check(CLI::Range(1, max_mask_bits));
  app.add_option("--max-triples", opt.max_triples, "cap on materialized forest triples");
  app.add_option("--threads", opt.threads, "worker cap")->check(CLI::PositiveNumber);

  ComputeCmd compute;
  auto* c = app.add_subcommand("compute", "e-expansion of X_G");
  compute.source.add_to(c);
  c->add_option("--method", compute.method, "forest-triples, literal or oracle")
      ->check(CLI::IsMember({"forest-triples", "literal", "oracle"}));
  c->add_option("--piece", compute.piece, "output X^(i) instead of X")->check(CLI::PositiveNumber);
  c->add_flag("--require-positive", compute.require_positive, "exit 1 if any coefficient is negative");

  FormulaCmd formula;
  formula.add_to(app.add_subcommand("formula", "evaluate a closed-form expansion"));

  VerifyCmd verify;
  auto* v = app.add_subcommand("verify", "compare an expansion with the coloring oracle");
  verify.source.add_to(v);
  v->add_option("--against", verify.against, "forest-triples or formula:{cycle,two-cycles,chain}");

  AuditCmd audit;
  audit.add_to(app.add_subcommand("audit", "check involution axioms exhaustively"));

  EnumerateCmd enumerate;
  enumerate.source.add_to(app.add_subcommand("enumerate", "count NBC forests and forest triples"));

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (app.got_subcommand("compute")) return compute.run(opt);
    if (app.got_subcommand("formula")) return formula.run(opt);
    if (app.got_subcommand("verify")) return verify.run(opt);
    if (app.got_subcommand("audit")) return audit.run(opt);
    if (app.got_subcommand("enumerate")) return enumerate.run(opt);
  } catch (const usage_error& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return usage;
  } catch (const csf::domain_error& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return usage;
  } catch (const csf::resource_error& e) {
    std::cerr << "resource: " << e.what() << '\n';
    return resource;
  } catch (const std::exception& e) {
    std::cerr << "internal: " << e.what() << '\n';
    return internal;
  }
  return internal;
}
