#include "tropjac/cli.hpp"

#include "tropjac/covers.hpp"
#include "tropjac/divisor.hpp"
#include "tropjac/errors.hpp"
#include "tropjac/io.hpp"
#include "tropjac/jacobian.hpp"
#include "tropjac/prym.hpp"
#include "tropjac/theta.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

namespace tropjac::cli {

namespace {

struct Options {
  bool pretty = false;
  std::uint64_t seed = 1;
  std::string out_file;
  std::vector<std::string> files;
  std::string at;
  std::string cycle;
  std::string bits;
  std::string epsilon = "1";
  long degree = 0;
  int support = 4;
  int order = 2;
};

std::string cycle_text(const CycleZ2& c) {
  if (c.empty()) return "{}";
  std::string s;
  for (const auto& e : c.edges) s += (s.empty() ? "" : ",") + e;
  return s;
}

std::string bits_text(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s.empty() ? "-" : s;
}

std::vector<bool> parse_bits(const std::string& s) {
  std::vector<bool> out;
  for (char c : s) {
    if (c != '0' && c != '1') throw InvalidInput("--bits expects a string of 0s and 1s");
    out.push_back(c == '1');
  }
  return out;
}

CycleZ2 parse_cycle(const MetricGraph& g, const std::string& s) {
  CycleZ2 c;
  std::stringstream in(s);
  std::string id;
  while (std::getline(in, id, ','))
    if (!id.empty()) {
      if (!g.find_edge(id)) throw InvalidInput("--cycle names unknown edge " + id);
      c.edges.insert(id);
    }
  return c;
}

MetricGraph load_graph(const std::string& path) { return graph_from_json(read_json_file(path)); }

Divisor load_divisor(const MetricGraph& g, const std::string& path) {
  return normalize(g, divisor_from_json(read_json_file(path)));
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

Point base_point(const MetricGraph& g, const std::string& at) {
  if (at.empty()) return Point::vertex(g.vertices().front().id);
  if (!g.find_vertex(at)) throw InvalidInput("--at names unknown vertex " + at);
  return Point::vertex(at);
}

void cmd_validate(const Options& o, std::ostream& out) {
  MetricGraph g = graph_from_json(read_json_file(o.files.at(0)), false);
  auto issues = validate(g);
  Json j{{"valid", issues.empty()}, {"issues", issues}};
  if (issues.empty()) {
    auto gk = genus_and_canonical(g);
    j["genus"] = gk.genus;
    j["canonical"] = to_json(gk.canonical);
  }
  if (o.pretty) {
    out << "valid  " << (issues.empty() ? "true" : "false") << "\n";
    if (issues.empty()) out << "genus  " << j["genus"].get<int>() << "\n";
    for (const auto& s : issues) out << "issue  " << s << "\n";
    return;
  }
  emit_json(out, j);
}

void cmd_theta(const Options& o, std::ostream& out) {
  MetricGraph g = load_graph(o.files.at(0));
  Json records = Json::array();
  std::vector<std::array<std::string, 3>> rows;
  for (const auto& t : enumerate_theta(g)) {
    records.push_back({{"cycle", to_json(t.cycle)}, {"divisor", to_json(t.divisor)}, {"effective", t.effective}});
    rows.push_back({cycle_text(t.cycle), t.effective ? "yes" : "no", to_string(t.divisor)});
  }
  if (!o.pretty) return emit_json(out, records);
  std::size_t w = 5;
  for (const auto& r : rows) w = std::max(w, r[0].size());
  out << std::left << std::setw(static_cast<int>(w)) << "cycle" << "  effective  divisor\n";
  for (const auto& r : rows)
    out << std::left << std::setw(static_cast<int>(w)) << r[0] << "  " << std::setw(9) << r[1] << "  " << r[2]
        << "\n";
}

Divisor random_divisor(const MetricGraph& g, std::uint64_t seed, long degree, int support) {
  std::mt19937_64 rng(seed);
  Divisor d;
  long total = 0;
  for (int i = 0; i < support; ++i) {
    long c = static_cast<long>(rng() % 7) - 3;
    Point p;
    if (g.edges().empty() || rng() % 2 == 0) {
      p = Point::vertex(g.vertices()[rng() % g.vertices().size()].id);
    } else {
      const Edge& e = g.edges()[rng() % g.edges().size()];
      p = Point::on_edge(e.id, e.length * Rational(static_cast<long>(rng() % 5), 4));
      p = normalize(g, p);
    }
    d.add(p, c);
    total += c;
  }
  d.add(Point::vertex(g.vertices().front().id), degree - total);
  return d;
}

void cmd_divisor(const std::string& verb, const Options& o, std::ostream& out) {
  MetricGraph g = load_graph(o.files.at(0));
  if (verb == "random") return emit_json(out, to_json(random_divisor(g, o.seed, o.degree, o.support)));
  Divisor d = load_divisor(g, o.files.at(1));
  if (verb == "equiv") {
    out << (equivalent(g, d, load_divisor(g, o.files.at(2))) ? "true" : "false") << "\n";
  } else if (verb == "reduce") {
    Divisor r = reduce_at(g, d, base_point(g, o.at));
    if (o.pretty) out << to_string(r) << "\n";
    else emit_json(out, to_json(r));
  } else if (verb == "principal") {
    Principality p = is_principal(g, d);
    if (o.pretty) {
      out << (p.principal ? "true" : "false") << "\n";
      return;
    }
    Json j{{"principal", p.principal}};
    if (p.certificate) {
      const MetricGraph& rg = p.certificate->refinement.graph();
      Json values = Json::object();
      for (std::size_t v = 0; v < rg.vertices().size(); ++v)
        values[rg.vertices()[v].id] = to_string(p.certificate->value[v]);
      j["certificate"] = {{"graph", to_json(rg)}, {"values", values}};
    }
    emit_json(out, j);
  } else if (verb == "effective") {
    auto e = effective_representative(g, d);
    if (o.pretty) out << (e ? to_string(*e) : std::string("none")) << "\n";
    else emit_json(out, e ? to_json(*e) : Json(nullptr));
  }
}

void cmd_jac(const std::string& verb, const Options& o, std::ostream& out) {
  MetricGraph g = load_graph(o.files.at(0));
  if (g.is_augmented()) g = virtualize(g).graph;
  PeriodLattice lattice = period_lattice(g);
  if (verb == "lattice") {
    Json cycles = Json::array(), gram = Json::array();
    for (const auto& c : lattice.cycles.basis) {
      Json row = Json::object();
      for (std::size_t e = 0; e < c.coeff.size(); ++e)
        if (c.coeff[e]) row[g.edges()[e].id] = c.coeff[e];
      cycles.push_back(row);
    }
    for (std::size_t r = 0; r < lattice.gram.rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < lattice.gram.cols(); ++c) row.push_back(to_string(lattice.gram(r, c)));
      gram.push_back(row);
    }
    emit_json(out, {{"tree", lattice.cycles.forest.tree_edge_ids(g)}, {"cycles", cycles}, {"gram", gram}});
  } else if (verb == "aj") {
    Divisor d = load_divisor(g, o.files.at(1));
    auto image = abel_jacobi(g, lattice, d);
    emit_json(out, to_json(canonical(lattice, image.point.coords), g, lattice));
  } else if (verb == "torsion") {
    if (o.order < 2) throw PreconditionError("--order must be at least 2");
    Json pts = Json::array();
    for (const auto& p : torsion_points(lattice, o.order)) pts.push_back(to_json(p, g, lattice));
    emit_json(out, pts);
  }
}

void emit_covers(const Options& o, std::ostream& out, const std::vector<DoubleCover>& covers) {
  if (o.pretty) {
    for (const auto& c : covers) {
      auto r = verify_cover(c);
      out << "monodromy " << bits_text(monodromy(c)) << "  dilation " << cycle_text(r.dilation) << "  genus "
          << c.source.genus() << "  components " << c.source.component_count() << "\n";
    }
    return;
  }
  if (covers.size() == 1 && !o.bits.empty()) return emit_json(out, to_json(covers.front()));
  Json arr = Json::array();
  for (const auto& c : covers) arr.push_back(to_json(c));
  emit_json(out, arr);
}

void cmd_cover(const std::string& verb, const Options& o, std::ostream& out) {
  if (verb == "free" || verb == "dilated") {
    MetricGraph g = load_graph(o.files.at(0));
    std::vector<DoubleCover> covers;
    if (verb == "free") {
      if (o.bits.empty()) covers = free_covers(g);
      else covers.push_back(free_cover(g, parse_bits(o.bits)));
    } else {
      CycleZ2 c = parse_cycle(g, o.cycle);
      if (o.bits.empty()) covers = covers_with_dilation(g, c);
      else covers.push_back(dilated_cover(g, c, parse_bits(o.bits)));
    }
    return emit_covers(o, out, covers);
  }
  DoubleCover cover = cover_from_json(read_json_file(o.files.at(0)));
  if (verb == "verify") {
    CoverReport r = verify_cover(cover);
    if (o.pretty) {
      out << "ok        " << (r.ok ? "true" : "false") << "\n";
      out << "dilation  " << cycle_text(r.dilation) << "\n";
      for (const auto& s : r.issues) out << "issue     " << s << "\n";
      return;
    }
    emit_json(out, {{"ok", r.ok}, {"dilation", to_json(r.dilation)}, {"issues", r.issues}});
    return;
  }
  CoverReport r = verify_cover(cover);
  if (!r.ok) throw PreconditionError("not a valid double cover: " + r.issues.front());
  Rational eps = parse_rational(o.epsilon);
  Divisor result;
  if (verb == "pullback") {
    result = pullback(cover, load_divisor(cover.target, o.files.at(1)));
  } else {
    Divisor d = normalize(virtual_source(cover, eps).graph, divisor_from_json(read_json_file(o.files.at(1))));
    result = pushforward(cover, d);
  }
  if (o.pretty) out << to_string(result) << "\n";
  else emit_json(out, to_json(result));
}

void cmd_prym(const std::string& verb, const Options& o, std::ostream& out) {
  DoubleCover cover = cover_from_json(read_json_file(o.files.at(0)));
  Rational eps = parse_rational(o.epsilon);
  HomologyAction action = homology_action(cover, eps);
  if (verb == "contains") {
    Divisor d = divisor_from_json(read_json_file(o.files.at(1)));
    out << (prym_contains(action, d) ? "true" : "false") << "\n";
  } else {
    out << kernel_component_count(action) << "\n";
  }
}

void cmd_pair(const Options& o, std::ostream& out) {
  MetricGraph g = load_graph(o.files.at(0));
  PairingTable t = pairing_table(g);
  if (!o.pretty) {
    Json cycles = Json::array(), covers = Json::array();
    for (const auto& c : t.cycles) cycles.push_back(to_json(c));
    for (const auto& b : t.covers) covers.push_back(bits_text(b));
    emit_json(out, {{"cycles", cycles}, {"covers", covers}, {"table", t.entries}});
    return;
  }
  CycleSpace space = cycle_space(g, false);
  out << "lift bits on:";
  for (std::size_t e : space.non_tree_edges) out << " " << g.edges()[e].id;
  out << "\n";
  std::size_t w = 4;
  for (const auto& b : t.covers) w = std::max(w, bits_text(b).size());
  for (std::size_t j = 0; j < t.cycles.size(); ++j)
    out << "c" << j << " = " << cycle_text(t.cycles[j]) << "\n";
  out << std::left << std::setw(static_cast<int>(w)) << "bits";
  for (std::size_t j = 0; j < t.cycles.size(); ++j) out << " " << std::right << std::setw(3) << ("c" + std::to_string(j)) << std::left;
  out << "\n";
  for (std::size_t i = 0; i < t.covers.size(); ++i) {
    out << std::left << std::setw(static_cast<int>(w)) << bits_text(t.covers[i]);
    for (int x : t.entries[i]) out << " " << std::right << std::setw(3) << x << std::left;
    out << "\n";
  }
}

void cmd_export(const std::string& verb, const Options& o, std::ostream& out) {
  Json j = read_json_file(o.files.at(0));
  if (j.is_object() && j.contains("target")) {
    if (verb == "tikz") throw PreconditionError("TikZ export takes a graph, not a cover");
    out << to_dot(cover_from_json(j));
    return;
  }
  MetricGraph g = graph_from_json(j);
  Divisor d = o.files.size() > 1 ? load_divisor(g, o.files[1]) : Divisor{};
  out << (verb == "dot" ? to_dot(g, d) : to_tikz(g, d));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Divisors, theta characteristics, double covers and Prym varieties on metric graphs", "tropjac"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--pretty", o.pretty, "Aligned text instead of JSON");
  app.add_option("--seed", o.seed, "Seed for randomized commands");
  app.add_option("--out", o.out_file, "Write the result to a file");

  auto files = [&](CLI::App* sub, const std::string& names, std::size_t count) {
    sub->add_option("files", o.files, names)->required()->expected(static_cast<int>(count));
  };
  auto optional_files = [&](CLI::App* sub, const std::string& names, int lo, int hi) {
    sub->add_option("files", o.files, names)->required()->expected(lo, hi);
  };
  auto global = [&](CLI::App* sub) {
    sub->add_flag("--pretty", o.pretty, "Aligned text instead of JSON");
    sub->add_option("--out", o.out_file, "Write the result to a file");
    sub->add_option("--seed", o.seed, "Seed for randomized commands");
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check a graph and report its genus and canonical divisor");
  files(validate_cmd, "graph.json", 1);
  global(validate_cmd);
  auto* theta_cmd = app.add_subcommand("theta", "List the theta characteristics L_0 and L_gamma");
  files(theta_cmd, "graph.json", 1);
  global(theta_cmd);

  auto* divisor_cmd = app.add_subcommand("divisor", "Divisor operations");
  divisor_cmd->require_subcommand(1);
  auto* d_equiv = divisor_cmd->add_subcommand("equiv", "Linear equivalence of two divisors");
  files(d_equiv, "graph.json a.json b.json", 3);
  auto* d_reduce = divisor_cmd->add_subcommand("reduce", "Reduced divisor at a vertex");
  files(d_reduce, "graph.json div.json", 2);
  d_reduce->add_option("--at", o.at, "Vertex id (default: first vertex)");
  auto* d_principal = divisor_cmd->add_subcommand("principal", "Principality with a certificate");
  files(d_principal, "graph.json div.json", 2);
  auto* d_effective = divisor_cmd->add_subcommand("effective", "An equivalent effective divisor, if any");
  files(d_effective, "graph.json div.json", 2);
  auto* d_random = divisor_cmd->add_subcommand("random", "Seeded random divisor");
  files(d_random, "graph.json", 1);
  d_random->add_option("--degree", o.degree, "Degree");
  d_random->add_option("--support", o.support, "Number of random terms");
  for (auto* s : {d_equiv, d_reduce, d_principal, d_effective, d_random}) global(s);

  auto* jac_cmd = app.add_subcommand("jac", "Jacobian operations");
  jac_cmd->require_subcommand(1);
  auto* j_lattice = jac_cmd->add_subcommand("lattice", "Cycle basis and Gram matrix");
  files(j_lattice, "graph.json", 1);
  auto* j_aj = jac_cmd->add_subcommand("aj", "Abel-Jacobi image of a degree 0 divisor");
  files(j_aj, "graph.json div.json", 2);
  auto* j_torsion = jac_cmd->add_subcommand("torsion", "m-torsion points");
  files(j_torsion, "graph.json", 1);
  j_torsion->add_option("--order", o.order, "m");
  for (auto* s : {j_lattice, j_aj, j_torsion}) global(s);

  auto* cover_cmd = app.add_subcommand("cover", "Double covers");
  cover_cmd->require_subcommand(1);
  auto* c_free = cover_cmd->add_subcommand("free", "Free double covers");
  files(c_free, "graph.json", 1);
  c_free->add_option("--bits", o.bits, "Lift bits on the non-tree edges");
  auto* c_dilated = cover_cmd->add_subcommand("dilated", "Double covers dilated over a cycle");
  files(c_dilated, "graph.json", 1);
  c_dilated->add_option("--cycle", o.cycle, "Comma separated edge ids")->required();
  c_dilated->add_option("--bits", o.bits, "Lift bits on the complement");
  auto* c_verify = cover_cmd->add_subcommand("verify", "Check a cover");
  files(c_verify, "cover.json", 1);
  auto* c_pull = cover_cmd->add_subcommand("pullback", "Pull a divisor back to the source");
  files(c_pull, "cover.json div.json", 2);
  auto* c_push = cover_cmd->add_subcommand("pushforward", "Push a divisor forward to the target");
  files(c_push, "cover.json div.json", 2);
  c_push->add_option("--epsilon", o.epsilon, "Virtual loop length");
  for (auto* s : {c_free, c_dilated, c_verify, c_pull, c_push}) global(s);

  auto* prym_cmd = app.add_subcommand("prym", "Prym varieties");
  prym_cmd->require_subcommand(1);
  auto* p_contains = prym_cmd->add_subcommand("contains", "Membership in the Prym variety");
  files(p_contains, "cover.json div.json", 2);
  auto* p_components = prym_cmd->add_subcommand("components", "Components of the pushforward kernel");
  files(p_components, "cover.json", 1);
  for (auto* s : {p_contains, p_components}) {
    s->add_option("--epsilon", o.epsilon, "Virtual loop length");
    global(s);
  }

  auto* pair_cmd = app.add_subcommand("pair", "Weil pairing table of free covers against even subgraphs");
  files(pair_cmd, "graph.json", 1);
  global(pair_cmd);

  auto* export_cmd = app.add_subcommand("export", "Graph export");
  export_cmd->require_subcommand(1);
  auto* e_dot = export_cmd->add_subcommand("dot", "Graphviz DOT");
  optional_files(e_dot, "graph.json|cover.json [div.json]", 1, 2);
  auto* e_tikz = export_cmd->add_subcommand("tikz", "TikZ picture");
  optional_files(e_tikz, "graph.json [div.json]", 1, 2);
  for (auto* s : {e_dot, e_tikz}) global(s);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  auto chosen = [](CLI::App* parent) { return parent->get_subcommands().front()->get_name(); };
  std::ostringstream buffer;
  try {
    if (validate_cmd->parsed()) cmd_validate(o, buffer);
    else if (theta_cmd->parsed()) cmd_theta(o, buffer);
    else if (divisor_cmd->parsed()) cmd_divisor(chosen(divisor_cmd), o, buffer);
    else if (jac_cmd->parsed()) cmd_jac(chosen(jac_cmd), o, buffer);
    else if (cover_cmd->parsed()) cmd_cover(chosen(cover_cmd), o, buffer);
    else if (prym_cmd->parsed()) cmd_prym(chosen(prym_cmd), o, buffer);
    else if (pair_cmd->parsed()) cmd_pair(o, buffer);
    else if (export_cmd->parsed()) cmd_export(chosen(export_cmd), o, buffer);
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return 3;
  }

  if (o.out_file.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(o.out_file, std::ios::binary);
    if (!file) {
      err << "invalid input: cannot write " << o.out_file << "\n";
      return 2;
    }
    file << buffer.str();
  }
  return 0;
}

}  // namespace tropjac::cli
