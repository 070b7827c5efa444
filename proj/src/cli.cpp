#include "mpg/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mpg/asymptotic.hpp"
#include "mpg/constrained.hpp"
#include "mpg/errors.hpp"
#include "mpg/finite.hpp"
#include "mpg/gallery.hpp"
#include "mpg/json_io.hpp"
#include "mpg/product.hpp"
#include "mpg/streams.hpp"

namespace mpg::cli {

namespace {

using nlohmann::ordered_json;

constexpr const char* kSchema = "mpg-duel/1";

// ---- report plumbing -------------------------------------------------------

std::string scalar_text(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// indented key/value listing; arrays of objects become "-" blocks
void render_plain(const ordered_json& j, std::ostream& out, int indent) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      bool nested = v.is_object() ||
                    (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array()));
      if (nested) {
        out << pad << k << ":\n";
        render_plain(v, out, indent + 2);
      } else if (v.is_array()) {
        out << pad << k << ":";
        for (const auto& e : v) out << ' ' << scalar_text(e);
        out << "\n";
      } else {
        out << pad << k << ": " << scalar_text(v) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (e.is_object() || e.is_array()) {
        out << pad << "-\n";
        render_plain(e, out, indent + 2);
      } else {
        out << pad << "- " << scalar_text(e) << "\n";
      }
    }
  } else {
    out << pad << scalar_text(j) << "\n";
  }
}

void emit(const ordered_json& j, bool pretty, std::ostream& out) {
  if (pretty) {
    render_plain(j, out, 0);
  } else {
    out << j.dump(2) << "\n";
  }
}

ordered_json report_head(const std::string& command) {
  ordered_json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

ordered_json digest_json(const GameInstance& inst) {
  ordered_json d;
  d["g_vertices"] = inst.g().vertex_count();
  d["g_edges"] = inst.g().edge_count();
  d["h_vertices"] = inst.h().vertex_count();
  d["h_edges"] = inst.h().edge_count();
  d["numeric_mode"] = inst.mode() == NumericMode::float64 ? "float64" : "exact";
  return d;
}

ordered_json id_list(const Graph& g, const std::vector<int>& walk) {
  ordered_json a = ordered_json::array();
  for (int e : walk) a.push_back(g.edge(e).id);
  return a;
}

ordered_json values_json(const std::vector<Rational>& vs) {
  ordered_json a = ordered_json::array();
  for (const auto& v : vs) a.push_back(v.str());
  return a;
}

ordered_json values_f64_json(const std::vector<Rational>& vs) {
  ordered_json a = ordered_json::array();
  for (const auto& v : vs) a.push_back(v.to_double());
  return a;
}

ordered_json bounds_json(const ValueBounds& b) {
  ordered_json j;
  j["lower"] = b.lower.str();
  j["lower_f64"] = b.lower.to_double();
  j["upper"] = b.upper.str();
  j["upper_f64"] = b.upper.to_double();
  j["width_f64"] = (b.upper - b.lower).to_double();
  if (b.exact) {
    j["exact"] = b.exact->str();
    j["exact_f64"] = b.exact->to_double();
  }
  j["lower_certificate"] = b.lower_certificate;
  j["upper_certificate"] = b.upper_certificate;
  j["horizon_used"] = b.horizon_used;
  j["constant_C"] = b.constant_C.str();
  j["escalations"] = b.escalations;
  if (b.iterations > 0) j["iterations"] = b.iterations;
  return j;
}

ordered_json forbidden_json(const ForbiddenSet& f) {
  ordered_json j;
  j["k"] = f.k;
  j["patterns"] = f.patterns;
  return j;
}

// ---- flag helpers ----------------------------------------------------------

// "a,b" split at the first comma; edge ids and vertex names never start with
// a comma, so the first split is the intended one
std::pair<std::string, std::string> split_start(const std::string& text, const std::string& flag) {
  auto pos = text.find(',');
  if (pos == std::string::npos || pos == 0 || pos + 1 == text.size())
    throw CLI::ValidationError(flag, "expected two comma-separated references");
  return {text.substr(0, pos), text.substr(pos + 1)};
}

std::optional<StartSpec> start_override(const std::string& edges, const std::string& vertices) {
  if (!edges.empty()) {
    auto [a, b] = split_start(edges, "--start-edges");
    return StartSpec{StartSpec::Kind::edges, a, b};
  }
  if (!vertices.empty()) {
    auto [a, b] = split_start(vertices, "--start-vertices");
    return StartSpec{StartSpec::Kind::vertices, a, b};
  }
  return std::nullopt;
}

struct Options {
  std::string file;
  std::string mode = "non-alt";
  std::string start_edges, start_vertices;
  std::string forbidden;
  std::string gallery_name;
  std::string export_path;
  int rounds = 0;
  int budget = 12;
  long iters = 0;
  long steps = 64;
  int n = -1;
  long node_cap = -1;
  bool asymptotic = false;
  bool free_start = false;
  bool audit = false;
  bool pretty = false;
};

GameInstance load_instance(const Options& o) { return parse_instance_file(o.file); }

FiniteOptions finite_options(const Options& o) {
  FiniteOptions fo;
  fo.node_cap = o.node_cap;
  fo.free_bob_start = o.free_start;
  return fo;
}

// ---- subcommand bodies -----------------------------------------------------

int cmd_solve_finite(const Options& o, std::ostream& out) {
  GameInstance inst = load_instance(o);
  auto ov = start_override(o.start_edges, o.start_vertices);
  ordered_json j = report_head("solve finite");
  j["mode"] = o.mode;
  j["digest"] = digest_json(inst);
  j["rounds"] = o.rounds;
  if (o.mode == "alt") {
    auto vs = value_alt_finite(inst, o.rounds, ov);
    j["values"] = values_json(vs);
    j["values_f64"] = values_f64_json(vs);
  } else {
    auto res = value_nonalt_finite(inst, o.rounds, ov, finite_options(o));
    j["values"] = values_json(res.round_values);
    j["values_f64"] = values_f64_json(res.round_values);
    if (!res.alice_witness.empty()) {
      ordered_json w;
      w["alice"] = id_list(inst.g(), res.alice_witness);
      w["bob"] = id_list(inst.h(), res.bob_reply);
      j["witness"] = w;
    }
    j["nodes_expanded"] = res.nodes_expanded;
    j["frontier_peak"] = res.frontier_peak;
    if (res.capped) j["capped"] = true;
  }
  emit(j, o.pretty, out);
  return 0;
}

int cmd_solve_infinite(const Options& o, std::ostream& out) {
  GameInstance inst = load_instance(o);
  auto ov = start_override(o.start_edges, o.start_vertices);
  ordered_json j = report_head("solve infinite");
  j["mode"] = o.mode;
  j["digest"] = digest_json(inst);
  if (o.mode == "alt") {
    auto b = value_alt_infinite(inst, o.iters, ov);
    j["bounds"] = bounds_json(b);
  } else {
    j["budget"] = o.budget;
    if (o.free_start) j["free_bob_start"] = true;
    auto b = value_nonalt_bounds(inst, o.budget, ov, o.free_start);
    j["bounds"] = bounds_json(b);
    auto rs = inst.resolve_start(ov);
    auto comp = product_component(inst, rs);
    auto sched = block_schedule(inst, comp);
    ordered_json sj;
    sj["p"] = comp.p;
    sj["D"] = comp.padding;
    sj["stream_D"] = sched.D;
    j["schedule"] = sj;
  }
  emit(j, o.pretty, out);
  return 0;
}

int cmd_trace(const Options& o, std::ostream& out) {
  GameInstance inst = load_instance(o);
  auto ov = start_override(o.start_edges, o.start_vertices);
  if (o.steps < 1) throw ValidationError("trace needs at least one step");
  auto rs = inst.resolve_start(ov);
  auto comp = product_component(inst, rs);
  auto sched = block_schedule(inst, comp);

  // Bob's replies to block k need Alice's walk through b(k); cover the last
  // block the trace touches
  int cover = 1;
  while (sched.b(cover) < o.steps) ++cover;
  long prefix_len = sched.b(cover) + 1;
  auto alice_probe = alice_equilibrium_stream(inst, sched, ov);
  std::vector<int> prefix;
  prefix.reserve(prefix_len);
  for (long i = 0; i < prefix_len; ++i) prefix.push_back(alice_probe->next());

  auto bob = bob_equilibrium_response(inst, sched, prefix, ov);
  auto alice = alice_equilibrium_stream(inst, sched, ov);
  auto records = simulate(inst, *alice, *bob, o.steps);

  ordered_json j = report_head("trace");
  j["digest"] = digest_json(inst);
  ordered_json sj;
  sj["p"] = sched.p;
  sj["D"] = sched.D;
  j["schedule"] = sj;
  j["steps"] = o.steps;
  ordered_json recs = ordered_json::array();
  for (const auto& r : records) {
    ordered_json e;
    e["step"] = r.step;
    e["alice"] = inst.g().edge(r.alice_edge).id;
    e["bob"] = inst.h().edge(r.bob_edge).id;
    e["average"] = r.average.str();
    e["average_f64"] = r.average_f64;
    recs.push_back(std::move(e));
  }
  j["records"] = std::move(recs);
  const auto& last = records.back();
  j["final_average"] = last.average.str();
  j["final_average_f64"] = last.average_f64;
  emit(j, o.pretty, out);
  return 0;
}

int cmd_covering(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.asymptotic && o.n < 0) {
    err << "covering-radius needs --n or --asymptotic\n";
    return 2;
  }
  ForbiddenSet f = parse_forbidden(o.forbidden);
  ordered_json j = report_head("covering-radius");
  j["forbidden"] = forbidden_json(f);
  if (o.asymptotic) {
    j["budget"] = o.budget;
    auto b = asymptotic_covering_radius_bounds(f, o.budget);
    j["bounds"] = bounds_json(b);
  } else {
    auto res = covering_radius(f, o.n);
    j["n"] = res.n;
    j["radius"] = res.radius;
    j["witness_u"] = res.witness_u;
    j["method"] = res.mode;
  }
  emit(j, o.pretty, out);
  return 0;
}

int cmd_gallery(const Options& o, std::ostream& out, std::ostream& err) {
  auto names = gallery_names();
  std::vector<std::string> targets;
  if (o.gallery_name == "all") {
    targets = names;
  } else if (std::find(names.begin(), names.end(), o.gallery_name) != names.end()) {
    targets = {o.gallery_name};
  } else {
    err << "unknown gallery entry '" << o.gallery_name << "'; have:";
    for (const auto& n : names) err << ' ' << n;
    err << " all\n";
    return 2;
  }

  if (!o.export_path.empty()) {
    if (targets.size() != 1) {
      err << "--export takes a single entry, not 'all'\n";
      return 2;
    }
    auto entry = build_example(targets.front());
    std::string doc = serialize_instance(entry.instance, true);
    if (o.export_path == "-") {
      out << doc << "\n";
    } else {
      std::ofstream fs(o.export_path);
      if (!fs) throw ValidationError("cannot write '" + o.export_path + "'");
      fs << doc << "\n";
    }
    return 0;
  }

  ordered_json j = report_head("gallery");
  ordered_json entries = ordered_json::array();
  bool all_passed = true;
  for (const auto& name : targets) {
    auto entry = build_example(name);
    ordered_json ej;
    ej["name"] = name;
    ordered_json checks = ordered_json::array();
    bool passed = true;
    for (const auto& chk : entry.checklist) {
      ordered_json cj;
      cj["name"] = chk.name;
      auto failure = chk.run();
      cj["status"] = failure ? "fail" : "pass";
      if (failure) {
        cj["detail"] = *failure;
        passed = false;
      }
      checks.push_back(std::move(cj));
    }
    ej["checks"] = std::move(checks);
    ej["passed"] = passed;
    all_passed = all_passed && passed;
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  j["all_passed"] = all_passed;
  emit(j, o.pretty, out);
  return all_passed ? 0 : 1;
}

int cmd_inspect(const Options& o, std::ostream& out) {
  GameInstance inst = load_instance(o);
  auto ov = start_override(o.start_edges, o.start_vertices);
  ordered_json j = report_head("inspect");

  ordered_json d = digest_json(inst);
  auto graph_info = [](const Graph& g) {
    ordered_json gj;
    gj["vertices"] = g.vertex_count();
    gj["edges"] = g.edge_count();
    bool irr = irreducible(g);
    gj["irreducible"] = irr;
    gj["scc_count"] = static_cast<int>(strongly_connected_components(g).components.size());
    if (irr) gj["period"] = graph_period(g);
    return gj;
  };
  d["g"] = graph_info(inst.g());
  d["h"] = graph_info(inst.h());
  if (inst.mode() == NumericMode::float64) {
    d["score_norm_f64"] = inst.score_norm_f64();
  } else {
    d["score_norm"] = inst.score_norm().str();
    d["score_norm_f64"] = inst.score_norm().to_double();
  }
  d["score_entries"] = inst.scores().entry_count();
  j["digest"] = std::move(d);

  try {
    auto rs = inst.resolve_start(ov);
    ordered_json sj;
    sj["g_vertex"] = inst.g().vertex_name(rs.gv);
    sj["h_vertex"] = inst.h().vertex_name(rs.hv);
    if (rs.from_edges()) {
      sj["g_edge"] = inst.g().edge(rs.ge).id;
      sj["h_edge"] = inst.h().edge(rs.he).id;
    }
    j["start"] = std::move(sj);

    auto comp = product_component(inst, rs);
    ordered_json cj;
    cj["p"] = comp.p;
    cj["diameter"] = comp.diameter;
    cj["padding"] = comp.padding;
    cj["stream_padding"] = comp.stream_padding;
    cj["pair_vertices"] = static_cast<int>(comp.pair_vertices.size());
    cj["member_pairs"] = static_cast<int>(comp.members.size());
    j["component"] = std::move(cj);

    if (o.audit) {
      auto c = subadditive_constant(inst, comp);
      ordered_json aj;
      aj["constant_C"] = c.value.str();
      aj["analytic"] = c.analytic.str();
      aj["escalations"] = c.escalations;
      j["audit"] = std::move(aj);
    }
  } catch (const DomainError& e) {
    j["note"] = e.what();
  }

  emit(j, o.pretty, out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto t0 = std::chrono::steady_clock::now();
  auto finish = [&](int code) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    err << "wall_time_ms=" << ms << "\n";
    return code;
  };

  Options o;
  CLI::App app{"mean payoff duels: finite values, certified asymptotics, covering radii"};
  app.name("mpg-duel");
  app.require_subcommand(1);

  auto add_instance_flags = [&](CLI::App* s, bool with_start) {
    s->add_option("--file", o.file, "instance document (JSON)")->required();
    if (with_start) {
      auto* se = s->add_option("--start-edges", o.start_edges,
                               "start edge pair 'GE,HE', overrides the document");
      auto* sv = s->add_option("--start-vertices", o.start_vertices,
                               "start vertex pair 'GV,HV', overrides the document");
      se->excludes(sv);
      sv->excludes(se);
    }
  };
  auto add_pretty = [&](CLI::App* s) {
    s->add_flag("--pretty", o.pretty, "human-readable table instead of JSON");
  };

  auto* solve = app.add_subcommand("solve", "game values at a horizon or in the limit");
  solve->require_subcommand(1);

  auto* fin = solve->add_subcommand("finite", "exact values for rounds 1..N");
  add_instance_flags(fin, true);
  fin->add_option("--rounds", o.rounds, "horizon N")->required()->check(CLI::PositiveNumber);
  fin->add_option("--mode", o.mode, "alt or non-alt (default non-alt)")
      ->check(CLI::IsMember({"alt", "non-alt"}));
  fin->add_option("--node-cap", o.node_cap, "search node budget override");
  fin->add_flag("--free-start", o.free_start, "let Bob open anywhere at zero cost");
  add_pretty(fin);

  auto* inf = solve->add_subcommand("infinite", "certified bounds on the limit value");
  add_instance_flags(inf, true);
  inf->add_option("--mode", o.mode, "alt or non-alt (default non-alt)")
      ->check(CLI::IsMember({"alt", "non-alt"}));
  inf->add_option("--budget", o.budget, "finite horizons consumed for bounds (default 12)")
      ->check(CLI::PositiveNumber);
  inf->add_option("--iters", o.iters, "alternating value-iteration count, 0 = auto");
  inf->add_flag("--free-start", o.free_start, "let Bob pick his start after seeing the walk");
  add_pretty(inf);

  auto* tr = app.add_subcommand("trace", "simulate the equilibrium stream pair");
  add_instance_flags(tr, true);
  tr->add_option("--steps", o.steps, "rounds to simulate (default 64)");
  add_pretty(tr);

  auto* cov = app.add_subcommand("covering-radius", "covering radius of a constrained code");
  cov->add_option("--forbidden", o.forbidden, "comma-separated forbidden patterns, may be empty");
  cov->add_option("--n", o.n, "word length for the exact radius");
  cov->add_flag("--asymptotic", o.asymptotic, "bounds on lim R(C_n)/n instead of one n");
  cov->add_option("--budget", o.budget, "finite horizons for asymptotic bounds (default 12)")
      ->check(CLI::PositiveNumber);
  add_pretty(cov);

  auto* gal = app.add_subcommand("gallery", "bundled worked examples with their checklists");
  gal->add_option("name", o.gallery_name, "entry name, or 'all'")->required();
  gal->add_option("--export", o.export_path, "write the instance document to a file ('-' = stdout)");
  add_pretty(gal);

  auto* ins = app.add_subcommand("inspect", "structure, periods, padding, audit constant");
  add_instance_flags(ins, true);
  ins->add_flag("--audit", o.audit, "also run the subadditivity audit (horizon 12)");
  add_pretty(ins);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("mpg-duel");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  argv.reserve(argv_store.size());
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return finish(0);
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return finish(0);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return finish(2);
  }

  try {
    if (fin->parsed()) return finish(cmd_solve_finite(o, out));
    if (inf->parsed()) return finish(cmd_solve_infinite(o, out));
    if (tr->parsed()) return finish(cmd_trace(o, out));
    if (cov->parsed()) return finish(cmd_covering(o, out, err));
    if (gal->parsed()) return finish(cmd_gallery(o, out, err));
    if (ins->parsed()) return finish(cmd_inspect(o, out));
    err << "no subcommand\n";
    return finish(2);
  } catch (const CLI::ParseError& e) {
    // start-pair flags are validated lazily, after parse
    err << "usage error: " << e.what() << "\n";
    return finish(2);
  } catch (const NodeCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    err << "best_lower_bound=" << e.best_lower_bound.str() << " nodes_expanded=" << e.nodes_expanded
        << "\n";
    return finish(4);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return finish(3);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return finish(3);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return finish(4);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return finish(3);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return finish(4);
  }
}

}  // namespace mpg::cli
