#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mpg/asymptotic.hpp"
#include "mpg/cli.hpp"
#include "mpg/constrained.hpp"
#include "mpg/errors.hpp"
#include "mpg/finite.hpp"
#include "mpg/gallery.hpp"
#include "mpg/json_io.hpp"
#include "mpg/product.hpp"
#include "mpg/streams.hpp"

namespace py = pybind11;
using namespace mpg;

namespace {

// values cross the boundary twice: exact as "a/b" strings, approximate as floats
py::str rat_str(const Rational& r) { return py::str(r.str()); }

std::optional<StartSpec> start_arg(const py::object& edges, const py::object& vertices) {
  if (!edges.is_none() && !vertices.is_none())
    throw DomainError("give start_edges or start_vertices, not both");
  auto unpack = [](const py::object& o, StartSpec::Kind kind) {
    auto t = o.cast<std::pair<std::string, std::string>>();
    return StartSpec{kind, t.first, t.second};
  };
  if (!edges.is_none()) return unpack(edges, StartSpec::Kind::edges);
  if (!vertices.is_none()) return unpack(vertices, StartSpec::Kind::vertices);
  return std::nullopt;
}

py::list ids(const Graph& g, const std::vector<int>& walk) {
  py::list out;
  for (int e : walk) out.append(g.edge(e).id);
  return out;
}

py::list value_lists(const std::vector<Rational>& vs, bool floats) {
  py::list out;
  for (const auto& v : vs) {
    if (floats)
      out.append(v.to_double());
    else
      out.append(rat_str(v));
  }
  return out;
}

py::dict bounds_dict(const ValueBounds& b) {
  py::dict d;
  d["lower"] = rat_str(b.lower);
  d["lower_f64"] = b.lower.to_double();
  d["upper"] = rat_str(b.upper);
  d["upper_f64"] = b.upper.to_double();
  if (b.exact) {
    d["exact"] = rat_str(*b.exact);
    d["exact_f64"] = b.exact->to_double();
  }
  d["lower_certificate"] = b.lower_certificate;
  d["upper_certificate"] = b.upper_certificate;
  d["horizon_used"] = b.horizon_used;
  d["constant_C"] = rat_str(b.constant_C);
  d["escalations"] = b.escalations;
  d["iterations"] = b.iterations;
  return d;
}

ForbiddenSet forbidden_arg(const py::object& patterns) {
  if (py::isinstance<py::str>(patterns)) return parse_forbidden(patterns.cast<std::string>());
  return make_forbidden(patterns.cast<std::vector<std::string>>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "mean payoff duels: finite values, certified asymptotics, covering radii";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  py::class_<GameInstance>(m, "GameInstance")
      .def_static("from_json", [](const std::string& text) { return parse_instance(text); },
                  py::arg("text"))
      .def_static("from_file", [](const std::string& path) { return parse_instance_file(path); },
                  py::arg("path"))
      .def("to_json", [](const GameInstance& g, bool pretty) { return serialize_instance(g, pretty); },
           py::arg("pretty") = false)
      .def_property_readonly("g_vertices", [](const GameInstance& g) { return g.g().vertex_count(); })
      .def_property_readonly("g_edges", [](const GameInstance& g) { return g.g().edge_count(); })
      .def_property_readonly("h_vertices", [](const GameInstance& g) { return g.h().vertex_count(); })
      .def_property_readonly("h_edges", [](const GameInstance& g) { return g.h().edge_count(); })
      .def_property_readonly("numeric_mode", [](const GameInstance& g) {
        return g.mode() == NumericMode::float64 ? "float64" : "exact";
      });

  m.def(
      "value_nonalt_finite",
      [](const GameInstance& inst, int rounds, const py::object& start_edges,
         const py::object& start_vertices, bool free_bob_start, long node_cap) {
        FiniteOptions fo;
        fo.free_bob_start = free_bob_start;
        fo.node_cap = node_cap;
        auto res =
            value_nonalt_finite(inst, rounds, start_arg(start_edges, start_vertices), fo);
        py::dict d;
        d["values"] = value_lists(res.round_values, false);
        d["values_f64"] = value_lists(res.round_values, true);
        d["alice_witness"] = ids(inst.g(), res.alice_witness);
        d["bob_reply"] = ids(inst.h(), res.bob_reply);
        d["nodes_expanded"] = res.nodes_expanded;
        return d;
      },
      py::arg("instance"), py::arg("rounds"), py::arg("start_edges") = py::none(),
      py::arg("start_vertices") = py::none(), py::arg("free_bob_start") = false,
      py::arg("node_cap") = -1,
      "Committed-walk values for rounds 1..N with the optimal walk and reply.");

  m.def(
      "value_alt_finite",
      [](const GameInstance& inst, int rounds, const py::object& start_edges,
         const py::object& start_vertices) {
        auto vs = value_alt_finite(inst, rounds, start_arg(start_edges, start_vertices));
        py::dict d;
        d["values"] = value_lists(vs, false);
        d["values_f64"] = value_lists(vs, true);
        return d;
      },
      py::arg("instance"), py::arg("rounds"), py::arg("start_edges") = py::none(),
      py::arg("start_vertices") = py::none(),
      "Alternating values for rounds 1..N.");

  m.def(
      "value_nonalt_bounds",
      [](const GameInstance& inst, int budget, const py::object& start_edges,
         const py::object& start_vertices, bool free_bob_start) {
        return bounds_dict(value_nonalt_bounds(inst, budget,
                                               start_arg(start_edges, start_vertices),
                                               free_bob_start));
      },
      py::arg("instance"), py::arg("budget") = 12, py::arg("start_edges") = py::none(),
      py::arg("start_vertices") = py::none(), py::arg("free_bob_start") = false,
      "Certified interval around the committed-walk mean value.");

  m.def(
      "value_alt_infinite",
      [](const GameInstance& inst, long iterations, const py::object& start_edges,
         const py::object& start_vertices) {
        return bounds_dict(
            value_alt_infinite(inst, iterations, start_arg(start_edges, start_vertices)));
      },
      py::arg("instance"), py::arg("iterations") = 0, py::arg("start_edges") = py::none(),
      py::arg("start_vertices") = py::none(),
      "Alternating limit value via value iteration; isolates exact rationals.");

  m.def(
      "trace",
      [](const GameInstance& inst, long steps, const py::object& start_edges,
         const py::object& start_vertices) {
        auto ov = start_arg(start_edges, start_vertices);
        auto rs = inst.resolve_start(ov);
        auto comp = product_component(inst, rs);
        auto sched = block_schedule(inst, comp);
        int cover = 1;
        while (sched.b(cover) < steps) ++cover;
        long prefix_len = sched.b(cover) + 1;
        auto probe = alice_equilibrium_stream(inst, sched, ov);
        std::vector<int> prefix;
        prefix.reserve(prefix_len);
        for (long i = 0; i < prefix_len; ++i) prefix.push_back(probe->next());
        auto bob = bob_equilibrium_response(inst, sched, prefix, ov);
        auto alice = alice_equilibrium_stream(inst, sched, ov);
        py::list out;
        for (const auto& r : simulate(inst, *alice, *bob, steps)) {
          py::dict e;
          e["step"] = r.step;
          e["alice"] = inst.g().edge(r.alice_edge).id;
          e["bob"] = inst.h().edge(r.bob_edge).id;
          e["average"] = rat_str(r.average);
          e["average_f64"] = r.average_f64;
          out.append(std::move(e));
        }
        return out;
      },
      py::arg("instance"), py::arg("steps") = 64, py::arg("start_edges") = py::none(),
      py::arg("start_vertices") = py::none(),
      "Simulate the equilibrium stream pair for `steps` rounds.");

  m.def(
      "covering_radius",
      [](const py::object& patterns, int n) {
        auto res = covering_radius(forbidden_arg(patterns), n);
        py::dict d;
        d["n"] = res.n;
        d["radius"] = res.radius;
        d["witness_u"] = res.witness_u;
        d["method"] = res.mode;
        return d;
      },
      py::arg("forbidden"), py::arg("n"),
      "Covering radius of the length-n binary code avoiding the patterns.");

  m.def(
      "asymptotic_covering_radius",
      [](const py::object& patterns, int budget) {
        return bounds_dict(asymptotic_covering_radius_bounds(forbidden_arg(patterns), budget));
      },
      py::arg("forbidden"), py::arg("budget") = 12,
      "Bounds on the normalized covering radius in the long-word limit.");

  m.def("gallery_names", []() { return gallery_names(); },
        "Names of the bundled worked examples.");

  m.def(
      "gallery_run",
      [](const std::string& name) {
        auto entry = build_example(name);
        py::list out;
        for (const auto& chk : entry.checklist) {
          py::dict d;
          d["name"] = chk.name;
          auto failure = chk.run();
          d["passed"] = !failure.has_value();
          if (failure) d["detail"] = *failure;
          out.append(std::move(d));
        }
        return out;
      },
      py::arg("name"), "Run one gallery entry's checklist.");

  m.def(
      "gallery_instance",
      [](const std::string& name) { return build_example(name).instance; },
      py::arg("name"), "The instance behind a gallery entry.");

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = mpg::cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Drive the command-line interface; returns (code, stdout, stderr).");
}
