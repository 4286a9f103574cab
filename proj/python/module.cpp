#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pmc/extract.hpp"
#include "pmc/families.hpp"
#include "pmc/flip.hpp"
#include "pmc/gf2.hpp"
#include "pmc/oracle.hpp"
#include "pmc/trace.hpp"
#include "pmc/treemodel.hpp"

namespace py = pybind11;
using namespace pmc;

namespace {

BitRow ids_to_bits(const Graph& g, const std::vector<VertexId>& ids) {
    BitRow bits(g.capacity());
    for (VertexId v : ids) {
        if (v >= g.capacity()) throw Error("vertex id out of range");
        bits.set(v);
    }
    return bits;
}

std::vector<VertexId> bits_to_ids(const BitRow& bits) {
    std::vector<VertexId> out;
    bits.for_each([&](VertexId v) { out.push_back(v); });
    return out;
}

const char* status_name(SearchStatus s) {
    switch (s) {
    case SearchStatus::yes: return "yes";
    case SearchStatus::no: return "no";
    default: return "unknown";
    }
}

TriKind tri_kind(const std::string& kind) {
    if (kind == "kk") return TriKind::kk;
    if (kind == "kkbar") return TriKind::kkbar;
    if (kind == "kbarkbar") return TriKind::kbarkbar;
    throw Error("kind must be kk, kkbar, or kbarkbar");
}

void bind_graph(py::module_& m) {
    py::class_<Graph>(m, "Graph")
        .def(py::init<std::size_t>(), py::arg("n") = 0)
        .def_static("from_edges",
                    [](std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
                        return Graph::from_edges(n, edges);
                    },
                    py::arg("n"), py::arg("edges"))
        .def_static("from_text", &Graph::from_text, py::arg("text"))
        .def("to_text", &Graph::to_text)
        .def("to_dot", &Graph::to_dot)
        .def("capacity", &Graph::capacity)
        .def("num_active", &Graph::num_active)
        .def("num_edges", &Graph::num_edges)
        .def("is_active", &Graph::is_active, py::arg("v"))
        .def("vertices", &Graph::vertices)
        .def("edges", &Graph::edges)
        .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
        .def("degree", &Graph::degree, py::arg("v"))
        .def("neighbors", &Graph::neighbors, py::arg("v"))
        .def("add_edge", &Graph::add_edge, py::arg("u"), py::arg("v"))
        .def("remove_edge", &Graph::remove_edge, py::arg("u"), py::arg("v"))
        .def("toggle_edge", &Graph::toggle_edge, py::arg("u"), py::arg("v"))
        .def("apply_pivot", &Graph::apply_pivot, py::arg("u"), py::arg("v"))
        .def("apply_local_complement", &Graph::apply_local_complement, py::arg("v"))
        .def("apply_delete", &Graph::apply_delete, py::arg("v"))
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; }, py::is_operator())
        .def("__repr__", [](const Graph& g) {
            return "<Graph " + std::to_string(g.num_active()) + " vertices, " +
                   std::to_string(g.num_edges()) + " edges>";
        });

    m.def("pivot", &pivot, py::arg("g"), py::arg("u"), py::arg("v"));
    m.def("local_complement", &local_complement, py::arg("g"), py::arg("v"));
    m.def("delete_vertex", &delete_vertex, py::arg("g"), py::arg("v"));
    m.def("complement", &complement, py::arg("g"));
    m.def("shorten_degree_two", &shorten_degree_two, py::arg("g"), py::arg("u"), py::arg("v"));
    m.def("induced_subgraph",
          [](const Graph& g, const std::vector<VertexId>& keep) {
              return induced_subgraph(g, keep);
          },
          py::arg("g"), py::arg("keep"));
    m.def("disjoint_union", &disjoint_union, py::arg("g"), py::arg("h"));
    m.def("is_path", &is_path, py::arg("g"));
    m.def("path_order", &path_order, py::arg("g"));
    m.def("is_complement_of_path", &is_complement_of_path, py::arg("g"));
    m.def("cut_rank",
          [](const Graph& g, const std::vector<VertexId>& side) {
              return cut_rank(g, std::span<const VertexId>(side));
          },
          py::arg("g"), py::arg("side"));
}

void bind_families(py::module_& m) {
    m.def("path_graph", &path_graph, py::arg("n"));
    m.def("complete_graph", &complete_graph, py::arg("n"));
    m.def("empty_graph", &empty_graph, py::arg("n"));
    m.def("grid", &grid, py::arg("m"), py::arg("n"));
    m.def("tri_family", [](const std::string& kind, int t) { return tri_family(tri_kind(kind), t); },
          py::arg("kind"), py::arg("t"));
    m.def("st_path",
          [](int s, int t, int offset) { return st_path(StPathSpec{s, t, offset}); },
          py::arg("s"), py::arg("t"), py::arg("offset") = 1);
    m.def("half_graph_join",
          [](const Graph& g, const Graph& h, const std::vector<VertexId>& og,
             const std::vector<VertexId>& oh) { return half_graph_join(g, h, og, oh); },
          py::arg("g"), py::arg("h"), py::arg("order_g"), py::arg("order_h"));
}

void bind_flip(py::module_& m) {
    py::class_<FlipSpec>(m, "FlipSpec")
        .def(py::init<>())
        .def_readonly("m", &FlipSpec::m)
        .def_readonly("n", &FlipSpec::n)
        .def("num_classes", &FlipSpec::num_classes)
        .def("to_json", &FlipSpec::to_json)
        .def_static("from_json", &FlipSpec::from_json, py::arg("text"))
        .def("__eq__", [](const FlipSpec& a, const FlipSpec& b) { return a == b; },
             py::is_operator())
        .def("__repr__", [](const FlipSpec& s) {
            return "<FlipSpec " + std::to_string(s.m) + "x" + std::to_string(s.n) + ", " +
                   std::to_string(s.num_classes()) + " classes>";
        });

    m.def("apply_flip", &apply_flip, py::arg("grid"), py::arg("spec"));
    m.def("is_flip_of", &is_flip_of, py::arg("g"), py::arg("spec"));
    m.def("x_flip",
          [](const Graph& g, const std::vector<VertexId>& x) { return x_flip(g, ids_to_bits(g, x)); },
          py::arg("g"), py::arg("x"));
    m.def("random_flip_spec",
          [](std::uint64_t seed, int m, int n) {
              std::mt19937_64 rng(seed);
              return random_flip_spec(rng, m, n);
          },
          py::arg("seed"), py::arg("m"), py::arg("n"));
    m.def("recognize_one_flip_of_path",
          [](const Graph& g) -> std::optional<std::vector<VertexId>> {
              auto x = recognize_one_flip_of_path(g);
              if (!x) return std::nullopt;
              return bits_to_ids(*x);
          },
          py::arg("g"));
    m.def("verify_one_flip_of_path",
          [](const Graph& g, const std::vector<VertexId>& x) {
              return verify_one_flip_of_path(g, ids_to_bits(g, x));
          },
          py::arg("g"), py::arg("x"));
}

void bind_trace(py::module_& m) {
    py::class_<PivotTrace>(m, "PivotTrace")
        .def(py::init<>())
        .def("pivot", &PivotTrace::pivot, py::arg("u"), py::arg("v"))
        .def("delete_", &PivotTrace::del, py::arg("v"))
        .def("deletions_only", &PivotTrace::deletions_only)
        .def("__len__", &PivotTrace::size)
        .def("to_json", &PivotTrace::to_json)
        .def_static("from_json", &PivotTrace::from_json, py::arg("text"))
        .def("__eq__", [](const PivotTrace& a, const PivotTrace& b) { return a == b; },
             py::is_operator())
        .def("__repr__",
             [](const PivotTrace& t) { return "<PivotTrace " + std::to_string(t.size()) + " steps>"; });

    m.def("replay", &replay, py::arg("start"), py::arg("trace"));
}

void bind_treemodel(py::module_& m) {
    m.def("rank_depth", &rank_depth, py::arg("g"), py::arg("max_vertices") = 8);
    m.def("rank_depth_with_witness",
          [](const Graph& g, std::size_t max_vertices) {
              auto [value, dec] = rank_depth_with_witness(g, max_vertices);
              return py::make_tuple(value, dec.to_json());
          },
          py::arg("g"), py::arg("max_vertices") = 8);
    m.def("decomposition_width",
          [](const Graph& g, const std::string& dec_json) {
              return decomposition_width(g, Decomposition::from_json(dec_json));
          },
          py::arg("g"), py::arg("decomposition_json"));
    m.def("make_basic_tree_model",
          [](const Graph& g) { return make_basic_tree_model(g).to_json(); }, py::arg("g"));
    m.def("validate_tree_model",
          [](const Graph& g, const std::string& model_json) {
              std::string why;
              bool ok = validate_tree_model(g, TreeModel::from_json(model_json), &why);
              return py::make_tuple(ok, why);
          },
          py::arg("g"), py::arg("model_json"));
}

void bind_oracle(py::module_& m) {
    py::class_<SearchResult>(m, "SearchResult")
        .def_property_readonly("status",
                               [](const SearchResult& r) { return std::string(status_name(r.status)); })
        .def_readonly("witness", &SearchResult::witness)
        .def_readonly("states_explored", &SearchResult::states_explored)
        .def("__repr__", [](const SearchResult& r) {
            return std::string("<SearchResult ") + status_name(r.status) + ", " +
                   std::to_string(r.states_explored) + " states>";
        });

    auto budget = [](std::size_t max_states) {
        SearchBudget b;
        b.max_states = max_states;
        return b;
    };
    m.def("is_isomorphic", &is_isomorphic, py::arg("g"), py::arg("h"),
          py::arg("max_vertices") = canonical_vertex_bound);
    m.def("find_isomorphism", &find_isomorphism, py::arg("g"), py::arg("h"));
    m.def("has_pivot_minor",
          [budget](const Graph& host, const Graph& pattern, std::size_t max_states) {
              return has_pivot_minor(host, pattern, budget(max_states));
          },
          py::arg("host"), py::arg("pattern"), py::arg("max_states") = 1'000'000);
    m.def("has_induced_subgraph",
          [budget](const Graph& host, const Graph& pattern, std::size_t max_states) {
              return has_induced_subgraph(host, pattern, budget(max_states));
          },
          py::arg("host"), py::arg("pattern"), py::arg("max_states") = 1'000'000);
}

void bind_extract(py::module_& m) {
    py::class_<ExtractResult>(m, "ExtractResult")
        .def_readonly("input", &ExtractResult::input)
        .def_readonly("graph", &ExtractResult::graph)
        .def_readonly("trace", &ExtractResult::trace)
        .def_readonly("t", &ExtractResult::t)
        .def_property_readonly("target",
                               [](const ExtractResult& r) {
                                   return std::string(r.target == ExtractTarget::kk ? "kk" : "path");
                               })
        .def("__repr__", [](const ExtractResult& r) {
            return "<ExtractResult target " +
                   std::string(r.target == ExtractTarget::kk ? "kk" : "path") + ":" +
                   std::to_string(r.t) + ", " + std::to_string(r.trace.size()) + " steps>";
        });

    m.def("extract_from_flipped_grid",
          [](const Graph& g, const FlipSpec& spec, int t, std::size_t max_states) {
              SearchBudget b;
              b.max_states = max_states;
              return extract_path(Outcome{OutcomeFlippedGrid{g, spec}}, t, b);
          },
          py::arg("g"), py::arg("spec"), py::arg("t"), py::arg("max_states") = 1'000'000);
    m.def("extract_from_family",
          [](const std::string& kind, int s, int t, std::size_t max_states) {
              SearchBudget b;
              b.max_states = max_states;
              Outcome o;
              switch (tri_kind(kind)) {
              case TriKind::kk: o = OutcomeKK{s}; break;
              case TriKind::kkbar: o = OutcomeKKbar{s}; break;
              default: o = OutcomeKbarKbar{s}; break;
              }
              return extract_path(o, t, b);
          },
          py::arg("kind"), py::arg("s"), py::arg("t"), py::arg("max_states") = 1'000'000);
    m.def("to_one_flip",
          [](const Graph& g, const FlipSpec& spec) {
              PathReduction pr = to_one_flip(g, spec);
              return py::make_tuple(pr.graph, pr.order, bits_to_ids(pr.x), pr.trace);
          },
          py::arg("g"), py::arg("spec"));
    m.def("one_flip_to_path",
          [](const Graph& g, const std::vector<VertexId>& order, const std::vector<VertexId>& x,
             int t) {
              PathReduction pr = one_flip_to_path(g, order, ids_to_bits(g, x), t);
              return py::make_tuple(pr.graph, pr.order, bits_to_ids(pr.x), pr.trace);
          },
          py::arg("g"), py::arg("order"), py::arg("x"), py::arg("t"));
    m.def("set_runtime_checks", &set_runtime_checks, py::arg("on"));
    m.def("runtime_checks", &runtime_checks);
}

} // namespace

PYBIND11_MODULE(_pivotcalc, m) {
    m.doc() = "pivot calculus on graphs: pivots, flips, rank-depth, certifying reductions";
    py::register_exception<Error>(m, "Error");
    bind_graph(m);
    bind_families(m);
    bind_flip(m);
    bind_trace(m);
    bind_treemodel(m);
    bind_oracle(m);
    bind_extract(m);
}
