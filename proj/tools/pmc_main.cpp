#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pmc/extract.hpp"
#include "pmc/families.hpp"
#include "pmc/flip.hpp"
#include "pmc/gf2.hpp"
#include "pmc/oracle.hpp"
#include "pmc/trace.hpp"
#include "pmc/treemodel.hpp"

namespace {

using namespace pmc;

constexpr int exit_ok = 0;
constexpr int exit_domain = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

// family descriptor shared by gen and the --family forms of
// extract / verify / replay
struct FamilyArgs {
    std::string family;
    int n = 0, m = 0, t = 0, s = 0, offset = 1;
    std::string x_csv;
    std::optional<std::uint64_t> seed;
};

void add_family_flags(CLI::App* cmd, FamilyArgs& fa, bool family_required) {
    auto* opt = cmd->add_option("--family", fa.family,
                                "one of path|grid|flipped-grid|kk|kkbar|kbarkbar|st-path|x-flip");
    if (family_required) opt->required();
    cmd->add_option("--n", fa.n, "columns / path length");
    cmd->add_option("--m", fa.m, "rows (flipped-grid default: 4n-3)");
    cmd->add_option("--t", fa.t, "side size / block size");
    cmd->add_option("--s", fa.s, "total vertices (st-path)");
    cmd->add_option("--offset", fa.offset, "1-based block offset (st-path)");
    cmd->add_option("--x", fa.x_csv, "comma separated vertex ids (x-flip)");
    cmd->add_option("--seed", fa.seed, "64-bit seed for randomized families");
}

BitRow parse_x_csv(const std::string& csv, std::size_t capacity) {
    BitRow x(capacity);
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        unsigned long v = std::stoul(item, &pos);
        if (pos != item.size()) throw UsageError("--x: bad vertex id '" + item + "'");
        if (v >= capacity) throw Error("--x: vertex id out of range");
        x.set(v);
    }
    return x;
}

struct BuiltFamily {
    Graph graph;
    std::optional<FlipSpec> spec;
};

BuiltFamily build_family(const FamilyArgs& fa) {
    BuiltFamily out;
    auto need_seed = [&]() {
        if (!fa.seed) throw UsageError("--seed is required for randomized generation");
        return *fa.seed;
    };
    if (fa.family == "path") {
        if (fa.n < 1) throw UsageError("path: need --n >= 1");
        out.graph = path_graph(static_cast<std::size_t>(fa.n));
    } else if (fa.family == "grid") {
        if (fa.m < 1 || fa.n < 1) throw UsageError("grid: need --m and --n");
        out.graph = grid(fa.m, fa.n);
    } else if (fa.family == "flipped-grid") {
        if (fa.n < 1) throw UsageError("flipped-grid: need --n");
        int rows = fa.m > 0 ? fa.m : 4 * fa.n - 3;
        std::mt19937_64 rng(need_seed());
        FlipSpec spec = random_flip_spec(rng, rows, fa.n);
        out.graph = apply_flip(grid(rows, fa.n), spec);
        out.spec = spec;
    } else if (fa.family == "kk" || fa.family == "kkbar" || fa.family == "kbarkbar") {
        int t = fa.t > 0 ? fa.t : fa.s;
        if (t < 1) throw UsageError(fa.family + ": need --t");
        TriKind kind = fa.family == "kk"      ? TriKind::kk
                       : fa.family == "kkbar" ? TriKind::kkbar
                                              : TriKind::kbarkbar;
        out.graph = tri_family(kind, t);
    } else if (fa.family == "st-path") {
        if (fa.s < 1) throw UsageError("st-path: need --s");
        out.graph = st_path(StPathSpec{fa.s, fa.t, fa.offset});
    } else if (fa.family == "x-flip") {
        if (fa.n < 1) throw UsageError("x-flip: need --n");
        Graph p = path_graph(static_cast<std::size_t>(fa.n));
        BitRow x(p.capacity());
        if (!fa.x_csv.empty()) {
            x = parse_x_csv(fa.x_csv, p.capacity());
        } else {
            std::mt19937_64 rng(need_seed());
            for (VertexId v = 0; v < p.capacity(); ++v)
                if (rand_below(rng, 2)) x.set(v);
        }
        out.graph = x_flip(p, x);
    } else {
        throw UsageError("unknown family '" + fa.family + "'");
    }
    return out;
}

// --input file or --family descriptor, exactly one
struct InputArgs {
    std::string input_path;
    std::string spec_path;
    FamilyArgs fa;
};

void add_input_flags(CLI::App* cmd, InputArgs& ia) {
    cmd->add_option("--input", ia.input_path, "graph file");
    cmd->add_option("--spec", ia.spec_path, "flip spec JSON (with --input)");
    add_family_flags(cmd, ia.fa, false);
}

BuiltFamily load_input(const InputArgs& ia) {
    if (!ia.input_path.empty() && !ia.fa.family.empty())
        throw UsageError("pass either --input or --family, not both");
    if (!ia.input_path.empty()) {
        BuiltFamily out;
        out.graph = Graph::from_text(read_file(ia.input_path));
        if (!ia.spec_path.empty()) out.spec = FlipSpec::from_json(read_file(ia.spec_path));
        return out;
    }
    if (ia.fa.family.empty()) throw UsageError("need --input or --family");
    return build_family(ia.fa);
}

struct Target {
    enum class Kind { path, kk, iso } kind = Kind::path;
    int t = 0;
    std::string iso_path;
};

Target parse_target(const std::string& text) {
    Target tg;
    auto colon = text.find(':');
    if (colon == std::string::npos) throw UsageError("--target: expected kind:value");
    std::string kind = text.substr(0, colon), value = text.substr(colon + 1);
    if (kind == "iso") {
        tg.kind = Target::Kind::iso;
        tg.iso_path = value;
        if (value.empty()) throw UsageError("--target iso: needs a file path");
        return tg;
    }
    tg.kind = kind == "path" ? Target::Kind::path
              : kind == "kk" ? Target::Kind::kk
                             : throw UsageError("--target: unknown kind '" + kind + "'");
    try {
        std::size_t pos = 0;
        tg.t = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw UsageError("--target: bad size '" + value + "'");
    }
    if (tg.t < 1) throw UsageError("--target: size must be >= 1");
    return tg;
}

bool matches_target(const Graph& g, const Target& tg) {
    switch (tg.kind) {
    case Target::Kind::path:
        return static_cast<int>(g.num_active()) == tg.t && is_path(g);
    case Target::Kind::kk:
        return find_isomorphism(g, tri_family(TriKind::kk, tg.t)).has_value();
    case Target::Kind::iso: {
        Graph want = Graph::from_text(read_file(tg.iso_path));
        if (g.num_active() <= canonical_vertex_bound &&
            want.num_active() <= canonical_vertex_bound)
            return is_isomorphic(g, want);
        return find_isomorphism(g, want).has_value();
    }
    }
    return false;
}

int cmd_gen(const FamilyArgs& fa, const std::string& out_path, const std::string& spec_out) {
    BuiltFamily built = build_family(fa);
    write_file(out_path, built.graph.to_text());
    if (built.spec) {
        std::string path = spec_out;
        if (path.empty()) path = out_path == "-" ? "-" : out_path + ".spec.json";
        write_file(path, built.spec->to_json() + "\n");
    } else if (!spec_out.empty()) {
        throw UsageError("--spec-out: family '" + fa.family + "' has no spec");
    }
    return exit_ok;
}

int cmd_extract(const InputArgs& ia, const std::string& target_text,
                const std::string& trace_out, const std::string& result_out,
                const std::string& input_out, std::size_t max_states, bool fast) {
    Target tg = parse_target(target_text);
    BuiltFamily in = load_input(ia);
    if (fast) set_runtime_checks(false);

    Outcome outcome;
    if (in.spec) {
        outcome = OutcomeFlippedGrid{in.graph, *in.spec};
    } else if (ia.fa.family == "kk") {
        outcome = OutcomeKK{static_cast<int>(in.graph.num_active() / 2)};
    } else if (ia.fa.family == "kkbar") {
        outcome = OutcomeKKbar{static_cast<int>(in.graph.num_active() / 2)};
    } else if (ia.fa.family == "kbarkbar") {
        outcome = OutcomeKbarKbar{static_cast<int>(in.graph.num_active() / 2)};
    } else {
        throw UsageError("extract: input must be a flipped grid (graph+spec) or a "
                         "kk/kkbar/kbarkbar family");
    }
    if (tg.kind == Target::Kind::iso) throw UsageError("extract: target must be path:t or kk:t");

    SearchBudget budget;
    budget.max_states = max_states;
    int t = tg.t;
    ExtractResult res = extract_path(outcome, t, budget);
    if (tg.kind == Target::Kind::kk && res.target != ExtractTarget::kk)
        throw Error("extract: this outcome yields a path target, not kk");
    if (tg.kind == Target::Kind::path && res.target != ExtractTarget::path)
        throw Error("extract: this outcome yields a kk target, not a path");

    if (!trace_out.empty()) write_file(trace_out, res.trace.to_json() + "\n");
    if (!result_out.empty()) write_file(result_out, res.graph.to_text());
    if (!input_out.empty()) write_file(input_out, res.input.to_text());
    if (trace_out.empty()) std::cout << res.trace.to_json() << "\n";
    return exit_ok;
}

int cmd_verify(const InputArgs& ia, const std::string& trace_path,
               const std::string& target_text) {
    Target tg = parse_target(target_text);
    BuiltFamily in = load_input(ia);
    PivotTrace trace;
    if (!trace_path.empty()) trace = PivotTrace::from_json(read_file(trace_path));
    Graph end;
    try {
        end = replay(in.graph, trace);
    } catch (const Error& e) {
        std::cerr << "verify: " << e.what() << "\n";
        return exit_domain;
    }
    if (!matches_target(end, tg)) {
        std::cerr << "verify: replayed graph does not match the target\n";
        return exit_domain;
    }
    std::cout << "verified\n";
    return exit_ok;
}

int cmd_replay(const InputArgs& ia, const std::string& trace_path, const std::string& out) {
    BuiltFamily in = load_input(ia);
    PivotTrace trace = PivotTrace::from_json(read_file(trace_path));
    Graph end = replay(in.graph, trace);
    write_file(out.empty() ? "-" : out, end.to_text());
    return exit_ok;
}

int cmd_oracle(const std::string& host_path, const std::string& pattern_path,
               const std::string& mode, std::size_t max_states,
               const std::string& witness_out) {
    Graph host = Graph::from_text(read_file(host_path));
    Graph pattern = Graph::from_text(read_file(pattern_path));
    SearchBudget budget;
    budget.max_states = max_states;
    SearchResult res;
    if (mode == "pivot-minor")
        res = has_pivot_minor(host, pattern, budget);
    else if (mode == "induced")
        res = has_induced_subgraph(host, pattern, budget);
    else
        throw UsageError("--mode must be pivot-minor or induced");
    if (res.status == SearchStatus::unknown) {
        std::cout << "unknown (budget exhausted after " << res.states_explored << " states)\n";
        return exit_budget;
    }
    if (res.status == SearchStatus::no) {
        std::cout << "no (" << res.states_explored << " states)\n";
        return exit_domain;
    }
    std::cout << "yes (" << res.states_explored << " states)\n";
    if (!witness_out.empty()) write_file(witness_out, res.witness->to_json() + "\n");
    return exit_ok;
}

int cmd_rankdepth(const std::string& input_path, std::size_t max_vertices,
                  const std::string& witness_out) {
    Graph g = Graph::from_text(read_file(input_path));
    auto [value, dec] = rank_depth_with_witness(g, max_vertices);
    std::cout << value << "\n";
    if (!witness_out.empty()) write_file(witness_out, dec.to_json() + "\n");
    return exit_ok;
}

int cmd_treemodel_validate(const std::string& input_path, const std::string& model_path) {
    Graph g = Graph::from_text(read_file(input_path));
    TreeModel tm = TreeModel::from_json(read_file(model_path));
    std::string why;
    if (!validate_tree_model(g, tm, &why)) {
        std::cerr << "invalid: " << why << "\n";
        return exit_domain;
    }
    std::cout << "valid\n";
    return exit_ok;
}

int cmd_export(const std::string& input_path, const std::string& format,
               const std::string& out) {
    Graph g = Graph::from_text(read_file(input_path));
    if (format == "dot")
        write_file(out.empty() ? "-" : out, g.to_dot());
    else if (format == "text")
        write_file(out.empty() ? "-" : out, g.to_text());
    else
        throw UsageError("--format must be dot or text");
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pivot calculus toolkit: generate, extract, verify"};
    app.require_subcommand(1);

    FamilyArgs gen_fa;
    std::string gen_out = "-", gen_spec_out;
    auto* gen = app.add_subcommand("gen", "generate a graph family");
    add_family_flags(gen, gen_fa, true);
    gen->add_option("--out", gen_out, "graph output file (- for stdout)");
    gen->add_option("--spec-out", gen_spec_out, "flip spec output (flipped-grid)");

    InputArgs ex_in;
    std::string ex_target, ex_trace_out, ex_result_out, ex_input_out;
    std::size_t ex_max_states = 1'000'000;
    bool ex_fast = false;
    auto* extract = app.add_subcommand("extract", "run a reduction pipeline, emit a trace");
    add_input_flags(extract, ex_in);
    extract->add_option("--target", ex_target, "path:t or kk:t")->required();
    extract->add_option("--trace-out", ex_trace_out, "trace JSON output");
    extract->add_option("--result-out", ex_result_out, "final graph output");
    extract->add_option("--input-out", ex_input_out, "materialized input graph output");
    extract->add_option("--max-states", ex_max_states, "oracle budget");
    extract->add_flag("--fast", ex_fast, "skip expensive mid-pipeline self checks");

    InputArgs ver_in;
    std::string ver_trace, ver_target;
    auto* verify = app.add_subcommand("verify", "replay a trace and check the target");
    add_input_flags(verify, ver_in);
    verify->add_option("--trace", ver_trace, "trace JSON (omit for the empty trace)");
    verify->add_option("--target", ver_target, "path:t, kk:t, or iso:file")->required();

    InputArgs rep_in;
    std::string rep_trace, rep_out;
    auto* rep = app.add_subcommand("replay", "replay a trace, print the resulting graph");
    add_input_flags(rep, rep_in);
    rep->add_option("--trace", rep_trace, "trace JSON")->required();
    rep->add_option("--out", rep_out, "output file");

    std::string or_host, or_pattern, or_mode = "pivot-minor", or_witness;
    std::size_t or_max_states = 1'000'000;
    auto* oracle = app.add_subcommand("oracle", "brute-force containment search");
    auto* contains = oracle->add_subcommand("contains", "search for a pattern in a host");
    contains->add_option("--host", or_host)->required();
    contains->add_option("--pattern", or_pattern)->required();
    contains->add_option("--mode", or_mode, "pivot-minor or induced");
    contains->add_option("--max-states", or_max_states);
    contains->add_option("--witness-out", or_witness);
    oracle->require_subcommand(1);

    std::string rd_input, rd_witness;
    std::size_t rd_max = 8;
    auto* rankdepth = app.add_subcommand("rankdepth", "exact rank-depth of a small graph");
    rankdepth->add_option("--input", rd_input)->required();
    rankdepth->add_option("--max-vertices", rd_max);
    rankdepth->add_option("--witness-out", rd_witness, "decomposition JSON");

    std::string tm_input, tm_model;
    auto* tmv = app.add_subcommand("treemodel-validate", "check a (d,m)-tree-model");
    tmv->add_option("--input", tm_input)->required();
    tmv->add_option("--model", tm_model)->required();

    std::string ex_input, ex_format = "dot", ex_out;
    auto* exp = app.add_subcommand("export", "write a graph in another format");
    exp->add_option("--input", ex_input)->required();
    exp->add_option("--format", ex_format, "dot or text");
    exp->add_option("--out", ex_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_fa, gen_out, gen_spec_out);
        if (extract->parsed())
            return cmd_extract(ex_in, ex_target, ex_trace_out, ex_result_out, ex_input_out,
                               ex_max_states, ex_fast);
        if (verify->parsed()) return cmd_verify(ver_in, ver_trace, ver_target);
        if (rep->parsed()) return cmd_replay(rep_in, rep_trace, rep_out);
        if (oracle->parsed())
            return cmd_oracle(or_host, or_pattern, or_mode, or_max_states, or_witness);
        if (rankdepth->parsed()) return cmd_rankdepth(rd_input, rd_max, rd_witness);
        if (tmv->parsed()) return cmd_treemodel_validate(tm_input, tm_model);
        if (exp->parsed()) return cmd_export(ex_input, ex_format, ex_out);
        return exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const BudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return exit_budget;
    } catch (const SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << "\n";
        return exit_domain;
    } catch (const InternalError& e) {
        std::cerr << "internal invariant failed: " << e.what() << "\n";
        return exit_domain;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    }
}
