#include "pmc/extract.hpp"

#include <algorithm>
#include <map>

#include "pmc/families.hpp"
#include "pmc/gf2.hpp"

namespace pmc {

namespace {

RowCol label_of(const Graph& g, VertexId v) {
    auto rc = g.label(v);
    PMC_CHECK(rc.has_value(), "extract: vertex " + std::to_string(v) + " has no grid label");
    return *rc;
}

std::map<std::pair<int, int>, VertexId> position_index(const Graph& g) {
    std::map<std::pair<int, int>, VertexId> idx;
    for (VertexId v : g.vertices()) {
        auto rc = label_of(g, v);
        PMC_CHECK(idx.emplace(std::make_pair(rc.row, rc.col), v).second,
                  "extract: duplicate grid position");
    }
    return idx;
}

VertexId vertex_at(const std::map<std::pair<int, int>, VertexId>& idx, int row, int col) {
    auto it = idx.find({row, col});
    PMC_CHECK(it != idx.end(), "extract: no vertex at row " + std::to_string(row) + ", col " +
                                   std::to_string(col));
    return it->second;
}

void delete_rows_above(Graph& g, PivotTrace& trace, int keep_max_row) {
    for (VertexId v : g.vertices())
        if (label_of(g, v).row > keep_max_row) {
            g.apply_delete(v);
            trace.del(v);
        }
}

int min_col_of_class(const FlipSpec& spec, int cls) { return spec.classes[cls].front(); }

void check_flip_claim(const Graph& g, const FlipSpec& spec, const char* where) {
    if (!runtime_checks()) return;
    PMC_INTERNAL(is_flip_of(g, spec),
                 std::string(where) + ": claimed flip structure does not match the graph");
}

void check_replay(const Graph& input, const Graph& out, const PivotTrace& trace,
                  const char* where) {
    if (!runtime_checks()) return;
    PMC_INTERNAL(replay(input, trace) == out,
                 std::string(where) + ": trace does not replay to the claimed graph");
}

// g is exactly the path along order (edge set included)
bool path_along(const Graph& g, const std::vector<VertexId>& order) {
    if (g.num_active() != order.size()) return false;
    for (VertexId v : order)
        if (!g.is_active(v)) return false;
    if (order.size() <= 1) return true;
    if (g.num_edges() != order.size() - 1) return false;
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        if (!g.has_edge(order[i], order[i + 1])) return false;
    return true;
}

// g is the x-flip of the path along order
bool x_flip_along(const Graph& g, const std::vector<VertexId>& order, const BitRow& x) {
    Graph h = g;
    h.apply_toggle_within(x);
    return path_along(h, order);
}

std::vector<std::size_t> x_positions(const std::vector<VertexId>& order, const BitRow& x) {
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i)
        if (x.test(order[i])) pos.push_back(i);
    return pos;
}

bool contiguous(const std::vector<std::size_t>& pos) {
    for (std::size_t i = 0; i + 1 < pos.size(); ++i)
        if (pos[i + 1] != pos[i] + 1) return false;
    return true;
}

} // namespace

std::pair<VertexId, VertexId> find_cross_edge(const Graph& g, const FlipSpec& spec, int x,
                                              int xp, int row_a, int row_b) {
    int k = static_cast<int>(spec.classes.size());
    PMC_CHECK(x >= 0 && x < k && xp >= 0 && xp < k, "find_cross_edge: unknown class");
    PMC_CHECK(spec.has_pair(x, xp), "find_cross_edge: (x, xp) is not in the pair set");
    PMC_CHECK(row_a >= 1 && row_b >= 1 && row_a <= spec.m && row_b <= spec.m && row_a != row_b,
              "find_cross_edge: bad rows");
    auto idx = position_index(g);
    VertexId u = vertex_at(idx, row_a, min_col_of_class(spec, x));
    VertexId v = vertex_at(idx, row_b, min_col_of_class(spec, xp));
    PMC_INTERNAL(g.has_edge(u, v), "find_cross_edge: guaranteed cross edge is missing");
    return {u, v};
}

ReductionResult case1_reduce(const Graph& g, const FlipSpec& spec, int x) {
    int k = static_cast<int>(spec.classes.size());
    PMC_CHECK(k >= 2, "case1: need at least two classes");
    PMC_CHECK(spec.m >= 3, "case1: need at least three rows");
    PMC_CHECK(x >= 0 && x < k, "case1: unknown class");
    PMC_CHECK(!spec.has_pair(x, x), "case1: class must lack its diagonal pair");
    check_flip_claim(g, spec, "case1 input");

    ReductionResult out;
    int x1 = -1;
    for (int z = 0; z < k; ++z)
        if (z != x && spec.has_pair(x, z)) {
            x1 = z;
            break;
        }
    if (x1 < 0) {
        // x is inert: the same graph is a flip without it
        out.graph = g;
        out.spec = drop_class(spec, x);
        check_flip_claim(out.graph, *out.spec, "case1 inert");
        return out;
    }
    auto [u, v] = find_cross_edge(g, spec, x, x1, spec.m - 1, spec.m);
    Graph gg = g.pivoted(u, v);
    out.trace.pivot(u, v);
    delete_rows_above(gg, out.trace, spec.m - 2);

    FlipSpec predicted = predict_flip_after_pivot(spec, x, x1, spec.m - 2);
    for (auto [a, b] : predicted.pairs)
        PMC_INTERNAL(a != x && b != x, "case1: a pair still mentions the dropped class");
    out.spec = drop_class(predicted, x);
    out.graph = std::move(gg);
    PMC_INTERNAL(out.spec->num_classes() + 1 == spec.num_classes(),
                 "case1: must drop exactly one class");
    check_flip_claim(out.graph, *out.spec, "case1 output");
    check_replay(g, out.graph, out.trace, "case1");
    return out;
}

ReductionResult case2_reduce(const Graph& g, const FlipSpec& spec, int x, int xp,
                             const std::vector<VertexId>& q) {
    int k = static_cast<int>(spec.classes.size());
    PMC_CHECK(k >= 2, "case2: need at least two classes");
    PMC_CHECK(spec.m >= 3, "case2: need at least three rows");
    PMC_CHECK(x >= 0 && x < k && xp >= 0 && xp < k && x != xp, "case2: need distinct classes");
    PMC_CHECK(spec.has_pair(x, x) && spec.has_pair(xp, xp) && !spec.has_pair(x, xp),
              "case2: needs both diagonals and no cross pair");
    check_flip_claim(g, spec, "case2 input");

    // validate q: one row, consecutive columns, covered only at the ends
    PMC_CHECK(q.size() >= 2, "case2: q needs at least two vertices");
    int row = label_of(g, q.front()).row;
    for (std::size_t i = 0; i < q.size(); ++i) {
        auto rc = label_of(g, q[i]);
        PMC_CHECK(rc.row == row, "case2: q must stay in one row");
        PMC_CHECK(rc.col == label_of(g, q.front()).col + static_cast<int>(i),
                  "case2: q columns must be consecutive");
        int cls = spec.class_of_column(rc.col);
        if (i == 0)
            PMC_CHECK(cls == x, "case2: q must start in class x");
        else if (i + 1 == q.size())
            PMC_CHECK(cls == xp, "case2: q must end in class xp");
        else
            PMC_CHECK(cls < 0, "case2: interior of q must be uncovered");
        if (i > 0) PMC_CHECK(g.has_edge(q[i - 1], q[i]), "case2: q is not a path in g");
    }

    // mirror q into the last row; class membership is column-determined, so
    // the mirrored vertices form the same kind of path
    auto idx = position_index(g);
    int last = spec.m;
    std::vector<VertexId> qm;
    qm.reserve(q.size());
    for (VertexId v : q) qm.push_back(vertex_at(idx, last, label_of(g, v).col));

    ReductionResult out;
    Graph gg = g;
    while (qm.size() >= 4) {
        VertexId u = qm[1], v = qm[2];
        gg = shorten_degree_two(gg, u, v);
        out.trace.pivot(u, v);
        out.trace.del(u);
        out.trace.del(v);
        qm.erase(qm.begin() + 1, qm.begin() + 3);
    }
    if (qm.size() == 2) {
        gg.apply_pivot(qm[0], qm[1]);
        out.trace.pivot(qm[0], qm[1]);
        delete_rows_above(gg, out.trace, last - 2);
    } else {
        VertexId u1 = qm[0], u2 = qm[1], u3 = qm[2];
        gg.apply_pivot(u1, u2);
        out.trace.pivot(u1, u2);
        for (VertexId v : gg.vertices())
            if (v != u3 && label_of(gg, v).row == last) {
                gg.apply_delete(v);
                out.trace.del(v);
            }
        VertexId u1p = vertex_at(idx, last - 1, label_of(g, u1).col);
        gg.apply_pivot(u1p, u3);
        out.trace.pivot(u1p, u3);
        delete_rows_above(gg, out.trace, last - 2);
    }

    // merged pair set, built on F xor D so bystander toggles are kept
    auto fd = spec.pairs;
    for (auto& p : d_set(spec, x, xp)) {
        if (!fd.erase(p)) fd.insert(p);
    }
    auto in_fd = [&](int a, int b) {
        return fd.count({std::min(a, b), std::max(a, b)}) > 0;
    };
    PMC_INTERNAL(in_fd(x, x) && in_fd(xp, xp) && in_fd(x, xp),
                 "case2: merge requires all three pairs on x, xp after the toggle");
    std::vector<bool> keep_with(k, false);
    for (int z = 0; z < k; ++z) {
        if (z == x || z == xp) continue;
        PMC_INTERNAL(in_fd(x, z) == in_fd(xp, z),
                     "case2: x and xp must agree on every other class after the toggle");
        keep_with[z] = in_fd(x, z);
    }
    FlipSpec merged = merge_classes(spec, x, xp, fd, keep_with);
    out.spec = restrict_flip(merged, spec.m - 2);
    out.graph = std::move(gg);
    PMC_INTERNAL(out.spec->num_classes() + 1 == spec.num_classes(),
                 "case2: must merge exactly one class away");
    check_flip_claim(out.graph, *out.spec, "case2 output");
    check_replay(g, out.graph, out.trace, "case2");
    return out;
}

ReductionResult cor_reduce(const Graph& g, const FlipSpec& spec) {
    int k = static_cast<int>(spec.classes.size());
    PMC_CHECK(k >= 2, "cor_reduce: need at least two classes");
    PMC_CHECK(spec.m >= 5, "cor_reduce: need at least five rows");
    int target_m = spec.m - 4;

    // (a) some class without its diagonal pair
    for (int x = 0; x < k; ++x) {
        if (spec.has_pair(x, x)) continue;
        ReductionResult r = case1_reduce(g, spec, x);
        delete_rows_above(r.graph, r.trace, target_m);
        r.spec = restrict_flip(*r.spec, target_m);
        check_flip_claim(r.graph, *r.spec, "cor (a) output");
        check_replay(g, r.graph, r.trace, "cor (a)");
        return r;
    }

    // leftmost shortest first-row path between consecutive covered columns
    // of distinct classes
    int best_start = -1, best_end = -1, x1 = -1, x2 = -1;
    {
        int prev_col = -1, prev_cls = -1;
        for (int col = 1; col <= spec.n; ++col) {
            int cls = spec.class_of_column(col);
            if (cls < 0) continue;
            if (prev_cls >= 0 && cls != prev_cls) {
                if (best_start < 0 || col - prev_col < best_end - best_start) {
                    best_start = prev_col;
                    best_end = col;
                    x1 = prev_cls;
                    x2 = cls;
                }
            }
            prev_col = col;
            prev_cls = cls;
        }
    }
    PMC_INTERNAL(best_start >= 1, "cor_reduce: no class boundary found with k >= 2");
    auto idx = position_index(g);
    std::vector<VertexId> q;
    for (int col = best_start; col <= best_end; ++col) q.push_back(vertex_at(idx, 1, col));

    // (b) boundary classes lack their cross pair
    if (!spec.has_pair(x1, x2)) {
        ReductionResult r = case2_reduce(g, spec, x1, x2, q);
        delete_rows_above(r.graph, r.trace, target_m);
        r.spec = restrict_flip(*r.spec, target_m);
        check_flip_claim(r.graph, *r.spec, "cor (b) output");
        check_replay(g, r.graph, r.trace, "cor (b)");
        return r;
    }

    // (c) x1 and x2 agree on every class: merge without pivoting
    auto clr = flip_classes_clr(spec, x1, x2);
    if (clr.l.empty() && clr.r.empty()) {
        std::vector<bool> keep_with(k, false);
        for (int z = 0; z < k; ++z)
            if (z != x1 && z != x2) keep_with[z] = spec.has_pair(x1, z);
        ReductionResult r;
        r.graph = g;
        delete_rows_above(r.graph, r.trace, target_m);
        r.spec = restrict_flip(merge_classes(spec, x1, x2, spec.pairs, keep_with), target_m);
        PMC_INTERNAL(r.spec->num_classes() + 1 == spec.num_classes(),
                     "cor (c): must merge exactly one class away");
        check_flip_claim(r.graph, *r.spec, "cor (c) output");
        check_replay(g, r.graph, r.trace, "cor (c)");
        return r;
    }

    // (d) pivot a cross edge into a third class, then the boundary pair
    // loses its cross pair and case2 applies
    int a2, x3;
    if (!clr.r.empty()) {
        a2 = x2;
        x3 = clr.r.front();
    } else {
        a2 = x1;
        x3 = clr.l.front();
    }
    auto [u, v] = find_cross_edge(g, spec, a2, x3, spec.m - 1, spec.m);
    ReductionResult r;
    r.graph = g.pivoted(u, v);
    r.trace.pivot(u, v);
    delete_rows_above(r.graph, r.trace, spec.m - 2);
    FlipSpec spec2 = predict_flip_after_pivot(spec, a2, x3, spec.m - 2);
    PMC_INTERNAL(!spec2.has_pair(x1, x2), "cor (d): pivot must remove the boundary cross pair");
    PMC_INTERNAL(spec2.has_pair(x1, x1) && spec2.has_pair(x2, x2),
                 "cor (d): pivot must keep both boundary diagonals");
    check_flip_claim(r.graph, spec2, "cor (d) intermediate");
    ReductionResult r2 = case2_reduce(r.graph, spec2, x1, x2, q);
    r.trace.append(r2.trace);
    r.graph = std::move(r2.graph);
    r.spec = std::move(r2.spec);
    PMC_INTERNAL(r.spec.value().m == target_m, "cor (d): row budget mismatch");
    check_replay(g, r.graph, r.trace, "cor (d)");
    return r;
}

PathReduction to_one_flip(const Graph& g, const FlipSpec& spec) {
    int k = static_cast<int>(spec.classes.size());
    PMC_CHECK(spec.m >= (k >= 1 ? 4 * (k - 1) + 1 : 1), "to_one_flip: not enough rows");
    check_flip_claim(g, spec, "to_one_flip input");

    Graph cur = g;
    FlipSpec cur_spec = spec;
    PathReduction out;
    std::size_t rounds = 0;
    while (cur_spec.num_classes() >= 2) {
        ReductionResult r = cor_reduce(cur, cur_spec);
        cur = std::move(r.graph);
        cur_spec = std::move(*r.spec);
        out.trace.append(r.trace);
        PMC_INTERNAL(++rounds < spec.num_classes(), "to_one_flip: too many reduction rounds");
    }
    delete_rows_above(cur, out.trace, 1);
    cur_spec = restrict_flip(cur_spec, 1);

    auto idx = position_index(cur);
    out.order.reserve(cur_spec.n);
    for (int col = 1; col <= cur_spec.n; ++col) out.order.push_back(vertex_at(idx, 1, col));
    out.x = BitRow(cur.capacity());
    if (cur_spec.num_classes() == 1 && cur_spec.has_pair(0, 0))
        for (int col : cur_spec.classes[0]) out.x.set(vertex_at(idx, 1, col));
    PMC_INTERNAL(x_flip_along(cur, out.order, out.x),
                 "to_one_flip: result is not the claimed flip of a path");
    if (runtime_checks() && cur.num_active() <= 12)
        PMC_INTERNAL(recognize_one_flip_of_path(cur).has_value(),
                     "to_one_flip: recognizer disagrees on a small instance");
    check_replay(g, cur, out.trace, "to_one_flip");
    out.graph = std::move(cur);
    return out;
}

PathReduction pivot_far_pair(const Graph& g, const std::vector<VertexId>& p, const BitRow& x,
                             VertexId a, VertexId b) {
    PMC_CHECK(x.test(a) && x.test(b), "pivot_far_pair: both ends must be flipped");
    auto find_pos = [&](VertexId v) {
        auto it = std::find(p.begin(), p.end(), v);
        PMC_CHECK(it != p.end(), "pivot_far_pair: vertex not on the path");
        return static_cast<std::size_t>(it - p.begin());
    };
    std::size_t ia = find_pos(a), ib = find_pos(b);
    if (ia > ib) {
        std::swap(ia, ib);
        std::swap(a, b);
    }
    PMC_CHECK(ib - ia >= 3, "pivot_far_pair: closed path neighborhoods must be disjoint");

    PathReduction out;
    out.graph = g.pivoted(a, b);
    out.trace.pivot(a, b);
    out.graph.apply_delete(a);
    out.trace.del(a);
    out.graph.apply_delete(b);
    out.trace.del(b);

    out.x = x;
    auto toggle_at = [&](std::size_t i) {
        out.x.assign(p[i], !out.x.test(p[i]));
    };
    if (ia > 0) toggle_at(ia - 1);
    toggle_at(ia);
    toggle_at(ia + 1);
    toggle_at(ib - 1);
    toggle_at(ib);
    if (ib + 1 < p.size()) toggle_at(ib + 1);

    out.order = p;
    out.order.erase(out.order.begin() + ib);
    out.order.erase(out.order.begin() + ia);
    PMC_INTERNAL(x_flip_along(out.graph, out.order, out.x),
                 "pivot_far_pair: result is not the predicted flip of the contracted path");
    return out;
}

PathReduction shrink_flipped_block(const Graph& g, const std::vector<VertexId>& p,
                                   const BitRow& x) {
    auto pos = x_positions(p, x);
    PMC_CHECK(pos.size() >= 6, "shrink_flipped_block: block must have at least six vertices");
    PMC_CHECK(contiguous(pos), "shrink_flipped_block: flipped set must be one block");
    std::size_t b = pos.front(), t = pos.size();
    PathReduction out = pivot_far_pair(g, p, x, p[b + 1], p[b + t - 2]);
    auto pos2 = x_positions(out.order, out.x);
    PMC_INTERNAL(pos2.size() == t - 6 && contiguous(pos2) &&
                     (pos2.empty() || pos2.front() == b + 2),
                 "shrink_flipped_block: block did not contract as predicted");
    return out;
}

PathReduction path_from_complement(const Graph& g, const std::vector<VertexId>& p, int t) {
    int s = static_cast<int>(p.size());
    PMC_CHECK(t >= 1, "path_from_complement: need t >= 1");
    PMC_CHECK(s >= (3 * t + 1) / 2 + 1, "path_from_complement: s below the 3t/2 + 1 bound");

    PathReduction out;
    out.graph = g;
    out.order = p;
    BitRow all(g.capacity());
    for (VertexId v : p) all.set(v);
    PMC_CHECK(x_flip_along(out.graph, out.order, all),
              "path_from_complement: input is not the complement of the given path");

    int r = s % 6;
    if (r == 2 || r == 5) {
        // complements of paths are closed under deleting a base-path end
        VertexId v = out.order.back();
        out.graph.apply_delete(v);
        out.trace.del(v);
        out.order.pop_back();
        all.reset(v);
    }
    BitRow x = all;
    while (x.count() >= 6) {
        PathReduction step = shrink_flipped_block(out.graph, out.order, x);
        out.graph = std::move(step.graph);
        out.order = std::move(step.order);
        x = std::move(step.x);
        out.trace.append(step.trace);
    }
    auto pos = x_positions(out.order, x);
    std::size_t bs = pos.size();
    PMC_INTERNAL(bs == 0 || bs == 1 || bs == 3 || bs == 4,
                 "path_from_complement: unexpected residue block");
    if (bs == 3) {
        VertexId y = out.order[pos[1]];
        PMC_INTERNAL(out.graph.degree(y) == 0, "path_from_complement: middle vertex not isolated");
        out.graph.apply_delete(y);
        out.trace.del(y);
        out.order.erase(out.order.begin() + pos[1]);
    } else if (bs == 4) {
        for (std::size_t off = 0; off < 2; ++off) {
            VertexId y = out.order[pos[1]]; // positions shift after the first erase
            out.graph.apply_delete(y);
            out.trace.del(y);
            out.order.erase(out.order.begin() + pos[1]);
        }
    }
    PMC_INTERNAL(path_along(out.graph, out.order),
                 "path_from_complement: residue cleanup did not leave a path");
    PMC_INTERNAL(out.order.size() >= static_cast<std::size_t>(t),
                 "path_from_complement: reduced path shorter than t");
    while (out.order.size() > static_cast<std::size_t>(t)) {
        VertexId v = out.order[t]; // keep deleting right after the kept prefix
        out.graph.apply_delete(v);
        out.trace.del(v);
        out.order.erase(out.order.begin() + t);
    }
    out.x = BitRow(out.graph.capacity());
    PMC_INTERNAL(path_along(out.graph, out.order), "path_from_complement: final graph not P_t");
    return out;
}

PathReduction reduce_big_flip(const Graph& g, const std::vector<VertexId>& p, const BitRow& x,
                              int ell, int m) {
    PMC_CHECK(ell >= 1 && m >= 0, "reduce_big_flip: need ell >= 1 and m >= 0");
    PathReduction out;
    out.graph = g;
    out.order = p;
    out.x = x;
    PMC_CHECK(x_flip_along(out.graph, out.order, out.x),
              "reduce_big_flip: input is not the claimed flip of the path");

    for (;;) {
        std::size_t n = out.order.size();
        std::size_t xcount = out.x.count();
        PMC_INTERNAL(xcount >= static_cast<std::size_t>(ell + 4 * m),
                     "reduce_big_flip: size invariant broken");
        for (int i = 0; i < ell; ++i)
            PMC_INTERNAL(out.x.test(out.order[i]), "reduce_big_flip: prefix invariant broken");

        // (i) done: an all-flipped consecutive block is a complement of a path
        if (m == 0 || xcount == out.graph.num_active()) {
            std::size_t keep = static_cast<std::size_t>(ell + m);
            PMC_INTERNAL(keep <= n, "reduce_big_flip: not enough vertices to keep");
            while (out.order.size() > keep) {
                VertexId v = out.order.back();
                PMC_INTERNAL(out.x.test(out.order[keep - 1]),
                             "reduce_big_flip: kept prefix must stay flipped");
                out.graph.apply_delete(v);
                out.trace.del(v);
                out.x.reset(v);
                out.order.pop_back();
            }
            BitRow kept(out.graph.capacity());
            for (VertexId v : out.order) {
                PMC_INTERNAL(out.x.test(v), "reduce_big_flip: kept vertex not flipped");
                kept.set(v);
            }
            out.x = kept;
            PMC_INTERNAL(x_flip_along(out.graph, out.order, out.x),
                         "reduce_big_flip: result is not a complement of a path");
            return out;
        }
        // (ii) drop an unflipped back end
        if (!out.x.test(out.order.back())) {
            VertexId v = out.order.back();
            out.graph.apply_delete(v);
            out.trace.del(v);
            out.order.pop_back();
            continue;
        }
        // (iii) shorten the leftmost two consecutive unflipped vertices
        bool shortened = false;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            if (out.x.test(out.order[j]) || out.x.test(out.order[j + 1])) continue;
            VertexId u = out.order[j], v = out.order[j + 1];
            out.graph = shorten_degree_two(out.graph, u, v);
            out.trace.pivot(u, v);
            out.trace.del(u);
            out.trace.del(v);
            out.order.erase(out.order.begin() + j, out.order.begin() + j + 2);
            shortened = true;
            break;
        }
        if (shortened) continue;
        // j: first unflipped position; exists because x != V here
        std::size_t j = 0;
        while (j < n && out.x.test(out.order[j])) ++j;
        PMC_INTERNAL(j >= static_cast<std::size_t>(ell) && j < n,
                     "reduce_big_flip: prefix scan out of bounds");
        if (j > static_cast<std::size_t>(ell)) {
            // (iv) the flipped prefix is already longer
            ++ell;
            --m;
            continue;
        }
        // (v) pivot the vertex after the gap against the far end
        PMC_INTERNAL(n >= static_cast<std::size_t>(ell) + 5,
                     "reduce_big_flip: too few vertices for the far pivot");
        VertexId a = out.order[j + 1], b = out.order.back();
        PMC_INTERNAL(out.x.test(a), "reduce_big_flip: no two consecutive unflipped vertices left");
        PathReduction step = pivot_far_pair(out.graph, out.order, out.x, a, b);
        out.graph = std::move(step.graph);
        out.order = std::move(step.order);
        out.x = std::move(step.x);
        out.trace.append(step.trace);
        ++ell;
        --m;
    }
}

PathReduction flip_to_complement(const Graph& g, const std::vector<VertexId>& p, const BitRow& x,
                                 int t) {
    PMC_CHECK(t >= 1, "flip_to_complement: need t >= 1");
    PMC_CHECK(x.count() >= static_cast<std::size_t>(4 * t - 3),
              "flip_to_complement: flipped set below 4t-3");
    auto pos = x_positions(p, x);
    PathReduction out;
    out.graph = g;
    out.order = p;
    out.x = x;
    PMC_CHECK(x_flip_along(out.graph, out.order, out.x),
              "flip_to_complement: input is not the claimed flip of the path");
    // trim so both path ends are flipped
    for (std::size_t i = 0; i < pos.front(); ++i) {
        out.graph.apply_delete(p[i]);
        out.trace.del(p[i]);
    }
    for (std::size_t i = pos.back() + 1; i < p.size(); ++i) {
        out.graph.apply_delete(p[i]);
        out.trace.del(p[i]);
    }
    out.order.assign(p.begin() + pos.front(), p.begin() + pos.back() + 1);
    PathReduction inner = reduce_big_flip(out.graph, out.order, out.x, 1, t - 1);
    out.graph = std::move(inner.graph);
    out.order = std::move(inner.order);
    out.x = std::move(inner.x);
    out.trace.append(inner.trace);
    PMC_INTERNAL(out.order.size() == static_cast<std::size_t>(t),
                 "flip_to_complement: wrong result size");
    return out;
}

PathReduction one_flip_to_path(const Graph& g, const std::vector<VertexId>& p, const BitRow& x,
                               int t) {
    PMC_CHECK(t >= 1, "one_flip_to_path: need t >= 1");
    std::size_t n = p.size();
    PMC_CHECK(n >= static_cast<std::size_t>(3 * (2 * t * t - t - 1)),
              "one_flip_to_path: n below 3(2t^2 - t - 1)");
    PMC_CHECK(x_flip_along(g, p, x), "one_flip_to_path: input is not the claimed flip");

    PathReduction out;
    auto finish = [&](PathReduction&& r) {
        PMC_INTERNAL(r.order.size() == static_cast<std::size_t>(t) &&
                         path_along(r.graph, r.order),
                     "one_flip_to_path: final graph is not P_t");
        check_replay(g, r.graph, r.trace, "one_flip_to_path");
        return std::move(r);
    };

    if (t == 1) {
        out.graph = g;
        out.order = {p[0]};
        for (std::size_t i = 1; i < n; ++i) {
            out.graph.apply_delete(p[i]);
            out.trace.del(p[i]);
        }
        out.x = BitRow(out.graph.capacity());
        return finish(std::move(out));
    }

    if (x.count() >= static_cast<std::size_t>(6 * t + 3)) {
        int s = (3 * t + 1) / 2 + 1;
        PMC_INTERNAL(4 * s - 3 <= 6 * t + 3, "one_flip_to_path: 4s-3 exceeds 6t+3");
        PathReduction comp = flip_to_complement(g, p, x, s);
        PathReduction fin = path_from_complement(comp.graph, comp.order, t);
        comp.trace.append(fin.trace);
        fin.trace = std::move(comp.trace);
        return finish(std::move(fin));
    }

    // few flipped vertices: some maximal unflipped run is long enough
    std::size_t best_start = n, best_len = 0;
    for (std::size_t i = 0; i < n;) {
        if (x.test(p[i])) {
            ++i;
            continue;
        }
        std::size_t jend = i;
        while (jend < n && !x.test(p[jend])) ++jend;
        if (jend - i >= static_cast<std::size_t>(t - 1)) {
            best_start = i;
            best_len = jend - i;
            break; // leftmost suffices
        }
        i = jend;
    }
    if (best_start == n) {
        throw Error("one_flip_to_path: no unflipped run of length t-1; |x| = " +
                    std::to_string(x.count()) + " < 6t+3 and n = " + std::to_string(n) +
                    " >= 3(2t^2-t-1) make this impossible");
    }
    std::vector<VertexId> keep;
    if (best_len >= static_cast<std::size_t>(t)) {
        keep.assign(p.begin() + best_start, p.begin() + best_start + t);
    } else if (best_start > 0) {
        keep.assign(p.begin() + best_start - 1, p.begin() + best_start + t - 1);
    } else {
        keep.assign(p.begin(), p.begin() + t); // run starts the path; extend right
        PMC_INTERNAL(x.test(p[t - 1]), "one_flip_to_path: extension vertex must be flipped");
    }
    BitRow keep_bits(g.capacity());
    for (VertexId v : keep) keep_bits.set(v);
    out.graph = g;
    for (VertexId v : g.vertices())
        if (!keep_bits.test(v)) {
            out.graph.apply_delete(v);
            out.trace.del(v);
        }
    out.order = std::move(keep);
    out.x = BitRow(out.graph.capacity());
    return finish(std::move(out));
}

namespace {

ExtractResult extract_kk(int s, int t) {
    PMC_CHECK(s >= t, "extract: kk outcome needs s >= t");
    ExtractResult res;
    res.target = ExtractTarget::kk;
    res.t = t;
    res.input = tri_family(TriKind::kk, s);
    res.graph = res.input;
    for (int i = t; i < s; ++i) {
        res.graph.apply_delete(static_cast<VertexId>(i));
        res.trace.del(static_cast<VertexId>(i));
        res.graph.apply_delete(static_cast<VertexId>(s + i));
        res.trace.del(static_cast<VertexId>(s + i));
    }
    PMC_INTERNAL(find_isomorphism(res.graph, tri_family(TriKind::kk, t)).has_value(),
                 "extract: kept index pattern is not K_t half-joined K_t");
    return res;
}

ExtractResult extract_oracle_family(TriKind kind, int s, int t, SearchBudget budget) {
    ExtractResult res;
    res.target = ExtractTarget::path;
    res.t = t;
    res.input = tri_family(kind, s);
    res.graph = res.input;
    int tp = kind == TriKind::kkbar ? std::max(1, t - 1) : std::min(s, t);
    if (kind == TriKind::kbarkbar)
        PMC_CHECK(2 * tp >= t, "extract: kbarkbar outcome needs s >= t/2");
    PMC_CHECK(s >= tp, "extract: outcome too small for the reduced side");
    for (int i = tp; i < s; ++i) {
        res.graph.apply_delete(static_cast<VertexId>(i));
        res.trace.del(static_cast<VertexId>(i));
        res.graph.apply_delete(static_cast<VertexId>(s + i));
        res.trace.del(static_cast<VertexId>(s + i));
    }
    SearchResult found = has_pivot_minor(res.graph, path_graph(static_cast<std::size_t>(t)),
                                         budget);
    if (found.status == SearchStatus::unknown)
        throw BudgetError("extract: oracle budget exhausted before finding P_t");
    PMC_INTERNAL(found.status == SearchStatus::yes,
                 "extract: oracle found no P_t pivot-minor in the reduced outcome");
    res.graph = replay(res.graph, *found.witness);
    res.trace.append(*found.witness);
    PMC_INTERNAL(is_isomorphic(res.graph, path_graph(static_cast<std::size_t>(t))),
                 "extract: oracle witness does not end in P_t");
    return res;
}

} // namespace

ExtractResult extract_path(const Outcome& outcome, int t, SearchBudget oracle_budget) {
    PMC_CHECK(t >= 1, "extract: need t >= 1");
    if (auto* kk = std::get_if<OutcomeKK>(&outcome)) return extract_kk(kk->s, t);
    if (auto* kb = std::get_if<OutcomeKKbar>(&outcome)) {
        PMC_CHECK(t <= 5, "extract: kkbar oracle branch is guarded at t <= 5");
        return extract_oracle_family(TriKind::kkbar, kb->s, t, oracle_budget);
    }
    if (auto* bb = std::get_if<OutcomeKbarKbar>(&outcome)) {
        PMC_CHECK(t <= 3, "extract: kbarkbar oracle branch is guarded at t <= 3");
        return extract_oracle_family(TriKind::kbarkbar, bb->s, t, oracle_budget);
    }
    const auto& fg = std::get<OutcomeFlippedGrid>(outcome);
    int n = 3 * (2 * t * t - t - 1);
    int rows = 4 * n - 3;
    PMC_CHECK(fg.spec.m >= rows && fg.spec.n >= n,
              "extract: flipped grid smaller than the pipeline needs");
    PMC_CHECK(is_flip_of(fg.g, fg.spec), "extract: input graph is not the claimed flip");

    ExtractResult res;
    res.target = ExtractTarget::path;
    res.t = t;
    res.input = fg.g;
    res.graph = fg.g;
    for (VertexId v : res.graph.vertices()) {
        auto rc = res.graph.label(v);
        PMC_CHECK(rc.has_value(), "extract: unlabeled vertex in a flipped grid");
        if (rc->row > rows || rc->col > n) {
            res.graph.apply_delete(v);
            res.trace.del(v);
        }
    }
    FlipSpec spec = restrict_columns(restrict_flip(fg.spec, rows), n);
    PMC_CHECK(static_cast<int>(spec.num_classes()) <= n,
              "extract: more classes than columns after restriction");
    check_flip_claim(res.graph, spec, "extract restriction");

    PathReduction one = to_one_flip(res.graph, spec);
    PathReduction fin = one_flip_to_path(one.graph, one.order, one.x, t);
    res.graph = std::move(fin.graph);
    res.trace.append(one.trace);
    res.trace.append(fin.trace);
    check_replay(res.input, res.graph, res.trace, "extract");
    return res;
}

} // namespace pmc
