#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "pmc/graph.hpp"

namespace pmc {

struct PivotStep {
    VertexId u = 0, v = 0;
    friend bool operator==(const PivotStep&, const PivotStep&) = default;
};
struct DeleteStep {
    VertexId v = 0;
    friend bool operator==(const DeleteStep&, const DeleteStep&) = default;
};
using TraceStep = std::variant<PivotStep, DeleteStep>;

// replayable pivot/delete sequence, the certificate every reduction emits
struct PivotTrace {
    std::vector<TraceStep> steps;

    void pivot(VertexId u, VertexId v) { steps.push_back(PivotStep{u, v}); }
    void del(VertexId v) { steps.push_back(DeleteStep{v}); }
    void append(const PivotTrace& tail);
    std::size_t size() const { return steps.size(); }
    bool deletions_only() const;

    std::string to_json() const;
    static PivotTrace from_json(const std::string& text);

    friend bool operator==(const PivotTrace&, const PivotTrace&) = default;
};

// applies every step; throws Error naming the 0-based step index when a
// pivot endpoint is missing or non-adjacent or a deleted id is touched
Graph replay(const Graph& start, const PivotTrace& trace);

} // namespace pmc
