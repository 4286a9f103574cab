#include "pmc/trace.hpp"

#include "json.hpp"

namespace pmc {

using nlohmann::json;

void PivotTrace::append(const PivotTrace& tail) {
    steps.insert(steps.end(), tail.steps.begin(), tail.steps.end());
}

bool PivotTrace::deletions_only() const {
    for (auto& s : steps)
        if (std::holds_alternative<PivotStep>(s)) return false;
    return true;
}

std::string PivotTrace::to_json() const {
    json j = json::array();
    for (auto& s : steps) {
        if (auto* p = std::get_if<PivotStep>(&s))
            j.push_back(json{{"pivot", {p->u, p->v}}});
        else
            j.push_back(json{{"delete", std::get<DeleteStep>(s).v}});
    }
    return j.dump();
}

PivotTrace PivotTrace::from_json(const std::string& text) try {
    json j = json::parse(text);
    PMC_CHECK(j.is_array(), "trace: top level must be an array");
    PivotTrace trace;
    for (auto& step : j) {
        PMC_CHECK(step.is_object() && step.size() == 1, "trace: each step is a one-key object");
        if (step.contains("pivot")) {
            auto& uv = step.at("pivot");
            PMC_CHECK(uv.is_array() && uv.size() == 2, "trace: pivot takes [u, v]");
            trace.pivot(uv.at(0).get<VertexId>(), uv.at(1).get<VertexId>());
        } else if (step.contains("delete")) {
            trace.del(step.at("delete").get<VertexId>());
        } else {
            PMC_CHECK(false, "trace: unknown step kind");
        }
    }
    return trace;
} catch (const json::exception& e) {
    throw Error(std::string("trace json: ") + e.what());
}

Graph replay(const Graph& start, const PivotTrace& trace) {
    Graph g = start;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        try {
            if (auto* p = std::get_if<PivotStep>(&trace.steps[i]))
                g.apply_pivot(p->u, p->v);
            else
                g.apply_delete(std::get<DeleteStep>(trace.steps[i]).v);
        } catch (const Error& e) {
            throw Error("replay fault at step " + std::to_string(i) + ": " + e.what());
        }
    }
    return g;
}

} // namespace pmc
