#include "pmc/gf2.hpp"

#include <map>

namespace pmc {

std::size_t gf2_rank(std::vector<BitRow> rows) {
    std::map<int, BitRow> basis; // leading bit -> reduced row
    std::size_t rank = 0;
    for (auto& row : rows) {
        for (;;) {
            int lead = row.find_first();
            if (lead < 0) break;
            auto it = basis.find(lead);
            if (it == basis.end()) {
                basis.emplace(lead, std::move(row));
                ++rank;
                break;
            }
            row ^= it->second;
        }
    }
    return rank;
}

std::size_t cut_rank(const Graph& g, const BitRow& side) {
    BitRow other = g.active_bits();
    other.andnot(side);
    std::vector<BitRow> rows;
    side.for_each([&](std::size_t v) {
        PMC_CHECK(g.is_active(static_cast<VertexId>(v)), "cut_rank: side must be active");
        rows.push_back(g.neighbor_bits(static_cast<VertexId>(v)) & other);
    });
    return gf2_rank(std::move(rows));
}

std::size_t cut_rank(const Graph& g, std::span<const VertexId> s) {
    BitRow side(g.capacity());
    for (VertexId v : s) {
        PMC_CHECK(g.is_active(v), "cut_rank: side must be active");
        side.set(v);
    }
    return cut_rank(g, side);
}

} // namespace pmc
