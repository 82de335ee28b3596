#include "mpg/schedule.hpp"

#include <stdexcept>
#include <string>

namespace mpg {

namespace {

void check_contiguous(const std::vector<ScheduleEdge>& edges, int dims, const char* what) {
    for (size_t i = 0; i < edges.size(); ++i) {
        if (static_cast<int>(edges[i].w.size()) != dims)
            throw std::invalid_argument(std::string("schedule: ") + what + " edge arity mismatch");
        if (i > 0 && edges[i].src != edges[i - 1].dst)
            throw std::invalid_argument(std::string("schedule: ") + what + " is not contiguous");
    }
}

Int total_connector_length(const PathSchedule& s) {
    Int p = 0;
    for (const auto& c : s.connectors) p += static_cast<long>(c.size());
    return p;
}

Int base_cycle_length(const PathSchedule& s) {
    Int lambda = 0;
    for (const auto& c : s.cycles) lambda += c.multiplicity * static_cast<long>(c.edges.size());
    return lambda;
}

}  // namespace

std::vector<Rat> PathSchedule::mean() const {
    std::vector<Rat> m(dims, Rat(0));
    for (const auto& c : cycles) {
        Rat per_edge = c.weight / Rat(static_cast<long>(c.edges.size()));
        for (const auto& e : c.edges)
            for (int d = 0; d < dims; ++d) m[d] += per_edge * e.w[d];
    }
    return m;
}

void PathSchedule::validate() const {
    if (dims < 1) throw std::invalid_argument("schedule: dims must be >= 1");
    if (cycles.empty()) throw std::invalid_argument("schedule: no cycles");
    if (connectors.size() != cycles.size())
        throw std::invalid_argument("schedule: one connector per cycle required");
    if (static_cast<int>(target.size()) != dims)
        throw std::invalid_argument("schedule: target arity mismatch");
    if (weight_bound < 0) throw std::invalid_argument("schedule: negative weight bound");

    Rat weight_sum = 0;
    for (const auto& c : cycles) {
        if (c.edges.empty()) throw std::invalid_argument("schedule: empty cycle");
        check_contiguous(c.edges, dims, "cycle");
        if (c.edges.back().dst != c.edges.front().src)
            throw std::invalid_argument("schedule: cycle is not closed");
        if (c.weight <= 0) throw std::invalid_argument("schedule: cycle weight must be positive");
        if (c.multiplicity < 1) throw std::invalid_argument("schedule: multiplicity must be >= 1");
        weight_sum += c.weight;
    }
    if (weight_sum != 1) throw std::invalid_argument("schedule: cycle weights must sum to 1");

    const int m = static_cast<int>(cycles.size());
    for (int j = 0; j < m; ++j) {
        const auto& conn = connectors[j];
        check_contiguous(conn, dims, "connector");
        int from = anchor(j), to = anchor((j + 1) % m);
        if (conn.empty()) {
            if (from != to)
                throw std::invalid_argument("schedule: empty connector between distinct anchors");
        } else if (conn.front().src != from || conn.back().dst != to) {
            throw std::invalid_argument("schedule: connector endpoints do not match anchors");
        }
    }

    check_contiguous(lead_in, dims, "lead-in");
    if (!lead_in.empty() && lead_in.back().dst != anchor(0))
        throw std::invalid_argument("schedule: lead-in does not reach the first anchor");

    auto check_bound = [&](const std::vector<ScheduleEdge>& edges) {
        for (const auto& e : edges)
            for (const Rat& w : e.w)
                if (abs_rat(w) > weight_bound)
                    throw std::invalid_argument("schedule: weight bound below an edge weight");
    };
    check_bound(lead_in);
    for (const auto& c : cycles) check_bound(c.edges);
    for (const auto& c : connectors) check_bound(c);
}

void PathSchedule::validate_against(const MultiWeightedGraph& g) const {
    validate();
    if (g.dims() != dims) throw std::invalid_argument("schedule: dimension mismatch with graph");
    if (start_vertex() != g.initial_vertex())
        throw std::invalid_argument("schedule: does not start at the graph's initial vertex");
    auto check_edges = [&](const std::vector<ScheduleEdge>& edges) {
        for (const auto& e : edges) {
            if (e.src < 0 || e.src >= g.vertex_count() || e.dst < 0 || e.dst >= g.vertex_count())
                throw std::invalid_argument("schedule: edge endpoint outside the graph");
            bool found = false;
            for (int id : g.out_edges(e.src))
                if (g.edge(id).dst == e.dst && g.edge(id).w == e.w) found = true;
            if (!found)
                throw std::invalid_argument("schedule: edge " + std::to_string(e.src) + "->" +
                                            std::to_string(e.dst) +
                                            " not present in the graph with equal weight");
        }
    };
    check_edges(lead_in);
    for (const auto& c : cycles) check_edges(c.edges);
    for (const auto& c : connectors) check_edges(c);
}

Int PathSchedule::block_scale(long long level) const {
    Int p = total_connector_length(*this);
    if (p == 0 || weight_bound == 0) return 1;
    Rat needed = Rat(2 * p * level) * weight_bound / Rat(base_cycle_length(*this));
    Int s = ceil_rat(needed);
    return s < 1 ? Int(1) : s;
}

Int PathSchedule::block_length(long long level) const {
    return block_scale(level) * base_cycle_length(*this) + total_connector_length(*this);
}

Int PathSchedule::block_reps(long long level) const {
    if (weight_bound == 0) return 1;
    Int reps = ceil_rat(Rat(level) * weight_bound * Rat(block_length(level + 1)));
    return reps < 1 ? Int(1) : reps;
}

ScheduleStream::ScheduleStream(const PathSchedule& s) : s_(s) { enter_level(1); }

void ScheduleStream::enter_level(long long level) {
    level_ = level;
    scale_ = s_.block_scale(level);
    blocks_left_ = s_.block_reps(level);
    cycle_ = 0;
    cycle_reps_left_ = scale_ * s_.cycles[0].multiplicity;
    in_connector_ = false;
    pos_ = 0;
}

const ScheduleEdge& ScheduleStream::next() {
    if (lead_pos_ < s_.lead_in.size()) return s_.lead_in[lead_pos_++];
    while (true) {
        if (!in_connector_) {
            const auto& edges = s_.cycles[cycle_].edges;
            const ScheduleEdge& e = edges[pos_];
            ++pos_;
            if (pos_ == edges.size()) {
                pos_ = 0;
                --cycle_reps_left_;
                if (cycle_reps_left_ == 0) in_connector_ = true;
            }
            return e;
        }
        const auto& conn = s_.connectors[cycle_];
        if (pos_ < conn.size()) return conn[pos_++];
        in_connector_ = false;
        pos_ = 0;
        ++cycle_;
        if (cycle_ == static_cast<int>(s_.cycles.size())) {
            cycle_ = 0;
            --blocks_left_;
            if (blocks_left_ == 0)
                enter_level(level_ + 1);
            else
                cycle_reps_left_ = scale_ * s_.cycles[0].multiplicity;
        } else {
            cycle_reps_left_ = scale_ * s_.cycles[cycle_].multiplicity;
        }
    }
}

}  // namespace mpg
