#pragma once

#include "mpg/graph.hpp"
#include "mpg/rational.hpp"

#include <vector>

namespace mpg {

/// Self-contained edge of a schedule (carries its own weight vector so a
/// parsed report can be simulated without the originating graph).
struct ScheduleEdge {
    int src = 0;
    int dst = 0;
    std::vector<Rat> w;
};

struct ScheduleCycle {
    std::vector<ScheduleEdge> edges;  // closed walk, first src == last dst
    Rat weight;                       // time fraction of the infinite path
    Int multiplicity;                 // base repetitions inside one block
};

/// Finite description of an infinite play: an optional lead-in to the first
/// cycle anchor, then an unbounded sequence of blocks. Block level i >= 1
/// visits every cycle j (scale_i * multiplicity_j) times, connected by the
/// connector paths, and is repeated reps(i) times before level i+1 starts.
/// Scales grow so block averages are within 1/i of the weighted cycle mean,
/// and reps(i) = max(1, ceil(i * W * L_{i+1})) for the next block length L,
/// which makes the liminf of prefix averages reach the cycle mix mean.
struct PathSchedule {
    int dims = 0;
    std::vector<ScheduleEdge> lead_in;
    std::vector<ScheduleCycle> cycles;
    std::vector<std::vector<ScheduleEdge>> connectors;  // [j]: anchor_j -> anchor_{j+1 mod m}
    std::vector<Rat> target;
    Rat weight_bound;

    int anchor(int j) const { return cycles[j].edges.front().src; }
    int start_vertex() const { return lead_in.empty() ? anchor(0) : lead_in.front().src; }

    /// Weighted cycle mean, the schedule's exact mean-payoff vector.
    std::vector<Rat> mean() const;

    /// Structural checks (contiguity, closedness, weights summing to 1, ...).
    /// Throws std::invalid_argument on the first violation.
    void validate() const;

    /// Additionally checks that every schedule edge exists in g with an
    /// identical weight vector and that the schedule starts at g's initial
    /// vertex.
    void validate_against(const MultiWeightedGraph& g) const;

    /// Scale factor of block level i (>= 1).
    Int block_scale(long long level) const;
    /// Edge count of one level-i block.
    Int block_length(long long level) const;
    /// Repetitions of the level-i block.
    Int block_reps(long long level) const;
};

/// Lazily walks the infinite edge stream of a schedule.
class ScheduleStream {
public:
    explicit ScheduleStream(const PathSchedule& s);
    const ScheduleEdge& next();

private:
    const PathSchedule& s_;
    size_t lead_pos_ = 0;
    long long level_ = 1;
    Int blocks_left_;
    Int scale_;
    int cycle_ = 0;
    Int cycle_reps_left_;
    bool in_connector_ = false;
    size_t pos_ = 0;

    void enter_level(long long level);
    void advance();
};

}  // namespace mpg
