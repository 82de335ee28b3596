#pragma once

#include "mpg/alt_game.hpp"
#include "mpg/equilibrium.hpp"
#include "mpg/graph.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace mpg {

/// Text formats (all UTF-8, strict: unknown or malformed lines are errors,
/// rationals are written in lowest terms as "p" or "p/q"):
///
/// Graph file:
///   mpg k=<dims> vertices=<m> initial=<id>
///   v <id> owner=<player>                 (one line per vertex)
///   e <src> <dst> w=<r1>,...,<rk>         (duplicate src/dst pairs rejected)
///   flags: [bipartite] [complete] [undirected] [normalized]
///
/// Game file:
///   altgame k=<k> n=<n>
///   u <a1> ... <ak> = <r1>,...,<rk>       (total tensor, 0-based actions)
///
/// Report file: deterministic key-value sections nu/utilities/welfare/
/// schedule/punishment; the schedule section embeds every edge it uses with
/// its weight vector, so a parsed report can be simulated stand-alone.
///
/// Game-graph vertices are numbered by the fixed mixed-radix rule
/// id = vec * k + (player - 1), where vec encodes the action vector with
/// player 1's action most significant: vec = sum_j a_j * n^(k-j).
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct ParsedGraph {
    MultiWeightedGraph graph;
    MpgFlags flags;  // meaningful for dims = 1 only
};

ParsedGraph parse_graph(std::string_view text);
std::string emit_graph(const MultiWeightedGraph& g, const MpgFlags& flags = {});
std::string emit_graph(const MeanPayoffGame& game);

AlternatingGame parse_game(std::string_view text);
std::string emit_game(const AlternatingGame& game);

EquilibriumReport parse_report(std::string_view text);
std::string emit_report(const EquilibriumReport& report);

}  // namespace mpg
