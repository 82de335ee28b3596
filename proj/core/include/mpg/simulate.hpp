#pragma once

#include "mpg/alt_game.hpp"
#include "mpg/equilibrium.hpp"
#include "mpg/schedule.hpp"

#include <span>
#include <vector>

namespace mpg {

struct SimulationPoint {
    long long step = 0;
    std::vector<Rat> average;  // exact prefix average per dimension
};

/// Materializes the first `horizon` edges of the schedule's infinite path
/// and reports exact prefix averages at the requested checkpoints (at the
/// horizon itself when none are given). Streaming; memory is O(1) in the
/// horizon.
std::vector<SimulationPoint> simulate(const PathSchedule& schedule, long long horizon,
                                      std::span<const long long> checkpoints = {});

struct CertifyResult {
    bool certified = false;
    int player = 0;  // worst violator when refuted
    Rat margin;      // nu_i - eps - t_i of that player
};

/// Exact certification: recomputes nu from the game and the schedule's mean
/// from its cycle structure (never by simulation); certified iff
/// t_i >= nu_i - eps for every player.
CertifyResult certify_equilibrium(const AlternatingGame& game, const EquilibriumReport& report,
                                  const Rat& eps);

/// Diagnostic: plays the schedule letting one player deviate greedily (one
/// step of lookahead); a deviation switches everyone else to the report's
/// punishment strategies forever. Returns the deviator's observed average
/// minus its reported utility. Finite-horizon noise is bounded by
/// 2 * players * W / horizon.
Rat deviation_probe(const AlternatingGame& game, const EquilibriumReport& report, int player,
                    long long horizon);

}  // namespace mpg
