#pragma once

#include "mpg/rational.hpp"

#include <span>
#include <vector>

namespace mpg {

/// k-player n-action repeated alternating-move game. Utilities are exact
/// rationals in [-1,1] (checked at construction, never rescaled) and every
/// player has the same number of actions. Immutable after construction.
///
/// An action vector (a_1,...,a_k) is addressed by its mixed-radix index with
/// a_1 most significant: index = sum a_j * n^(k-j). Index 0 is the
/// lexicographically first vector (all zeros).
class AlternatingGame {
public:
    /// utilities[i-1][vec] = u_i of the action vector with the given index.
    AlternatingGame(int k, int n, std::vector<std::vector<Rat>> utilities);

    int players() const { return k_; }
    int actions() const { return n_; }
    long long profile_count() const { return profiles_; }

    /// player is 1-based.
    const Rat& utility(int player, long long vec) const { return u_[player - 1][vec]; }
    const std::vector<Rat>& utility_table(int player) const { return u_[player - 1]; }

    long long encode(std::span<const int> actions) const;
    std::vector<int> decode(long long vec) const;
    /// vec with player's coordinate replaced by action (player 1-based).
    long long with_action(long long vec, int player, int action) const;
    int action_of(long long vec, int player) const;

    /// True iff k = 2 and u_2 = -u_1 exactly.
    bool is_zero_sum() const;

private:
    int k_;
    int n_;
    long long profiles_;
    std::vector<long long> radix_;  // radix_[j] = n^(k-1-j) for 0-based coordinate j
    std::vector<std::vector<Rat>> u_;
};

}  // namespace mpg
