#include "mpg/alt_game.hpp"

#include <stdexcept>

namespace mpg {

namespace {
constexpr long long kMaxProfiles = 1LL << 24;
}

AlternatingGame::AlternatingGame(int k, int n, std::vector<std::vector<Rat>> utilities)
    : k_(k), n_(n), u_(std::move(utilities)) {
    if (k_ < 1) throw std::invalid_argument("alternating game: need at least one player");
    if (n_ < 1) throw std::invalid_argument("alternating game: need at least one action");
    profiles_ = 1;
    for (int i = 0; i < k_; ++i) {
        profiles_ *= n_;
        if (profiles_ > kMaxProfiles)
            throw std::invalid_argument("alternating game: action space too large");
    }
    radix_.assign(k_, 1);
    for (int j = k_ - 2; j >= 0; --j) radix_[j] = radix_[j + 1] * n_;
    if (static_cast<int>(u_.size()) != k_)
        throw std::invalid_argument("alternating game: one utility table per player required");
    for (const auto& table : u_) {
        if (static_cast<long long>(table.size()) != profiles_)
            throw std::invalid_argument("alternating game: utility table has wrong size");
        for (const Rat& v : table)
            if (v < -1 || v > 1)
                throw std::invalid_argument("alternating game: utility outside [-1,1]");
    }
}

long long AlternatingGame::encode(std::span<const int> actions) const {
    if (static_cast<int>(actions.size()) != k_)
        throw std::invalid_argument("encode: wrong action vector arity");
    long long vec = 0;
    for (int j = 0; j < k_; ++j) {
        if (actions[j] < 0 || actions[j] >= n_) throw std::invalid_argument("encode: action out of range");
        vec += actions[j] * radix_[j];
    }
    return vec;
}

std::vector<int> AlternatingGame::decode(long long vec) const {
    std::vector<int> actions(k_);
    for (int j = 0; j < k_; ++j) {
        actions[j] = static_cast<int>(vec / radix_[j]);
        vec %= radix_[j];
    }
    return actions;
}

long long AlternatingGame::with_action(long long vec, int player, int action) const {
    int j = player - 1;
    long long old = (vec / radix_[j]) % n_;
    return vec + (action - old) * radix_[j];
}

int AlternatingGame::action_of(long long vec, int player) const {
    return static_cast<int>((vec / radix_[player - 1]) % n_);
}

bool AlternatingGame::is_zero_sum() const {
    if (k_ != 2) return false;
    for (long long v = 0; v < profiles_; ++v)
        if (u_[1][v] != -u_[0][v]) return false;
    return true;
}

}  // namespace mpg
