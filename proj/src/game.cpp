#include "tbsg/game.hpp"

namespace tbsg {

StrategyProfile combine(const Strategy& sigma, const Strategy& tau) {
    StrategyProfile out(sigma.choice.size(), kNoAction);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = sigma.choice[i] != kNoAction ? sigma.choice[i] : tau.choice[i];
    return out;
}

}  // namespace tbsg
