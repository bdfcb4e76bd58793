#pragma once

#include <memory>
#include <string>

#include "lcsim/engine.hpp"

namespace lcsim {

struct StrategySpec {
    enum class Kind { Null, PrivateAttack, SZPremine, Balance, NasChia };
    Kind kind = Kind::Null;
    std::size_t target_j = 1;  // honest index of the attacked block
    int k = 6;                 // confirmation depth the attack races against
    bool liveness = false;     // SZPremine: attack k consecutive blocks instead

    // True when the attack singles out one honest block whose persistence
    // violation defines success.
    bool has_target() const { return kind != Kind::Null && kind != Kind::Balance; }
};

StrategySpec::Kind strategy_kind_from_name(const std::string& name);
std::string strategy_name(StrategySpec::Kind kind);

std::unique_ptr<Strategy> null_strategy();
std::unique_ptr<Strategy> private_attack(std::size_t target_j, int k);
std::unique_ptr<Strategy> sz_premine(std::size_t target_j, int k,
                                     bool liveness = false);
std::unique_ptr<Strategy> balance_strategy();
std::unique_ptr<Strategy> nas_chia_strategy(std::size_t root_j, int k);

std::unique_ptr<Strategy> make_strategy(const StrategySpec& spec);

}  // namespace lcsim
