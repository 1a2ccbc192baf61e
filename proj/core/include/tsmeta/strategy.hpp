#pragma once

#include <array>
#include <string>
#include <string_view>

namespace tsmeta {

enum class ModelSelection { Ensemble, RandomModel, SslMs };
enum class HptMode { Exhaustive, RandomHp, SslHpt };

struct Strategy {
  ModelSelection selection = ModelSelection::SslMs;
  HptMode hpt = HptMode::SslHpt;

  friend constexpr bool operator==(Strategy, Strategy) = default;
};

/// The nine selection x tuning combinations, in reporting order.
inline constexpr std::array<Strategy, 9> kAllStrategies = {{
    {ModelSelection::Ensemble, HptMode::Exhaustive},
    {ModelSelection::Ensemble, HptMode::RandomHp},
    {ModelSelection::Ensemble, HptMode::SslHpt},
    {ModelSelection::RandomModel, HptMode::Exhaustive},
    {ModelSelection::RandomModel, HptMode::RandomHp},
    {ModelSelection::RandomModel, HptMode::SslHpt},
    {ModelSelection::SslMs, HptMode::Exhaustive},
    {ModelSelection::SslMs, HptMode::RandomHp},
    {ModelSelection::SslMs, HptMode::SslHpt},
}};

// Row the relative-change columns are measured against.
inline constexpr Strategy kBaselineStrategy{ModelSelection::RandomModel, HptMode::RandomHp};

std::string_view selection_name(ModelSelection s) noexcept;
std::string_view hpt_name(HptMode h) noexcept;
/// e.g. "Ensemble + HP", "SSL-MS + SSL-HPT".
std::string strategy_name(Strategy s);

}  // namespace tsmeta
