#include "tsmeta/strategy.hpp"

namespace tsmeta {

std::string_view selection_name(ModelSelection s) noexcept {
  switch (s) {
    case ModelSelection::Ensemble: return "Ensemble";
    case ModelSelection::RandomModel: return "Random model";
    case ModelSelection::SslMs: return "SSL-MS";
  }
  return "?";
}

std::string_view hpt_name(HptMode h) noexcept {
  switch (h) {
    case HptMode::Exhaustive: return "HP";
    case HptMode::RandomHp: return "Random-HP";
    case HptMode::SslHpt: return "SSL-HPT";
  }
  return "?";
}

std::string strategy_name(Strategy s) {
  return std::string(selection_name(s.selection)) + " + " + std::string(hpt_name(s.hpt));
}

}  // namespace tsmeta
