#include "hilbcalc/builtin_models.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <memory>
#include <mutex>

namespace hilbcalc {

// generated from core/models/*.json
const std::vector<std::pair<std::string, std::string>>& embedded_models();

std::vector<std::string> builtin_model_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : embedded_models()) out.push_back(name);
  return out;
}

const std::string& builtin_model_source(const std::string& name) {
  for (const auto& [n, text] : embedded_models())
    if (n == name) return text;
  throw std::out_of_range("no builtin model named '" + name + "'");
}

const SurfaceModel& builtin_model(const std::string& name) {
  static std::mutex mutex;
  static std::map<std::string, std::unique_ptr<SurfaceModel>> loaded;
  std::lock_guard lock(mutex);
  auto& slot = loaded[name];
  if (!slot) slot = std::make_unique<SurfaceModel>(SurfaceModel::load(nlohmann::json::parse(builtin_model_source(name))));
  return *slot;
}

}  // namespace hilbcalc
