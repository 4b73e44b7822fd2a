#include "treedup/sweep.hpp"

#include <string>

#include "treedup/error.hpp"

namespace treedup {

Exec parse_exec(std::string_view name) {
  if (name == "serial") return Exec::serial;
  if (name == "parallel") return Exec::parallel;
  throw Error(ErrorCode::config_invalid, "unknown execution mode '" + std::string(name) + "'");
}

}  // namespace treedup
