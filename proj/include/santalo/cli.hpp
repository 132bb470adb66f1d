#pragma once

#include <string>
#include <vector>

namespace santalo {

/// Batch front-end.  Returns the process exit code: 0 when every emitted
/// report passed, 1 when one failed, 2 on invalid usage or specs, 3 on
/// numerical failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace santalo
