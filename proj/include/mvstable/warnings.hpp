#pragma once

#include <functional>
#include <string>

namespace mvstable {

/// Receives non-fatal diagnostics (small samples, sparse tails, dropped
/// bootstrap replicates). The default handler writes to stderr.
using WarningHandler = std::function<void(const std::string&)>;

/// Installs `handler` and returns the previous one. An empty handler
/// silences warnings.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(const std::string& message);

}  // namespace mvstable
