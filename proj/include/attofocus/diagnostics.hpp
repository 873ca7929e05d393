#pragma once

#include <functional>
#include <string>

namespace attofocus {

using WarningSink = std::function<void(const std::string&)>;

/// Route non-fatal validity warnings. The default sink writes to stderr.
/// Returns the previous sink.
WarningSink set_warning_sink(WarningSink sink);

void warn(const std::string& message);

}  // namespace attofocus
