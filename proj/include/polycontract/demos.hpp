#pragma once

#include <string_view>
#include <vector>

namespace polycontract::demos {

/// Names of the built-in demo problems.
std::vector<std::string_view> names();

/// The embedded problem document for a demo (throws InputError on an
/// unknown name). The same text drives the demo pipeline, so reports
/// cannot drift from the documents.
std::string_view document(std::string_view name);

}  // namespace polycontract::demos
