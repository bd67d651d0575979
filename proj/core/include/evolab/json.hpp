#pragma once

#include <nlohmann/json.hpp>

namespace evolab {

// All serialized artifacts use insertion-ordered JSON so that reruns with the
// same inputs produce byte-identical output.
using Json = nlohmann::ordered_json;

}  // namespace evolab
