#pragma once

#include <json.hpp>

#include "fermat/arith.hpp"
#include "fermat/char_sums.hpp"
#include "fermat/count.hpp"

namespace fermat::app {

using Json = nlohmann::ordered_json;

Json to_json(const WeilBoundResult& bound);
Json to_json(const CountResult& count, std::uint32_t q);
Json to_json(const ClassificationResult& result);
Json to_json(const IdentityCheck& check);
Json to_json(const PurityReport& report);

}  // namespace fermat::app
