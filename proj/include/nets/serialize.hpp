#pragma once

#include <json.hpp>

#include "nets/limits.hpp"

namespace nets {

using Json = nlohmann::json;

Json poset_to_json(const Poset& p);
Poset poset_from_json(const Json& j);

Json hom_to_json(const StarHom& f);
StarHom hom_from_json(const Json& j);

Json net_to_json(const Net& n);
Net net_from_json(const Json& j);

Json system_to_json(const NetSystem& s);
NetSystem system_from_json(const Json& j);

Json report_to_json(const Report& r);

std::string poset_to_dot(const Poset& p);

}  // namespace nets
