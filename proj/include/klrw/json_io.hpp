#pragma once

#include "klrw/cylmodel.hpp"
#include "klrw/engine.hpp"
#include "klrw/quiver.hpp"

#include <string>

namespace klrw {

// interchange formats; all parsers throw Error(BadInput) with a diagnostic

Quiver quiver_from_json(const std::string& text);
std::string quiver_to_json(const Quiver& q);

Configuration configuration_from_json(const Quiver& q, const std::string& text);
std::string configuration_to_json(const Configuration& c);

// diagram files carry the configurations by content
TautDiagram diagram_from_json(const Quiver& q, const std::string& text);
std::string diagram_to_json(const TautDiagram& d);

Morphism morphism_from_json(const Quiver& q, const std::string& text);
std::string morphism_to_json(const Morphism& m);

// a word file: {"source": config, "steps": [ ... ]} where each step is
// {"dot": [node, idx]} | {"swap": [[n,i],[n,j]], "arc": "inner"|"outer"}
// | {"red_cross": [[node, idx], [red_node, red_idx]], "dir": 1|-1}
Word word_from_json(const Quiver& q, const std::string& text);

CoverData cover_from_json(const std::string& text);
DivisorData divisor_from_json(const std::string& text);
std::string divisor_to_json(const DivisorData& d);

}  // namespace klrw
