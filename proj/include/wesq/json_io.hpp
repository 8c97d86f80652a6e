#pragma once

#include <json.hpp>

#include "wesq/wes.hpp"

namespace wesq {

// Stable key order for byte-identical output.
using Json = nlohmann::ordered_json;

// Integers round-trip as JSON numbers up to 2^53 - 1 in magnitude and as
// decimal strings beyond, so lossy JSON consumers cannot corrupt them.
Json int_to_json(const Int& v);
Int int_from_json(const Json& j);

Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

Json group_to_json(const FgAbGroup& g);
FgAbGroup group_from_json(const Json& j);

Json hom_to_json(const Hom& h);
Hom hom_from_json(const Json& j);

Json complex_to_json(const ChainComplex& c);
ChainComplex complex_from_json(const Json& j);

Json system_to_json(const GammaSystem& s);
GammaSystem system_from_json(const Json& j);

Json fourdim_to_json(const FourDimSystem& x);
FourDimSystem fourdim_from_json(const Json& j);

Json ladder_to_json(const Ladder& l);
Ladder ladder_from_json(const Json& j);

Json ext_class_to_json(const ExtClass& c);

// Canonical dump: two-space indent and a trailing newline.
std::string dump_canonical(const Json& j);

// Wraps nlohmann parse errors in ValidationError.
Json parse_json(const std::string& text);

} // namespace wesq
