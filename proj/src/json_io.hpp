#pragma once

// JSON documents for certificates and search results. Terms use the
// concrete term syntax; directions are "lr" / "rl".

#include <json.hpp>

#include "hat.hpp"
#include "interpretation.hpp"
#include "reduction.hpp"
#include "rigidity.hpp"

namespace rigidlab {

using Json = nlohmann::json;

Json to_json(const RewriteStep& s);
Json to_json(const Derivation& d);
// Throws ParseError on malformed documents; does not replay.
Derivation derivation_from_json(const Json& j);

Json to_json(const SearchBounds& b);
Json to_json(const WordBounds& b);
Json to_json(const SearchStats& s);
Json to_json(const ProofResult& r);
Json to_json(const Permutation& p);
Json to_json(const FlabbyReport& r);
Json to_json(const ExhaustionCertificate& c);
Json to_json(const RigidityResult& r);
Json to_json(const WordDerivation& d);
Json to_json(const WordSearchResult& r);
Json to_json(const OracleAnswer& a);
Json to_json(const HatResult& h);
Json to_json(const ConservativityReport& r);

}  // namespace rigidlab
