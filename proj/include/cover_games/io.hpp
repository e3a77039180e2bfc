#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cover_games/cover.hpp"
#include "cover_games/game.hpp"
#include "cover_games/haver.hpp"
#include "cover_games/netting.hpp"
#include "cover_games/screenability.hpp"
#include "cover_games/space.hpp"

namespace cover_games::io {

using Json = nlohmann::json;

/// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view bytes);
std::string digest_hex(std::string_view bytes);

/// Parses text as JSON; syntax errors become InputError with byte offset.
Json parse_json(std::string_view text, const std::string& source);
std::string read_file(const std::string& path);

Rational rational_from(const Json& j, const std::string& where);
Json to_json(const Rational& q);

SampledSpace space_from_json(const Json& j, std::size_t point_cap, const std::string& where = "space");
Json space_to_json(const SampledSpace& space);

Region region_from_json(const SampledSpace& space, const Json& j, const std::string& where);
Json region_to_json(const Region& region);

/// {"space": label or inline, "regions": [...]}
Cover cover_from_json(const SampledSpace& space, const Json& j, const std::string& where = "cover");
Json cover_to_json(const SampledSpace& space, const Cover& cover);

/// {"space": ..., "covers": [cover, ...]}
CoverSeq covers_from_json(const SampledSpace& space, const Json& j, const std::string& where = "covers");
Json covers_to_json(const SampledSpace& space, const CoverSeq& covers);

/// {"selections": [[{"center": i, "radius": "p/q"}, ...], ...]}
HurewiczSelections selections_from_json(const SampledSpace& space, const Json& j,
                                        const std::string& where = "selections");
Json selections_to_json(const HurewiczSelections& selections);

/// {"chain": [[i, ...], ...]}
std::vector<Subset> chain_from_json(const SampledSpace& space, const Json& j, const std::string& where = "chain");
Json chain_to_json(const std::vector<Subset>& chain);

/// {"picks": [[i, ...], ...]}
Picks picks_from_json(const Json& j, const std::string& where = "picks");
Json picks_to_json(const Picks& picks);

Json subset_to_json(const Subset& subset);
Json family_to_json(const DisjointFamily& family);
Json net_to_json(const NetCertificate& net);
Json decomposition_to_json(const SigmaDecomposition& decomposition);
Json transcript_to_json(const Transcript& transcript);
Json sc_plus_to_json(const ScPlusResult& result);
Json haver_to_json(const HaverWitness& witness);

}  // namespace cover_games::io
