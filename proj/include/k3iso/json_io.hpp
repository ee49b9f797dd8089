#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "k3iso/decide.hpp"
#include "k3iso/lattice.hpp"
#include "k3iso/moduli.hpp"

namespace k3iso {

using Json = nlohmann::ordered_json;

// Integers are JSON numbers while they fit in 64 bits and decimal strings
// beyond that; both forms are accepted on input.
Json int_json(const Int& v);
// Throws Error{InvalidInput}; `what` names the field in the message.
Int parse_int(const Json& j, const std::string& what);
Int field_int(const Json& obj, const std::string& key);

Json vector_json(const LatticeVector& z);
LatticeVector parse_vector(const Json& j, const std::string& what);

Json lattice_json(const PolarizedLattice& L);

// A lattice given as {"n_half", "gamma", "delta", "mu"} or as
// {"gram": [[g11, g12], [g12, g22]], "h": [x, y]}.
struct LatticeInput {
  PolarizedLattice lattice;
  std::optional<GramEmbedding> embedding;  // set for Gram input
};
LatticeInput parse_lattice(const Json& j);

Json mukai_json(const MukaiVector& v);
MukaiVector parse_mukai(const Json& j);

Json morphism_json(const Morphism& m);
Morphism parse_morphism(const Json& j);

// Ordered list of steps {"kind", params..., "source", "target": mukai or "X"};
// the chain source is the first step's source.
Json chain_json(const Chain& chain);
Chain parse_chain(const Json& j);

// `embedding` adds the witness in the caller's Gram coordinates.
Json certificate_json(const Certificate& cert, const GramEmbedding* embedding = nullptr);
Json verdict_json(const Verdict& v, const GramEmbedding* embedding = nullptr);

}  // namespace k3iso
