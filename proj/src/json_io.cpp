#include "k3iso/json_io.hpp"

#include <regex>

#include "k3iso/error.hpp"

namespace k3iso {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& require(const Json& obj, const std::string& key) {
  if (!obj.is_object()) bad("expected an object holding \"" + key + "\"");
  auto it = obj.find(key);
  if (it == obj.end()) bad("missing field \"" + key + "\"");
  return *it;
}

}  // namespace

Json int_json(const Int& v) {
  if (auto small = to_i64(v)) return *small;
  return v.str();
}

Int parse_int(const Json& j, const std::string& what) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
    return Int(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    static const std::regex decimal("-?[0-9]+");
    const std::string& s = j.get_ref<const std::string&>();
    if (std::regex_match(s, decimal)) return Int(s);
  }
  bad(what + " must be an integer or a decimal string");
}

Int field_int(const Json& obj, const std::string& key) { return parse_int(require(obj, key), key); }

Json vector_json(const LatticeVector& z) {
  Json j;
  j["x"] = int_json(z.x);
  j["y"] = int_json(z.y);
  return j;
}

LatticeVector parse_vector(const Json& j, const std::string& what) {
  if (j.is_array() && j.size() == 2) return {parse_int(j[0], what), parse_int(j[1], what)};
  if (j.is_object()) return {field_int(j, "x"), field_int(j, "y")};
  bad(what + " must be {\"x\", \"y\"} or a pair");
}

Json lattice_json(const PolarizedLattice& L) {
  Json j;
  j["n_half"] = int_json(L.n_half());
  j["gamma"] = int_json(L.gamma());
  j["delta"] = int_json(L.delta());
  j["mu"] = int_json(L.mu());
  return j;
}

LatticeInput parse_lattice(const Json& j) {
  if (!j.is_object()) bad("lattice must be an object");
  if (j.contains("gram")) {
    const Json& g = j["gram"];
    if (!g.is_array() || g.size() != 2 || !g[0].is_array() || g[0].size() != 2 ||
        !g[1].is_array() || g[1].size() != 2) {
      bad("gram must be a 2x2 array");
    }
    Int g11 = parse_int(g[0][0], "gram"), g12 = parse_int(g[0][1], "gram");
    Int g21 = parse_int(g[1][0], "gram"), g22 = parse_int(g[1][1], "gram");
    if (g12 != g21) bad("gram must be symmetric");
    LatticeVector h = parse_vector(require(j, "h"), "h");
    GramEmbedding e = from_gram(Gram2{g11, g12, g22}, Point{h.x, h.y});
    return {e.lattice(), e};
  }
  return {PolarizedLattice::make(field_int(j, "n_half"), field_int(j, "gamma"),
                                 field_int(j, "delta"), field_int(j, "mu")),
          std::nullopt};
}

Json mukai_json(const MukaiVector& v) {
  Json j;
  j["r"] = int_json(v.rank);
  j["c1"] = vector_json(v.c1);
  j["s"] = int_json(v.sigma);
  return j;
}

MukaiVector parse_mukai(const Json& j) {
  return {field_int(j, "r"), parse_vector(require(j, "c1"), "c1"), field_int(j, "s")};
}

Json morphism_json(const Morphism& m) {
  struct Visitor {
    Json j;
    void operator()(const Reflection&) {}
    void operator()(const Twist& t) { j["D"] = vector_json(t.D); }
    void operator()(const Nu& n) {
      j["d1"] = int_json(n.d1);
      j["d2"] = int_json(n.d2);
    }
    void operator()(const NuInverse& n) {
      j["d1"] = int_json(n.d1);
      j["d2"] = int_json(n.d2);
    }
    void operator()(const Tyurin& t) {
      j["sign"] = t.sign;
      j["h1"] = vector_json(t.h1);
    }
  };
  Visitor v;
  v.j["kind"] = kind_name(m);
  std::visit(v, m);
  return v.j;
}

Morphism parse_morphism(const Json& j) {
  const Json& kind = require(j, "kind");
  if (!kind.is_string()) bad("kind must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "reflection") return Reflection{};
  if (k == "twist") return Twist{parse_vector(require(j, "D"), "D")};
  if (k == "nu") return Nu{field_int(j, "d1"), field_int(j, "d2")};
  if (k == "nu_inverse") return NuInverse{field_int(j, "d1"), field_int(j, "d2")};
  if (k == "tyurin") {
    const Json& s = require(j, "sign");
    if (!s.is_number_integer()) bad("sign must be +1 or -1");
    return Tyurin{s.get<int>(), parse_vector(require(j, "h1"), "h1")};
  }
  bad("unknown morphism kind \"" + k + "\"");
}

Json chain_json(const Chain& chain) {
  Json steps = Json::array();
  for (const ChainStep& s : chain.steps) {
    Json step = morphism_json(s.morphism);
    step["source"] = mukai_json(s.source);
    step["target"] = s.target ? mukai_json(*s.target) : Json("X");
    steps.push_back(std::move(step));
  }
  return steps;
}

Chain parse_chain(const Json& j) {
  if (!j.is_array() || j.empty()) bad("chain must be a non-empty array of steps");
  Chain chain{parse_mukai(require(j[0], "source")), {}};
  for (const Json& s : j) {
    const Json& target = require(s, "target");
    std::optional<MukaiVector> t;
    if (target.is_string()) {
      if (target.get<std::string>() != "X") bad("a string target must be \"X\"");
    } else {
      t = parse_mukai(target);
    }
    chain.steps.push_back({parse_morphism(s), parse_mukai(require(s, "source")), t});
  }
  return chain;
}

Json certificate_json(const Certificate& cert, const GramEmbedding* embedding) {
  Json j;
  j["lattice"] = lattice_json(cert.lattice);
  j["series"] = to_string(cert.series);
  j["sign"] = cert.sign;
  j["witness"] = vector_json(cert.witness);
  if (embedding) {
    Point u = embedding->to_standard(cert.witness);
    j["witness_gram"] = Json::array({int_json(u.x), int_json(u.y)});
  }
  j["p1"] = int_json(cert.p1);
  j["q1"] = int_json(cert.q1);
  j["d2"] = int_json(cert.d2);
  j["D"] = vector_json(cert.D);
  j["chain"] = chain_json(cert.chain);
  j["caveat"] = cert.sign < 0 ? Json(kTyurinCaveat) : Json(nullptr);
  return j;
}

Json verdict_json(const Verdict& v, const GramEmbedding* embedding) {
  Json j;
  j["verdict"] = to_string(v.kind);
  j["certificate"] = v.certificate ? certificate_json(*v.certificate, embedding) : Json(nullptr);
  j["reason"] = v.reason;
  return j;
}

}  // namespace k3iso
