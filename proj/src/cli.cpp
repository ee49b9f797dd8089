#include "k3iso/cli.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include "k3iso/mukai_model.hpp"
#include "k3iso/qsolve.hpp"

namespace k3iso::cli {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& require(const Json& obj, const std::string& key) {
  if (!obj.is_object()) bad("expected an object holding \"" + key + "\"");
  auto it = obj.find(key);
  if (it == obj.end()) bad("missing field \"" + key + "\"");
  return *it;
}

bool optional_bool(const Json& obj, const std::string& key, bool fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) bad("\"" + key + "\" must be a boolean");
  return it->get<bool>();
}

Int optional_int(const Json& obj, const std::string& key, const Int& fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : parse_int(*it, key);
}

std::vector<Series> parse_series(const Json& obj) {
  auto it = obj.find("series");
  if (it == obj.end()) return {Series::A, Series::B};
  if (!it->is_array() || it->empty()) bad("series must be a non-empty array of \"A\"/\"B\"");
  bool a = false, b = false;
  for (const Json& s : *it) {
    if (s == "A") a = true;
    else if (s == "B") b = true;
    else bad("series entries must be \"A\" or \"B\"");
  }
  std::vector<Series> out;
  if (a) out.push_back(Series::A);
  if (b) out.push_back(Series::B);
  return out;
}

// Runs body and maps every failure to the error object with exit code 3.
template <typename F>
Output guarded(F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return {error_json(e), kExitError};
  } catch (const nlohmann::json::exception& e) {
    return {error_json(Error(ErrorCode::InvalidInput, e.what())), kExitError};
  }
}

}  // namespace

Json error_json(const Error& e) {
  Json j;
  j["error"] = e.detail();
  j["code"] = std::string(to_string(e.code()));
  return j;
}

Output run_decide(const Json& input) {
  return guarded([&]() -> Output {
    if (!input.is_object()) bad("decide input must be an object");
    MukaiInput mukai{field_int(input, "r"), field_int(input, "s"), field_int(input, "d")};
    LatticeInput li = parse_lattice(require(input, "lattice"));
    DecisionInput in{mukai, li.lattice, optional_bool(input, "full", false), parse_series(input)};
    Verdict v = decide(in);
    const GramEmbedding* emb = li.embedding ? &*li.embedding : nullptr;
    if (emb && v.certificate && !(emb->lattice() == v.certificate->lattice)) emb = nullptr;
    int code = v.kind == VerdictKind::Yes ? kExitYes
               : v.kind == VerdictKind::No ? kExitNo
                                           : kExitUnknown;
    return {verdict_json(v, emb), code};
  });
}

Output run_solve_form(const Json& input) {
  return guarded([&]() -> Output {
    if (!input.is_object()) bad("solve-form input must be an object");
    ConstraintSet cs;
    if (auto it = input.find("constraints"); it != input.end()) {
      if (!it->is_array()) bad("constraints must be an array");
      for (const Json& c : *it) {
        const Json& on = require(c, "on");
        if (on == "x") {
          cs.on_x.push_back({field_int(c, "residue"), field_int(c, "modulus")});
        } else if (on == "y") {
          cs.on_y.push_back({field_int(c, "residue"), field_int(c, "modulus")});
        } else if (on == "x-mu*y") {
          if (cs.coupled) bad("at most one x-mu*y constraint");
          cs.x_congruent_mu_y(field_int(c, "mu"), field_int(c, "modulus"));
        } else {
          bad("constraint \"on\" must be \"x\", \"y\" or \"x-mu*y\"");
        }
      }
    }
    Representation rep = represent(field_int(input, "gamma"), field_int(input, "delta"),
                                   field_int(input, "m"), cs);
    Json out;
    out["solvable"] = rep.solvable();
    out["witness"] = rep.witness
                         ? Json::array({int_json(rep.witness->x), int_json(rep.witness->y)})
                         : Json(nullptr);
    out["status"] = rep.status == SolveStatus::Solved       ? "solved"
                    : rep.status == SolveStatus::NoSolution ? "no_solution"
                                                            : "incompatible_constraints";
    return {out, 0};
  });
}

namespace {

Json model_report(const Json& t, bool& all_ok) {
  Int a = field_int(t, "a"), b = field_int(t, "b"), c = field_int(t, "c");
  Int d1 = optional_int(t, "d1", 1), d2 = optional_int(t, "d2", 1);
  PerpQuotient q(build_v(a, b, c, d1, d2));
  const QuotientReport& r = q.report();
  NuReport nu = verify_nu(a, b, c, d1, d2);
  all_ok = all_ok && nu.ok;
  Json j;
  j["gram"] = Json::array({Json::array({int_json(r.gram.g11), int_json(r.gram.g12)}),
                           Json::array({int_json(r.gram.g12), int_json(r.gram.g22)})});
  j["h_sq"] = r.h_sq ? int_json(*r.h_sq) : Json(nullptr);
  j["index"] = r.index ? int_json(*r.index) : Json(nullptr);
  j["nu_ok"] = nu.ok;
  if (!nu.ok) j["detail"] = nu.detail;
  return j;
}

}  // namespace

Output run_verify_model(const Json& input) {
  if (!input.is_array()) {
    return guarded([&]() -> Output {
      bool ok = true;
      Json j = model_report(input, ok);
      return {j, ok ? 0 : 1};
    });
  }
  Json out = Json::array();
  bool ok = true, failed = false;
  for (const Json& t : input) {
    Output one = guarded([&]() -> Output { return {model_report(t, ok), 0}; });
    failed = failed || one.exit_code == kExitError;
    out.push_back(std::move(one.body));
  }
  return {out, failed ? kExitError : (ok ? 0 : 1)};
}

namespace {

Range parse_range(const Json& spec, const std::string& key) {
  auto it = spec.find(key);
  if (it == spec.end()) bad("missing range \"" + key + "\"");
  Range r;
  if (it->is_array()) {
    if (it->size() != 2) bad("range \"" + key + "\" must be [lo, hi]");
    r = {parse_int((*it)[0], key), parse_int((*it)[1], key)};
  } else {
    r.lo = r.hi = parse_int(*it, key);
  }
  if (r.lo < 1 || r.hi < 1) bad("range \"" + key + "\" bounds must be >= 1");
  return r;
}

}  // namespace

ScanSpec parse_scan_spec(const Json& j) {
  if (!j.is_object()) bad("scan input must be an object");
  ScanSpec spec;
  spec.r = parse_range(j, "r");
  spec.s = parse_range(j, "s");
  spec.d = parse_range(j, "d");
  spec.max_n_half = field_int(j, "max_n_half");
  spec.max_gamma_delta = field_int(j, "max_gamma_delta");
  if (spec.max_n_half < 1 || spec.max_gamma_delta < 1) bad("lattice bounds must be >= 1");
  spec.full = optional_bool(j, "full", false);
  spec.series = parse_series(j);
  spec.oracle = optional_bool(j, "oracle", true);
  return spec;
}

std::vector<ScanCell> scan_cells(const ScanSpec& spec) {
  std::vector<ScanCell> cells;
  for (Int r = spec.r.lo; r <= spec.r.hi; ++r) {
    for (Int s = spec.s.lo; s <= spec.s.hi; ++s) {
      for (Int d = spec.d.lo; d <= spec.d.hi; ++d) {
        MukaiInvariants inv;
        try {
          inv = invariants({r, s, d});
        } catch (const Error&) {
          continue;
        }
        if (inv.n_half > spec.max_n_half) continue;
        for (PolarizedLattice& L : enumerate_lattices(inv.n_half, spec.max_gamma_delta)) {
          cells.push_back({r, s, d, std::move(L)});
        }
      }
    }
  }
  return cells;
}

ScanRow evaluate_cell(const ScanCell& cell, const ScanSpec& spec, const Int& bound) {
  ScanRow row{cell, "", {}, {}, {}, {}, {}, {}, ""};
  try {
    MukaiInput mukai{cell.r, cell.s, cell.d};
    Verdict v = decide({mukai, cell.lattice, spec.full, spec.series});
    row.verdict = to_string(v.kind);
    row.reason = v.reason;
    row.stats = v.stats;
    if (v.certificate) {
      row.series = v.certificate->series;
      row.sign = v.certificate->sign;
      row.d2 = v.certificate->d2;
      row.witness = v.certificate->witness;
    }
    if (spec.oracle) {
      // The oracle scans both series, so it only speaks for unfiltered runs.
      row.oracle = spec.series.size() == 2
                       ? cross_check(cell.lattice, invariants(mukai), v, bound)
                       : OracleAgreement::NotApplicable;
    }
  } catch (const Error& e) {
    row = ScanRow{cell, "error", {}, {}, {}, {}, {}, {}, e.what()};
  }
  return row;
}

std::vector<ScanRow> run_scan(const ScanSpec& spec, const Int& bound, unsigned jobs) {
  std::vector<ScanCell> cells = scan_cells(spec);
  std::vector<std::optional<ScanRow>> slots(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      slots[i] = evaluate_cell(cells[i], spec, bound);
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  std::vector<ScanRow> rows;
  rows.reserve(slots.size());
  for (auto& s : slots) rows.push_back(std::move(*s));
  return rows;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

template <typename T>
std::string opt(const std::optional<T>& v) {
  if (!v) return "";
  std::ostringstream os;
  os << *v;
  return os.str();
}

}  // namespace

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "r,s,d,n_half,gamma,delta,mu,verdict,series,sign,d2,witness_x,witness_y,"
        "witness_height,root_candidates,classes,oracle,reason\n";
  for (const ScanRow& row : rows) {
    const PolarizedLattice& L = row.cell.lattice;
    os << row.cell.r << ',' << row.cell.s << ',' << row.cell.d << ',' << L.n_half() << ','
       << L.gamma() << ',' << L.delta() << ',' << L.mu() << ',' << row.verdict << ',';
    os << (row.series ? to_string(*row.series) : "") << ',' << opt(row.sign) << ','
       << opt(row.d2) << ',';
    if (row.witness) {
      Int height = std::max(abs(row.witness->x), abs(row.witness->y));
      os << row.witness->x << ',' << row.witness->y << ',' << height << ',';
    } else {
      os << ",,,";
    }
    os << row.stats.root_candidates << ',' << row.stats.classes << ','
       << (row.oracle ? to_string(*row.oracle) : "") << ',' << quote(row.reason) << '\n';
  }
  return os.str();
}

Json scan_json(const std::vector<ScanRow>& rows) {
  Json out = Json::array();
  for (const ScanRow& row : rows) {
    const PolarizedLattice& L = row.cell.lattice;
    Json j;
    j["r"] = int_json(row.cell.r);
    j["s"] = int_json(row.cell.s);
    j["d"] = int_json(row.cell.d);
    j["lattice"] = lattice_json(L);
    j["verdict"] = row.verdict;
    j["series"] = row.series ? Json(to_string(*row.series)) : Json(nullptr);
    j["sign"] = row.sign ? Json(*row.sign) : Json(nullptr);
    j["d2"] = row.d2 ? int_json(*row.d2) : Json(nullptr);
    j["witness"] = row.witness ? vector_json(*row.witness) : Json(nullptr);
    j["root_candidates"] = row.stats.root_candidates;
    j["classes"] = row.stats.classes;
    j["oracle"] = row.oracle ? Json(to_string(*row.oracle)) : Json(nullptr);
    j["reason"] = row.reason;
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace k3iso::cli
