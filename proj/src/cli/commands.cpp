#include "qdyn/cli/commands.hpp"

#include <set>
#include <sstream>

#include "qdyn/cli/parse_poly.hpp"
#include "qdyn/critorbit/critorbit.hpp"
#include "qdyn/density/density.hpp"
#include "qdyn/exactnum/arith.hpp"
#include "qdyn/galois/process.hpp"
#include "qdyn/stability/bounds.hpp"
#include "qdyn/stability/families.hpp"
#include "qdyn/stability/scan.hpp"

namespace qdyn::cli {

using json = nlohmann::ordered_json;

namespace {

std::string str(const mpz_class& v) { return v.get_str(); }

std::string str(const mpq_class& v) { return v.get_str(); }

IntPoly poly_or_x(const std::string& text) { return text.empty() ? IntPoly::identity() : parse_poly(text); }

QuadMap quad(const std::string& text) {
  const IntPoly f = parse_poly(text);
  if (f.degree() != 2 || !f.is_monic()) throw parse_error("f must be a monic quadratic, got " + f.str(), 0);
  return QuadMap::from_poly(f);
}

json config_json(const RunConfig& cfg) {
  return json{{"seed", cfg.seed},
              {"effort", {{"rho_iterations", cfg.effort.rho_iterations}, {"trial_bound", cfg.effort.trial_bound}}},
              {"threads", cfg.threads},
              {"format", cfg.format}};
}

CommandResult wrap(json input, json results, const RunConfig& cfg, ExitCode exit = ExitCode::ok) {
  CommandResult r;
  r.doc = json{{"input", std::move(input)}, {"config", config_json(cfg)}, {"results", std::move(results)},
               {"version", kVersion}};
  r.exit = exit;
  return r;
}

json factored_json(const FactoredValue& fv) {
  json factors = json::array();
  for (const auto& [p, e] : fv.factors) factors.push_back({{"p", str(p)}, {"e", e}});
  json probable = json::array();
  for (const auto& q : fv.probable_primes) probable.push_back(str(q));
  return json{{"text", fv.str()},
              {"sign", fv.sign},
              {"factors", factors},
              {"cofactor", str(fv.cofactor)},
              {"cofactor_status", to_string(fv.cofactor_status)},
              {"probable_primes", probable}};
}

json level_json(const LevelVerdict& v) {
  json factors = json::array();
  for (const auto& h : v.factors) factors.push_back(h.str());
  json out{{"n", v.n}, {"verdict", to_string(v.verdict)}, {"evidence", to_string(v.evidence)}};
  out["square_test_value"] = v.square_test_value ? json(v.square_test_value->str()) : json(nullptr);
  out["witness_prime"] = v.witness_prime ? json(*v.witness_prime) : json(nullptr);
  out["factors"] = factors;
  out["note"] = v.note;
  return out;
}

json stability_json(const StabilityReport& rep) {
  json levels = json::array();
  for (const auto& v : rep.levels) levels.push_back(level_json(v));
  return json{{"levels", levels},
              {"overall", to_string(rep.overall)},
              {"certified_depth", rep.certified_depth},
              {"level0_certified", rep.level0_certified}};
}

std::vector<LevelKind> parse_mask(const std::string& mask, unsigned height) {
  std::vector<LevelKind> out;
  if (mask.empty()) return std::vector<LevelKind>(height, LevelKind::maximal);
  if (mask.size() != height) throw parse_error("mask length must equal height", 0);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] == 'm') {
      out.push_back(LevelKind::maximal);
    } else if (mask[i] == 'o') {
      out.push_back(LevelKind::order2);
    } else {
      throw parse_error("mask characters must be 'm' or 'o'", i);
    }
  }
  return out;
}

void flatten(const json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array()) {
    if (j.empty()) out << path << ": []\n";
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

CommandResult cmd_orbit(const std::string& f_text, const std::string& g_text, unsigned depth, const RunConfig& cfg) {
  const QuadMap f = quad(f_text);
  const IntPoly g = poly_or_x(g_text);
  const auto table = orbit_factor_table(f, g, depth, cfg.effort);

  json entries = json::array();
  std::set<mpz_class, MpzLess> primes;
  for (const auto& e : table) {
    json newp = json::array();
    for (const auto& p : e.new_primes) newp.push_back(str(p));
    entries.push_back({{"n", e.n},
                       {"value", e.value.str()},
                       {"numerator", factored_json(e.numerator_factored)},
                       {"new_primes", newp}});
    for (const auto& [p, ex] : e.numerator_factored.factors) {
      if (p != 2) primes.insert(p);
    }
  }
  // The mod-p walk costs about sqrt(p) steps; larger primes are listed only.
  const mpz_class walk_limit = mpz_class(1) << 32;
  json classes = json::array();
  json unclassified = json::array();
  for (const auto& p : primes) {
    if (p >= walk_limit) {
      unclassified.push_back(str(p));
      continue;
    }
    const auto c = classify_prime(f, g, to_u64(p));
    classes.push_back({{"p", str(p)},
                       {"kind", to_string(c.kind)},
                       {"tail_length", c.tail_length},
                       {"cycle_length", c.cycle_length},
                       {"first_hit", c.first_hit ? json(*c.first_hit) : json(nullptr)}});
  }
  json input{{"command", "orbit"}, {"f", f.poly().str()}, {"g", g.str()}, {"depth", depth}};
  return wrap(input, json{{"entries", entries}, {"classifications", classes}, {"unclassified", unclassified}}, cfg);
}

CommandResult cmd_stability(const std::string& f_text, const std::string& g_text, unsigned depth,
                            const RunConfig& cfg) {
  const QuadMap f = quad(f_text);
  const IntPoly g = poly_or_x(g_text);
  json results = stability_json(stability_scan(f, g, depth));
  if (g == IntPoly::identity()) results["long_bound"] = long_bound_check(f);
  json input{{"command", "stability"}, {"f", f.poly().str()}, {"g", g.str()}, {"depth", depth}};
  return wrap(input, results, cfg);
}

CommandResult cmd_certify(const std::string& f_text, const std::string& g_text, unsigned depth,
                          const RunConfig& cfg) {
  const QuadMap f = quad(f_text);
  const IntPoly g = poly_or_x(g_text);
  const CertificateScan scan = certificate_scan(f, g, depth, cfg.effort);

  json certs = json::array();
  for (std::size_t i = 0; i < scan.outcomes.size(); ++i) {
    const auto& o = scan.outcomes[i];
    json c{{"n", i + 2}, {"status", to_string(o.status)}};
    if (o.certificate) {
      const auto& m = *o.certificate;
      c["p"] = str(m.p);
      c["vp"] = m.vp_at_n;
      c["witness_proven"] = m.witness_proven;
      c["assumes_irreducible"] = m.assumes_irreducible;
      c["revalidated"] = revalidate_certificate(f, g, m);
    }
    if (!o.budget_note.empty()) c["budget_note"] = o.budget_note;
    certs.push_back(c);
  }
  const RigidReport rigid = verify_rigid_divisibility(f, g, depth, cfg.effort);
  json violations = json::array();
  for (const auto& v : rigid.violations) {
    violations.push_back({{"n", v.n}, {"m", v.m}, {"p", str(v.p)}, {"vp_n", v.vp_n}, {"vp_mn", v.vp_mn}});
  }
  json results{{"certificates", certs},
               {"certified_levels", scan.certified_levels},
               {"applicable_levels", scan.applicable_levels},
               {"fraction", str(scan.fraction)},
               {"budget_limited", scan.budget_limited},
               {"rigid", {{"verified", rigid.verified}, {"depth", rigid.depth}, {"violations", violations}}}};
  const bool short_by_budget = scan.budget_limited && scan.certified_levels.size() < scan.applicable_levels;
  json input{{"command", "certify"}, {"f", f.poly().str()}, {"g", g.str()}, {"depth", depth}};
  return wrap(input, results, cfg, short_by_budget ? ExitCode::inconclusive_budget : ExitCode::ok);
}

CommandResult cmd_density(const std::string& f_text, const std::string& a0_text, std::uint64_t limit,
                          const std::string& g_text, bool per_prime, unsigned bound_depth, const RunConfig& cfg) {
  const IntPoly f = parse_poly(f_text);
  const IntPoly g = poly_or_x(g_text);
  const IntPoly a0p = parse_poly(a0_text);
  if (a0p.degree() > 0) throw parse_error("a0 must be an integer", 0);
  const mpz_class a0 = a0p.coeff(0);

  DensityOptions opt;
  opt.threads = cfg.threads;
  opt.per_prime = per_prime;
  opt.upper_bound_depth = bound_depth;
  opt.seed = cfg.seed;
  const DensityReport rep = density_estimate(f, a0, limit, g, opt);

  json bounds = json::array();
  for (const auto& [n, frac] : rep.upper_bounds) bounds.push_back({{"n", n}, {"fraction", frac}});
  json results{{"X", rep.X},
               {"primes_tested", rep.primes_tested},
               {"members", rep.members},
               {"estimate_at_cutoff", rep.estimate},
               {"orbit_finite", rep.orbit_finite},
               {"upper_bounds", bounds}};
  json input{{"command", "density"}, {"f", f.str()}, {"g", g.str()}, {"a0", str(a0)}, {"limit", limit}};
  CommandResult r = wrap(input, results, cfg);
  if (per_prime) {
    std::ostringstream csv;
    csv << "p,member,steps,cycle_len\n";
    for (const auto& row : rep.rows) {
      csv << row.p << ',' << (row.member ? 1 : 0) << ',' << row.steps << ',' << row.cycle_len << '\n';
    }
    r.csv = csv.str();
  }
  return r;
}

CommandResult cmd_bound(const std::string& f_text, const std::string& g_text, unsigned depth, std::uint64_t limit,
                        const RunConfig& cfg) {
  const QuadMap f = quad(f_text);
  const IntPoly g = poly_or_x(g_text);
  const auto bounds = chebotarev_upper_bound(f, g, depth, limit, cfg.threads);
  json rows = json::array();
  for (const auto& [n, frac] : bounds) {
    const mpq_class q = qn_recursion(n);
    rows.push_back({{"n", n}, {"fraction", frac}, {"model_qn", str(q)}, {"model_qn_value", q.get_d()}});
  }
  json input{{"command", "bound"}, {"f", f.poly().str()}, {"g", g.str()}, {"depth", depth}, {"limit", limit}};
  return wrap(input, json{{"upper_bounds", rows}, {"skipped_primes", json::array({2})}}, cfg);
}

CommandResult cmd_galois(const std::string& mode, unsigned height, std::uint64_t trials, const std::string& mask_text,
                         const RunConfig& cfg) {
  if (height < 1) throw parse_error("height must be >= 1", 0);
  const auto mask = parse_mask(mask_text, height);
  const bool full = std::all_of(mask.begin(), mask.end(), [](LevelKind k) { return k == LevelKind::maximal; });
  const auto exact_at = [&](unsigned n) {
    if (full) return qn_recursion(n);
    return qn_masked(std::vector<LevelKind>(mask.begin(), mask.begin() + n));
  };

  json levels = json::array();
  if (mode == "enumerate") {
    if (!full) throw parse_error("enumerate mode covers the full group only; drop --mask", 0);
    for (unsigned n = 1; n <= height; ++n) {
      const mpq_class q = qn_enumerate(n);
      levels.push_back({{"n", n}, {"q", str(q)}, {"value", q.get_d()}});
    }
  } else if (mode == "recursion") {
    for (unsigned n = 1; n <= height; ++n) {
      const mpq_class q = exact_at(n);
      levels.push_back({{"n", n}, {"q", str(q)}, {"value", q.get_d()}});
    }
  } else if (mode == "sample") {
    const ProcessStats stats = sample_process(mask, trials, cfg.seed, cfg.threads);
    for (const auto& l : stats.levels) {
      const mpq_class q = exact_at(l.n);
      levels.push_back({{"n", l.n},
                        {"estimate", l.estimate},
                        {"stderr", l.stderr_},
                        {"hits", l.hits},
                        {"exact_q", str(q)}});
    }
  } else {
    throw parse_error("mode must be enumerate, recursion or sample", 0);
  }
  std::string mask_echo = mask_text.empty() ? std::string(height, 'm') : mask_text;
  json input{{"command", "galois"}, {"mode", mode}, {"height", height}, {"mask", mask_echo}};
  if (mode == "sample") input["trials"] = trials;
  return wrap(input, json{{"levels", levels}}, cfg);
}

CommandResult cmd_classify(const std::string& f_text, const RunConfig& cfg) {
  const QuadMap f = quad(f_text);
  json fams = json::array();
  for (const auto& m : family_classify(f)) {
    json j{{"family", m.family}, {"form", family_form(m.family)}, {"k", str(m.k)}, {"excluded", m.excluded}};
    if (m.alt_k) j["alt_k"] = str(*m.alt_k);
    fams.push_back(j);
  }
  json input{{"command", "classify"}, {"f", f.poly().str()}};
  return wrap(input, json{{"families", fams}}, cfg);
}

std::string render(const json& doc, const std::string& format) {
  if (format == "json") return doc.dump(2) + "\n";
  std::ostringstream out;
  flatten(doc, "", out);
  return out.str();
}

}  // namespace qdyn::cli
