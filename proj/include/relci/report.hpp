#pragma once

/// \file
/// Instance files in, deterministic JSON reports out. Every exact value is
/// emitted as a decimal string ("27", "-5/2"), never as a JSON number.

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "relci/bundle.hpp"
#include "relci/bundle_cones.hpp"
#include "relci/ci_invariants.hpp"
#include "relci/contact.hpp"
#include "relci/errors.hpp"
#include "relci/exact_math.hpp"
#include "relci/oracles.hpp"
#include "relci/relative_ci.hpp"
#include "relci/verdicts.hpp"

namespace relci::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "relci 0.1.0";

struct Instance {
  RelativeCI ci;
  std::optional<SplitBundle> split;
  Json echo;
};

namespace detail {

inline const Json& require(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw InvalidInput(path + "." + key + ": missing");
  return obj.at(key);
}

inline std::int64_t as_int(const Json& value, const std::string& path) {
  if (!value.is_number_integer()) throw InvalidInput(path + ": expected an integer");
  return value.get<std::int64_t>();
}

inline std::vector<std::int64_t> as_int_list(const Json& value, const std::string& path) {
  if (!value.is_array()) throw InvalidInput(path + ": expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < value.size(); ++i)
    out.push_back(as_int(value[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

/// Accepts an integer or a string "p" / "p/q".
inline Rat as_rat(const Json& value, const std::string& path) {
  if (value.is_number_integer()) return Rat(value.get<std::int64_t>());
  if (value.is_string()) {
    try {
      return parse_rat(value.get<std::string>());
    } catch (const InvalidInput& e) {
      throw InvalidInput(path + ": " + e.what());
    }
  }
  throw InvalidInput(path + ": expected an integer or a rational string");
}

}  // namespace detail

/// Validates an instance document against the bundle/ci invariants.
inline Instance parse_instance(const Json& doc) {
  using namespace detail;
  if (!doc.is_object()) throw InvalidInput("instance: expected a JSON object");
  const Json& b = require(doc, "bundle", "instance");
  const std::int64_t rank = as_int(require(b, "rank", "bundle"), "bundle.rank");
  const std::int64_t degree = as_int(require(b, "degree", "bundle"), "bundle.degree");
  const std::int64_t genus = b.contains("base_genus") ? as_int(b["base_genus"], "bundle.base_genus") : 0;

  std::optional<std::vector<HnBlock>> hn;
  if (b.contains("hn")) {
    const Json& list = b["hn"];
    if (!list.is_array()) throw InvalidInput("bundle.hn: expected an array");
    hn.emplace();
    for (std::size_t j = 0; j < list.size(); ++j) {
      const std::string path = "bundle.hn[" + std::to_string(j) + "]";
      hn->push_back({as_int(require(list[j], "rank", path), path + ".rank"),
                     as_int(require(list[j], "degree", path), path + ".degree")});
    }
  }

  std::optional<SplitBundle> split;
  if (b.contains("split")) {
    split = SplitBundle{as_int_list(b["split"], "bundle.split")};
    if (split->rank() != rank)
      throw InvalidInput("bundle.split: has " + std::to_string(split->rank()) +
                         " summands but bundle.rank = " + std::to_string(rank));
    if (split->degree() != degree)
      throw InvalidInput("bundle.split: degrees sum to " + std::to_string(split->degree()) +
                         " but bundle.degree = " + std::to_string(degree));
    const auto induced = *split->bundle(genus).hn();
    if (hn && *hn != induced) throw InvalidInput("bundle.hn: inconsistent with bundle.split");
    hn = induced;
  }
  BundleOverCurve bundle(rank, degree, genus, std::move(hn));

  const Json& ci = require(doc, "ci", "instance");
  auto k = as_int_list(require(ci, "k", "ci"), "ci.k");
  auto y = as_int_list(require(ci, "y", "ci"), "ci.y");
  if (ci.contains("c")) {
    const std::int64_t c = as_int(ci["c"], "ci.c");
    if (static_cast<std::int64_t>(k.size()) != c)
      throw InvalidInput("ci.k: length " + std::to_string(k.size()) + " != ci.c = " + std::to_string(c));
  }
  return Instance{RelativeCI(std::move(bundle), std::move(k), std::move(y)), std::move(split), doc};
}

inline Instance parse_instance_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("instance: malformed JSON: ") + e.what());
  }
  return parse_instance(doc);
}

inline std::string str(const BigInt& v) { return to_string(v); }
inline std::string str(const Rat& v) { return to_string(v); }
inline std::string str(std::int64_t v) { return std::to_string(v); }

inline Json envelope(const char* command, const Json& input) {
  Json out;
  out["tool"] = kToolVersion;
  out["command"] = command;
  out["input"] = input;
  return out;
}

inline Json warnings_of(const RelativeCI& x) {
  Json list = Json::array();
  for (auto& w : effectivity_warnings(x)) list.push_back(w);
  return list;
}

inline Json to_json(const PositivityReport& r) {
  Json out;
  out["h"] = str(r.h);
  out["e_cleared"] = str(r.e_cleared);
  out["e_rational"] = r.e_rational ? Json(str(*r.e_rational)) : Json(nullptr);
  out["sign"] = str(std::int64_t{r.sign});
  return out;
}

inline Json to_json(const VerdictReport& v) {
  Json out;
  out["theorem"] = to_string(v.theorem);
  out["conclusion"] = to_string(v.conclusion);
  Json hyps = Json::array();
  for (const auto& [name, holds] : v.hypotheses) hyps.push_back(Json{{"name", name}, {"holds", holds}});
  out["hypotheses"] = hyps;
  Json witnesses = Json::object();
  for (const auto& w : v.witnesses) witnesses[w.name] = str(w.value);
  out["witnesses"] = witnesses;
  Json flags = Json::object();
  for (const auto& [name, value] : v.flags) flags[name] = value;
  out["flags"] = flags;
  out["notes"] = v.notes;
  return out;
}

inline Json to_json(const CycleClass& cls) {
  return Json{{"codim", str(cls.codim)}, {"p", str(cls.p)}, {"q", str(cls.q)}};
}

inline Json to_json(const ConeDescription& cone) {
  return Json{{"kind", to_string(cone.kind)},
              {"codim", str(cone.codim)},
              {"ray1", to_json(cone.ray1)},
              {"ray2", to_json(cone.ray2)},
              {"threshold", str(cone.threshold())}};
}

/// `invariants`: closed-form invariants at one value of h.
inline Json invariants_report(const Instance& inst, std::int64_t h) {
  if (h < 0) throw InvalidInput("-h must be >= 0");
  const auto& x = inst.ci;
  Json out = envelope("invariants", inst.echo);
  Json r;
  r["h"] = str(h);
  r["h_top"] = str(h_top(x));
  r["fibre_deg"] = str(fibre_deg(x));
  r["rank"] = str(rank_pf(x, h));
  r["deg"] = str(deg_pf(x, h));
  if (h >= 1) {
    const auto m = e_margin(x, h);
    r["e_cleared"] = str(m.e_cleared);
    r["e_rational"] = m.e_rational ? Json(str(*m.e_rational)) : Json(nullptr);
  } else {
    r["e_cleared"] = nullptr;
    r["e_rational"] = nullptr;
  }
  r["alpha"] = str(alpha(x));
  const auto kc = canonical_coeffs(x);
  r["canonical"] = Json{{"a", str(kc.a)}, {"b", str(kc.b)}, {"general_type_fibres", kc.general_type_fibres}};
  r["kf_top"] = str(kf_top(x));
  r["balanced"] = x.balanced();
  out["results"] = r;
  out["warnings"] = warnings_of(x);
  return out;
}

/// `verdict`: every theorem-level decision for the instance.
inline Json verdict_report(const Instance& inst) {
  const auto& x = inst.ci;
  Json out = envelope("verdict", inst.echo);
  Json r;
  r["small_h"] = to_json(small_h_verdict(x));
  r["asymptotic"] = to_json(asymptotic_verdict(x));
  r["slope"] = to_json(slope_verdict(x));
  r["cone"] = to_json(cone_membership_verdict(x));
  if (x.bundle().has_hn()) {
    const auto cls = classify(x.bundle(), ci_class(x));
    r["cone"]["region"] = to_string(cls.region);
  } else {
    r["cone"]["region"] = nullptr;
  }
  r["instability"] = to_json(instability_verdict(x));
  out["results"] = r;
  out["warnings"] = warnings_of(x);
  return out;
}

struct ConesOutput {
  Json report;
  std::string svg;
};

/// Three nested wedges in the (H^c, H^{c-1}Σ) plane. Coordinates are for
/// drawing only; exact slopes sit in data-slope attributes.
inline std::string cones_svg(const BundleOverCurve& bundle, std::int64_t c) {
  const ConeDescription cones[] = {cone(bundle, c, ConeKind::Pseff), cone(bundle, c, ConeKind::Bridge),
                                   cone(bundle, c, ConeKind::Nef)};
  const char* fills[] = {"#f4c7a1", "#9fc5e8", "#93c47d"};
  const double size = 400.0;
  const double ox = 60.0;
  const double oy = 200.0;
  const double radius = 300.0;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size + 100
      << "\" height=\"" << size << "\" viewBox=\"0 0 " << size + 100 << " " << size << "\">\n"
      << "  <title>Cones in N^" << c << "(P): Nef, Bridge, Pseff</title>\n"
      << "  <line x1=\"" << ox << "\" y1=\"" << oy << "\" x2=\"" << ox + radius << "\" y2=\"" << oy
      << "\" stroke=\"#999\"/>\n"
      << "  <line x1=\"" << ox << "\" y1=\"20\" x2=\"" << ox << "\" y2=\"" << size - 20
      << "\" stroke=\"#999\"/>\n";
  svg.setf(std::ios::fixed);
  svg.precision(3);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& cn = cones[i];
    const double t = cn.threshold().convert_to<double>();
    // ray2 direction (1, -t); screen y grows downward so q maps to -y.
    const double len = std::sqrt(1.0 + t * t);
    const double x2 = ox + radius * (1.0 / len);
    const double y2 = oy + radius * (t / len);
    svg << "  <path class=\"cone\" id=\"" << to_string(cn.kind) << "\" data-slope=\""
        << to_string(cn.threshold()) << "\" d=\"M " << ox << " " << oy << " L " << ox << " "
        << oy - radius << " L " << x2 << " " << y2 << " Z\" fill=\"" << fills[i]
        << "\" fill-opacity=\"0.6\" stroke=\"#333\"/>\n";
    svg << "  <text x=\"" << x2 + 6 << "\" y=\"" << y2 << "\" font-size=\"12\">"
        << to_string(cn.kind) << ": H^c - (" << to_string(cn.threshold()) << ") H^{c-1}S</text>\n";
  }
  const bool coincide = bundle.is_semistable();
  svg << "  <text x=\"10\" y=\"" << size - 8 << "\" font-size=\"12\">"
      << (coincide ? "E semistable: the three cones coincide" : "Nef inside Bridge inside Pseff")
      << "</text>\n</svg>\n";
  return svg.str();
}

/// `cones`: extremal rays of the three cones in codimension c.
inline ConesOutput cones_report(const Instance& inst, std::int64_t c) {
  const auto& bundle = inst.ci.bundle();
  bundle.hn_or_throw();
  check_codim(bundle, c);
  Json out = envelope("cones", inst.echo);
  Json r;
  r["codim"] = str(c);
  Json slopes = Json::array();
  for (const auto& s : virtual_slopes(bundle)) slopes.push_back(str(s));
  r["virtual_slopes"] = slopes;
  r["pseff"] = to_json(cone(bundle, c, ConeKind::Pseff));
  r["bridge"] = to_json(cone(bundle, c, ConeKind::Bridge));
  r["nef"] = to_json(cone(bundle, c, ConeKind::Nef));
  r["cones_coincide"] = bundle.is_semistable();
  out["results"] = r;
  return {out, cones_svg(bundle, c)};
}

/// `sweep`: margins for h = 1..h_max plus the stable-regime polynomial.
inline Json sweep_report(const Instance& inst, std::int64_t h_max) {
  const auto sweep = h_sweep(inst.ci, h_max);
  Json out = envelope("sweep", inst.echo);
  Json rows = Json::array();
  for (const auto& row : sweep.rows) {
    Json j = to_json(row.margin);
    j["band"] = to_string(row.band);
    rows.push_back(j);
  }
  Json r;
  r["h_max"] = str(h_max);
  r["rows"] = rows;
  Json coeffs = Json::array();
  for (const auto& a : sweep.stable_polynomial.coefficients()) coeffs.push_back(str(a));
  r["stable_polynomial"] = Json{{"variable", "h"},
                                {"normalization", "margin / h^(r-c-1)"},
                                {"coefficients_ascending", coeffs}};
  r["h0"] = str(sweep.h0);
  r["eventual_sign"] = str(std::int64_t{sweep.eventual_sign});
  out["results"] = r;
  out["warnings"] = warnings_of(inst.ci);
  return out;
}

struct OracleOutput {
  Json report;
  bool all_passed;
};

/// `oracle`: brute-force suites against the closed forms; needs bundle.split.
inline OracleOutput oracle_report(const Instance& inst, std::int64_t h_max, OracleLimits limits = {}) {
  if (!inst.split) throw InvalidInput("bundle.split: required by the oracle command");
  if (h_max < 0) throw InvalidInput("--h-max must be >= 0");
  const auto suites = run_oracle_suites(*inst.split, inst.ci, h_max, limits);
  Json out = envelope("oracle", inst.echo);
  Json list = Json::array();
  bool ok = true;
  for (const auto& s : suites) {
    list.push_back(Json{{"suite", s.name}, {"checks", s.checks}, {"passed", s.passed()}, {"mismatches", s.mismatches}});
    ok = ok && s.passed();
  }
  out["results"] = Json{{"suites", list},
                        {"summary", ok ? "all " + std::to_string(suites.size()) + " oracle suites passed"
                                       : std::string("oracle mismatch")}};
  return {out, ok};
}

/// `contact`: Hilbert-Mumford checks from a JSON document
/// {"weights": [...], "Y": {"ambient_n", "dim", "deg", "e_F"}, "Z": {...}}.
inline Json contact_report(const Json& doc) {
  using namespace detail;
  if (!doc.is_object()) throw InvalidInput("contact: expected a JSON object");
  const Json& wj = require(doc, "weights", "contact");
  if (!wj.is_array()) throw InvalidInput("contact.weights: expected an array");
  std::vector<Rat> weights;
  for (std::size_t i = 0; i < wj.size(); ++i)
    weights.push_back(as_rat(wj[i], "contact.weights[" + std::to_string(i) + "]"));
  const WeightFiltration w(std::move(weights));

  auto read_instance = [&](const char* key) {
    const Json& t = require(doc, key, "contact");
    const std::string path = std::string("contact.") + key;
    ContactInstance inst{t.contains("ambient_n") ? as_int(t["ambient_n"], path + ".ambient_n") : w.ambient_n(),
                         as_int(require(t, "dim", path), path + ".dim"),
                         BigInt(as_int(require(t, "deg", path), path + ".deg")),
                         as_rat(require(t, "e_F", path), path + ".e_F")};
    inst.validate();
    return inst;
  };
  auto describe = [&](const ContactInstance& t) {
    return Json{{"ambient_n", str(t.ambient_n)}, {"dim", str(t.dim)}, {"deg", str(t.deg)},
                {"e_F", str(t.e_f)}, {"normalized", str(normalized_contact(t))},
                {"hm", to_string(hm_test(t, w))}};
  };

  Json out = envelope("contact", doc);
  Json r;
  r["weight_mean"] = str(w.mean());
  const ContactInstance y = read_instance("Y");
  r["Y"] = describe(y);
  if (doc.contains("Z")) {
    const ContactInstance z = read_instance("Z");
    r["Z"] = describe(z);
    const auto check = intersection_semistability_check(y, z, w);
    if (check.precondition_violation) {
      r["intersection"] = nullptr;
      r["propagation"] = Json{{"precondition_violation", *check.precondition_violation}};
    } else {
      r["intersection"] = describe(check.product);
      r["propagation"] = Json{{"holds", check.holds}, {"strictness_propagated", check.strictness_propagated}};
    }
  }
  out["results"] = r;
  return out;
}

/// `example`: numerical validator for the O(a)^{r-1} ⊕ O(a-1) family.
inline Json example_report(std::int64_t a, std::int64_t r, std::int64_t c, std::int64_t m,
                           Orientation orientation) {
  const auto ex = build_example(a, r, c, m, orientation);
  Json input{{"a", str(a)}, {"r", str(r)}, {"c", str(c)}, {"m", str(m)},
             {"orientation", orientation == Orientation::AsWritten ? "as-written" : "swapped"}};
  Json out = envelope("example", input);
  Json hn = Json::array();
  for (const auto& block : *ex.bundle.hn()) hn.push_back(Json{{"rank", str(block.rank)}, {"degree", str(block.degree)}});
  Json res;
  res["bundle"] = Json{{"rank", str(ex.bundle.rank())}, {"degree", str(ex.bundle.degree())}, {"hn", hn}};
  Json ks = Json::array();
  Json ys = Json::array();
  for (auto v : ex.ci.k()) ks.push_back(str(v));
  for (auto v : ex.ci.y()) ys.push_back(str(v));
  res["ci"] = Json{{"k", ks}, {"y", ys}};
  res["validator"] = to_json(ex.report);
  res["instability"] = to_json(instability_verdict(ex.ci));
  out["results"] = res;
  return out;
}

/// Indented "key: value" rendering of any report, for terminals.
inline void render_summary(const Json& value, std::ostream& os, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (value.is_object()) {
    for (const auto& [key, child] : value.items()) {
      if (child.is_structured() && !child.empty()) {
        os << pad << key << ":\n";
        render_summary(child, os, indent + 2);
      } else {
        os << pad << key << ": " << (child.is_string() ? child.get<std::string>() : child.dump()) << "\n";
      }
    }
  } else if (value.is_array()) {
    for (const auto& child : value) {
      if (child.is_structured()) {
        os << pad << "-\n";
        render_summary(child, os, indent + 2);
      } else {
        os << pad << "- " << (child.is_string() ? child.get<std::string>() : child.dump()) << "\n";
      }
    }
  } else {
    os << pad << value.dump() << "\n";
  }
}

}  // namespace relci::report
