// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   relci_acceptance            run all criteria
//   relci_acceptance --only N   run criterion N
//
// Exit status is 0 iff every selected criterion passed.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "relci/relci.hpp"

using namespace relci;

namespace {

struct Outcome {
  bool passed = true;
  std::int64_t checks = 0;
  std::string detail;  // first failure, or a short summary

  void expect(bool ok, const std::function<std::string()>& describe) {
    ++checks;
    if (!ok && passed) {
      passed = false;
      detail = describe();
    }
  }
};

using Rng = std::mt19937_64;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

std::string join(std::span<const std::int64_t> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string describe(const RelativeCI& x) {
  return "r=" + std::to_string(x.r()) + " d=" + std::to_string(x.d()) + " k=" + join(x.k()) +
         " y=" + join(x.y());
}

/// Random instance over a semistable bundle with r, c, k, y, d in the given ranges.
RelativeCI random_instance(Rng& rng, std::int64_t r_lo, std::int64_t r_hi, std::int64_t k_lo,
                           std::int64_t k_hi, std::int64_t y_abs, std::int64_t d_abs) {
  const std::int64_t r = uniform(rng, r_lo, r_hi);
  const std::int64_t c = uniform(rng, 1, r - 2);
  std::vector<std::int64_t> k, y;
  for (std::int64_t i = 0; i < c; ++i) {
    k.push_back(uniform(rng, k_lo, k_hi));
    y.push_back(uniform(rng, -y_abs, y_abs));
  }
  return RelativeCI(BundleOverCurve::semistable(r, uniform(rng, -d_abs, d_abs)), k, y);
}

/// Random balanced instance with ck > r (and optionally c = r - 2).
RelativeCI random_balanced_general_type(Rng& rng, bool surface) {
  while (true) {
    const std::int64_t r = uniform(rng, 3, 8);
    const std::int64_t c = surface ? r - 2 : uniform(rng, 1, r - 2);
    const std::int64_t k = uniform(rng, 2, 6);
    if (c * k <= r) continue;
    std::vector<std::int64_t> y;
    for (std::int64_t i = 0; i < c; ++i) y.push_back(uniform(rng, -10, 10));
    return RelativeCI(BundleOverCurve::semistable(r, uniform(rng, -10, 10)),
                      std::vector<std::int64_t>(static_cast<std::size_t>(c), k), y);
  }
}

// 1. For h < min k_i the cleared margin is h^{n-1}·(h/r)·C(h+r-1, r-1)·α.
Outcome small_h_proportionality() {
  Outcome o;
  Rng rng(101);
  std::int64_t rows = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto x = random_instance(rng, 3, 8, 2, 6, 10, 10);
    const BigInt a = alpha(x);
    for (std::int64_t h = 1; h < x.k_min(); ++h) {
      ++rows;
      const auto m = e_margin(x, h);
      const Rat expected = Rat(ipow(BigInt(h), x.dim() - 1)) * Rat(h, x.r()) *
                           Rat(binom_trunc(h + x.r() - 1, x.r() - 1)) * Rat(a);
      o.expect(Rat(m.e_cleared) == expected, [&] {
        return describe(x) + " h=" + std::to_string(h) + ": e_cleared " + m.e_cleared.str() +
               " vs " + to_string(expected);
      });
      o.expect(m.sign == sign(a), [&] { return describe(x) + ": sign(margin) != sign(alpha)"; });
    }
  }
  if (o.passed) o.detail = "500 instances, " + std::to_string(rows) + " (instance, h) rows";
  return o;
}

// 2. Interpolated stable margin has degree <= r-c and the stated leading
//    coefficient (1 + (r-c)·P)·α / r in degree r-c.
Outcome asymptotic_leading_coefficient() {
  Outcome o;
  Rng rng(202);
  std::int64_t mismatches = 0;
  std::optional<std::string> first;
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = random_instance(rng, 3, 8, 2, 6, 10, 10);
    const std::int64_t n = x.dim();
    std::vector<Sample> samples;
    for (std::int64_t h = x.k_total(); h <= x.k_total() + n + 1; ++h)
      samples.push_back({h, Rat(normalized_margin(x, h))});
    const UniPoly poly = interpolate(samples);
    const Rat claimed = Rat((1 + BigInt(n) * x.k_product()) * alpha(x), x.r());
    const Rat actual = poly.coefficient(static_cast<std::size_t>(n));
    const bool ok = poly.degree() <= n && actual == claimed;
    if (!ok) {
      ++mismatches;
      if (!first)
        first = describe(x) + ": degree " + std::to_string(poly.degree()) + ", coefficient of h^" +
                std::to_string(n) + " is " + to_string(actual) + ", claimed " + to_string(claimed);
    }
    o.expect(ok, [&] { return *first; });
  }
  if (!o.passed) o.detail += " [" + std::to_string(mismatches) + "/200 instances disagree]";
  else o.detail = "200 instances";
  return o;
}

// 3. Balanced closed form against the margin summed over every subset.
Outcome balanced_identity() {
  Outcome o;
  Rng rng(303);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t r = uniform(rng, 3, 8);
    const std::int64_t c = uniform(rng, 1, r - 2);
    const std::int64_t k = uniform(rng, 2, 6);
    std::vector<std::int64_t> y;
    for (std::int64_t i = 0; i < c; ++i) y.push_back(uniform(rng, -10, 10));
    const RelativeCI x(BundleOverCurve::semistable(r, uniform(rng, -10, 10)),
                       std::vector<std::int64_t>(static_cast<std::size_t>(c), k), y);
    for (std::int64_t h = 1; h <= 3 * k; ++h) {
      const BigInt general = BigInt(r) * normalized_margin(x, h, SumPath::Subsets);
      const BigInt closed = balanced_margin(x, h);
      o.expect(general == closed, [&] {
        return describe(x) + " h=" + std::to_string(h) + ": general " + general.str() +
               " vs closed form " + closed.str();
      });
    }
  }
  if (o.passed) o.detail = "200 instances, h = 1..3k";
  return o;
}

/// Instances shared by criteria 4 and 8.
std::vector<RelativeCI> slope_suite() {
  Rng rng(404);
  std::vector<RelativeCI> out;
  for (int i = 0; i < 200; ++i) out.push_back(random_balanced_general_type(rng, false));
  return out;
}

// 4. K_f^n closed form and the three equivalent slope predicates.
Outcome slope_theorem() {
  Outcome o;
  for (const auto& x : slope_suite()) {
    const std::int64_t k = x.k().front();
    const std::int64_t n = x.dim();
    const BigInt kf = kf_top(x);
    const BigInt expected = ipow(BigInt(x.c() * k - x.r()), n - 1) * (k - 1) * alpha(x);
    o.expect(kf == expected, [&] {
      return describe(x) + ": kf_top " + kf.str() + " vs " + expected.str();
    });
    const auto margin = slope_margin(x);
    const bool p1 = kf >= 0;
    const bool p2 = margin.direct_cleared >= 0;
    const bool p3 = x.bundle().slope() >= Rat(x.y_total(), x.c() * k);
    o.expect(p1 == p2 && p2 == p3, [&] { return describe(x) + ": slope predicates differ"; });
  }
  if (o.passed) o.detail = "200 balanced instances with ck > r";
  return o;
}

// 5. Worked instance, every value derived from the oracles first.
Outcome worked_instance() {
  Outcome o;
  const SplitBundle e{{1, 1, 1, 1}};
  const RelativeCI x(e.bundle(), {3, 3}, {1, 2});
  const auto chow = chow_expand(x);
  const std::int64_t h = x.k_total() - x.r();
  const BigInt rank = hilbert_series_rank({3, 3}, 4, h);
  const BigInt deg = koszul_degree_bruteforce(e, x, h);
  const BigInt canonical_degree = deg - BigInt(x.y_total() - x.d()) * rank;
  const std::int64_t n = x.dim();
  const BigInt kf_fibre = ipow(BigInt(h), n - 1) * chow.fibre_deg;
  const BigInt slope = chow.kf_top * rank - BigInt(n) * kf_fibre * canonical_degree;

  auto check = [&](const char* name, const BigInt& oracle, const BigInt& literal, const BigInt& closed) {
    o.expect(oracle == literal && closed == literal, [&] {
      return std::string(name) + ": oracle " + oracle.str() + ", closed form " + closed.str() +
             ", expected " + literal.str();
    });
  };
  const auto sm = slope_margin(x);
  check("h_top", chow.h_top, 27, h_top(x));
  check("fibre_deg", chow.fibre_deg, 9, fibre_deg(x));
  check("alpha", BigInt(x.c()) * numerator_of(chow.ci_class.p) * x.d() +
                     BigInt(x.r()) * numerator_of(chow.ci_class.q),
        36, alpha(x));
  check("K_f^2", chow.kf_top, 144, kf_top(x));
  check("rank f_*omega", rank, 10, sm.canonical_rank);
  check("deg f_*omega", canonical_degree, 30, sm.canonical_degree);
  check("slope margin", slope, 360, sm.direct_cleared);
  if (o.passed) o.detail = "27, 9, 36, 144, 10, 30, 360";
  return o;
}

// 6. Closed forms for K_f² and deg f_*ω_f of balanced surfaces.
Outcome enokizono_identities() {
  Outcome o;
  Rng rng(606);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_balanced_general_type(rng, true);
    const auto en = enokizono(x);
    o.expect(en.kf2_matches, [&] {
      return describe(x) + ": K_f^2 " + en.kf2_direct.str() + " vs formula " + en.kf2_formula.str();
    });
    o.expect(en.degpf_matches, [&] {
      return describe(x) + ": deg " + en.degpf_direct.str() + " vs formula " + to_string(en.degpf_formula);
    });
    o.expect(en.ratio_holds, [&] { return describe(x) + ": ratio identity fails"; });
  }
  if (o.passed) o.detail = "100 surfaces";
  return o;
}

// 7. Brute-force oracles against the closed forms.
Outcome oracle_equivalence() {
  Outcome o;
  struct Config {
    std::vector<std::int64_t> k, y;
  };
  const std::vector<Config> configs{{{2}, {1}},          {{5}, {-3}},         {{3}, {0}},
                                    {{2, 3}, {0, -2}},   {{4, 4}, {1, 1}},    {{5, 2}, {3, -4}},
                                    {{2, 2, 5}, {1, -1, 2}}, {{3, 4, 5}, {-2, 0, 4}}};
  std::int64_t grid_bundles = 0;
  auto check_pair = [&](const SplitBundle& e, const RelativeCI& x) {
    const SymPowerTable table(e, 12);
    const std::vector<std::int64_t> k(x.k().begin(), x.k().end());
    for (std::int64_t h = 0; h <= 12; ++h) {
      const BigInt kd = koszul_degree_bruteforce(table, x, h);
      const BigInt cd = deg_pf(x, h);
      o.expect(kd == cd, [&] {
        return "split " + join(e.line_degrees) + " " + describe(x) + " h=" + std::to_string(h) +
               ": koszul " + kd.str() + " vs deg_pf " + cd.str();
      });
      const BigInt hs = hilbert_series_rank(k, x.r(), h);
      const BigInt cr = rank_pf(x, h);
      o.expect(hs == cr, [&] {
        return describe(x) + " h=" + std::to_string(h) + ": series " + hs.str() + " vs rank_pf " + cr.str();
      });
    }
  };

  // Exhaustive grid: sorted splittings with entries in [-4, 4], r = 3..5.
  for (std::int64_t r = 3; r <= 5; ++r) {
    std::vector<std::int64_t> a(static_cast<std::size_t>(r), -4);
    while (true) {
      const SplitBundle e{a};
      ++grid_bundles;
      for (const auto& cfg : configs) {
        if (static_cast<std::int64_t>(cfg.k.size()) > r - 2) continue;
        check_pair(e, RelativeCI(e.bundle(), cfg.k, cfg.y));
      }
      // Next non-decreasing sequence.
      std::size_t i = a.size();
      while (i > 0 && a[i - 1] == 4) --i;
      if (i == 0) break;
      ++a[i - 1];
      for (std::size_t j = i; j < a.size(); ++j) a[j] = a[i - 1];
    }
  }

  // Random draws; chow_expand is compared on these too.
  Rng rng(707);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t r = uniform(rng, 3, 5);
    SplitBundle e;
    for (std::int64_t i = 0; i < r; ++i) e.line_degrees.push_back(uniform(rng, -4, 4));
    const std::int64_t c = uniform(rng, 1, r - 2);
    std::vector<std::int64_t> k, y;
    for (std::int64_t i = 0; i < c; ++i) {
      k.push_back(uniform(rng, 2, 5));
      y.push_back(uniform(rng, -6, 6));
    }
    const RelativeCI x(e.bundle(), k, y);
    check_pair(e, x);
    const auto ch = chow_expand(x);
    const auto cls = ci_class(x);
    o.expect(ch.h_top == h_top(x) && ch.fibre_deg == fibre_deg(x) && ch.kf_top == kf_top(x) &&
                 ch.ci_class == cls,
             [&] { return describe(x) + ": chow_expand disagrees with closed forms"; });
  }
  if (o.passed)
    o.detail = std::to_string(grid_bundles) + " grid bundles x " + std::to_string(configs.size()) +
               " configs + 200 random draws, h = 0..12";
  return o;
}

// 8. Direct canonical margin equals the cleared margin of O_X(k_J - r).
Outcome twist_lemma() {
  Outcome o;
  for (const auto& x : slope_suite()) {
    std::optional<SlopeMarginReport> sm;
    try {
      sm = slope_margin(x);
    } catch (const IntegrityError& e) {
      o.expect(false, [&] { return describe(x) + ": " + e.what(); });
      continue;
    }
    const BigInt twisted = e_margin(x, x.k_total() - x.r()).e_cleared;
    o.expect(sm->direct_cleared == twisted, [&] {
      return describe(x) + ": direct " + sm->direct_cleared.str() + " vs e_margin " + twisted.str();
    });
  }
  if (o.passed) o.detail = "200 instances from criterion 4";
  return o;
}

/// Random HN filtration: ℓ blocks with strictly decreasing slopes.
BundleOverCurve random_hn_bundle(Rng& rng) {
  while (true) {
    const std::int64_t r = uniform(rng, 3, 8);
    const std::int64_t l = uniform(rng, 1, std::min<std::int64_t>(r, 4));
    std::vector<std::int64_t> ranks(static_cast<std::size_t>(l), 1);
    for (std::int64_t extra = r - l; extra > 0; --extra) ++ranks[static_cast<std::size_t>(uniform(rng, 0, l - 1))];
    std::vector<HnBlock> blocks;
    for (auto rk : ranks) blocks.push_back({rk, uniform(rng, -12, 12)});
    std::sort(blocks.begin(), blocks.end(), [](const HnBlock& a, const HnBlock& b) { return a.slope() > b.slope(); });
    bool strict = true;
    for (std::size_t j = 1; j < blocks.size(); ++j) strict = strict && blocks[j - 1].slope() > blocks[j].slope();
    if (!strict) continue;
    std::int64_t d = 0;
    for (const auto& b : blocks) d += b.degree;
    return BundleOverCurve(r, d, 0, blocks);
  }
}

// 9. Cone structure from HN data.
Outcome cone_structure() {
  Outcome o;
  Rng rng(909);
  for (int trial = 0; trial < 200; ++trial) {
    const auto e = random_hn_bundle(rng);
    const auto slopes = virtual_slopes(e);
    Rat total = 0;
    for (const auto& s : slopes) total += s;
    o.expect(total == e.degree(), [&] { return "virtual slopes do not sum to d"; });
    const bool several = e.hn()->size() >= 2;
    for (std::int64_t c = 1; c < e.rank(); ++c) {
      const Rat nef = cone_threshold(e, c, ConeKind::Nef);
      const Rat bridge = cone_threshold(e, c, ConeKind::Bridge);
      const Rat pseff = cone_threshold(e, c, ConeKind::Pseff);
      o.expect(nef <= bridge && bridge <= pseff, [&] { return "cones not nested at c=" + std::to_string(c); });
      o.expect((nef < bridge && bridge < pseff) == several, [&] {
        return "strictness at c=" + std::to_string(c) + " does not match l >= 2";
      });
    }
    o.expect(cone_threshold(e, 1, ConeKind::Nef) == e.min_slope() &&
                 cone_threshold(e, 1, ConeKind::Pseff) == e.max_slope(),
             [&] { return "c = 1 thresholds differ from (mu_l, mu_1)"; });

    const std::int64_t c = uniform(rng, 1, e.rank() - 2);
    std::vector<std::int64_t> k, y;
    for (std::int64_t i = 0; i < c; ++i) {
      k.push_back(uniform(rng, 2, 6));
      y.push_back(uniform(rng, -10, 10));
    }
    const RelativeCI x(e, k, y);
    const bool outside = classify(e, ci_class(x)).strictly_outside_bridge();
    const bool fires = instability_verdict(x).conclusion == Conclusion::FibresUnstable;
    o.expect(outside == fires, [&] { return describe(x) + ": classify and instability_verdict disagree"; });
  }
  if (o.passed) o.detail = "200 HN profiles";
  return o;
}

// 10. Semistable contact data propagates to proper intersections.
Outcome contact_propagation() {
  Outcome o;
  Rng rng(1010);
  int pairs = 0;
  int strict_inputs = 0;
  while (pairs < 1000) {
    const std::int64_t n = uniform(rng, 2, 6);
    std::vector<Rat> ws;
    for (std::int64_t i = 0; i <= n; ++i) ws.push_back(Rat(uniform(rng, 0, 12), uniform(rng, 1, 4)));
    if (std::all_of(ws.begin(), ws.end(), [](const Rat& v) { return v == 0; })) continue;
    const WeightFiltration w(ws);
    auto draw = [&](std::int64_t dim) {
      const BigInt deg = uniform(rng, 1, 5);
      const Rat bound = Rat(dim + 1) * Rat(deg) * w.mean();
      // Half the draws sit exactly on the bound.
      const Rat t = uniform(rng, 0, 1) ? Rat(1) : Rat(uniform(rng, 0, 99), 100);
      return ContactInstance{n, dim, deg, bound * t};
    };
    const std::int64_t dy = uniform(rng, 1, n);
    const std::int64_t dz = uniform(rng, n - dy, n);
    const auto y = draw(dy);
    const auto z = draw(dz);
    const auto check = intersection_semistability_check(y, z, w);
    if (check.precondition_violation) continue;
    ++pairs;
    if (hm_test(y, w) == HmLevel::Stable || hm_test(z, w) == HmLevel::Stable) ++strict_inputs;
    o.expect(check.holds, [&] { return "intersection violates the semistable bound"; });
    o.expect(check.strictness_propagated, [&] { return "strictness did not propagate"; });
  }
  if (o.passed)
    o.detail = "1000 pairs (" + std::to_string(strict_inputs) + " with a strict input), zero counterexamples";
  return o;
}

std::optional<std::string> capture(const std::string& cmd) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return std::nullopt;
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return std::nullopt;
  return out;
}

// 11. `verdict` output is byte-identical across runs.
Outcome determinism() {
  Outcome o;
  const std::string cmd = std::string(RELCI_CLI_PATH) + " verdict -i " + RELCI_DATA_DIR + "/worked.json";
  std::vector<std::string> outputs;
  for (int i = 0; i < 3; ++i) {
    const auto out = capture(cmd);
    o.expect(out.has_value(), [&] { return "cli run " + std::to_string(i + 1) + " failed"; });
    if (!out) return o;
    outputs.push_back(*out);
  }
  o.expect(outputs[0] == outputs[1] && outputs[1] == outputs[2], [&] { return "outputs differ"; });
  if (o.passed) o.detail = "3 runs, " + std::to_string(outputs[0].size()) + " bytes each";
  return o;
}

struct Criterion {
  int id;
  const char* title;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "small-h proportionality", small_h_proportionality},
    {2, "asymptotic leading coefficient", asymptotic_leading_coefficient},
    {3, "balanced closed form", balanced_identity},
    {4, "slope theorem", slope_theorem},
    {5, "worked instance", worked_instance},
    {6, "Enokizono identities", enokizono_identities},
    {7, "oracle equivalence", oracle_equivalence},
    {8, "twist lemma", twist_lemma},
    {9, "cone structure", cone_structure},
    {10, "contact propagation", contact_propagation},
    {11, "determinism", determinism},
};

}  // namespace

int main(int argc, char** argv) {
  std::optional<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: " << argv[0] << " [--only N]\n";
      return 2;
    }
  }

  bool all = true;
  bool ran = false;
  for (const auto& c : kCriteria) {
    if (only && *only != c.id) continue;
    ran = true;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.passed;
    std::cout << "criterion " << c.id << ": " << (o.passed ? "PASS" : "FAIL") << "  " << c.title << "  ["
              << o.checks << " checks] " << o.detail << "\n";
  }
  if (!ran) {
    std::cerr << "no criterion " << *only << "\n";
    return 2;
  }
  return all ? 0 : 1;
}
