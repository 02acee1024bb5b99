// Command-line front end: instance file in, JSON report (or summary) out.
//
// Exit codes: 0 success, 2 input validation, 3 internal assertion,
// 4 oracle mismatch.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "relci/report.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 3;
constexpr int kExitOracle = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw relci::InvalidInput("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const relci::report::Json& doc, bool pretty) {
  if (pretty) {
    relci::report::render_summary(doc, std::cout);
  } else {
    std::cout << doc.dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariants and verdicts for relative complete intersections"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  std::string input_path;
  std::int64_t h = 1;
  std::int64_t h_max = 12;
  std::int64_t codim = 1;
  std::string svg_path;
  bool pretty = false;
  std::int64_t ex_a = 1, ex_r = 4, ex_c = 2, ex_m = 1;
  std::string orientation = "as-written";

  auto add_output_flags = [&](CLI::App* cmd) {
    auto* json = cmd->add_flag("--json", "Emit JSON (default)");
    cmd->add_flag("--pretty", pretty, "Emit a human-readable summary instead of JSON")->excludes(json);
  };

  auto* invariants = app.add_subcommand("invariants", "Closed-form invariants at one h");
  invariants->add_option("-i,--input", input_path, "Instance file")->required();
  invariants->add_option("-h", h, "Twist h (default 1)");
  add_output_flags(invariants);

  auto* verdict = app.add_subcommand("verdict", "Theorem-level verdicts");
  verdict->add_option("-i,--input", input_path, "Instance file")->required();
  add_output_flags(verdict);

  auto* cones = app.add_subcommand("cones", "Pseff / Bridge / Nef cones in codimension c");
  cones->add_option("-i,--input", input_path, "Instance file")->required();
  cones->add_option("-c,--codim", codim, "Codimension (default: the instance's c)");
  cones->add_option("--svg", svg_path, "Write an SVG wedge diagram here");
  add_output_flags(cones);

  auto* sweep = app.add_subcommand("sweep", "Margins for h = 1..h_max");
  sweep->add_option("-i,--input", input_path, "Instance file")->required();
  sweep->add_option("--h-max", h_max, "Largest h (default 12)");
  add_output_flags(sweep);

  auto* oracle = app.add_subcommand("oracle", "Brute-force oracles vs closed forms");
  oracle->add_option("-i,--input", input_path, "Instance file with bundle.split")->required();
  oracle->add_option("--h-max", h_max, "Largest h (default 12)");
  add_output_flags(oracle);

  auto* contact = app.add_subcommand("contact", "Hilbert-Mumford checks on degrees of contact");
  contact->add_option("-i,--input", input_path, "Contact JSON document")->required();
  add_output_flags(contact);

  auto* example = app.add_subcommand("example", "Validate the O(a)^{r-1} + O(a-1) family");
  example->add_option("--a", ex_a, "a >= 1")->required();
  example->add_option("--r", ex_r, "r >= 3")->required();
  example->add_option("--c", ex_c, "1 <= c <= r-2")->required();
  example->add_option("--m", ex_m, "m >= 1")->required();
  example->add_option("--orientation", orientation, "as-written | swapped")
      ->check(CLI::IsMember({"as-written", "swapped"}));
  add_output_flags(example);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  using namespace relci::report;
  try {
    if (*example) {
      emit(example_report(ex_a, ex_r, ex_c, ex_m,
                          orientation == "swapped" ? relci::Orientation::Swapped
                                                   : relci::Orientation::AsWritten),
           pretty);
      return 0;
    }
    if (*contact) {
      Json doc;
      try {
        doc = Json::parse(read_file(input_path));
      } catch (const Json::parse_error& e) {
        throw relci::InvalidInput(std::string("contact: malformed JSON: ") + e.what());
      }
      emit(contact_report(doc), pretty);
      return 0;
    }

    const Instance inst = parse_instance_text(read_file(input_path));
    if (*invariants) {
      emit(invariants_report(inst, h), pretty);
    } else if (*verdict) {
      emit(verdict_report(inst), pretty);
    } else if (*cones) {
      const std::int64_t c = cones->count("--codim") ? codim : inst.ci.c();
      auto out = cones_report(inst, c);
      if (!svg_path.empty()) {
        std::ofstream svg(svg_path, std::ios::binary);
        if (!svg) throw relci::InvalidInput("cannot write '" + svg_path + "'");
        svg << out.svg;
        out.report["results"]["svg"] = svg_path;
      }
      emit(out.report, pretty);
    } else if (*sweep) {
      emit(sweep_report(inst, h_max), pretty);
    } else if (*oracle) {
      const auto out = oracle_report(inst, h_max);
      emit(out.report, pretty);
      if (!out.all_passed) return kExitOracle;
    }
    return 0;
  } catch (const relci::IntegrityError& e) {
    std::cerr << "internal assertion failed: " << e.what() << "\n";
    return kExitInternal;
  } catch (const relci::HypothesisViolation& e) {
    std::cerr << "hypothesis violated (" << e.hypothesis() << "): " << e.what() << "\n";
    return kExitInvalid;
  } catch (const relci::InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  }
}
