#include "fixfnm/cli.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fixfnm/decision.hpp"
#include "fixfnm/error.hpp"
#include "fixfnm/fixpoints.hpp"
#include "fixfnm/oracle.hpp"
#include "fixfnm/product.hpp"
#include "fixfnm/text.hpp"

namespace fixfnm::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

ProductEndo load_endo(const std::string& path) { return parse_endo(text::read_file(path)); }
FreeHom load_hom(const std::string& path) { return parse_hom(text::read_file(path)); }

std::vector<Word> load_basis(const std::string& path, Alphabet alphabet) {
  const std::string content = text::read_file(path);
  std::vector<Word> basis;
  for (const auto& line : text::significant_lines(content)) {
    basis.push_back(parse_word(line.content, alphabet, line.number, line.offset + 1));
  }
  return basis;
}

void need_inputs(const RunConfig& c, std::size_t count) {
  if (c.inputs.size() != count) {
    throw std::invalid_argument("expected " + std::to_string(count) + " input file(s)");
  }
}

BallSpec ball(const RunConfig& c) {
  if (!c.radius) throw std::invalid_argument("--radius is required");
  const BallSpec spec{*c.radius};
  check_radius(spec);
  return spec;
}

std::string lines(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += s + "\n";
  return out;
}

template <class T>
std::vector<std::string> strings(const std::vector<T>& items) {
  std::vector<std::string> out;
  for (const auto& x : items) out.push_back(to_string(x));
  return out;
}

RunResult emit(const RunConfig& c, int code, std::string text, json j) {
  if (c.json) return {code, j.dump(2) + "\n"};
  return {code, std::move(text)};
}

RunResult classify_cmd(const RunConfig& c) {
  need_inputs(c, 1);
  const ProductEndo e = load_endo(c.inputs[0]);
  const EndoType t = classify(e);
  std::string d = describe(t);
  if (!d.ends_with('\n')) d += '\n';
  return emit(c, kExitTrivial, d, {{"tag", to_string(t.tag())}, {"payload", d}});
}

RunResult fix_cmd(const RunConfig& c) {
  need_inputs(c, 1);
  const ProductEndo e = load_endo(c.inputs[0]);
  const FixDescriptor d = fix_product(e, FixOracle());
  const auto w = sample_witness(d);
  json j{{"tag", to_string(classify(e).tag())}, {"descriptor", render(d)}};
  j["witness"] = w ? json(to_string(*w)) : json(nullptr);
  return emit(c, kExitTrivial, render(d) + "\n", j);
}

RunResult intersect_cmd(const RunConfig& c) {
  need_inputs(c, 2);
  const auto t0 = Clock::now();
  const ProductEndo phi = load_endo(c.inputs[0]);
  const ProductEndo psi = load_endo(c.inputs[1]);
  FixOracle oracle;
  for (const auto& [hom_path, basis_path] : c.declarations) {
    FreeHom h = load_hom(hom_path);
    std::vector<Word> basis = load_basis(basis_path, h.source());
    oracle.declare(std::move(h), std::move(basis));
  }
  const double parse_ms = ms_since(t0);
  const auto t1 = Clock::now();
  const Verdict v = decide(phi, psi, oracle);
  const double decide_ms = ms_since(t1);

  std::string head = v.is_trivial() ? "TRIVIAL" : "NONTRIVIAL " + to_string(*v.witness());
  std::string trace;
  for (const auto& l : v.trace()) trace += (trace.empty() ? "" : " ") + l;
  json j{{"verdict", v.is_trivial() ? "trivial" : "nontrivial"}};
  if (!v.is_trivial()) j["witness"] = to_string(*v.witness());
  j["trace"] = v.trace();
  j["timings"] = {{"parse_ms", parse_ms}, {"decide_ms", decide_ms}};
  return emit(c, v.is_trivial() ? kExitTrivial : kExitNontrivial,
              head + "\ntrace: " + trace + "\n", j);
}

RunResult search_report(const RunConfig& c, int radius, const std::vector<std::string>& found,
                        const char* what, double search_ms) {
  const bool none = found.empty();
  std::string head = none ? "TRIVIAL up to radius " + std::to_string(radius)
                          : "NONTRIVIAL up to radius " + std::to_string(radius) + ": " +
                                std::to_string(found.size()) + " " + what;
  json j{{"verdict", none ? "trivial" : "nontrivial"},
         {"radius", radius},
         {"count", found.size()},
         {"elements", found},
         {"timings", {{"search_ms", search_ms}}}};
  return emit(c, none ? kExitTrivial : kExitNontrivial, head + "\n" + lines(found), j);
}

RunResult oracle_cmd(const RunConfig& c) {
  need_inputs(c, 2);
  const ProductEndo phi = load_endo(c.inputs[0]);
  const ProductEndo psi = load_endo(c.inputs[1]);
  const BallSpec spec = ball(c);
  const auto t0 = Clock::now();
  const auto found = common_fixed_points(phi, psi, spec, c.threads);
  return search_report(c, spec.radius, strings(found), "common fixed points", ms_since(t0));
}

RunResult eq_cmd(const RunConfig& c) {
  need_inputs(c, 2);
  const FreeHom phi = load_hom(c.inputs[0]);
  const FreeHom psi = load_hom(c.inputs[1]);
  const BallSpec spec = ball(c);
  const auto t0 = Clock::now();
  const auto found = bounded_equalizer(phi, psi, spec);
  return search_report(c, spec.radius, strings(found), "equalizer elements", ms_since(t0));
}

RunResult mihailova_cmd(const RunConfig& c) {
  need_inputs(c, 1);
  const Presentation p = parse_presentation(text::read_file(c.inputs[0]));
  const Word w = parse_word(c.word, p.generators);
  const MihailovaInstance inst = build_mihailova_instance(p, w);
  const std::string fix = render(fix_product(inst.phi, FixOracle()));
  const auto gens = strings(inst.h_gens);

  std::ostringstream out;
  out << "presentation: " << render_presentation(p) << "\n"
      << "z = " << to_string(inst.z) << "\n"
      << "fix generator: " << to_string(inst.fix_generator) << "\n"
      << fix << "\n"
      << "H generators:\n";
  for (const auto& g : gens) out << "  " << g << "\n";
  out << render_endo(inst.phi);
  json j{{"presentation", render_presentation(p)},
         {"z", to_string(inst.z)},
         {"fix_generator", to_string(inst.fix_generator)},
         {"fix", fix},
         {"h_generators", gens},
         {"phi", render_endo(inst.phi)}};
  return emit(c, kExitTrivial, out.str(), j);
}

}  // namespace

RunResult run(const RunConfig& config) {
  try {
    switch (config.command) {
      case Command::classify: return classify_cmd(config);
      case Command::fix: return fix_cmd(config);
      case Command::intersect: return intersect_cmd(config);
      case Command::oracle: return oracle_cmd(config);
      case Command::eq: return eq_cmd(config);
      case Command::mihailova: return mihailova_cmd(config);
    }
    throw std::logic_error("unknown command");
  } catch (const UnsupportedShape& e) {
    return {kExitUnsupported, std::string("error: ") + e.what() + "\n"};
  } catch (const MissingOracle& e) {
    return {kExitUnsupported, std::string("error: ") + e.what() + "\n"};
  } catch (const Error& e) {
    return {kExitUsage, std::string("error: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    return {kExitUsage, std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace fixfnm::cli
