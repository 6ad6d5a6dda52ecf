#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "smashkit/finite_model.hpp"
#include "smashkit/induction.hpp"
#include "smashkit/json_io.hpp"

using namespace smashkit;
using nlohmann::json;

namespace {

struct CheckResult {
  std::string name;
  std::string status;  // pass, fail, error
  std::vector<Obligation> obligations;
  DischargeReport report;
  std::string error;
  double seconds = 0;
};

CheckResult run_check(const std::string& name) {
  CheckResult r;
  r.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    auto d = diagram(name);
    r.obligations = obligations_for(Homotopy::of(d));
    r.report = discharge(r.obligations);
    r.status = r.report.ok() ? "pass" : "fail";
  } catch (const Error& e) {
    r.status = "error";
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

json check_json(const CheckResult& r) {
  json j{{"name", r.name}, {"status", r.status}, {"wall_time", r.seconds}};
  j["obligations"] = to_json(r.report)["obligations"];
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

void print_check(const CheckResult& r) {
  std::cout << r.name << ": " << r.status;
  if (r.status == "error") {
    std::cout << "  " << r.error << "\n";
    return;
  }
  std::cout << "  (" << r.report.entries.size() << " squares, " << family_count(r.obligations) << " families, "
            << std::fixed << std::setprecision(3) << r.seconds << " s)\n";
  for (const auto& e : r.report.entries) {
    if (e.fillable) continue;
    std::string vars;
    for (const auto& v : e.vars) vars += (vars.empty() ? "" : ",") + v;
    std::cout << "  " << e.tag << " [" << vars << "] does not fill\n";
    if (!e.error.empty()) {
      std::cout << "    " << e.error << "\n";
      continue;
    }
    std::cout << "    left^-1.top.right = " << e.lhs_word.str() << "\n";
    std::cout << "    bottom            = " << e.rhs_word.str() << "\n";
  }
}

int cmd_check(const std::string& which, bool as_json, const std::string& dump, const std::string& dot) {
  std::vector<std::string> names;
  if (which == "all") names = diagram_names();
  else names = {which};

  std::vector<CheckResult> results;
  for (const auto& n : names) {
    if (which != "all") diagram(n);  // unknown names are usage errors
    results.push_back(run_check(n));
  }

  bool ok = true;
  for (const auto& r : results) ok = ok && r.status == "pass";

  if (as_json) {
    json checks = json::array();
    for (const auto& r : results) checks.push_back(check_json(r));
    std::cout << json{{"ok", ok}, {"checks", checks}}.dump(2) << "\n";
  } else {
    for (const auto& r : results) print_check(r);
  }

  if (!dump.empty()) {
    json out = json::array();
    for (const auto& r : results) {
      json obs = json::array();
      for (const auto& o : r.obligations) obs.push_back(to_json(o));
      json entry{{"name", r.name}, {"obligations", obs}, {"report", to_json(r.report)}};
      try {
        auto d = diagram(r.name);
        entry["lhs"] = to_json(*d.lhs);
        entry["rhs"] = to_json(*d.rhs);
      } catch (const Error&) {
      }
      out.push_back(entry);
    }
    std::ofstream(dump) << out.dump(2) << "\n";
  }
  if (!dot.empty()) {
    std::ofstream f(dot);
    for (const auto& n : names) f << to_dot(diagram(n));
  }
  return ok ? 0 : 1;
}

int cmd_obligations(const std::string& shape_text, bool as_json) {
  Shape s = parse_shape(shape_text);
  MapRef id = identity(s);
  auto obs = obligations_for(Homotopy::refl(id, id));
  if (as_json) {
    json arr = json::array();
    for (const auto& o : obs) arr.push_back(to_json(o));
    std::cout << json{{"shape", s.str()}, {"families", family_count(obs)}, {"obligations", arr}}.dump(2) << "\n";
    return 0;
  }
  std::cout << s.str() << ": " << family_count(obs) << " families, " << obs.size() << " squares\n";
  for (const auto& o : obs) {
    std::string vars;
    for (const auto& v : o.vars) vars += (vars.empty() ? "" : ",") + v;
    std::cout << "  " << o.tag << " [" << vars << "]\n";
    if (!o.error.empty()) {
      std::cout << "    " << o.error << "\n";
      continue;
    }
    std::cout << "    top    " << o.square.top.str() << "\n"
              << "    bottom " << o.square.bottom.str() << "\n"
              << "    left   " << o.square.left.str() << "\n"
              << "    right  " << o.square.right.str() << "\n";
  }
  return 0;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || v == 0) throw Error(Errc::IllFormed, "bad size '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(Errc::IllFormed, "no sizes given");
  std::size_t cap = max_model_size();
  for (auto v : out)
    if (v > cap) throw Error(Errc::IllFormed, "size " + std::to_string(v) + " exceeds SMASHKIT_MAX_SIZE=" + std::to_string(cap));
  return out;
}

// With --all the list is fitted to each domain: truncated, or padded with
// its last entry.
std::vector<std::size_t> fit(std::vector<std::size_t> list, const Shape& s) {
  std::size_t need = sizes_for(s, {1}).size();
  while (list.size() < need) list.push_back(list.back());
  list.resize(need);
  return list;
}

int cmd_model(const std::string& sizes_text, const std::string& which, bool all, bool as_json) {
  auto list = parse_sizes(sizes_text);
  std::vector<std::string> names = all ? diagram_names() : std::vector<std::string>{which};
  bool ok = true;
  json reports = json::array();
  for (const auto& n : names) {
    auto d = diagram(n);
    auto sizes = sizes_for(d.domain(), all ? fit(list, d.domain()) : list);
    auto r = check_diagram(d, sizes);
    ok = ok && r.ok;
    if (as_json) {
      reports.push_back(to_json(r));
      continue;
    }
    std::string sz;
    for (const auto& [k, v] : r.sizes) sz += (sz.empty() ? "" : " ") + k + "=" + std::to_string(v);
    std::cout << n << ": " << (r.ok ? "pass" : "fail") << "  (" << sz << ", " << r.checked << " evaluations)\n";
    if (r.counterexample)
      std::cout << "  " << r.counterexample->reason << " at " << r.counterexample->input.str() << ": "
                << r.counterexample->lhs.str() << " vs " << r.counterexample->rhs.str() << "\n";
  }
  if (as_json) std::cout << (all ? reports : reports[0]).dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smashkit: coherence checks for smash products"};
  app.require_subcommand(1);

  std::string which, dump, dot, shape, sizes, model_diagram;
  bool as_json = false, model_all = false;

  auto* check = app.add_subcommand("check", "Discharge the square obligations of a coherence diagram");
  check->add_option("name", which, "Diagram name or 'all'")->required();
  check->add_flag("--json", as_json, "Print a JSON report");
  check->add_option("--dump", dump, "Write obligations and clause tables as JSON");
  check->add_option("--dot", dot, "Write the diagram as a DOT digraph");

  auto* obl = app.add_subcommand("obligations", "List the square obligations for a domain shape");
  obl->add_option("--shape", shape, "Shape, e.g. ((A ^ B) ^ C)")->required();
  obl->add_flag("--json", as_json, "Print JSON");

  auto* model = app.add_subcommand("model", "Check a diagram pointwise on finite pointed sets");
  model->add_option("--sizes", sizes, "Leaf sizes, e.g. 2,3,2")->required();
  auto* dopt = model->add_option("--diagram", model_diagram, "Diagram name");
  auto* aopt = model->add_flag("--all", model_all, "Every diagram");
  dopt->excludes(aopt);
  model->add_flag("--json", as_json, "Print JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*check) return cmd_check(which, as_json, dump, dot);
    if (*obl) return cmd_obligations(shape, as_json);
    if (*model) {
      if (!model_all && model_diagram.empty()) {
        std::cerr << "model: give --diagram <name> or --all\n";
        return 2;
      }
      return cmd_model(sizes, model_diagram, model_all, as_json);
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
