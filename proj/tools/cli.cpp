#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "cbd/analysis.hpp"
#include "cbd/coupling.hpp"
#include "cbd/documents.hpp"
#include "cbd/format.hpp"
#include "cbd/gallery.hpp"

namespace cbd::cli {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct AnalyzeFlags {
  std::string path;
  std::string mode = "cbd";
  std::string format = "json";
  std::string witness_path;
  std::string certificate_path;
  std::size_t max_cells = kDefaultMaxCells;
  bool max_cells_given = false;
  bool batch = false;
  bool no_timing = false;
};

// Report for one file: rendered document plus the exit status it implies.
struct FileReport {
  std::string file;
  ordered_json json;
  std::string text;
  int status = kOk;
};

std::vector<Mode> requested_modes(const std::string& mode) {
  if (mode == "both") return {Mode::cbd, Mode::traditional};
  return {parse_mode(mode)};
}

// With --mode both each mode gets its own artifact: "w.json" -> "w.cbd.json".
std::string artifact_path(const std::string& base, Mode mode, bool several) {
  if (base.empty() || !several) return base;
  const fs::path p(base);
  return (p.parent_path() / (p.stem().string() + "." + to_string(mode) + p.extension().string())).string();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << content;
}

std::string format_ms(double ms) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << ms;
  return s.str();
}

FileReport analyze_file(const std::string& path, const std::string& display, const AnalyzeFlags& flags) {
  FileReport r;
  r.file = display;
  const auto start = std::chrono::steady_clock::now();
  const System system = load_system(path);
  const auto modes = requested_modes(flags.mode);
  DecisionOptions options;
  options.max_cells = flags.max_cells;
  const Analysis a = analyze(system, modes, options);

  ordered_json j;
  j["format"] = "cbd-report/1";
  j["file"] = display;
  j["system"] = system.name();
  j["cells"] = a.cells;
  j["max_cells"] = flags.max_cells;

  std::ostringstream text;
  text << "system: " << system.name() << " (" << display << ")\n";
  text << "cells: " << a.cells << "\n";

  ordered_json conns = ordered_json::array();
  const auto all = connections(system);
  text << "connectedness: " << (a.connectedness.consistently_connected ? "consistent" : "inconsistent") << "\n";
  for (std::size_t i = 0; i < all.size(); ++i) {
    ordered_json entries = ordered_json::array();
    text << "  " << all[i].property.str() << ": delta " << to_string(a.connectedness.connections[i].delta) << " [";
    for (std::size_t e = 0; e < all[i].entries.size(); ++e) {
      const auto& entry = all[i].entries[e];
      entries.push_back({{"context", entry.context.str()}, {"p", to_string(entry.p)}});
      text << (e ? ", " : "") << entry.context.str() << ": " << to_string(entry.p);
    }
    text << "]\n";
    conns.push_back({{"property", all[i].property.str()},
                     {"delta", to_string(a.connectedness.connections[i].delta)},
                     {"entries", std::move(entries)}});
  }
  j["connectedness"] = {{"consistently_connected", a.connectedness.consistently_connected},
                        {"connections", std::move(conns)}};

  if (a.cyclic) {
    ordered_json props = ordered_json::array();
    ordered_json ctxs = ordered_json::array();
    text << "cyclic: rank " << a.arrangement->rank << "\n  order:";
    for (std::size_t i = 0; i < a.arrangement->rank; ++i) {
      props.push_back(a.arrangement->properties[i].str());
      ctxs.push_back(a.arrangement->contexts[i].str());
      text << " " << a.arrangement->properties[i].str() << " -[" << a.arrangement->contexts[i].str() << "]-";
    }
    text << "\n  lhs " << to_string(a.cyclic->lhs) << ", rhs " << to_string(a.cyclic->rhs) << ", slack "
         << to_string(a.cyclic->slack) << " (non-normative)\n";
    j["cyclic"] = {{"rank", a.arrangement->rank},
                   {"properties", std::move(props)},
                   {"contexts", std::move(ctxs)},
                   {"lhs", to_string(a.cyclic->lhs)},
                   {"rhs", to_string(a.cyclic->rhs)},
                   {"slack", to_string(a.cyclic->slack)},
                   {"slack_note", "non-normative"},
                   {"contextual", a.cyclic->contextual}};
  } else {
    j["cyclic"] = nullptr;
    text << "cyclic: no\n";
  }

  ordered_json verdicts = ordered_json::array();
  const bool several = modes.size() > 1;
  for (const auto& m : a.modes) {
    ordered_json v;
    v["mode"] = to_string(m.mode);
    v["contextual"] = m.contextual;
    v["method"] = to_string(m.lp ? Method::lp : Method::cyclic_formula);
    ordered_json methods;
    methods["cyclic-formula"] = m.formula ? ordered_json(*m.formula) : ordered_json(nullptr);
    methods["lp"] = m.lp ? ordered_json(m.lp->contextual) : ordered_json(nullptr);
    v["methods"] = std::move(methods);
    v["agree"] = (m.formula && m.lp) ? ordered_json(*m.formula == m.lp->contextual) : ordered_json(nullptr);
    v["lp_iterations"] = m.lp ? ordered_json(m.lp->iterations) : ordered_json(nullptr);

    ordered_json witness = nullptr;
    ordered_json certificate = nullptr;
    if (m.lp && m.lp->witness && !flags.witness_path.empty()) {
      const std::string out = artifact_path(flags.witness_path, m.mode, several);
      write_file(out, serialize_coupling(*m.lp->witness));
      witness = out;
    }
    if (m.lp && m.lp->certificate && !flags.certificate_path.empty()) {
      const std::string out = artifact_path(flags.certificate_path, m.mode, several);
      write_file(out, serialize_certificate(system, CouplingLP(system, m.mode), *m.lp->certificate));
      certificate = out;
    }
    v["witness"] = witness;
    v["certificate"] = certificate;

    text << "verdict[" << to_string(m.mode) << "]: " << (m.contextual ? "contextual" : "noncontextual") << " ("
         << to_string(m.lp ? Method::lp : Method::cyclic_formula);
    if (m.formula && m.lp) text << "; cyclic-formula " << (*m.formula == m.lp->contextual ? "agrees" : "DISAGREES");
    text << ")\n";
    if (!witness.is_null()) text << "  witness: " << witness.get<std::string>() << "\n";
    if (!certificate.is_null()) text << "  certificate: " << certificate.get<std::string>() << "\n";
    verdicts.push_back(std::move(v));
  }
  j["verdicts"] = std::move(verdicts);

  if (!flags.no_timing) {
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    j["timing_ms"] = format_ms(ms);
    text << "time: " << format_ms(ms) << " ms\n";
  }
  r.json = std::move(j);
  r.text = text.str();
  return r;
}

FileReport error_report(const std::string& display, const std::string& message, int status) {
  FileReport r;
  r.file = display;
  r.status = status;
  r.json = {{"format", "cbd-report/1"}, {"file", display}, {"error", message}};
  r.text = "system: ? (" + display + ")\nerror: " + message + "\n";
  return r;
}

FileReport analyze_guarded(const std::string& path, const std::string& display, const AnalyzeFlags& flags) {
  try {
    return analyze_file(path, display, flags);
  } catch (const SizeLimitError& e) {
    return error_report(display, e.what(), kSizeLimit);
  } catch (const Error& e) {
    return error_report(display, e.what(), kInputError);
  }
}

int run_analyze(const AnalyzeFlags& flags, std::ostream& out, std::ostream& err) {
  if (flags.format != "json" && flags.format != "text") {
    err << "error: --format must be text or json\n";
    return kInputError;
  }
  if (flags.mode != "both") {
    try {
      parse_mode(flags.mode);
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kInputError;
    }
  }

  const bool is_dir = fs::is_directory(flags.path);
  if (is_dir && !flags.batch) {
    err << "error: '" << flags.path << "' is a directory; pass --batch\n";
    return kInputError;
  }

  if (!flags.batch) {
    FileReport r = analyze_guarded(flags.path, flags.path, flags);
    if (r.status != kOk) {
      err << "error: " << r.json["error"].get<std::string>() << "\n";
      return r.status;
    }
    out << (flags.format == "json" ? r.json.dump(2) + "\n" : r.text);
    return kOk;
  }

  if (!flags.witness_path.empty() || !flags.certificate_path.empty()) {
    err << "error: --emit-witness/--emit-certificate cannot be combined with --batch\n";
    return kInputError;
  }
  std::vector<fs::path> files;
  if (is_dir) {
    for (const auto& entry : fs::directory_iterator(flags.path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
  } else {
    files.emplace_back(flags.path);
  }

  // Files are independent; workers fill fixed slots so output order never
  // depends on scheduling.
  std::vector<FileReport> reports(files.size());
  std::atomic<std::size_t> next{0};
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, files.size()); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < files.size(); i = next++) {
        reports[i] = analyze_guarded(files[i].string(), files[i].filename().string(), flags);
      }
    });
  }
  for (auto& t : pool) t.join();

  int status = kOk;
  for (const auto& r : reports) {
    if (r.status == kInputError) status = kInputError;
    if (r.status == kSizeLimit && status == kOk) status = kSizeLimit;
  }

  auto verdict_of = [](const FileReport& r, const std::string& mode) -> std::string {
    if (r.json.contains("error")) return "error";
    for (const auto& v : r.json["verdicts"]) {
      if (v["mode"] == mode) return v["contextual"].get<bool>() ? "contextual" : "noncontextual";
    }
    return "-";
  };

  if (flags.format == "json") {
    ordered_json doc;
    doc["format"] = "cbd-batch/1";
    doc["path"] = flags.path;
    ordered_json items = ordered_json::array();
    ordered_json summary = ordered_json::array();
    for (const auto& r : reports) {
      items.push_back(r.json);
      ordered_json row;
      row["file"] = r.file;
      row["system"] = r.json.contains("system") ? r.json["system"] : ordered_json(nullptr);
      for (const auto& m : requested_modes(flags.mode)) row[to_string(m)] = verdict_of(r, to_string(m));
      summary.push_back(std::move(row));
    }
    doc["reports"] = std::move(items);
    doc["summary"] = std::move(summary);
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& r : reports) out << r.text << "\n";
    out << "summary:\n";
    for (const auto& r : reports) {
      out << "  " << std::left << std::setw(32) << r.file;
      for (const auto& m : requested_modes(flags.mode)) out << " " << to_string(m) << "=" << verdict_of(r, to_string(m));
      out << "\n";
    }
  }
  return status;
}

int run_validate(const std::string& path, std::ostream& out) {
  const System s = load_system(path);
  out << "ok: " << s.name() << " (" << s.contexts().size() << " contexts, " << s.cell_count() << " cells)\n";
  return kOk;
}

int run_coupling(const std::string& path, const std::string& property, const std::string& output, std::ostream& out) {
  const System s = load_system(path);
  const std::string doc = serialize_coupling(construct_multimaximal(connection_of(s, PropertyId(property))));
  if (output.empty()) {
    out << doc;
  } else {
    write_file(output, doc);
  }
  return kOk;
}

int run_assign(const std::string& path, bool count, std::ostream& out) {
  const ConstraintSystem cs = parse_constraints(read_file(path));
  const SearchResult result = assignment_search(cs, count);
  const ParityCheck parity = parity_check_ks4d(cs);

  ordered_json doc;
  doc["format"] = "cbd-assignment/1";
  doc["properties"] = cs.properties().size();
  doc["constraints"] = cs.constraints().size();
  doc["satisfiable"] = result.witness.has_value();
  if (result.witness) {
    ordered_json w = ordered_json::object();
    for (std::size_t i = 0; i < cs.properties().size(); ++i) w[cs.properties()[i].str()] = (*result.witness)[i] ? 1 : 0;
    doc["witness"] = std::move(w);
  } else {
    doc["witness"] = nullptr;
  }
  if (result.count) doc["count"] = *result.count;
  doc["parity"] = {{"status", to_string(parity.status)},
                   {"contexts", parity.contexts},
                   {"explanation", parity.explanation}};
  out << doc.dump(2) << "\n";
  return kOk;
}

std::vector<PairParams> gallery_params(const std::vector<std::string>& per_context, const std::string& marginal,
                                       const std::string& product) {
  std::vector<PairParams> params;
  for (const auto& spec : per_context) {
    std::vector<Rational> values;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ',');) values.push_back(parse_rational(item));
    if (values.size() != 3) throw ParseError("--context expects 'first_marginal,second_marginal,product'");
    params.push_back({values[0], values[1], values[2]});
  }
  if (!marginal.empty() || !product.empty()) {
    if (!params.empty()) throw ParseError("--context cannot be combined with --marginal/--product");
    if (product.empty()) throw ParseError("--marginal requires --product");
    const Rational m = marginal.empty() ? Rational(1, 2) : parse_rational(marginal);
    params.push_back({m, m, parse_rational(product)});
  }
  return params;
}

int run_examples_emit(const std::string& key, const std::vector<PairParams>& params, const std::string& output,
                      std::ostream& out) {
  const GalleryItem item = build(key, params);
  const std::string doc = std::holds_alternative<System>(item) ? serialize_system(std::get<System>(item))
                                                               : serialize_constraints(std::get<ConstraintSystem>(item));
  if (output.empty()) {
    out << doc;
  } else {
    write_file(output, doc);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contextuality analysis of systems of binary measurements", "cbd"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Parse and validate a cbd-system/1 document");
  validate->add_option("file", validate_path, "System document")->required();

  AnalyzeFlags flags;
  auto* analyze_cmd = app.add_subcommand("analyze", "Decide contextuality of a system (or a directory with --batch)");
  analyze_cmd->add_option("path", flags.path, "System document or directory")->required();
  analyze_cmd->add_option("--mode", flags.mode, "cbd, traditional or both")->capture_default_str();
  auto* max_cells_opt = analyze_cmd->add_option("--max-cells", flags.max_cells, "Largest number of cells for the LP");
  analyze_cmd->add_option("--format", flags.format, "text or json")->capture_default_str();
  analyze_cmd->add_option("--emit-witness", flags.witness_path, "Write the feasible coupling (cbd-coupling/1)");
  analyze_cmd->add_option("--emit-certificate", flags.certificate_path,
                          "Write the infeasibility certificate (cbd-certificate/1)");
  analyze_cmd->add_flag("--batch", flags.batch, "Analyze every *.json file of a directory");
  analyze_cmd->add_flag("--no-timing", flags.no_timing, "Omit timing from reports");

  std::string coupling_path, coupling_property, coupling_output;
  auto* coupling = app.add_subcommand("coupling", "Multimaximal coupling of one connection");
  coupling->add_option("file", coupling_path, "System document")->required();
  coupling->add_option("--property", coupling_property, "Property label")->required();
  coupling->add_option("-o,--output", coupling_output, "Output file (default stdout)");

  std::string assign_path;
  bool assign_count = false;
  auto* assign = app.add_subcommand("assign", "Search 0/1 assignments of a cbd-constraints/1 document");
  assign->add_option("file", assign_path, "Constraint document")->required();
  assign->add_flag("--count", assign_count, "Count every satisfying assignment");

  auto* examples = app.add_subcommand("examples", "Built-in systems");
  examples->require_subcommand(1);
  auto* list = examples->add_subcommand("list", "List gallery entries");
  std::string emit_key, emit_output, emit_marginal, emit_product;
  std::vector<std::string> emit_contexts;
  auto* emit = examples->add_subcommand("emit", "Write a gallery entry as a document");
  emit->add_option("key", emit_key, "Gallery key")->required();
  emit->add_option("--context", emit_contexts, "Per-context 'first_marginal,second_marginal,product', in order");
  emit->add_option("--marginal", emit_marginal, "Marginal Pr[+1] used for every measurement (default 1/2)");
  emit->add_option("--product", emit_product, "Product expectation used for every context");
  emit->add_option("-o,--output", emit_output, "Output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*validate) return run_validate(validate_path, out);
    if (*analyze_cmd) {
      flags.max_cells_given = max_cells_opt->count() > 0;
      if (!flags.max_cells_given) {
        if (const char* env = std::getenv("CBD_MAX_CELLS"); env && *env) {
          try {
            std::size_t used = 0;
            flags.max_cells = std::stoul(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument("trailing");
          } catch (const std::exception&) {
            err << "error: CBD_MAX_CELLS must be a non-negative integer\n";
            return kInputError;
          }
        }
      }
      return run_analyze(flags, out, err);
    }
    if (*coupling) return run_coupling(coupling_path, coupling_property, coupling_output, out);
    if (*assign) return run_assign(assign_path, assign_count, out);
    if (*list) {
      for (const auto& e : gallery_entries()) {
        out << std::left << std::setw(12) << e.key << " " << std::setw(13)
            << (e.kind == GalleryKind::probabilistic ? "probabilistic" : "constraint") << " " << e.description << "\n";
      }
      return kOk;
    }
    if (*emit) {
      return run_examples_emit(emit_key, gallery_params(emit_contexts, emit_marginal, emit_product), emit_output, out);
    }
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kSizeLimit;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace cbd::cli
