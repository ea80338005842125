// qcone: spectra, moments, mates, probes and cospectral searches for cones
// K1 v (cycles u paths u qK2 u sK1 u K13) from the command line.
//
// Every command writes one JSON document {command, input, params, result,
// status} to stdout. Diagnostics go to stderr.
//
// Exit codes: 0 ok/pass/skip, 2 input error, 3 mismatch or probe failure,
// 4 inapplicable construction, 5 scale limit.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcone/closed_form.hpp"
#include "qcone/cone_spec.hpp"
#include "qcone/dqs.hpp"
#include "qcone/eigen.hpp"
#include "qcone/error.hpp"
#include "qcone/graph6.hpp"
#include "qcone/moments.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace qcone;

enum Exit : int { kOk = 0, kInput = 2, kMismatch = 3, kInapplicable = 4, kScale = 5 };

/// Rounds to 12 significant digits so the JSON text is stable across
/// last-bit differences.
double r12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  const double y = std::strtod(buf, nullptr);
  return y == 0.0 ? 0.0 : y;
}

std::string g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", r12(x));
  return buf;
}

struct Input {
  std::string text;
  std::string kind;  // "spec" or "graph6"
  std::optional<ConeSpec> spec;
  MultiGraph graph;
};

bool looks_like_graph6(const std::string& s) {
  if (s.empty()) return false;
  for (unsigned char c : s)
    if (c < 63 || c > 126) return false;
  return true;
}

Input load_input(const std::string& text) {
  Input in;
  in.text = text;
  if (looks_like_graph6(text)) {
    try {
      in.graph = graph6::decode(text);
      in.kind = "graph6";
      in.spec = recognize_cone(in.graph);
      return in;
    } catch (const FormatError&) {
      // not graph6 after all; fall through to the spec grammar
    }
  }
  in.kind = "spec";
  in.spec = parse_cone_spec(text);
  in.spec->validate();
  in.graph = in.spec->realize();
  return in;
}

json input_json(const Input& in) {
  json j;
  j["text"] = in.text;
  j["kind"] = in.kind;
  j["order"] = in.graph.order();
  j["size"] = in.graph.size();
  if (in.spec) j["cone"] = to_string(in.spec->canonical());
  if (in.graph.simple() && in.graph.order() <= graph6::kMaxOrder)
    j["graph6"] = graph6::encode(in.graph);
  return j;
}

const ConeSpec& require_spec(const Input& in, const char* what) {
  if (!in.spec) throw FamilyError(std::string(what) + ": input is not a recognisable cone");
  return *in.spec;
}

json groups_json(const QSpectrum& s) {
  json arr = json::array();
  for (const auto& g : s.groups()) {
    json e;
    e["value"] = r12(g.value);
    e["multiplicity"] = g.multiplicity;
    if (!g.sources.empty()) e["sources"] = g.sources;
    arr.push_back(std::move(e));
  }
  return arr;
}

json values_json(const QSpectrum& s) {
  json arr = json::array();
  for (double v : s.values()) arr.push_back(r12(v));
  return arr;
}

json moments_json(const MomentVector& m) {
  return json{{"T1", m.t1}, {"T2", m.t2}, {"T3", m.t3}, {"T4", m.t4}, {"S4", m.s4}};
}

json moments_json(const SpectralMoments& m) {
  json j{{"T1", r12(m.t[0])}, {"T2", r12(m.t[1])}, {"T3", r12(m.t[2])}, {"T4", r12(m.t[3])}};
  if (m.s4) j["S4"] = r12(*m.s4);
  return j;
}

json diff_json(const MomentVector& a, const MomentVector& b) {
  return json{{"T1", b.t1 - a.t1}, {"T2", b.t2 - a.t2}, {"T3", b.t3 - a.t3},
              {"T4", b.t4 - a.t4}, {"S4", b.s4 - a.s4}};
}

struct Outcome {
  json result = json::object();
  std::string status = "ok";
  int code = kOk;
  std::string csv;  // filled when --format csv is requested and supported
};

// ---------------------------------------------------------------------------

struct SpectrumArgs {
  bool numeric = false;
  bool closed = false;
  bool both = false;
  double tol = kCospectralTolerance;
};

Outcome run_spectrum(const Input& in, const SpectrumArgs& a, bool csv) {
  Outcome out;
  const bool want_closed = a.closed || a.both;
  const bool want_numeric = a.numeric || a.both || !want_closed;
  std::optional<QSpectrum> numeric;
  std::optional<QSpectrum> closed;
  if (want_closed) closed = closed_spectrum(require_spec(in, "spectrum --closed"));
  if (want_numeric) numeric = q_spectrum(in.graph);
  if (numeric) {
    out.result["numeric"] = {{"values", values_json(*numeric)}, {"groups", groups_json(*numeric)}};
  }
  if (closed) {
    out.result["closed"] = {{"values", values_json(*closed)}, {"groups", groups_json(*closed)}};
  }
  if (numeric && closed) {
    const double d = spectrum_compare(*numeric, *closed);
    out.result["distance"] = r12(d);
    out.result["agree"] = d <= a.tol;
    if (d > a.tol) {
      out.status = "mismatch";
      out.code = kMismatch;
    }
  }
  if (csv) {
    std::string s = "source,value,multiplicity,tags\n";
    auto rows = [&](const char* name, const QSpectrum& q) {
      for (const auto& g : q.groups()) {
        std::string tags;
        for (const auto& t : g.sources) tags += (tags.empty() ? "" : ";") + t;
        s += std::string(name) + "," + g12(g.value) + "," + std::to_string(g.multiplicity) +
             "," + tags + "\n";
      }
    };
    if (numeric) rows("numeric", *numeric);
    if (closed) rows("closed", *closed);
    out.csv = std::move(s);
  }
  return out;
}

Outcome run_moments(const Input& in, const std::string& from, bool csv) {
  Outcome out;
  require_simple(in.graph, "moments");
  std::optional<MomentVector> exact;
  std::optional<SpectralMoments> spectral;
  if (from != "spectrum") {
    const auto c = count_vector(in.graph);
    exact = moments_from_count_vector(c);
    out.result["counts"] = {{"edges", c.edges}, {"P3", c.p3},         {"C3", c.c3},
                            {"C4", c.c4},       {"t_bar", c.t_bar},   {"f_bar", c.f_bar},
                            {"sum_d2", c.deg2}, {"sum_d3", c.deg3},   {"sum_d4", c.deg4}};
    out.result["from_counts"] = moments_json(*exact);
  }
  if (from != "counts") {
    spectral = moments_from_spectrum(in.graph);
    out.result["from_spectrum"] = moments_json(*spectral);
  }
  if (exact && spectral) {
    const double rel = relative_discrepancy(*exact, *spectral);
    out.result["relative_discrepancy"] = r12(rel);
    if (rel > 1e-7) {
      out.status = "mismatch";
      out.code = kMismatch;
    }
  }
  if (csv) {
    std::string s = "moment,counts,spectrum\n";
    const char* names[] = {"T1", "T2", "T3", "T4", "S4"};
    for (int i = 0; i < 5; ++i) {
      s += names[i];
      s += ",";
      if (exact) {
        const std::int64_t v[] = {exact->t1, exact->t2, exact->t3, exact->t4, exact->s4};
        s += std::to_string(v[i]);
      }
      s += ",";
      if (spectral) {
        if (i < 4) {
          s += g12(spectral->t[static_cast<std::size_t>(i)]);
        } else if (spectral->s4) {
          s += g12(*spectral->s4);
        }
      }
      s += "\n";
    }
    out.csv = std::move(s);
  }
  return out;
}

Outcome run_mate(const Input& in, int theorem, double tol) {
  Outcome out;
  const ConeSpec& g = require_spec(in, "mate");
  const ConeSpec mate = theorem == 13 ? claw_mate(g) : split_cycle_candidate(g);
  const MultiGraph h = mate.realize();
  const auto qs_g = q_spectrum(in.graph);
  const auto qs_h = q_spectrum(h);
  const double d = spectrum_compare(qs_g, qs_h);
  const auto mg = moments_from_counts(in.graph);
  const auto mh = moments_from_counts(h);

  out.result["construction"] = theorem == 13 ? "claw" : "split-cycle";
  out.result["mate"] = to_string(mate);
  out.result["mate_graph6"] = graph6::encode(h);
  out.result["input_spectrum"] = groups_json(qs_g);
  out.result["mate_spectrum"] = groups_json(qs_h);
  out.result["distance"] = r12(d);
  out.result["cospectral"] = d <= tol;
  out.result["isomorphic"] = isomorphic(in.graph, h);
  out.result["moment_delta"] = diff_json(mg, mh);
  if (theorem == 11) {
    const auto dm = delta_moments(g, mate);
    out.result["closed_delta"] = {{"S4", dm.s4}, {"T4", dm.t4}, {"long_paths", dm.long_paths}};
    const bool odd = g.cycles[0] % 2 != 0;
    out.result["cycle_parity"] = odd ? "odd" : "even";
    if (dm.s4 != mh.s4 - mg.s4 || dm.t4 != mh.t4 - mg.t4) {
      out.status = "mismatch";
      out.code = kMismatch;
    }
  } else if (d > tol) {
    out.status = "mismatch";
    out.code = kMismatch;
  }
  return out;
}

json hit_json(const SearchHit& h, bool exhaustive) {
  json j{{"descriptor", h.descriptor}, {"graph6", h.graph6}, {"distance", r12(h.distance)},
         {"is_target", h.is_target}};
  if (exhaustive) j["labelled_count"] = h.labelled_count;
  return j;
}

Outcome run_search(const Input& in, bool exhaustive, double tol, unsigned jobs) {
  Outcome out;
  const SearchReport rep = exhaustive ? search_exhaustive(in.graph, tol, jobs)
                                      : search_family(require_spec(in, "search --family"), tol, jobs);
  out.result["target"] = rep.target;
  out.result["mode"] = rep.exhaustive ? "exhaustive" : "family";
  out.result["tolerance"] = rep.tolerance;
  out.result["search_space"] = rep.search_space;
  out.result["spectra_computed"] = rep.spectra_computed;
  out.result["classes"] = rep.hits.size();
  json hits = json::array();
  for (const auto& h : rep.hits) hits.push_back(hit_json(h, rep.exhaustive));
  out.result["hits"] = std::move(hits);
  if (!rep.exhaustive) {
    json cands = json::array();
    for (const auto& h : rep.candidates) cands.push_back(hit_json(h, false));
    out.result["candidates"] = std::move(cands);
  }
  out.result["notes"] = rep.notes;
  out.result["determined"] = rep.hits.size() == 1;
  return out;
}

Outcome run_probe(const Input& in, const std::string& lemma_text, double tol) {
  const auto lemma = parse_lemma_id(lemma_text);
  if (!lemma) throw ParameterError("unknown lemma id '" + lemma_text + "'");
  const ProbeResult r = probe_lemma(in.graph, *lemma, tol);
  Outcome out;
  out.result = {{"lemma", lemma_id(r.lemma)}, {"checks", r.checks}, {"witness", r.witness}};
  out.status = status_name(r.status);
  out.code = r.status == ProbeStatus::kFail ? kMismatch : kOk;
  return out;
}

int error_code(const std::exception& e) {
  if (dynamic_cast<const InapplicableError*>(&e)) return kInapplicable;
  if (dynamic_cast<const ScaleError*>(&e)) return kScale;
  return kInput;
}

const char* error_status(int code) {
  switch (code) {
    case kInapplicable: return "inapplicable";
    case kScale: return "scale";
    default: return "error";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signless-Laplacian spectra of cone graphs"};
  app.require_subcommand(1);

  std::string input;
  double tol = kCospectralTolerance;
  std::string format = "json";

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "numeric and closed-form Q-spectrum");
  spectrum->add_option("input", input, "cone spec or graph6")->required();
  spectrum->add_flag("--numeric", sa.numeric, "Jacobi eigenvalues of Q");
  spectrum->add_flag("--closed", sa.closed, "closed form (G- and F-families)");
  spectrum->add_flag("--both", sa.both, "both, with their L-infinity distance");
  spectrum->add_option("--tol", tol, "agreement tolerance")->check(CLI::PositiveNumber);
  spectrum->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  std::string from = "both";
  auto* moments = app.add_subcommand("moments", "spectral moments T1..T4 and S4");
  moments->add_option("input", input, "cone spec or graph6")->required();
  moments->add_option("--from", from)->check(CLI::IsMember({"counts", "spectrum", "both"}));
  moments->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  int theorem = 13;
  auto* mate = app.add_subcommand("mate", "construct a cospectral mate or candidate");
  mate->add_option("input", input, "cone spec")->required();
  mate->add_option("--theorem", theorem, "13: claw replacement, 11: split cycle")
      ->check(CLI::IsMember({11, 13}));
  mate->add_option("--tol", tol)->check(CLI::PositiveNumber);

  bool family = false;
  bool exhaustive = false;
  unsigned jobs = 1;
  auto* search = app.add_subcommand("search", "search for Q-cospectral mates");
  search->add_option("input", input, "cone spec or graph6")->required();
  auto* fam_flag = search->add_flag("--family", family, "structured family search");
  search->add_flag("--exhaustive", exhaustive, "all labelled graphs (n <= 8)")->excludes(fam_flag);
  search->add_option("--tol", tol)->check(CLI::PositiveNumber);
  search->add_option("--jobs", jobs)->check(CLI::Range(1u, 256u));

  std::string lemma;
  auto* probe = app.add_subcommand("probe", "check an interlacing or nullity statement");
  probe->add_option("input", input, "graph6 or cone spec")->required();
  probe->add_option("--lemma", lemma, "2.2, 2.3, 2.4, 2.10 or 5.1")->required();
  probe->add_option("--tol", tol)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  json doc;
  json params = json::object();
  std::string command;
  if (spectrum->parsed()) {
    command = "spectrum";
    const char* mode = sa.both ? "both" : (sa.closed ? (sa.numeric ? "both" : "closed") : "numeric");
    params = {{"mode", mode}, {"tol", tol}, {"format", format}};
  } else if (moments->parsed()) {
    command = "moments";
    params = {{"from", from}, {"format", format}};
  } else if (mate->parsed()) {
    command = "mate";
    params = {{"theorem", theorem}, {"tol", tol}};
  } else if (search->parsed()) {
    command = "search";
    params = {{"mode", exhaustive ? "exhaustive" : "family"}, {"tol", tol}};
  } else {
    command = "probe";
    params = {{"lemma", lemma}, {"tol", tol}};
  }
  doc["command"] = command;
  doc["input"] = {{"text", input}};
  doc["params"] = params;

  const bool csv = format == "csv";
  int code = kOk;
  try {
    const Input in = load_input(input);
    doc["input"] = input_json(in);
    Outcome out;
    if (command == "spectrum") {
      out = run_spectrum(in, sa, csv);
    } else if (command == "moments") {
      out = run_moments(in, from, csv);
    } else if (command == "mate") {
      out = run_mate(in, theorem, tol);
    } else if (command == "search") {
      out = run_search(in, exhaustive, tol, jobs);
    } else {
      out = run_probe(in, lemma, tol);
    }
    if (csv && !out.csv.empty()) {
      std::cout << out.csv;
      return out.code;
    }
    doc["result"] = std::move(out.result);
    doc["status"] = out.status;
    code = out.code;
  } catch (const std::exception& e) {
    code = error_code(e);
    std::cerr << "qcone " << command << ": " << e.what() << "\n";
    doc["result"] = {{"error", e.what()}};
    doc["status"] = error_status(code);
  }
  std::cout << doc.dump(2) << "\n";
  return code;
}
