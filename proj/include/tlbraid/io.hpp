#pragma once

// JSON persistence: nets as JSON lines (a header line, then one entry per
// line) and compilation reports as a single JSON document.

#include <istream>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "tlbraid/compiler.hpp"
#include "tlbraid/density/generators.hpp"
#include "tlbraid/density/net.hpp"
#include "tlbraid/density/transfer.hpp"
#include "tlbraid/error.hpp"

namespace tlbraid {

using nlohmann::json;

/// row-major list of [re, im]
inline json matrix_to_json(const ComplexMatrix& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back({m(r, c).real(), m(r, c).imag()});
  return a;
}

inline ComplexMatrix matrix_from_json(const json& a, Eigen::Index dim) {
  if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != dim * dim)
    throw DomainError("matrix: expected " + std::to_string(dim * dim) + " entries");
  ComplexMatrix m(dim, dim);
  for (Eigen::Index j = 0; j < dim * dim; ++j) {
    const auto& e = a[static_cast<std::size_t>(j)];
    if (!e.is_array() || e.size() != 2) throw DomainError("matrix: entries must be [re, im]");
    m(j / dim, j % dim) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

inline json complex_to_json(Complex z) { return {z.real(), z.imag()}; }
inline Complex complex_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

inline json generators_to_json(const GeneratorSet& g) {
  json j{{"name", g.name},   {"provenance", g.provenance},           {"level", g.level},
         {"dim", g.dim()},   {"generator_index", g.generator_index}, {"labels", g.labels}};
  if (g.provenance.rfind("pathmodel", 0) != 0 && g.provenance.rfind("auxiliary", 0) != 0) {
    j["elements"] = json::array();
    for (const auto& e : g.elements) j["elements"].push_back(matrix_to_json(e));
  }
  return j;
}

/// Rebuilds path-model and auxiliary sets from their parameters; abstract
/// sets carry their matrices.
inline GeneratorSet generators_from_json(const json& j) {
  const std::string prov = j.at("provenance");
  const int level = j.at("level");
  auto idx = j.at("generator_index").get<std::vector<int>>();
  auto labels = j.at("labels").get<std::vector<int>>();
  GeneratorSet g;
  if (prov.rfind("pathmodel", 0) == 0) {
    g = path_model_generators(level, idx, labels);
  } else if (prov.rfind("auxiliary", 0) == 0) {
    g = aux_generators(level, idx, labels);
  } else {
    const int dim = j.at("dim");
    std::vector<ComplexMatrix> elems;
    for (const auto& e : j.at("elements")) elems.push_back(matrix_from_json(e, dim));
    g = GeneratorSet(j.value("name", std::string("abstract")), std::move(elems), prov);
    g.level = level;
    g.generator_index = std::move(idx);
    g.labels = std::move(labels);
  }
  g.name = j.value("name", g.name);
  return g;
}

inline void write_net(const EpsilonNet& net, std::ostream& out) {
  const json header{{"format", "tlbraid-net"},
                    {"eps", net.eps},
                    {"max_len", net.max_len},
                    {"commutators", net.commutators},
                    {"size", net.size()},
                    {"generators", generators_to_json(net.generators)},
                    {"coverage",
                     {{"samples", net.coverage.samples},
                      {"covered", net.coverage.covered},
                      {"fraction", net.coverage.fraction},
                      {"eps", net.coverage.eps},
                      {"seed", net.coverage.seed}}}};
  out << header.dump() << "\n";
  for (const auto& e : net.entries)
    out << json{{"word", e.word}, {"matrix", matrix_to_json(e.matrix)}, {"dist_check", e.dist_check}}.dump() << "\n";
}

/// Reads a net and re-evaluates every word: an entry whose stored matrix
/// differs from its word by more than `tol` is a parse error.
inline EpsilonNet read_net(std::istream& in, double tol = 1e-10) {
  std::string line;
  int lineno = 0;
  EpsilonNet net;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(lineno, std::string("invalid JSON: ") + e.what());
    }
    try {
      if (!header) {
        if (j.value("format", std::string()) != "tlbraid-net") throw ParseError(lineno, "not a tlbraid net header");
        net.eps = j.at("eps");
        net.max_len = j.at("max_len");
        net.commutators = j.at("commutators");
        net.generators = generators_from_json(j.at("generators"));
        const auto& c = j.at("coverage");
        net.coverage = {c.at("samples"), c.at("covered"), c.at("fraction"), c.at("eps"), c.at("seed")};
        header = true;
        continue;
      }
      NetEntry e;
      e.word = j.at("word").get<GeneratorWord>();
      net.generators.validate(e.word);
      e.matrix = matrix_from_json(j.at("matrix"), net.dim());
      const ComplexMatrix eval = net.generators.evaluate(e.word);
      const double dev = operator_norm(eval - e.matrix);
      if (dev > tol)
        throw ParseError(lineno, "stored matrix differs from its word by " + std::to_string(dev));
      e.dist_check = proj_distance_unchecked(e.matrix, eval);
      net.entries.push_back(std::move(e));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!header) throw ParseError(std::max(lineno, 1), "empty net file");
  return net;
}

inline json report_to_json(const CompilationReport& r) {
  json gates = json::array();
  for (const auto& g : r.gates)
    gates.push_back({{"name", g.name},
                     {"position", g.position},
                     {"matrix", matrix_to_json(g.matrix)},
                     {"b8_word", g.b8_word},
                     {"encoded_distance", g.encoded_distance},
                     {"full_distance", g.full_distance},
                     {"phase", g.phase},
                     {"depth", g.depth},
                     {"lookup", g.lookup},
                     {"prefix_bound", g.prefix_bound},
                     {"prefix_budget", g.prefix_budget}});
  return {{"format", "tlbraid-report"},
          {"qubits", r.qubits},
          {"k", r.k},
          {"epsilon", r.epsilon},
          {"delta", r.delta},
          {"gates", gates},
          {"braid", {{"strands", r.braid.strands}, {"letters", r.braid.letters}}},
          {"error_bound", r.error_bound},
          {"predicted_amplitude", complex_to_json(r.predicted_amplitude)},
          {"path_amplitude", complex_to_json(r.path_amplitude)},
          {"total_phase", r.total_phase},
          {"amplitude_error", r.amplitude_error},
          {"modulus_error", r.modulus_error},
          {"promise", {{"decision", to_string(r.promise.decision)}, {"value", r.promise.value}}},
          {"certified", r.certified},
          {"decision", to_string(r.decision)}};
}

inline CompilationReport report_from_json(const json& j) {
  if (j.value("format", std::string()) != "tlbraid-report") throw DomainError("not a tlbraid report");
  CompilationReport r;
  r.qubits = j.at("qubits");
  r.k = j.at("k");
  r.epsilon = j.at("epsilon");
  r.delta = j.at("delta");
  for (const auto& g : j.at("gates")) {
    GateReport gr;
    gr.name = g.at("name");
    gr.position = g.at("position");
    gr.matrix = matrix_from_json(g.at("matrix"), 4);
    gr.b8_word = g.at("b8_word").get<std::vector<int>>();
    gr.encoded_distance = g.at("encoded_distance");
    gr.full_distance = g.at("full_distance");
    gr.phase = g.at("phase");
    gr.depth = g.at("depth");
    gr.lookup = g.at("lookup");
    gr.prefix_bound = g.at("prefix_bound");
    gr.prefix_budget = g.at("prefix_budget");
    r.gates.push_back(std::move(gr));
  }
  r.braid = BraidWord(j.at("braid").at("strands"), j.at("braid").at("letters").get<std::vector<int>>());
  r.error_bound = j.at("error_bound");
  r.predicted_amplitude = complex_from_json(j.at("predicted_amplitude"));
  r.path_amplitude = complex_from_json(j.at("path_amplitude"));
  r.total_phase = j.at("total_phase");
  r.amplitude_error = j.at("amplitude_error");
  r.modulus_error = j.at("modulus_error");
  r.promise = {promise_from_string(j.at("promise").at("decision")), j.at("promise").at("value")};
  r.certified = j.at("certified");
  r.decision = promise_from_string(j.at("decision"));
  return r;
}

}  // namespace tlbraid
