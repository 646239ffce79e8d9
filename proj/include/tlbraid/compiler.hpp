#pragma once

// Circuits of adjacent two-qubit gates compiled gate by gate into B_8 words
// over rho_1..rho_7, shifted into B_{4n}, and checked against the circuit
// amplitude <0..0|U|0..0>.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tlbraid/braid.hpp"
#include "tlbraid/density/generators.hpp"
#include "tlbraid/density/net.hpp"
#include "tlbraid/density/solovay_kitaev.hpp"
#include "tlbraid/encoding.hpp"
#include "tlbraid/error.hpp"
#include "tlbraid/linalg.hpp"
#include "tlbraid/pathmodel.hpp"

namespace tlbraid {

// ---------------------------------------------------------------------------
// Circuits

/// Named two-qubit gates in the basis |q_s q_{s+1}>, qubit s most significant.
/// CNOT has control s and target s+1.
inline std::optional<ComplexMatrix> named_gate(const std::string& name) {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix h(2, 2), t = ComplexMatrix::Zero(2, 2);
  h << r, r, r, -r;
  t(0, 0) = 1.0;
  t(1, 1) = unit_phase(kPi / 4);
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  auto kron = [](const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
    return m;
  };
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  if (name == "HI") return kron(h, id);
  if (name == "IH") return kron(id, h);
  if (name == "TI") return kron(t, id);
  if (name == "IT") return kron(id, t);
  if (name == "CZ") {
    m(3, 3) = -1.0;
    return m;
  }
  if (name == "CNOT") {
    m(2, 2) = m(3, 3) = 0.0;
    m(2, 3) = m(3, 2) = 1.0;
    return m;
  }
  if (name == "SWAP") {
    m(1, 1) = m(2, 2) = 0.0;
    m(1, 2) = m(2, 1) = 1.0;
    return m;
  }
  return std::nullopt;
}

inline const std::vector<std::string>& named_gate_list() {
  static const std::vector<std::string> names{"HI", "IH", "CNOT", "CZ", "TI", "IT", "SWAP"};
  return names;
}

struct Gate {
  std::string name;  // a named gate or "U"
  int position = 1;  // acts on qubits position, position+1
  ComplexMatrix matrix;
  int line = 0;      // source line, 0 when built in code
};

struct CircuitIR {
  int qubits = 2;
  std::vector<Gate> gates;

  void validate() const {
    if (qubits < 1) throw DomainError("circuit: need at least one qubit");
    for (std::size_t j = 0; j < gates.size(); ++j) {
      const auto& g = gates[j];
      if (g.position < 1 || g.position + 1 > qubits)
        throw DomainError("circuit: gate " + std::to_string(j + 1) + " acts on qubits " + std::to_string(g.position) +
                          "," + std::to_string(g.position + 1) + " of a " + std::to_string(qubits) +
                          "-qubit register");
      if (g.matrix.rows() != 4 || g.matrix.cols() != 4) throw DomainError("circuit: gate matrix must be 4x4");
      require_unitary(g.matrix, "circuit gate", 1e-10);
    }
  }

  /// U = U_L ... U_1 on 2^n amplitudes
  ComplexMatrix unitary() const {
    const Eigen::Index dim = Eigen::Index{1} << qubits;
    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    for (const auto& g : gates) u = embed_on_qubits(g.matrix, g.position, qubits) * u;
    return u;
  }

  Complex zero_amplitude() const {
    const Eigen::Index dim = Eigen::Index{1} << qubits;
    ComplexVector v = ComplexVector::Zero(dim);
    v(0) = 1.0;
    for (const auto& g : gates) v = embed_on_qubits(g.matrix, g.position, qubits) * v;
    return v(0);
  }
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline double parse_double(const std::string& s, int line, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad " + what + " '" + s + "'");
  }
}

inline int parse_int(const std::string& s, int line, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad " + what + " '" + s + "'");
  }
}

}  // namespace detail

/// "qubits N" then one gate per line: "NAME POS" or "U POS re,im x16"
/// (row-major).  '#' starts a comment.
inline CircuitIR parse_circuit(const std::string& text) {
  CircuitIR c;
  bool header = false;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto tok = detail::split_ws(raw);
    if (tok.empty()) continue;
    if (!header) {
      if (tok[0] != "qubits" || tok.size() != 2) throw ParseError(line, "expected 'qubits N'");
      c.qubits = detail::parse_int(tok[1], line, "qubit count");
      if (c.qubits < 1) throw ParseError(line, "qubit count must be positive");
      header = true;
      continue;
    }
    if (tok[0] == "qubits") throw ParseError(line, "duplicate 'qubits' header");
    if (tok.size() < 2) throw ParseError(line, "gate '" + tok[0] + "' needs a position");
    Gate g;
    g.line = line;
    g.name = tok[0];
    std::transform(g.name.begin(), g.name.end(), g.name.begin(), [](unsigned char ch) { return std::toupper(ch); });
    g.position = detail::parse_int(tok[1], line, "position");
    if (g.position < 1 || g.position + 1 > c.qubits)
      throw ParseError(line, "gate on qubits " + std::to_string(g.position) + "," + std::to_string(g.position + 1) +
                                 " is not an adjacent pair of the " + std::to_string(c.qubits) + "-qubit register");
    if (g.name == "U") {
      if (tok.size() != 18) throw ParseError(line, "U needs 16 entries re,im, got " + std::to_string(tok.size() - 2));
      g.matrix.resize(4, 4);
      for (int e = 0; e < 16; ++e) {
        const std::string& t = tok[2 + e];
        const auto comma = t.find(',');
        if (comma == std::string::npos) throw ParseError(line, "matrix entry '" + t + "' is not re,im");
        g.matrix(e / 4, e % 4) = Complex(detail::parse_double(t.substr(0, comma), line, "real part"),
                                         detail::parse_double(t.substr(comma + 1), line, "imaginary part"));
      }
      if (unitarity_defect(g.matrix) > 1e-10)
        throw ParseError(line, "matrix is not unitary (defect " + std::to_string(unitarity_defect(g.matrix)) + ")");
    } else {
      auto m = named_gate(g.name);
      if (!m) throw ParseError(line, "unknown gate '" + tok[0] + "'");
      if (tok.size() != 2) throw ParseError(line, "trailing tokens after gate '" + tok[0] + "'");
      g.matrix = *m;
    }
    c.gates.push_back(std::move(g));
  }
  if (!header) throw ParseError(std::max(line, 1), "missing 'qubits N' header");
  return c;
}

inline std::string serialize_circuit(const CircuitIR& c) {
  std::ostringstream out;
  out.precision(17);
  out << "qubits " << c.qubits << "\n";
  for (const auto& g : c.gates) {
    if (g.name != "U" && named_gate(g.name)) {
      out << g.name << " " << g.position << "\n";
      continue;
    }
    out << "U " << g.position;
    for (int e = 0; e < 16; ++e) out << " " << g.matrix(e / 4, e % 4).real() << "," << g.matrix(e / 4, e % 4).imag();
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Encoded two-qubit block and exact lifts

/// Distance on the encoded four-dimensional subspace of H_{8,k,1}:
/// min over phi of ||(M - e^{i phi} T) P|| with P the encoded isometry.
inline PhaseAlignment encoded_distance(const ComplexMatrix& m, const ComplexMatrix& target, const ComplexMatrix& p,
                                       int samples = 1000) {
  return phase_aligned_distance(m * p, target * p, samples);
}

/// Applies an operator on H_{8,k,1} to the 8-strand segment at qubit pair s of
/// a vector on H_{4n,k,1}: it acts on paths whose segment starts and ends at
/// site 1 and as the identity on all other paths.
inline void apply_block_operator(const ComplexMatrix& u, int s, const PathBasis& big, const PathBasis& small,
                                 ComplexVector& v) {
  const int n = big.steps() / 4;
  if (s < 1 || s > n - 1) throw DomainError("apply_block_operator: position out of range");
  if (u.rows() != small.size()) throw DomainError("apply_block_operator: operator dimension mismatch");
  const int first = 4 * (s - 1), last = 4 * (s + 1);
  ComplexVector out = v;
  std::vector<int> steps(big.steps());
  for (int p = 0; p < big.size(); ++p) {
    if (big.site(p, first) != 1 || big.site(p, last) != 1 || v(p) == Complex(0.0)) continue;
    for (int j = 0; j < big.steps(); ++j) steps[j] = big.step(p, j);
    const std::vector<int> seg(steps.begin() + first, steps.begin() + last);
    const int a = *small.index_of(seg);
    out(p) -= v(p);
    for (int b = 0; b < small.size(); ++b) {
      if (u(b, a) == Complex(0.0)) continue;
      for (int j = 0; j < 8; ++j) steps[first + j] = small.step(b, j);
      out(*big.index_of(steps)) += u(b, a) * v(p);
    }
  }
  v = std::move(out);
}

/// <alpha| prod encode(U_i) |alpha> with every gate replaced by its exact
/// encoded unitary.
inline Complex exact_encoded_amplitude(const CircuitIR& c, int k) {
  c.validate();
  if (c.qubits < 2) return 1.0;
  const EncodedBasis enc2(2, k);
  const PathBasis big(4 * c.qubits, k, 1);
  const auto alpha = big.index_of(EncodedBasis(c.qubits, k).steps_of(0));
  ComplexVector v = ComplexVector::Zero(big.size());
  v(*alpha) = 1.0;
  for (const auto& g : c.gates) apply_block_operator(encode_gate(g.matrix, 1, enc2), g.position, big, enc2.basis(), v);
  return v(*alpha);
}

// ---------------------------------------------------------------------------
// Promise classification

enum class PromiseDecision { Low, High, OutsidePromise };

inline std::string to_string(PromiseDecision d) {
  switch (d) {
    case PromiseDecision::Low: return "LOW";
    case PromiseDecision::High: return "HIGH";
    default: return "OUTSIDE_PROMISE";
  }
}

inline PromiseDecision promise_from_string(const std::string& s) {
  if (s == "LOW") return PromiseDecision::Low;
  if (s == "HIGH") return PromiseDecision::High;
  if (s == "OUTSIDE_PROMISE") return PromiseDecision::OutsidePromise;
  throw DomainError("unknown promise decision '" + s + "'");
}

struct PromiseResult {
  PromiseDecision decision = PromiseDecision::OutsidePromise;
  double value = 0.0;  // |<alpha|rho(b)|alpha>|
};

inline PromiseDecision classify_value(double v) {
  if (v < 0.1) return PromiseDecision::Low;
  if (v > 0.9) return PromiseDecision::High;
  return PromiseDecision::OutsidePromise;
}

inline PromiseResult classify_promise(const BraidWord& b, int k) {
  const double v = std::abs(alpha_expectation(b, k));
  return {classify_value(v), v};
}

/// Largest total error bound under which a braid decision is also a decision
/// about the circuit: amplitudes below 1/10 and above 9/10 stay separated.
inline constexpr double kCertifiedBound = 0.4;

// ---------------------------------------------------------------------------
// Gate compilation

struct CompileOptions {
  int max_depth = 2;               // Solovay-Kitaev depth limit
  bool allow_uncertified = false;  // on a poorly covering net, use the best single entry
  SkOptions sk;
};

struct GateCompilation {
  GeneratorWord word;          // over net.generators
  std::vector<int> b8_word;    // signed rho indices 1..7
  double encoded_distance = 0.0;
  double phase = 0.0;          // rho(w) is close to e^{i phase} on the encoded subspace
  double full_distance = 0.0;  // projective, on all of H_{8,k,1}
  int depth = 0;
  bool lookup = false;         // chosen by scanning the net, no Solovay-Kitaev
};

inline std::vector<int> to_b8_word(const GeneratorWord& w, const GeneratorSet& gens) {
  std::vector<int> out;
  out.reserve(w.size());
  for (int l : w) {
    gens.letter(l);
    const int g = gens.generator_index[std::abs(l) - 1];
    if (g < 1 || g > 7) throw DomainError("to_b8_word: generator has no braid index");
    out.push_back(l > 0 ? g : -g);
  }
  return out;
}

inline void check_compiler_net(const EpsilonNet& net, int k) {
  const auto& g = net.generators;
  if (g.provenance.rfind("pathmodel", 0) != 0 || g.level != k || !g.labels.empty())
    throw DomainError("compile: the net must be over rho_i on H_{8,k,1} at k = " + std::to_string(k));
  if (g.dim() != PathBasis(8, k, 1).size()) throw DomainError("compile: net dimension mismatch");
}

/// Word over the net's generators whose action on the encoded two-qubit
/// subspace is within delta of u4 when the net allows it; the achieved
/// distance is always measured and returned.
inline GateCompilation compile_gate(const ComplexMatrix& u4, int k, double delta, const EpsilonNet& net,
                                    const CompileOptions& opt = {}) {
  if (u4.rows() != 4 || u4.cols() != 4) throw DomainError("compile_gate: gate must be 4x4");
  require_unitary(u4, "compile_gate", 1e-10);
  check_compiler_net(net, k);
  const EncodedBasis enc(2, k);
  const ComplexMatrix p = enc.isometry();
  const ComplexMatrix target = encode_gate(u4, 1, enc);

  GateCompilation best;
  auto measure = [&](GateCompilation& gc) {
    const ComplexMatrix m = net.generators.evaluate(gc.word);
    const auto al = encoded_distance(m, target, p);
    gc.encoded_distance = al.distance;
    gc.phase = al.phase;
    gc.full_distance = proj_distance(m, target);
    gc.b8_word = to_b8_word(gc.word, net.generators);
  };
  measure(best);  // empty word
  if (best.encoded_distance < 1e-12) return best;

  if (net.coverage.fraction >= opt.sk.min_coverage) {
    bool have = false;
    for (int depth = 0; depth <= opt.max_depth; ++depth) {
      GateCompilation gc;
      const auto sk = solovay_kitaev(target, net, depth, opt.sk);
      gc.word = sk.word;
      gc.depth = depth;
      measure(gc);
      if (!have || gc.encoded_distance < best.encoded_distance) best = gc;
      have = true;
      if (best.encoded_distance <= delta) break;
    }
    return best;
  }
  if (!opt.allow_uncertified)
    throw CoverageError("compile_gate: net coverage " + std::to_string(net.coverage.fraction) + " at eps " +
                        std::to_string(net.eps) + " is below " + std::to_string(opt.sk.min_coverage) +
                        "; Solovay-Kitaev refuses (allow_uncertified selects the best single entry)");

  // uncertified net: best entry under the encoded metric
  std::size_t arg = 0;
  double d_best = 1e300;
  for (std::size_t j = 0; j < net.entries.size(); ++j) {
    const double d = encoded_distance(net.entries[j].matrix, target, p, 64).distance;
    if (d < d_best) {
      d_best = d;
      arg = j;
    }
  }
  GateCompilation gc;
  gc.word = net.entries[arg].word;
  gc.lookup = true;
  measure(gc);
  return gc.encoded_distance < best.encoded_distance ? gc : best;
}

// ---------------------------------------------------------------------------
// Circuit compilation

struct GateReport {
  std::string name;
  int position = 1;
  ComplexMatrix matrix;
  std::vector<int> b8_word;
  double encoded_distance = 0.0;
  double full_distance = 0.0;
  double phase = 0.0;
  int depth = 0;
  bool lookup = false;
  double prefix_bound = 0.0;   // sum of encoded distances of gates 1..i
  double prefix_budget = 0.0;  // i * epsilon / L
};

struct CompilationReport {
  int qubits = 0;
  int k = 0;
  double epsilon = 0.0;
  double delta = 0.0;  // epsilon / L
  std::vector<GateReport> gates;
  BraidWord braid;
  double error_bound = 0.0;
  Complex predicted_amplitude{1.0, 0.0};  // <0..0|U|0..0>
  Complex path_amplitude{1.0, 0.0};       // <alpha|rho(braid)|alpha>
  double total_phase = 0.0;
  double amplitude_error = 0.0;  // |path - e^{i total_phase} predicted|
  double modulus_error = 0.0;    // ||path| - |predicted||
  PromiseResult promise;         // of the braid value
  bool certified = false;        // error_bound < kCertifiedBound
  PromiseDecision decision = PromiseDecision::OutsidePromise;
};

inline CircuitIR report_circuit(const CompilationReport& r) {
  CircuitIR c;
  c.qubits = r.qubits;
  for (const auto& g : r.gates) c.gates.push_back({g.name, g.position, g.matrix, 0});
  return c;
}

/// Fills in the amplitudes, errors and decision from the braid and the gates.
inline void evaluate_report(CompilationReport& r) {
  const CircuitIR c = report_circuit(r);
  r.predicted_amplitude = c.zero_amplitude();
  r.path_amplitude = r.qubits >= 2 ? alpha_expectation(r.braid, r.k) : Complex(1.0);
  r.error_bound = 0.0;
  r.total_phase = 0.0;
  for (const auto& g : r.gates) {
    r.error_bound += g.encoded_distance;
    r.total_phase += g.phase;
  }
  r.amplitude_error = std::abs(r.path_amplitude - unit_phase(r.total_phase) * r.predicted_amplitude);
  r.modulus_error = std::abs(std::abs(r.path_amplitude) - std::abs(r.predicted_amplitude));
  r.promise = {classify_value(std::abs(r.path_amplitude)), std::abs(r.path_amplitude)};
  r.certified = r.error_bound < kCertifiedBound;
  r.decision = r.certified ? r.promise.decision : PromiseDecision::OutsidePromise;
}

/// Each gate gets the budget delta = epsilon / L.  The braid lists the last
/// gate first, since rho of a word multiplies its letters left to right.
inline CompilationReport compile_circuit(const CircuitIR& c, int k, double epsilon, const EpsilonNet& net,
                                         const CompileOptions& opt = {}) {
  c.validate();
  if (!(epsilon > 0)) throw DomainError("compile_circuit: epsilon must be positive");
  CompilationReport r;
  r.qubits = c.qubits;
  r.k = k;
  r.epsilon = epsilon;
  const std::size_t L = c.gates.size();
  r.delta = L > 0 ? epsilon / static_cast<double>(L) : epsilon;
  r.braid = BraidWord(4 * c.qubits, {});
  std::map<std::string, GateCompilation> cache;
  double prefix = 0.0;
  for (std::size_t j = 0; j < L; ++j) {
    const auto& g = c.gates[j];
    std::ostringstream key;
    key.precision(17);
    for (int e = 0; e < 16; ++e) key << g.matrix(e / 4, e % 4) << ';';
    auto it = cache.find(key.str());
    if (it == cache.end()) it = cache.emplace(key.str(), compile_gate(g.matrix, k, r.delta, net, opt)).first;
    const GateCompilation& gc = it->second;
    GateReport gr;
    gr.name = g.name;
    gr.position = g.position;
    gr.matrix = g.matrix;
    gr.b8_word = gc.b8_word;
    gr.encoded_distance = gc.encoded_distance;
    gr.full_distance = gc.full_distance;
    gr.phase = gc.phase;
    gr.depth = gc.depth;
    gr.lookup = gc.lookup;
    prefix += gc.encoded_distance;
    gr.prefix_bound = prefix;
    gr.prefix_budget = static_cast<double>(j + 1) * r.delta;
    r.gates.push_back(std::move(gr));
  }
  for (std::size_t j = L; j-- > 0;) {
    const BraidWord piece = reduce_to_b8(r.gates[j].b8_word, r.gates[j].position, c.qubits);
    r.braid.letters.insert(r.braid.letters.end(), piece.letters.begin(), piece.letters.end());
  }
  evaluate_report(r);
  return r;
}

struct VerifyResult {
  bool ok = false;
  double max_difference = 0.0;
  std::vector<std::string> mismatches;
};

/// Recomputes a report from its braid and gate list and compares every
/// derived quantity with the stored one.
inline VerifyResult verify_report(const CompilationReport& stored, double tol = 1e-9) {
  VerifyResult v;
  CompilationReport fresh = stored;
  // per-gate distances from the gate's own slice of the braid
  const EncodedBasis enc(2, stored.k);
  const PathModel m8(8, stored.k, 1);
  const ComplexMatrix p = enc.isometry();
  std::size_t offset = stored.braid.letters.size();
  for (auto& g : fresh.gates) {
    const BraidWord b8(8, g.b8_word);
    const ComplexMatrix rho = m8.rho_of_word(b8);
    const ComplexMatrix target = encode_gate(g.matrix, 1, enc);
    g.encoded_distance = encoded_distance(rho, target, p).distance;
    g.full_distance = proj_distance(rho, target);
    // the braid stores the last gate first
    offset -= g.b8_word.size();
    const BraidWord expect = reduce_to_b8(g.b8_word, g.position, stored.qubits);
    if (!std::equal(expect.letters.begin(), expect.letters.end(), stored.braid.letters.begin() + offset))
      v.mismatches.push_back("braid segment of gate at position " + std::to_string(g.position));
  }
  if (offset != 0) v.mismatches.push_back("braid length differs from the gate words");
  evaluate_report(fresh);
  auto cmp = [&](const std::string& what, double a, double b, double t) {
    const double d = std::abs(a - b);
    v.max_difference = std::max(v.max_difference, d);
    if (d > t) v.mismatches.push_back(what);
  };
  for (std::size_t j = 0; j < fresh.gates.size(); ++j) {
    // encoded distances come from a phase search; allow its resolution
    cmp("encoded distance of gate " + std::to_string(j + 1), fresh.gates[j].encoded_distance,
        stored.gates[j].encoded_distance, 1e-6);
    cmp("full distance of gate " + std::to_string(j + 1), fresh.gates[j].full_distance, stored.gates[j].full_distance,
        tol);
  }
  cmp("predicted amplitude", std::abs(fresh.predicted_amplitude - stored.predicted_amplitude), 0.0, tol);
  cmp("path amplitude", std::abs(fresh.path_amplitude - stored.path_amplitude), 0.0, tol);
  cmp("error bound", fresh.error_bound, stored.error_bound, 1e-6);
  if (fresh.decision != stored.decision) v.mismatches.push_back("promise decision");
  if (fresh.amplitude_error > fresh.error_bound + 1e-9) v.mismatches.push_back("amplitude error exceeds the bound");
  v.ok = v.mismatches.empty();
  return v;
}

}  // namespace tlbraid
