// tlbraid: command-line front end for the library.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tlbraid/compiler.hpp"
#include "tlbraid/density.hpp"
#include "tlbraid/encoding.hpp"
#include "tlbraid/io.hpp"
#include "tlbraid/kauffman.hpp"
#include "tlbraid/pathmodel.hpp"

using namespace tlbraid;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  return out;
}

struct BraidInput {
  std::string file;
  std::string word;
  int strands = 0;

  void add(CLI::App* app) {
    app->add_option("--braid", file, "braid file: 'strands N' then the letters");
    app->add_option("--word", word, "letters, e.g. \"1 -2 3\"");
    app->add_option("--strands", strands, "strand count for --word");
  }

  BraidWord get() const {
    if (!file.empty()) return parse_braid(read_file(file));
    if (strands <= 0) throw Error("give --braid FILE or --word W --strands N");
    return parse_braid("strands " + std::to_string(strands) + "\n" + word + "\n");
  }
};

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string t; std::getline(ss, t, ',');)
    if (!t.empty()) out.push_back(std::stoi(t));
  return out;
}

std::string complex_str(Complex z) {
  std::ostringstream o;
  o << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return o.str();
}

void print_coverage(const EpsilonNet& net) {
  std::cout << "entries " << net.size() << ", eps " << net.eps << ", coverage " << net.coverage.fraction << " ("
            << net.coverage.covered << "/" << net.coverage.samples << ", seed " << net.coverage.seed << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jones polynomials of plat closures and circuit-to-braid compilation"};
  app.require_subcommand(1);

  // jones
  auto* jones_cmd = app.add_subcommand("jones", "Jones polynomial of the plat closure");
  BraidInput jones_in;
  jones_in.add(jones_cmd);
  int jones_k = 0;
  jones_cmd->add_option("--k", jones_k, "also evaluate at A = i e^{-i pi/(2k)}");

  // rep
  auto* rep_cmd = app.add_subcommand("rep", "path-model representation of a braid");
  BraidInput rep_in;
  rep_in.add(rep_cmd);
  int rep_k = 7;
  bool rep_matrix = false;
  rep_cmd->add_option("--k", rep_k, "level")->required();
  rep_cmd->add_flag("--matrix", rep_matrix, "print the matrix as JSON");

  // expect
  auto* expect_cmd = app.add_subcommand("expect", "<alpha|rho(b)|alpha> against the Jones value");
  BraidInput expect_in;
  expect_in.add(expect_cmd);
  int expect_k = 7;
  expect_cmd->add_option("--k", expect_k, "level")->required();

  // blocks
  auto* blocks_cmd = app.add_subcommand("blocks", "block structure of rho_1..rho_7 on H_{8,k,1}");
  int blocks_k = 7;
  blocks_cmd->add_option("--k", blocks_k, "level");

  // net
  auto* net_cmd = app.add_subcommand("net", "epsilon-nets");
  net_cmd->require_subcommand(1);
  auto* build_cmd = net_cmd->add_subcommand("build", "breadth-first net over path-model or auxiliary generators");
  int build_k = 7, build_k0 = 0, build_len = 6, build_samples = 1000;
  double build_eps = 0.3;
  std::string build_out, build_gens = "1,2,3,4,5,6,7", build_labels;
  bool build_comm = false;
  build_cmd->add_option("--k", build_k, "level of rho_i");
  build_cmd->add_option("--k0", build_k0, "use the auxiliary generators at this level instead");
  build_cmd->add_option("--eps", build_eps, "net radius");
  build_cmd->add_option("--max-len", build_len, "word length (base length for --commutator)");
  build_cmd->add_option("--generators", build_gens, "comma-separated rho indices");
  build_cmd->add_option("--labels", build_labels, "restrict to the invariant block with these path labels");
  build_cmd->add_flag("--commutator", build_comm, "store group commutators of base words");
  build_cmd->add_option("--samples", build_samples, "coverage samples");
  build_cmd->add_option("--out", build_out, "output file")->required();

  auto* transfer_cmd = net_cmd->add_subcommand("transfer", "replace auxiliary letters by rho_i^{2m}");
  std::string transfer_in, transfer_out;
  int transfer_k = 70, transfer_k0 = 7;
  bool transfer_lenient = false;
  transfer_cmd->add_option("--in", transfer_in, "auxiliary net")->required();
  transfer_cmd->add_option("--k", transfer_k, "target level")->required();
  transfer_cmd->add_option("--k0", transfer_k0, "auxiliary level");
  transfer_cmd->add_flag("--lenient", transfer_lenient, "keep entries that deviate by more than eps/2");
  transfer_cmd->add_option("--out", transfer_out, "output file")->required();

  auto* coverage_cmd = net_cmd->add_subcommand("coverage", "re-sample the coverage of a net");
  std::string coverage_in;
  int coverage_samples = 1000;
  unsigned coverage_seed = 2024;
  coverage_cmd->add_option("--in", coverage_in, "net file")->required();
  coverage_cmd->add_option("--samples", coverage_samples, "Haar samples");
  coverage_cmd->add_option("--seed", coverage_seed, "sampling seed");

  // compile
  auto* compile_cmd = app.add_subcommand("compile", "compile a circuit into a braid");
  std::string compile_circuit_file, compile_net, compile_out;
  int compile_k = 7, compile_depth = 2;
  double compile_eps = 0.1;
  bool compile_uncertified = false;
  compile_cmd->add_option("--circuit", compile_circuit_file, "circuit file")->required();
  compile_cmd->add_option("--k", compile_k, "level");
  compile_cmd->add_option("--eps", compile_eps, "total error budget");
  compile_cmd->add_option("--net", compile_net, "net over rho_1..rho_7 at level k")->required();
  compile_cmd->add_option("--depth", compile_depth, "Solovay-Kitaev depth limit");
  compile_cmd->add_flag("--allow-uncertified", compile_uncertified, "use the best net entry on a poorly covering net");
  compile_cmd->add_option("--out", compile_out, "report file")->required();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "recompute a report from its braid");
  std::string verify_report_file;
  verify_cmd->add_option("--report", verify_report_file, "report file")->required();

  // braid
  auto* braid_cmd = app.add_subcommand("braid", "print the braid of a report");
  std::string braid_report_file;
  braid_cmd->add_option("--report", braid_report_file, "report file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    std::cout << std::setprecision(12);
    if (*jones_cmd) {
      const BraidWord b = jones_in.get();
      std::cout << "writhe " << writhe(b) << "\nV(A) exponent:coefficient = " << jones(b) << "\n";
      if (jones_k > 0) std::cout << "V at k=" << jones_k << ": " << complex_str(jones_at_root(b, jones_k)) << "\n";
    } else if (*rep_cmd) {
      const BraidWord b = rep_in.get();
      const PathModel model(b.strands, rep_k, 1);
      const ComplexMatrix m = model.rho_of_word(b);
      std::cout << "dim " << model.dim() << ", unitarity defect " << unitarity_defect(m) << "\n";
      if (rep_matrix) std::cout << matrix_to_json(m).dump() << "\n";
    } else if (*expect_cmd) {
      const BraidWord b = expect_in.get();
      const ModelParams p(expect_k);
      const Complex e = alpha_expectation(b, expect_k);
      const int w = writhe(b);
      const Complex predicted = std::pow(p.d, b.strands / 2 - 1) * std::pow(-p.a, 3 * w) * e;
      std::cout << "<alpha|rho|alpha> = " << complex_str(e) << "\nwrithe " << w
                << "\nd^(n/2-1) (-A)^(3w) <alpha|rho|alpha> = " << complex_str(predicted)
                << "\nV at root = " << complex_str(jones_at_root(b, expect_k)) << "\n";
    } else if (*blocks_cmd) {
      const PathModel model(8, blocks_k, 1);
      const auto lab = reconstruct_labels(blocks_k);
      std::cout << "dim H_{8," << blocks_k << ",1} = " << model.dim()
                << (lab.ambiguous() ? " (labeling not unique)" : "") << "\n";
      for (int i = 1; i <= 7; ++i) {
        std::cout << "rho_" << i << ":";
        for (const auto& blk : labelled_blocks(i, model, lab)) {
          std::cout << " {";
          bool first = true;
          for (int l : blk) {
            std::cout << (first ? "" : ",") << l;
            first = false;
          }
          std::cout << "}";
        }
        std::cout << "\n";
      }
    } else if (*build_cmd) {
      const auto gens_idx = parse_list(build_gens);
      const auto labels = parse_list(build_labels);
      const GeneratorSet g = build_k0 > 0 ? aux_generators(build_k0, gens_idx, labels)
                                          : path_model_generators(build_k, gens_idx, labels);
      NetOptions opt;
      opt.coverage_samples = build_samples;
      const EpsilonNet net =
          build_comm ? build_commutator_net(g, build_eps, build_len, opt) : build_net(g, build_eps, build_len, opt);
      auto out = open_out(build_out);
      write_net(net, out);
      print_coverage(net);
    } else if (*transfer_cmd) {
      std::ifstream in(transfer_in);
      if (!in) throw Error("cannot open " + transfer_in);
      const EpsilonNet hat = read_net(in);
      TransferOptions opt;
      opt.strict = !transfer_lenient;
      const auto r = transfer_net(hat, transfer_k, transfer_k0, opt);
      auto out = open_out(transfer_out);
      write_net(r.net, out);
      std::cout << "m " << r.bounds.m << ", eigenvalue mismatch " << r.bounds.eigen_mismatch
                << ", max |M_k - M_inf| " << r.bounds.m_deviation << "\nmax projective deviation "
                << r.max_proj_deviation << " (entry " << r.worst_entry << ")\n";
      print_coverage(r.net);
    } else if (*coverage_cmd) {
      std::ifstream in(coverage_in);
      if (!in) throw Error("cannot open " + coverage_in);
      EpsilonNet net = read_net(in);
      net.coverage = certify_coverage(net, coverage_samples, coverage_seed);
      print_coverage(net);
    } else if (*compile_cmd) {
      const CircuitIR c = parse_circuit(read_file(compile_circuit_file));
      std::ifstream in(compile_net);
      if (!in) throw Error("cannot open " + compile_net);
      const EpsilonNet net = read_net(in);
      CompileOptions opt;
      opt.max_depth = compile_depth;
      opt.allow_uncertified = compile_uncertified;
      const auto r = compile_circuit(c, compile_k, compile_eps, net, opt);
      auto out = open_out(compile_out);
      out << report_to_json(r).dump(2) << "\n";
      std::cout << "braid length " << r.braid.length() << " on " << r.braid.strands << " strands\n";
      for (std::size_t j = 0; j < r.gates.size(); ++j)
        std::cout << "gate " << j + 1 << " " << r.gates[j].name << " " << r.gates[j].position << ": encoded distance "
                  << r.gates[j].encoded_distance << ", full " << r.gates[j].full_distance << "\n";
      std::cout << "<0|U|0> = " << complex_str(r.predicted_amplitude) << "\n<alpha|rho|alpha> = "
                << complex_str(r.path_amplitude) << "\namplitude error " << r.amplitude_error << " <= bound "
                << r.error_bound << "\ndecision " << to_string(r.decision)
                << (r.certified ? "" : " (bound too large to certify)") << "\n";
    } else if (*verify_cmd) {
      const auto r = report_from_json(json::parse(read_file(verify_report_file)));
      const auto v = verify_report(r);
      std::cout << (v.ok ? "OK" : "MISMATCH") << ", max difference " << v.max_difference << "\n";
      for (const auto& m : v.mismatches) std::cout << "  " << m << "\n";
      return v.ok ? 0 : 1;
    } else if (*braid_cmd) {
      const auto r = report_from_json(json::parse(read_file(braid_report_file)));
      std::cout << serialize_braid(r.braid);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
