#include "qfhe/cli.hpp"

#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "qfhe/analysis.hpp"
#include "qfhe/circuit.hpp"
#include "qfhe/errors.hpp"
#include "qfhe/file_formats.hpp"
#include "qfhe/homomorphic.hpp"
#include "qfhe/qotp.hpp"

namespace qfhe::cli {
namespace {

struct Options {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string variant = "xz";
  std::string out_path;
  std::string key_path;
  std::string in_path;
  std::string circuit_path;
  std::string state_path;
  std::string unitary_path;
  std::string emit_path;
  std::string format = "human";
  double verify_tol = 1e-9;
  double classify_tol = kDefaultClassifyTol;
  std::size_t samples = 100;
  std::uint64_t identity_seed = 7;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

void check_sizes(const QotpKey& key, std::size_t n) {
  if (key.qubits() != n) {
    throw DimensionError("key covers " + std::to_string(key.qubits()) + " qubit(s) but state has " +
                         std::to_string(n));
  }
}

int do_keygen(const Options& o, std::ostream& out) {
  if (o.n == 0) throw std::invalid_argument("keygen: -n must be at least 1");
  RandomSource rng(o.seed);
  const QotpKey key = keygen(o.n, rng, o.variant == "hy" ? KeyVariant::HY : KeyVariant::XZ);
  io::write_file(o.out_path, io::serialize_key(key));
  out << "wrote " << o.n << "-qubit " << o.variant << " key to " << o.out_path << "\n";
  return kSuccess;
}

int do_crypt(const Options& o, bool encrypting, std::ostream& out) {
  const QotpKey key = io::parse_key(io::read_file(o.key_path));
  const io::AnyState in = io::parse_state(io::read_file(o.in_path));
  check_sizes(key, io::state_qubits(in));
  const io::AnyState result = std::visit(
      [&](const auto& s) -> io::AnyState { return encrypting ? encrypt(key, s) : decrypt(key, s); }, in);
  io::write_file(o.out_path, io::serialize_state(result));
  out << (encrypting ? "encrypted " : "decrypted ") << o.in_path << " -> " << o.out_path << "\n";
  return kSuccess;
}

int do_evaluate(const Options& o, std::ostream& out) {
  const QotpKey key = io::parse_key(io::read_file(o.key_path));
  const Circuit c = parse_circuit(io::read_file(o.circuit_path));
  const io::AnyState in = io::parse_state(io::read_file(o.in_path));
  check_sizes(key, io::state_qubits(in));
  const Circuit rewritten = evaluation_circuit(key, c);
  const io::AnyState result =
      std::visit([&](const auto& s) -> io::AnyState { return simulate(rewritten, s); }, in);
  io::write_file(o.out_path, io::serialize_state(result));
  if (!o.emit_path.empty()) io::write_file(o.emit_path, serialize_circuit(rewritten));
  out << "evaluated " << c.size() << " gate(s) as " << rewritten.size() << " gate(s) -> "
      << o.out_path << "\n";
  return kSuccess;
}

int do_simulate(const Options& o, std::ostream& out) {
  const Circuit c = parse_circuit(io::read_file(o.circuit_path));
  const io::AnyState in = io::parse_state(io::read_file(o.in_path));
  const io::AnyState result = std::visit([&](const auto& s) -> io::AnyState { return simulate(c, s); }, in);
  io::write_file(o.out_path, io::serialize_state(result));
  out << "simulated " << c.size() << " gate(s) -> " << o.out_path << "\n";
  return kSuccess;
}

int do_verify(const Options& o, std::ostream& out) {
  const Circuit c = parse_circuit(io::read_file(o.circuit_path));
  const io::AnyState in = io::parse_state(io::read_file(o.state_path));
  const DensityState sigma = std::holds_alternative<PureState>(in)
                                 ? DensityState::from_pure(std::get<PureState>(in))
                                 : std::get<DensityState>(in);
  const SecurityReport r = verify_security(c, sigma, o.verify_tol);
  if (o.format == "json") {
    out << "{\n  \"n_qubits\": " << r.n_qubits << ",\n  \"states_tested\": " << r.states_tested
        << ",\n  \"worst_encrypt_distance\": " << io::format_real(r.worst_encrypt_distance)
        << ",\n  \"worst_evaluate_distance\": " << io::format_real(r.worst_evaluate_distance)
        << ",\n  \"tolerance\": " << io::format_real(r.tolerance)
        << ",\n  \"pass\": " << (r.pass ? "true" : "false") << "\n}\n";
  } else {
    out << "qubits:                  " << r.n_qubits << "\n"
        << "states tested:           " << r.states_tested << "\n"
        << "worst encrypt distance:  " << sci(r.worst_encrypt_distance) << "\n"
        << "worst evaluate distance: " << sci(r.worst_evaluate_distance) << "\n"
        << "tolerance:               " << sci(r.tolerance) << "\n"
        << "result:                  " << (r.pass ? "PASS" : "FAIL") << "\n";
  }
  return r.pass ? kSuccess : kVerificationFailed;
}

int do_classify(const Options& o, std::ostream& out) {
  const DenseOperator u = io::parse_matrix(io::read_file(o.unitary_path));
  const ClassifyResult r = classify_key_independent(u, o.classify_tol);
  if (r.witness) {
    out << "key-independent: a=" << bits_to_string(r.witness->a) << " b=" << bits_to_string(r.witness->b)
        << " theta=" << io::format_real(r.witness->theta) << "\n";
  } else {
    out << "not key-independent\n";
  }
  out << "max deviation: " << sci(r.max_deviation) << "\n";
  return kSuccess;
}

int do_check_identities(const Options& o, std::ostream& out) {
  if (o.samples == 0) throw std::invalid_argument("check-identities: --samples must be at least 1");
  RandomSource rng(o.identity_seed);
  const IdentityReport report = check_appendix_identities(o.samples, rng);
  char line[128];
  std::snprintf(line, sizeof(line), "%-40s %-10s %s\n", "identity", "max error", "status");
  out << line;
  for (const IdentityCheck& row : report.rows) {
    std::snprintf(line, sizeof(line), "%-40s %-10s %s\n", row.name.c_str(), sci(row.max_error).c_str(),
                  row.max_error <= kIdentityTol ? "ok" : "FAIL");
    out << line;
  }
  out << "pad commutation through U(a,b,c,d): max step error " << sci(report.u_rewrite_chain_error)
      << (report.u_rewrite_chain_error <= kIdentityTol ? " ok" : " FAIL") << "\n";
  return report.pass() ? kSuccess : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum one-time pad with key-dependent homomorphic evaluation", "qfhe"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a one-time pad key");
  keygen_cmd->add_option("-n", o.n, "Number of qubits")->required();
  keygen_cmd->add_option("--seed", o.seed, "Random seed")->required();
  keygen_cmd->add_option("--variant", o.variant, "Pad variant")->check(CLI::IsMember({"xz", "hy"}));
  keygen_cmd->add_option("-o", o.out_path, "Output key file")->required();
  keygen_cmd->callback([&] { action = [&] { return do_keygen(o, out); }; });

  for (const bool encrypting : {true, false}) {
    auto* cmd = app.add_subcommand(encrypting ? "encrypt" : "decrypt",
                                   encrypting ? "Encrypt a state file" : "Decrypt a state file");
    cmd->add_option("--key", o.key_path)->required();
    cmd->add_option("--in", o.in_path)->required();
    cmd->add_option("--out", o.out_path)->required();
    cmd->callback([&, encrypting] { action = [&, encrypting] { return do_crypt(o, encrypting, out); }; });
  }

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Apply a circuit to a ciphertext");
  evaluate_cmd->add_option("--key", o.key_path)->required();
  evaluate_cmd->add_option("--circuit", o.circuit_path)->required();
  evaluate_cmd->add_option("--in", o.in_path)->required();
  evaluate_cmd->add_option("--out", o.out_path)->required();
  evaluate_cmd->add_option("--emit-rewritten", o.emit_path, "Also write the rewritten circuit");
  evaluate_cmd->callback([&] { action = [&] { return do_evaluate(o, out); }; });

  auto* simulate_cmd = app.add_subcommand("simulate", "Apply a circuit to a plaintext state");
  simulate_cmd->add_option("--circuit", o.circuit_path)->required();
  simulate_cmd->add_option("--in", o.in_path)->required();
  simulate_cmd->add_option("--out", o.out_path)->required();
  simulate_cmd->callback([&] { action = [&] { return do_simulate(o, out); }; });

  auto* verify_cmd = app.add_subcommand("verify-security", "Check key averages are maximally mixed");
  verify_cmd->add_option("--circuit", o.circuit_path)->required();
  verify_cmd->add_option("--state", o.state_path)->required();
  verify_cmd->add_option("--tol", o.verify_tol, "Trace-distance tolerance")->capture_default_str();
  verify_cmd->add_option("--format", o.format)->check(CLI::IsMember({"human", "json"}));
  verify_cmd->callback([&] { action = [&] { return do_verify(o, out); }; });

  auto* classify_cmd = app.add_subcommand("classify", "Test whether a unitary admits key-independent evaluation");
  classify_cmd->add_option("--unitary", o.unitary_path)->required();
  classify_cmd->add_option("--tol", o.classify_tol, "Phase-adjusted deviation tolerance")->capture_default_str();
  classify_cmd->callback([&] { action = [&] { return do_classify(o, out); }; });

  auto* identities_cmd = app.add_subcommand("check-identities", "Numerically check the commutation rules");
  identities_cmd->add_option("--samples", o.samples, "Random angles per rule")->capture_default_str();
  identities_cmd->add_option("--seed", o.identity_seed, "Seed for the sampled angles")->capture_default_str();
  identities_cmd->callback([&] { action = [&] { return do_check_identities(o, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kSemanticError;
  }

  try {
    return action();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseOrIoError;
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << "\n";
    return kParseOrIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kSemanticError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kSemanticError;
  }
}

}  // namespace qfhe::cli
