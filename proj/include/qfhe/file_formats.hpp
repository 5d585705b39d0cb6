#pragma once

// JSON documents read and written by the command-line tool: key files, state
// files and raw matrix files. Output is canonical (fixed key order, shortest
// round-trip floats) so identical inputs give byte-identical files.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "qfhe/linalg.hpp"
#include "qfhe/qotp.hpp"

namespace qfhe::io {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using AnyState = std::variant<PureState, DensityState>;

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// Shortest decimal text that parses back to the same double.
std::string format_real(double v);

// {"n":..,"x_bits":"..","z_bits":"..","variant":"xz"|"hy"}
std::string serialize_key(const QotpKey& key);
QotpKey parse_key(std::string_view text);

// {"qubits":n,"kind":"pure"|"density","data":...} with [re, im] pairs; the
// density grid is row-major. State invariants are enforced on load.
std::string serialize_state(const AnyState& state);
AnyState parse_state(std::string_view text);

// A square grid of [re, im] pairs, either bare or under a "data" field.
// Throws ParseError unless the grid is square with power-of-two size.
std::string serialize_matrix(const Matrix& m);
DenseOperator parse_matrix(std::string_view text);

std::size_t state_qubits(const AnyState& state);

}  // namespace qfhe::io
