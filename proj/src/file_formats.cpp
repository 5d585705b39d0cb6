#include "qfhe/file_formats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qfhe/errors.hpp"

namespace qfhe::io {
namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + static_cast<std::size_t>(
                              std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
    throw ParseError("", "syntax error: " + std::string(e.what()), line);
  }
}

void expect_keys(const json& obj, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) throw ParseError("", "expected a JSON object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, _] : obj.items()) {
    if (!allowed.contains(k)) throw ParseError(k, "unexpected field");
  }
  for (const char* k : keys) {
    if (!obj.contains(k)) throw ParseError(k, "missing field");
  }
}

std::size_t read_count(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
    throw ParseError(key, "expected a positive integer");
  }
  return v.get<std::size_t>();
}

Complex read_pair(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ParseError(field, "expected [re, im]");
  }
  const Complex z(v[0].get<double>(), v[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ParseError(field, "not finite");
  return z;
}

Matrix read_grid(const json& grid, const std::string& field) {
  if (!grid.is_array() || grid.empty()) throw ParseError(field, "expected a non-empty array of rows");
  const std::size_t d = grid.size();
  Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < d; ++r) {
    const std::string row_field = field + "[" + std::to_string(r) + "]";
    if (!grid[r].is_array() || grid[r].size() != d) {
      throw ParseError(row_field, "expected a row of " + std::to_string(d) + " entries");
    }
    for (std::size_t c = 0; c < d; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          read_pair(grid[r][c], row_field + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

std::string pair_text(const Complex& z) {
  return "[" + format_real(z.real()) + "," + format_real(z.imag()) + "]";
}

std::string grid_text(const Matrix& m, const std::string& indent) {
  std::string out = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out += r == 0 ? "\n" : ",\n";
    out += indent + "  [";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c != 0) out += ",";
      out += pair_text(m(r, c));
    }
    out += "]";
  }
  out += "\n" + indent + "]";
  return out;
}

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0.0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string serialize_key(const QotpKey& key) {
  return "{\n  \"n\": " + std::to_string(key.qubits()) + ",\n  \"x_bits\": \"" +
         bits_to_string(key.x_bits()) + "\",\n  \"z_bits\": \"" + bits_to_string(key.z_bits()) +
         "\",\n  \"variant\": \"" + variant_name(key.variant()) + "\"\n}\n";
}

QotpKey parse_key(std::string_view text) {
  const json doc = parse_json(text);
  expect_keys(doc, {"n", "x_bits", "z_bits", "variant"});
  const std::size_t n = read_count(doc, "n");
  Bits bits[2];
  const char* names[] = {"x_bits", "z_bits"};
  for (int i = 0; i < 2; ++i) {
    const json& v = doc.at(names[i]);
    if (!v.is_string()) throw ParseError(names[i], "expected a bit string");
    try {
      bits[i] = bits_from_string(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(names[i], e.what());
    }
    if (bits[i].size() != n) throw ParseError(names[i], "length must equal n = " + std::to_string(n));
  }
  const json& variant = doc.at("variant");
  if (!variant.is_string() || (variant != "xz" && variant != "hy")) {
    throw ParseError("variant", "expected \"xz\" or \"hy\"");
  }
  return QotpKey(std::move(bits[0]), std::move(bits[1]),
                 variant == "xz" ? KeyVariant::XZ : KeyVariant::HY);
}

std::size_t state_qubits(const AnyState& state) {
  return std::visit([](const auto& s) { return s.qubits(); }, state);
}

std::string serialize_state(const AnyState& state) {
  std::string out = "{\n  \"qubits\": " + std::to_string(state_qubits(state)) + ",\n";
  if (const auto* psi = std::get_if<PureState>(&state)) {
    out += "  \"kind\": \"pure\",\n  \"data\": [";
    const Vector& v = psi->amplitudes();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (i != 0) out += ",";
      out += pair_text(v(i));
    }
    out += "]\n}\n";
  } else {
    out += "  \"kind\": \"density\",\n  \"data\": " +
           grid_text(std::get<DensityState>(state).matrix(), "  ") + "\n}\n";
  }
  return out;
}

AnyState parse_state(std::string_view text) {
  const json doc = parse_json(text);
  expect_keys(doc, {"qubits", "kind", "data"});
  const std::size_t n = read_count(doc, "qubits");
  if (n > 16) throw ParseError("qubits", "too many qubits for a dense state");
  const std::size_t d = std::size_t{1} << n;
  const json& kind = doc.at("kind");
  const json& data = doc.at("data");
  try {
    if (kind == "pure") {
      if (!data.is_array() || data.size() != d) {
        throw ParseError("data", "expected " + std::to_string(d) + " amplitudes");
      }
      Vector v(static_cast<Eigen::Index>(d));
      for (std::size_t i = 0; i < d; ++i) {
        v(static_cast<Eigen::Index>(i)) = read_pair(data[i], "data[" + std::to_string(i) + "]");
      }
      return PureState(std::move(v));
    }
    if (kind == "density") {
      Matrix m = read_grid(data, "data");
      if (static_cast<std::size_t>(m.rows()) != d) {
        throw ParseError("data", "expected a " + std::to_string(d) + "x" + std::to_string(d) + " grid");
      }
      return DensityState(std::move(m));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError("data", e.what());
  }
  throw ParseError("kind", "expected \"pure\" or \"density\"");
}

std::string serialize_matrix(const Matrix& m) { return grid_text(m, "") + "\n"; }

DenseOperator parse_matrix(std::string_view text) {
  const json doc = parse_json(text);
  const json* grid = &doc;
  if (doc.is_object()) {
    expect_keys(doc, {"data"});
    grid = &doc.at("data");
  }
  Matrix m = read_grid(*grid, "data");
  if (!is_power_of_two(static_cast<std::size_t>(m.rows()))) {
    throw ParseError("data", "matrix size " + std::to_string(m.rows()) + " is not a power of two");
  }
  return DenseOperator(std::move(m));
}

}  // namespace qfhe::io
