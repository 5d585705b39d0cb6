#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <string>

#include <json.hpp>

#include "qfhe/circuit.hpp"
#include "qfhe/errors.hpp"

namespace qfhe {
namespace {

using nlohmann::json;

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

void expect_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, _] : obj.items()) {
    if (!allowed.contains(k)) throw ParseError(where + "." + k, "unexpected field");
  }
  for (const char* k : keys) {
    if (!obj.contains(k)) throw ParseError(where + "." + k, "missing field");
  }
}

std::size_t read_index(const json& obj, const std::string& where, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ParseError(where + "." + key, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

double read_real(const json& v, const std::string& field) {
  if (!v.is_number()) throw ParseError(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(field, "number is not finite");
  return d;
}

std::size_t read_wire(const json& obj, const std::string& where, const char* key, std::size_t n) {
  const std::size_t w = read_index(obj, where, key);
  if (w >= n) {
    throw ParseError(where + "." + key,
                     "wire " + std::to_string(w) + " out of range for " + std::to_string(n) + " qubits");
  }
  return w;
}

Gate read_gate(const json& g, std::size_t index, std::size_t n) {
  const std::string where = "gates[" + std::to_string(index) + "]";
  if (!g.is_object()) throw ParseError(where, "expected an object");
  if (!g.contains("kind") || !g.at("kind").is_string()) {
    throw ParseError(where + ".kind", "expected a string");
  }
  const std::string kind = g.at("kind").get<std::string>();

  if (kind == "x" || kind == "y" || kind == "z" || kind == "h") {
    expect_keys(g, where, {"kind", "wire"});
    const std::size_t w = read_wire(g, where, "wire", n);
    switch (kind[0]) {
      case 'x': return Gate::x(w);
      case 'y': return Gate::y(w);
      case 'z': return Gate::z(w);
      default: return Gate::h(w);
    }
  }
  if (kind == "rz" || kind == "ry") {
    expect_keys(g, where, {"kind", "theta", "wire"});
    const double theta = read_real(g.at("theta"), where + ".theta");
    const std::size_t w = read_wire(g, where, "wire", n);
    return kind == "rz" ? Gate::rz(w, theta) : Gate::ry(w, theta);
  }
  if (kind == "u") {
    expect_keys(g, where, {"kind", "alpha", "beta", "gamma", "delta", "wire"});
    EulerAngles a;
    a.alpha = read_real(g.at("alpha"), where + ".alpha");
    a.beta = read_real(g.at("beta"), where + ".beta");
    a.gamma = read_real(g.at("gamma"), where + ".gamma");
    a.delta = read_real(g.at("delta"), where + ".delta");
    return Gate::u(read_wire(g, where, "wire", n), a);
  }
  if (kind == "cnot") {
    expect_keys(g, where, {"kind", "control", "target"});
    const std::size_t c = read_wire(g, where, "control", n);
    const std::size_t t = read_wire(g, where, "target", n);
    if (c == t) throw ParseError(where + ".target", "cnot control and target must differ");
    return Gate::cnot(c, t);
  }
  if (kind == "mat2") {
    expect_keys(g, where, {"kind", "entries", "wire"});
    const json& e = g.at("entries");
    if (!e.is_array() || e.size() != 4) {
      throw ParseError(where + ".entries", "expected 4 [re, im] pairs");
    }
    Matrix m(2, 2);
    for (std::size_t i = 0; i < 4; ++i) {
      const std::string field = where + ".entries[" + std::to_string(i) + "]";
      if (!e[i].is_array() || e[i].size() != 2) throw ParseError(field, "expected [re, im]");
      m(static_cast<Eigen::Index>(i / 2), static_cast<Eigen::Index>(i % 2)) =
          Complex(read_real(e[i][0], field), read_real(e[i][1], field));
    }
    const std::size_t w = read_wire(g, where, "wire", n);
    try {
      return Gate::u(w, euler_decompose(DenseOperator(std::move(m))));
    } catch (const NotUnitaryError&) {
      throw ParseError(where + ".entries", "matrix is not unitary");
    }
  }
  throw ParseError(where + ".kind", "unknown gate kind '" + kind + "'");
}

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("", "syntax error: " + std::string(e.what()), line_of(text, e.byte));
  }
  if (!doc.is_object()) throw ParseError("", "expected a JSON object");
  expect_keys(doc, "circuit", {"qubits", "gates"});
  const std::size_t n = read_index(doc, "circuit", "qubits");
  if (n == 0) throw ParseError("circuit.qubits", "must be at least 1");
  const json& gates = doc.at("gates");
  if (!gates.is_array()) throw ParseError("circuit.gates", "expected an array");

  Circuit c(n);
  for (std::size_t i = 0; i < gates.size(); ++i) c.append(read_gate(gates[i], i, n));
  return c;
}

std::string serialize_circuit(const Circuit& c) {
  std::string out = "{\n  \"qubits\": " + std::to_string(c.qubits()) + ",\n  \"gates\": [";
  bool first = true;
  for (const Gate& g : c.gates()) {
    out += first ? "\n    " : ",\n    ";
    first = false;
    out += "{\"kind\":\"";
    out += gate_name(g.kind());
    out += "\"";
    switch (g.kind()) {
      case GateKind::Rz:
      case GateKind::Ry:
        out += ",\"theta\":" + format_real(g.theta());
        break;
      case GateKind::U: {
        const EulerAngles a = g.euler();
        out += ",\"alpha\":" + format_real(a.alpha) + ",\"beta\":" + format_real(a.beta) +
               ",\"gamma\":" + format_real(a.gamma) + ",\"delta\":" + format_real(a.delta);
        break;
      }
      default:
        break;
    }
    if (g.kind() == GateKind::CNOT) {
      out += ",\"control\":" + std::to_string(g.control()) +
             ",\"target\":" + std::to_string(g.target()) + "}";
    } else {
      out += ",\"wire\":" + std::to_string(g.wire()) + "}";
    }
  }
  out += first ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

}  // namespace qfhe
