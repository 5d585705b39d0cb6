#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "qfhe/cli.hpp"
#include "qfhe/circuit.hpp"
#include "qfhe/file_formats.hpp"

namespace qfhe {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qfhe_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void put(const std::string& name, const std::string& text) const { io::write_file(dir_ / name, text); }
  std::string get(const std::string& name) const { return io::read_file(dir_ / name); }

  static Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

constexpr const char* kBell =
    R"({"qubits":2,"gates":[{"kind":"h","wire":0},{"kind":"cnot","control":0,"target":1}]})";
constexpr const char* kZero2 = R"({"qubits":2,"kind":"pure","data":[[1,0],[0,0],[0,0],[0,0]]})";
constexpr const char* kZero1 = R"({"qubits":1,"kind":"pure","data":[[1,0],[0,0]]})";

TEST_F(Cli, KeygenIsDeterministic) {
  EXPECT_EQ(run({"keygen", "-n", "2", "--seed", "42", "-o", path("a.json")}).code, 0);
  EXPECT_EQ(run({"keygen", "-n", "2", "--seed", "42", "-o", path("b.json")}).code, 0);
  EXPECT_EQ(get("a.json"), get("b.json"));
  EXPECT_EQ(run({"keygen", "-n", "3", "--seed", "1", "-o", path("c.json")}).code, 0);
  const QotpKey k = io::parse_key(get("c.json"));
  EXPECT_EQ(k.x_bits().size(), 3u);
  EXPECT_EQ(k.z_bits().size(), 3u);
}

TEST_F(Cli, KeygenRejectsZeroQubits) {
  const Outcome o = run({"keygen", "-n", "0", "--seed", "1", "-o", path("k.json")});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("-n"), std::string::npos);
}

TEST_F(Cli, EncryptDecryptExamples) {
  put("k.json", R"({"n":1,"x_bits":"1","z_bits":"0","variant":"xz"})");
  put("zero.json", kZero1);
  ASSERT_EQ(run({"encrypt", "--key", path("k.json"), "--in", path("zero.json"), "--out", path("c.json")}).code, 0);
  const auto c = io::parse_state(get("c.json"));
  EXPECT_EQ(std::get<PureState>(c).amplitudes(), PureState::basis(1, 1).amplitudes());

  put("rho.json", R"({"qubits":1,"kind":"density","data":[[[0.7,0],[0.1,-0.2]],[[0.1,0.2],[0.3,0]]]})");
  ASSERT_EQ(run({"encrypt", "--key", path("k.json"), "--in", path("rho.json"), "--out", path("rc.json")}).code, 0);
  ASSERT_EQ(run({"decrypt", "--key", path("k.json"), "--in", path("rc.json"), "--out", path("rd.json")}).code, 0);
  const auto orig = std::get<DensityState>(io::parse_state(get("rho.json")));
  const auto back = std::get<DensityState>(io::parse_state(get("rd.json")));
  EXPECT_LE(trace_distance(orig, back), 1e-12);

  put("k2.json", R"({"n":2,"x_bits":"10","z_bits":"01","variant":"xz"})");
  EXPECT_EQ(run({"encrypt", "--key", path("k2.json"), "--in", path("zero.json"), "--out", path("x.json")}).code, 2);
}

TEST_F(Cli, PipelineMatchesSimulate) {
  put("bell.json", kBell);
  put("zero.json", kZero2);
  ASSERT_EQ(run({"keygen", "-n", "2", "--seed", "5", "-o", path("k.json")}).code, 0);
  ASSERT_EQ(run({"encrypt", "--key", path("k.json"), "--in", path("zero.json"), "--out", path("c.json")}).code, 0);
  ASSERT_EQ(run({"evaluate", "--key", path("k.json"), "--circuit", path("bell.json"), "--in", path("c.json"),
                 "--out", path("e.json")}).code,
            0);
  ASSERT_EQ(run({"decrypt", "--key", path("k.json"), "--in", path("e.json"), "--out", path("d.json")}).code, 0);
  ASSERT_EQ(run({"simulate", "--circuit", path("bell.json"), "--in", path("zero.json"), "--out", path("s.json")}).code,
            0);
  const auto d = DensityState::from_pure(std::get<PureState>(io::parse_state(get("d.json"))));
  const auto s = DensityState::from_pure(std::get<PureState>(io::parse_state(get("s.json"))));
  EXPECT_LE(trace_distance(d, s), 1e-9);
}

TEST_F(Cli, EmitRewrittenTriplesCnots) {
  put("k.json", R"({"n":2,"x_bits":"11","z_bits":"11","variant":"xz"})");
  put("c.json", R"({"qubits":2,"gates":[{"kind":"cnot","control":0,"target":1},{"kind":"cnot","control":1,"target":0}]})");
  put("zero.json", kZero2);
  ASSERT_EQ(run({"evaluate", "--key", path("k.json"), "--circuit", path("c.json"), "--in", path("zero.json"),
                 "--out", path("o.json"), "--emit-rewritten", path("r.json")}).code,
            0);
  EXPECT_EQ(parse_circuit(get("r.json")).size(), 6u);
}

TEST_F(Cli, EvaluateEmptyCircuitKeepsCiphertext) {
  put("k.json", R"({"n":1,"x_bits":"1","z_bits":"1","variant":"xz"})");
  put("c.json", R"({"qubits":1,"gates":[]})");
  put("in.json", R"({"qubits":1,"kind":"density","data":[[[0.7,0],[0.1,-0.2]],[[0.1,0.2],[0.3,0]]]})");
  ASSERT_EQ(run({"evaluate", "--key", path("k.json"), "--circuit", path("c.json"), "--in", path("in.json"),
                 "--out", path("o.json")}).code,
            0);
  EXPECT_EQ(get("o.json"), io::serialize_state(io::parse_state(get("in.json"))));
}

TEST_F(Cli, EvaluateRejectsHyKeyOnGeneralCircuit) {
  put("k.json", R"({"n":2,"x_bits":"10","z_bits":"01","variant":"hy"})");
  put("bell.json", kBell);
  put("zero.json", kZero2);
  EXPECT_EQ(run({"evaluate", "--key", path("k.json"), "--circuit", path("bell.json"), "--in", path("zero.json"),
                 "--out", path("o.json")}).code,
            2);
}

TEST_F(Cli, SimulateExamples) {
  put("bell.json", kBell);
  put("zero.json", kZero2);
  ASSERT_EQ(run({"simulate", "--circuit", path("bell.json"), "--in", path("zero.json"), "--out", path("s.json")}).code,
            0);
  const Vector a = std::get<PureState>(io::parse_state(get("s.json"))).amplitudes();
  EXPECT_NEAR(a(0).real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(a(3).real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(std::abs(a(1)) + std::abs(a(2)), 0.0);

  put("x.json", R"({"qubits":1,"gates":[{"kind":"x","wire":0}]})");
  put("zero1.json", kZero1);
  ASSERT_EQ(run({"simulate", "--circuit", path("x.json"), "--in", path("zero1.json"), "--out", path("o.json")}).code,
            0);
  EXPECT_EQ(std::get<PureState>(io::parse_state(get("o.json"))).amplitudes(), PureState::basis(1, 1).amplitudes());

  put("bad.json", R"({"qubits":1,"gates":[{"kind":"x","wire":1}]})");
  EXPECT_EQ(run({"simulate", "--circuit", path("bad.json"), "--in", path("zero1.json"), "--out", path("o.json")}).code,
            3);
}

TEST_F(Cli, VerifySecurity) {
  put("empty.json", R"({"qubits":1,"gates":[]})");
  put("zero.json", kZero1);
  const Outcome ok = run({"verify-security", "--circuit", path("empty.json"), "--state", path("zero.json")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_FALSE(ok.out.empty());

  put("c.json", R"({"qubits":2,"gates":[{"kind":"ry","theta":0.3,"wire":0},{"kind":"cnot","control":0,"target":1},
    {"kind":"u","alpha":0.1,"beta":0.2,"gamma":0.3,"delta":0.4,"wire":1},{"kind":"rz","theta":1.1,"wire":0}]})");
  put("s.json", R"({"qubits":2,"kind":"pure","data":[[0.5,0.1],[0.3,-0.4],[0.2,0.2],[0.5,0.4]]})");
  const Outcome json =
      run({"verify-security", "--circuit", path("c.json"), "--state", path("s.json"), "--format", "json"});
  EXPECT_EQ(json.code, 0) << json.err;
  EXPECT_NE(json.out.find("\"pass\": true"), std::string::npos) << json.out;

  EXPECT_EQ(run({"verify-security", "--circuit", path("c.json"), "--state", path("s.json"), "--tol", "0"}).code, 1);
  EXPECT_EQ(run({"verify-security", "--circuit", path("c.json"), "--state", path("s.json"), "--format", "xml"}).code,
            2);

  put("big.json", R"({"qubits":4,"gates":[]})");
  put("big_state.json", R"({"qubits":4,"kind":"pure","data":[[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],
    [0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]})");
  EXPECT_EQ(run({"verify-security", "--circuit", path("big.json"), "--state", path("big_state.json")}).code, 2);
}

TEST_F(Cli, ClassifyExamples) {
  put("x.json", "[[[0,0],[1,0]],[[1,0],[0,0]]]");
  const Outcome x = run({"classify", "--unitary", path("x.json")});
  EXPECT_EQ(x.code, 0);
  EXPECT_NE(x.out.find("key-independent: a=1 b=0 theta=0\n"), std::string::npos) << x.out;

  put("h.json", "[[[0.7071067811865476,0],[0.7071067811865476,0]],[[0.7071067811865476,0],[-0.7071067811865476,0]]]");
  const Outcome h = run({"classify", "--unitary", path("h.json")});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("not key-independent"), std::string::npos);

  put("three.json", "[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]");
  EXPECT_EQ(run({"classify", "--unitary", path("three.json")}).code, 3);
  put("nu.json", "[[[2,0],[0,0]],[[0,0],[1,0]]]");
  EXPECT_EQ(run({"classify", "--unitary", path("nu.json")}).code, 2);
}

TEST_F(Cli, CheckIdentities) {
  const Outcome a = run({"check-identities", "--samples", "100", "--seed", "7"});
  const Outcome b = run({"check-identities", "--samples", "100", "--seed", "7"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"check-identities", "--samples", "1"}).code, 0);
  EXPECT_EQ(run({"check-identities", "--samples", "0"}).code, 2);
}

TEST_F(Cli, ExitCodeContract) {
  put("garbage.json", "{not json");
  put("zero.json", kZero1);
  put("k.json", R"({"n":1,"x_bits":"1","z_bits":"0","variant":"xz"})");
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"encrypt", "--key", path("k.json")}).code, 2);
  EXPECT_EQ(run({"encrypt", "--key", path("garbage.json"), "--in", path("zero.json"), "--out", path("o")}).code, 3);
  EXPECT_EQ(run({"encrypt", "--key", path("k.json"), "--in", path("garbage.json"), "--out", path("o")}).code, 3);
  EXPECT_EQ(run({"encrypt", "--key", path("missing.json"), "--in", path("zero.json"), "--out", path("o")}).code, 3);
  EXPECT_EQ(run({"encrypt", "--key", path("k.json"), "--in", path("zero.json"), "--out", "/nonexistent/dir/o"}).code,
            3);
  EXPECT_EQ(run({"keygen", "-n", "2", "--seed", "1", "--variant", "zz", "-o", path("k2.json")}).code, 2);
  EXPECT_EQ(run({"keygen", "-n", "2", "-o", path("k2.json")}).code, 2);
}

}  // namespace
}  // namespace qfhe
