#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json j;
};

Run run(std::vector<std::string> args, bool as_json = true) {
  if (as_json) args.push_back("--json");
  std::ostringstream out, err;
  int code = lvk::cli::run(args, out, err);
  Run r{code, out.str(), err.str(), json()};
  if (as_json && !r.out.empty()) r.j = json::parse(r.out);
  return r;
}

std::string write_system(const std::string& name, const std::string& text) {
  fs::path dir = fs::temp_directory_path() / "lvk_cli_tests";
  fs::create_directories(dir);
  fs::path p = dir / (name + ".sys");
  std::ofstream(p) << text;
  return p.string();
}

std::vector<std::string> catalog_entries() {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(LVK_CATALOG_DIR)) {
    if (e.path().extension() == ".sys") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> catalog_args(const std::string& sys) {
  std::ifstream in(sys);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("#! ", 0) == 0) {
      auto args = lvk::cli::split_words(line.substr(3));
      args.push_back("--system");
      args.push_back(sys);
      return args;
    }
  }
  return {};
}

}  // namespace

TEST_CASE("cli verify") {
  auto node = write_system("node", "vars x, y\ndx = x\ndy = y\n");
  auto a = run({"verify", "--system", node, "--darboux-poly", "x"});
  CHECK(a.code == 0);
  CHECK(a.j["status"] == "ok");
  CHECK(a.j["result"]["cofactor"] == "1");

  auto b = run({"verify", "--system", node, "--multiplier", "1/(x*y)"});
  CHECK(b.code == 0);
  CHECK(b.j["certificates"][0]["residual"] == "0");

  auto c = run({"verify", "--system", node, "--multiplier", "1"});
  CHECK(c.code == 3);
  CHECK(c.j["status"] == "failed");
  CHECK(c.j["certificates"][0]["residual"] == "2");
  CHECK(c.j["certificates"][0]["isZero"] == false);

  auto d = run({"verify", "--system", node, "--darboux-poly", "x+1"});
  CHECK(d.code == 3);
  CHECK(d.j["result"]["cofactor"].is_null());
  CHECK(d.j["certificates"][0]["residual"] == "-1");

  auto e = run({"verify", "--system", node, "--exp-factor", "y/x"});
  CHECK(e.code == 0);
  CHECK(e.j["result"]["cofactor"] == "0");
  // Cofactor x has degree 1 > m - 1 = 0.
  auto e2 = run({"verify", "--system", node, "--exp-factor", "x"});
  CHECK(e2.code == 3);
  CHECK(e2.j["certificates"][1]["residual"] == "1");
  auto f = run({"verify", "--system", node, "--exp-factor", "1/x"});
  CHECK(f.code == 3);
  auto g = run({"verify", "--system", node, "--first-integral", "x/y"});
  CHECK(g.code == 0);
}

TEST_CASE("cli parse errors exit 2") {
  auto node = write_system("node", "vars x, y\ndx = x\ndy = y\n");
  auto a = run({"verify", "--system", node, "--multiplier", "1/(x*"});
  CHECK(a.code == 2);
  CHECK(a.j["error"]["kind"] == "parse");
  auto bad = write_system("bad", "vars x, y\ndx = x\ndy = x/y\n");
  auto b = run({"verify", "--system", bad, "--multiplier", "1"});
  CHECK(b.code == 2);
  CHECK(b.j["error"]["message"].get<std::string>().rfind("3:", 0) == 0);
  auto c = run({"verify", "--system", node});
  CHECK(c.code == 2);
  auto d = run({"frobnicate"}, false);
  CHECK(d.code == 2);
  auto e = run({"verify", "--system", "/nonexistent/file.sys", "--darboux-poly", "x"});
  CHECK(e.code == 2);
}

TEST_CASE("cli synthesize") {
  auto node = write_system("node", "vars x, y\ndx = x\ndy = y\n");
  auto node2 = write_system("node2", "vars x, y\ndx = x\ndy = 2*y\n");
  auto a = run({"synthesize", "--system", node, "--poly", "x", "--poly", "y", "--target",
                "multiplier"});
  CHECK(a.code == 0);
  CHECK(a.j["result"]["representative"] == "x^-1 * y^-1");
  CHECK(a.j["result"]["dimension"] == 1);
  auto b = run({"synthesize", "--system", node2, "--poly", "x", "--poly", "y", "--target",
                "first-integral"});
  CHECK(b.code == 0);
  CHECK(b.j["result"]["representative"] == "x^2 * y^-1");
  auto c = run({"synthesize", "--system", node, "--poly", "x", "--target", "first-integral"});
  CHECK(c.code == 3);
  CHECK(c.j["result"]["functions"].empty());
  auto d = run({"synthesize", "--system", node, "--poly", "x+1", "--target", "multiplier"});
  CHECK(d.code == 3);
  CHECK(d.j["error"]["kind"] == "verification");
}

TEST_CASE("cli integrate-form") {
  auto a = run({"integrate-form", "--form", "1/x, 1/y"});
  CHECK(a.code == 0);
  CHECK(a.j["result"]["psi"] == "log(x) + log(y)");
  CHECK(a.j["result"]["darboux"] == "x * y");

  auto b = run({"integrate-form", "--form", "1/(x^2-2)"});
  CHECK(b.code == 0);
  REQUIRE(b.j["result"]["logGroups"].size() == 1);
  CHECK(b.j["result"]["logGroups"][0]["minPoly"] == "8*t^2-1");
  CHECK(b.j["result"]["logGroups"][0]["argument"] == "x-4*t");
  auto c = run({"integrate-form", "--form", "1/(x^2-2)", "--rational-only"});
  CHECK(c.code == 4);
  CHECK(c.j["status"] == "unavailable");

  auto d = run({"integrate-form", "--form", "y, 0"});
  CHECK(d.code == 5);
  CHECK(d.j["result"]["witness"]["residual"] == "-1");

  auto e = run({"integrate-form", "--form", "2*u*v, u^2", "--vars", "u,v"});
  CHECK(e.code == 0);
  CHECK(e.j["result"]["psi"] == "u^2*v");
  auto f = run({"integrate-form", "--form", "b, a"});
  CHECK(f.code == 0);
  CHECK(f.j["result"]["vars"] == json::array({"a", "b"}));
  CHECK(f.j["result"]["psi"] == "a*b");
  auto g = run({"integrate-form", "--form", "1/x, 1/y", "--var-order", "y,x"});
  CHECK(g.code == 0);
  CHECK(g.j["result"]["psi"] == "log(y) + log(x)");
}

TEST_CASE("cli pipeline") {
  auto r3 = write_system("radial3", "vars x, y, z\ndx = x\ndy = y\ndz = z\n");
  auto node = write_system("node", "vars x, y\ndx = x\ndy = y\n");
  auto a = run({"pipeline", "--system", r3, "--mode", "theorem2", "--integral", "x/y",
                "--integral", "x/z"});
  CHECK(a.code == 0);
  CHECK(a.j["result"]["multiplier"] == "x * y^-2 * z^-2");
  CHECK(a.j["result"]["Gamma"] == "x/(y^2*z)");
  CHECK(a.j["result"]["h"] == "y^2*z^2/x");
  CHECK(a.j["result"]["A"] == json::array({"-1/x", "2/y", "2/z"}));

  auto b = run({"pipeline", "--system", node, "--mode", "theorem1", "--multiplier", "1/(x*y)"});
  CHECK(b.code == 0);
  CHECK(b.j["result"]["firstIntegral"] == "log(x) - log(y)");

  auto c = run({"pipeline", "--system", r3, "--mode", "theorem1", "--multiplier",
                "1/(x^2*y)", "--multiplier", "1/(x^2*y)"});
  CHECK(c.code == 3);
  CHECK(c.j["result"]["independent"] == false);

  auto d = run({"pipeline", "--system", r3, "--mode", "theorem2", "--integral", "x*y",
                "--integral", "x/z"});
  CHECK(d.code == 3);

  auto ef = write_system("ef", "vars x, y\ndx = x^2\ndy = x*y + x^2\n");
  auto e = run({"pipeline", "--system", ef, "--mode", "theorem1", "--multiplier",
                "exp(y/x)*x^-4"});
  CHECK(e.code == 4);
  CHECK(e.j["status"] == "unavailable");
  CHECK(e.j["result"]["firstIntegral"].is_null());

  auto f = run({"pipeline", "--system", r3, "--mode", "theorem2", "--integral", "x/y",
                "--integral", "x/z", "--var-order", "z,y,x"});
  CHECK(f.code == 0);
  CHECK(f.j["result"]["order"] == json::array({"z", "y", "x"}));
  CHECK(f.j["result"]["multiplier"] == "x * y^-2 * z^-2");
}

TEST_CASE("text and json reports carry the same content") {
  auto node = write_system("node", "vars x, y\ndx = x\ndy = y\n");
  std::vector<std::vector<std::string>> cases{
      {"verify", "--system", node, "--multiplier", "1/(x*y)"},
      {"synthesize", "--system", node, "--poly", "x", "--poly", "y"},
      {"integrate-form", "--form", "1/(x^2-2)"},
      {"pipeline", "--system", node, "--mode", "theorem1", "--multiplier", "1/(x*y)"}};
  for (const auto& args : cases) {
    auto j = run(args, true);
    auto t = run(args, false);
    CHECK(j.code == t.code);
    std::map<std::string, std::string> from_text;
    std::istringstream in(t.out);
    std::string line;
    while (std::getline(in, line)) {
      auto pos = line.find(": ");
      REQUIRE(pos != std::string::npos);
      from_text[line.substr(0, pos)] = line.substr(pos + 2);
    }
    std::map<std::string, std::string> from_json;
    for (const auto& [k, v] : lvk::cli::flatten(j.j)) from_json[k] = v;
    CHECK(from_text == from_json);
  }
}

TEST_CASE("catalog entries match their goldens") {
  auto entries = catalog_entries();
  CHECK(entries.size() >= 10);
  for (const auto& sys : entries) {
    INFO(sys);
    auto args = catalog_args(sys);
    REQUIRE_FALSE(args.empty());
    auto first = run(args);
    auto second = run(args);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    for (const auto& c : first.j["certificates"]) {
      CHECK(c["residual"] == "0");
      CHECK(c["isZero"] == true);
    }
    std::string golden = fs::path(sys).replace_extension(".expected.json").string();
    CHECK(first.out == slurp(golden));
  }
}

TEST_CASE("split words") {
  using V = std::vector<std::string>;
  CHECK(lvk::cli::split_words("a  b") == V{"a", "b"});
  CHECK(lvk::cli::split_words("--poly \"x^2+y^2 - 1\" x") == V{"--poly", "x^2+y^2 - 1", "x"});
  CHECK(lvk::cli::split_words("\"\"") == V{""});
}
