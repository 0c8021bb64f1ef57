#include <unistd.h>

#include <fstream>

#include "condsym/corpus.hpp"
#include "condsym/error.hpp"
#include "doctest.h"

using namespace condsym;
namespace fs = std::filesystem;

namespace {

struct TempCorpus {
  fs::path root;
  TempCorpus() {
    root = fs::temp_directory_path() / ("condsym-test-" + std::to_string(::getpid()));
    fs::create_directories(root / "fields");
    fs::create_directories(root / "problems");
  }
  ~TempCorpus() { fs::remove_all(root); }
  void write(const std::string& rel, const std::string& text) const { std::ofstream(root / rel) << text; }
};

std::map<std::string, std::string> statuses(const std::vector<AssertionResult>& results) {
  std::map<std::string, std::string> out;
  for (const auto& r : results) out[r.assertion] = r.status;
  return out;
}

}  // namespace

TEST_CASE("loading and verifying a problem") {
  TempCorpus c;
  c.write("fields/X1.ini", "[field]\nxi = y\neta = 1\nphi = -2*y\n");
  c.write("problems/p.ini",
          "[entry]\nid = p\ntier = core\nfield = fields/X1\n\n"
          "[invariants]\nI0 = -2*x + y^2\nI1 = 2*x + u\nI2 = u_x\nI4 = u_xx\n"
          "I6 = u_yy + 2*y*u_xy + 2*(y^2 - x)*u_xx\nI11 = u_xxxx\n\n"
          "[condition]\ninstances = x\n\n"
          "[combination]\nexpr = I1*I4 + I6 + I11 + I2^2\ntarget = u_yy + u*u_xx + u_x^2 + u_xxxx\n\n"
          "[equation]\nlhs = u_yy + u*u_xx + u_x^2 + u_xxxx\nsolved = u_xxxx\n\n"
          "[expect]\nconditional = true\npoint = false\n\n"
          "[symmetries]\nT = 1 ; 0 ; 0\n");
  const Problem p = load_problem(c.root / "problems/p.ini", c.root);
  CHECK(p.id == "p");
  CHECK(p.invariants.size() == 6);
  CHECK(p.instances.size() == 1);
  const auto s = statuses(verify(p));
  CHECK(s.at("invariant[I6]") == "pass");
  CHECK(s.at("reconstruction") == "pass");
  CHECK(s.at("conditional") == "pass");
  CHECK(s.at("point") == "pass");
  CHECK(s.at("point[T]") == "pass");
  CHECK(s.at("determining[T]") == "pass");
  CHECK(list_problems(c.root).size() == 1);
}

TEST_CASE("failures carry residuals") {
  TempCorpus c;
  c.write("problems/q.ini",
          "[entry]\nfield_inline = y ; 1 ; -2*y\n\n[invariants]\nI0 = x\n\n"
          "[equation]\nlhs = u_y - u_xx\nsolved = u_y\n\n[expect]\nconditional = true\n");
  const auto results = verify(load_problem(c.root / "problems/q.ini", c.root));
  const auto s = statuses(results);
  CHECK(s.at("invariant[I0]") == "fail");
  CHECK(s.at("conditional") == "fail");
  for (const auto& r : results) {
    CHECK(r.entry == "q");
    if (r.status == "fail") CHECK_FALSE(r.residual.empty());
  }
}

TEST_CASE("empty entries pass vacuously") {
  TempCorpus c;
  c.write("problems/e.ini", "[entry]\nid = e\n");
  CHECK(verify(load_problem(c.root / "problems/e.ini", c.root)).empty());
}

TEST_CASE("malformed problems") {
  TempCorpus c;
  c.write("problems/a.ini", "[entry]\ntier = gold\n");
  CHECK_THROWS_AS(load_problem(c.root / "problems/a.ini", c.root), Error);
  c.write("problems/b.ini", "[entry]\nfield_inline = y ; 1\n");
  CHECK_THROWS_AS(load_problem(c.root / "problems/b.ini", c.root), Error);
  c.write("problems/c.ini", "[entry]\nfield = fields/missing\n");
  CHECK_THROWS_AS(load_problem(c.root / "problems/c.ini", c.root), Error);
  c.write("problems/d.ini", "[equation]\nlhs = u_y +\nsolved = u_y\n");
  CHECK_THROWS_AS(load_problem(c.root / "problems/d.ini", c.root), ParseError);
  c.write("problems/f.ini", "[equation]\nlhs = u_y\nsolved = x\n");
  CHECK_THROWS_AS(load_problem(c.root / "problems/f.ini", c.root), Error);
}

TEST_CASE("bundled corpus loads") {
  const fs::path root = default_corpus_root();
  const auto files = list_problems(root);
  CHECK(files.size() >= 20);
  for (const auto& f : files) CHECK_NOTHROW(load_problem(f, root));
}

TEST_CASE("corpus expressions survive print and parse") {
  const fs::path root = default_corpus_root();
  for (const auto& f : list_problems(root)) {
    const Problem p = load_problem(f, root);
    std::vector<CanonicalForm> forms;
    for (const auto& [name, value] : p.invariants) forms.push_back(value);
    if (p.equation) forms.push_back(p.equation->lhs);
    if (p.field) forms.insert(forms.end(), {p.field->xi, p.field->eta, p.field->phi});
    for (const auto& [name, Z] : p.symmetries) forms.insert(forms.end(), {Z.xi, Z.eta, Z.phi});
    for (const auto& e : forms) CHECK(p.workspace.parse_form(to_string(e)) == e);
  }
}

TEST_CASE("side relations canonicalize the same way in any order") {
  const fs::path root = default_corpus_root();
  Workspace ws;
  realize_field(load_field_spec(root / "fields/X7.ini"), ws);
  const CanonicalForm a = ws.parse_form("wpd(y)^2*wpd(y)^2 - wpd(y)^4");
  CHECK(a.is_zero());
  CHECK(ws.parse_form("wpd(y)^3*wp(y)") == ws.parse_form("wp(y)*wpd(y)*(4*wp(y)^3 - g3)"));
  CHECK(ws.parse_form("(wpd(y)^2)^2") == ws.parse_form("(4*wp(y)^3 - g3)^2"));
}
