#include <doctest.h>

#include <numeric>
#include <string>
#include <vector>

#include "defectlaw/component.hpp"

using namespace defectlaw;

namespace {

std::vector<std::string> ids(const SplitResult& r) {
  std::vector<std::string> out;
  for (const auto& c : r.components) out.push_back(c.id);
  return out;
}

std::size_t total_tokens(const SplitResult& r) {
  std::size_t n = 0;
  for (const auto& c : r.components) n += c.tokens.size();
  return n;
}

std::string joined(const Component& c) {
  std::string s;
  for (const auto& t : c.tokens) s += (s.empty() ? "" : " ") + t.spelling;
  return s;
}

constexpr const char* kTwoFunctions = R"(#include <stdio.h>
static int counter = 0;

int add(int a, int b) {
  return a + b;
}

void report(void)
{
  printf("%d\n", add(counter, 1));
}
)";

} // namespace

TEST_CASE("file granularity yields one component") {
  const auto r = split_components("x.c", kTwoFunctions, Language::c_like, Granularity::file);
  CHECK(ids(r) == std::vector<std::string>{"x.c"});
  CHECK(r.warnings.empty());
}

TEST_CASE("empty file yields no components") {
  CHECK(split_components("e.c", "", Language::c_like, Granularity::file).components.empty());
  CHECK(split_components("e.c", "/* only a comment */", Language::c_like, Granularity::function)
            .components.empty());
}

TEST_CASE("two top-level functions plus residual") {
  const auto r = split_components("x.c", kTwoFunctions, Language::c_like, Granularity::function);
  REQUIRE(ids(r) == std::vector<std::string>{"x.c:add", "x.c:report", "x.c"});
  CHECK(joined(r.components[0]) == "int add ( int a , int b ) { return a + b ; }");
  CHECK(joined(r.components[1]) ==
        "void report ( void ) { printf ( \"%d\\n\" , add ( counter , 1 ) ) ; }");
  CHECK(joined(r.components[2]) == "# include < stdio . h > static int counter = 0 ;");
}

TEST_CASE("splitting conserves the token total") {
  const std::vector<std::string> sources = {
      kTwoFunctions,
      "namespace n { class A { public: A() : x_{1}, y_(2) {} int f() const { return x_; } "
      "private: int x_; int y_; }; } int A::g() { return 0; }",
      "struct P { int x; }; struct P *make(void) { return 0; } enum E { A, B };",
      "int table[] = { 1, 2, 3 }; auto lam = [](int v) { return v; }; int h() { return 1; }",
  };
  for (const auto& src : sources) {
    const auto file = split_components("f.cpp", src, Language::c_like, Granularity::file);
    const auto fn = split_components("f.cpp", src, Language::c_like, Granularity::function);
    CHECK(total_tokens(file) == total_tokens(fn));
  }
}

TEST_CASE("class bodies are descended into") {
  const auto r = split_components(
      "a.cpp",
      "namespace n { class A { public: A() : x_{1}, y_(2) {} int f() const { return x_; } "
      "private: int x_; int y_; }; } int A::g() { return 0; }",
      Language::c_like, Granularity::function);
  CHECK(ids(r) == std::vector<std::string>{"a.cpp:A", "a.cpp:f", "a.cpp:A::g", "a.cpp"});
}

TEST_CASE("aggregates and initializers stay residual") {
  const auto r = split_components(
      "s.c", "struct P { int x; }; struct P *make(void) { return 0; } int t[] = {1, 2};",
      Language::c_like, Granularity::function);
  CHECK(ids(r) == std::vector<std::string>{"s.c:make", "s.c"});
}

TEST_CASE("overloads and operators get distinct ids") {
  const auto r = split_components(
      "o.cpp",
      "int f(int) { return 1; } int f(double) { return 2; } "
      "bool operator==(const X&, const X&) { return true; } "
      "template <class T> T id(T v) { return v; }",
      Language::c_like, Granularity::function);
  CHECK(ids(r) == std::vector<std::string>{"o.cpp:f", "o.cpp:f#2", "o.cpp:operator==", "o.cpp:id"});
}

TEST_CASE("java methods inside classes") {
  const auto r = split_components("A.java", R"(
package p;
import java.util.List;
@SuppressWarnings("unchecked")
public class A extends B implements C {
  private int n = 0;
  static { n = 1; }
  @Override
  public String toString() { return "A"; }
  int size(List<String> xs) throws Exception { return xs.size(); }
  Runnable r = new Runnable() { public void run() { } };
  interface Inner { void go(); }
  record Pt(int x, int y) { Pt { if (x < 0) throw new IllegalArgumentException(); } int sum() { return x + y; } }
}
)",
                                  Language::java_like, Granularity::function);
  CHECK(ids(r) == std::vector<std::string>{"A.java:toString", "A.java:size", "A.java:sum",
                                           "A.java"});
}

TEST_CASE("unbalanced braces fall back to file granularity") {
  const auto r =
      split_components("bad.c", "int f() { if (x) { return; }", Language::c_like, Granularity::function);
  CHECK(ids(r) == std::vector<std::string>{"bad.c"});
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("unbalanced") != std::string::npos);
}

TEST_CASE("plain text ignores function granularity") {
  const auto r = split_components("n.txt", "f() { x }", Language::plain, Granularity::function);
  CHECK(ids(r) == std::vector<std::string>{"n.txt"});
  CHECK(r.warnings.size() == 1);
}

TEST_CASE("lex errors propagate") {
  CHECK_THROWS_AS(split_components("u.c", "/* open", Language::c_like, Granularity::file), LexError);
}
