#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "kac/cache.hpp"
#include "kac/errors.hpp"

using namespace kac;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("kaclab-" + name);
  std::filesystem::remove_all(d);
  return d;
}

BlockSpace small_space() {
  RawParams r;
  r.beta = 2.0; r.zeta = 0.2; r.len_cg = 1; r.len_minus = 2; r.range = 4; r.len_plus = 4;
  return build_block_space(build_params(r));
}

}  // namespace

TEST_CASE("non-finite values survive encoding") {
  for (double x : {0.0, -0.0, 1.0 / 3.0, 1e-310, -double(INFINITY), double(INFINITY)})
    CHECK(std::signbit(decode(encode(x))) == std::signbit(x));
  CHECK(decode(encode(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(decode(encode(-INFINITY)) == -INFINITY);
  CHECK(std::isnan(decode(encode(std::nan("")))));
}

TEST_CASE("cached boundary fits and weight tables re-read bit-identically") {
  auto bs = small_space();
  CacheStore c(fresh_dir("roundtrip"));
  const int R = 150;
  auto f1 = c.boundary_fit(bs, 20, 40, R + 2);
  auto f2 = c.boundary_fit(bs, 20, 40, R + 2);
  CHECK(c.misses == 1);
  CHECK(c.hits == 1);
  CHECK(f1.G == f2.G);
  CHECK(f1.logZ == f2.logZ);
  CHECK(f1.F1 == f2.F1);
  CHECK(f1.p_plus == f2.p_plus);
  CHECK(f1.hash() == f2.hash());
  auto it = interface_table(bs, f1, R + 2);
  const double tilt = rough_lambda(build_atom_kernel(bs, f1, it, 64, 0.0), 64);
  auto k = build_atom_kernel(bs, f1, it, R, tilt);
  auto w1 = c.weight_table(k, f1, R, 12);
  auto w2 = c.weight_table(k, f2, R, 12);
  CHECK(c.hits == 2);
  CHECK(w1.shells == w2.shells);
  CHECK(w1.entries == w2.entries);
  CHECK(w1.tail_c == w2.tail_c);
}

TEST_CASE("cache entries with a foreign params hash or a bad checksum are rejected") {
  auto bs = small_space();
  auto dir = fresh_dir("corrupt");
  CacheStore c(dir);
  c.store("fit", "k", 42, {{"x", 1}});
  CHECK(c.load("fit", "k", 42) == nlohmann::json({{"x", 1}}));
  CHECK_THROWS_AS(c.load("fit", "k", 43), CacheCorruption);
  CHECK(c.load("fit", "absent", 42).is_null());
  auto p = c.path("fit", "k");
  std::ifstream in(p);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  in.close();
  text.replace(text.find("\"x\":1"), 5, "\"x\":2");
  std::ofstream(p) << text;
  CHECK_THROWS_AS(c.load("fit", "k", 42), CacheCorruption);
}
