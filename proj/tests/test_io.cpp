#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fractal/io.hpp"

using namespace fractal;

TEST_CASE("format_double round-trips and uses a dot separator") {
  for (double v : {0.1, 1.0 / 3.0, 12345.678, 1e-17, -2.5, 0.0}) {
    std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
    CHECK(s.find(',') == std::string::npos);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("csv tables have a header row and LF endings") {
  CsvTable t({"a", "b"});
  t.add_row({"1", "x"});
  t.add_row({"2.5", "y"});
  CHECK(t.to_string() == "a,b\n1,x\n2.5,y\n");
  CHECK_THROWS_AS(t.add_row({"only-one"}), std::invalid_argument);
}

TEST_CASE("atomic_write leaves no temp file behind") {
  auto dir = std::filesystem::temp_directory_path() / "fractal_io_test";
  std::filesystem::create_directories(dir);
  auto path = dir / "out.txt";
  atomic_write(path, "hello\n");
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == "hello\n");
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("content_hash is stable and input-sensitive") {
  CHECK(content_hash("abc") == content_hash("abc"));
  CHECK(content_hash("abc") != content_hash("abd"));
  CHECK(content_hash("").size() == 16);
}

TEST_CASE("resolve_output_dir prefers the explicit argument, then the env var") {
  CHECK(resolve_output_dir("given") == std::filesystem::path("given"));
  setenv("FRACTAL_OUTPUT_DIR", "/tmp/from_env", 1);
  CHECK(resolve_output_dir("") == std::filesystem::path("/tmp/from_env"));
  unsetenv("FRACTAL_OUTPUT_DIR");
  CHECK(resolve_output_dir("") == std::filesystem::path("."));
}
