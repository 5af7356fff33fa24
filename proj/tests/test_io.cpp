#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "fitcomp/gallery.hpp"
#include "fitcomp/io.hpp"
#include "fitcomp/runner.hpp"

using namespace fitcomp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("fitcomp_io_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("dense CSV round trip, with and without labels") {
  TempDir tmp;
  auto m = gallery_matrix("C");
  save_matrix(m, tmp.file("plain.csv"), MatrixFormat::DenseCsv);
  CHECK(load_matrix(tmp.file("plain.csv"), MatrixFormat::DenseCsv) == m);

  auto labeled = m;
  labeled.set_labels({"v", "w", "x", "y", "z"}, {"p1", "p2", "p3", "p4", "p5"});
  save_matrix(labeled, tmp.file("labeled.csv"), MatrixFormat::DenseCsv);
  CHECK(load_matrix(tmp.file("labeled.csv"), MatrixFormat::DenseCsv) == labeled);
  CHECK(load_matrix_auto(tmp.file("labeled.csv")) == labeled);
}

TEST_CASE("the printed 5x5 staircase loads from a plain sheet") {
  TempDir tmp;
  write(tmp.file("c.csv"),
        "1,1,1,1,1\n"
        "1,1,1,1,1\n"
        "1,1,1,1,0\n"
        "1,1,1,0,0\n"
        "1,1,0,0,0\n");
  CHECK(load_matrix_auto(tmp.file("c.csv")) == gallery_matrix("C"));
}

TEST_CASE("sparse pairs round trip") {
  TempDir tmp;
  auto m = gallery_matrix("F");
  m.set_labels({"a", "b", "c", "d"}, {"p", "q", "r", "s", "t", "u"});
  save_matrix(m, tmp.file("pairs.csv"), MatrixFormat::SparsePairs);
  auto back = load_matrix(tmp.file("pairs.csv"), MatrixFormat::SparsePairs);
  CHECK(back == m);
  CHECK(load_matrix_auto(tmp.file("pairs.csv")) == m);
}

TEST_CASE("duplicate pairs are harmless") {
  TempDir tmp;
  write(tmp.file("dup.csv"), "a,x\na,x\nb,y\n");
  auto m = load_matrix(tmp.file("dup.csv"), MatrixFormat::SparsePairs);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 2);
  CHECK(m.ones() == 2);
}

TEST_CASE("malformed matrix files carry line numbers") {
  TempDir tmp;
  write(tmp.file("bad.csv"), "1,0,1\n1,2,0\n");
  CHECK_THROWS_WITH_AS(load_matrix(tmp.file("bad.csv"), MatrixFormat::DenseCsv),
                       doctest::Contains(":2:"), Error);
  write(tmp.file("ragged.csv"), "1,0,1\n1,0\n");
  CHECK_THROWS_WITH_AS(load_matrix(tmp.file("ragged.csv"), MatrixFormat::DenseCsv),
                       doctest::Contains(":2:"), Error);
  write(tmp.file("empty.csv"), "");
  CHECK_THROWS_AS(load_matrix(tmp.file("empty.csv"), MatrixFormat::DenseCsv), Error);
  CHECK_THROWS_AS(load_matrix(tmp.file("missing.csv"), MatrixFormat::DenseCsv), Error);
}

TEST_CASE("flows parse, reject garbage, keep duplicates for aggregation") {
  TempDir tmp;
  write(tmp.file("flows.csv"), "exporter,product,value\nc1,p1,10\nc1,p2,10\nc2,p1,20\nc1,p1,5\n");
  auto flows = load_flows(tmp.file("flows.csv"));
  CHECK(flows.size() == 4);
  CHECK(flows[3].value == 5.0);

  write(tmp.file("nohdr.csv"), "c1,p1,10\n");
  CHECK_THROWS_WITH_AS(load_flows(tmp.file("nohdr.csv")), doctest::Contains(":1:"), Error);
  write(tmp.file("badval.csv"), "exporter,product,value\nc1,p1,abc\n");
  CHECK_THROWS_WITH_AS(load_flows(tmp.file("badval.csv")), doctest::Contains(":2:"), Error);
  write(tmp.file("neg.csv"), "exporter,product,value\nc1,p1,-3\n");
  CHECK_THROWS_AS(load_flows(tmp.file("neg.csv")), Error);
  write(tmp.file("hdr_only.csv"), "exporter,product,value\n");
  CHECK_THROWS_AS(load_flows(tmp.file("hdr_only.csv")), Error);
}

TEST_CASE("trajectory CSV carries full-precision log10 values") {
  TempDir tmp;
  auto m = gallery_matrix("B");
  EngineParams p;
  auto res = iterate(m, init_uniform(m), p, StopAfter{50});
  write_trajectory_csv(res.trajectory, m, tmp.file("traj.csv"));
  auto text = slurp(tmp.file("traj.csv"));
  CHECK(text.rfind("iteration,entity_id,log10_fitness\n", 0) == 0);
  CHECK(text.find("0,0,0\n") != std::string::npos);  // log10(1) at n=0
  // Full 17-significant-digit round trip on a spot value.
  double v = res.trajectory.log_fitness[5][2] / std::log(10.0);
  CHECK(text.find(format_double(v)) != std::string::npos);
}

TEST_CASE("crossing counts CSV") {
  TempDir tmp;
  write_crossing_counts_csv({{1, 0}, {2, 3}}, tmp.file("cc.csv"));
  CHECK(slurp(tmp.file("cc.csv")) == "iteration,crossings\n1,0\n2,3\n");
}
