#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "cutplan/edge_list.hpp"
#include "cutplan/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int exit_code = -1;
  std::string out;
  std::string err;
};

class Sandbox {
 public:
  Sandbox() : dir_(fs::temp_directory_path() / "cutplan_test_cli") {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Sandbox() { fs::remove_all(dir_); }

  fs::path operator/(const std::string& name) const { return dir_ / name; }

  Result run(const std::string& args) const {
    const auto out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string command = "cd '" + dir_.string() + "' && '" + CUTPLAN_CLI + "' " + args + " > '" +
                                out.string() + "' 2> '" + err.string() + "'";
    const int status = std::system(command.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, cutplan::read_file(out), cutplan::read_file(err)};
  }

  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }
  std::string read(const std::string& name) const { return cutplan::read_file(dir_ / name); }
  bool exists(const std::string& name) const { return fs::exists(dir_ / name); }

 private:
  fs::path dir_;
};

int line_count(const std::string& text) { return static_cast<int>(std::count(text.begin(), text.end(), '\n')); }

double field(const std::string& text, const std::string& key) {
  const auto at = text.find(key + "=");
  REQUIRE(at != std::string::npos);
  return std::stod(text.substr(at + key.size() + 1));
}

}  // namespace

TEST_CASE("gen") {
  Sandbox box;
  auto r = box.run("gen --model grid --rows 3 --cols 3 --out g.txt");
  CHECK(r.exit_code == 0);
  CHECK(cutplan::load_edge_list(box / "g.txt").graph.n_edges() == 12);
  CHECK(box.read("g.txt").rfind("# model=grid seed=", 0) == 0);

  CHECK(box.run("gen --model er --n 4 --p 1 --seed 1 --out k4.txt").exit_code == 0);
  CHECK(cutplan::load_edge_list(box / "k4.txt").graph.n_edges() == 6);

  CHECK(box.run("gen --model ba --n 200 --m 3 --seed 5 --out a.txt").exit_code == 0);
  CHECK(box.run("gen --model ba --n 200 --m 3 --seed 5 --out b.txt").exit_code == 0);
  CHECK(box.read("a.txt") == box.read("b.txt"));

  r = box.run("gen --model ws --n 20 --k 4 --out w.txt");
  CHECK(r.exit_code != 0);
  CHECK(line_count(r.err) == 1);
  CHECK(r.err.find("--beta") != std::string::npos);
  CHECK_FALSE(box.exists("w.txt"));
  CHECK(box.run("gen --model torus --n 5 --out t.txt").exit_code != 0);
}

TEST_CASE("order") {
  Sandbox box;
  box.write("fig1.txt", "0 3\n3 1\n1 2\n2 4\n");
  auto r = box.run("order --graph fig1.txt --strategy exact --out fig1.la");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("max_cutwidth=1 ") == 0);
  CHECK(box.read("fig1.la.cuts.csv").rfind("location,cut\n", 0) == 0);
  CHECK(line_count(box.read("fig1.la")) == 5);

  CHECK(box.run("gen --model grid --rows 1 --cols 20 --out p20.txt").exit_code == 0);
  r = box.run("order --graph p20.txt --strategy mcm --seed 3 --out p20.la --cuts p20.csv");
  CHECK(r.out.find("max_cutwidth=1 ") == 0);
  CHECK(field(r.out, "p_sum") == 19.0);
  CHECK(box.exists("p20.csv"));

  box.run("order --graph p20.txt --strategy rand --seed 7 --out r1.la");
  box.run("order --graph p20.txt --strategy rand --seed 7 --out r2.la");
  CHECK(box.read("r1.la") == box.read("r2.la"));

  r = box.run("order --graph p20.txt --strategy exact --out big.la");
  CHECK(r.exit_code != 0);
  CHECK(line_count(r.err) == 1);
  CHECK_FALSE(box.exists("big.la"));
  CHECK_FALSE(box.exists("big.la.cuts.csv"));

  for (const char* s : {"mn", "ln", "lrsr"}) CHECK(box.run(std::string("order --graph p20.txt --out o.la --strategy ") + s).exit_code == 0);

  box.write("loops.txt", "0 0\n0 1\n");
  r = box.run("order --graph loops.txt --strategy mn --out l.la");
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("dropped 1 self-loop") != std::string::npos);

  box.write("broken.txt", "0 1\n1 q\n");
  r = box.run("order --graph broken.txt --strategy mn --out b.la");
  CHECK(r.exit_code != 0);
  CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("simulate") {
  Sandbox box;
  box.write("iso.txt", "0\n1\n2\n3\n4\n5\n6\n7\n8\n9\n");
  auto r = box.run("simulate --graph iso.txt --beta 0 --runs 10000 --seed 1 --out-dir iso");
  CHECK(r.exit_code == 0);
  CHECK(std::abs(field(r.out, "mean_tau") - 7381.0 / 2520.0) <= 0.05);
  CHECK(field(r.out, "extinction_fraction") == 1.0);
  CHECK(line_count(box.read("iso/runs.csv")) == 10001);
  CHECK(box.read("iso/summary.csv").rfind("n_runs,n_extinct,extinction_fraction,mean_tau", 0) == 0);
  CHECK_FALSE(box.exists("iso/trajectory.csv"));

  CHECK(box.run("gen --model er --n 30 --p 0.2 --seed 2 --out g.txt").exit_code == 0);
  CHECK(box.run("order --graph g.txt --strategy mcm --out g.la").exit_code == 0);
  const std::string single = "simulate --graph g.txt --order g.la --beta 0.5 --rho 4 --budget 2 --runs 1 --seed 3 "
                             "--sample-dt 0.5 --events --out-dir ";
  CHECK(box.run(single + "s1").exit_code == 0);
  CHECK(box.run(single + "s2").exit_code == 0);
  CHECK(box.read("s1/trajectory.csv") == box.read("s2/trajectory.csv"));
  CHECK(box.read("s1/trajectory.csv").rfind("time,infected_count\n0,30\n", 0) == 0);
  CHECK(box.read("s1/events.csv").rfind("time,node,kind\n", 0) == 0);

  r = box.run("simulate --graph g.txt --order g.la --beta 0 --rho 1 --runs 1 --seed 4 --sample-dt 0.2 --out-dir nb");
  CHECK(r.exit_code == 0);
  std::istringstream traj(box.read("nb/trajectory.csv"));
  std::string line;
  std::getline(traj, line);
  long previous = 1L << 30;
  while (std::getline(traj, line)) {
    const long count = std::stol(line.substr(line.find(',') + 1));
    CHECK(count <= previous);
    previous = count;
  }

  box.write("short.la", "0\n1\n2\n");
  r = box.run("simulate --graph g.txt --order short.la --beta 1 --out-dir bad");
  CHECK(r.exit_code != 0);
  CHECK(line_count(r.err) == 1);
  CHECK_FALSE(box.exists("bad"));
}

TEST_CASE("threshold and bound") {
  Sandbox box;
  box.write("empty.txt", "0\n1\n2\n3\n4\n5\n6\n7\n8\n9\n");
  box.write("empty.la", "0\n1\n2\n3\n4\n5\n6\n7\n8\n9\n");
  auto r = box.run("threshold --graph empty.txt --order empty.la --r 2 --tol 0.01 --out-dir t");
  CHECK(r.exit_code == 0);
  CHECK(field(r.out, "e_star") <= 0.01);
  CHECK(box.read("t/probes.csv").rfind("e,extinction_fraction,mean_tau\n", 0) == 0);
  CHECK(box.read("t/threshold.csv").rfind("e_star,e_low,e_high,C_max,naive_threshold", 0) == 0);

  r = box.run("bound --n 81306 --dmax 3383 --cmax 71956 --r 0.1 --budget 100 --rho 1 --out b.csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("naive_threshold      71.956") != std::string::npos);
  CHECK(box.read("b.csv").find(",71.956,") != std::string::npos);

  box.write("p3.txt", "0 1\n1 2\n");
  box.write("p3.la", "0\n1\n2\n");
  r = box.run("bound --graph p3.txt --order p3.la --beta 1 --rho 100");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("C_max                1") != std::string::npos);

  r = box.run("bound --n 10 --dmax 2 --rho 1 --beta 1");
  CHECK(r.exit_code != 0);
  CHECK(line_count(r.err) == 1);
}

TEST_CASE("experiment") {
  Sandbox box;
  box.write("exp.cfg", "experiment.kind = threshold_vs_cutwidth\nexperiment.output_dir = out\n"
                       "network.model = grid\nnetwork.rows = 3\nnetwork.cols = 3\nstrategies = exact, rand\n"
                       "diffusion.r = 1\nprobe.runs = 10\n");
  auto r = box.run("experiment exp.cfg --jobs 2");
  CHECK(r.exit_code == 0);
  CHECK(box.read("out/threshold_vs_cutwidth.csv").rfind("network_type,seed,strategy,C_max", 0) == 0);

  box.write("bad.cfg", "experiment.kind = nope\nnetwork.model = er\n");
  r = box.run("experiment bad.cfg");
  CHECK(r.exit_code != 0);
  CHECK(line_count(r.err) == 1);
  CHECK(r.err.find("experiment.kind") != std::string::npos);
  CHECK(r.err.find("network.n") != std::string::npos);
}

TEST_CASE("worker count comes from CUTPLAN_JOBS or --jobs without changing results") {
  Sandbox box;
  CHECK(box.run("gen --model er --n 40 --p 0.15 --seed 9 --out g.txt").exit_code == 0);
  CHECK(box.run("order --graph g.txt --strategy lrsr --out g.la").exit_code == 0);
  const std::string sim = "simulate --graph g.txt --order g.la --beta 0.6 --rho 3 --runs 50 --seed 2 --out-dir ";
  CHECK(box.run(sim + "a --jobs 1").exit_code == 0);
  CHECK(box.run(sim + "b --jobs 4").exit_code == 0);
  CHECK(setenv("CUTPLAN_JOBS", "3", 1) == 0);
  CHECK(box.run(sim + "c").exit_code == 0);
  unsetenv("CUTPLAN_JOBS");
  for (const char* f : {"runs.csv", "summary.csv", "curve.csv"}) {
    CHECK(box.read(std::string("a/") + f) == box.read(std::string("b/") + f));
    CHECK(box.read(std::string("a/") + f) == box.read(std::string("c/") + f));
  }
}
