#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <so3tos/io.hpp>
#include <so3tos/verify.hpp>
#include <so3tos/wavefront.hpp>

namespace fs = std::filesystem;
using namespace so3tos;

namespace {

struct RunConfig {
  double alpha = 0.3927;
  double alpha_min = 0.05;
  double alpha_max = 0.78;
  double step = 0.01;
  double time = -1.0;
  double horizon = -1.0;  // <= 0: (N_A + 1) pi
  int cells = 2000;
  int grid = 512;
  unsigned seed = 1;
  std::string out;
  std::vector<std::string> format;
};

std::string tag(double alpha) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", alpha);
  return buf;
}

bool wants(const RunConfig& rc, const std::string& f) {
  return std::find(rc.format.begin(), rc.format.end(), f) != rc.format.end();
}

fs::path write_file(const RunConfig& rc, const std::string& name, const std::string& body) {
  const fs::path p = fs::path(rc.out) / name;
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  os << body;
  std::cout << "wrote " << p.string() << '\n';
  return p;
}

int cmd_synth(const RunConfig& rc) {
  const Alpha a(rc.alpha);
  const SynthesisChart ch = build_chart(a, rc.grid);
  const auto& K = ch.constants;
  std::cout << "alpha " << tag(rc.alpha) << ": N0 = " << K.n0 << ", N_S = " << K.n_s << ", N_A = " << K.n_a
            << ", r = " << K.r << ", equator crossings " << ch.equator_count << '\n';
  const std::string stem = "chart_" + tag(rc.alpha);
  if (wants(rc, "json")) write_file(rc, stem + ".json", to_json(ch).dump(1) + "\n");
  if (wants(rc, "svg")) write_file(rc, stem + ".svg", chart_svg(ch));
  if (wants(rc, "csv")) {
    std::ostringstream os;
    write_curves_csv(os, ch);
    write_file(rc, stem + "_curves.csv", os.str());
  }
  return 0;
}

int cmd_front(const RunConfig& rc) {
  if (!(rc.time > 0.0)) throw CLI::ValidationError("front requires --time > 0");
  const Alpha a(rc.alpha);
  const auto front = propagate_front(a, rc.time, rc.grid);
  std::cout << "front at T = " << rc.time << ": " << front.size() << " samples\n";
  const std::string stem = "front_" + tag(rc.alpha) + "_T" + tag(rc.time);
  if (wants(rc, "csv")) {
    std::ostringstream os;
    write_front_csv(os, front);
    write_file(rc, stem + ".csv", os.str());
  }
  if (wants(rc, "json")) write_file(rc, stem + ".json", to_json(front, rc.time).dump(1) + "\n");
  if (wants(rc, "svg")) write_file(rc, stem + ".svg", front_svg(a, rc.time, front));
  return 0;
}

int cmd_verify(const RunConfig& rc) {
  const Alpha a(rc.alpha);
  VerifySettings vs;
  vs.seed = rc.seed;
  vs.grid = rc.grid;
  vs.cells = rc.cells;
  vs.horizon = rc.horizon;
  const auto results = run_invariants(a, vs);
  std::vector<std::string> failed;
  Json report = Json::array();
  for (const auto& r : results) {
    std::printf("%-4s %-36s %.3e (tol %.1e) %s\n", r.pass ? "ok" : "FAIL", r.id.c_str(), r.value, r.tol, r.detail.c_str());
    report.push_back(Json{{"id", r.id}, {"value", r.value}, {"tol", r.tol}, {"pass", r.pass}, {"detail", r.detail}});
    if (!r.pass) failed.push_back(r.id);
  }
  if (wants(rc, "json"))
    write_file(rc, "verify_" + tag(rc.alpha) + ".json", Json{{"schema", kSchemaVersion}, {"alpha", rc.alpha}, {"invariants", report}}.dump(1) + "\n");
  if (failed.empty()) {
    std::cout << "all " << results.size() << " invariants hold\n";
    return 0;
  }
  std::cout << failed.size() << " invariant failure(s):";
  for (const auto& id : failed) std::cout << ' ' << id;
  std::cout << '\n';
  return 2;
}

int cmd_sweep(const RunConfig& rc) {
  if (!(rc.step > 0.0) || rc.alpha_max < rc.alpha_min) throw CLI::ValidationError("sweep needs --step > 0 and --alpha-max >= --alpha-min");
  const int n = static_cast<int>(std::floor((rc.alpha_max - rc.alpha_min) / rc.step + 1e-9)) + 1;
  std::vector<Alpha> alphas;
  for (int i = 0; i < n; ++i) alphas.emplace_back(rc.alpha_min + i * rc.step);  // validates every value first
  std::ostringstream csv;
  csv << "alpha,n0,n_s,n_a,r,rho,label\n";
  for (const auto& a : alphas) {
    const auto K = switch_constants(a);
    const auto rep = classify_south_pole(a);
    csv << tag(a.value()) << ',' << K.n0 << ',' << K.n_s << ',' << K.n_a << ',' << detail::num(K.r, 10) << ','
        << detail::num(K.r / a.value(), 10) << ',' << rep.label << '\n';
  }
  if (wants(rc, "csv") || rc.format.empty()) write_file(rc, "sweep_" + tag(rc.alpha_min) + "_" + tag(rc.alpha_max) + ".csv", csv.str());
  std::cout << csv.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-optimal synthesis for x' = x(f + u g) on SO(3) and its projection on S^2"};
  RunConfig rc;
  const char* env_out = std::getenv("SO3TOS_OUT");
  rc.out = env_out && *env_out ? env_out : ".";

  app.set_config("--config", "", "flat key=value file; flags override it");
  app.add_option("--alpha", rc.alpha, "control-set angle, 0 < alpha < pi/4 - 0.001");
  app.add_option("--alpha-min", rc.alpha_min, "sweep start");
  app.add_option("--alpha-max", rc.alpha_max, "sweep end (inclusive)");
  app.add_option("--step", rc.step, "sweep step");
  app.add_option("--time", rc.time, "front time T");
  app.add_option("--horizon", rc.horizon, "coverage horizon for verify (default (N_A + 1) pi)");
  app.add_option("--cells", rc.cells, "min-time map cells")->check(CLI::PositiveNumber);
  app.add_option("--grid", rc.grid, "s-grid resolution")->check(CLI::Range(16, 1 << 16));
  app.add_option("--seed", rc.seed, "seed for sampled invariants");
  app.add_option("--out", rc.out, "output directory (default $SO3TOS_OUT or .)");
  app.add_option("--format", rc.format, "output formats")->check(CLI::IsMember({"csv", "json", "svg"}))->delimiter(',');

  auto* synth = app.add_subcommand("synth", "chart JSON and SVG views");
  auto* front = app.add_subcommand("front", "front at time T");
  auto* verify = app.add_subcommand("verify", "module invariants; exit 2 on failure");
  auto* sweep = app.add_subcommand("sweep", "N0, N_S, N_A, r and case label over an alpha range");
  for (auto* s : {synth, front, verify, sweep}) s->fallthrough();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!fs::is_directory(rc.out)) fs::create_directories(rc.out);
    if (rc.format.empty()) {
      if (synth->parsed()) rc.format = {"json", "svg"};
      if (front->parsed()) rc.format = {"csv", "svg"};
    }
    std::sort(rc.format.begin(), rc.format.end());
    if (synth->parsed()) return cmd_synth(rc);
    if (front->parsed()) return cmd_front(rc);
    if (verify->parsed()) return cmd_verify(rc);
    return cmd_sweep(rc);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
