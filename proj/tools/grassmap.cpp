// grassmap: build and check maps from Grassmannians of 2-planes to projective spaces.
//
// Exit status: 0 on success, 1 when a verification check fails (the failing
// check is named on stderr), 2 on bad usage.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "grassmap/actions.hpp"
#include "grassmap/algebra.hpp"
#include "grassmap/analysis.hpp"
#include "grassmap/fiber.hpp"
#include "grassmap/geometry.hpp"
#include "grassmap/lscat.hpp"
#include "grassmap/maps.hpp"
#include "grassmap/verify.hpp"

namespace {

using namespace grassmap;
using json = nlohmann::json;

struct RunConfig {
  std::string command;
  std::uint64_t seed = 0;
  int samples = 1000;
  std::vector<std::string> tol_overrides;
  std::string format = "text";
  std::string out;
  bool deterministic = false;

  // subcommand parameters
  int n = 0;
  int k = 0;
  int count = 1;
  std::string plane_file;
  std::string map_id = "nu8";
  std::string kind = "plane";
  int word_len = 4;
  int from = 3;
  int to = 16;
  std::string registry_file;
  bool spectra = false;
};

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::UsageError, "--tol expects name=value, got '" + item + "'");
    try {
      std::size_t used = 0;
      const std::string value = item.substr(eq + 1);
      out[item.substr(0, eq)] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::UsageError, "--tol value is not a number in '" + item + "'");
    }
  }
  return out;
}

json config_echo(const RunConfig& cfg) {
  json j = {{"command", cfg.command}, {"seed", cfg.seed}, {"samples", cfg.samples}, {"format", cfg.format}};
  j["tol"] = parse_tolerances(cfg.tol_overrides);
  if (!cfg.deterministic) j["timestamp"] = timestamp();
  return j;
}

VerifyConfig verify_config(const RunConfig& cfg) {
  VerifyConfig v;
  v.seed = cfg.seed;
  v.samples = cfg.samples;
  v.word_len = cfg.word_len;
  v.tol = parse_tolerances(cfg.tol_overrides);
  return v;
}

MapRegistry load_registry(const RunConfig& cfg) {
  if (cfg.registry_file.empty()) return default_registry();
  std::ifstream in(cfg.registry_file);
  if (!in) throw Error(ErrorKind::UsageError, "cannot open registry file '" + cfg.registry_file + "'");
  return read_registry_csv(in);
}

void write_report(std::ostream& os, const SuiteReport& report, const std::string& format) {
  if (format == "json") {
    os << to_json(report).dump(2) << '\n';
  } else if (format == "csv") {
    os << "name,residual,threshold,comparison,pass\n";
    for (const auto& c : report.checks) {
      os << c.name << ',' << std::setprecision(6) << c.residual << ',' << c.threshold << ','
         << (c.lower_bound ? ">" : "<=") << ',' << (c.pass() ? "true" : "false") << '\n';
    }
  } else {
    for (const auto& c : report.checks) {
      os << (c.pass() ? "PASS " : "FAIL ") << std::left << std::setw(44) << c.name << std::right << std::scientific
         << std::setprecision(3) << c.residual << (c.lower_bound ? "  >  " : "  <= ") << c.threshold << '\n';
    }
    os << report.suite << ": " << (report.pass() ? "PASS" : "FAIL") << '\n';
  }
}

int finish_report(std::ostream& os, SuiteReport report, const RunConfig& cfg) {
  report.config = config_echo(cfg);
  write_report(os, report, cfg.format);
  if (const Check* failed = report.first_failure()) {
    std::cerr << "grassmap: check failed: " << failed->name << " (residual " << failed->residual << ", threshold "
              << failed->threshold << ")\n";
    return 1;
  }
  return 0;
}

int cmd_dump_table(std::ostream& os) {
  os << "i,j,sign,index\n";
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const SignedIndex e = kOctonionTable(i, j);
      os << i << ',' << j << ',' << e.sign << ',' << e.index << '\n';
    }
  return 0;
}

int cmd_map(std::ostream& os, const RunConfig& cfg) {
  std::optional<Plane> plane;
  if (!cfg.plane_file.empty()) {
    std::ifstream in(cfg.plane_file);
    if (!in) throw Error(ErrorKind::UsageError, "cannot open plane file '" + cfg.plane_file + "'");
    json j;
    try {
      in >> j;
      plane = plane_from_json(j);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::UsageError, std::string("bad plane JSON: ") + e.what());
    }
  }
  const int n = plane ? plane->ambient_dim() : cfg.n;
  if (n == 0) throw Error(ErrorKind::UsageError, "map needs --n or --plane");
  if (plane && cfg.n != 0 && cfg.n != n) throw Error(ErrorKind::UsageError, "--n does not match the plane file");
  const GrassmannMap map = map_for_dimension(n);
  if (!plane) {
    Rng rng(cfg.seed, 0);
    plane = random_plane(n, rng);
  }
  const json out = {{"map", map.id()}, {"n", map.n()}, {"k", map.k()}, {"plane", to_json(*plane)}, {"image", to_json(map(*plane))}};
  os << out.dump(2) << '\n';
  return 0;
}

int cmd_rank(std::ostream& os, const RunConfig& cfg) {
  const double tol = verify_config(cfg).threshold("rank", tolerances().rank);
  const RankReport report = submersion_report(map_by_id(cfg.map_id), cfg.samples, cfg.seed, tol);
  if (cfg.format == "json") {
    json j = to_json(report, cfg.spectra);
    j["config"] = config_echo(cfg);
    os << j.dump(2) << '\n';
  } else {
    os << report.map_id << ": Gr_2(R^" << report.n << ") -> RP^" << report.k << ", expected rank " << report.expected_rank
       << ", " << report.samples << " samples\n"
       << "min sigma_k = " << report.min_sigma_k << ", min sigma_k/sigma_1 = " << report.min_ratio << " (tolerance "
       << report.tolerance << ")\n"
       << "verdict: " << (report.full_rank ? "full-rank" : "rank-deficient")
       << (report.asserted ? "" : " (exploratory)") << '\n';
  }
  if (!report.pass()) {
    std::cerr << "grassmap: check failed: rank_" << report.map_id << '\n';
    return 1;
  }
  return 0;
}

int cmd_sample(std::ostream& os, const RunConfig& cfg) {
  json items = json::array();
  for (int i = 0; i < cfg.count; ++i) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(i));
    if (cfg.kind == "plane") {
      if (cfg.n < 3) throw Error(ErrorKind::UsageError, "sample --kind plane needs --n >= 3");
      items.push_back(to_json(random_plane(cfg.n, rng)));
    } else if (cfg.kind == "point") {
      if (cfg.k < 1) throw Error(ErrorKind::UsageError, "sample --kind point needs --k >= 1");
      items.push_back(to_json(random_unit(cfg.k, rng)));
    } else {
      throw Error(ErrorKind::UsageError, "unknown sample kind '" + cfg.kind + "'");
    }
  }
  os << (cfg.count == 1 ? items[0] : items).dump(2) << '\n';
  return 0;
}

int cmd_lscat(std::ostream& os, const RunConfig& cfg) {
  if (cfg.from > cfg.to) throw Error(ErrorKind::UsageError, "--from must not exceed --to");
  std::vector<int> ns;
  for (int n = cfg.from; n <= cfg.to; ++n) ns.push_back(n);
  const auto rows = emit_table(ns, load_registry(cfg));
  if (cfg.format == "csv") {
    write_csv(os, rows);
  } else if (cfg.format == "json") {
    json j = json::array();
    for (const auto& r : rows) j.push_back(to_json(r));
    os << j.dump(2) << '\n';
  } else {
    write_text(os, rows);
  }
  return 0;
}

int run(const RunConfig& cfg, std::ostream& os) {
  if (cfg.command == "verify") return finish_report(os, verify_all(verify_config(cfg)), cfg);
  if (cfg.command == "triality") {
    SuiteReport r = verify_actions(verify_config(cfg));
    r.suite = "triality";
    return finish_report(os, r, cfg);
  }
  if (cfg.command == "fiber") {
    if (cfg.n != 4 && cfg.n != 8) throw Error(ErrorKind::UsageError, "fiber --n must be 4 or 8");
    return finish_report(os, cfg.n == 4 ? verify_fiber4(verify_config(cfg)) : verify_fiber8(verify_config(cfg)), cfg);
  }
  if (cfg.command == "map") return cmd_map(os, cfg);
  if (cfg.command == "rank") return cmd_rank(os, cfg);
  if (cfg.command == "sample") return cmd_sample(os, cfg);
  if (cfg.command == "lscat") return cmd_lscat(os, cfg);
  if (cfg.command == "registry") {
    write_registry_csv(os, load_registry(cfg));
    return 0;
  }
  if (cfg.command == "dump-table") return cmd_dump_table(os);
  throw Error(ErrorKind::UsageError, "unknown command");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maps from Grassmannians of 2-planes to projective spaces, with numerical verification"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  if (const char* env = std::getenv("GRASSMAP_SEED"); env && *env) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "grassmap: GRASSMAP_SEED is not an unsigned integer\n";
      return 2;
    }
  }

  app.add_option("--seed", cfg.seed, "Root seed (default: $GRASSMAP_SEED or 0)");
  app.add_option("--samples", cfg.samples, "Samples per check")->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tol_overrides, "Threshold override name=value (repeatable)");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", cfg.out, "Write output to a file instead of standard output");
  app.add_flag("--deterministic", cfg.deterministic, "Omit the timestamp from reports");

  app.add_subcommand("verify", "Run every verification suite");

  auto* map = app.add_subcommand("map", "Evaluate the registered map on a plane");
  map->add_option("--n", cfg.n, "Ambient dimension");
  map->add_option("--plane", cfg.plane_file, "Plane JSON file {n, x, y}");

  auto* rank = app.add_subcommand("rank", "Singular values of the differential at random planes");
  rank->add_option("--map", cfg.map_id, "Map id, e.g. nu4, nu8, nu16");
  rank->add_flag("--spectra", cfg.spectra, "Include per-sample singular values in JSON");

  auto* fiber = app.add_subcommand("fiber", "Fiber diagram residuals");
  fiber->add_option("--n", cfg.n, "4 or 8")->required();

  auto* triality = app.add_subcommand("triality", "Spin(8)/Spin(7) triality and equivariance residuals");
  triality->add_option("--word-len", cfg.word_len, "Clifford pairs per random word")->check(CLI::PositiveNumber);

  auto* lscat = app.add_subcommand("lscat", "LS-category bounds table");
  lscat->add_option("--from", cfg.from, "First n")->check(CLI::Range(3, 1 << 20));
  lscat->add_option("--to", cfg.to, "Last n")->check(CLI::Range(3, 1 << 20));
  lscat->add_option("--registry", cfg.registry_file, "Registry CSV n,k,construction,source");

  auto* sample = app.add_subcommand("sample", "Seeded random planes or projective points as JSON");
  sample->add_option("--kind", cfg.kind, "plane or point")->check(CLI::IsMember({"plane", "point"}));
  sample->add_option("--n", cfg.n, "Ambient dimension for planes");
  sample->add_option("--k", cfg.k, "Projective dimension for points");
  sample->add_option("--count", cfg.count, "Number of samples")->check(CLI::PositiveNumber);

  auto* registry = app.add_subcommand("registry", "Known maps as CSV n,k,construction,source");
  registry->add_option("--registry", cfg.registry_file, "Registry CSV to echo instead of the built-in one");

  app.add_subcommand("dump-table", "Octonion multiplication table as CSV i,j,sign,index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    std::ostringstream buffer;
    const int status = run(cfg, buffer);
    if (cfg.out.empty()) {
      std::cout << buffer.str();
    } else {
      std::ofstream file(cfg.out);
      if (!file) throw Error(ErrorKind::UsageError, "cannot write '" + cfg.out + "'");
      file << buffer.str();
    }
    return status;
  } catch (const Error& e) {
    std::cerr << "grassmap: " << e.what() << '\n';
    return e.kind() == ErrorKind::UsageError || e.kind() == ErrorKind::UnsupportedDimension ||
                   e.kind() == ErrorKind::UnsupportedN
               ? 2
               : 1;
  }
}
