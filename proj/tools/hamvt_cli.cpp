#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <thread>

#include "hamvt/charsum.hpp"
#include "hamvt/families.hpp"

using namespace hamvt;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kVerifyFailed = 1, kTimeout = 2, kUsage = 64;

std::string family_help() {
  std::string s = "families:\n";
  for (const auto& f : family_table()) {
    s += "  " + f.id;
    if (f.param) s += std::string(" (--") + f.param + ", default " + std::to_string(f.default_param) + ")";
    s += "  " + f.description + "\n";
  }
  return s;
}

struct CaseArgs {
  std::string family;
  std::optional<std::uint64_t> q, c;
  std::optional<std::size_t> suborbit;
  std::string strategy = "auto";

  void add(CLI::App* app, bool with_suborbit) {
    app->add_option("--family", family, "family id (see --help)")->required();
    app->add_option("--q", q, "field order");
    app->add_option("--c", c, "point count for alt-2sets");
    if (with_suborbit) app->add_option("--suborbit", suborbit, "suborbit index");
  }
  CaseDescriptor descriptor() const {
    std::string line = family;
    if (q) line += " q=" + std::to_string(*q);
    if (c) line += " c=" + std::to_string(*c);
    if (suborbit) line += " suborbit=" + std::to_string(*suborbit);
    line += " strategy=" + strategy;
    return parse_case(line);
  }
};

std::string file_stem(const CaseDescriptor& d, const CaseReport& r) {
  std::string s = d.family;
  if (d.q) s += "-q" + std::to_string(*d.q);
  if (d.c) s += "-c" + std::to_string(*d.c);
  return s + "-s" + r.suborbit.substr(0, r.suborbit.find(' '));
}

struct Emitted {
  json report;
  bool verify_failed = false, timeout = false;
};

// Writes graph and certificate under out_dir (if given) and builds the report line.
Emitted emit(const CaseDescriptor& d, const CaseReport& r, const std::optional<fs::path>& out_dir, bool timing) {
  Emitted e;
  json& j = e.report;
  j["case"] = d.id();
  j["family"] = r.family;
  if (!r.params.empty()) j["params"] = r.params;
  j["suborbit"] = r.suborbit;
  j["n"] = r.n;
  j["valency"] = r.valency;
  j["strategy"] = strategy_name(r.strategy);
  json tried = json::array();
  for (auto s : r.attempted) tried.push_back(strategy_name(s));
  j["attempted"] = tried;
  j["verdict"] = outcome_name(r.outcome);
  if (r.graph) j["graph_hash"] = hash_hex(r.graph->content_hash());
  if (r.outcome == Outcome::Hamiltonian && r.certificate && r.graph) {
    auto v = verify_certificate(*r.graph, *r.certificate);
    j["verified"] = v.ok;
    if (!v.ok) {
      e.verify_failed = true;
      j["verify_reason"] = reason_name(v.reason);
    }
    if (out_dir) {
      fs::create_directories(*out_dir);
      auto stem = *out_dir / file_stem(d, r);
      save_edge_list(stem.string() + ".el", *r.graph);
      save_certificate(stem.string() + ".crt", *r.certificate);
      j["graph_file"] = stem.string() + ".el";
      j["certificate_file"] = stem.string() + ".crt";
    }
  }
  if (r.outcome == Outcome::Timeout) e.timeout = true;
  if (r.outcome == Outcome::Failed) e.verify_failed = true;
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"ok", c.ok()}});
    if (c.known) checks.back()["known"] = true;
    if (!c.ok() && !c.known) e.verify_failed = true;
  }
  j["checks"] = checks;
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (timing) j["elapsed_ms"] = std::round(r.elapsed_ms * 10) / 10;
  return e;
}

void summary(const CaseReport& r) {
  std::cerr << r.family << (r.params.empty() ? "" : " " + r.params) << " [" << r.suborbit << "] n=" << r.n << " k=" << r.valency << ": "
            << outcome_name(r.outcome) << " via " << strategy_name(r.strategy) << "\n";
}

int residue_table(std::uint64_t qmax) {
  bool ok = true;
  std::cout << "q\t|(S*+1)^(-S*)|\t|S*^(S*+1)|\t|N^(N+1)|\t|S*^(N+1)|\t|S*^(N-1)|\tclosed-form\n";
  for (std::uint64_t q = 3; q <= qmax; q += 2) {
    if (!is_prime(q)) continue;
    auto c = residue_intersection_counts(q);
    bool m = matches_closed_form(c);
    ok = ok && m;
    std::cout << q << '\t' << c.c_sp1_minus_s << '\t' << c.c_ss << '\t' << c.c_nn << '\t' << c.c_sn_plus << '\t'
              << c.c_sn_minus << '\t' << (m ? "ok" : "MISMATCH") << '\n';
  }
  return ok ? 0 : kVerifyFailed;
}

int bounds_check(std::uint64_t qmax) {
  bool all = true;
  for (std::uint64_t q = 3; q <= qmax; q += 2) {
    if (!is_prime(q)) continue;
    PrimeField f(q);
    auto rep = check_triple_bounds(q);
    bool sum = eta_sum(f) == 0;
    bool quad = true;
    if (q <= 61)
      for (std::uint64_t A = 0; A < q && quad; ++A)
        for (std::uint64_t B = 0; B < q; ++B) {
          auto disc = f.sub(f.mul(A, A), f.mul(4, B));
          if (eta_quadratic_sum(f, A, B) != (disc == 0 ? static_cast<std::int64_t>(q) - 1 : -1)) quad = false;
        }
    bool cubic = true;
    for (std::uint64_t t = 1; t < q && cubic; ++t) cubic = within_weil(eta_cubic_sum(f, t), q);
    bool ok = rep.ok && sum && quad && cubic;
    all = all && ok;
    json j = {{"q", q},
              {"max_ssn", rep.max_ssn},
              {"max_snn", rep.max_snn},
              {"min_sns", rep.min_sns},
              {"min_nns", rep.min_nns},
              {"upper", triple_upper_bound(q)},
              {"lower", triple_lower_bound(q)},
              {"bounds", rep.ok},
              {"eta_sum", sum},
              {"cubic_weil", cubic},
              {"ok", ok}};
    if (q <= 61) j["quadratic_sum"] = quad;
    std::cout << j.dump() << '\n';
  }
  std::cerr << (all ? "all bounds and identities hold\n" : "bounds check FAILED\n");
  return all ? 0 : kVerifyFailed;
}

int suborbits_cmd(const CaseDescriptor& d, const fs::path& data) {
  bool ok = true;
  for (const auto& r : family_suborbits(d, data)) {
    json j = {{"index", r.index},     {"length", r.length},         {"self_paired", r.self_paired},
              {"paired", r.paired},   {"representative", r.representative}, {"oracle_agrees", r.oracle_agrees}};
    if (!r.description.empty()) j["description"] = r.description;
    ok = ok && r.oracle_agrees;
    std::cout << j.dump() << '\n';
  }
  return ok ? 0 : kVerifyFailed;
}

int exit_for(bool failed, bool timeout) { return failed ? kVerifyFailed : timeout ? kTimeout : 0; }

int hamilton_cmd(const CaseDescriptor& d, const RunOptions& opts, const fs::path& out, const fs::path& data) {
  bool failed = false, timeout = false;
  for (const auto& r : run_case(d, opts, data)) {
    auto e = emit(d, r, out, true);
    summary(r);
    failed |= e.verify_failed;
    timeout |= e.timeout;
    std::cout << e.report.dump() << '\n';
  }
  return exit_for(failed, timeout);
}

int verify_cmd(const std::string& graph, const std::string& cert) {
  auto g = load_edge_list(graph);
  auto c = load_certificate(cert);
  auto v = verify_certificate(g, c);
  json j = {{"ok", v.ok}, {"reason", reason_name(v.reason)}};
  if (!v.detail.empty()) j["detail"] = v.detail;
  std::cout << j.dump() << '\n';
  return v.ok ? 0 : kVerifyFailed;
}

int matrix_cmd(const std::string& file, unsigned jobs, const RunOptions& opts, const std::optional<fs::path>& out,
               bool timing, const fs::path& data) {
  std::ifstream in(file);
  if (!in) throw std::invalid_argument("cannot open " + file);
  std::vector<CaseDescriptor> cases;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    auto body = line.substr(0, line.find('#'));
    if (body.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      cases.push_back(parse_case(body));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(file + ":" + std::to_string(no) + ": " + e.what());
    }
  }
  std::vector<std::vector<Emitted>> results(cases.size());
  std::vector<std::string> errors(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < cases.size();) {
      try {
        for (const auto& r : run_case(cases[k], opts, data)) {
          results[k].push_back(emit(cases[k], r, out, timing));
          summary(r);
        }
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  bool failed = false, timeout = false;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    if (!errors[k].empty()) {
      failed = true;
      std::cout << json{{"case", cases[k].id()}, {"error", errors[k]}}.dump() << '\n';
    }
    for (const auto& e : results[k]) {
      failed |= e.verify_failed;
      timeout |= e.timeout;
      std::cout << e.report.dump() << '\n';
    }
  }
  return exit_for(failed, timeout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamilton cycles in primitive vertex-transitive graphs of order 2rs"};
  app.footer(family_help());
  app.require_subcommand(1);
  std::string data = HAMVT_DATA_DIR;
  app.add_option("--data", data, "generator data directory")->capture_default_str();

  std::uint64_t qmax = 1999;
  auto* residue = app.add_subcommand("residue-table", "quadratic residue intersection counts against closed forms");
  residue->add_option("--qmax", qmax, "largest prime q")->capture_default_str();

  std::uint64_t bmax = 499;
  auto* bounds = app.add_subcommand("bounds-check", "triple-count bounds and character sum identities");
  bounds->add_option("--qmax", bmax, "largest prime q")->capture_default_str();

  CaseArgs sub_args;
  auto* subs = app.add_subcommand("suborbits", "list suborbits, closed form against the orbit oracle");
  sub_args.add(subs, false);

  CaseArgs build_args;
  std::string build_out;
  auto* build = app.add_subcommand("build", "export an orbital graph as an edge list");
  build_args.add(build, true);
  build->add_option("--out", build_out, "edge-list file")->required();

  CaseArgs ham_args;
  RunOptions run;
  std::string ham_out = ".";
  auto* ham = app.add_subcommand("hamilton", "run the construction ladder, write graph, certificate and report");
  ham_args.add(ham, true);
  ham->add_option("--budget", run.budget, "search node budget per root branch")->capture_default_str();
  ham->add_option("--jobs", run.jobs, "search threads")->capture_default_str();
  ham->add_option("--strategy", ham_args.strategy, "auto or search")->check(CLI::IsMember({"auto", "search"}));
  ham->add_option("--out-dir", ham_out, "directory for .el and .crt files")->capture_default_str();

  std::string graph_file, cert_file;
  auto* verify = app.add_subcommand("verify", "check a certificate against a graph; exit 0 iff valid");
  verify->add_option("--graph", graph_file, "edge-list file")->required()->check(CLI::ExistingFile);
  verify->add_option("--cert", cert_file, "certificate file")->required()->check(CLI::ExistingFile);

  std::string matrix_file, matrix_out;
  unsigned matrix_jobs = 1;
  bool no_timing = false;
  RunOptions matrix_run;
  auto* matrix = app.add_subcommand("matrix", "run every case of a case file (JSON lines, input order)");
  matrix->add_option("--file", matrix_file, "case file")->required()->check(CLI::ExistingFile);
  matrix->add_option("--jobs", matrix_jobs, "cases run in parallel")->capture_default_str();
  matrix->add_option("--budget", matrix_run.budget, "search node budget per root branch")->capture_default_str();
  matrix->add_option("--out-dir", matrix_out, "write graphs and certificates here");
  matrix->add_flag("--no-timing", no_timing, "omit elapsed_ms so output is byte-identical across runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*residue) return residue_table(qmax);
    if (*bounds) return bounds_check(bmax);
    if (*subs) return suborbits_cmd(sub_args.descriptor(), data);
    if (*build) {
      auto d = build_args.descriptor();
      save_edge_list(build_out, family_graph(d, data));
      std::cerr << "wrote " << build_out << "\n";
      return 0;
    }
    if (*ham) return hamilton_cmd(ham_args.descriptor(), run, ham_out, data);
    if (*verify) return verify_cmd(graph_file, cert_file);
    if (*matrix) {
      std::optional<fs::path> out;
      if (!matrix_out.empty()) out = matrix_out;
      return matrix_cmd(matrix_file, matrix_jobs, matrix_run, out, !no_timing, data);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kUsage;
}
