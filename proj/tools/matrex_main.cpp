#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "matrex/json_io.hpp"

namespace {

using nlohmann::json;

struct RunConfig {
  std::string matroid_path;
  std::string output_path;
  bool deterministic = false;
  int jobs = std::max(1, std::min(8, int(std::thread::hardware_concurrency())));
  matrex::Caps caps;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw matrex::InvalidParameter("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Arguments carrying JSON accept either an inline document or a file path.
json arg_json(const std::string& arg, const std::string& what) {
  std::string text = arg;
  auto first = arg.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || (arg[first] != '[' && arg[first] != '{'))
    text = read_file(arg);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw matrex::ParseError("invalid JSON in " + what + ": " + e.what());
  }
}

matrex::MatroidPtr load_matroid(const RunConfig& cfg) {
  if (cfg.matroid_path.empty())
    throw matrex::InvalidParameter("this command needs a matroid (-m FILE)");
  return matrex::parse_matroid(arg_json(cfg.matroid_path, "matroid definition"));
}

void emit(const RunConfig& cfg, json doc, const char* verb,
          const matrex::MatroidPtr& m = nullptr) {
  doc["schema_version"] = 1;
  doc["verb"] = verb;
  if (m) doc["matroid_sha"] = m->fingerprint();
  std::string text = doc.dump(2);
  text.push_back('\n');
  if (cfg.output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) throw matrex::InvalidParameter("cannot write file: " + cfg.output_path);
    out << text;
  }
}

matrex::Multidegree parse_multidegree(const json& doc, int ground_size) {
  if (!doc.is_array() || int(doc.size()) != ground_size)
    throw matrex::ParseError("multidegree must list one count per ground element (" +
                             std::to_string(ground_size) + ")");
  matrex::Multidegree d;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const json& v = doc[k];
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw matrex::ParseError("multidegree[" + std::to_string(k) +
                               "]: expected a nonnegative integer");
    d.counts.push_back(v.get<int>());
  }
  return d;
}

int run_bases(const RunConfig& cfg, bool count_only) {
  auto m = load_matroid(cfg);
  const auto& bases = m->bases(cfg.caps.max_bases);
  json doc{{"ground_size", m->ground_size()},
           {"rank", m->rank()},
           {"count", bases.size()}};
  if (!count_only) {
    json arr = json::array();
    for (const matrex::Basis& b : bases) arr.push_back(matrex::to_json(b));
    doc["bases"] = std::move(arr);
  }
  emit(cfg, std::move(doc), "bases", m);
  return 0;
}

int run_axioms(const RunConfig& cfg) {
  auto m = load_matroid(cfg);
  matrex::AxiomCheck check = matrex::verify_axioms(m->bases(cfg.caps.max_bases));
  emit(cfg, matrex::to_json(check), "axioms", m);
  return check.ok ? 0 : 1;
}

int run_sbo(const RunConfig& cfg) {
  auto m = load_matroid(cfg);
  matrex::SboCheck check = matrex::is_strongly_base_orderable(*m, cfg.caps.max_bases);
  emit(cfg, matrex::to_json(check), "sbo", m);
  return 0;
}

int run_rewrite(const RunConfig& cfg, const std::string& from_arg,
                const std::string& to_arg) {
  auto m = load_matroid(cfg);
  matrex::Monomial from = matrex::parse_monomial(arg_json(from_arg, "--from"),
                                                 m->ground_size(), "--from");
  matrex::Monomial to =
      matrex::parse_monomial(arg_json(to_arg, "--to"), m->ground_size(), "--to");
  std::vector<int> trace;
  matrex::Certificate cert =
      matrex::rewrite_certificate(*m, from.factors(), to.factors(), &trace);
  json doc = matrex::to_json(cert);
  doc["overlap_trace"] = trace;
  emit(cfg, std::move(doc), "rewrite", m);
  return 0;
}

int run_fiber(const RunConfig& cfg, const std::string& degree_arg, bool diameter,
              bool list) {
  auto m = load_matroid(cfg);
  matrex::Multidegree d =
      parse_multidegree(arg_json(degree_arg, "--multidegree"), m->ground_size());
  matrex::FiberReport report =
      matrex::connected_components(*m, d, cfg.caps, diameter);
  if (cfg.deterministic) report.elapsed_seconds = 0;
  json doc = matrex::to_json(report);
  if (list) {
    json arr = json::array();
    for (const matrex::Monomial& mono : matrex::fiber_enumerate(*m, d, cfg.caps))
      arr.push_back(matrex::to_json(mono));
    doc["monomials"] = std::move(arr);
  }
  emit(cfg, std::move(doc), "fiber", m);
  return 0;
}

int run_jm(const RunConfig& cfg, const std::string& m1_arg, const std::string& m2_arg) {
  auto m = load_matroid(cfg);
  matrex::Monomial m1 =
      matrex::parse_monomial(arg_json(m1_arg, "--m1"), m->ground_size(), "--m1");
  matrex::Monomial m2 =
      matrex::parse_monomial(arg_json(m2_arg, "--m2"), m->ground_size(), "--m2");
  auto cert = matrex::find_swap_path(*m, m1, m2, cfg.caps);
  json doc{{"member", cert.has_value()},
           {"certificate", cert ? matrex::to_json(*cert) : json(nullptr)}};
  emit(cfg, std::move(doc), "jm", m);
  return 0;
}

int run_te(const RunConfig& cfg, int max_degree, int variant, int subset_bound) {
  auto m = load_matroid(cfg);
  matrex::TEReport report =
      matrex::te_check(*m, max_degree, variant, cfg.caps, cfg.jobs, subset_bound);
  emit(cfg, matrex::to_json(report), "te", m);
  return 0;
}

int run_balance(const RunConfig& cfg, const std::string& ref_arg,
                const std::string& basis_arg) {
  auto m = load_matroid(cfg);
  matrex::Basis ref = matrex::parse_basis(arg_json(ref_arg, "--reference"),
                                          m->ground_size(), "--reference");
  matrex::Basis b =
      matrex::parse_basis(arg_json(basis_arg, "--basis"), m->ground_size(), "--basis");
  matrex::BalanceResult result = matrex::balance(*m, ref, b);
  emit(cfg, matrex::to_json(result), "balance", m);
  return 0;
}

int run_saturate(const RunConfig& cfg, const std::string& m1_arg,
                 const std::string& m2_arg, const std::string& ref_arg,
                 bool min_exponent) {
  auto m = load_matroid(cfg);
  matrex::Monomial m1 =
      matrex::parse_monomial(arg_json(m1_arg, "--m1"), m->ground_size(), "--m1");
  matrex::Monomial m2 =
      matrex::parse_monomial(arg_json(m2_arg, "--m2"), m->ground_size(), "--m2");
  matrex::Basis ref = matrex::parse_basis(arg_json(ref_arg, "--reference"),
                                          m->ground_size(), "--reference");
  matrex::SaturationWitness witness =
      matrex::saturation_witness(*m, m1, m2, ref, cfg.caps);
  json doc = matrex::to_json(witness);
  if (min_exponent)
    doc["min_exponent"] = matrex::min_saturation_exponent(*m, m1, m2, ref, cfg.caps);
  emit(cfg, std::move(doc), "saturate", m);
  return 0;
}

int run_cyclic(const RunConfig& cfg) {
  auto m = load_matroid(cfg);
  auto ordering = matrex::cyclic_ordering(*m, cfg.caps);
  json doc{{"found", ordering.has_value()},
           {"ordering", ordering ? json(*ordering) : json(nullptr)}};
  emit(cfg, std::move(doc), "cyclic", m);
  return 0;
}

int run_verify(const RunConfig& cfg, const std::string& cert_arg) {
  auto m = load_matroid(cfg);
  matrex::Certificate cert =
      matrex::parse_certificate(arg_json(cert_arg, "certificate"), m->ground_size());
  matrex::ReplayResult result = matrex::verify_certificate(*m, cert);
  emit(cfg, matrex::to_json(result), "verify", m);
  return result.valid ? 0 : 1;
}

int run_harness(const RunConfig& cfg, int max_degree) {
  auto m = load_matroid(cfg);
  matrex::HarnessReport report =
      matrex::direct_sum_harness(m, max_degree, cfg.caps, cfg.jobs);
  emit(cfg, matrex::to_json(report), "harness", m);
  return report.consistent ? 0 : 4;
}

int run_polymatroid(const RunConfig& cfg, const std::string& input_arg) {
  matrex::DiscretePolymatroid p =
      matrex::parse_polymatroid(arg_json(input_arg, "polymatroid definition"));
  matrex::MatroidPtr lifted = matrex::polymatroid_to_matroid(p, cfg.caps.max_bases);
  json doc{{"n", p.dimension()},
           {"rank", p.rank()},
           {"base_count", p.bases().size()},
           {"lifted", json::parse(lifted->definition_json())},
           {"lifted_ground_size", lifted->ground_size()},
           {"lifted_rank", lifted->rank()},
           {"lifted_base_count", lifted->bases(cfg.caps.max_bases).size()}};
  emit(cfg, std::move(doc), "polymatroid", lifted);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matrex: a laboratory for matroid basis exchange"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("-m,--matroid", cfg.matroid_path,
                 "matroid definition (JSON file or inline)");
  app.add_option("-o,--output", cfg.output_path, "write the report here (default stdout)");
  app.add_flag("--deterministic", cfg.deterministic,
               "single-threaded, timing fields zeroed, byte-stable output");
  app.add_option("--jobs", cfg.jobs, "worker threads for fiber sweeps")
      ->check(CLI::Range(1, 256));
  app.add_option("--cap-bases", cfg.caps.max_bases, "basis enumeration cap")
      ->envname("MATREX_CAP_BASES")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap,--cap-fiber", cfg.caps.max_fiber_nodes,
                 "fiber/search node cap")
      ->envname("MATREX_CAP_FIBER")
      ->check(CLI::PositiveNumber);
  app.add_option("--time-limit", cfg.caps.time_limit_seconds,
                 "wall-clock limit in seconds (0 = none)")
      ->envname("MATREX_TIME_LIMIT");

  auto* c_bases = app.add_subcommand("bases", "enumerate the bases");
  bool count_only = false;
  c_bases->add_flag("--count-only", count_only, "report the count without the list");

  auto* c_axioms = app.add_subcommand("axioms", "check the exchange axiom on the enumerated bases");

  auto* c_sbo = app.add_subcommand("sbo", "decide strong base orderability");

  auto* c_rewrite = app.add_subcommand("rewrite", "certificate taking one basis sequence to another");
  std::string rw_from, rw_to;
  c_rewrite->add_option("--from", rw_from, "starting sequence (JSON or file)")->required();
  c_rewrite->add_option("--to", rw_to, "target sequence (JSON or file)")->required();

  auto* c_fiber = app.add_subcommand("fiber", "connected components of a fiber");
  std::string fiber_degree;
  bool fiber_diameter = false, fiber_list = false;
  c_fiber->add_option("--multidegree", fiber_degree, "target multidegree (JSON or file)")
      ->required();
  c_fiber->add_flag("--diameter", fiber_diameter, "also compute the largest component's diameter");
  c_fiber->add_flag("--list", fiber_list, "include the fiber's monomials");

  auto* c_jm = app.add_subcommand("jm", "double-swap reachability of two monomials");
  std::string jm_m1, jm_m2;
  c_jm->add_option("--m1", jm_m1, "first monomial (JSON or file)")->required();
  c_jm->add_option("--m2", jm_m2, "second monomial (JSON or file)")->required();

  auto* c_te = app.add_subcommand("te", "exchange connectivity of all fibers up to a degree");
  int te_degree = 2, te_variant = 2, te_subset_bound = 0;
  c_te->add_option("--n,--max-degree", te_degree, "largest degree to sweep")
      ->check(CLI::Range(1, 16));
  c_te->add_option("--variant", te_variant, "1 ordered, 2 unordered, 3 multiple exchanges")
      ->check(CLI::Range(1, 3));
  c_te->add_option("--subset-bound", te_subset_bound,
                   "variant 3: largest exchanged subset (0 = min(rank, 6))");

  auto* c_balance = app.add_subcommand("balance", "split a basis into reference-adjacent factors");
  std::string bal_ref, bal_basis;
  c_balance->add_option("--reference", bal_ref, "reference basis (JSON or file)")->required();
  c_balance->add_option("--basis", bal_basis, "basis to balance (JSON or file)")->required();

  auto* c_saturate = app.add_subcommand("saturate", "connect two monomials after reference padding");
  std::string sat_m1, sat_m2, sat_ref;
  bool sat_min = false;
  c_saturate->add_option("--m1", sat_m1, "first monomial (JSON or file)")->required();
  c_saturate->add_option("--m2", sat_m2, "second monomial (JSON or file)")->required();
  c_saturate->add_option("--reference", sat_ref, "reference basis (JSON or file)")->required();
  c_saturate->add_flag("--min-exponent", sat_min, "also search for the smallest sufficient padding");

  auto* c_cyclic = app.add_subcommand("cyclic", "cyclic arrangement with every rank-window a basis");

  auto* c_verify = app.add_subcommand("verify", "replay a certificate against the matroid");
  std::string verify_cert;
  c_verify->add_option("--certificate", verify_cert, "certificate (JSON or file)")->required();

  auto* c_harness = app.add_subcommand("harness", "compare ordered/unordered connectivity of m and m + m");
  int harness_degree = 2;
  c_harness->add_option("--n,--max-degree", harness_degree, "largest degree to sweep")
      ->check(CLI::Range(1, 16));

  auto* c_poly = app.add_subcommand("polymatroid", "reduce a discrete polymatroid to a matroid");
  std::string poly_input;
  c_poly->add_option("-p,--input", poly_input, "polymatroid definition (JSON file or inline)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (cfg.deterministic) cfg.jobs = 1;

  try {
    if (c_bases->parsed()) return run_bases(cfg, count_only);
    if (c_axioms->parsed()) return run_axioms(cfg);
    if (c_sbo->parsed()) return run_sbo(cfg);
    if (c_rewrite->parsed()) return run_rewrite(cfg, rw_from, rw_to);
    if (c_fiber->parsed()) return run_fiber(cfg, fiber_degree, fiber_diameter, fiber_list);
    if (c_jm->parsed()) return run_jm(cfg, jm_m1, jm_m2);
    if (c_te->parsed()) return run_te(cfg, te_degree, te_variant, te_subset_bound);
    if (c_balance->parsed()) return run_balance(cfg, bal_ref, bal_basis);
    if (c_saturate->parsed()) return run_saturate(cfg, sat_m1, sat_m2, sat_ref, sat_min);
    if (c_cyclic->parsed()) return run_cyclic(cfg);
    if (c_verify->parsed()) return run_verify(cfg, verify_cert);
    if (c_harness->parsed()) return run_harness(cfg, harness_degree);
    if (c_poly->parsed()) return run_polymatroid(cfg, poly_input);
    std::cerr << "no command given\n";
    return 2;
  } catch (const matrex::InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const matrex::ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const matrex::Falsification& e) {
    std::cerr << "falsification: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
