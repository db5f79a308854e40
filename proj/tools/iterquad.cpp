// iterquad: command-line front end.
//
// Exit codes
//   0    the requested object was built and every claim about it recomputed
//   1    ran fine but nothing was certified (verify), or an I/O problem
//   2    the input violates a hypothesis or a configured limit
//   3    an internal cross-check failed
//   130  census interrupted; checkpoints written so far are kept

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "iterquad/iterquad.hpp"

namespace {

using namespace iterquad;
using nlohmann::json;

std::atomic<bool> g_cancel{false};

extern "C" void on_sigint(int) { g_cancel.store(true); }

void write_json(const std::optional<std::string>& path, const json& j) {
  if (!path) return;
  std::ofstream out(*path);
  if (!out) throw std::runtime_error("cannot write " + *path);
  out << j.dump(2) << '\n';
}

void row(const std::string& key, const std::string& value) { std::cout << "  " << std::left << std::setw(24) << key << value << '\n'; }

std::string join(const std::vector<std::string>& xs, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string u64s(const std::vector<std::uint64_t>& xs) {
  std::vector<std::string> s;
  for (auto x : xs) s.push_back(std::to_string(x));
  return "[" + join(s) + "]";
}

void print_certificate(const StabilityCertificate& c) {
  row("certificate", to_string(c.kind) + (c.prime ? " at p = " + to_string(*c.prime) : ""));
  for (const auto& e : c.evidence) row("", e);
  if (!c.note.empty()) row("", c.note);
}

int cmd_construct_q(unsigned n, const std::string& m, const std::optional<std::string>& s, const Config& cfg,
                    const std::optional<std::string>& json_out) {
  std::optional<Integer> s_val;
  if (s) s_val = parse_integer(*s);
  const auto c = run_construct_q(n, parse_integer(m), s_val, cfg);
  std::cout << "construct q\n";
  row("n", std::to_string(n));
  row("m", to_string(c.m));
  row("s", to_string(c.s));
  row("gamma", to_string(c.map.gamma));
  const auto co = c.map.coefficients();
  row("f(x)", "x^2 + (" + to_string(co[1]) + ")x + (" + to_string(co[2]) + ")");
  for (const auto& cert : c.certificates) print_certificate(cert);
  row("altfund level n", to_string(c.altfund.verdict));
  std::size_t oracle = 0;
  for (const auto& smp : c.samples) oracle += smp.oracle_reducible.has_value();
  row("f^n mod p reducible", "all " + std::to_string(c.samples.size()) + " odd primes <= " + std::to_string(kSpotPrimeBound) +
                                 (oracle ? " (" + std::to_string(oracle) + " confirmed by direct factorization)" : ""));
  write_json(json_out, report::construction_json(c, cfg));
  return 0;
}

int cmd_construct_fq(std::uint64_t p, unsigned k, unsigned n, const std::string& m, const std::optional<std::string>& m_den,
                     const Config& cfg, const std::optional<std::string>& json_out) {
  const auto c = run_construct_fq(p, k, n, m, m_den, cfg);
  const auto& r = c.result;
  const auto co = r.map.coefficients();
  const auto j = report::fq_construction_json(c, cfg);
  std::cout << "construct fq over F_" << r.map.m.field().order() << "(t)\n";
  row("n", std::to_string(n));
  row("m", j["m"]["text"].get<std::string>());
  row("gamma", j["gamma"]["text"].get<std::string>());
  row("f(x)", "x^2 + (" + j["coefficients"][1]["text"].get<std::string>() + ")x + " + j["coefficients"][2]["text"].get<std::string>());
  const auto& cert = r.certificate;
  row("Q1", to_string(cert.q1) + " with v(m) = " + std::to_string(cert.c1));
  row("v_inf(m), v_inf(gamma)", std::to_string(cert.c2) + ", " + std::to_string(cert.v_inf_gamma));
  row("valuations verified", cert.verified ? "yes" : "no");
  row("altfund level n", to_string(r.altfund.verdict));
  for (std::size_t i = 0; i < r.later_levels.size(); ++i) {
    row("altfund level " + std::to_string(n + 1 + i), to_string(r.later_levels[i].verdict));
  }
  for (const auto& s : c.specializations) {
    row("specialize F_" + std::to_string(p) + "^" + std::to_string(s.j),
        std::to_string(s.points) + " points, " + std::to_string(s.full_cycles) + " irreducible");
  }
  write_json(json_out, j);
  return 0;
}

int cmd_primitive(unsigned n, std::uint64_t spot_bound, const Config& cfg, const std::optional<std::string>& json_out) {
  const auto ex = construct_primex(n, spot_bound, cfg.budget, cfg.limits());
  std::cout << "primitive example\n";
  row("n", std::to_string(n));
  row("m", to_string(ex.map.m));
  row("gamma", to_string(ex.map.gamma));
  row("q", to_string(ex.q));
  row("f^n(gamma)", to_string(ex.fn_gamma));
  print_certificate(ex.certificate);
  auto witness_line = [](const WitnessResult& w) {
    return w.prime ? std::to_string(*w.prime) + " (" + to_string(w.strategy) + ", " + std::to_string(w.candidates_tried) + " tried)"
                   : "not found (" + w.note + ")";
  };
  row("witness prime", witness_line(ex.witness));
  if (ex.crt_witness) row("CRT witness", witness_line(*ex.crt_witness));
  row("spot checks", std::to_string(ex.spot_checks.size()) + " primes <= " + std::to_string(spot_bound) + ", all reducible at level n");
  if (!ex.note.empty()) row("note", ex.note);
  write_json(json_out, report::primitive_json(ex, cfg));
  return 0;
}

int cmd_census(const std::string& gamma, const std::string& m, std::uint64_t bound, unsigned span_depth,
               const std::optional<std::string>& resume, const Config& cfg, const std::optional<std::string>& json_out) {
  const QuadMapZ f{parse_integer(gamma), parse_integer(m)};
  CensusOptions opt;
  opt.workers = cfg.workers;
  opt.prefix_depth = cfg.census_prefix;
  opt.kill_depth = cfg.census_kill;
  if (resume) opt.checkpoint_dir = *resume;
  opt.cancel = &g_cancel;
  std::signal(SIGINT, on_sigint);
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = census_scan(f, bound, opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::optional<SpanReport> span;
  if (span_depth > 0) span = span_analysis(f, span_depth, cfg.budget, cfg.limits());

  std::cout << "census of (x - " << gamma << ")^2 + " << gamma << " + " << m << " over odd primes <= " << bound << "\n";
  row("primes scanned", std::to_string(rep.primes_scanned));
  row("segments", std::to_string(rep.segments_done) + " / " + std::to_string(rep.segments_total));
  row("candidates (depth " + std::to_string(rep.prefix_depth) + ")", std::to_string(rep.candidates.size()));
  row("stable primes", u64s(rep.stable_primes));
  std::size_t killed = 0;
  for (const auto& c : rep.candidates) killed += c.kill_depth.has_value();
  row("killed by depth " + std::to_string(rep.kill_depth), std::to_string(killed));
  if (span) {
    row("span rank (k = " + std::to_string(span->k) + ")", std::to_string(span->rank) + (span->prefix_based ? " (prefix-based)" : ""));
    row("origin in span", span->origin_in_affine_span ? "yes" : "no");
  }
  row("wall time", std::to_string(secs) + " s");
  write_json(json_out, report::census_json(rep, span, cfg));
  if (!rep.complete()) {
    std::cerr << "interrupted: " << rep.segments_done << " of " << rep.segments_total << " segments done\n";
    return 130;
  }
  return 0;
}

int cmd_heuristic(std::uint64_t bound, const std::optional<std::string>& json_out) {
  const auto h = heuristic_sum(bound);
  std::cout << "sum of 2^(-sqrt p) over primes p <= " << bound << "\n";
  row("partial sum", h.partial_sum);
  row("evaluated up to", std::to_string(h.evaluated_up_to));
  row("truncation bound", h.truncation_bound);
  row("tail bound", h.tail_bound);
  write_json(json_out, report::heuristic_json(h));
  return 0;
}

int cmd_verify_report(const std::string& path, const Config& cfg, const std::optional<std::string>& json_out) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  const json saved = json::parse(in);
  const auto v = verify_construction_report(saved, cfg);
  std::cout << "verify " << path << "\n";
  row("reproduced", v.reproduced ? "yes" : "no");
  if (!v.reproduced) row("mismatched fields", join(v.mismatches));
  write_json(json_out, {{"mode", "report"}, {"report", path}, {"reproduced", v.reproduced}, {"mismatches", v.mismatches}, {"seed", report::str(cfg.seed)}});
  if (!v.reproduced) throw std::logic_error("saved report does not reproduce");
  return 0;
}

int cmd_verify_map(const std::string& gamma, const std::string& m, unsigned n, std::uint64_t prime_bound, const Config& cfg,
                   const std::optional<std::string>& json_out) {
  const QuadMapZ f{parse_integer(gamma), parse_integer(m)};
  const Limits limits = cfg.limits();
  const auto fund = check_fund(f, n, limits);
  const auto alt = n >= 2 ? std::optional(check_altfund(f, n, limits)) : std::nullopt;
  const auto numq = check_numfield_Q(f);
  const auto dd = check_deddomstab(f, cfg.budget);
  std::mt19937_64 rng(cfg.seed);
  json cycles = json::array();
  const bool factor_ok = (std::size_t{1} << n) <= cfg.factor_degree_cap;
  if (factor_ok) {
    for (std::uint64_t p : primes_up_to(prime_bound)) {
      if (p == 2) continue;
      const auto ct = frobenius_cycle_type(f, n, p, rng, cfg.factor_degree_cap);
      const bool reducible = check_deddom_reducibility(f, n, from_u64(p), limits);
      if (reducible == ct.full_cycle()) {
        throw std::logic_error("residue chain and factorization disagree at p = " + std::to_string(p));
      }
      cycles.push_back({{"p", report::str(p)}, {"degrees", ct.degrees}, {"separable", ct.separable}, {"irreducible", ct.full_cycle()}});
    }
  }
  const bool certified = fund.verdict == Verdict::IRREDUCIBLE_CERTIFIED || (alt && alt->verdict == Verdict::IRREDUCIBLE_CERTIFIED) ||
                         numq.kind != CertificateKind::NONE || dd.kind != CertificateKind::NONE;
  std::vector<std::string> seq;
  for (const auto& v : adjusted_sequence(f, n, limits)) seq.push_back(to_string(v));

  std::cout << "verify (x - " << gamma << ")^2 + " << gamma << " + " << m << " at level " << n << "\n";
  row("adjusted sequence", join(seq));
  row("fund", to_string(fund.verdict));
  if (alt) row("altfund", to_string(alt->verdict));
  print_certificate(numq);
  print_certificate(dd);
  if (factor_ok) row("cycle types", std::to_string(cycles.size()) + " odd primes <= " + std::to_string(prime_bound) + ", consistent");
  row("certified", certified ? "yes" : "no");

  json j{{"mode", "map"},
         {"map", report::map_json(f)},
         {"n", n},
         {"adjusted_sequence", seq},
         {"fund", report::criterion_json(fund)},
         {"altfund", alt ? report::criterion_json(*alt) : json()},
         {"certificates", {report::certificate_json(numq), report::certificate_json(dd)}},
         {"cycle_types", cycles},
         {"certified", certified},
         {"seed", report::str(cfg.seed)}};
  write_json(json_out, j);
  return certified ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterated quadratic maps: stability certificates, primitive examples and prime censuses"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::string> json_out;
  app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "PRNG seed for randomized factorization");
  app.add_option("--json", json_out, "write the machine-readable report to this file");

  auto* construct = app.add_subcommand("construct", "build a stable map whose n-th iterate is reducible modulo every prime");
  construct->require_subcommand(1);
  auto* cq = construct->add_subcommand("q", "over the rationals");
  unsigned n = 0;
  std::string m = "0";
  std::optional<std::string> s;
  bool auto_s = false;
  cq->add_option("--n", n, "iterate level")->required();
  cq->add_option("--m", m, "the parameter m")->required();
  auto* s_opt = cq->add_option("--s", s, "f^n(gamma), a perfect square");
  cq->add_flag("--auto-s", auto_s, "use the least admissible s")->excludes(s_opt);

  auto* cf = construct->add_subcommand("fq", "over F_q(t)");
  std::uint64_t p = 0;
  unsigned k = 1;
  std::optional<std::string> m_den;
  cf->add_option("--p", p, "characteristic (odd prime)")->required();
  cf->add_option("--k", k, "extension degree of the constant field")->check(CLI::PositiveNumber);
  cf->add_option("--n", n, "iterate level")->required();
  cf->add_option("--m", m, "numerator of m: comma-separated coefficients, ascending in t")->required();
  cf->add_option("--m-den", m_den, "denominator of m, same format");

  auto* prim = app.add_subcommand("primitive", "build a primitive example");
  std::uint64_t spot_bound = kSpotPrimeBound;
  prim->add_option("--n", n, "iterate level")->required();
  prim->add_option("--spot-bound", spot_bound, "spot-check primes up to this bound");

  auto* census = app.add_subcommand("census", "count primes modulo which the map is stable");
  std::string gamma = "0";
  std::uint64_t bound = 0;
  std::optional<unsigned> prefix, kill;
  unsigned span_depth = 6;
  std::optional<std::string> resume;
  census->add_option("--gamma", gamma, "critical point");
  census->add_option("--m", m, "the parameter m")->required();
  census->add_option("--bound", bound, "scan odd primes up to this bound")->required();
  census->add_option("--workers", workers, "worker threads");
  census->add_option("--depth,--prefix", prefix, "prefix depth of the Legendre screen");
  census->add_option("--kill", kill, "depth used to resolve candidates");
  census->add_option("--span-depth", span_depth, "orbit length for the square-class span analysis (0 to skip)");
  census->add_option("--resume", resume, "checkpoint directory; finished segments there are reused");

  auto* heur = app.add_subcommand("heuristic", "evaluate the sum of 2^(-sqrt p) over primes");
  heur->add_option("--bound", bound, "prime bound")->required();

  auto* verify = app.add_subcommand("verify", "recompute a saved construction report, or check a map directly");
  std::optional<std::string> report_path;
  std::uint64_t prime_bound = 100;
  verify->add_option("--report", report_path, "construction report to reproduce")->check(CLI::ExistingFile);
  verify->add_option("--gamma", gamma, "critical point");
  verify->add_option("--m", m, "the parameter m");
  verify->add_option("--n", n, "iterate level");
  verify->add_option("--primes", prime_bound, "compare against factorization modulo odd primes up to this bound");

  CLI11_PARSE(app, argc, argv);

  try {
    Config cfg;
    if (config_path) cfg.load_file(*config_path);
    cfg.apply_environment();
    if (seed) cfg.seed = *seed;
    if (workers) cfg.workers = *workers;
    if (prefix) cfg.census_prefix = *prefix;
    if (kill) cfg.census_kill = *kill;
    cfg.validate();

    if (*cq && !s && !auto_s) throw std::invalid_argument("construct q: give --s or --auto-s");
    if (*cq) return cmd_construct_q(n, m, auto_s ? std::nullopt : s, cfg, json_out);
    if (*cf) return cmd_construct_fq(p, k, n, m, m_den, cfg, json_out);
    if (*prim) return cmd_primitive(n, spot_bound, cfg, json_out);
    if (*census) return cmd_census(gamma, m, bound, span_depth, resume, cfg, json_out);
    if (*heur) return cmd_heuristic(bound, json_out);
    if (*verify) {
      if (report_path) return cmd_verify_report(*report_path, cfg, json_out);
      if (n == 0) throw std::invalid_argument("verify: give --report, or --gamma/--m/--n");
      return cmd_verify_map(gamma, m, n, prime_bound, cfg, json_out);
    }
  } catch (const HypothesisViolation& e) {
    std::cerr << "hypothesis violated [" << e.clause() << "]: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "limit exceeded: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "out of range: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal check failed: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
