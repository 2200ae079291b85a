// primeprod: desk-scale experiments on products of primes in residue classes.
//
// Subcommands map onto the library's verification pipelines; every run is
// deterministic given its flags and seed, rows are ordered by input order,
// and data goes to --output (atomic) or stdout while logs stay on stderr.
//
// Exit codes: 0 success / all checks pass, 1 a verified-false finding,
// 2 usage error, 3 resource limit.

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>

#include "primeprod/analytic.hpp"
#include "primeprod/charfourier.hpp"
#include "primeprod/errors.hpp"
#include "primeprod/groupcomb.hpp"
#include "primeprod/io.hpp"
#include "primeprod/modgroup.hpp"
#include "primeprod/primesets.hpp"
#include "primeprod/selberg.hpp"
#include "primeprod/suppbound.hpp"

using namespace primeprod;

namespace {

constexpr std::uint64_t kModulusCeiling = 1'000'000;

struct QRange {
  std::uint64_t lo = 0, hi = 0;
};

QRange parse_q_range(const std::string& s) {
  QRange r;
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoull(s);
    } else {
      r.lo = std::stoull(s.substr(0, dots));
      r.hi = std::stoull(s.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError("--q", "expected N or LO..HI");
  }
  if (r.lo < 1 || r.lo > r.hi) throw CLI::ValidationError("--q", "need 1 <= lo <= hi");
  if (r.hi > kModulusCeiling)
    throw ResourceLimitError("modulus above the desk-scale ceiling 10^6");
  return r;
}

void emit(const std::string& data, const std::string& output, bool to_stdout) {
  if (!output.empty()) {
    atomic_write(output, data);
    std::cerr << "wrote " << output << "\n";
  }
  if (to_stdout || output.empty()) std::cout << data;
}

int run_cover(const QRange& range, int k, double alpha, bool report_only,
              const std::string& output, bool to_stdout) {
  CsvTable t;
  t.header = {"q", "phi", "k", "alpha", "ek_size", "ratio", "covered"};
  const long long n = static_cast<long long>(range.hi - range.lo + 1);
  std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(n));
  std::vector<char> covered(static_cast<std::size_t>(n), 1);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    std::uint64_t q = range.lo + static_cast<std::uint64_t>(i);
    auto g = UnitGroup::make(q);
    double x = std::pow(double(q), alpha);
    CoverResult res = verify_product_cover(g, k, x);
    covered[static_cast<std::size_t>(i)] = res.covered ? 1 : 0;
    rows[static_cast<std::size_t>(i)] = {
        std::to_string(q),        std::to_string(g->phi()),
        std::to_string(k),        fmt12(alpha),
        std::to_string(res.ek_size),
        fmt12(double(res.ek_size) / double(g->phi())),
        bool_str(res.covered)};
  }
  t.rows = std::move(rows);
  emit(t.str(), output, to_stdout);
  bool all = true;
  for (char c : covered) all = all && c;
  if (!all)
    std::cerr << "uncovered classes found in " << (range.hi - range.lo + 1)
              << " moduli\n";
  return (all || report_only) ? 0 : 1;
}

int run_density(const QRange& range, int k, double alpha, bool union_mode,
                const std::string& output, bool to_stdout) {
  CsvTable t;
  t.header = {"q", "phi", "k", "alpha", "size", "ratio"};
  const long long n = static_cast<long long>(range.hi - range.lo + 1);
  std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    std::uint64_t q = range.lo + static_cast<std::uint64_t>(i);
    auto g = UnitGroup::make(q);
    DensityReport r =
        union_mode ? union_density_report(g, alpha) : density_report(g, k, alpha);
    rows[static_cast<std::size_t>(i)] = {
        std::to_string(q),      std::to_string(r.phi),
        union_mode ? "1+2" : std::to_string(k), fmt12(alpha),
        std::to_string(r.size), fmt12(r.ratio)};
  }
  t.rows = std::move(rows);
  emit(t.str(), output, to_stdout);
  return 0;
}

int run_theorem1(const QRange& range, double epsilon, bool cube_free_only,
                 const std::string& output, bool to_stdout) {
  CsvTable t;
  t.header = {"q",       "cube_free",        "epsilon",      "D",
              "z",       "lower_bound_ratio", "actual_ratio", "spectral_margin",
              "first_term_ratio", "sound"};
  std::vector<std::uint64_t> qs;
  for (std::uint64_t q = range.lo; q <= range.hi; ++q) {
    if (q < 16) continue;  // too small for a meaningful level
    if (cube_free_only && !factorize(q).cube_free) continue;
    qs.push_back(q);
  }
  std::vector<std::vector<std::string>> rows(qs.size());
  std::vector<char> sound(qs.size(), 1);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(qs.size()); ++i) {
    auto g = UnitGroup::make(qs[static_cast<std::size_t>(i)]);
    Theorem1Row row = theorem1_pipeline(g, epsilon);
    bool ok = row.lower_bound_ratio <= row.actual_ratio + 1e-12;
    sound[static_cast<std::size_t>(i)] = ok ? 1 : 0;
    rows[static_cast<std::size_t>(i)] = {std::to_string(row.q),
                                         bool_str(row.cube_free),
                                         fmt12(row.epsilon),
                                         fmt12(row.D),
                                         fmt12(row.z),
                                         fmt12(row.lower_bound_ratio),
                                         fmt12(row.actual_ratio),
                                         fmt12(row.spectral_margin),
                                         fmt12(row.first_term_ratio),
                                         bool_str(ok)};
  }
  t.rows = std::move(rows);
  emit(t.str(), output, to_stdout);
  for (char c : sound)
    if (!c) return 1;
  return 0;
}

int run_kneser(std::uint64_t max_order, bool exhaustive, std::uint64_t samples,
               std::uint64_t seed, bool taovu, const std::string& output,
               bool to_stdout) {
  Json report;
  std::uint64_t checked = 0, violations = 0;
  if (exhaustive) {
    if (max_order > 20)
      throw CLI::ValidationError("--max-order", "exhaustive mode needs <= 20");
    for (std::uint64_t n = 1; n <= max_order; ++n) {
      for (auto& shape : abelian_group_shapes(n)) {
        auto g = AbelianGroup::make(shape);
        for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
          Subset a(g);
          for (std::uint64_t b = 0; b < n; ++b)
            if (mask & (std::uint64_t(1) << b)) a.add(static_cast<std::uint32_t>(b));
          ++checked;
          if (!kneser_check(a).inequality_holds) ++violations;
        }
      }
    }
    report["exhaustive_max_order"] = max_order;
  }
  if (samples > 0) {
    std::vector<char> bad(samples, 0);
#pragma omp parallel for schedule(dynamic, 64)
    for (long long i = 0; i < static_cast<long long>(samples); ++i) {
      std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));  // per-sample stream
      std::uint64_t n = 2 + rng() % (max_order - 1);
      auto shapes = abelian_group_shapes(n);
      auto g = AbelianGroup::make(shapes[rng() % shapes.size()]);
      Subset a = random_subset(g, rng);
      if (!kneser_check(a).inequality_holds) bad[static_cast<std::size_t>(i)] = 1;
    }
    for (char c : bad)
      if (c) ++violations;
    checked += samples;
    report["random_samples"] = samples;
    report["seed"] = seed;
  }
  report["checked"] = checked;
  report["violations"] = violations;
  report["inequality_holds"] = violations == 0;

  if (taovu) {
    Json tv = Json::array();
    for (std::uint64_t n : {5, 8, 11}) {
      const std::size_t k = (n - 2) / 3;
      for (auto& shape : abelian_group_shapes(n)) {
        auto g = AbelianGroup::make(shape);
        std::uint64_t exceptional = 0;
        std::vector<std::uint32_t> pick(k + 1);
        auto rec = [&](auto&& self, std::size_t pos, std::uint32_t start) -> void {
          if (pos == k + 1) {
            Subset b(g);
            for (auto x : pick) b.add(x);
            if (taovu_classify(b).is_exceptional_structure) ++exceptional;
            return;
          }
          for (std::uint32_t x = start; x < n; ++x) {
            pick[pos] = x;
            self(self, pos + 1, x + 1);
          }
        };
        rec(rec, 0, 0);
        Json row;
        row["order"] = n;
        row["shape"] = shape;
        row["cyclic"] = g->is_cyclic();
        row["exceptional_count"] = exceptional;
        tv.push_back(row);
      }
    }
    report["taovu"] = tv;
  }
  emit(report.dump(2) + "\n", output, to_stdout);
  return violations == 0 ? 0 : 1;
}

int run_certificates(bool cosine, bool thm2, double grid_step, double tol,
                     std::uint64_t grid, const std::string& output, bool to_stdout) {
  Json report;
  bool finding = false;
  if (cosine) {
    CosineCertificate c = thm3_cosine_certificate(grid_step);
    Json j;
    j["interval"] = {sig12(c.lo), sig12(c.hi)};
    j["grid_step"] = sig12(c.grid_step);
    j["min_value"] = sig12(c.min_value);
    j["argmin"] = sig12(c.argmin);
    j["value_at_half"] = sig12(c.value_at_half);
    j["positive"] = c.positive_on_interval;
    report["cosine"] = j;
    if (!c.positive_on_interval) finding = true;
  }
  if (thm2) {
    Json cases = Json::array();
    for (int i : {0, 2, 4, 6}) {
      std::uint64_t bad = 0;
      std::vector<std::string> first_violation;
      for (std::uint64_t a = 0; a <= grid; ++a) {
        double total = 1.0 - tol + 2.0 * tol * double(a) / double(grid);
        for (std::uint64_t b = 0; b <= grid; ++b) {
          double M = total * double(b) / double(grid);
          CaseCertificate cert = thm2_case_certificate(i, 1, M, total - M, tol);
          if (!cert.contradiction_found) ++bad;
        }
      }
      Json row;
      row["i"] = i;
      row["tol"] = sig12(tol);
      row["grid"] = grid;
      row["points_without_contradiction"] = bad;
      row["all_contradicted"] = bad == 0;
      // representative inequality listing at the nominal point M = N = 1/2
      CaseCertificate rep = thm2_case_certificate(i, 1, 0.5, 0.5, tol);
      Json iq = Json::array();
      for (auto& ineq : rep.inequalities) {
        Json e;
        e["name"] = ineq.name;
        e["lhs"] = sig12(ineq.lhs);
        e["rhs"] = sig12(ineq.rhs);
        e["satisfied"] = ineq.satisfied;
        iq.push_back(e);
      }
      row["inequalities_at_center"] = iq;
      row["combined_bound"] = sig12(rep.combined_bound);
      cases.push_back(row);
      if (bad > 0) finding = true;
    }
    report["thm2_cases"] = cases;
  }
  emit(report.dump(2) + "\n", output, to_stdout);
  return finding ? 1 : 0;
}

int run_charsum(const QRange& range, bool per_char, const std::string& output,
                bool to_stdout) {
  CsvTable t;
  if (per_char)
    t.header = {"q",   "chi_index", "max_partial", "argmax_N",
                "pv_bound", "pv_ok",  "burgess_r1",  "burgess_r2",
                "burgess_r3", "burgess_r4"};
  else
    t.header = {"q",   "phi",       "max_partial", "argmax_chi", "argmax_N",
                "pv_bound", "pv_ok", "burgess_r1",  "burgess_r2", "burgess_r3",
                "burgess_r4"};
  bool all_ok = true;
  for (std::uint64_t q = range.lo; q <= range.hi; ++q) {
    auto g = UnitGroup::make(q);
    if (g->phi() < 2) continue;
    auto scans = char_sum_scan_all(g);
    if (per_char) {
      for (std::uint32_t i = 1; i < scans.size(); ++i) {
        const auto& s = scans[i];
        bool ok = s.max_partial <= s.pv_bound;
        all_ok = all_ok && ok;
        t.rows.push_back({std::to_string(q), std::to_string(i), fmt12(s.max_partial),
                          std::to_string(s.argmax_N), fmt12(s.pv_bound), bool_str(ok),
                          fmt12(s.burgess_envelope[0]), fmt12(s.burgess_envelope[1]),
                          fmt12(s.burgess_envelope[2]), fmt12(s.burgess_envelope[3])});
      }
    } else {
      std::uint32_t arg = 1;
      for (std::uint32_t i = 2; i < scans.size(); ++i)
        if (scans[i].max_partial > scans[arg].max_partial) arg = i;
      const auto& s = scans[arg];
      bool ok = true;
      for (std::uint32_t i = 1; i < scans.size(); ++i)
        ok = ok && scans[i].max_partial <= scans[i].pv_bound;
      all_ok = all_ok && ok;
      t.rows.push_back({std::to_string(q), std::to_string(g->phi()),
                        fmt12(s.max_partial), std::to_string(arg),
                        std::to_string(s.argmax_N), fmt12(s.pv_bound), bool_str(ok),
                        fmt12(s.burgess_envelope[0]), fmt12(s.burgess_envelope[1]),
                        fmt12(s.burgess_envelope[2]), fmt12(s.burgess_envelope[3])});
    }
  }
  emit(t.str(), output, to_stdout);
  return all_ok ? 0 : 1;
}

int run_selberg_report(const QRange& range, double d_exponent,
                       const std::string& output, bool to_stdout) {
  Json arr = Json::array();
  for (std::uint64_t q = range.lo; q <= range.hi; ++q) {
    if (q < 16) continue;
    auto g = UnitGroup::make(q);
    double D = std::pow(double(q), d_exponent);
    if (D < 4.0) continue;
    SieveWeights w(g, D);
    GroupFunction fz = indicator_fz(g, w.z());
    auto wt = w.weight_table();
    bool upper_ok = true;
    for (std::uint64_t n = 1; n < q && upper_ok; ++n)
      if (g->is_unit(n) && wt[n] < fz.at_residue(n).real() - 1e-12) upper_ok = false;
    WellApproxReport wa = well_approx_ratio(w);
    FourierScanReport scan = sieve_fourier_scan(w);
    Json row;
    row["q"] = q;
    row["D"] = sig12(D);
    row["z"] = sig12(w.z());
    row["cube_free"] = g->cube_free();
    row["Gz"] = sig12(w.Gz());
    row["max_lambda"] = sig12(w.max_abs_lambda());
    row["w_upper_bound_ok"] = upper_ok;
    row["ratio_vs_2logq_over_logD"] = sig12(wa.ratio / wa.reference);
    row["max_nontrivial_fourier"] = sig12(scan.max_nontrivial);
    arr.push_back(row);
  }
  emit(arr.dump(2) + "\n", output, to_stdout);
  return 0;
}

int run_fourier_dump(std::uint64_t q, double z, const std::string& output,
                     bool to_stdout) {
  auto g = UnitGroup::make(q);
  GroupFunction f = indicator_fz(g, z);
  Spectrum s = transform(f);
  Json j;
  j["q"] = q;
  j["z"] = sig12(z);
  // residue -> [re, im]; null marks residues outside the unit group
  Json values = Json::array();
  for (std::uint64_t n = 0; n < q; ++n) {
    if (!g->is_unit(n)) {
      values.push_back(nullptr);
    } else {
      auto v = f.at_residue(n);
      values.push_back({sig12(v.real()), sig12(v.imag())});
    }
  }
  j["values"] = values;
  Json spec = Json::array();
  for (std::uint32_t i = 0; i < s.size(); ++i) {
    Json e;
    e["exponents"] = g->character_at(i).exponents();
    e["coef"] = {sig12(s[i].real()), sig12(s[i].imag())};
    spec.push_back(e);
  }
  j["spectrum"] = spec;
  emit(j.dump(2) + "\n", output, to_stdout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"products of primes in residue classes: desk-scale verifications"};
  app.require_subcommand(1);
  app.fallthrough();  // --threads / --seed may follow the subcommand

  std::string q_str, output;
  bool to_stdout = false;
  int threads = 0;
  std::uint64_t seed = 1;
  app.add_option("--threads", threads, "worker threads (0 = library default)");
  app.add_option("--seed", seed, "seed for randomized suites")->capture_default_str();

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--output", output, "write data to this file (atomic)");
    sub->add_flag("--stdout", to_stdout, "also print data to stdout");
  };

  // cover
  auto* cover = app.add_subcommand("cover", "check E_k(q^alpha) = G over a q range");
  int k = 6;
  double alpha = 1.0;
  bool report_only = false;
  cover->add_option("--q", q_str, "modulus or range LO..HI")->required();
  cover->add_option("--k", k, "number of prime factors")->capture_default_str();
  cover->add_option("--alpha", alpha, "prime bound exponent")->capture_default_str();
  cover->add_flag("--report-only", report_only, "always exit 0 on success");
  add_io(cover);

  // density
  auto* density = app.add_subcommand("density", "report |E_k(q^alpha)| / phi(q)");
  bool union_mode = false;
  density->add_option("--q", q_str)->required();
  density->add_option("--k", k)->capture_default_str();
  density->add_option("--alpha", alpha)->capture_default_str();
  density->add_flag("--union", union_mode, "report |E_1 u E_2| instead");
  add_io(density);

  // theorem1
  auto* thm1 = app.add_subcommand("theorem1", "support lower-bound pipeline rows");
  double epsilon = 0.05;
  bool cube_free_only = false;
  thm1->add_option("--q", q_str)->required();
  thm1->add_option("--epsilon", epsilon)->capture_default_str();
  thm1->add_flag("--cube-free-only", cube_free_only, "skip non-cube-free moduli");
  add_io(thm1);

  // kneser-suite
  auto* kneser = app.add_subcommand("kneser-suite", "product-set inequality checks");
  std::uint64_t max_order = 16, samples = 0;
  bool exhaustive = false, taovu = false;
  kneser->add_option("--max-order", max_order)->capture_default_str();
  kneser->add_flag("--exhaustive", exhaustive, "all subsets of all groups <= max-order");
  kneser->add_option("--random", samples, "random subset samples");
  kneser->add_flag("--taovu", taovu, "classify exceptional sets at orders 5, 8, 11");
  add_io(kneser);

  // certificates
  auto* certs = app.add_subcommand("certificates", "cosine and case certificates");
  bool cosine = false, thm2 = false;
  double grid_step = 1e-5, tol = 0.05;
  std::uint64_t grid = 1000;
  certs->add_flag("--cosine", cosine, "scan the cosine combination");
  certs->add_flag("--thm2", thm2, "order-8 quotient case certificates");
  certs->add_option("--grid-step", grid_step)->capture_default_str();
  certs->add_option("--tol", tol)->capture_default_str();
  certs->add_option("--grid", grid, "mass-grid resolution per axis")
      ->capture_default_str();
  add_io(certs);

  // charsum
  auto* charsum = app.add_subcommand("charsum", "partial character-sum scans");
  bool per_char = false;
  charsum->add_option("--q", q_str)->required();
  charsum->add_flag("--per-char", per_char, "one row per character");
  add_io(charsum);

  // selberg-report
  auto* selrep = app.add_subcommand("selberg-report", "sieve weight reports per q");
  double d_exponent = 0.7;
  selrep->add_option("--q", q_str)->required();
  selrep->add_option("--d-exponent", d_exponent)->capture_default_str();
  add_io(selrep);

  // fourier-dump
  auto* fdump = app.add_subcommand("fourier-dump", "dump f_z and its spectrum as JSON");
  double z_param = 1.0;
  fdump->add_option("--q", q_str)->required();
  fdump->add_option("--z", z_param)->capture_default_str();
  add_io(fdump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (cover->parsed())
      return run_cover(parse_q_range(q_str), k, alpha, report_only, output, to_stdout);
    if (density->parsed())
      return run_density(parse_q_range(q_str), k, alpha, union_mode, output, to_stdout);
    if (thm1->parsed())
      return run_theorem1(parse_q_range(q_str), epsilon, cube_free_only, output,
                          to_stdout);
    if (kneser->parsed()) {
      if (!exhaustive && samples == 0)
        throw CLI::ValidationError("kneser-suite", "need --exhaustive or --random N");
      if (samples > 0 && max_order < 2)
        throw CLI::ValidationError("kneser-suite", "--random needs --max-order >= 2");
      return run_kneser(max_order, exhaustive, samples, seed, taovu, output, to_stdout);
    }
    if (certs->parsed()) {
      if (!cosine && !thm2)
        throw CLI::ValidationError("certificates", "need --cosine or --thm2");
      return run_certificates(cosine, thm2, grid_step, tol, grid, output, to_stdout);
    }
    if (charsum->parsed())
      return run_charsum(parse_q_range(q_str), per_char, output, to_stdout);
    if (selrep->parsed())
      return run_selberg_report(parse_q_range(q_str), d_exponent, output, to_stdout);
    if (fdump->parsed()) {
      QRange r = parse_q_range(q_str);
      return run_fourier_dump(r.lo, z_param, output, to_stdout);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
