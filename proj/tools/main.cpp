// szegolab command line: pseudoconvexity scan, derivative certificate,
// moment tables, kernel evaluation, identity checks, irregularity scans and
// the full report. Exit codes: 0 success/PASS, 1 mathematical check failed,
// 2 configuration error.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "szegolab/report.hpp"
#include "szegolab/version.hpp"

namespace {

using namespace szegolab;

constexpr int kExitPass = 0;
constexpr int kExitMathFail = 1;
constexpr int kExitConfig = 2;

struct CliOptions {
  double A = 0, B = 1, alpha = 1;
  unsigned precision_bits = 256;
  double tol = 1e-30;
  std::string cache_dir;
  std::string format = "json";
  std::string out;
  std::string weight = "paper";
  int j = 0;
  std::string p_csv = "1.3333333333333333,2,4";
  std::string n_csv = "16,64,256,1024,4096";
  int max_order = 8;
  unsigned grid = 10000;
  double growth_threshold = 5.0;
  double plateau_tol = 0.01;
};

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  for (double v : parse_double_list(csv)) out.push_back(static_cast<int>(v));
  return out;
}

RunConfig to_config(const CliOptions& o) {
  RunConfig c;
  c.params.A = Rational(o.A);
  c.params.B = Rational(o.B);
  c.params.alpha = Rational(o.alpha);
  c.precision.significand_bits = o.precision_bits;
  c.precision.target_rel_err = o.tol;
  c.cache_dir = o.cache_dir;
  c.format = o.format;
  c.out = o.out;
  c.weight_kind = o.weight;
  c.j = o.j;
  c.p_list = parse_double_list(o.p_csv);
  c.n_list = parse_int_list(o.n_csv);
  c.max_order = o.max_order;
  c.grid_size = o.grid;
  c.scan.growth_threshold = o.growth_threshold;
  c.scan.plateau_rel = o.plateau_tol;
  c.validate();
  return c;
}

void add_common_flags(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--A", o.A, "power of (1-|z|^2) in the weight");
  cmd->add_option("--B", o.B, "exponential rate of the weight");
  cmd->add_option("--alpha", o.alpha, "exponential flatness order");
  cmd->add_option("--precision-bits", o.precision_bits, "significand bits (>= 128)");
  cmd->add_option("--tol", o.tol, "target relative quadrature error");
  cmd->add_option("--cache-dir", o.cache_dir, "moment table cache directory");
  cmd->add_option("--format", o.format, "output format: json, csv or markdown");
  cmd->add_option("--out", o.out, "output file (default stdout)");
}

int cmd_pseudoconvexity(const CliOptions& o) {
  RunConfig c = to_config(o);
  PrecisionScope scope(c.precision);
  PseudoconvexityResult res = pseudoconvexity_scan(c.params, c.grid_size);
  std::ostringstream os;
  os << "{\n  \"min_laplacian\": \"" << real_to_string(res.min_value, 20)
     << "\",\n  \"argmin_s\": \"" << real_to_string(res.argmin_s, 12)
     << "\",\n  \"grid_size\": " << res.grid_size
     << ",\n  \"pass\": " << (res.pass ? "true" : "false") << "\n}";
  emit_output(c, os.str());
  return res.pass ? kExitPass : kExitMathFail;
}

int cmd_dz_certify(const CliOptions& o) {
  RunConfig c = to_config(o);
  PrecisionScope scope(c.precision);
  if (!c.params.symbolic_supported()) {
    std::cerr << "unsupported parameters: the exact certificate needs A a "
                 "nonnegative integer, alpha a positive integer and B rational; "
                 "running the numeric sign diagnostic instead\n";
    auto diag = numeric_sign_diagnostic(c.params, std::min(c.max_order, 4), c.precision);
    for (const auto& d : diag)
      std::cerr << "  order " << d.order << ": " << d.violations << "/" << d.points
                << " sign violations on [" << d.from_s << ", " << d.to_s << "]\n";
    return kExitConfig;
  }
  DzCertificate cert = dz_certify(c.params, c.max_order);
  emit_output(c, certificate_to_json(cert));
  return cert.valid ? kExitPass : kExitMathFail;
}

int cmd_moments(const CliOptions& o, int n_max) {
  RunConfig c = to_config(o);
  PrecisionScope scope(c.precision);
  TableStore store = c.cache_dir.empty() ? TableStore() : TableStore(c.cache_dir);
  MomentTable t = store.enabled() ? store.get_or_compute(c.params, c.j, n_max, c.precision)
                                  : moment_table(c.params, c.j, n_max, c.precision);
  emit_output(c, c.format == "csv" ? moment_table_to_csv(t) : moment_table_to_json(t));
  return kExitPass;
}

int cmd_kernel_eval(const CliOptions& o, const std::vector<double>& z,
                    const std::vector<double>& t, double kernel_tol) {
  RunConfig c = to_config(o);
  PrecisionScope scope(c.precision);
  if (z.size() != 4 || t.size() != 4)
    fail(errc::config_error, "--z and --t need four comma-separated reals each");
  TableStore store = c.cache_dir.empty() ? TableStore() : TableStore(c.cache_dir);
  MomentTableProvider tables(c.params, c.precision, c.table_n_max, &store);
  SzegoEval eval = szego_kernel_eval(Complex(z[0], z[1]), Complex(z[2], z[3]),
                                     Complex(t[0], t[1]), Complex(t[2], t[3]),
                                     kernel_tol, tables);
  std::ostringstream os;
  os << "{\n  \"value_re\": \"" << real_to_string(eval.value.re, 24)
     << "\",\n  \"value_im\": \"" << real_to_string(eval.value.im, 24)
     << "\",\n  \"tail_bound\": \"" << real_to_string(eval.tail_bound, 8)
     << "\",\n  \"n_truncation\": " << eval.n_truncation
     << ",\n  \"j_truncation\": " << eval.j_truncation << "\n}";
  emit_output(c, os.str());
  return kExitPass;
}

int cmd_identity_checks(const CliOptions& o) {
  RunConfig c = to_config(o);
  IdentityCheckResults res = run_identity_checks(c);
  emit_output(c, identity_checks_to_json(res));
  return res.all_pass ? kExitPass : kExitMathFail;
}

int cmd_irregularity(const CliOptions& o) {
  RunConfig c = to_config(o);
  PrecisionScope scope(c.precision);
  auto weight = c.make_weight();
  bool ok = true;
  std::ostringstream all;
  all << (c.format == "csv" ? "" : "[\n");
  bool first = true;
  for (double p : c.p_list) {
    IrregularityReport rep =
        irregularity_scan(*weight, Real(p), c.n_list, c.precision, c.scan);
    if (std::abs(p - 2.0) < 1e-12) {
      for (const Real& r : rep.r_values) ok = ok && abs(r - 1) <= Real(1e-18);
    } else if (c.weight_kind == "paper") {
      ok = ok && rep.verdict == ScanVerdict::UNBOUNDED_TREND;
    } else {
      ok = ok && rep.verdict == ScanVerdict::BOUNDED_PLATEAU;
    }
    if (c.format == "csv") {
      all << "# p=" << p << " verdict=" << verdict_name(rep.verdict) << "\n"
          << irregularity_to_csv(rep) << "\n";
    } else {
      if (!first) all << ",\n";
      all << irregularity_to_json(rep);
      first = false;
    }
  }
  if (c.format != "csv") all << "\n]";
  emit_output(c, all.str());
  return ok ? kExitPass : kExitMathFail;
}

int cmd_report(const CliOptions& o) {
  RunConfig c = to_config(o);
  FullReport rep = run_full_report(c);
  std::string payload;
  if (c.format == "markdown")
    payload = report_to_markdown(rep);
  else if (c.format == "csv")
    payload = report_to_csv(rep);
  else
    payload = report_to_json(rep);
  emit_output(c, payload);
  return rep.overall_pass ? kExitPass : kExitMathFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Szego projection irregularity laboratory"};
  app.set_version_flag("--version", szegolab::kVersion);
  app.set_config("--config", "", "flat key=value config file; flags override");
  app.require_subcommand(1);

  CliOptions o;
  int n_max = 16;
  std::vector<double> z_point{0.3, 0.0, 0.01, 0.0};
  std::vector<double> t_point{0.2, 0.1, 0.005, 0.0};
  double kernel_tol = 1e-20;

  auto* pseudo = app.add_subcommand("pseudoconvexity", "scan the Laplacian of -log phi");
  add_common_flags(pseudo, o);
  pseudo->add_option("--grid", o.grid, "grid points, refined toward the boundary");

  auto* dz = app.add_subcommand("dz-certify", "exact derivative-sign certificate");
  add_common_flags(dz, o);
  dz->add_option("--max-order", o.max_order, "highest derivative order");

  auto* moments = app.add_subcommand("moments", "moment table for inflation index j");
  add_common_flags(moments, o);
  moments->add_option("--j", o.j, "inflation index");
  moments->add_option("--n-max", n_max, "largest moment index");

  auto* kernel = app.add_subcommand("kernel-eval", "evaluate the boundary kernel");
  add_common_flags(kernel, o);
  kernel->add_option("--z", z_point, "interior point z1re,z1im,z2re,z2im")
      ->delimiter(',')
      ->expected(4);
  kernel->add_option("--t", t_point, "interior point t1re,t1im,t2re,t2im")
      ->delimiter(',')
      ->expected(4);
  kernel->add_option("--kernel-tol", kernel_tol, "relative truncation tolerance");

  auto* identity = app.add_subcommand("identity-checks", "inflation + lift identities");
  add_common_flags(identity, o);

  auto* irreg = app.add_subcommand("irregularity", "R_n(p) lower-bound scans");
  add_common_flags(irreg, o);
  irreg->add_option("--p", o.p_csv, "comma list of exponents");
  irreg->add_option("--n", o.n_csv, "comma list of mode indices");
  irreg->add_option("--weight", o.weight, "paper or poly2 (contrast)");
  irreg->add_option("--growth-threshold", o.growth_threshold,
                    "final R_n above this counts as unbounded");
  irreg->add_option("--plateau-tol", o.plateau_tol, "plateau detection tolerance");

  auto* report = app.add_subcommand("report", "full pipeline report");
  add_common_flags(report, o);
  report->add_option("--p", o.p_csv, "comma list of exponents");
  report->add_option("--n", o.n_csv, "comma list of mode indices");
  report->add_option("--max-order", o.max_order, "certificate order");
  report->add_option("--grid", o.grid, "pseudoconvexity grid");
  report->add_option("--weight", o.weight, "paper or poly2 (contrast)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (pseudo->parsed()) return cmd_pseudoconvexity(o);
    if (dz->parsed()) return cmd_dz_certify(o);
    if (moments->parsed()) return cmd_moments(o, n_max);
    if (kernel->parsed()) return cmd_kernel_eval(o, z_point, t_point, kernel_tol);
    if (identity->parsed()) return cmd_identity_checks(o);
    if (irreg->parsed()) return cmd_irregularity(o);
    if (report->parsed()) return cmd_report(o);
  } catch (const szegolab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case szegolab::errc::config_error:
      case szegolab::errc::unsupported_params:
        return kExitConfig;
      default:
        return kExitMathFail;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMathFail;
  }
  return kExitConfig;
}
