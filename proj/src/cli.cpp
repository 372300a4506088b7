#include "kac/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "kac/builders.hpp"
#include "kac/fourier.hpp"
#include "kac/io.hpp"
#include "kac/minimizer.hpp"

namespace kac {

namespace fs = std::filesystem;

namespace {

int parse_order(const std::string& s) {
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || n < 1) throw Error(ErrorCode::ParseError, "bad group order '" + s + "'");
  return n;
}

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + '"';
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  f << text;
}

nlohmann::json tol_json(const ToleranceConfig& t) {
  return {{"eq_tol", t.eq_tol}, {"rank_tol", t.rank_tol}, {"entropy_floor", t.entropy_floor}};
}

std::string num(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

bool wants(const std::string& suite, const char* part) { return suite == "all" || suite == part; }

std::vector<BlockOperator> load_elements(const RunConfig& c, const FiniteKacAlgebra& k) {
  std::vector<BlockOperator> out;
  for (const auto& path : c.elements) {
    BlockOperator x = element_from_json(read_json_file(path));
    k.check_element(x);
    out.push_back(std::move(x));
  }
  return out;
}

// Histogram with `bins` equal-width bins over [lo, hi].
std::string histogram_csv(const std::vector<double>& values, int bins) {
  std::ostringstream out;
  out << "bin_lo,bin_hi,count\n" << std::setprecision(17);
  if (values.empty()) return out.str();
  const double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  if (hi <= lo) hi = lo + 1;
  std::vector<int> count(static_cast<std::size_t>(bins), 0);
  for (double v : values) {
    int b = static_cast<int>((v - lo) / (hi - lo) * bins);
    ++count[static_cast<std::size_t>(std::clamp(b, 0, bins - 1))];
  }
  for (int b = 0; b < bins; ++b)
    out << lo + (hi - lo) * b / bins << ',' << lo + (hi - lo) * (b + 1) / bins << ',' << count[static_cast<std::size_t>(b)]
        << '\n';
  return out.str();
}

struct Loaded {
  FiniteKacAlgebra algebra;
  std::vector<BlockOperator> elements;
};

// Exit code 2 on any load problem, with the reason logged.
bool load_inputs(const RunConfig& c, std::ostream& log, Loaded& out) {
  try {
    c.tol.validate();
    out.algebra = load_algebra(c.algebra);
    out.elements = load_elements(c, out.algebra);
    return true;
  } catch (const std::exception& e) {
    log << "load failed: " << e.what() << '\n';
    return false;
  }
}

}  // namespace

FiniteKacAlgebra load_algebra(const std::string& source) {
  const auto colon = source.find(':');
  const std::string head = source.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : source.substr(colon + 1);

  if (head == "zn") return function_algebra(cyclic_group(parse_order(arg)));
  if (head == "zn-group") return group_algebra(cyclic_group(parse_order(arg)));
  if (head == "file") return algebra_from_json(read_json_file(arg), fs::path(arg).stem().string());
  if (head == "table") return function_algebra(group_table_from_json(read_json_file(arg), fs::path(arg).stem().string()));
  if (head == "table-group")
    return group_algebra(group_table_from_json(read_json_file(arg), fs::path(arg).stem().string()));
  for (const char* g : {"s3", "d4", "q8"}) {
    if (source == std::string(g) + "-function") return function_algebra(builtin_group(g));
    if (source == std::string(g) + "-group") return group_algebra(builtin_group(g));
  }
  throw Error(ErrorCode::ParseError, "unknown algebra source '" + source + "'");
}

int cmd_verify(const RunConfig& c, std::ostream& log) {
  Loaded in;
  if (!load_inputs(c, log, in)) return 2;
  const auto& k = in.algebra;

  nlohmann::json report = {{"command", "verify"},  {"algebra", c.algebra}, {"name", k.name()},
                           {"dims", k.dims()},     {"seed", c.seed},       {"samples", c.samples},
                           {"tolerance", tol_json(c.tol)}};
  std::ostringstream rows;
  rows << "algebra,sample_id,inequality_name,lhs,rhs,violation\n" << std::setprecision(17);
  bool ok = true;

  auto axiom_rows = [&](const FiniteKacAlgebra& a, const std::string& prefix) {
    const AxiomReport ax = verify_axioms(a, c.tol);
    nlohmann::json j;
    for (const auto& r : ax.residuals) {
      j[r.name] = r.residual;
      rows << csv_field(c.algebra) << ",-1," << prefix << r.name << ',' << r.residual << ",0,"
           << (r.residual > ax.tolerance ? r.residual : 0.0) << '\n';
    }
    return std::make_pair(ax.passed(), j);
  };

  // the dual only exists for a valid algebra, so primal axioms always run first
  const auto [primal_ok, primal_json] = axiom_rows(k, "");
  if (wants(c.suite, "axioms") || !primal_ok) report["axioms"] = primal_json;
  ok = primal_ok;

  if (primal_ok) {
    try {
      const DualPair p = build_dual(k, {true, false, c.seed, c.tol});
      report["dual_dims"] = p.dual().dims();
      if (wants(c.suite, "axioms")) {
        const auto [dual_ok, dual_json] = axiom_rows(p.dual(), "dual:");
        report["dual_axioms"] = dual_json;
        const UnitaryReport u = verify_multiplicative_unitary(p);
        report["multiplicative_unitary"] = {{"unitarity", u.unitarity},
                                            {"implements_comultiplication", u.implements_comultiplication},
                                            {"plancherel", u.plancherel}};
        ok = ok && dual_ok && u.passed(c.tol.eq_tol);
      }
      if (wants(c.suite, "inequalities")) {
        const InequalityReport ir = inequality_suite(p, c.samples, c.seed, c.tol);
        std::vector<double> ds;
        for (const auto& r : ir.rows) {
          rows << csv_field(c.algebra) << ',' << r.sample_id << ',' << r.inequality_name << ',' << r.lhs << ','
               << r.rhs << ',' << r.violation << '\n';
          if (r.inequality_name == "donoho_stark") ds.push_back(r.rhs);
        }
        report["inequalities"] = {{"max_violation", ir.max_violation},
                                  {"min_hb_deficit", ir.min_hb_deficit},
                                  {"min_ds_product", ir.min_ds_product},
                                  {"passed", ir.passed(c.tol)}};
        ok = ok && ir.passed(c.tol);
        fs::create_directories(c.out);
        write_text(fs::path(c.out) / "ds_histogram.csv", histogram_csv(ds, 20));
      }
      nlohmann::json el = nlohmann::json::array();
      for (std::size_t i = 0; i < in.elements.size(); ++i)
        el.push_back({{"source", c.elements[i]}, {"report", to_json(up_report(p, in.elements[i], c.tol))}});
      report["elements"] = el;
    } catch (const Error& e) {
      log << "verification aborted: " << e.what() << '\n';
      report["error"] = e.what();
      ok = false;
    }
  }

  report["passed"] = ok;
  fs::create_directories(c.out);
  write_json_file((fs::path(c.out) / "report.json").string(), report);
  write_text(fs::path(c.out) / "violations.csv", rows.str());
  log << k.name() << ": " << (ok ? "all checks passed" : "FAILED") << '\n';
  return ok ? 0 : 1;
}

int cmd_minimizers(const RunConfig& c, std::ostream& log) {
  Loaded in;
  if (!load_inputs(c, log, in)) return 2;
  const auto& k = in.algebra;
  DualPair p;
  try {
    p = build_dual(k, {true, true, c.seed, c.tol});
  } catch (const Error& e) {
    log << "load failed: " << e.what() << '\n';
    return 2;
  }

  const fs::path out(c.out);
  fs::create_directories(out / "certs");
  std::ostringstream csv, plot;
  csv << "algebra,candidate_id,kind,description,entropy_equality,ds_equality,extremal_bpi,bishift,consistent,"
         "hb_deficit,ds_product,sq_residual,hardy_residual,uniqueness_dim\n"
      << std::setprecision(17) << std::boolalpha;
  plot << "algebra,candidate_id,kind,hb_deficit,ds_product\n" << std::setprecision(17);
  int alarms = 0, minimal_random = 0, id = 0;
  const bool verdicts = wants(c.suite, "minimizers");
  const bool hardy = wants(c.suite, "hardy");

  auto emit = [&](const std::string& kind, const std::string& desc, const MinimizerVerdict& v, const std::string& sq,
                  const std::string& hardy_res, const std::string& uniq) {
    csv << csv_field(c.algebra) << ',' << id << ',' << kind << ',' << csv_field(desc) << ',' << v.entropy_equality << ','
        << v.ds_equality << ',' << v.extremal_bpi << ',' << v.bishift << ',' << v.consistent << ',' << v.hb_deficit
        << ',' << v.ds_product << ',' << sq << ',' << hardy_res << ',' << uniq << '\n';
    plot << csv_field(c.algebra) << ',' << id << ',' << kind << ',' << v.hb_deficit << ',' << v.ds_product << '\n';
    ++id;
  };
  auto alarm = [&](const std::string& what) {
    ++alarms;
    log << "ALARM: " << what << '\n';
  };

  nlohmann::json report = {{"command", "minimizers"}, {"algebra", c.algebra}, {"name", k.name()},
                           {"dims", k.dims()},         {"dual_dims", p.dual().dims()},
                           {"seed", c.seed},           {"tolerance", tol_json(c.tol)}};
  try {
    const auto bps = enumerate_biprojections(p, {}, 64, c.tol);
    nlohmann::json bj = nlohmann::json::array();
    for (const auto& b : bps) bj.push_back(b.label);
    report["biprojections"] = bj;
    log << k.name() << ": " << bps.size() << " biprojections\n";

    const auto certs = enumerate_bi_shifts(p, c.seed, 64, c.tol);
    report["bi_shifts"] = certs.size();
    for (std::size_t i = 0; i < certs.size(); ++i) {
      const auto& cert = certs[i];
      MinimizerVerdict v;
      v.consistent = true;
      std::string sq, hardy_res, uniq;
      nlohmann::json cj = to_json(cert);
      cj["algebra"] = c.algebra;
      if (verdicts) {
        v = check_main_theorem(p, cert.x, c.tol);
        if (!v.consistent || !v.bishift) alarm("bi-shift verdict " + to_json(v).dump() + " for " + cert.description);
        const SqReport s = verify_sq(p, cert.x, c.tol);
        if (!s.passed(c.tol)) alarm("convolution square identity fails for " + cert.description);
        sq = num(std::max({s.identity_residual, s.partial_isometry_defect, s.l1_residual}));
        cj["verdict"] = to_json(v);
        cj["sq"] = to_json(s);
      }
      if (hardy) {
        try {
          const HardyResult h = hardy_check(p, cert.x, cplx(0, 2) * cert.x, 2, 2, c.tol);
          hardy_res = num(h.residual);
          cj["hardy"] = {{"mu_re", h.mu.real()}, {"mu_im", h.mu.imag()}, {"residual", h.residual}};
        } catch (const Error& e) {
          alarm(std::string("hardy check: ") + e.what());
        }
        const Index dim = uniqueness_dimension(p, cert.B_g, cert.B_h_tilde, c.tol);
        uniq = std::to_string(dim);
        cj["uniqueness_dimension"] = dim;
        if (dim != 1) alarm("uniqueness dimension " + uniq + " for " + cert.description);
      }
      std::ostringstream name;
      name << "bishift_" << std::setw(3) << std::setfill('0') << i << ".json";
      write_json_file((out / "certs" / name.str()).string(), cj);
      emit("bishift", cert.description, v, sq, hardy_res, uniq);
    }

    if (verdicts) {
      for (int i = 0; i < c.random; ++i) {
        std::mt19937_64 rng(sample_seed(c.seed, static_cast<std::uint64_t>(i)));
        const MinimizerVerdict v = check_main_theorem(p, BlockOperator::Gaussian(k.dims(), rng), c.tol);
        if (!v.consistent) alarm("inconsistent verdict on random sample " + std::to_string(i));
        if (v.entropy_equality) ++minimal_random;
        emit("random", "gaussian sample " + std::to_string(i), v, "", "", "");
      }
      for (std::size_t i = 0; i < in.elements.size(); ++i) {
        const MinimizerVerdict v = check_main_theorem(p, in.elements[i], c.tol);
        if (!v.consistent) alarm("inconsistent verdict on " + c.elements[i]);
        emit("element", c.elements[i], v, "", "", "");
      }
    }
  } catch (const Error& e) {
    alarm(e.what());
  }

  report["random"] = c.random;
  report["minimal_random"] = minimal_random;
  report["alarms"] = alarms;
  report["passed"] = alarms == 0;
  write_json_file((out / "report.json").string(), report);
  write_text(out / "minimizers.csv", csv.str());
  write_text(out / "deficits.csv", plot.str());
  log << k.name() << ": " << id << " candidates, " << alarms << " alarms\n";
  return alarms == 0 ? 0 : 1;
}

}  // namespace kac
