#pragma once

// Command-line dispatcher.  Every command builds a JSON document and a text
// rendering of the same data; exit codes are 0 (ok or partial), 1 (a check
// failed or a violation was found) and 2 (usage, configuration or data error).

#include "lpcert/theta.hpp"
#include "lpcert/verifier.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace lpcert::cli {

inline constexpr u64 kDeskScanMax = 100'000'000;

struct Options {
  std::string eigen_data = LPCERT_DEFAULT_EIGEN_DATA;
  std::string out;
  std::string format = "text";
  u64 scan_max = 1'000'000;
  u64 window = u64(1) << 16;
  unsigned workers = 1;
  bool full_scale = false;

  // command specific
  std::string side = "a";
  u64 scan_lo = 1;
  std::string strategy = "shallow";
  u64 cutoff = 100'000;
  std::size_t order = 10'000;
  std::size_t gram_order = 401;
  std::size_t fourier_order = 5000;
  std::string lattice;
  std::string C_text, eps_text;
  u64 spot_limit = 100'000;
};

struct Output {
  Json doc;
  std::string text;
  int code = 0;
};

namespace detail {

inline Side parse_side(const std::string& s) {
  if (s == "a") return Side::a;
  if (s == "b") return Side::b;
  throw ConfigError("side must be a or b");
}

inline const char* side_name(Side s) { return s == Side::a ? "a" : "b"; }

inline std::string dec(const QuadElem& x, unsigned long digits, Rounding r = Rounding::nearest) {
  return x.is_zero() ? "0" : quad_to_decimal(x, digits, r);
}

inline std::string dec(const Rational& x, unsigned long digits, Rounding r = Rounding::nearest) {
  return rational_to_decimal(x, digits, r);
}

inline std::string fixed(double v, int prec) {
  std::ostringstream o;
  o << std::setprecision(prec) << v;
  return o.str();
}

class Context {
 public:
  explicit Context(const Options& o) : opt(o) {}

  const EigenDataSet& data() {
    if (!ds_) ds_ = std::make_unique<EigenDataSet>(load_eigen_data_file(opt.eigen_data));
    return *ds_;
  }
  const Solution& solution() {
    if (!sol_) sol_ = std::make_unique<Solution>(solve_exact(default_constraints(), &data()));
    return *sol_;
  }
  const EpsTables& eps(EpsStrategy s = EpsStrategy::shallow) {
    if (!eps_ || eps_->strategy != s) eps_ = std::make_unique<EpsTables>(eps_tables(solution().x, solution().y, s));
    return *eps_;
  }

  const Options& opt;

 private:
  std::unique_ptr<EigenDataSet> ds_;
  std::unique_ptr<Solution> sol_;
  std::unique_ptr<EpsTables> eps_;
};

inline void check_scan_range(const Options& o) {
  if (o.scan_max > kDeskScanMax && !o.full_scale)
    throw ConfigError("--scan-max above " + std::to_string(kDeskScanMax) + " needs --full-scale");
}

inline ScanReport run_scan(Context& cx, Side side, u64 lo, u64 hi) {
  const Solution& s = cx.solution();
  ScanConfig cfg;
  cfg.side = side;
  cfg.lo = lo;
  cfg.hi = hi;
  cfg.window = cx.opt.window;
  cfg.workers = cx.opt.workers;
  cfg.C = deligne_envelope(side == Side::a ? s.x : s.y).C;
  cfg.ds = &cx.data();
  ScanProgress progress;
  if (cx.opt.full_scale)
    progress = [side](const WindowReport& w, std::size_t done, std::size_t total) {
      std::cerr << "scan " << side_name(side) << ": window " << done << "/" << total << " [" << w.lo << ", " << w.hi
                << ") exceptions " << w.exceptions.size() << "\n";
    };
  return scan(s.x, cfg, progress);
}

// ---------------------------------------------------------------------------
// Commands.

inline Output cmd_solve(Context& cx) {
  const Solution& s = cx.solution();
  BoundReport br = bound_report(s);
  Output o;
  o.doc = {{"x1", quad_to_decimal(s.x[1], 38, Rounding::down)},
           {"x10", s.x[10].to_string()},
           {"x41", s.x[41].to_string()},
           {"x43", s.x[43].to_string()},
           {"center_density_bound", {{"exact", br.center.to_string()}, {"decimal", tagged(br.center_decimal, Rounding::down)}}},
           {"b0", tagged(br.b0_decimal, Rounding::down)},
           {"density_bound", tagged(br.density_decimal, Rounding::down)},
           {"digest", solution_digest(s.x)}};
  std::ostringstream t;
  t << "x1                    " << quad_to_decimal(s.x[1], 38, Rounding::down) << "\n"
    << "center density bound  " << br.center.to_string() << "\n"
    << "                    = " << br.center_decimal << "...\n"
    << "b0                    " << br.b0_decimal << "...\n"
    << "density bound         " << br.density_decimal << "...\n";
  o.text = t.str();
  return o;
}

inline Output cmd_eps_table(Context& cx) {
  EpsStrategy st;
  if (cx.opt.strategy == "shallow") st = EpsStrategy::shallow;
  else if (cx.opt.strategy == "deep") st = EpsStrategy::deep;
  else throw ConfigError("--strategy must be shallow or deep");
  const EpsTables& e = cx.eps(st);
  Output o;
  o.doc = {{"strategy", cx.opt.strategy},
           {"ratio_cutoff", e.ratios.cutoff},
           {"a", eps_rows_json(e.a_rows)},
           {"b", eps_rows_json(e.b_rows)},
           {"eps_a", tagged(dec(e.eps_a, 6, Rounding::down), Rounding::down)},
           {"eps_b", tagged(dec(e.eps_b, 6, Rounding::down), Rounding::down)}};
  std::ostringstream t;
  t << std::left << std::setw(12) << "row" << std::setw(16) << "a side" << "b side\n";
  for (std::size_t i = 0; i < e.a_rows.size(); ++i)
    t << std::setw(12) << e.a_rows[i].label << std::setw(16) << fixed(e.a_rows[i].eps.get_d(), 4)
      << fixed(e.b_rows[i].eps.get_d(), 4) << "\n";
  t << "min         " << std::setw(16) << fixed(e.eps_a.get_d(), 4) << fixed(e.eps_b.get_d(), 4) << "\n";
  o.text = t.str();
  for (const auto* rows : {&e.a_rows, &e.b_rows})
    for (const EpsRow& r : *rows)
      if (!r.feasible) o.code = 1;
  return o;
}

inline Output cmd_ratio_bounds(Context& cx) {
  RatioEnclosure re = ratio_bounds(cx.opt.cutoff);
  auto iv = [](const RatInterval& r) { return Json{dec(r.lo, 10, Rounding::down), dec(r.hi, 10, Rounding::up)}; };
  Output o;
  o.doc = {{"cutoff", re.cutoff},
           {"ratio_lower", iv(re.ratio_lower)},
           {"ratio_upper", iv(re.ratio_upper)},
           {"s3_lower", iv(re.s3_lower)},
           {"s3_upper", iv(re.s3_upper)},
           {"s4_lower", iv(re.s4_lower)},
           {"s4_upper", iv(re.s4_upper)}};
  std::ostringstream t;
  t << "cutoff " << re.cutoff << "\n";
  for (auto& [k, v] : o.doc.items())
    if (v.is_array()) t << std::left << std::setw(12) << k << "[" << v[0].get<std::string>() << ", " << v[1].get<std::string>() << "]\n";
  o.text = t.str();
  return o;
}

inline Output cmd_thresholds(Context& cx) {
  Output o;
  std::ostringstream t;
  auto one = [&](Side side, const Rational& C, const Rational& eps) {
    ThresholdResult r = threshold_detail({C, eps});
    o.doc[side_name(side)] = {{"C", dec(C, 8, Rounding::up)}, {"eps", dec(eps, 8, Rounding::down)}, {"n0", r.n0}};
    t << side_name(side) << ": C = " << dec(C, 8, Rounding::up) << ", eps = " << dec(eps, 8, Rounding::down)
      << ", n0 = " << r.n0 << "\n";
  };
  if (!cx.opt.C_text.empty() || !cx.opt.eps_text.empty()) {
    if (cx.opt.C_text.empty() || cx.opt.eps_text.empty()) throw ConfigError("--C and --eps go together");
    one(parse_side(cx.opt.side), parse_rational(cx.opt.C_text), parse_rational(cx.opt.eps_text));
  } else {
    const Solution& s = cx.solution();
    const EpsTables& e = cx.eps();
    one(Side::a, deligne_envelope(s.x).C, e.eps_a);
    one(Side::b, deligne_envelope(s.y).C, e.eps_b);
  }
  o.doc["r"] = dec(nicolas_robin_r(), 15, Rounding::up);
  o.text = t.str();
  return o;
}

inline Output cmd_scan(Context& cx) {
  check_scan_range(cx.opt);
  Side side = parse_side(cx.opt.side);
  ScanReport r = run_scan(cx, side, cx.opt.scan_lo, cx.opt.scan_max + 1);
  Output o;
  Json ex = Json::array();
  for (const ExceptionRecord& e : r.exceptions()) ex.push_back(e.n);
  Json viol = Json::array();
  for (const Violation& v : r.violations()) viol.push_back({{"n", v.n}, {"value", dec(v.value, 12, Rounding::up)}});
  Json unres = Json::array();
  for (const Unresolved& u : r.unresolved()) unres.push_back({{"n", u.n}, {"prime", u.prime}});
  o.doc = {{"side", side_name(side)}, {"range", {r.lo, r.hi}},        {"checked", r.checked()},
           {"skipped", r.skipped()},  {"exceptions", ex},               {"violations", viol},
           {"unresolved", unres},     {"verified", r.verified()},       {"digest", r.digest}};
  std::ostringstream t;
  t << "side " << side_name(side) << " [" << r.lo << ", " << r.hi << "): checked " << r.checked() << ", skipped "
    << r.skipped() << ", exceptions " << ex.size() << ", violations " << viol.size() << ", unresolved "
    << unres.size() << "\n";
  if (!ex.empty()) t << "last exception " << ex.back().get<u64>() << "\n";
  t << (r.verified() ? "verified\n" : "NOT verified\n");
  o.text = t.str();
  if (!viol.empty()) o.code = 1;
  return o;
}

inline Output cmd_vanishing(Context& cx) {
  VanishingAttestation v = vanishing_certificate(cx.solution().x, &cx.data(), cx.opt.spot_limit);
  Output o;
  Json rel = Json::array();
  std::ostringstream t;
  for (const RelationCheck& r : v.relations) {
    rel.push_back({{"relation", r.relation}, {"holds", r.holds}});
    t << (r.holds ? "ok    " : "FAIL  ") << r.relation << "\n";
  }
  for (const std::string& d : v.derivations) t << d << "\n";
  t << "spot check a_n = 0 for n = 1 mod 4, n <= " << v.spot_limit << ": " << v.spot_checked << " values\n";
  t << (v.attested ? "attested\n" : "denied: " + v.denial + "\n");
  o.doc = {{"attested", v.attested}, {"relations", rel}, {"derivations", v.derivations},
           {"spot_limit", v.spot_limit}, {"spot_checked", v.spot_checked}, {"denial", v.denial}};
  o.text = t.str();
  o.code = v.attested ? 0 : 1;
  return o;
}

inline Output cmd_theta_check(Context& cx) {
  Output o;
  std::ostringstream t;
  Json ids = Json::array();
  for (ThetaIdentity id : kThetaIdentities) {
    IdentityResult r = verify_identity(id, cx.opt.order);
    ids.push_back({{"identity", r.name}, {"pass", r.pass()}, {"first_failure", r.first_failure ? Json(*r.first_failure) : Json()}});
    t << std::left << std::setw(14) << r.name << (r.pass() ? "pass" : "FAIL at u^" + std::to_string(*r.first_failure))
      << "  (order " << r.order << ")\n";
    if (!r.pass()) o.code = 1;
  }
  Json gram = Json::array();
  for (ThetaLattice l : {ThetaLattice::Zn(6), ThetaLattice::Dn(6), ThetaLattice::DnStar(6), ThetaLattice::E6()}) {
    auto diff = first_difference(lattice_theta(l, cx.opt.gram_order), gram_theta_oracle(standard_gram(l), cx.opt.gram_order));
    gram.push_back({{"lattice", l.name()}, {"match", !diff}});
    t << std::setw(14) << l.name() << (diff ? "oracle mismatch at u^" + std::to_string(*diff) : "oracle match")
      << "  (order " << cx.opt.gram_order << ")\n";
    if (diff) o.code = 1;
  }
  o.doc = {{"order", cx.opt.order}, {"identities", ids}, {"gram_order", cx.opt.gram_order}, {"oracle", gram}};
  o.text = t.str();
  return o;
}

inline Output cmd_fourier_check(Context& cx) {
  std::vector<GaussianProbe> probes;
  for (auto z : {std::complex<double>(0, 1), std::complex<double>(0, 2), std::complex<double>(0.5, 1)})
    probes.push_back({z, cx.opt.fourier_order, 1e-10});
  FourierReport rep;
  std::string what;
  if (cx.opt.lattice.empty()) {
    what = "solution";
    rep = fourier_pair_check(&cx.data(), cx.solution().x, probes);
  } else {
    what = cx.opt.lattice;
    rep = fourier_pair_check(nullptr, lattice_combination(parse_lattice(cx.opt.lattice)), probes);
  }
  Output o;
  std::ostringstream t;
  Json pj = Json::array();
  for (const ProbeResult& p : rep.probes) {
    pj.push_back({{"z", {p.z.real(), p.z.imag()}}, {"order", p.order}, {"error", p.error}, {"tail", p.tail}});
    t << "z = " << p.z.real() << (p.z.imag() < 0 ? "-" : "+") << std::abs(p.z.imag()) << "i  order " << p.order
      << "  relative error " << fixed(p.error, 3) << "  tail " << fixed(p.tail, 3) << "\n";
  }
  o.doc = {{"vector", what}, {"probes", pj}, {"max_error", rep.max_error}};
  if (!cx.opt.lattice.empty()) {
    QuadElem rho = poisson_center_density(lattice_combination(parse_lattice(cx.opt.lattice)));
    o.doc["center_density"] = rho.to_string();
    t << "center density " << rho.to_string() << " = " << dec(rho, 10) << "\n";
  }
  t << "max relative error " << fixed(rep.max_error, 3) << "\n";
  o.text = t.str();
  if (!(rep.max_error < 1e-10)) o.code = 1;
  return o;
}

inline Output cmd_transform_check(Context& cx) {
  const Solution& s = cx.solution();
  BasisVector probe;
  for (int j = 1; j <= kBasisSize; ++j) probe[j] = QuadElem(3, make_rational(j, 7), make_rational(1, j));
  bool involution = transform_vector(transform_vector(probe)) == probe;
  BasisVector y = transform_vector(s.x);
  bool y_matches = y == s.y;
  QuadElem b0 = eis_part(y, u64(0)), closed = b0_closed_form(s.x);
  bool b0_ok = b0 == closed;
  Output o;
  o.doc = {{"w_squared_identity", involution}, {"y_matches_solution", y_matches}, {"b0", b0.to_string()},
           {"b0_closed_form", closed.to_string()}, {"b0_agree", b0_ok}, {"b0_decimal", dec(b0, 10, Rounding::down)}};
  std::ostringstream t;
  t << "W^2 = I on a generic vector  " << (involution ? "yes" : "NO") << "\n"
    << "W x reproduces the solved y  " << (y_matches ? "yes" : "NO") << "\n"
    << "b0 = " << b0.to_string() << " = " << dec(b0, 10, Rounding::down) << "...\n"
    << "closed form agrees           " << (b0_ok ? "yes" : "NO") << "\n";
  o.text = t.str();
  o.code = involution && y_matches && b0_ok ? 0 : 1;
  return o;
}

inline Output cmd_dump_coeffs(Context& cx) {
  Side side = parse_side(cx.opt.side);
  const Solution& s = cx.solution();
  BasisVector storage;
  const BasisVector& v = side_vector(s.x, side, storage);
  CuspEvaluator ev(cx.data());
  Output o;
  o.doc = Json::array();
  std::ostringstream t;
  t << "n\t" << side_name(side) << "_n\teis\tcusp\n";
  for (u64 n = 1; n <= cx.opt.scan_max; ++n) {
    Factorization f = factorize(n);
    QuadElem e = eis_part(v, f), c = cusp_part(ev, v, f);
    std::string row[3] = {dec(e + c, 12), dec(e, 12), dec(c, 12)};
    t << n << "\t" << row[0] << "\t" << row[1] << "\t" << row[2] << "\n";
    o.doc.push_back({{"n", n}, {"value", row[0]}, {"eis", row[1]}, {"cusp", row[2]}});
  }
  o.text = t.str();
  return o;
}

inline Output cmd_certify(Context& cx) {
  check_scan_range(cx.opt);
  const Solution& s = cx.solution();
  const EpsTables& e = cx.eps();
  DeligneEnvelope env_a = deligne_envelope(s.x), env_b = deligne_envelope(s.y);
  Thresholds th{threshold({env_a.C, e.eps_a}), threshold({env_b.C, e.eps_b})};
  std::vector<ScanReport> scans;
  for (Side side : {Side::a, Side::b}) {
    u64 n0 = side == Side::a ? th.n0_a : th.n0_b;
    u64 hi = cx.opt.full_scale ? n0 : std::min(n0, cx.opt.scan_max + 1);
    scans.push_back(run_scan(cx, side, 1, hi));
  }
  VanishingAttestation van = vanishing_certificate(s.x, &cx.data(), cx.opt.spot_limit);
  Certificate cert = certify(s, e, env_a, env_b, th, scans, van);
  Output o;
  o.doc = cert.doc;
  std::ostringstream t;
  const Json& st = cert.doc["status"];
  t << "status    " << cert.status << "\n"
    << "thresholds n0_a = " << th.n0_a << ", n0_b = " << th.n0_b << "\n"
    << "verified  a_n >= 0 for n < " << st["verified_a_below"].get<u64>() << ", b_n >= 0 for n < "
    << st["verified_b_below"].get<u64>() << "\n"
    << "vanishing " << (van.attested ? "attested" : "denied") << "\n";
  if (st.contains("residual")) t << "residual  " << st["residual"].get<std::string>() << "\n";
  o.text = t.str();
  o.code = cert.exit_code();
  return o;
}

inline void emit(const Options& opt, const Output& out, std::ostream& stdout_) {
  std::string body = opt.format == "json" ? out.doc.dump(2) + "\n" : out.text;
  if (opt.out.empty()) {
    stdout_ << body;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + opt.out);
  f << body;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Options opt;
  CLI::App app{"Exact certificate for the six-dimensional dual LP bound at level 48, weight 3", "lpcert"};
  app.require_subcommand(1);
  app.add_option("--eigen-data", opt.eigen_data, "Eigen-data file (.txt or .txt.gz)");
  app.add_option("--out", opt.out, "Write output to this path instead of stdout");
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--scan-max", opt.scan_max, "Largest n to scan or dump");
  app.add_option("--windows", opt.window, "Integers per scan window")->check(CLI::Range(u64(1), u64(FactorWindow::kMaxWindow)));
  app.add_option("--workers", opt.workers, "Scan worker threads")->check(CLI::Range(1u, 1024u));
  app.add_flag("--full-scale", opt.full_scale, "Allow scans beyond the desk-scale limit");

  using Handler = Output (*)(detail::Context&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* c = app.add_subcommand(name, help);
    commands.push_back({c, h});
    return c;
  };
  add("solve", "Solve the exact LP and print the bound", detail::cmd_solve);
  add("certify", "Assemble the certificate (desk-scale scans unless --full-scale)", detail::cmd_certify);
  CLI::App* sc = add("scan", "Scan one side for nonnegativity", detail::cmd_scan);
  sc->add_option("--side", opt.side)->check(CLI::IsMember({"a", "b"}));
  sc->add_option("--from", opt.scan_lo, "First n")->check(CLI::PositiveNumber);
  CLI::App* th = add("thresholds", "Deligne-vs-Eisenstein crossover thresholds", detail::cmd_thresholds);
  th->add_option("--C", opt.C_text, "Envelope constant (decimal or fraction)");
  th->add_option("--eps", opt.eps_text, "Eisenstein lower bound constant");
  th->add_option("--side", opt.side)->check(CLI::IsMember({"a", "b"}));
  CLI::App* ep = add("eps-table", "Certified Eisenstein lower bounds a_eis >= eps n^2", detail::cmd_eps_table);
  ep->add_option("--strategy", opt.strategy)->check(CLI::IsMember({"shallow", "deep"}));
  CLI::App* rb = add("ratio-bounds", "Euler product enclosures", detail::cmd_ratio_bounds);
  rb->add_option("--cutoff", opt.cutoff, "Prime cutoff")->check(CLI::Range(u64(5), u64(1) << 32));
  CLI::App* va = add("vanishing", "Attest a_n = 0 for n = 1 mod 4", detail::cmd_vanishing);
  va->add_option("--spot-limit", opt.spot_limit, "Exact spot check bound");
  CLI::App* tc = add("theta-check", "Theta identities and the enumeration oracle", detail::cmd_theta_check);
  tc->add_option("--order", opt.order, "Series order in u")->check(CLI::PositiveNumber);
  tc->add_option("--gram-order", opt.gram_order, "Order for the enumeration oracle")->check(CLI::PositiveNumber);
  CLI::App* fc = add("fourier-check", "Numeric Fourier pairing on Gaussians", detail::cmd_fourier_check);
  fc->add_option("--order", opt.fourier_order, "Coefficients per side")->check(CLI::PositiveNumber);
  fc->add_option("--lattice", opt.lattice, "Use a lattice theta series instead of the solution")
      ->check(CLI::IsMember({"E6", "E6*", "D6", "Z6"}));
  add("transform-check", "Atkin-Lehner involution and b0 consistency", detail::cmd_transform_check);
  CLI::App* dc = add("dump-coeffs", "Tab-separated coefficients with the Eisenstein/cusp split", detail::cmd_dump_coeffs);
  dc->add_option("--side", opt.side)->check(CLI::IsMember({"a", "b"}));
  dc->add_option("--max", opt.scan_max, "Largest n")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "lpcert: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    detail::Context cx(opt);
    for (auto& [cmd, handler] : commands) {
      if (!cmd->parsed()) continue;
      Output o = handler(cx);
      detail::emit(opt, o, out);
      return o.code;
    }
  } catch (const ConsistencyError& e) {
    err << "lpcert: consistency error: " << e.what() << "\n";
  } catch (const ConfigError& e) {
    err << "lpcert: configuration error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "lpcert: error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace lpcert::cli
