// Acceptance gate: one PASS/FAIL line per criterion, with the measured values
// underneath.  Exit status is the number of failing criteria.

#include "lpcert/lpcert.hpp"

#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

using namespace lpcert;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Criterion {
  Criterion(int n, std::string t) : number(n), title(std::move(t)) {}
  int number;
  std::string title;
  bool pass = true;
  std::vector<std::string> lines;

  void check(bool ok, const std::string& what) {
    lines.push_back(std::string(ok ? "  ok    " : "  FAIL  ") + what);
    pass = pass && ok;
  }
  void note(const std::string& what) { lines.push_back("  note  " + what); }
};

int failures = 0;

void report(const Criterion& c) {
  std::cout << (c.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << c.number << "  " << c.title << "\n";
  for (auto& l : c.lines) std::cout << l << "\n";
  std::cout.flush();
  if (!c.pass) ++failures;
}

std::string fixed(double v, int digits) {
  std::ostringstream o;
  o << std::setprecision(digits) << v;
  return o.str();
}

std::string secs(double s) { return fixed(s, 3) + " s"; }

Rational dec(const std::string& s) { return parse_rational(s); }

}  // namespace

int main() {
  std::cout << "lpcert acceptance, " << std::thread::hardware_concurrency() << " hardware threads\n\n";

  auto t_load = Clock::now();
  const EigenDataSet ds = load_eigen_data_file(LPCERT_DEFAULT_EIGEN_DATA);
  const double load_time = seconds_since(t_load);

  // 1 -----------------------------------------------------------------------
  auto t0 = Clock::now();
  const Solution sol = solve_exact(default_constraints(), &ds);
  const double solve_time = seconds_since(t0);
  {
    Criterion c{1, "exact solution regression"};
    std::string x1 = quad_to_decimal(sol.x[1], 38, Rounding::down, DigitMode::fractional);
    c.check(x1 == "0.54260880498140096513867653943544603187", "x1 = " + x1);
    c.check(sol.x[10].is_zero() && sol.x[41].is_zero() && sol.x[43].is_zero(), "x10 = x41 = x43 = 0 exactly");
    c.check(solve_time < 10, "solve time " + secs(solve_time) + " (eigen data load " + secs(load_time) + ")");
    report(c);
  }

  // 2 -----------------------------------------------------------------------
  {
    Criterion c{2, "bound regression"};
    auto t = Clock::now();
    BoundReport br = bound_report(sol);
    const double t_bound = seconds_since(t) + solve_time;
    QuadElem expect(3,
                    make_rational(Integer("-277385984684414834701547634832199852580621960702176236773103"),
                                  Integer("535700179589322461444902359627590796379300404334023027566592")),
                    make_rational(Integer("554232205790268185636220216828951751933789602521848882511869"),
                                  Integer("1607100538767967384334707078882772389137901213002069082699776")));
    c.check(sol.center_density_bound == expect, "center density bound equals the printed fractions digit for digit");
    const std::string printed = "0.079522333845052286373845030218205166528";
    c.check(br.center_decimal == printed, "38-digit round-down " + br.center_decimal + " vs printed " + printed);
    if (br.center_decimal != printed)
      c.note("the printed fractions themselves evaluate to ..." + quad_to_decimal(expect, 42, Rounding::down).substr(36) +
             "; the printed last digit does not follow from them");
    c.check(sol.density_bound.lo >= dec("0.410948"), "density bound " + br.density_decimal + "... >= 0.410948");
    c.check(quad_sign(sol.center_density_bound - QuadElem::rational(dec("0.079398"), 3)) > 0,
            "center density " + br.center_decimal.substr(0, 12) + "... > 0.079398");
    c.check(t_bound < 10, "runtime " + secs(t_bound));
    report(c);
  }

  // 3 -----------------------------------------------------------------------
  {
    Criterion c{3, "b0 consistency"};
    QuadElem via_w = coefficient(&ds, sol.x, 0, Side::b);
    c.check(via_w == b0_closed_form(sol.x), "b0 through W equals the closed form exactly");
    c.check(quad_sign(via_w - QuadElem::rational(dec("0.6168035"), 3)) >= 0,
            "b0 = " + quad_to_decimal(via_w, 12, Rounding::down) + "... >= 0.6168035");
    report(c);
  }

  // 4 -----------------------------------------------------------------------
  {
    Criterion c{4, "epsilon table"};
    auto t = Clock::now();
    EpsTables e = eps_tables(sol.x, sol.y, EpsStrategy::shallow);
    const double t_eps = seconds_since(t);
    const char* a_side[] = {"0.6448", "0.003742", "0.0008134", "0.0008264", "0.0002649",
                            "0.7391", "0.006758", "0.000008753", "0.006758", "0.01635"};
    const char* b_side[] = {"0.1607", "0.001358", "0.03902", "0.2038", "0.1008",
                            "0.2748", "0.05462", "0.01363", "0.05462", "0.1008"};
    int agree = 0, total = 0;
    std::vector<std::string> off;
    for (int s = 0; s < 2; ++s) {
      const auto& rows = s == 0 ? e.a_rows : e.b_rows;
      for (std::size_t i = 0; i < 10; ++i) {
        const std::string published = s == 0 ? a_side[i] : b_side[i];
        std::string mine = rational_to_decimal(rows[i].eps, 4, Rounding::down);  // admissible values round down
        ++total;
        if (dec(mine) == dec(published)) {
          ++agree;
          continue;
        }
        off.push_back(std::string(s == 0 ? "a " : "b ") + rows[i].label + ": " + mine + " vs " + published +
                      (rows[i].eps < dec(published) ? " (below the published value)" : ""));
      }
    }
    c.check(agree == total, std::to_string(agree) + " of " + std::to_string(total) + " entries agree to 4 significant digits");
    for (auto& s : off) c.note(s);
    if (agree != total)
      c.note("no differing entry lies below its published value, so the published entries stay admissible");
    c.check(e.eps_a >= dec("0.00000875") && e.eps_a <= dec("0.00000876"),
            "a-side worst case " + rational_to_decimal(e.eps_a, 6, Rounding::down) + " in [8.75e-6, 8.76e-6]");
    double rel = std::abs(e.eps_b.get_d() / 1.358e-3 - 1);
    c.check(rel < 0.01, "b-side worst case " + rational_to_decimal(e.eps_b, 6, Rounding::down) + " within 1% of 1.358e-3");
    c.check(t_eps < 60, "runtime " + secs(t_eps));
    report(c);
  }

  // 5 -----------------------------------------------------------------------
  {
    Criterion c{5, "ratio enclosures"};
    RatioEnclosure re = ratio_bounds(100000);
    auto show = [](const RatInterval& i) {
      return "[" + rational_to_decimal(i.lo, 10, Rounding::down) + ", " + rational_to_decimal(i.hi, 10, Rounding::up) + "]";
    };
    c.check(re.ratio_lower.contains(dec("0.94999")), "lower product " + show(re.ratio_lower) + " contains 0.94999");
    bool up = re.ratio_upper.contains(dec("1.09696"));
    c.check(up, "upper product " + show(re.ratio_upper) + " contains 1.09696");
    if (!up && re.ratio_upper.hi <= dec("1.09696"))
      c.note("1.09696 is the product rounded up in the fifth decimal: it bounds the enclosure from above, so every "
             "use as an upper bound stays valid, but the enclosure cannot contain it");
    c.check(re.ratio_lower.width() < dec("0.00001") && re.ratio_upper.width() < dec("0.00001"), "both widths < 1e-5");
    double worst = 0;
    for (const RegroupEntry& r : regroup(sol.x, 2, 1))
      if (r.s3 == -1 && r.s4 == 1) worst = -to_double(r.X3) / to_double(r.X4);
    c.check(std::round(worst * 10000) == 9482, "structural ratio " + fixed(worst, 8) + " = 0.9482 to 4 decimals");
    report(c);
  }

  // 6 -----------------------------------------------------------------------
  const DeligneEnvelope env_a = deligne_envelope(sol.x), env_b = deligne_envelope(sol.y);
  {
    Criterion c{6, "Deligne envelopes"};
    double ca = env_a.C.get_d(), cb = env_b.C.get_d();
    c.check(std::abs(ca - 21.6161) < 1e-3, "C_a = " + rational_to_decimal(env_a.C, 8, Rounding::up) + " vs 21.6161");
    c.check(std::abs(cb - 24.0265) < 1e-3 || std::abs(cb - 24.0266) < 1e-3,
            "C_b = " + rational_to_decimal(env_b.C, 8, Rounding::up) + " vs 24.0265 / 24.0266");
    report(c);
  }

  // 7 -----------------------------------------------------------------------
  {
    Criterion c{7, "thresholds"};
    u64 na = threshold({dec("21.6161"), dec("0.0000087536")});
    u64 nb = threshold({dec("24.0265"), dec("0.001358")});
    double ra = std::abs(double(na) / 5347177639.0 - 1), rb = std::abs(double(nb) / 8126856.0 - 1);
    c.check(ra < 1e-4, "n0_a = " + std::to_string(na) + " vs 5347177639, relative " + fixed(ra, 3));
    c.check(rb < 1e-4, "n0_b = " + std::to_string(nb) + " vs 8126856, relative " + fixed(rb, 3));
    RatInterval r = divisor_ratio(factorize(6983776800ULL));
    c.check(std::abs(r.mid().get_d() - 1.5379) <= 1e-4,
            "ratio at 6983776800 = " + rational_to_decimal(r.mid(), 8, Rounding::nearest) + " = 1.5379 +- 1e-4");
    c.note("R in the threshold uses the upper endpoint " + rational_to_decimal(nicolas_robin_r(), 8, Rounding::up));
    report(c);
  }

  // 8 -----------------------------------------------------------------------
  {
    Criterion c{8, "desk-scale scan"};
    unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    auto t = Clock::now();
    auto run = [&](Side side) {
      ScanConfig cfg;
      cfg.side = side;
      cfg.hi = 1'000'001;
      cfg.workers = workers;
      cfg.ds = &ds;
      cfg.C = (side == Side::a ? env_a : env_b).C;
      return scan(sol.x, cfg);
    };
    auto ns = [](const ScanReport& r) {
      std::vector<u64> v;
      for (auto& e : r.exceptions()) v.push_back(e.n);
      return v;
    };
    ScanReport a1 = run(Side::a), b1 = run(Side::b);
    const double first = seconds_since(t);
    ScanReport a2 = run(Side::a), b2 = run(Side::b);
    c.check(a1.verified() && a1.violations().empty(),
            "a side to 1e6: 0 violations, " + std::to_string(a1.exceptions().size()) + " exceptions");
    c.check(b1.verified() && b1.violations().empty(),
            "b side to 1e6: 0 violations, " + std::to_string(b1.exceptions().size()) + " exceptions, last " +
                std::to_string(ns(b1).empty() ? 0 : ns(b1).back()));
    c.check(ns(a1) == ns(a2) && ns(b1) == ns(b2), "exception lists identical across two runs");
    VanishingAttestation van = vanishing_certificate(sol.x, &ds, 100000);
    c.check(van.attested, "a_n = 0 exactly for all n = 1 mod 4, n <= 1e5 (" + std::to_string(van.spot_checked) +
                              " values, plus the symbolic derivation)");
    c.check(first < 1800, "both sides in " + secs(first) + " on " + std::to_string(workers) + " worker(s)");
    if (workers < 8) c.note("this machine offers " + std::to_string(workers) + " worker(s); the 8-worker figure is not measured");
    report(c);
  }

  // 9 -----------------------------------------------------------------------
  {
    Criterion c{9, "structural invariants"};
    bool inv = true;
    for (int j = 1; j <= kBasisSize; ++j) inv = inv && transform_vector(transform_vector(BasisVector::unit(j))) == BasisVector::unit(j);
    c.check(inv, "W^2 = I exactly on all 44 basis vectors");
    bool integral = true;
    std::string why;
    try {
      for (u64 n = 1; n <= 100000; ++n) {
        Factorization f = factorize(n);
        for (int j = 1; j <= kBasisSize; ++j)
          if (!is_eisenstein(j)) cusp_basis_coeff(ds, j, f);
      }
    } catch (const DataIntegrityError& e) {
      integral = false;
      why = e.what();
    }
    c.check(integral, "cuspidal basis coefficients integral for n <= 1e5" + (why.empty() ? "" : ": " + why));
    ObservationReport obs = check_observations(ds, 100000);
    c.check(obs.ok(), "five vanishing relations among cuspidal coefficients hold for n <= 1e5");
    report(c);
  }

  // 10 ----------------------------------------------------------------------
  {
    Criterion c{10, "theta lab"};
    bool all = true;
    for (ThetaIdentity id : kThetaIdentities) {
      IdentityResult r = verify_identity(id, 10000);
      all = all && r.pass();
      if (!r.pass()) c.note(r.name + " fails at u^" + std::to_string(*r.first_failure));
    }
    c.check(all, "seven identities exact to order 1e4");
    bool oracle = true;
    for (ThetaLattice l : {ThetaLattice::Zn(6), ThetaLattice::Dn(6), ThetaLattice::DnStar(6), ThetaLattice::E6()})
      oracle = oracle && gram_theta_oracle(standard_gram(l), 401) == lattice_theta(l, 401);
    c.check(oracle, "enumeration oracle matches Z6, D6, D6*, E6 through q^50");
    QSeries e6 = lattice_theta(ThetaLattice::E6(), 8 * 6);
    std::string got;
    for (std::size_t m = 0; m < 5; ++m) got += (m ? ", " : "") + std::to_string(e6[8 * m]);
    c.check(got == "1, 72, 270, 936, 2160", "E6 initial coefficients " + got + " vs printed 1, 72, 270, 936, 2160");
    if (got != "1, 72, 270, 936, 2160")
      c.note("E6 has 720 vectors of norm 6 (q^3); the printed list skips that term, and continues 936 (q^4), " +
             std::to_string(e6[40]) + " (q^5)");
    report(c);
  }

  // 11 ----------------------------------------------------------------------
  {
    Criterion c{11, "Fourier pair"};
    auto t = Clock::now();
    FourierReport r = fourier_pair_check(&ds, sol.x, {{{0, 1}, 5000}, {{0, 2}, 5000}, {{0.5, 1}, 5000}});
    for (const ProbeResult& p : r.probes) {
      std::ostringstream z;
      z << "z = ";
      if (p.z.real() != 0) z << p.z.real() << " + ";
      if (p.z.imag() != 1) z << p.z.imag();
      z << "i";
      c.check(p.error < 1e-10, z.str() + ": relative error " + fixed(p.error, 3) + ", tail bound " + fixed(p.tail, 3));
    }
    c.note("runtime " + secs(seconds_since(t)));
    report(c);
  }

  std::cout << "\n" << (11 - failures) << " of 11 criteria pass\n";
  return failures;
}
