#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lpcert;
using lpcert::testing::eigen_data;
using lpcert::testing::solved;

namespace {

ThresholdInput published_a() { return {parse_rational("21.6161"), parse_rational("0.0000087536")}; }
ThresholdInput published_b() { return {parse_rational("24.0265"), parse_rational("0.001358")}; }

// the crossover inequality in long double
long double lhs_ld(const ThresholdInput& t, u64 n) {
  long double ln = std::log(static_cast<long double>(n));
  return t.r.get_d() * std::log(2.0L) / std::log(ln) + std::log(t.C.get_d() / t.eps.get_d()) / ln;
}

ScanConfig config(Side side, u64 hi) {
  ScanConfig c;
  c.side = side;
  c.hi = hi;
  c.ds = &eigen_data();
  c.C = deligne_envelope(side == Side::a ? solved().x : solved().y).C;
  return c;
}

const ScanReport& b_scan_1e6() {
  static const ScanReport r = scan(solved().x, config(Side::b, 1'000'001));
  return r;
}

const ScanReport& a_scan_1e6() {
  static const ScanReport r = scan(solved().x, config(Side::a, 1'000'001));
  return r;
}

std::vector<u64> exception_ns(const ScanReport& r) {
  std::vector<u64> out;
  for (const ExceptionRecord& e : r.exceptions()) out.push_back(e.n);
  return out;
}

}  // namespace

TEST(Threshold, PublishedConstantsReproduceCrossover) {
  const double n0a = static_cast<double>(threshold(published_a()));
  const double n0b = static_cast<double>(threshold(published_b()));
  EXPECT_NEAR(n0a / 5347177639.0, 1.0, 1e-4);
  EXPECT_NEAR(n0b / 8126856.0, 1.0, 1e-4);
}

TEST(Threshold, IsTheLeastCrossing) {
  for (const ThresholdInput& t : {published_a(), published_b()}) {
    ThresholdResult r = threshold_detail(t);
    EXPECT_LE(r.at_n0.hi, 1);
    EXPECT_GT(r.below_n0.hi, 1);
    EXPECT_LT(r.at_n0.width(), Rational(1, 1000000000));
    // floating-point oracle agrees away from the boundary
    EXPECT_LT(lhs_ld(t, r.n0 + r.n0 / 1000), 1.0L);
    EXPECT_GT(lhs_ld(t, r.n0 - r.n0 / 1000), 1.0L);
    EXPECT_NEAR(static_cast<double>(lhs_ld(t, r.n0)), 1.0, 1e-8);  // one step in n moves it ~5e-9 near 8e6
  }
}

TEST(Threshold, MonotoneInConstants) {
  ThresholdInput t = published_b();
  u64 base = threshold(t);
  t.C *= 2;
  EXPECT_GT(threshold(t), base);
  t = published_b();
  t.eps *= 2;
  EXPECT_LT(threshold(t), base);
  t = published_b();
  t.k = 5;
  EXPECT_LT(threshold(t), base);
}

TEST(Threshold, RejectsBadInput) {
  ThresholdInput t = published_a();
  t.eps = 0;
  EXPECT_THROW(threshold(t), DomainError);
  t = published_a();
  t.C = Rational(1, 1000000000);
  EXPECT_THROW(threshold(t), DomainError);
  t = published_a();
  t.k = 1;
  EXPECT_THROW(threshold(t), DomainError);
}

TEST(Threshold, DivisorConstantIsAnUpperEndpoint) {
  Rational r = nicolas_robin_r();
  EXPECT_GE(r, divisor_ratio(factorize(6983776800ULL)).hi);
  EXPECT_LT(r - divisor_ratio(factorize(6983776800ULL)).hi, Rational(1, pow10(14)));
  EXPECT_GT(r, make_rational(15379, 10000));
  EXPECT_LT(r, make_rational(15380, 10000));
}

TEST(Scan, BSideExceptionsTo1e6) {
  const ScanReport& r = b_scan_1e6();
  EXPECT_TRUE(r.verified());
  EXPECT_TRUE(r.violations().empty());
  EXPECT_EQ(r.skipped(), 0u);
  std::vector<u64> ns = exception_ns(r);
  EXPECT_EQ(ns.size(), 4329u);
  ASSERT_FALSE(ns.empty());
  EXPECT_EQ(ns.back(), 556738u);
}

TEST(Scan, ASideHasNoViolationsTo1e6) {
  const ScanReport& r = a_scan_1e6();
  EXPECT_TRUE(r.verified());
  EXPECT_TRUE(r.violations().empty());
  EXPECT_TRUE(r.unresolved().empty());
  EXPECT_EQ(r.skipped(), 250000u);  // n = 1 mod 4
  EXPECT_EQ(r.checked() + r.skipped(), 1'000'000u);
  EXPECT_GT(r.exceptions().size(), 0u);
}

TEST(Scan, ExceptionRecordsAreConsistent) {
  // an exception is an n where the Eisenstein part alone does not clear C n sigma0(n);
  // its full coefficient was computed and is non-negative
  for (const ScanReport* r : {&a_scan_1e6(), &b_scan_1e6()}) {
    const BasisVector& v = r->side == Side::a ? solved().x : solved().y;
    EigenDataSet const& ds = eigen_data();
    CuspEvaluator ev(ds);
    std::size_t k = 0;
    for (const ExceptionRecord& e : r->exceptions()) {
      Factorization f = factorize(e.n);
      Rational bound = r->C * Rational(static_cast<long>(e.n)) * Rational(static_cast<long>(sigma0(f)));
      ASSERT_LT(quad_sign(e.eis - QuadElem::rational(bound, 3)), 0) << e.n;
      ASSERT_GE(quad_sign(e.eis + e.cusp), 0) << e.n;
      if (k++ % 97 == 0) {
        ASSERT_EQ(e.eis, eis_part(v, f)) << e.n;
        ASSERT_EQ(e.cusp, cusp_part(ev, v, f)) << e.n;
      }
    }
  }
}

TEST(Scan, NonExceptionsClearTheEnvelope) {
  // outside the exception list, eis >= C n sigma0(n); spot check by an independent pass
  const ScanReport& r = b_scan_1e6();
  std::vector<u64> ns = exception_ns(r);
  std::set<u64> ex(ns.begin(), ns.end());
  for (u64 n = 1; n <= 200000; ++n) {
    if (ex.count(n)) continue;
    Factorization f = factorize(n);
    Rational bound = r.C * Rational(static_cast<long>(n)) * Rational(static_cast<long>(sigma0(f)));
    ASSERT_GE(quad_sign(eis_part(solved().y, f) - QuadElem::rational(bound, 3)), 0) << n;
  }
}

TEST(Scan, DeterministicAcrossWindowsAndWorkers) {
  ScanConfig c = config(Side::b, 300001);
  ScanReport one = scan(solved().x, c);
  c.window = 4099;
  c.workers = 3;
  ScanReport many = scan(solved().x, c);
  EXPECT_EQ(exception_ns(one), exception_ns(many));
  EXPECT_EQ(one.checked(), many.checked());
  EXPECT_EQ(many.windows.size(), (300000u + 4098u) / 4099u);
  for (std::size_t i = 1; i < many.windows.size(); ++i) EXPECT_EQ(many.windows[i - 1].hi, many.windows[i].lo);
  c.lo = 150001;
  ScanReport tail = scan(solved().x, c);
  std::vector<u64> all = exception_ns(one), upper;
  for (u64 n : all)
    if (n >= 150001) upper.push_back(n);
  EXPECT_EQ(exception_ns(tail), upper);
}

TEST(Scan, MissingPrimesAreUnresolved) {
  const EigenDataSet small = load_eigen_data_file(LPCERT_DEFAULT_EIGEN_DATA, 1000);
  ScanConfig c = config(Side::b, 20001);
  c.ds = &small;
  ScanReport r = scan(solved().x, c);
  EXPECT_FALSE(r.unresolved().empty());
  EXPECT_FALSE(r.verified());
  for (const Unresolved& u : r.unresolved()) EXPECT_GT(u.prime, 1000u);
}

TEST(Scan, ConfigErrors) {
  ScanConfig c = config(Side::a, 100);
  c.lo = 0;
  EXPECT_THROW(scan(solved().x, c), ConfigError);
  c = config(Side::a, 100);
  c.workers = 0;
  EXPECT_THROW(scan(solved().x, c), ConfigError);
  c = config(Side::a, 100);
  c.window = 0;
  EXPECT_THROW(scan(solved().x, c), ConfigError);
  c = config(Side::a, 100);
  c.C = 0;
  EXPECT_THROW(scan(solved().x, c), ConfigError);
}

TEST(Vanishing, AttestedForSolution) {
  VanishingAttestation v = vanishing_certificate(solved().x, &eigen_data(), 20000);
  EXPECT_TRUE(v.attested) << v.denial;
  EXPECT_TRUE(v.denial.empty());
  EXPECT_EQ(v.digest, solution_digest(solved().x));
  EXPECT_FALSE(v.derivations.empty());
  for (const RelationCheck& r : v.relations) EXPECT_TRUE(r.holds) << r.relation;
}

TEST(Vanishing, DirectCoefficientsVanish) {
  const EigenDataSet& ds = eigen_data();
  for (u64 n = 1; n <= 20000; n += 4) EXPECT_TRUE(coefficient(&ds, solved().x, n, Side::a).is_zero()) << n;
}

TEST(Vanishing, PerturbedSolutionDenied) {
  BasisVector x = solved().x;
  x[11] += QuadElem::rational(Rational(1, 1000), 3);
  VanishingAttestation v = vanishing_certificate(x, &eigen_data(), 1000);
  EXPECT_FALSE(v.attested);
  EXPECT_FALSE(v.denial.empty());
}

TEST(Digest, StableAndSensitive) {
  std::string d = solution_digest(solved().x);
  EXPECT_EQ(d, solution_digest(solved().x));
  BasisVector x = solved().x;
  x[44] += QuadElem::rational(Rational(1, Integer(1) << 200), 3);
  EXPECT_NE(solution_digest(x), d);
}

namespace {

struct CertInputs {
  EpsTables eps;
  DeligneEnvelope ea, eb;
  Thresholds th;
  VanishingAttestation van;
};

const CertInputs& cert_inputs() {
  static const CertInputs c = [] {
    CertInputs in;
    in.eps = eps_tables(solved().x, solved().y, EpsStrategy::shallow);
    in.ea = deligne_envelope(solved().x);
    in.eb = deligne_envelope(solved().y);
    in.th.n0_a = threshold({in.ea.C, in.eps.eps_a});
    in.th.n0_b = threshold({in.eb.C, in.eps.eps_b});
    in.van = vanishing_certificate(solved().x, &eigen_data(), 2000);
    return in;
  }();
  return c;
}

}  // namespace

TEST(Certificate, PartialWithResidual) {
  const CertInputs& in = cert_inputs();
  Certificate c = certify(solved(), in.eps, in.ea, in.eb, in.th, {a_scan_1e6(), b_scan_1e6()}, in.van);
  EXPECT_EQ(c.status, "partial");
  EXPECT_EQ(c.exit_code(), 0);
  EXPECT_EQ(c.doc["status"]["verified_a_below"], 1'000'001u);
  EXPECT_TRUE(c.doc["status"].contains("residual"));
  EXPECT_EQ(c.doc["solution"]["digest"], solution_digest(solved().x));
  EXPECT_EQ(c.doc["scans"][1]["exceptions"], 4329u);
}

TEST(Certificate, CompleteWhenScansReachThresholds) {
  // a b-side scan to n0_b closes that side; the a side is closed artificially by a low threshold
  const CertInputs& in = cert_inputs();
  ASSERT_LT(in.th.n0_b, 9'000'000u);
  Thresholds th = in.th;
  th.n0_a = 1'000'001;
  ScanConfig cb = config(Side::b, in.th.n0_b);
  ScanReport b = scan(solved().x, cb);
  EXPECT_TRUE(b.verified());
  Certificate c = certify(solved(), in.eps, in.ea, in.eb, th, {a_scan_1e6(), b}, in.van);
  EXPECT_EQ(c.status, "complete");
  EXPECT_FALSE(c.doc["status"].contains("residual"));
}

TEST(Certificate, ViolationSetsExitCode) {
  const CertInputs& in = cert_inputs();
  ScanReport bad = b_scan_1e6();
  bad.windows[0].violations.push_back({7, QuadElem::rational(-1, 3)});
  Certificate c = certify(solved(), in.eps, in.ea, in.eb, in.th, {bad}, in.van);
  EXPECT_TRUE(c.violation());
  EXPECT_EQ(c.exit_code(), 1);
}

TEST(Certificate, DigestMismatchRejected) {
  const CertInputs& in = cert_inputs();
  ScanReport r = b_scan_1e6();
  r.digest = "0000000000000000";
  EXPECT_THROW(certify(solved(), in.eps, in.ea, in.eb, in.th, {r}, in.van), ConsistencyError);
  VanishingAttestation v = in.van;
  v.digest = "0000000000000000";
  EXPECT_THROW(certify(solved(), in.eps, in.ea, in.eb, in.th, {}, v), ConsistencyError);
}

TEST(Certificate, CoveredPrefixJoinsRanges) {
  ScanReport a, b, c;
  a.side = b.side = c.side = Side::a;
  a.lo = 1, a.hi = 100;
  b.lo = 100, b.hi = 250;
  c.lo = 300, c.hi = 400;
  EXPECT_EQ(covered_prefix({c, b, a}, Side::a), 250u);
  EXPECT_EQ(covered_prefix({b, c}, Side::a), 1u);
  EXPECT_EQ(covered_prefix({a}, Side::b), 1u);
}
