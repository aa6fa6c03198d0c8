#pragma once

// Certification: vanishing along n = 1 (mod 4), the crossover threshold, the
// windowed positivity scan with exact cusp fallback, and the certificate.

#include "lpcert/basis.hpp"
#include "lpcert/lp.hpp"

#include <json.hpp>
#include <mpfr.h>

#include <atomic>
#include <cstdio>
#include <functional>
#include <mutex>
#include <thread>

namespace lpcert {

struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kToolVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Solution digest (FNV-1a over the canonical text of x).

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string solution_digest(const BasisVector& x) {
  std::string text;
  for (int j = 1; j <= kBasisSize; ++j) text += x[j].to_string() + "\n";
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
  return buf;
}

// ---------------------------------------------------------------------------
// Exact and fast evaluation of the Eisenstein part through the regrouping
// a_eis = sigma3+(n0) X3 + sigma4+(n0) X4, with (X3, X4) tabulated per (a, b).

namespace detail {

inline long double rational_to_ld(const Rational& q, mpfr_rnd_t rnd) {
  mpfr_t t;
  mpfr_init2(t, 64);
  mpfr_set_q(t, q.get_mpq_t(), rnd);
  long double r = mpfr_get_ld(t, rnd);
  mpfr_clear(t);
  return r;
}

struct LdInterval {
  long double lo = 0, hi = 0;
};

inline LdInterval ld_enclose(const QuadElem& x) {
  if (x.is_zero()) return {};
  RatInterval e = enclose(x, Rational(1, Integer(1) << 96));
  return {rational_to_ld(e.lo, MPFR_RNDD), rational_to_ld(e.hi, MPFR_RNDU)};
}

}  // namespace detail

struct Split {
  int a = 0, b = 0;
  Factorization n0;  // coprime-to-6 part
};

inline Split split_23(const Factorization& f) {
  Split s;
  s.n0.value = f.value;
  for (auto& pe : f.factors) {
    if (pe.p == 2) {
      s.a = pe.e;
      for (int i = 0; i < pe.e; ++i) s.n0.value /= 2;
    } else if (pe.p == 3) {
      s.b = pe.e;
      for (int i = 0; i < pe.e; ++i) s.n0.value /= 3;
    } else {
      s.n0.factors.push_back(pe);
    }
  }
  return s;
}

class EisensteinTable {
 public:
  struct Entry {
    QuadElem X3{3}, X4{3};
    detail::LdInterval x3, x4;
  };

  // Covers every n <= max_n.
  explicit EisensteinTable(const BasisVector& v, u64 max_n = ~u64(0)) : v_(v) {
    for (u64 m = max_n; m >= 2; m /= 2) ++max_a_;
    for (u64 m = max_n; m >= 3; m /= 3) ++max_b_;
    table_.resize(static_cast<std::size_t>((max_a_ + 1) * (max_b_ + 1) * 4));
    for (int a = 0; a <= max_a_; ++a)
      for (int b = 0; b <= max_b_; ++b)
        for (const RegroupEntry& r : regroup(v, a, b)) {
          Entry& e = table_[index(a, b, r.s3, r.s4)];
          e.X3 = r.X3;
          e.X4 = r.X4;
          e.x3 = detail::ld_enclose(e.X3);
          e.x4 = detail::ld_enclose(e.X4);
        }
  }

  const Entry& entry(const Split& s) const {
    int s3 = chi(3, static_cast<long long>(s.n0.value % 12));
    int s4 = chi(4, static_cast<long long>(s.n0.value % 12));
    return table_[index(s.a, s.b, s3, s4)];
  }

  QuadElem exact(const Split& s) const {
    const Entry& e = entry(s);
    QuadElem out = e.X3 * Rational(sigma(kSigma3Plus, s.n0));
    if (!e.X4.is_zero()) out += e.X4 * Rational(sigma(kSigma4Plus, s.n0));
    return out;
  }

  // Certified lower bound in long double arithmetic.
  long double lower(const Split& s) const {
    const Entry& e = entry(s);
    long double s3 = static_cast<long double>(sigma_plus_i128(3, s.n0));
    long double s4 = static_cast<long double>(sigma_plus_i128(4, s.n0));
    // both sigmas are positive for gcd(n0, 6) = 1
    long double t3 = s3 * e.x3.lo, t4 = s4 * e.x4.lo;
    long double slop = (std::fabs(t3) + std::fabs(t4)) * 0x1p-56L;
    return t3 + t4 - slop;
  }

  const BasisVector& vector() const { return v_; }

 private:
  std::size_t index(int a, int b, int s3, int s4) const {
    if (a > max_a_ || b > max_b_) throw DomainError("exponent beyond the Eisenstein table");
    return static_cast<std::size_t>(((a * (max_b_ + 1) + b) * 2 + (s3 > 0 ? 0 : 1)) * 2 + (s4 > 0 ? 0 : 1));
  }

  BasisVector v_;
  int max_a_ = 0, max_b_ = 0;
  std::vector<Entry> table_;
};

// ---------------------------------------------------------------------------
// Vanishing of a_n for n = 1 (mod 4).

struct RelationCheck {
  std::string relation;
  bool holds = false;
};

struct VanishingAttestation {
  bool attested = false;
  std::string digest;
  std::vector<RelationCheck> relations;
  std::vector<std::string> derivations;
  u64 spot_limit = 0, spot_checked = 0;
  std::string denial;  // first failure, empty when attested
};

inline std::vector<LinearRelation> vanishing_relations() {
  return {
      {{{1, 1}, {11, 1}}},           {{{6, 1}, {12, 1}}},           {{{23, 1}, {29, 1}}},
      {{{25, 1}, {31, -1}}},         {{{35, 1}, {38, -1}}},         {{{41, 1}}},
      {{{43, 1}}},                   {{{13, 1}, {20, 1}, {21, 3}}}, {{{16, 1}, {20, 1}, {22, 2}}},
      {{{18, 1}, {21, -1}, {22, -2}}},
  };
}

inline QuadElem relation_value(const LinearRelation& r, const BasisVector& x) {
  QuadElem s = QuadElem::rational(0, 3);
  for (auto [j, c] : r.terms) s += x[j] * Rational(c);
  return s;
}

// Five structural vanishing relations among cuspidal coefficients, checked for n <= limit.
struct ObservationReport {
  u64 limit = 0;
  std::array<u64, 5> first_failure{};  // 0 when the item holds throughout
  bool ok() const {
    for (u64 f : first_failure)
      if (f) return false;
    return true;
  }
};

inline ObservationReport check_observations(const EigenDataSet& ds, u64 limit) {
  ObservationReport rep;
  rep.limit = limit;
  CuspEvaluator ev(ds);
  auto fail = [&](int item, u64 n) {
    if (!rep.first_failure[static_cast<std::size_t>(item - 1)]) rep.first_failure[static_cast<std::size_t>(item - 1)] = n;
  };
  for (u64 n = 1; n <= limit; ++n) {
    CuspCoeffs c = ev.coeffs(factorize(n));
    if (n % 4 == 1 && c[44] != 0) fail(1, n);
    if (n % 4 != 1 && c[41] != 0) fail(2, n);
    if (n % 4 == 1 && c[35] != -c[38]) fail(3, n);
    if (n % 3 == 1 && c[22] != 0) fail(4, n);
    if (n % 3 == 2 && c[20] != 0) fail(5, n);
  }
  return rep;
}

inline VanishingAttestation vanishing_certificate(const BasisVector& x, const EigenDataSet* ds,
                                                  u64 spot_limit = 100000) {
  VanishingAttestation out;
  out.digest = solution_digest(x);
  out.spot_limit = spot_limit;
  auto deny = [&](const std::string& why) {
    if (out.denial.empty()) out.denial = why;
  };
  for (const LinearRelation& r : vanishing_relations()) {
    bool ok = relation_value(r, x).is_zero();
    out.relations.push_back({r.text(), ok});
    if (!ok) deny("relation fails: " + r.text());
  }

  // Eisenstein: with chi4(n) = 1 and a = 0, every monomial of X3 and X4
  // cancels, for b = 0 and uniformly over b >= 1.
  for (ExpSpec b : {ExpSpec::exact(0), ExpSpec::at_least(1)}) {
    // a = 0 puts U = 4^-a at 1; V = 9^-b stays free on the tail
    bool zero = true;
    for (int s3 : {1, -1})
      for (int pb : {1, -1}) {
        if (!b.tail && pb != 1) continue;
        auto [m3, m4] = eis_monomials(x, ExpSpec::exact(0), b, SignClass{s3, pb, 1, pb});
        for (const Monomials* m : {&m3, &m4}) {
          if (b.tail) zero = zero && (m->c1 + m->cU).is_zero() && (m->cV + m->cUV).is_zero();
          else zero = zero && (m->c1 + m->cU + m->cV + m->cUV).is_zero();
        }
      }
    std::string what = std::string("Eisenstein part cancels identically for odd n, chi4(n) = 1, ") +
                       (b.tail ? "b >= 1" : "b = 0");
    out.derivations.push_back(what + (zero ? ": yes" : ": no"));
    if (!zero) deny(what);
  }

  // chi3 cusp forms: fold the twists into [13], [16], [18] with chi4(n) = 1.
  {
    QuadElem k13 = x[13], k16 = x[16], k18 = x[18];
    for (const TwistRelation& t : kTwistRelations) {
      k13 += x[t.index] * Rational(t.c13);
      k16 += x[t.index] * Rational(t.c16);
      k18 += x[t.index] * Rational(t.c18);
    }
    bool zero = k13.is_zero() && k16.is_zero() && k18.is_zero();
    out.derivations.push_back(std::string("chi3 cusp part collects to 0*[13] + 0*[16] + 0*[18]: ") +
                              (zero ? "yes" : "no"));
    if (!zero) deny("chi3 cusp collection");
  }

  // chi4 cusp forms: x41 = x43 = 0 and x35 = x38; [44]_n = 0, [35]_n = -[38]_n
  // and [41]_(n/3) = 0 are the observations checked on the data below.
  {
    bool even_scales = true;
    for (int j : {14, 15, 17, 19, 36, 37, 39, 40})
      even_scales = even_scales && basis_index(j).scale % 2 == 0;
    out.derivations.push_back(std::string("scalings by 2 and 4 vanish at odd n: ") + (even_scales ? "yes" : "no"));
    if (!even_scales) deny("scaling registry");
  }

  if (ds && spot_limit >= 1) {
    ObservationReport obs = check_observations(*ds, spot_limit);
    for (int item : {1, 2, 3}) {
      u64 f = obs.first_failure[static_cast<std::size_t>(item - 1)];
      out.derivations.push_back("observation " + std::to_string(item) + " for n <= " + std::to_string(spot_limit) +
                                (f ? ": fails at " + std::to_string(f) : ": yes"));
      if (f) deny("observation " + std::to_string(item) + " fails at n = " + std::to_string(f));
    }
    EisensteinTable eis(x, spot_limit);
    CuspEvaluator ev(*ds);
    for (u64 n = 1; n <= spot_limit; n += 4) {
      Factorization f = factorize(n);
      QuadElem an = eis.exact(split_23(f)) + cusp_part(ev, x, f);
      ++out.spot_checked;
      if (!an.is_zero()) {
        deny("a_n != 0 at n = " + std::to_string(n));
        break;
      }
    }
  } else {
    deny("no eigen data for the cusp spot check");
  }
  out.attested = out.denial.empty();
  return out;
}

// ---------------------------------------------------------------------------
// Crossover threshold: least n0 with R/loglog n + log(C/eps)/log n <= (k-1)/2
// for all n >= n0, where R = r log 2.

// Upper end of max log sigma0(n) log log n / (log 2 log n), attained at
// n = 6983776800; the printed 1.5379 is a truncation and too small to be safe.
inline Rational nicolas_robin_r() {
  static const Rational r = [] {
    RatInterval e = divisor_ratio(factorize(6983776800ULL));
    Integer scale = pow10(15);
    return make_rational(ceil_of(e.hi * scale), scale);
  }();
  return r;
}

struct ThresholdInput {
  Rational C, eps;
  int k = 3;
  Rational r = nicolas_robin_r();
};

struct ThresholdResult {
  u64 n0 = 0;
  RatInterval at_n0, below_n0;  // left-hand side at n0 and at n0 - 1
};

namespace detail {

inline RatInterval threshold_lhs(const ThresholdInput& t, u64 n) {
  RatInterval logn = log_of(Rational(Integer(std::to_string(n))));
  RatInterval loglog = interval_log(logn);
  RatInterval R = RatInterval::point(t.r) * log_of(2);
  RatInterval lce = log_of(t.C / t.eps);
  return R / loglog + lce / logn;
}

}  // namespace detail

inline ThresholdResult threshold_detail(const ThresholdInput& t) {
  if (t.C <= 0 || t.eps <= 0) throw DomainError("threshold needs C, eps > 0");
  if (t.k < 2) throw DomainError("threshold needs k >= 2");
  if (t.C < t.eps) throw DomainError("threshold assumes C >= eps (monotone left-hand side)");
  const Rational target = make_rational(t.k - 1, 2);
  auto ok = [&](u64 n) { return detail::threshold_lhs(t, n).hi <= target; };
  // the left-hand side decreases for n >= 16 once C >= eps
  u64 lo = 16, hi = 32;
  while (!ok(hi)) {
    if (hi > (u64(1) << 62)) throw DomainError("threshold beyond 2^63");
    lo = hi;
    hi *= 2;
  }
  if (ok(lo)) hi = lo;
  while (hi - lo > 1) {
    u64 mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  ThresholdResult r;
  r.n0 = hi;
  r.at_n0 = detail::threshold_lhs(t, hi);
  r.below_n0 = detail::threshold_lhs(t, hi - 1);
  return r;
}

inline u64 threshold(const ThresholdInput& t) { return threshold_detail(t).n0; }

// ---------------------------------------------------------------------------
// Windowed scan.

struct ScanConfig {
  Side side = Side::a;
  u64 lo = 1, hi = 1000001;  // [lo, hi)
  u64 window = u64(1) << 16;
  unsigned workers = 1;
  Rational C;  // Deligne envelope constant for this side
  const EigenDataSet* ds = nullptr;
};

struct ExceptionRecord {
  u64 n;
  QuadElem eis, cusp;  // eis < C n sigma0(n) <= eis + cusp is not required; eis + cusp >= 0 is
};

struct Violation {
  u64 n;
  QuadElem value;
};

struct Unresolved {
  u64 n, prime;
};

struct WindowReport {
  u64 lo = 0, hi = 0;
  u64 checked = 0, skipped = 0, exact_tests = 0;
  bool halted = false;
  std::vector<ExceptionRecord> exceptions;
  std::vector<Violation> violations;
  std::vector<Unresolved> unresolved;
};

struct ScanReport {
  Side side = Side::a;
  u64 lo = 0, hi = 0;
  Rational C;
  std::string digest;
  std::vector<WindowReport> windows;  // sorted by lo

  u64 checked() const {
    u64 s = 0;
    for (auto& w : windows) s += w.checked;
    return s;
  }
  u64 skipped() const {
    u64 s = 0;
    for (auto& w : windows) s += w.skipped;
    return s;
  }
  std::vector<ExceptionRecord> exceptions() const {
    std::vector<ExceptionRecord> out;
    for (auto& w : windows) out.insert(out.end(), w.exceptions.begin(), w.exceptions.end());
    return out;
  }
  std::vector<Violation> violations() const {
    std::vector<Violation> out;
    for (auto& w : windows) out.insert(out.end(), w.violations.begin(), w.violations.end());
    return out;
  }
  std::vector<Unresolved> unresolved() const {
    std::vector<Unresolved> out;
    for (auto& w : windows) out.insert(out.end(), w.unresolved.begin(), w.unresolved.end());
    return out;
  }
  bool verified() const {
    for (auto& w : windows)
      if (w.halted || !w.violations.empty() || !w.unresolved.empty()) return false;
    return true;
  }
};

namespace detail {

inline WindowReport scan_window(const EisensteinTable& eis, const CuspEvaluator* ev, Side side, const Rational& C,
                                long double c_up, u64 lo, u64 hi, std::shared_ptr<const PrimeTable> primes) {
  WindowReport w;
  w.lo = lo;
  w.hi = hi;
  FactorWindow fw(lo, hi, std::move(primes));
  for (u64 n = lo; n < hi; ++n) {
    if (side == Side::a && n % 4 == 1) {
      ++w.skipped;
      continue;
    }
    ++w.checked;
    Factorization f = fw.at(n);
    Split s = split_23(f);
    u64 d = sigma0(f);
    long double rhs = c_up * static_cast<long double>(n) * static_cast<long double>(d);
    rhs += rhs * 0x1p-56L;
    if (eis.lower(s) >= rhs) continue;
    ++w.exact_tests;
    QuadElem e = eis.exact(s);
    Rational bound = C * Rational(Integer(std::to_string(n))) * Rational(Integer(std::to_string(d)));
    if (quad_sign(e - QuadElem::rational(bound, 3)) >= 0) continue;
    if (!ev) {
      w.unresolved.push_back({n, 0});
      continue;
    }
    QuadElem c;
    try {
      c = cusp_part(*ev, eis.vector(), f);
    } catch (const CoverageError& err) {
      w.unresolved.push_back({n, err.prime});
      continue;
    }
    if (quad_sign(e + c) < 0) {
      w.violations.push_back({n, e + c});
      w.halted = true;
      break;
    }
    w.exceptions.push_back({n, e, c});
  }
  return w;
}

}  // namespace detail

using ScanProgress = std::function<void(const WindowReport&, std::size_t done, std::size_t total)>;

inline ScanReport scan(const BasisVector& x, const ScanConfig& cfg, const ScanProgress& progress = {}) {
  if (cfg.lo < 1 || cfg.lo >= cfg.hi) throw ConfigError("scan: need 1 <= lo < hi");
  if (cfg.window < 1 || cfg.window > FactorWindow::kMaxWindow) throw ConfigError("scan: bad window size");
  if (cfg.workers < 1) throw ConfigError("scan: need at least one worker");
  if (cfg.C <= 0) throw ConfigError("scan: envelope constant must be positive");
  BasisVector storage;
  const BasisVector& v = side_vector(x, cfg.side, storage);
  EisensteinTable eis(v, cfg.hi - 1);
  std::unique_ptr<CuspEvaluator> ev;
  if (cfg.ds) ev = std::make_unique<CuspEvaluator>(*cfg.ds);
  long double c_up = detail::rational_to_ld(cfg.C, MPFR_RNDU);
  auto primes = std::make_shared<const PrimeTable>(isqrt64(cfg.hi - 1) + 1);

  ScanReport rep;
  rep.side = cfg.side;
  rep.lo = cfg.lo;
  rep.hi = cfg.hi;
  rep.C = cfg.C;
  rep.digest = solution_digest(x);
  std::size_t count = static_cast<std::size_t>((cfg.hi - cfg.lo + cfg.window - 1) / cfg.window);
  rep.windows.resize(count);
  std::atomic<std::size_t> next{0}, done{0};
  std::mutex mu;
  std::exception_ptr failure;
  auto work = [&] {
    try {
      for (std::size_t i = next++; i < count; i = next++) {
        u64 lo = cfg.lo + static_cast<u64>(i) * cfg.window;
        u64 hi = std::min(cfg.hi, lo + cfg.window);
        rep.windows[i] = detail::scan_window(eis, ev.get(), cfg.side, cfg.C, c_up, lo, hi, primes);
        std::size_t d = ++done;
        if (progress) {
          std::lock_guard<std::mutex> lock(mu);
          progress(rep.windows[i], d, count);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!failure) failure = std::current_exception();
      next = count;
    }
  };
  std::vector<std::thread> pool;
  unsigned extra = std::min<unsigned>(cfg.workers, static_cast<unsigned>(count)) - 1;
  for (unsigned t = 0; t < extra; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rep;
}

// ---------------------------------------------------------------------------
// Certificate.

using Json = nlohmann::ordered_json;

inline Json tagged(const std::string& value, Rounding dir) {
  const char* tag = dir == Rounding::down ? "down" : (dir == Rounding::up ? "up" : "nearest");
  return Json{{"value", value}, {"rounding", tag}};
}

struct Thresholds {
  u64 n0_a = 0, n0_b = 0;
};

struct Certificate {
  Json doc;
  std::string status;  // "complete", "partial" or "violation"
  bool complete() const { return status == "complete"; }
  bool violation() const { return status == "violation"; }
  int exit_code() const { return violation() ? 1 : 0; }
  std::string text() const { return doc.dump(2) + "\n"; }
};

inline Json eps_rows_json(const std::vector<EpsRow>& rows) {
  Json out = Json::array();
  for (const EpsRow& r : rows) {
    Json parts = Json::array();
    for (const CaseBound& cb : r.parts) parts.push_back({{"case", cb.label()}, {"eps", tagged(rational_to_decimal(cb.eps, 6, Rounding::down), Rounding::down)}});
    out.push_back({{"row", r.label}, {"feasible", r.feasible}, {"eps", tagged(rational_to_decimal(r.eps, 6, Rounding::down), Rounding::down)}, {"parts", parts}});
  }
  return out;
}

// Covered prefix [1, m) of verified scans on one side.
inline u64 covered_prefix(const std::vector<ScanReport>& scans, Side side) {
  std::vector<std::pair<u64, u64>> ranges;
  for (const ScanReport& s : scans)
    if (s.side == side && s.verified()) ranges.push_back({s.lo, s.hi});
  std::sort(ranges.begin(), ranges.end());
  u64 m = 1;
  for (auto [lo, hi] : ranges)
    if (lo <= m && hi > m) m = hi;
  return m;
}

inline Certificate certify(const Solution& sol, const EpsTables& eps, const DeligneEnvelope& env_a,
                           const DeligneEnvelope& env_b, const Thresholds& th, const std::vector<ScanReport>& scans,
                           const VanishingAttestation& van) {
  const std::string digest = solution_digest(sol.x);
  for (const ScanReport& s : scans)
    if (s.digest != digest) throw ConsistencyError("scan report digest " + s.digest + " does not match " + digest);
  if (van.digest != digest) throw ConsistencyError("vanishing attestation digest does not match the solution");

  Certificate cert;
  Json& d = cert.doc;
  d["meta"] = {{"tool", "lpcert"}, {"version", kToolVersion}, {"level", 48}, {"weight", 3}, {"dimension", 6}};
  BoundReport br = bound_report(sol);
  d["solution"] = {
      {"digest", digest},
      {"x1", tagged(quad_to_decimal(sol.x[1], 38, Rounding::down), Rounding::down)},
      {"center_density_bound", {{"exact", sol.center_density_bound.to_string()}, {"decimal", tagged(br.center_decimal, Rounding::down)}}},
      {"b0", tagged(br.b0_decimal, Rounding::down)},
      {"density_bound", tagged(br.density_decimal, Rounding::down)},
  };
  d["constants"] = {
      {"C_a", tagged(rational_to_decimal(env_a.C, 8, Rounding::up), Rounding::up)},
      {"C_b", tagged(rational_to_decimal(env_b.C, 8, Rounding::up), Rounding::up)},
      {"eps_a", tagged(rational_to_decimal(eps.eps_a, 6, Rounding::down), Rounding::down)},
      {"eps_b", tagged(rational_to_decimal(eps.eps_b, 6, Rounding::down), Rounding::down)},
      {"ratio_cutoff", eps.ratios.cutoff},
      {"eps_table_a", eps_rows_json(eps.a_rows)},
      {"eps_table_b", eps_rows_json(eps.b_rows)},
  };
  d["thresholds"] = {{"n0_a", th.n0_a}, {"n0_b", th.n0_b}};

  bool violation = false;
  Json sj = Json::array(), ej = Json::array();
  for (const ScanReport& s : scans) {
    const char* side = s.side == Side::a ? "a" : "b";
    std::vector<Violation> vs = s.violations();
    violation = violation || !vs.empty();
    Json viol = Json::array();
    for (const Violation& v : vs) viol.push_back({{"n", v.n}, {"value", tagged(quad_to_decimal(v.value, 12, Rounding::up), Rounding::up)}});
    Json unres = Json::array();
    for (const Unresolved& u : s.unresolved()) unres.push_back({{"n", u.n}, {"prime", u.prime}});
    std::vector<ExceptionRecord> ex = s.exceptions();
    sj.push_back({{"side", side},
                  {"range", {s.lo, s.hi}},
                  {"windows", s.windows.size()},
                  {"checked", s.checked()},
                  {"skipped_1_mod_4", s.skipped()},
                  {"exceptions", ex.size()},
                  {"verified", s.verified()},
                  {"violations", viol},
                  {"unresolved", unres}});
    for (const ExceptionRecord& e : ex) {
      QuadElem t = e.eis + e.cusp;
      ej.push_back({{"side", side}, {"n", e.n}, {"sign", quad_sign(t)}, {"a_n", tagged(t.is_zero() ? "0" : quad_to_decimal(t, 8, Rounding::down), Rounding::down)}});
    }
  }
  d["scans"] = sj;
  d["exceptions"] = ej;
  Json rel = Json::array();
  for (const RelationCheck& r : van.relations) rel.push_back({{"relation", r.relation}, {"holds", r.holds}});
  d["vanishing"] = {{"attested", van.attested},
                    {"relations", rel},
                    {"derivations", van.derivations},
                    {"spot_checked_up_to", van.spot_limit},
                    {"denial", van.denial}};

  u64 cov_a = covered_prefix(scans, Side::a), cov_b = covered_prefix(scans, Side::b);
  bool full = van.attested && cov_a >= th.n0_a && cov_b >= th.n0_b;
  cert.status = violation ? "violation" : (full ? "complete" : "partial");
  Json st = {{"result", cert.status}, {"verified_a_below", cov_a}, {"verified_b_below", cov_b}};
  if (cert.status == "partial") {
    st["residual"] = "a_n >= 0 verified for n < " + std::to_string(cov_a) + " and for n >= " + std::to_string(th.n0_a) +
                     " by the Deligne tail condition; b_n >= 0 verified for n < " + std::to_string(cov_b) +
                     " and for n >= " + std::to_string(th.n0_b) + (van.attested ? "" : "; vanishing not attested");
  }
  d["status"] = st;
  return cert;
}

}  // namespace lpcert
