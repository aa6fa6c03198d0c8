#include "support.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <sstream>

using namespace lpcert;
using lpcert::testing::eigen_data;
using lpcert::testing::solved;

namespace {

// index -> [c_1, ..., c_N] from the PARI dump
std::map<int, std::vector<long long>> pari_fixture() {
  std::ifstream in(LPCERT_TEST_DATA_DIR "/pari_cusp_basis.txt");
  EXPECT_TRUE(in.good());
  std::map<int, std::vector<long long>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int idx;
    ls >> idx;
    long long c;
    while (ls >> c) out[idx].push_back(c);
  }
  return out;
}

std::string half(__int128 twice) { return std::to_string(static_cast<long long>(twice)) + "/2"; }

// A small data file: the bundled forms restricted to p <= 50.
std::vector<std::string> small_data_lines() {
  const EigenDataSet ds = load_eigen_data_file(LPCERT_DEFAULT_EIGEN_DATA, 50);
  std::vector<std::string> lines{"primebound 50"};
  for (const EigenForm& f : ds.forms) {
    std::string partner = f.partner < 0 ? "none" : ds.forms[static_cast<std::size_t>(f.partner)].id;
    lines.push_back("form " + f.id + " level " + std::to_string(f.level) + " char " + std::to_string(f.character) +
                    " disc " + std::to_string(f.disc) + " partner " + partner);
  }
  for (std::size_t k = 0; k < ds.primes().size(); ++k)
    for (const EigenForm& f : ds.forms)
      lines.push_back(f.id + " " + std::to_string(ds.primes()[k]) + " " + half(f.lambda[k].A) + " " + half(f.lambda[k].B));
  return lines;
}

EigenDataSet load_lines(const std::vector<std::string>& lines) {
  std::ostringstream os;
  for (auto& l : lines) os << l << "\n";
  std::istringstream is(os.str());
  return load_eigen_data(is);
}

std::size_t find_line(const std::vector<std::string>& lines, const std::string& prefix) {
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (lines[i].rfind(prefix, 0) == 0) return i;
  ADD_FAILURE() << "no line " << prefix;
  return 0;
}

}  // namespace

TEST(EigenData, BundledFileLoads) {
  const EigenDataSet& ds = eigen_data();
  EXPECT_EQ(ds.prime_bound, 1'000'000u);
  EXPECT_EQ(ds.primes().size(), 78498u);
  EXPECT_EQ(ds.form("h2").partner, ds.form_index("h3"));
  EXPECT_EQ(ds.form("h1").partner, -1);
  EXPECT_THROW(ds.form_index("h13"), DomainError);
}

TEST(EigenData, SmallRoundTrip) {
  EigenDataSet ds = load_lines(small_data_lines());
  EXPECT_EQ(ds.prime_bound, 50u);
  for (u64 n = 1; n <= 50; ++n)
    for (int j : {13, 18, 38, 44}) EXPECT_EQ(cusp_basis_coeff(ds, j, n), cusp_basis_coeff(eigen_data(), j, n)) << j << " " << n;
}

TEST(EigenData, MalformedInputRejected) {
  const std::vector<std::string> good = small_data_lines();
  auto with = [&](std::size_t i, const std::string& repl) {
    auto l = good;
    l[i] = repl;
    return l;
  };
  std::size_t h1_5 = find_line(good, "h1 5 ");
  EXPECT_THROW(load_lines(with(h1_5, "h1 5 x/1 0/1")), ParseError);
  EXPECT_THROW(load_lines(with(h1_5, "h1 5 1/3 0/1")), ParseError);
  EXPECT_THROW(load_lines(with(h1_5, "h1 5 0/1")), ParseError);
  EXPECT_THROW(load_lines(with(h1_5, "h1 5 0/1 1/1")), ParseError);  // rational form
  EXPECT_THROW(load_lines(with(find_line(good, "h2 5 "), "h2 5 1/2 1/2")), ParseError);  // halves need d = -3
  EXPECT_THROW(load_lines(with(h1_5, "h99 5 0/1 0/1")), ParseError);
  EXPECT_THROW(load_lines(with(find_line(good, "h1 47 "), "h1 49 0/1 0/1")), ParseError);
  EXPECT_THROW(load_lines(with(0, "primebound -4")), ParseError);
  EXPECT_THROW(load_lines(with(1, "form h1 level 7 char 3 disc 0 partner none")), ParseError);

  // Deligne bound |lambda(p)| <= 2p
  EXPECT_THROW(load_lines(with(h1_5, "h1 5 11/1 0/1")), DataIntegrityError);
  EXPECT_NO_THROW(load_lines(with(h1_5, "h1 5 10/1 0/1")));
  // conjugate partners must agree
  std::size_t h2_5 = find_line(good, "h2 5 ");
  EXPECT_THROW(load_lines(with(h2_5, "h2 5 0/1 1/1")), DataIntegrityError);
  // a missing record
  auto missing = good;
  missing.erase(missing.begin() + static_cast<long>(find_line(good, "h7 13 ")));
  EXPECT_THROW(load_lines(missing), DataIntegrityError);
  // unsorted primes
  auto swapped = good;
  std::swap(swapped[find_line(good, "h1 5 ")], swapped[find_line(good, "h1 7 ")]);
  EXPECT_THROW(load_lines(swapped), ParseError);

  EXPECT_THROW(load_eigen_data_file("/nonexistent/eigen.txt"), ConfigError);
}

TEST(EigenData, CoverageErrorBeyondPrimeBound) {
  const EigenDataSet ds = load_eigen_data_file(LPCERT_DEFAULT_EIGEN_DATA, 50);
  EXPECT_EQ(ds.prime_bound, 50u);
  EXPECT_NO_THROW(cusp_basis_coeff(ds, 13, 47 * 47));
  try {
    cusp_basis_coeff(ds, 13, 53);  // a zero lambda at a smaller prime short-circuits
    ADD_FAILURE() << "expected CoverageError";
  } catch (const CoverageError& e) {
    EXPECT_EQ(e.prime, 53u);
  }
}

TEST(Hecke, MultiplicativeOnCoprimeArguments) {
  const EigenDataSet& ds = eigen_data();
  for (const EigenForm& f : ds.forms)
    for (u64 m = 1; m <= 60; ++m)
      for (u64 n = 1; n <= 60; ++n) {
        if (std::gcd(m, n) != 1) continue;
        ASSERT_EQ(eigen_coeff(ds, f.id, m * n), eigen_coeff(ds, f.id, m) * eigen_coeff(ds, f.id, n)) << f.id << " " << m << " " << n;
      }
}

TEST(Hecke, PrimePowerRecursion) {
  // lambda(p^2) = lambda(p)^2 - chi(p) p^2, written out without the library recursion
  const EigenDataSet& ds = eigen_data();
  for (const EigenForm& f : ds.forms)
    for (u64 p : {5ULL, 7ULL, 11ULL, 101ULL, 997ULL}) {
      QuadElem l = eigen_coeff(ds, f.id, p);
      long c = chi(f.character, static_cast<long long>(p));
      Rational pp(static_cast<long>(p * p));
      EXPECT_EQ(eigen_coeff(ds, f.id, p * p), l * l - QuadElem::rational(c * pp, f.disc ? f.disc : 3)) << f.id << " " << p;
    }
}

TEST(Hecke, DeligneBoundAtEveryPrime) {
  const EigenDataSet& ds = eigen_data();
  for (const EigenForm& f : ds.forms)
    for (std::size_t k = 0; k < ds.primes().size(); ++k) {
      double p = ds.primes()[k];
      double a = static_cast<double>(f.lambda[k].A) / 2, b = static_cast<double>(f.lambda[k].B) / 2;
      // d <= 0 throughout, so |lambda|^2 = a^2 - d b^2
      ASSERT_LE(a * a - static_cast<double>(f.disc) * b * b, 4 * p * p * (1 + 1e-12)) << f.id << " " << p;
    }
}

TEST(CuspBasis, MatchesPariFixture) {
  auto fx = pari_fixture();
  ASSERT_EQ(fx.size(), 20u);
  const EigenDataSet& ds = eigen_data();
  CuspEvaluator ev(ds);
  for (auto& [idx, coeffs] : fx) {
    ASSERT_TRUE(!is_eisenstein(idx)) << idx;
    ASSERT_EQ(coeffs.size(), 2000u);
    for (u64 n = 1; n <= coeffs.size(); ++n) {
      ASSERT_EQ(cusp_basis_coeff(ds, idx, n), Integer(static_cast<long>(coeffs[n - 1]))) << idx << " " << n;
      ASSERT_EQ(static_cast<long long>(ev.coeffs(factorize(n))[static_cast<std::size_t>(idx)]), coeffs[n - 1]) << idx << " " << n;
    }
  }
}

TEST(CuspBasis, IntegralAndGroupedAgreesWithDirect) {
  // the direct route throws unless every coefficient is a rational integer
  const EigenDataSet& ds = eigen_data();
  CuspEvaluator ev(ds);
  for (u64 n = 1; n <= 100000; ++n) {
    Factorization f = factorize(n);
    CuspCoeffs c = ev.coeffs(f);
    for (int j = 1; j <= kBasisSize; ++j) {
      if (is_eisenstein(j)) continue;
      ASSERT_EQ(to_integer(c[static_cast<std::size_t>(j)]), cusp_basis_coeff(ds, j, f)) << j << " " << n;
    }
  }
}

TEST(CuspBasis, NonCuspidalIndexRejected) {
  EXPECT_THROW(cusp_basis_coeff(eigen_data(), 1, 5), DomainError);
  EXPECT_THROW(cusp_base_coeff_direct(eigen_data(), 14, factorize(5)), DomainError);
  EXPECT_EQ(cusp_basis_coeff(eigen_data(), 14, 0), 0);
}

TEST(Observations, HoldOnDataTo1e5) {
  ObservationReport rep = check_observations(eigen_data(), 100000);
  EXPECT_TRUE(rep.ok());
  for (u64 f : rep.first_failure) EXPECT_EQ(f, 0u);
}

TEST(Deligne, EnvelopeConstants) {
  DeligneEnvelope a = deligne_envelope(solved().x), b = deligne_envelope(solved().y);
  EXPECT_NEAR(a.C.get_d(), 21.6161, 1e-3);
  EXPECT_NEAR(b.C.get_d(), 24.0265, 1e-3);
  EXPECT_EQ(a.cases.size(), 6u);
  for (auto& c : a.cases) EXPECT_LE(c.value.hi, a.C);
}

TEST(Deligne, ConstantEnclosuresAreTight) {
  RatInterval k21 = deligne_constant(21, Rational(1, 1000000000));
  EXPECT_NEAR(k21.mid().get_d(), 24.0 / 7 * (3 + std::sqrt(2.0)), 1e-9);
  RatInterval k44 = deligne_constant(44, Rational(1, 1000000000));
  EXPECT_NEAR(k44.mid().get_d(), 2 * std::sqrt(3.0), 1e-9);
  EXPECT_THROW(deligne_constant(14, Rational(1, 10)), DomainError);
}

TEST(Deligne, EnvelopeBoundsActualCuspParts) {
  const EigenDataSet& ds = eigen_data();
  CuspEvaluator ev(ds);
  DeligneEnvelope ea = deligne_envelope(solved().x), eb = deligne_envelope(solved().y);
  const double ca = ea.C.get_d(), cb = eb.C.get_d();
  double worst_a = 0, worst_b = 0;
  for (u64 n = 1; n <= 100000; ++n) {
    Factorization f = factorize(n);
    double bound = static_cast<double>(n) * static_cast<double>(sigma0(f));
    double ra = std::abs(to_double(cusp_part(ev, solved().x, f))) / bound;
    double rb = std::abs(to_double(cusp_part(ev, solved().y, f))) / bound;
    worst_a = std::max(worst_a, ra);
    worst_b = std::max(worst_b, rb);
    ASSERT_LE(ra, ca * (1 + 1e-12)) << n;
    ASSERT_LE(rb, cb * (1 + 1e-12)) << n;
  }
  EXPECT_GT(worst_a, 0);
  EXPECT_GT(worst_b, 0);
}
