#pragma once

// Hecke eigenvalue data for the twelve eigenforms h1..h12, their
// multiplicative extension, and the cuspidal basis f13..f22, f35..f44.

#include "lpcert/arith.hpp"
#include "lpcert/registry.hpp"

#include <zlib.h>

#include <array>
#include <charconv>
#include <functional>
#include <istream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace lpcert {

struct ParseError : std::runtime_error {
  std::size_t line;
  ParseError(std::size_t l, const std::string& msg)
      : std::runtime_error("line " + std::to_string(l) + ": " + msg), line(l) {}
};
struct DataIntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CoverageError : std::runtime_error {
  u64 prime;
  CoverageError(u64 p, const std::string& msg) : std::runtime_error(msg), prime(p) {}
};

inline constexpr int kNumForms = 12;

// (A + B sqrt d) / 2 with A, B of equal parity: exact arithmetic for the
// algebraic integers that occur as Hecke eigenvalues.
struct HalfQuad {
  __int128 A = 2, B = 0;
  static HalfQuad one() { return {2, 0}; }
  static HalfQuad zero() { return {0, 0}; }
  bool is_zero() const { return A == 0 && B == 0; }
};

inline HalfQuad hq_mul(const HalfQuad& x, const HalfQuad& y, long d) {
  return {(x.A * y.A + d * x.B * y.B) / 2, (x.A * y.B + x.B * y.A) / 2};
}

inline HalfQuad hq_sub(const HalfQuad& x, const HalfQuad& y) { return {x.A - y.A, x.B - y.B}; }

inline HalfQuad hq_scale(const HalfQuad& x, long long c) { return {x.A * c, x.B * c}; }

inline Integer to_integer(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  Integer r = static_cast<unsigned long>(u >> 64);
  r <<= 64;
  r += static_cast<unsigned long>(static_cast<u64>(u));
  return neg ? Integer(-r) : r;
}

inline QuadElem to_quad(const HalfQuad& x, long d) {
  if (d == 0) return QuadElem::rational(make_rational(to_integer(x.A), 2));
  return QuadElem(d, make_rational(to_integer(x.A), 2), make_rational(to_integer(x.B), 2));
}

struct EigenForm {
  std::string id;  // "h1".."h12"
  int character = 3;
  u64 level = 1;
  long disc = 0;  // 0: rational coefficients
  int partner = -1;  // index of the conjugate form, -1 if none
  std::vector<HalfQuad> lambda;  // lambda(p) by prime index

  int nebentypus(u64 p) const {
    if (level % p == 0) return 0;
    return chi(character, static_cast<long long>(p % 12));
  }
};

class EigenDataSet {
 public:
  std::array<EigenForm, kNumForms> forms;
  u64 prime_bound = 1;
  std::string provenance;

  int form_index(const std::string& id) const {
    for (int i = 0; i < kNumForms; ++i)
      if (forms[static_cast<std::size_t>(i)].id == id) return i;
    throw DomainError("unknown eigenform " + id);
  }
  const EigenForm& form(const std::string& id) const { return forms[static_cast<std::size_t>(form_index(id))]; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  std::int64_t prime_slot(u64 p) const {
    if (p > prime_bound || p >= slot_.size()) return -1;
    return slot_[p];
  }

  // lambda(p) for a prime p <= prime_bound
  const HalfQuad& lambda_p(int f, u64 p) const {
    std::int64_t s = prime_slot(p);
    if (s < 0)
      throw CoverageError(p, "prime " + std::to_string(p) + " exceeds the eigen-data bound " +
                                 std::to_string(prime_bound));
    return forms[static_cast<std::size_t>(f)].lambda[static_cast<std::size_t>(s)];
  }

  void set_primes(std::vector<std::uint32_t> ps) {
    primes_ = std::move(ps);
    slot_.assign(prime_bound + 1, -1);
    for (std::size_t i = 0; i < primes_.size(); ++i) slot_[primes_[i]] = static_cast<std::int32_t>(i);
  }

 private:
  std::vector<std::uint32_t> primes_;
  std::vector<std::int32_t> slot_;
};

// ---------------------------------------------------------------------------
// Loading.

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool parse_i64(std::string_view s, long long& v) {
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

// "num/den" as a twice-value 2 num/den, which must be an integer.
inline bool parse_half(std::string_view s, __int128& twice) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return false;
  long long n, d;
  if (!parse_i64(s.substr(0, slash), n) || !parse_i64(s.substr(slash + 1), d) || d <= 0) return false;
  if ((2 * static_cast<__int128>(n)) % d != 0) return false;
  twice = 2 * static_cast<__int128>(n) / d;
  return true;
}

}  // namespace detail

// Parses the line-oriented format; `next_line` returns false at end of input.
// Records for primes above `prime_limit` are ignored and the bound lowered.
inline EigenDataSet load_eigen_data(const std::function<bool(std::string&)>& next_line,
                                    u64 prime_limit = ~u64(0)) {
  EigenDataSet ds;
  std::map<std::string, int> idx;
  std::vector<std::string> partner_names(kNumForms);
  int nforms = 0;
  u64 declared = 0;
  bool have_declared = false;
  std::vector<std::uint32_t> primes;
  std::vector<std::array<bool, kNumForms>> seen;
  std::string line;
  std::size_t ln = 0;
  while (next_line(line)) {
    ++ln;
    std::string_view sv(line);
    if (!sv.empty() && sv.back() == '\n') sv.remove_suffix(1);
    auto hash = sv.find('#');
    if (hash != std::string_view::npos) {
      if (hash == 0) ds.provenance += std::string(sv.substr(1)) + "\n";
      sv = sv.substr(0, hash);
    }
    auto tok = detail::split_ws(sv);
    if (tok.empty()) continue;
    if (tok[0] == "primebound") {
      long long p;
      if (tok.size() != 2 || !detail::parse_i64(tok[1], p) || p < 1) throw ParseError(ln, "bad primebound line");
      declared = static_cast<u64>(p);
      have_declared = true;
      continue;
    }
    if (tok[0] == "form") {
      if (tok.size() != 10 || tok[2] != "level" || tok[4] != "char" || tok[6] != "disc" || tok[8] != "partner")
        throw ParseError(ln, "bad form header");
      if (nforms == kNumForms) throw ParseError(ln, "more than 12 forms");
      EigenForm& f = ds.forms[static_cast<std::size_t>(nforms)];
      f.id = std::string(tok[1]);
      long long lvl, ch, d;
      if (!detail::parse_i64(tok[3], lvl) || !detail::parse_i64(tok[5], ch) || !detail::parse_i64(tok[7], d) ||
          lvl < 1 || 48 % lvl != 0 || (ch != 3 && ch != 4) || (d != 0 && d != -2 && d != -3))
        throw ParseError(ln, "bad form header values");
      if (idx.count(f.id)) throw ParseError(ln, "duplicate form " + f.id);
      f.level = static_cast<u64>(lvl);
      f.character = static_cast<int>(ch);
      f.disc = d;
      partner_names[static_cast<std::size_t>(nforms)] = std::string(tok[9]);
      idx[f.id] = nforms++;
      continue;
    }
    if (tok.size() != 4) throw ParseError(ln, "expected '<id> <p> <a> <b>'");
    auto it = idx.find(std::string(tok[0]));
    if (it == idx.end()) throw ParseError(ln, "record for undeclared form " + std::string(tok[0]));
    long long p;
    if (!detail::parse_i64(tok[1], p) || p < 2) throw ParseError(ln, "bad prime");
    u64 up = static_cast<u64>(p);
    if (up > prime_limit) continue;
    if (have_declared && up > declared) throw ParseError(ln, "prime beyond declared primebound");
    __int128 A, B;
    if (!detail::parse_half(tok[2], A) || !detail::parse_half(tok[3], B))
      throw ParseError(ln, "eigenvalue components must be half-integers");
    if (primes.empty() || primes.back() != up) {
      if (!primes.empty() && up < primes.back()) throw ParseError(ln, "records must be sorted by prime");
      if (!is_prime(up)) throw ParseError(ln, std::to_string(up) + " is not prime");
      primes.push_back(static_cast<std::uint32_t>(up));
      seen.push_back({});
      for (auto& f : ds.forms) f.lambda.push_back(HalfQuad::zero());
    }
    int fi = it->second;
    EigenForm& f = ds.forms[static_cast<std::size_t>(fi)];
    if (seen.back()[static_cast<std::size_t>(fi)]) throw ParseError(ln, "duplicate record");
    seen.back()[static_cast<std::size_t>(fi)] = true;
    if (f.disc == 0 && B != 0) throw ParseError(ln, "rational form with irrational eigenvalue");
    if (((A - B) % 2) != 0 || (f.disc != -3 && (A % 2) != 0))
      throw ParseError(ln, "eigenvalue is not an algebraic integer");
    f.lambda.back() = HalfQuad{A, B};
  }
  if (nforms != kNumForms) throw DataIntegrityError("expected 12 forms, found " + std::to_string(nforms));
  for (int i = 0; i < kNumForms; ++i) {
    const std::string& pn = partner_names[static_cast<std::size_t>(i)];
    if (pn == "none") continue;
    auto it = idx.find(pn);
    if (it == idx.end()) throw DataIntegrityError("unknown partner " + pn);
    ds.forms[static_cast<std::size_t>(i)].partner = it->second;
  }
  ds.prime_bound = primes.empty() ? 1 : primes.back();
  if (have_declared && declared <= prime_limit) ds.prime_bound = declared;
  else if (have_declared) ds.prime_bound = prime_limit;
  if (primes.empty() && ds.prime_bound < 2) ds.prime_bound = 1;
  // completeness: every prime up to the bound, every form
  {
    std::size_t k = 0;
    for (u64 q = 2; q <= ds.prime_bound; ++q) {
      if (k < primes.size() && primes[k] == q) {
        for (int fi = 0; fi < kNumForms; ++fi)
          if (!seen[k][static_cast<std::size_t>(fi)])
            throw DataIntegrityError("missing record for " + ds.forms[static_cast<std::size_t>(fi)].id + " at p = " +
                                     std::to_string(q));
        ++k;
      } else if (is_prime(q)) {
        throw DataIntegrityError("missing records for prime " + std::to_string(q));
      }
    }
  }
  // Deligne bound and conjugate pairs
  for (std::size_t k = 0; k < primes.size(); ++k) {
    u64 p = primes[k];
    for (int fi = 0; fi < kNumForms; ++fi) {
      const EigenForm& f = ds.forms[static_cast<std::size_t>(fi)];
      const HalfQuad& l = f.lambda[k];
      __int128 norm4 = l.A * l.A - f.disc * l.B * l.B;  // 4 |lambda|^2
      __int128 pp = static_cast<__int128>(p) * p;
      __int128 cap = (f.level % p == 0) ? 4 * pp : 16 * pp;
      if (norm4 > cap)
        throw DataIntegrityError("Deligne bound violated by " + f.id + " at p = " + std::to_string(p));
      if (f.partner >= 0) {
        const EigenForm& g = ds.forms[static_cast<std::size_t>(f.partner)];
        const HalfQuad& m = g.lambda[k];
        if (g.disc != f.disc || m.A != l.A || m.B != -l.B)
          throw DataIntegrityError("conjugate pair " + f.id + "/" + g.id + " disagrees at p = " + std::to_string(p));
      }
    }
  }
  ds.set_primes(std::move(primes));
  return ds;
}

inline EigenDataSet load_eigen_data(std::istream& in, u64 prime_limit = ~u64(0)) {
  return load_eigen_data([&](std::string& l) { return static_cast<bool>(std::getline(in, l)); }, prime_limit);
}

// Plain or gzip-compressed file.
inline EigenDataSet load_eigen_data_file(const std::string& path, u64 prime_limit = ~u64(0)) {
  gzFile fh = gzopen(path.c_str(), "rb");
  if (!fh) throw ConfigError("cannot open eigen data file " + path);
  std::unique_ptr<gzFile_s, int (*)(gzFile)> guard(fh, gzclose);
  gzbuffer(fh, 1 << 20);
  std::vector<char> buf(4096);
  auto next = [&](std::string& l) {
    l.clear();
    for (;;) {
      if (!gzgets(fh, buf.data(), static_cast<int>(buf.size()))) return !l.empty();
      l += buf.data();
      if (!l.empty() && l.back() == '\n') return true;
    }
  };
  return load_eigen_data(next, prime_limit);
}

// ---------------------------------------------------------------------------
// Multiplicative extension.

inline HalfQuad eigen_prime_power(const EigenDataSet& ds, int fi, u64 p, int e) {
  const EigenForm& f = ds.forms[static_cast<std::size_t>(fi)];
  if (e == 0) return HalfQuad::one();
  const HalfQuad& lp = ds.lambda_p(fi, p);
  int c = f.nebentypus(p);
  HalfQuad prev = HalfQuad::one(), cur = lp;
  for (int k = 1; k < e; ++k) {
    HalfQuad nxt = hq_mul(lp, cur, f.disc);
    if (c != 0) nxt = hq_sub(nxt, hq_scale(prev, static_cast<long long>(c) * static_cast<long long>(p * p)));
    prev = cur;
    cur = nxt;
  }
  return cur;
}

inline HalfQuad eigen_coeff_fast(const EigenDataSet& ds, int fi, const Factorization& f) {
  HalfQuad r = HalfQuad::one();
  long d = ds.forms[static_cast<std::size_t>(fi)].disc;
  for (auto& pe : f.factors) {
    r = hq_mul(r, eigen_prime_power(ds, fi, pe.p, pe.e), d);
    if (r.is_zero()) break;
  }
  return r;
}

inline QuadElem eigen_coeff(const EigenDataSet& ds, const std::string& id, u64 n) {
  if (n == 0) throw DomainError("eigen_coeff needs n >= 1");
  int fi = ds.form_index(id);
  return to_quad(eigen_coeff_fast(ds, fi, factorize(n)), ds.forms[static_cast<std::size_t>(fi)].disc);
}

// ---------------------------------------------------------------------------
// Change of basis: each unscaled cuspidal basis function as a combination of
// eigenforms with coefficients in the eigenform's field.

struct EigenTerm {
  const char* form;
  long num_a, den_a, num_b, den_b;  // coefficient a + b sqrt(disc)
};

struct CuspRow {
  int index;
  std::vector<EigenTerm> terms;
};

inline const std::vector<CuspRow>& cusp_change_of_basis() {
  static const std::vector<CuspRow> rows = {
      {13, {{"h1", 1, 1, 0, 1}}},
      {16, {{"h2", 1, 1, 0, 1}, {"h3", 1, 1, 0, 1}}},
      {18, {{"h2", 1, 1, 2, 1}, {"h3", 1, 1, -2, 1}}},  // (1 + sqrt(-8)) h2 + conj
      {20, {{"h4", 1, 1, 0, 1}, {"h5", 1, 1, 0, 1}, {"h6", 1, 1, 0, 1}}},
      {21, {{"h4", 3, 1, 0, 1}, {"h5", -1, 1, -2, 1}, {"h6", -1, 1, 2, 1}}},
      {22, {{"h5", 0, 1, -4, 1}, {"h6", 0, 1, 4, 1}}},  // 4 sqrt(-2) (h6 - h5)
      {35, {{"h7", 1, 1, 0, 1}, {"h8", 1, 1, 0, 1}}},
      {38, {{"h7", -1, 1, 1, 1}, {"h8", -1, 1, -1, 1}}},  // (-1 + sqrt(-3)) h7 - (1 + sqrt(-3)) h8
      {41, {{"h11", 1, 2, 0, 1}, {"h12", 1, 2, 0, 1}}},
      {43, {{"h9", 1, 1, 0, 1}, {"h10", 1, 1, 0, 1}}},
      {44, {{"h9", 0, 1, -1, 1}, {"h10", 0, 1, 1, 1}}},  // sqrt(-3) (h10 - h9)
  };
  return rows;
}

// Twist relations for odd n: [20] = chi4 ([13] + [16]), [21] = chi4 (3[13] - [18]),
// [22] = chi4 (2[16] - 2[18]).
struct TwistRelation {
  int index;
  int c13, c16, c18;
};
inline constexpr std::array<TwistRelation, 3> kTwistRelations{{{20, 1, 1, 0}, {21, 3, 0, -1}, {22, 0, 2, -2}}};

// Coefficient at n of the unscaled cuspidal basis function `base`, assembled
// from eigenform coefficients in Q(sqrt d); must be a rational integer.
inline Integer cusp_base_coeff_direct(const EigenDataSet& ds, int base, const Factorization& f) {
  for (const CuspRow& row : cusp_change_of_basis()) {
    if (row.index != base) continue;
    QuadElem sum;
    bool first = true;
    for (const EigenTerm& t : row.terms) {
      int fi = ds.form_index(t.form);
      long d = ds.forms[static_cast<std::size_t>(fi)].disc;
      QuadElem lam = to_quad(eigen_coeff_fast(ds, fi, f), d);
      QuadElem c = d == 0 ? QuadElem::rational(make_rational(t.num_a, t.den_a))
                          : QuadElem(d, make_rational(t.num_a, t.den_a), make_rational(t.num_b, t.den_b));
      QuadElem term = c * lam;
      if (first) {
        sum = term;
        first = false;
      } else {
        sum += term;
      }
    }
    if (sum.b() != 0)
      throw DataIntegrityError("imaginary part survives in [" + std::to_string(base) + "]_" + std::to_string(f.value));
    if (sum.a().get_den() != 1)
      throw DataIntegrityError("non-integral [" + std::to_string(base) + "]_" + std::to_string(f.value) + " = " +
                               sum.a().get_str());
    return sum.a().get_num();
  }
  throw DomainError("not an unscaled cuspidal index: " + std::to_string(base));
}

inline Integer cusp_basis_coeff(const EigenDataSet& ds, int index, const Factorization& f) {
  const BasisIndex& bi = basis_index(index);
  if (bi.kind != BasisKind::cuspidal) throw DomainError("not a cuspidal index: " + std::to_string(index));
  if (f.value % static_cast<u64>(bi.scale) != 0) return 0;
  Factorization g = bi.scale == 1 ? f : factorize(f.value / static_cast<u64>(bi.scale));
  return cusp_base_coeff_direct(ds, bi.base, g);
}

inline Integer cusp_basis_coeff(const EigenDataSet& ds, int index, u64 n) {
  if (n == 0) return 0;
  return cusp_basis_coeff(ds, index, factorize(n));
}

// ---------------------------------------------------------------------------
// Grouped evaluation of all twenty cuspidal coefficients at n = 2^a 3^b n0:
// one multiplicative evaluation per eigenform family at n0, then the cheap
// 2- and 3-power factors per scaling.

using CuspCoeffs = std::array<__int128, kBasisSize + 1>;  // slots 13..22, 35..44 used

class CuspEvaluator {
 public:
  explicit CuspEvaluator(const EigenDataSet& ds) : ds_(ds) {
    for (const char* id : {"h1", "h2", "h7", "h9", "h11", "h12"}) fam_.push_back(ds.form_index(id));
  }

  CuspCoeffs coeffs(const Factorization& f) const {
    int a = 0, b = 0;
    Factorization f0;
    f0.value = f.value;
    for (auto& pe : f.factors) {
      if (pe.p == 2) a = pe.e;
      else if (pe.p == 3) b = pe.e;
      else f0.factors.push_back(pe);
    }
    // lambda(n0) for h1, h2, h7, h9, h11 (h12 agrees with h11 away from 3)
    std::array<HalfQuad, 5> l0;
    for (int k = 0; k < 5; ++k) l0[static_cast<std::size_t>(k)] = eigen_coeff_fast(ds_, fam_[static_cast<std::size_t>(k)], f0);
    auto lam = [&](int k, int i2, int i3) -> HalfQuad {
      // lambda of family k at 2^i2 3^i3 n0; k = 5 means h12
      int fi = fam_[static_cast<std::size_t>(k)];
      long d = ds_.forms[static_cast<std::size_t>(fi)].disc;
      HalfQuad r = l0[static_cast<std::size_t>(k == 5 ? 4 : k)];
      if (i2 > 0) r = hq_mul(r, eigen_prime_power(ds_, fi, 2, i2), d);
      if (i3 > 0) r = hq_mul(r, eigen_prime_power(ds_, fi, 3, i3), d);
      return r;
    };
    CuspCoeffs c{};
    auto put = [&](int idx, int s2, int s3, const std::function<__int128(int, int)>& base) {
      if (a < s2 || b < s3) return;
      c[static_cast<std::size_t>(idx)] = base(a - s2, b - s3);
    };
    auto c13 = [&](int i2, int i3) { return lam(0, i2, i3).A / 2; };
    auto c16 = [&](int i2, int i3) { return lam(1, i2, i3).A; };  // 2 Re
    auto c18 = [&](int i2, int i3) {
      HalfQuad h = lam(1, i2, i3);
      return h.A - 4 * h.B;  // 2 (a - 4 b)
    };
    auto c35 = [&](int i2, int i3) { return lam(2, i2, i3).A; };
    auto c38 = [&](int i2, int i3) {
      HalfQuad h = lam(2, i2, i3);
      return -h.A - 3 * h.B;  // 2 (-a - 3 b)
    };
    auto c41 = [&](int i2, int i3) { return (lam(4, i2, i3).A + lam(5, i2, i3).A) / 4; };
    auto c43 = [&](int i2, int i3) { return lam(3, i2, i3).A; };
    auto c44 = [&](int i2, int i3) { return 3 * lam(3, i2, i3).B; };  // 6 b
    put(13, 0, 0, c13);
    put(14, 1, 0, c13);
    put(15, 2, 0, c13);
    put(16, 0, 0, c16);
    put(17, 1, 0, c16);
    put(18, 0, 0, c18);
    put(19, 1, 0, c18);
    put(35, 0, 0, c35);
    put(36, 1, 0, c35);
    put(37, 2, 0, c35);
    put(38, 0, 0, c38);
    put(39, 1, 0, c38);
    put(40, 2, 0, c38);
    put(41, 0, 0, c41);
    put(42, 0, 1, c41);
    put(43, 0, 0, c43);
    put(44, 0, 0, c44);
    if (a == 0) {
      // odd n: the chi_4 twists of f13, f16, f18
      int t = chi(4, static_cast<long long>(f.value % 4));
      for (const TwistRelation& r : kTwistRelations)
        c[static_cast<std::size_t>(r.index)] = t * (r.c13 * c[13] + r.c16 * c[16] + r.c18 * c[18]);
    }
    return c;
  }

  const EigenDataSet& data() const { return ds_; }

 private:
  const EigenDataSet& ds_;
  std::vector<int> fam_;
};

inline QuadElem cusp_part(const CuspEvaluator& ev, const BasisVector& v, const Factorization& f) {
  CuspCoeffs c = ev.coeffs(f);
  QuadElem s = QuadElem::rational(0, 3);
  for (int j = 1; j <= kBasisSize; ++j) {
    if (is_eisenstein(j) || v[j].is_zero() || c[static_cast<std::size_t>(j)] == 0) continue;
    s += v[j] * Rational(to_integer(c[static_cast<std::size_t>(j)]));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Deligne envelopes: |[j]_n| <= K_j n sigma0(n) for the unscaled cuspidal basis.

struct DeligneConstant {
  int base;
  Rational rat;   // K = rat + irr * sqrt(rad)
  Rational irr;
  long rad;
};

inline const std::vector<DeligneConstant>& deligne_constants() {
  static const std::vector<DeligneConstant> k = {
      {13, 1, 0, 2},
      {16, 2, 0, 2},
      {18, 6, 0, 2},
      {20, Rational(24, 7), 0, 2},
      {21, Rational(72, 7), Rational(24, 7), 2},  // (24/7)(3 + sqrt 2)
      {22, 0, 8, 2},                              // 8 sqrt 2
      {35, 2, 0, 3},
      {38, 4, 0, 3},
      {41, 1, 0, 3},
      {43, 2, 0, 3},
      {44, 0, 2, 3},  // 2 sqrt 3
  };
  return k;
}

inline RatInterval deligne_constant(int base, const Rational& precision) {
  for (auto& k : deligne_constants()) {
    if (k.base != base) continue;
    if (k.irr == 0) return RatInterval::point(k.rat);
    return RatInterval::point(k.rat) +
           RatInterval::point(k.irr) * enclose_constant(SqrtOf{k.rad}, precision / abs_of(k.irr));
  }
  throw DomainError("no Deligne constant for " + std::to_string(base));
}

struct EnvelopeCase {
  std::string label;  // divisibility class of n
  RatInterval value;
};

struct DeligneEnvelope {
  Rational C;  // certified: |cusp part| <= C n sigma0(n)
  std::vector<EnvelopeCase> cases;
};

// Max over divisibility classes (v2(n) in {0, 1, >=2}, 3 | n or not) of
// sum |v_j| K_base / scale over the basis functions present in that class.
inline DeligneEnvelope deligne_envelope(const BasisVector& v) {
  const Rational prec(1, Integer(1) << 160);
  DeligneEnvelope out;
  bool first = true;
  for (int a : {0, 1, 2})
    for (int b : {0, 1}) {
      RatInterval s = RatInterval::point(0);
      for (int j = 1; j <= kBasisSize; ++j) {
        const BasisIndex& bi = basis_index(j);
        if (bi.kind != BasisKind::cuspidal || v[j].is_zero()) continue;
        int s2 = valuation(static_cast<u64>(bi.scale), 2), s3 = valuation(static_cast<u64>(bi.scale), 3);
        if (s2 > a || s3 > b) continue;
        if ((bi.base == 20 || bi.base == 21 || bi.base == 22) && a > 0) continue;  // twists vanish at even n
        RatInterval xv = enclose(v[j], prec);
        RatInterval ax = xv.lo >= 0 ? xv : (xv.hi <= 0 ? RatInterval(-xv.hi, -xv.lo) : RatInterval(0, std::max(Rational(-xv.lo), xv.hi)));
        s = s + ax * deligne_constant(bi.base, prec) * RatInterval::point(Rational(1, bi.scale));
      }
      std::string label = std::string(a == 0 ? "n odd" : (a == 1 ? "2||n" : "4|n")) + (b ? ", 3|n" : ", 3∤n");
      out.cases.push_back({label, s});
      if (first || s.hi > out.C) out.C = s.hi;
      first = false;
    }
  return out;
}

}  // namespace lpcert
