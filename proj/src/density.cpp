#include "apery/density.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace apery {

namespace {

constexpr int kSeriesLen = 160;
constexpr int kExactProbe = 48;  // exact coefficients examined for order detection

struct NamedEntry {
  Om tag;
  const char* name;
  Mono m;
};

const NamedEntry kNamed[] = {
    {Om::W0, "w[0]", {-1, 0, 0}},    {Om::W1, "w[1]", {0, -1, 0}},
    {Om::Wm1, "w[-1]", {0, 0, -1}},  {Om::W2, "w[2]", {1, -2, 0}},
    {Om::Wm2, "w[-2]", {1, 0, -2}},  {Om::W3, "w[3]", {-1, -1, 0}},
    {Om::Wm3, "w[-3]", {-1, 0, -1}}, {Om::W4, "w[4]", {1, -1, -1}},
    {Om::W5, "w[5]", {1, -1, 0}},    {Om::Wm5, "w[-5]", {1, 0, -1}},
    {Om::W6, "w[6]", {-1, -1, -1}},  {Om::W20, "w[20]", {-1, -2, 0}},
    {Om::Wm20, "w[-20]", {-1, 0, -2}},
};

// binom(h/2, k) as exact rationals, h integer
std::vector<Rational> half_binomials(int h, int count) {
  std::vector<Rational> out(count);
  out[0] = Rational(1);
  Rational half_h(h, 2);
  for (int k = 1; k < count; ++k) {
    out[k] = out[k - 1] * (half_h - Rational(k - 1)) / Rational(k);
  }
  return out;
}

// 2^(h/2) as exact cyclotomic (uses sqrt2 = mu - mu^3 for odd h)
CycloQ8 pow2_half(int h) {
  CycloQ8 r(1);
  int whole = (h >= 0) ? h / 2 : -((-h + 1) / 2);
  // h = 2*whole + rem with rem in {0,1}
  int rem = h - 2 * whole;
  BigInt two(2);
  if (whole >= 0) {
    r = CycloQ8(Rational(BigInt::pow(two, unsigned(whole)), BigInt(1)));
  } else {
    r = CycloQ8(Rational(BigInt(1), BigInt::pow(two, unsigned(-whole))));
  }
  if (rem) r *= CycloQ8::sqrt2();
  return r;
}

}  // namespace

const char* om_name(Om tag) {
  for (const auto& e : kNamed) {
    if (e.tag == tag) return e.name;
  }
  return "?";
}

struct Density::Impl {
  std::vector<std::pair<CycloQ8, Mono>> terms;

  mutable std::mutex lock;
  mutable bool cache_built = false;
  mutable int ord0 = 1000;
  mutable int twice_ord1 = 1000;
  mutable int s0_base = 0;
  mutable std::vector<Real2> s0;
  mutable int s1_base2 = 0;
  mutable std::vector<Real2> s1;
  mutable std::vector<Real2> coef_re;  // embedded term coefficients (real)

  void build_cache() const;
};

namespace {

// canonical form per (b, c)-parity sector: collapse to one numerator
// polynomial over t^a (1-t^2)^B (1+t^2)^C and divide out all t, (1-t^2),
// (1+t^2) factors; equal densities then have identical term lists
void canonicalize_sector(std::map<Mono, CycloQ8>& acc, int bp, int cp,
                         std::vector<std::pair<CycloQ8, Mono>>& out) {
  int amin = 0, Bmin = 0, Cmin = 0;
  bool first = true;
  std::vector<std::pair<CycloQ8, Mono>> sector;
  for (auto& [m, k] : acc) {
    if (k.is_zero()) continue;
    int bbit = ((m.b % 2) + 2) % 2, cbit = ((m.c % 2) + 2) % 2;
    if (bbit != bp || cbit != cp) continue;
    int B = (m.b - bbit) / 2, C = (m.c - cbit) / 2;
    if (first) {
      amin = m.a;
      Bmin = B;
      Cmin = C;
      first = false;
    } else {
      amin = std::min(amin, m.a);
      Bmin = std::min(Bmin, B);
      Cmin = std::min(Cmin, C);
    }
    sector.emplace_back(k, m);
  }
  if (sector.empty()) return;
  // numerator polynomial relative to t^amin (1-t^2)^Bmin (1+t^2)^Cmin
  std::vector<CycloQ8> poly(1);
  auto addpoly = [&](std::vector<CycloQ8>& p, int deg, const CycloQ8& c) {
    if (int(p.size()) <= deg) p.resize(deg + 1);
    p[deg] += c;
  };
  std::vector<CycloQ8> num;
  for (auto& [k, m] : sector) {
    int bbit = ((m.b % 2) + 2) % 2, cbit = ((m.c % 2) + 2) % 2;
    int B = (m.b - bbit) / 2 - Bmin, C = (m.c - cbit) / 2 - Cmin;
    std::vector<CycloQ8> p{k};
    for (int r = 0; r < B; ++r) {
      std::vector<CycloQ8> q(p.size() + 2);
      for (std::size_t i = 0; i < p.size(); ++i) {
        q[i] += p[i];
        q[i + 2] -= p[i];
      }
      p = std::move(q);
    }
    for (int r = 0; r < C; ++r) {
      std::vector<CycloQ8> q(p.size() + 2);
      for (std::size_t i = 0; i < p.size(); ++i) {
        q[i] += p[i];
        q[i + 2] += p[i];
      }
      p = std::move(q);
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!p[i].is_zero()) addpoly(num, int(i) + (m.a - amin), p[i]);
    }
  }
  while (!num.empty() && num.back().is_zero()) num.pop_back();
  if (num.empty()) return;
  // strip t factors
  std::size_t shift = 0;
  while (shift < num.size() && num[shift].is_zero()) ++shift;
  if (shift) {
    num.erase(num.begin(), num.begin() + shift);
    amin += int(shift);
  }
  // divide out (1 -+ t^2) while exact; divisor is 1 + sign_t2 * t^2
  auto try_divide = [&](int sign_t2, int& expo) {
    for (;;) {
      if (num.size() < 3) return;
      std::vector<CycloQ8> q(num.size() - 2), r = num;
      for (std::size_t deg = r.size() - 1; deg >= 2; --deg) {
        CycloQ8 c = r[deg].scaled_by(Rational(sign_t2));
        if (!c.is_zero()) {
          q[deg - 2] = c;
          r[deg] = CycloQ8(0);
          r[deg - 2] -= c;
        }
        if (deg == 2) break;
      }
      if (!r[0].is_zero() || !r[1].is_zero()) return;
      num = std::move(q);
      while (!num.empty() && num.back().is_zero()) num.pop_back();
      ++expo;
      if (num.empty()) return;
    }
  };
  try_divide(-1, Bmin);
  try_divide(+1, Cmin);
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (num[i].is_zero()) continue;
    out.emplace_back(num[i], Mono{amin + int(i), 2 * Bmin + bp, 2 * Cmin + cp});
  }
}

}  // namespace

Density Density::make(std::vector<std::pair<CycloQ8, Mono>> terms) {
  std::map<Mono, CycloQ8> acc;
  for (auto& [k, m] : terms) acc[m] += k;
  std::vector<std::pair<CycloQ8, Mono>> out;
  for (int bp = 0; bp < 2; ++bp) {
    for (int cp = 0; cp < 2; ++cp) canonicalize_sector(acc, bp, cp, out);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.second < y.second; });
  auto impl = std::make_shared<Impl>();
  impl->terms = std::move(out);
  return Density(std::move(impl));
}

Density Density::mono(const CycloQ8& k, Mono m) { return make({{k, m}}); }

Density Density::named(Om tag) {
  for (const auto& e : kNamed) {
    if (e.tag == tag) return mono(CycloQ8(1), e.m);
  }
  throw std::logic_error("Density::named");
}

static const std::vector<std::pair<CycloQ8, Mono>> kEmptyTerms;

const std::vector<std::pair<CycloQ8, Mono>>& Density::terms() const {
  return impl_ ? impl_->terms : kEmptyTerms;
}

Density operator+(const Density& x, const Density& y) {
  auto t = x.terms();
  auto& u = y.terms();
  t.insert(t.end(), u.begin(), u.end());
  return Density::make(std::move(t));
}

Density operator-(const Density& x, const Density& y) { return x + (-y); }

Density operator*(const Density& x, const Density& y) {
  std::vector<std::pair<CycloQ8, Mono>> t;
  for (auto& [qx, mx] : x.terms()) {
    for (auto& [qy, my] : y.terms()) {
      t.emplace_back(qx * qy, Mono{mx.a + my.a, mx.b + my.b, mx.c + my.c});
    }
  }
  return Density::make(std::move(t));
}

Density Density::operator-() const { return scaled(CycloQ8(-1)); }

Density Density::scaled(const CycloQ8& k) const {
  std::vector<std::pair<CycloQ8, Mono>> t;
  for (auto& [q, m] : terms()) t.emplace_back(q * k, m);
  return make(std::move(t));
}

Density Density::mono_mul(const CycloQ8& k, Mono shift) const {
  std::vector<std::pair<CycloQ8, Mono>> t;
  for (auto& [q, m] : terms()) {
    t.emplace_back(q * k, Mono{m.a + shift.a, m.b + shift.b, m.c + shift.c});
  }
  return make(std::move(t));
}

Density Density::reflected() const {
  std::vector<std::pair<CycloQ8, Mono>> t;
  for (auto& [q, m] : terms()) {
    bool flip = ((m.a % 2) + 2) % 2 == 0;  // -f(-t): sign (-1)^(a+1)
    t.emplace_back(flip ? -q : q, m);
  }
  return make(std::move(t));
}

bool operator==(const Density& x, const Density& y) { return x.terms() == y.terms(); }

bool operator<(const Density& x, const Density& y) {
  auto& a = x.terms();
  auto& b = y.terms();
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].second != b[i].second) return a[i].second < b[i].second;
    if (a[i].first != b[i].first) return a[i].first < b[i].first;
  }
  return false;
}

// exact vanishing test via the four (b,c)-parity sector polynomials
bool Density::is_zero() const {
  auto& ts = terms();
  if (ts.empty()) return true;
  for (int bp = 0; bp < 2; ++bp) {
    for (int cp = 0; cp < 2; ++cp) {
      std::vector<const std::pair<CycloQ8, Mono>*> sector;
      int amin = 0, Bmin = 0, Cmin = 0;
      bool first = true;
      for (auto& t : ts) {
        int bbit = ((t.second.b % 2) + 2) % 2;
        int cbit = ((t.second.c % 2) + 2) % 2;
        if (bbit != bp || cbit != cp) continue;
        int B = (t.second.b - bbit) / 2, C = (t.second.c - cbit) / 2;
        if (first) {
          amin = t.second.a;
          Bmin = B;
          Cmin = C;
          first = false;
        } else {
          amin = std::min(amin, t.second.a);
          Bmin = std::min(Bmin, B);
          Cmin = std::min(Cmin, C);
        }
        sector.push_back(&t);
      }
      if (sector.empty()) continue;
      // polynomial sum_i q_i t^(a-amin) (1-t^2)^(B-Bmin) (1+t^2)^(C-Cmin)
      std::map<int, CycloQ8> poly;
      for (auto* t : sector) {
        int bbit = ((t->second.b % 2) + 2) % 2;
        int cbit = ((t->second.c % 2) + 2) % 2;
        int B = (t->second.b - bbit) / 2 - Bmin;
        int C = (t->second.c - cbit) / 2 - Cmin;
        std::map<int, CycloQ8> p;
        p[t->second.a - amin] = t->first;
        for (int rep = 0; rep < B; ++rep) {
          std::map<int, CycloQ8> q;
          for (auto& [e, co] : p) {
            q[e] += co;
            q[e + 2] -= co;
          }
          p = std::move(q);
        }
        for (int rep = 0; rep < C; ++rep) {
          std::map<int, CycloQ8> q;
          for (auto& [e, co] : p) {
            q[e] += co;
            q[e + 2] += co;
          }
          p = std::move(q);
        }
        for (auto& [e, co] : p) poly[e] += co;
      }
      for (auto& [e, co] : poly) {
        if (!co.is_zero()) return false;
      }
    }
  }
  return true;
}

bool Density::equal_fn(const Density& x, const Density& y) { return (x - y).is_zero(); }

void Density::Impl::build_cache() const {
  std::lock_guard<std::mutex> g(lock);
  if (cache_built) return;
  if (terms.empty()) {
    ord0 = twice_ord1 = 1000;
    cache_built = true;
    return;
  }

  // ---- expansion at t = 0: sum_k s0[k] t^(s0_base + k) ----
  int base0 = terms[0].second.a;
  for (auto& t : terms) base0 = std::min(base0, t.second.a);
  s0_base = base0;
  s0.assign(kSeriesLen, Real2(0.0));
  std::vector<CycloQ8> exact0(kExactProbe);
  for (auto& [q, m] : terms) {
    int zcount = kSeriesLen / 2 + 1;
    auto A = half_binomials(m.b, zcount);  // (1-z)^(b/2): alternating signs applied below
    auto B = half_binomials(m.c, zcount);  // (1+z)^(c/2)
    // coefficient of z^k in (1-z)^(b/2)(1+z)^(c/2)
    std::vector<Rational> zco(zcount);
    for (int k = 0; k < zcount; ++k) {
      Rational sum(0);
      for (int i = 0; i <= k; ++i) {
        Rational term = A[i] * B[k - i];
        if (i & 1) term = -term;
        sum += term;
      }
      zco[k] = sum;
    }
    for (int k = 0; k < zcount; ++k) {
      int idx = (m.a - base0) + 2 * k;
      if (idx < kSeriesLen) s0[idx] += q.embed().re * zco[k].to_real2();
      if (idx < kExactProbe) exact0[idx] += q.scaled_by(zco[k]);
    }
  }
  ord0 = 1000;
  for (int k = 0; k < kExactProbe; ++k) {
    if (!exact0[k].is_zero()) {
      ord0 = base0 + k;
      break;
    }
  }

  // ---- expansion at t = 1 in d = 1-t on the half-integer grid ----
  int base2 = terms[0].second.b;
  for (auto& t : terms) base2 = std::min(base2, t.second.b);
  s1_base2 = base2;
  s1.assign(kSeriesLen, Real2(0.0));
  std::vector<CycloQ8> exact1(kExactProbe);
  for (auto& [q, m] : terms) {
    const int n = kSeriesLen;
    // (1-d)^a
    std::vector<Rational> pa(n);
    if (m.a >= 0) {
      auto bin = half_binomials(2 * m.a, n);  // binom(a, k)
      for (int k = 0; k < n && k <= m.a; ++k) pa[k] = (k & 1) ? -bin[k] : bin[k];
    } else {
      pa[0] = Rational(1);
      for (int k = 1; k < n; ++k) pa[k] = pa[k - 1] * Rational(-m.a + k - 1, k);
    }
    // (1 - d/2)^(b/2)
    auto bb = half_binomials(m.b, n);
    std::vector<Rational> pb(n);
    {
      Rational p(1);
      for (int k = 0; k < n; ++k) {
        pb[k] = bb[k] * p;
        p *= Rational(-1, 2);
      }
    }
    // (1 - d + d^2/2)^(c/2) via powers of w = -d + d^2/2
    auto cc = half_binomials(m.c, n);
    std::vector<Rational> pc(n), wpow(n);
    pc[0] = cc[0];
    wpow[0] = Rational(1);
    std::vector<Rational> w(n);
    if (n > 1) w[1] = Rational(-1);
    if (n > 2) w[2] = Rational(1, 2);
    for (int k = 1; k < n; ++k) {
      // wpow <- wpow * w
      std::vector<Rational> nw(n);
      for (int i = 0; i < n; ++i) {
        if (wpow[i].is_zero()) continue;
        for (int j = 1; j <= 2 && i + j < n; ++j) nw[i + j] += wpow[i] * w[j];
      }
      wpow = std::move(nw);
      bool all_zero = true;
      for (int i = 0; i < n; ++i) {
        if (!wpow[i].is_zero()) {
          all_zero = false;
          pc[i] += cc[k] * wpow[i];
        }
      }
      if (all_zero) break;
    }
    // full rational expansion in d
    std::vector<Rational> pd(n);
    for (int i = 0; i < n; ++i) {
      if (pa[i].is_zero()) continue;
      for (int j = 0; i + j < n; ++j) {
        if (pb[j].is_zero()) continue;
        Rational pij = pa[i] * pb[j];
        for (int k = 0; i + j + k < n; ++k) {
          if (!pc[k].is_zero()) pd[i + j + k] += pij * pc[k];
        }
      }
    }
    CycloQ8 factor = q * pow2_half(m.b) * pow2_half(m.c);
    Real2 fre = factor.embed().re;
    for (int k = 0; k < n; ++k) {
      int idx = (m.b - base2) + 2 * k;  // grid step is sqrt(d)
      if (pd[k].is_zero()) continue;
      if (idx < kSeriesLen) s1[idx] += fre * pd[k].to_real2();
      if (idx < kExactProbe) exact1[idx] += factor.scaled_by(pd[k]);
    }
  }
  twice_ord1 = 1000;
  for (int k = 0; k < kExactProbe; ++k) {
    if (!exact1[k].is_zero()) {
      twice_ord1 = base2 + k;
      break;
    }
  }

  coef_re.clear();
  for (auto& [q, m] : terms) {
    if (!q.is_real()) throw std::domain_error("Density: non-real coefficient in numeric eval");
    coef_re.push_back(q.embed().re);
  }
  cache_built = true;
}

int Density::order0() const {
  if (!impl_) return 1000;
  impl_->build_cache();
  return impl_->ord0;
}

int Density::twice_order1() const {
  if (!impl_) return 1000;
  impl_->build_cache();
  return impl_->twice_ord1;
}

Real2 Density::eval(const TPoint& p) const {
  if (!impl_ || impl_->terms.empty()) return Real2(0.0);
  impl_->build_cache();
  const Impl& im = *impl_;
  if (p.t.hi < 0.45) {
    Real2 acc(0.0);
    for (int k = kSeriesLen; k-- > 0;) acc = acc * p.t + im.s0[k];
    return acc * pow2i(p.t, im.s0_base);
  }
  if (p.one_m_t.hi < 0.45) {
    Real2 sd = sqrt2(p.one_m_t);
    Real2 acc(0.0);
    for (int k = kSeriesLen; k-- > 0;) acc = acc * sd + im.s1[k];
    return acc * pow2i(sd, im.s1_base2);
  }
  Real2 u = sqrt2(p.one_m_t * (Real2(1.0) + p.t));  // sqrt(1-t^2)
  Real2 v = sqrt2(Real2(1.0) + p.t * p.t);
  Real2 acc(0.0);
  for (std::size_t i = 0; i < im.terms.size(); ++i) {
    const Mono& m = im.terms[i].second;
    acc += im.coef_re[i] * pow2i(p.t, m.a) * pow2i(u, m.b) * pow2i(v, m.c);
  }
  return acc;
}

const char* Density::matched_name() const {
  auto& ts = terms();
  if (ts.size() == 1 && ts[0].first == CycloQ8(1)) {
    for (const auto& e : kNamed) {
      if (ts[0].second == e.m) return e.name;
    }
  }
  return nullptr;
}

std::string Density::to_string() const {
  if (terms().empty()) return "0";
  if (const char* n = matched_name()) return n;
  // try a combination of named letters (common case after merges)
  std::string out;
  bool first = true;
  for (auto& [q, m] : terms()) {
    std::string piece;
    const char* nm = nullptr;
    for (const auto& e : kNamed) {
      if (m == e.m) nm = e.name;
    }
    std::string coeff = q.to_string();
    if (nm) {
      piece = (coeff == "1") ? nm : ("(" + coeff + ")*" + nm);
    } else {
      piece = "(" + coeff + ")*t^" + std::to_string(m.a);
      if (m.b) piece += "*(1-t^2)^(" + std::to_string(m.b) + "/2)";
      if (m.c) piece += "*(1+t^2)^(" + std::to_string(m.c) + "/2)";
    }
    if (!first) out += " + ";
    out += piece;
    first = false;
  }
  return out;
}

}  // namespace apery
