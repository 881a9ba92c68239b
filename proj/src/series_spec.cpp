#include "apery/series_spec.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace apery {

const char* kernel_name(Kernel k) {
  switch (k) {
    case Kernel::K2N: return "2n";
    case Kernel::K2NP1: return "2n+1";
    default: return "2n-1";
  }
}

XValue XValue::sqrt_j_over_2(int j) {
  XValue v;
  v.value = ldexp2(sqrt2(Real2(double(j))), -1);
  v.desc = "sqrt(" + std::to_string(j) + ")/2";
  return v;
}

XValue XValue::parse(const std::string& text) {
  XValue v;
  v.desc = text;
  if (text == "1") {
    v.value = Real2(1.0);
    return v;
  }
  auto core = text;
  auto colon = core.find(':');
  if (colon != std::string::npos) {
    // "sqrt(j)/2:j=3" -> substitute j
    auto eq = core.find('=', colon);
    if (eq == std::string::npos) throw std::invalid_argument("XValue: bad parameter in " + text);
    int j = std::stoi(core.substr(eq + 1));
    return sqrt_j_over_2(j);
  }
  if (core.rfind("sqrt(", 0) == 0) {
    auto close = core.find(')');
    if (close == std::string::npos) throw std::invalid_argument("XValue: bad sqrt in " + text);
    int j = std::stoi(core.substr(5, close - 5));
    if (core.substr(close + 1) != "/2") {
      throw std::invalid_argument("XValue: expected sqrt(j)/2, got " + text);
    }
    return sqrt_j_over_2(j);
  }
  auto slash = core.find('/');
  if (slash != std::string::npos) {
    Real2 num = Real2::from_string(core.substr(0, slash));
    Real2 den = Real2::from_string(core.substr(slash + 1));
    v.value = num / den;
    return v;
  }
  v.value = Real2::from_string(core);
  return v;
}

bool SeriesSpec::all_natural() const {
  for (int j = 0; j < depth(); ++j) {
    if (strict[j] != natural_strict(kernels[j])) return false;
  }
  return true;
}

bool SeriesSpec::all_kernels(Kernel k) const {
  for (Kernel kk : kernels) {
    if (kk != k) return false;
  }
  return true;
}

bool SeriesSpec::global_sign_only() const {
  for (int j = 1; j < depth(); ++j) {
    if (eta[j] != 1) return false;
  }
  return true;
}

void SeriesSpec::validate() const {
  const int d = depth();
  if (d == 0) throw std::invalid_argument("SeriesSpec: empty composition");
  if (int(eta.size()) != d || int(kernels.size()) != d || int(strict.size()) != d) {
    throw std::invalid_argument("SeriesSpec: field lengths disagree with composition depth");
  }
  for (int v : s) {
    if (v < 1) throw std::invalid_argument("SeriesSpec: composition entries must be >= 1");
  }
  for (int e : eta) {
    if (e != 1 && e != -1) throw std::invalid_argument("SeriesSpec: signs must be +-1");
  }
  if (tail_n < 0) throw std::invalid_argument("SeriesSpec: tail must be nonnegative");
  if (std::fabs(x.value.hi) > 1.0 + 1e-14) {
    throw std::invalid_argument("SeriesSpec: |x| must be <= 1");
  }
  // weak boundaries let indices reach their lower bounds; no kernel may
  // vanish at the smallest reachable index of its level
  long low = tail_n;
  for (int j = d - 1; j >= 0; --j) {
    low += strict[j] ? 1 : 0;
    long l = 2 * low;
    if (kernels[j] == Kernel::K2NP1) l += 1;
    if (kernels[j] == Kernel::K2NM1) l -= 1;
    if (l == 0) {
      throw std::invalid_argument("SeriesSpec: reachable zero denominator at level " +
                                  std::to_string(j + 1));
    }
  }
  // convergence at |x| = 1 for the inverse-binomial family: (s1, eta1) != (1, 1)
  if (family == Family::INVERSE_BINOMIAL_B && std::fabs(std::fabs(x.value.hi) - 1.0) < 1e-14) {
    if (s[0] == 1 && eta[0] == 1) {
      throw std::invalid_argument("SeriesSpec: divergent (s1, eta1) = (1, 1) at |x| = 1");
    }
  }
}

std::string SeriesSpec::to_string() const {
  std::string out = (family == Family::INVERSE_BINOMIAL_B) ? "sigma_b(" : "sigma_a(";
  for (int j = 0; j < depth(); ++j) {
    if (j) out += ",";
    out += std::to_string(s[j]);
    if (eta[j] == -1) out += "~";
  }
  out += "; ";
  for (int j = 0; j < depth(); ++j) {
    if (j) out += ",";
    out += kernel_name(kernels[j]);
    out += strict[j] ? ">" : ">=";
  }
  out += "; x=" + x.desc;
  if (tail_n) out += "; tail=" + std::to_string(tail_n);
  out += ")";
  return out;
}

namespace {

long kernel_shift(Kernel k) {
  switch (k) {
    case Kernel::K2N: return 0;
    case Kernel::K2NP1: return 1;
    default: return -1;
  }
}

struct PFEntry {
  bool first;  // contributes to the A kernel (else B)
  int expo;
  Rational coeff;
};

// 1/(A^p B^q) with A = 2n + ca, B = 2n + cb, ca != cb
void partial_fractions(long ca, long cb, int p, int q, const Rational& mult,
                       std::vector<PFEntry>& out) {
  if (q == 0) {
    out.push_back({true, p, mult});
    return;
  }
  if (p == 0) {
    out.push_back({false, q, mult});
    return;
  }
  Rational f = Rational(1, cb - ca) * mult;
  partial_fractions(ca, cb, p, q - 1, f, out);
  partial_fractions(ca, cb, p - 1, q, -f, out);
}

void normalize_rec(const Rational& coeff, const SeriesSpec& spec,
                   std::vector<std::pair<Rational, SeriesSpec>>& out) {
  const int d = spec.depth();
  int j = -1;
  for (int i = 0; i < d; ++i) {
    if (spec.strict[i] != SeriesSpec::natural_strict(spec.kernels[i])) {
      j = i;
      break;
    }
  }
  if (j < 0) {
    out.push_back({coeff, spec});
    return;
  }
  bool natural = SeriesSpec::natural_strict(spec.kernels[j]);
  // weak = strict + diagonal, so flipping toward natural adds the diagonal
  // with sign +1 when natural is strict and -1 when natural is weak
  SeriesSpec flipped = spec;
  flipped.strict[j] = natural;
  Rational diag_sign = natural ? Rational(1) : Rational(-1);
  normalize_rec(coeff, flipped, out);

  if (j == d - 1) {
    // diagonal pins the innermost index at tail_n
    long n0 = spec.tail_n;
    long l = 2 * n0 + kernel_shift(spec.kernels[j]);
    if (l == 0) throw std::invalid_argument("normalize_strictness: zero denominator diagonal");
    Rational term(1);
    for (int i = 0; i < spec.s[j]; ++i) term /= Rational(l);
    if (spec.eta[j] == -1 && (n0 % 2) != 0) term = -term;
    SeriesSpec sub = spec;
    sub.s.pop_back();
    sub.eta.pop_back();
    sub.kernels.pop_back();
    sub.strict.pop_back();
    if (sub.depth() == 0) {
      out.push_back({coeff * diag_sign * term, sub});  // pure constant contribution
    } else {
      normalize_rec(coeff * diag_sign * term, sub, out);
    }
    return;
  }

  // diagonal merges indices j and j+1 at a common summation variable
  Kernel ka = spec.kernels[j], kb = spec.kernels[j + 1];
  int merged_eta = spec.eta[j] * spec.eta[j + 1];
  auto make_merged = [&](Kernel k, int expo) {
    SeriesSpec m = spec;
    m.s.erase(m.s.begin() + j + 1);
    m.eta.erase(m.eta.begin() + j + 1);
    m.kernels.erase(m.kernels.begin() + j + 1);
    m.strict.erase(m.strict.begin() + j);  // boundary below merged index = old strict[j+1]
    m.s[j] = expo;
    m.eta[j] = merged_eta;
    m.kernels[j] = k;
    return m;
  };
  if (ka == kb) {
    normalize_rec(coeff * diag_sign, make_merged(ka, spec.s[j] + spec.s[j + 1]), out);
    return;
  }
  std::vector<PFEntry> pf;
  partial_fractions(kernel_shift(ka), kernel_shift(kb), spec.s[j], spec.s[j + 1], Rational(1), pf);
  for (auto& e : pf) {
    normalize_rec(coeff * diag_sign * e.coeff, make_merged(e.first ? ka : kb, e.expo), out);
  }
}

}  // namespace

std::vector<std::pair<Rational, SeriesSpec>> normalize_strictness(const SeriesSpec& spec) {
  spec.validate();
  std::vector<std::pair<Rational, SeriesSpec>> out;
  normalize_rec(Rational(1), spec, out);
  return out;
}

}  // namespace apery
