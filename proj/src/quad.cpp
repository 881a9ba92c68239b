#include "apery/quad.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace apery {

namespace {

constexpr int kN = 16;

void legendre(int n, const Real2& x, Real2& p, Real2& dp) {
  Real2 p0(1.0), p1 = x;
  for (int k = 1; k < n; ++k) {
    Real2 p2 = (Real2(double(2 * k + 1)) * x * p1 - Real2(double(k)) * p0) / Real2(double(k + 1));
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = Real2(double(n)) * (x * p1 - p0) / (x * x - Real2(1.0));
}

Real2 legendre_value(int n, const Real2& x) {
  if (n == 0) return Real2(1.0);
  Real2 p0(1.0), p1 = x;
  for (int k = 1; k < n; ++k) {
    Real2 p2 = (Real2(double(2 * k + 1)) * x * p1 - Real2(double(k)) * p0) / Real2(double(k + 1));
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

GLData compute_gl() {
  GLData g;
  for (int i = 0; i < kN; ++i) {
    double guess = std::cos(M_PI * (i + 0.75) / (kN + 0.5));
    Real2 x(guess);
    for (int it = 0; it < 6; ++it) {
      Real2 p, dp;
      legendre(kN, x, p, dp);
      x = x - p / dp;
    }
    Real2 p, dp;
    legendre(kN, x, p, dp);
    g.x[i] = x;
    g.w[i] = Real2(2.0) / ((Real2(1.0) - x * x) * dp * dp);
  }
  // Lagrange basis in Legendre expansion: l_m = sum_k c_{mk} P_k,
  // c_{mk} = (2k+1)/2 w_m P_k(x_m)  (exact: discrete orthogonality holds to degree 31)
  for (int i = 0; i < kN; ++i) {
    for (int m = 0; m < kN; ++m) {
      Real2 acc(0.0);
      for (int k = 0; k < kN; ++k) {
        Real2 c = Real2(double(2 * k + 1)) * ldexp2(g.w[m], -1) * legendre_value(k, g.x[m]);
        // antiderivative of P_k from -1: Q_0 = x+1, Q_k = (P_{k+1} - P_{k-1})/(2k+1)
        Real2 q;
        if (k == 0) {
          q = g.x[i] + Real2(1.0);
        } else {
          q = (legendre_value(k + 1, g.x[i]) - legendre_value(k - 1, g.x[i])) /
              Real2(double(2 * k + 1));
        }
        acc += c * q;
      }
      g.S[i][m] = acc;
    }
  }
  g.full = g.w;
  return g;
}

// one quadrature node in segment-parameter space
struct SNode {
  Real2 s;        // in (0,1)
  Real2 one_m_s;  // 1 - s, exact near 1
  Real2 jac;      // ds/dsigma * panel scale
};

// a panel = 16 nodes; plans are built once per (margin, umax) pair
struct PanelPlan {
  std::vector<std::array<SNode, kN>> panels;
};

void emit_plain(PanelPlan& plan, const GLData& g, double sa, double sb, int split) {
  if (split > 0) {
    double mid = 0.5 * (sa + sb);
    emit_plain(plan, g, sa, mid, split - 1);
    emit_plain(plan, g, mid, sb, split - 1);
    return;
  }
  std::array<SNode, kN> nodes;
  Real2 half = ldexp2(Real2(sb - sa), -1);
  Real2 mid = ldexp2(Real2(sa + sb), -1);
  for (int i = 0; i < kN; ++i) {
    Real2 s = mid + half * g.x[i];
    nodes[i] = {s, Real2(1.0) - s, half};
  }
  plan.panels.push_back(nodes);
}

// panel near the upper endpoint, parametrized by d = 1 - s so the panel
// boundaries stay exact where the densities are largest
void emit_plain_upper(PanelPlan& plan, const GLData& g, double da, double db, int split) {
  if (split > 0) {
    double mid = 0.5 * (da + db);
    emit_plain_upper(plan, g, mid, db, split - 1);  // ascending s = descending d
    emit_plain_upper(plan, g, da, mid, split - 1);
    return;
  }
  std::array<SNode, kN> nodes;
  Real2 half = ldexp2(Real2(db - da), -1);
  Real2 mid = ldexp2(Real2(da + db), -1);
  for (int i = 0; i < kN; ++i) {
    Real2 d = mid - half * g.x[i];
    nodes[i] = {Real2(1.0) - d, d, half};
  }
  plan.panels.push_back(nodes);
}

// tail panel under s = e^{-u} (lower end) or 1 - s = e^{-u} (upper end)
void emit_tail(PanelPlan& plan, const GLData& g, double ua, double ub, bool lower, int split) {
  if (split > 0) {
    double mid = 0.5 * (ua + ub);
    if (lower) {
      emit_tail(plan, g, mid, ub, lower, split - 1);  // ascending s: larger u first
      emit_tail(plan, g, ua, mid, lower, split - 1);
    } else {
      emit_tail(plan, g, ua, mid, lower, split - 1);
      emit_tail(plan, g, mid, ub, lower, split - 1);
    }
    return;
  }
  std::array<SNode, kN> nodes;
  Real2 half = ldexp2(Real2(ub - ua), -1);
  Real2 mid = ldexp2(Real2(ua + ub), -1);
  for (int i = 0; i < kN; ++i) {
    // lower tail: u decreasing as sigma increases keeps s ascending
    Real2 u = lower ? (mid - half * g.x[i]) : (mid + half * g.x[i]);
    Real2 e = exp2r(-u);
    if (lower) {
      nodes[i] = {e, Real2(1.0) - e, e * half};
    } else {
      nodes[i] = {Real2(1.0) - e, e, e * half};
    }
  }
  plan.panels.push_back(nodes);
}

PanelPlan build_plan(double margin, double umax_lo, double umax_hi, int split) {
  const GLData& g = GLData::get();
  PanelPlan plan;
  double u0 = std::log(1.0 / margin);
  const double du = 2.5;
  int nlo = std::max(1, int(std::ceil((umax_lo - u0) / du)));
  for (int i = nlo; i-- > 0;) {
    emit_tail(plan, g, u0 + i * du, u0 + (i + 1) * du, true, split);
  }
  // dyadic panels from margin toward 1/2, then mirrored
  std::vector<double> cuts;
  for (double s = margin; s < 0.5; s *= 2) cuts.push_back(s);
  cuts.push_back(0.5);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) emit_plain(plan, g, cuts[i], cuts[i + 1], split);
  for (std::size_t i = cuts.size() - 1; i-- > 0;) {
    emit_plain_upper(plan, g, cuts[i], cuts[i + 1], split);
  }
  int nhi = std::max(1, int(std::ceil((umax_hi - u0) / du)));
  for (int i = 0; i < nhi; ++i) {
    emit_tail(plan, g, u0 + i * du, u0 + (i + 1) * du, false, split);
  }
  return plan;
}

}  // namespace

const GLData& GLData::get() {
  static GLData g = compute_gl();
  return g;
}

// ---------------- real omega-word cascade ----------------

namespace {

Real2 run_real_cascade(const std::vector<Density>& letters, const Real2& x0, const Real2& x1,
                       const PanelPlan& plan) {
  const GLData& g = GLData::get();
  const int k = int(letters.size());
  Real2 span = x1 - x0;
  Real2 one_m_x1 = Real2(1.0) - x1;
  std::vector<Real2> H(k + 1, Real2(0.0));  // H[j] = level value at current left edge; H[k] = 1
  H[k] = Real2(1.0);
  std::vector<std::array<Real2, kN>> f(k), Hn(k + 1);
  for (const auto& panel : plan.panels) {
    std::array<TPoint, kN> pts;
    std::array<Real2, kN> jac;
    for (int i = 0; i < kN; ++i) {
      Real2 t = x0 + span * panel[i].s;
      Real2 omt = one_m_x1 + span * panel[i].one_m_s;
      pts[i] = {t, omt};
      jac[i] = span * panel[i].jac;
    }
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < kN; ++i) f[j][i] = letters[j].eval(pts[i]) * jac[i];
    }
    for (int i = 0; i < kN; ++i) Hn[k][i] = Real2(1.0);
    for (int j = k; j-- > 0;) {
      for (int i = 0; i < kN; ++i) {
        Real2 acc = H[j];
        for (int m = 0; m < kN; ++m) acc += g.S[i][m] * f[j][m] * Hn[j + 1][m];
        Hn[j][i] = acc;
      }
    }
    // advance left-edge values to the panel's right edge
    for (int j = k; j-- > 0;) {
      Real2 acc = H[j];
      for (int m = 0; m < kN; ++m) acc += g.full[m] * f[j][m] * Hn[j + 1][m];
      H[j] = acc;
    }
  }
  return H[0];
}

}  // namespace

EvalResult integrate_omega_word(const std::vector<Density>& letters, Real2 x0, Real2 x1,
                                const EvalConfig& cfg, const RealWeightFn& tail_weight) {
  if (letters.empty()) {
    return {Complex2(Real2(1.0)), Real2(0.0), Engine::ODE_CASCADE};
  }
  std::vector<Density> ls = letters;
  (void)tail_weight;
  // the substituted tails truncate where e^{-u (decay)} is negligible; a
  // regular endpoint still needs e^{-u} itself below the target
  int ord_lo = ls.back().order0() + 1;
  int tw_hi = ls.front().twice_order1() + 2;
  bool hits_one = (Real2(1.0) - x1).hi < 1e-14;
  double umax_lo = 95.0 + 95.0 / std::max(1, ord_lo);
  double umax_hi = hits_one ? (95.0 + 190.0 / std::max(1, tw_hi)) : 95.0;
  double margin = cfg.singular_margin;
  Real2 prev;
  bool have_prev = false;
  for (int split = 0; split <= 3; ++split) {
    PanelPlan plan = build_plan(margin, umax_lo, umax_hi, split);
    Real2 v = run_real_cascade(ls, x0, x1, plan);
    if (have_prev) {
      Real2 est = fabs2(v - prev);
      double floor_est = 1e-31 * (1.0 + std::fabs(v.hi));
      if (est.hi < floor_est) est = Real2(floor_est);
      if (est.hi <= cfg.target_abs_error || split == 3) {
        return {Complex2(v), est, Engine::ODE_CASCADE};
      }
    }
    prev = v;
    have_prev = true;
  }
  return {Complex2(prev), Real2(1.0), Engine::ODE_CASCADE};  // unreachable
}

// ---------------- complex x-word cascade ----------------

Complex2 xletter_density(const XLetter& l, const XEvalPoint& p) {
  if (l.is_a) return Complex2(Real2(1.0)) / p.t;
  throw std::logic_error("xletter_density: pole letters need segment context");
}

namespace {

struct SegCtx {
  Complex2 p, q, span;
  std::vector<Complex2> rel_p, rel_q;  // pole - p, pole - q per letter
  std::vector<bool> is_a;
};

Complex2 xdensity_at(const SegCtx& ctx, std::size_t j, const SNode& node, const Complex2& t,
                     const Complex2& from_start, const Complex2& to_end) {
  if (ctx.is_a[j]) return Complex2(Real2(1.0)) / t;
  // pick the endpoint-anchored representation with the larger safe margin
  Complex2 denom;
  if (node.s.hi <= 0.5) {
    denom = ctx.rel_p[j] - from_start;
  } else {
    denom = ctx.rel_q[j] + to_end;
  }
  return Complex2(Real2(1.0)) / denom;
}

Complex2 run_x_cascade(const XWord& w, const std::vector<std::pair<Complex2, Complex2>>& segs,
                       const PanelPlan& plan) {
  const GLData& g = GLData::get();
  const int k = int(w.size());
  std::vector<Complex2> H(k + 1);
  H[k] = Complex2(Real2(1.0));
  std::vector<std::array<Complex2, kN>> f(k), Hn(k + 1);
  for (const auto& [p, q] : segs) {
    SegCtx ctx;
    ctx.p = p;
    ctx.q = q;
    ctx.span = q - p;
    for (const auto& l : w) {
      ctx.is_a.push_back(l.is_a);
      if (l.is_a) {
        ctx.rel_p.push_back(Complex2());
        ctx.rel_q.push_back(Complex2());
      } else {
        Complex2 xi = l.pole.embed();
        ctx.rel_p.push_back(xi - p);
        ctx.rel_q.push_back(xi - q);
      }
    }
    for (const auto& panel : plan.panels) {
      std::array<Complex2, kN> ts, froms, tos;
      std::array<Complex2, kN> jac;
      for (int i = 0; i < kN; ++i) {
        Complex2 from_start = ctx.span * Complex2(panel[i].s);
        Complex2 to_end = ctx.span * Complex2(panel[i].one_m_s);
        ts[i] = p + from_start;
        froms[i] = from_start;
        tos[i] = to_end;
        jac[i] = ctx.span * Complex2(panel[i].jac);
      }
      for (int j = 0; j < k; ++j) {
        for (int i = 0; i < kN; ++i) {
          f[j][i] = xdensity_at(ctx, j, panel[i], ts[i], froms[i], tos[i]) * jac[i];
        }
      }
      for (int i = 0; i < kN; ++i) Hn[k][i] = Complex2(Real2(1.0));
      for (int j = k; j-- > 0;) {
        for (int i = 0; i < kN; ++i) {
          Complex2 acc = H[j];
          for (int m = 0; m < kN; ++m) acc += Complex2(g.S[i][m]) * f[j][m] * Hn[j + 1][m];
          Hn[j][i] = acc;
        }
      }
      for (int j = k; j-- > 0;) {
        Complex2 acc = H[j];
        for (int m = 0; m < kN; ++m) acc += Complex2(g.full[m]) * f[j][m] * Hn[j + 1][m];
        H[j] = acc;
      }
    }
  }
  return H[0];
}

void check_poles_off_segment(const XWord& w, const Complex2& p, const Complex2& q) {
  // reject poles strictly inside an open segment
  Complex2 span = q - p;
  double len2 = (span.re * span.re + span.im * span.im).hi;
  if (len2 == 0.0) throw std::invalid_argument("xword path: empty segment");
  for (const auto& l : w) {
    Complex2 z = l.is_a ? Complex2() : l.pole.embed();
    Complex2 d = z - p;
    double proj = ((d.re * span.re + d.im * span.im) / Real2(len2)).hi;
    if (proj <= 1e-12 || proj >= 1.0 - 1e-12) continue;
    Complex2 foot = p + span * Complex2(Real2(proj));
    Complex2 off = z - foot;
    if (abs2(off).hi < 1e-10) {
      throw std::invalid_argument("xword path: pole " + l.to_string() + " on segment interior");
    }
  }
}

}  // namespace

EvalResult integrate_xword_path(const XWord& w, const PathSpec& path, const EvalConfig& cfg) {
  if (w.empty()) return {Complex2(Real2(1.0)), Real2(0.0), Engine::ODE_CASCADE};
  for (auto& [p, q] : path.segments) check_poles_off_segment(w, p, q);
  double margin = cfg.singular_margin;
  Complex2 prev;
  bool have_prev = false;
  for (int split = 0; split <= 3; ++split) {
    PanelPlan plan = build_plan(margin, 160.0, 160.0, split);
    Complex2 v = run_x_cascade(w, path.segments, plan);
    if (have_prev) {
      Real2 est = abs2(v - prev);
      double floor_est = 1e-30 * (1.0 + abs2(v).hi);
      if (est.hi < floor_est) est = Real2(floor_est);
      if (est.hi <= cfg.target_abs_error || split == 3) {
        return {v, est, Engine::ODE_CASCADE};
      }
    }
    prev = v;
    have_prev = true;
  }
  return {prev, Real2(1.0), Engine::ODE_CASCADE};
}

EvalResult integrate_xword_arc(const XWord& w, Real2 th0, Real2 th1, const EvalConfig& cfg) {
  // t = e^{i theta}; dt = i e^{i theta} d theta
  const GLData& g = GLData::get();
  const int k = int(w.size());
  std::vector<Complex2> poles;
  for (auto& l : w) poles.push_back(l.is_a ? Complex2() : l.pole.embed());
  Real2 span = th1 - th0;
  Complex2 prev;
  bool have_prev = false;
  for (int split = 0; split <= 3; ++split) {
    PanelPlan plan = build_plan(cfg.singular_margin, 160.0, 160.0, split);
    std::vector<Complex2> H(k + 1);
    H[k] = Complex2(Real2(1.0));
    std::vector<std::array<Complex2, kN>> f(k), Hn(k + 1);
    for (const auto& panel : plan.panels) {
      for (int j = 0; j < k; ++j) {
        for (int i = 0; i < kN; ++i) {
          Real2 th = th0 + span * panel[i].s;
          Complex2 t(cos2r(th), sin2r(th));
          Complex2 dt = Complex2(-t.im, t.re) * Complex2(span * panel[i].jac);
          Complex2 den;
          if (w[j].is_a) {
            den = t;
            f[j][i] = dt / den;
          } else {
            f[j][i] = dt / (poles[j] - t);
          }
        }
      }
      for (int i = 0; i < kN; ++i) Hn[k][i] = Complex2(Real2(1.0));
      for (int j = k; j-- > 0;) {
        for (int i = 0; i < kN; ++i) {
          Complex2 acc = H[j];
          for (int m = 0; m < kN; ++m) acc += Complex2(g.S[i][m]) * f[j][m] * Hn[j + 1][m];
          Hn[j][i] = acc;
        }
      }
      for (int j = k; j-- > 0;) {
        Complex2 acc = H[j];
        for (int m = 0; m < kN; ++m) acc += Complex2(g.full[m]) * f[j][m] * Hn[j + 1][m];
        H[j] = acc;
      }
    }
    Complex2 v = H[0];
    if (have_prev) {
      Real2 est = abs2(v - prev);
      double floor_est = 1e-30 * (1.0 + abs2(v).hi);
      if (est.hi < floor_est) est = Real2(floor_est);
      if (est.hi <= cfg.target_abs_error || split == 3) return {v, est, Engine::ODE_CASCADE};
    }
    prev = v;
    have_prev = true;
  }
  return {prev, Real2(1.0), Engine::ODE_CASCADE};
}

}  // namespace apery
