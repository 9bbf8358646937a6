#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "curvx/classify.hpp"

namespace curvx {

namespace {

using Basis = std::vector<Tensor<Real>>;
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

// Numeric rank cutoff for the quasi-Einstein tests.
constexpr Real kRankCutoff = 1e-8L;

template <class F>
Structure run(const SamplePlan& plan, std::string name, std::vector<std::string> labels, Real tol, F per_point,
              std::string note = {}) {
  std::vector<PointFit> fits;
  fits.reserve(plan.points.size());
  for (const auto& p : plan.points) fits.push_back(per_point(p));
  Structure s;
  s.name = name;
  s.fit = summarize_fit(std::move(name), std::move(labels), std::move(fits), tol);
  s.note = std::move(note);
  return s;
}

const Tensor<Real>& pick(const PointTensors& p, char which) {
  switch (which) {
    case 'R': return p.R;
    case 'S': return p.S;
    case 'C': return p.C;
    case 'P': return p.P;
    case 'W': return p.W;
    case 'K': return p.K;
    case 'g': return p.g;
    case 'T': return p.T;
  }
  throw Error(std::string("unknown tensor '") + which + "'");
}

std::vector<std::string> form_labels(const SamplePlan& plan, const std::string& form) {
  std::vector<std::string> out;
  for (const auto& c : plan.coords) out.push_back(form + "_" + c);
  return out;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Real dot_scale(const PointTensors& p, const Tensor<Real>& D, const Tensor<Real>& eta) {
  return max_abs(D) * max_abs(eta) * max_abs(p.g_inv);
}

// out(i.., x) = δ_xf X(i..)
Tensor<Real> form_last(const Tensor<Real>& X, int f) {
  const int n = X.dim();
  Tensor<Real> out(n, X.rank() + 1);
  for (std::size_t i = 0; i < X.size(); ++i) out[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(f)] = X[i];
  return out;
}

// Weak-symmetry column for a 1-form acting on slot `slot` of R:
// out(a,b,c,d,x) = δ_{i_slot f} R(.. x in place of i_slot ..), slot 4 is x itself.
Tensor<Real> slot_column(const Tensor<Real>& R, int f, int slot) {
  const int n = R.dim();
  Tensor<Real> out(n, 5);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    std::vector<int> idx = out.multi_index(flat);
    const int x = idx[4];
    idx.pop_back();
    if (slot == 4) {
      if (x == f) out[flat] = R.at(idx);
      continue;
    }
    if (idx[static_cast<std::size_t>(slot)] != f) continue;
    idx[static_cast<std::size_t>(slot)] = x;
    out[flat] = R.at(idx);
  }
  return out;
}

// out(a,b,c,x,y) = δ_af D_bcxy + δ_bf D_caxy + δ_cf D_abxy
Tensor<Real> cyclic_column(const Tensor<Real>& D, int f) {
  const int n = D.dim();
  Tensor<Real> out(n, 5);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const auto i = out.multi_index(flat);
    const int a = i[0], b = i[1], c = i[2], x = i[3], y = i[4];
    Real v = 0.0L;
    if (a == f) v += D({b, c, x, y});
    if (b == f) v += D({c, a, x, y});
    if (c == f) v += D({a, b, x, y});
    out[flat] = v;
  }
  return out;
}

// out(a,b,c,x,y) = ∇D_{bcxy,a} + ∇D_{caxy,b} + ∇D_{abxy,c}
Tensor<Real> cyclic_nabla(const Tensor<Real>& nD) {
  const int n = nD.dim();
  Tensor<Real> out(n, 5);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const auto i = out.multi_index(flat);
    const int a = i[0], b = i[1], c = i[2], x = i[3], y = i[4];
    out[flat] = nD({b, c, x, y, a}) + nD({c, a, x, y, b}) + nD({a, b, x, y, c});
  }
  return out;
}

// Σ_u Jm(u,a) D(u,x,b,c) cyclic in (a,b,c); Jm is the mixed operator.
Tensor<Real> compatibility(const Tensor<Real>& Jm, const Tensor<Real>& D) {
  const int n = D.dim();
  Tensor<Real> JD(n, 4);  // JD(a,x,b,c) = Σ_u Jm(u,a) D(u,x,b,c)
  for (std::size_t flat = 0; flat < JD.size(); ++flat) {
    const auto i = JD.multi_index(flat);
    Real v = 0.0L;
    for (int u = 0; u < n; ++u) v += Jm({u, i[0]}) * D({u, i[1], i[2], i[3]});
    JD[flat] = v;
  }
  Tensor<Real> out(n, 4);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const auto i = out.multi_index(flat);
    const int a = i[0], x = i[1], b = i[2], c = i[3];
    out[flat] = JD({a, x, b, c}) + JD({b, x, c, a}) + JD({c, x, a, b});
  }
  return out;
}

Tensor<Real> matmul(const Tensor<Real>& A, const Tensor<Real>& B) {
  const int n = A.dim();
  Tensor<Real> out(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Real v = 0.0L;
      for (int k = 0; k < n; ++k) v += A({i, k}) * B({k, j});
      out({i, j}) = v;
    }
  return out;
}

// One-form fit that asks for a nonzero 1-form when the target vanishes
// identically: then only a null direction of the basis map can realise it.
PointFit nontrivial_form_fit(const Tensor<Real>& target, const Basis& cols, Real scale, Real tol, bool& used_null) {
  if (max_abs(target) <= tol * scale) {
    used_null = true;
    return null_direction(cols);
  }
  return fit_point(target, cols, RankPolicy::Reduce, scale);
}

// Smallest (k+1)-th singular value of S − αg over real Ricci eigenvalues α,
// relative to the size of S. Rank must be exactly k at the point.
PointFit quasi_einstein_point(const PointTensors& p, int k) {
  const int n = p.S.dim();
  PointFit out;
  Matrix J(n, n), S(n, n), G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      J(i, j) = p.J({i, j});
      S(i, j) = p.S({i, j});
      G(i, j) = p.g({i, j});
    }
  const Real s_scale = Eigen::JacobiSVD<Matrix>(S).singularValues()(0);
  if (s_scale == 0.0L) {
    // Ricci flat: rank(S − 0·g) = 0.
    out.values = {0.0L};
    out.residual = k == 0 ? 0.0L : 1.0L;
    return out;
  }
  Eigen::EigenSolver<Matrix> es(J, false);
  const auto ev = es.eigenvalues();
  Real best = std::numeric_limits<Real>::infinity();
  Real best_alpha = 0.0L;
  Real g_scale = Eigen::JacobiSVD<Matrix>(G).singularValues()(0);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::fabs(ev(i).imag()) > 1e-9L * std::abs(ev(i)) + 1e-30L) continue;
    const Real alpha = ev(i).real();
    const Matrix M = S - alpha * G;
    const auto sv = Eigen::JacobiSVD<Matrix>(M).singularValues();
    const Real scale = std::max(s_scale, std::fabs(alpha) * g_scale);
    // rank exactly k: σ_{k+1} small, σ_k not
    const Real next = k < n ? sv(k) / scale : 0.0L;
    const Real kth = k > 0 ? sv(k - 1) / scale : 1.0L;
    const Real r = kth > kRankCutoff ? next : 1.0L;
    if (r < best) {
      best = r;
      best_alpha = alpha;
    }
  }
  out.values = {best_alpha};
  out.residual = std::isfinite(best) ? best : 1.0L;
  return out;
}

}  // namespace

std::vector<Structure> classify_pseudosymmetries(const SamplePlan& plan, Real tol) {
  std::vector<Structure> out;
  const std::string Ds = "RCWK";
  const std::string etas = "RSCWKP";
  for (char D : Ds)
    for (char eta : etas) {
      const std::string lhs = std::string(1, D) + "." + eta;
      out.push_back(run(plan, lhs + "=0", {}, tol, [&](const PointTensors& p) {
        const auto& d = pick(p, D);
        const auto& e = pick(p, eta);
        return fit_point(dot_action(d, e, p.g_inv), {}, RankPolicy::Strict, dot_scale(p, d, e));
      }));
      for (char lam : std::string("gS")) {
        const std::string name = lhs + "=L*Q(" + lam + "," + eta + ")";
        out.push_back(run(plan, name, {"L"}, tol, [&](const PointTensors& p) {
          const auto& d = pick(p, D);
          const auto& e = pick(p, eta);
          return fit_point(dot_action(d, e, p.g_inv), {tachibana(pick(p, lam), e)}, RankPolicy::Strict,
                           dot_scale(p, d, e));
        }));
      }
    }
  for (char lam : std::string("gS")) {
    const std::string name = std::string("R.R-Q(S,R)=L*Q(") + lam + ",C)";
    out.push_back(run(plan, name, {"L"}, tol, [&](const PointTensors& p) {
      const auto t = dot_action(p.R, p.R, p.g_inv) - tachibana(p.S, p.R);
      return fit_point(t, {tachibana(pick(p, lam), p.C)}, RankPolicy::Strict, dot_scale(p, p.R, p.R));
    }));
  }
  for (char eta : std::string("RC")) {
    const std::string name = std::string("C.R-R.C=L1*Q(S,") + eta + ")+L2*Q(g," + eta + ")";
    out.push_back(run(plan, name, {"L1", "L2"}, tol, [&](const PointTensors& p) {
      const auto t = dot_action(p.C, p.R, p.g_inv) - dot_action(p.R, p.C, p.g_inv);
      const auto& e = pick(p, eta);
      return fit_point(t, {tachibana(p.S, e), tachibana(p.g, e)}, RankPolicy::Strict, dot_scale(p, p.C, p.R));
    }));
  }
  return out;
}

std::vector<Structure> classify_einstein(const SamplePlan& plan, Real tol) {
  std::vector<Structure> out;
  out.push_back(run(plan, "einstein", {"alpha"}, tol,
                    [](const PointTensors& p) { return fit_point(p.S, {p.g}, RankPolicy::Strict); }));
  const char* names[] = {"quasi_einstein", "2_quasi_einstein", "3_quasi_einstein"};
  for (int k = 1; k <= 3; ++k) {
    std::vector<PointFit> fits;
    for (const auto& p : plan.points) fits.push_back(quasi_einstein_point(p, k));
    Structure s;
    s.name = names[k - 1];
    s.fit = summarize_fit(s.name, {"alpha"}, std::move(fits), kRankCutoff);
    s.note = "numeric rank of S - alpha*g, cutoff 1e-8";
    out.push_back(std::move(s));
  }
  out.push_back(run(plan, "ein2", {"beta", "beta_bar"}, tol, [](const PointTensors& p) {
    return fit_point(Real(-1) * p.S2, {p.S, p.g}, RankPolicy::Reduce);
  }));
  out.push_back(run(plan, "ein3", {"b2", "b3", "b4"}, tol, [](const PointTensors& p) {
    const auto S3 = matmul(p.S2, p.J);
    return fit_point(Real(-1) * S3, {p.S2, p.S, p.g}, RankPolicy::Reduce);
  }));
  out.push_back(run(plan, "ein4", {"b2", "b3", "b4", "b5"}, tol, [](const PointTensors& p) {
    const auto S3 = matmul(p.S2, p.J);
    const auto S4 = matmul(S3, p.J);
    return fit_point(Real(-1) * S4, {S3, p.S2, p.S, p.g}, RankPolicy::Reduce);
  }));
  out.push_back(run(plan, "scalar_curvature_zero", {}, tol, [](const PointTensors& p) {
    Tensor<Real> k(p.g.dim(), 0);
    k[0] = p.kappa;
    Real mag = 0.0L;
    for (std::size_t i = 0; i < p.S.size(); ++i) mag += std::fabs(p.g_inv[i] * p.S[i]);
    if (mag == 0.0L) {
      PointFit f;
      return f;  // S = 0, κ = 0 exactly
    }
    return fit_point(k, {}, RankPolicy::Strict, mag);
  }));

  int level = 0;
  const char* ordered[] = {"einstein", "ein2", "ein3", "ein4"};
  for (int i = 0; i < 4 && level == 0; ++i) {
    for (const auto& s : out)
      if (s.name == ordered[i] && s.fit.verdict == Verdict::Holds) level = i + 1;
  }
  for (auto& s : out) {
    if (s.name == "einstein") s.note = level ? "einstein level " + std::to_string(level) : "einstein level: none up to 4";
  }
  return out;
}

std::vector<Structure> classify_roter(const SamplePlan& plan, Real tol) {
  std::vector<Structure> out;
  out.push_back(run(plan, "roter", {"rho1", "rho2", "rho3"}, tol, [](const PointTensors& p) {
    return fit_point(p.R, {kulkarni_nomizu(p.g, p.g), kulkarni_nomizu(p.g, p.S), kulkarni_nomizu(p.S, p.S)},
                     RankPolicy::Strict);
  }));
  out.push_back(run(plan, "generalized_roter", {"s22", "s12", "s11", "s02", "s01", "s00"}, tol,
                    [](const PointTensors& p) {
                      return fit_point(p.R,
                                       {kulkarni_nomizu(p.g, p.g), kulkarni_nomizu(p.g, p.S), kulkarni_nomizu(p.S, p.S),
                                        kulkarni_nomizu(p.g, p.S2), kulkarni_nomizu(p.S, p.S2),
                                        kulkarni_nomizu(p.S2, p.S2)},
                                       RankPolicy::Reduce);
                    }));
  return out;
}

std::vector<Structure> classify_recurrence(const SamplePlan& plan, Real tol) {
  const int n = static_cast<int>(plan.coords.size());
  struct Variant {
    const char* name;
    // (wedge product carrying a 1-form, label); "R" is the Π⊗R term
    std::vector<std::pair<std::string, std::string>> forms;
  };
  const std::vector<Variant> variants = {
      {"recurrent", {{"R", "Pi"}}},
      {"weakly_generalized_recurrent", {{"R", "Pi"}, {"SS", "Abarbar"}}},
      {"hyper_generalized_recurrent", {{"R", "Pi"}, {"gS", "Abar"}}},
      {"super_generalized_recurrent", {{"R", "Pi"}, {"gg", "A"}, {"gS", "Abar"}, {"SS", "Abarbar"}}},
      {"special_recurrent_like", {{"gS", "A"}}},
  };
  std::vector<Structure> out;
  for (const auto& v : variants) {
    std::vector<std::string> labels;
    for (const auto& f : v.forms) labels = concat(labels, form_labels(plan, f.second));
    out.push_back(run(plan, v.name, labels, tol, [&](const PointTensors& p) {
      Basis cols;
      for (const auto& f : v.forms) {
        const std::string& w = f.first;
        const Tensor<Real> X = w == "R"    ? p.R
                               : w == "gg" ? kulkarni_nomizu(p.g, p.g)
                               : w == "gS" ? kulkarni_nomizu(p.g, p.S)
                                           : kulkarni_nomizu(p.S, p.S);
        for (int k = 0; k < n; ++k) cols.push_back(form_last(X, k));
      }
      return fit_point(p.nablaR, cols, RankPolicy::Reduce);
    }));
  }
  return out;
}

std::vector<Structure> classify_form_recurrence(const SamplePlan& plan, Real tol) {
  const int n = static_cast<int>(plan.coords.size());
  std::vector<Structure> out;
  for (char D : std::string("RC")) {
    bool used_null = false;
    Structure s = run(plan, std::string("curvature_2forms_recurrent[") + D + "]", form_labels(plan, "A"), tol,
                      [&](const PointTensors& p) {
                        const auto& d = pick(p, D);
                        const auto& nd = D == 'R' ? p.nablaR : p.nablaC;
                        Basis cols;
                        for (int f = 0; f < n; ++f) cols.push_back(cyclic_column(d, f));
                        return nontrivial_form_fit(cyclic_nabla(nd), cols, max_abs(nd), tol, used_null);
                      });
    if (used_null) {
      s.note = "cyclic sum of the covariant derivative vanishes identically; a nonzero 1-form A is required";
    }
    out.push_back(std::move(s));
  }
  for (bool same : {true, false}) {
    bool used_null = false;
    const std::string name = same ? "ricci_1forms_recurrent[A=Abar]" : "ricci_1forms_recurrent[A,Abar]";
    auto labels = form_labels(plan, "A");
    if (!same) labels = concat(labels, form_labels(plan, "Abar"));
    Structure s = run(plan, name, labels, tol, [&](const PointTensors& p) {
      // t(a,b,x) = (∇_a S)(b,x) − (∇_b S)(a,x)
      Tensor<Real> t(n, 3);
      for (std::size_t flat = 0; flat < t.size(); ++flat) {
        const auto i = t.multi_index(flat);
        t[flat] = p.nablaS({i[1], i[2], i[0]}) - p.nablaS({i[0], i[2], i[1]});
      }
      Basis a_cols, b_cols;
      for (int f = 0; f < n; ++f) {
        Tensor<Real> a(n, 3), b(n, 3);
        for (std::size_t flat = 0; flat < a.size(); ++flat) {
          const auto i = a.multi_index(flat);
          if (i[0] == f) a[flat] = p.S({i[1], i[2]});
          if (i[1] == f) b[flat] = -p.S({i[0], i[2]});
        }
        a_cols.push_back(std::move(a));
        b_cols.push_back(std::move(b));
      }
      Basis cols;
      if (same) {
        for (int f = 0; f < n; ++f) cols.push_back(a_cols[static_cast<std::size_t>(f)] + b_cols[static_cast<std::size_t>(f)]);
      } else {
        cols = a_cols;
        cols.insert(cols.end(), b_cols.begin(), b_cols.end());
      }
      return nontrivial_form_fit(t, cols, max_abs(p.nablaS), tol, used_null);
    });
    if (used_null) s.note = "Ricci tensor is Codazzi; a nonzero 1-form is required";
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Structure> classify_ricci_properties(const SamplePlan& plan, Real tol) {
  const int n = static_cast<int>(plan.coords.size());
  std::vector<Structure> out;
  out.push_back(run(plan, "ricci_codazzi", {}, tol, [&](const PointTensors& p) {
    Tensor<Real> t(n, 3);
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
      const auto i = t.multi_index(flat);
      const int a = i[0], b = i[1], c = i[2];
      t[flat] = p.nablaS({c, b, a}) - p.nablaS({c, a, b});
    }
    return fit_point(t, {}, RankPolicy::Strict, max_abs(p.nablaS));
  }));
  out.push_back(run(plan, "ricci_cyclic_parallel", {}, tol, [&](const PointTensors& p) {
    Tensor<Real> t(n, 3);
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
      const auto i = t.multi_index(flat);
      const int a = i[0], b = i[1], c = i[2];
      t[flat] = p.nablaS({b, c, a}) + p.nablaS({c, a, b}) + p.nablaS({a, b, c});
    }
    return fit_point(t, {}, RankPolicy::Strict, max_abs(p.nablaS));
  }));
  for (bool use_T : {false, true}) {
    for (char D : std::string("RCPWK")) {
      const std::string name = std::string(use_T ? "T_compatible[" : "ricci_compatible[") + D + "]";
      out.push_back(run(plan, name, {}, tol, [&](const PointTensors& p) {
        const Tensor<Real> Jm = use_T ? matmul(p.g_inv, p.T) : p.J;
        const auto& d = pick(p, D);
        return fit_point(compatibility(Jm, d), {}, RankPolicy::Strict, max_abs(Jm) * max_abs(d));
      }));
    }
  }
  return out;
}

std::vector<Structure> classify_symmetry_forms(const SamplePlan& plan, Real tol) {
  const int n = static_cast<int>(plan.coords.size());
  std::vector<Structure> out;
  // slot 4 is Π (derivative slot), then B̄ (d), B (c), Ā (b), A (a)
  const std::vector<std::pair<int, std::string>> slots = {{4, "Pi"}, {3, "Bbar"}, {2, "B"}, {1, "Abar"}, {0, "A"}};
  std::vector<std::string> labels;
  for (const auto& [slot, l] : slots) labels = concat(labels, form_labels(plan, l));
  out.push_back(run(plan, "weakly_symmetric", labels, tol, [&](const PointTensors& p) {
    Basis cols;
    for (const auto& [slot, l] : slots)
      for (int f = 0; f < n; ++f) cols.push_back(slot_column(p.R, f, slot));
    return fit_point(p.nablaR, cols, RankPolicy::Reduce);
  }));
  out.push_back(run(plan, "chaki_pseudosymmetric", form_labels(plan, "Pi"), tol, [&](const PointTensors& p) {
    Basis cols;
    for (int f = 0; f < n; ++f) {
      Tensor<Real> c = slot_column(p.R, f, 4);
      for (int slot = 0; slot < 4; ++slot) c = c + Real(2) * slot_column(p.R, f, slot);
      cols.push_back(std::move(c));
    }
    return fit_point(p.nablaR, cols, RankPolicy::Reduce);
  }));
  for (char D : std::string("RCPWK")) {
    Structure s = run(plan, std::string("venzi[") + D + "]", form_labels(plan, "Theta"), tol, [&](const PointTensors& p) {
      Basis cols;
      for (int f = 0; f < n; ++f) cols.push_back(cyclic_column(pick(p, D), f));
      return null_direction(cols);
    });
    s.note = "residual is the smallest relative singular value of the map Theta -> cyclic sum Theta (x) D";
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Structure> classify_T_pseudosymmetry(const SamplePlan& plan, Real tol) {
  std::vector<Structure> out;
  for (char D : std::string("RC")) {
    out.push_back(run(plan, std::string(1, D) + ".T=L*Q(g,T)", {"L"}, tol, [&](const PointTensors& p) {
      const auto& d = pick(p, D);
      return fit_point(dot_action(d, p.T, p.g_inv), {tachibana(p.g, p.T)}, RankPolicy::Strict, dot_scale(p, d, p.T));
    }));
  }
  return out;
}

}  // namespace curvx
