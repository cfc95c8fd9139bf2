#include "support.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace fqed::test {

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix4 prop(const FourVector& q, double m) {
  ComplexMatrix4 s = slash(q);
  s.diagonal().array() += m;
  return s / (minkowski_dot(q, q) - m * m);
}

// p̸ + sign·m
ComplexMatrix4 projector(const FourVector& p, double m, double sign) {
  ComplexMatrix4 s = slash(p);
  s.diagonal().array() += sign * m;
  return s;
}

ComplexMatrix4 reversed(std::initializer_list<ComplexMatrix4> ms) {
  ComplexMatrix4 out = ComplexMatrix4::Identity();
  for (auto it = ms.end(); it != ms.begin();) out = out * *--it;
  return out;
}

ComplexMatrix4 ordered(std::initializer_list<ComplexMatrix4> ms) {
  ComplexMatrix4 out = ComplexMatrix4::Identity();
  for (const auto& m : ms) out = out * m;
  return out;
}

double tr(std::initializer_list<ComplexMatrix4> ms) {
  const std::vector<ComplexMatrix4> v(ms);
  return trace_product(v).real();
}

double e_squared(double alpha) { return 4.0 * kPi * alpha; }

FourVector mom(const KinematicConfig& c, const char* l) { return c.leg(l).momentum; }

double coulomb(const Vector3& q) { return q.squaredNorm(); }

Vector3 sp(const FourVector& v) { return {v.x, v.y, v.z}; }

} // namespace

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

Vector3 random_unit(Rng& rng) {
  const double z = uniform(rng, -1.0, 1.0);
  const double phi = uniform(rng, 0.0, 2.0 * kPi);
  const double r = std::sqrt(1.0 - z * z);
  return {r * std::cos(phi), r * std::sin(phi), z};
}

FourVector random_four_vector(Rng& rng, double scale) {
  return {uniform(rng, -scale, scale), uniform(rng, -scale, scale), uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
}

FourVector random_on_shell(Rng& rng, double mass, double pmax) {
  const double p = uniform(rng, 0.0, pmax);
  const Vector3 n = random_unit(rng) * p;
  return {std::sqrt(mass * mass + p * p), n.x(), n.y(), n.z()};
}

FourVector lightlike(double omega, const Vector3& n) { return {omega, omega * n.x(), omega * n.y(), omega * n.z()}; }

FourVector boost(const FourVector& v, const Vector3& beta) {
  const double b2 = beta.squaredNorm();
  if (b2 == 0.0) return v;
  const double g = 1.0 / std::sqrt(1.0 - b2);
  const Vector3 x = sp(v);
  const double bp = beta.dot(x);
  const Vector3 xs = x + ((g - 1.0) * bp / b2 + g * v.t) * beta;
  return {g * (v.t + bp), xs.x(), xs.y(), xs.z()};
}

namespace {

// Shell-exact copy: energy recomputed from the spatial part.
FourVector reshell(const FourVector& v, double m) {
  return {std::sqrt(m * m + v.x * v.x + v.y * v.y + v.z * v.z), v.x, v.y, v.z};
}

// Two bodies of mass m back to back in the CM of total energy √s, then boosted.
std::pair<FourVector, FourVector> two_body(Rng& rng, double sqrt_s, double m, const Vector3& beta) {
  const double E = sqrt_s / 2.0;
  const double p = std::sqrt(std::max(0.0, E * E - m * m));
  const Vector3 n = random_unit(rng) * p;
  const FourVector a{E, n.x(), n.y(), n.z()};
  const FourVector b{E, -n.x(), -n.y(), -n.z()};
  return {boost(a, beta), boost(b, beta)};
}

} // namespace

KinematicConfig random_compton(Rng& rng, double m) {
  const FourVector p = random_on_shell(rng, m, 2.0);
  const FourVector k = lightlike(uniform(rng, 0.1, 3.0), random_unit(rng));
  const FourVector P = p + k;
  const Vector3 n = random_unit(rng);
  const double wf = (minkowski_dot(P, P) - m * m) / (2.0 * (P.t - sp(P).dot(n)));
  const FourVector kf = lightlike(wf, n);
  const std::array<FourVector, 4> mm{p, k, P - kf, kf};
  return make_config(ProcessId::compton, mm, m);
}

KinematicConfig random_annihilation(Rng& rng, double m) {
  const FourVector pm = random_on_shell(rng, m, 2.0);
  const FourVector pp = random_on_shell(rng, m, 2.0);
  const FourVector P = pm + pp;
  const Vector3 n = random_unit(rng);
  const double w = minkowski_dot(P, P) / (2.0 * (P.t - sp(P).dot(n)));
  const FourVector k1 = lightlike(w, n);
  const FourVector r = P - k1;
  const double w2 = sp(r).norm();
  const FourVector k2{w2, r.x, r.y, r.z};
  const std::array<FourVector, 4> mm{pm, pp, k1, k2};
  return make_config(ProcessId::pair_annihilation, mm, m);
}

namespace {

KinematicConfig random_two_to_two(Rng& rng, ProcessId id, double m) {
  const Vector3 beta = random_unit(rng) * uniform(rng, 0.0, 0.6);
  const double sqrt_s = uniform(rng, 2.2 * m, 6.0 * m);
  auto [a, b] = two_body(rng, sqrt_s, m, beta);
  auto [c, d] = two_body(rng, sqrt_s, m, beta);
  a = reshell(a, m);
  b = reshell(b, m);
  c = reshell(c, m);
  d = reshell(d, m);
  const std::array<FourVector, 4> mm{a, b, c, d};
  return make_config(id, mm, m);
}

} // namespace

KinematicConfig random_moller(Rng& rng, double m) { return random_two_to_two(rng, ProcessId::electron_electron, m); }
KinematicConfig random_bhabha(Rng& rng, double m) { return random_two_to_two(rng, ProcessId::electron_positron, m); }

KinematicConfig random_bremsstrahlung(Rng& rng, double m) {
  const FourVector pi = random_on_shell(rng, m, 3.0);
  const double w = uniform(rng, 0.05, 0.9) * (pi.t - m);
  const FourVector k = lightlike(w, random_unit(rng));
  const double Ef = pi.t - w;
  const Vector3 n = random_unit(rng) * std::sqrt(std::max(0.0, Ef * Ef - m * m));
  const FourVector pf{Ef, n.x(), n.y(), n.z()};
  const std::array<FourVector, 3> mm{pi, pf, k};
  return make_config(ProcessId::bremsstrahlung, mm, m, uniform(rng, 1.0, 10.0));
}

KinematicConfig random_pair_production(Rng& rng, double m) {
  const double w = uniform(rng, 2.2 * m, 6.0 * m);
  const FourVector k = lightlike(w, random_unit(rng));
  const double Ep = m + uniform(rng, 0.05, 0.95) * (w - 2.0 * m);
  const double Em = w - Ep;
  const Vector3 np = random_unit(rng) * std::sqrt(Ep * Ep - m * m);
  const Vector3 nm = random_unit(rng) * std::sqrt(std::max(0.0, Em * Em - m * m));
  const std::array<FourVector, 3> mm{k, {Ep, np.x(), np.y(), np.z()}, {Em, nm.x(), nm.y(), nm.z()}};
  return make_config(ProcessId::pair_production, mm, m, uniform(rng, 1.0, 10.0));
}

KinematicConfig random_config(Rng& rng, ProcessId id, double m) {
  switch (id) {
  case ProcessId::compton: return random_compton(rng, m);
  case ProcessId::bremsstrahlung: return random_bremsstrahlung(rng, m);
  case ProcessId::pair_annihilation: return random_annihilation(rng, m);
  case ProcessId::pair_production: return random_pair_production(rng, m);
  case ProcessId::electron_electron: return random_moller(rng, m);
  case ProcessId::electron_positron: return random_bhabha(rng, m);
  }
  return random_compton(rng, m);
}

void randomize_labels(Rng& rng, KinematicConfig& cfg) {
  for (auto& l : cfg.legs) {
    const bool flip = uniform(rng, 0.0, 1.0) < 0.5;
    l.spin = flip ? Spin::down : Spin::up;
    l.helicity = flip ? Helicity::minus : Helicity::plus;
  }
}

double compton_trace(const KinematicConfig& c, double alpha) {
  const double m = c.mass;
  const FourVector pi = mom(c, "p_i"), ki = mom(c, "k_i"), pf = mom(c, "p_f"), kf = mom(c, "k_f");
  const ComplexMatrix4 s1 = prop(pi + ki, m), s2 = prop(pi - kf, m);
  const ComplexMatrix4 Pf = projector(pf, m, 1), Pi = projector(pi, m, 1);
  double sum = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const ComplexMatrix4 G = ordered({gamma(a), s1, gamma(b)}) + ordered({gamma(b), s2, gamma(a)});
      const ComplexMatrix4 Gbar = reversed({gamma(a), s1, gamma(b)}) + reversed({gamma(b), s2, gamma(a)});
      sum += metric(a) * metric(b) * tr({Pf, G, Pi, Gbar});
    }
  }
  const double e2 = e_squared(alpha);
  return sum * e2 * e2 / 4.0;
}

double annihilation_trace(const KinematicConfig& c, double alpha) {
  const double m = c.mass;
  const FourVector pm = mom(c, "p_minus"), pp = mom(c, "p_plus"), k1 = mom(c, "k_i"), k2 = mom(c, "k_f");
  const ComplexMatrix4 s1 = prop(pm - k1, m), s2 = prop(pm - k2, m);
  const ComplexMatrix4 Pp = projector(pp, m, -1), Pm = projector(pm, m, 1);
  double sum = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const ComplexMatrix4 G = ordered({gamma(a), s1, gamma(b)}) + ordered({gamma(b), s2, gamma(a)});
      const ComplexMatrix4 Gbar = reversed({gamma(a), s1, gamma(b)}) + reversed({gamma(b), s2, gamma(a)});
      sum += metric(a) * metric(b) * tr({Pp, G, Pm, Gbar});
    }
  }
  const double e2 = e_squared(alpha);
  return sum * e2 * e2 / 4.0;
}

double bremsstrahlung_trace(const KinematicConfig& c, double alpha) {
  const double m = c.mass;
  const FourVector pi = mom(c, "p_i"), pf = mom(c, "p_f"), k = mom(c, "k_f");
  const ComplexMatrix4 s1 = prop(pf + k, m), s2 = prop(pi - k, m);
  const ComplexMatrix4 Pf = projector(pf, m, 1), Pi = projector(pi, m, 1);
  double sum = 0.0;
  for (int a = 0; a < 4; ++a) {
    const ComplexMatrix4 X = ordered({gamma(a), s1, gamma(0)}) + ordered({gamma(0), s2, gamma(a)});
    const ComplexMatrix4 Xbar = reversed({gamma(a), s1, gamma(0)}) + reversed({gamma(0), s2, gamma(a)});
    sum += -metric(a) * tr({Pf, X, Pi, Xbar});
  }
  const double q2 = coulomb(sp(k) + sp(pf) - sp(pi));
  const double e2 = e_squared(alpha);
  return sum / (q2 * q2) * e2 * e2 * e2 * c.nucleus_charge * c.nucleus_charge / 2.0;
}

namespace {

// Σ_λ ε^μ ε^ν* contracted into tr(P_a X^μ P_b X̄^ν), either with -g^{μν} or with
// the physical transverse sum δ^{ij} - k̂^i k̂^j.
double pp_polarization_sum(const KinematicConfig& c, bool transverse, bool textbook) {
  const double m = c.mass;
  const FourVector k = mom(c, "k_i"), pp = mom(c, "p_plus"), pm = mom(c, "p_minus");
  const ComplexMatrix4 s1 = textbook ? prop(pm - k, m) : prop(pp - k, m);
  const ComplexMatrix4 s2 = textbook ? prop(k - pp, m) : prop(k - pm, m);
  const ComplexMatrix4 left = textbook ? projector(pm, m, 1) : projector(pp, m, -1);
  const ComplexMatrix4 right = textbook ? projector(pp, m, -1) : projector(pm, m, 1);
  auto X = [&](int a) { return ComplexMatrix4(ordered({gamma(a), s1, gamma(0)}) + ordered({gamma(0), s2, gamma(a)})); };
  auto Xbar = [&](int a) {
    return ComplexMatrix4(reversed({gamma(a), s1, gamma(0)}) + reversed({gamma(0), s2, gamma(a)}));
  };
  double sum = 0.0;
  if (transverse) {
    const Vector3 n = sp(k).normalized();
    for (int i = 1; i < 4; ++i) {
      for (int j = 1; j < 4; ++j) {
        const double w = (i == j ? 1.0 : 0.0) - n(i - 1) * n(j - 1);
        if (w != 0.0) sum += w * tr({left, X(i), right, Xbar(j)});
      }
    }
  } else {
    for (int a = 0; a < 4; ++a) sum += -metric(a) * tr({left, X(a), right, Xbar(a)});
  }
  const double q2 = coulomb(sp(pp) + sp(pm) - sp(k));
  return sum / (q2 * q2);
}

} // namespace

double pair_production_trace(const KinematicConfig& c, double alpha) {
  const double e2 = e_squared(alpha);
  return pp_polarization_sum(c, true, false) * e2 * e2 * e2 * c.nucleus_charge * c.nucleus_charge / 2.0;
}

double pair_production_trace_standard(const KinematicConfig& c, double alpha, bool transverse) {
  const double e2 = e_squared(alpha);
  return pp_polarization_sum(c, transverse, true) * e2 * e2 * e2 * c.nucleus_charge * c.nucleus_charge / 2.0;
}

double moller_trace(const KinematicConfig& c, double alpha) {
  const double m = c.mass;
  const FourVector p1 = mom(c, "p_i1"), p2 = mom(c, "p_i2"), p3 = mom(c, "p_f1"), p4 = mom(c, "p_f2");
  const ComplexMatrix4 P1 = projector(p1, m, 1), P2 = projector(p2, m, 1), P3 = projector(p3, m, 1),
                       P4 = projector(p4, m, 1);
  const FourVector tq = p1 - p3, uq = p1 - p4;
  const double t = minkowski_dot(tq, tq), u = minkowski_dot(uq, uq);
  double dd = 0.0, ee = 0.0, de = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double g = metric(a) * metric(b);
      dd += g * tr({P3, gamma(a), P1, gamma(b)}) * tr({P4, gamma(a), P2, gamma(b)});
      ee += g * tr({P4, gamma(a), P1, gamma(b)}) * tr({P3, gamma(a), P2, gamma(b)});
      de += g * tr({P3, gamma(a), P1, gamma(b), P4, gamma(a), P2, gamma(b)});
    }
  }
  const double sum = dd / (t * t) + ee / (u * u) - 2.0 * de / (t * u);
  const double e2 = e_squared(alpha);
  return sum * e2 * e2 / 4.0;
}

double bhabha_trace(const KinematicConfig& c, double alpha) {
  const double m = c.mass;
  const FourVector im = mom(c, "p_i_minus"), ip = mom(c, "p_i_plus"), fm = mom(c, "p_f_minus"), fp = mom(c, "p_f_plus");
  const ComplexMatrix4 Pim = projector(im, m, 1), Pfm = projector(fm, m, 1), Pip = projector(ip, m, -1),
                       Pfp = projector(fp, m, -1);
  const FourVector tq = im - fm, sq = im + ip;
  const double t = minkowski_dot(tq, tq), s = minkowski_dot(sq, sq);
  double ss = 0.0, aa = 0.0, sa = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double g = metric(a) * metric(b);
      ss += g * tr({Pip, gamma(a), Pfp, gamma(b)}) * tr({Pfm, gamma(a), Pim, gamma(b)});
      aa += g * tr({Pfm, gamma(a), Pfp, gamma(b)}) * tr({Pip, gamma(a), Pim, gamma(b)});
      sa += g * tr({Pip, gamma(a), Pfp, gamma(b), Pfm, gamma(a), Pim, gamma(b)});
    }
  }
  const double sum = ss / (t * t) + aa / (s * s) - 2.0 * sa / (s * t);
  const double e2 = e_squared(alpha);
  return sum * e2 * e2 / 4.0;
}

double trace_oracle(const KinematicConfig& cfg, double alpha) {
  switch (cfg.process) {
  case ProcessId::compton: return compton_trace(cfg, alpha);
  case ProcessId::bremsstrahlung: return bremsstrahlung_trace(cfg, alpha);
  case ProcessId::pair_annihilation: return annihilation_trace(cfg, alpha);
  case ProcessId::pair_production: return pair_production_trace(cfg, alpha);
  case ProcessId::electron_electron: return moller_trace(cfg, alpha);
  case ProcessId::electron_positron: return bhabha_trace(cfg, alpha);
  }
  return 0.0;
}

double klein_nishina(const KinematicConfig& c, double alpha) {
  const double m = c.mass;
  const FourVector p = mom(c, "p_i");
  const double pk = minkowski_dot(p, mom(c, "k_i"));
  const double pkf = minkowski_dot(p, mom(c, "k_f"));
  const double d = 1.0 / pk - 1.0 / pkf;
  const double e2 = e_squared(alpha);
  return 2.0 * e2 * e2 * (pkf / pk + pk / pkf + 2.0 * m * m * d + m * m * m * m * d * d);
}

double annihilation_closed_form(const KinematicConfig& c, double alpha) {
  const double m = c.mass;
  const FourVector p = mom(c, "p_minus");
  const double pk1 = minkowski_dot(p, mom(c, "k_i"));
  const double pk2 = minkowski_dot(p, mom(c, "k_f"));
  const double s = 1.0 / pk1 + 1.0 / pk2;
  const double e2 = e_squared(alpha);
  return 2.0 * e2 * e2 * (pk2 / pk1 + pk1 / pk2 + 2.0 * m * m * s - m * m * m * m * s * s);
}

double width_oracle(const TransitionCurrent& j, double delta, double alpha) {
  const double gap = std::abs(delta);
  const auto smeared = [&](double sigma) {
    const int n = 400000;
    const double a = gap - 12.0 * sigma, b = gap + 12.0 * sigma, h = (b - a) / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double k = a + i * h;
      const FourVector c = j(k);
      const double f = k * minkowski_dot(c, c) * std::exp(-0.5 * (k - gap) * (k - gap) / (sigma * sigma)) /
                       (sigma * std::sqrt(2.0 * kPi));
      s += f * (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0));
    }
    return s * h / 3.0;
  };
  const double sigma = gap / 40.0;
  const double value = (4.0 * smeared(sigma / 2.0) - smeared(sigma)) / 3.0;
  const double C = -4.0 * alpha;
  return -C * (kPi / 2.0) * (delta > 0 ? value : -value);
}

GaussRule gauss_legendre(int n, double a, double b) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) J(i, i - 1) = J(i - 1, i) = i / std::sqrt(4.0 * i * i - 1.0);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussRule g;
  for (int i = 0; i < n; ++i) {
    const double v = es.eigenvectors()(0, i);
    g.nodes.push_back(0.5 * (b - a) * es.eigenvalues()(i) + 0.5 * (a + b));
    g.weights.push_back((b - a) * v * v);
  }
  return g;
}

double relative_difference(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

} // namespace fqed::test
