#include "fqed/processes.hpp"

#include "fqed/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace fqed {

namespace {

constexpr double kPoleTolerance = 1e-6;      // |q² - m²| and |q²| in units of m²
constexpr double kCoulombTolerance = 1e-12;  // |q⃗|² in units of m²
constexpr double kShellTolerance = 1e-10;

using Schema = std::array<LegSchema, 4>;

constexpr LegSchema E_IN(std::string_view l) { return {l, Species::electron, Direction::incoming}; }
constexpr LegSchema E_OUT(std::string_view l) { return {l, Species::electron, Direction::outgoing}; }
constexpr LegSchema P_IN(std::string_view l) { return {l, Species::positron, Direction::incoming}; }
constexpr LegSchema P_OUT(std::string_view l) { return {l, Species::positron, Direction::outgoing}; }
constexpr LegSchema G_IN(std::string_view l) { return {l, Species::photon, Direction::incoming}; }
constexpr LegSchema G_OUT(std::string_view l) { return {l, Species::photon, Direction::outgoing}; }

constexpr Schema kCompton{E_IN("p_i"), G_IN("k_i"), E_OUT("p_f"), G_OUT("k_f")};
constexpr std::array<LegSchema, 3> kBrems{E_IN("p_i"), E_OUT("p_f"), G_OUT("k_f")};
constexpr Schema kAnnihilation{E_IN("p_minus"), P_IN("p_plus"), G_OUT("k_i"), G_OUT("k_f")};
constexpr std::array<LegSchema, 3> kPairProduction{G_IN("k_i"), P_OUT("p_plus"), E_OUT("p_minus")};
constexpr Schema kMoller{E_IN("p_i1"), E_IN("p_i2"), E_OUT("p_f1"), E_OUT("p_f2")};
constexpr Schema kBhabha{E_IN("p_i_minus"), P_IN("p_i_plus"), E_OUT("p_f_minus"), P_OUT("p_f_plus")};

bool has_nucleus(ProcessId id) { return id == ProcessId::bremsstrahlung || id == ProcessId::pair_production; }

Vector3 spatial(const FourVector& v) { return {v.x, v.y, v.z}; }

Vector3 direction_of(const FourVector& k) {
  const double n = k.spatial_norm();
  if (!(n > 0.0)) throw DomainError("photon leg with zero three-momentum");
  return spatial(k) / n;
}

// Rationalized (q̸ + m)/(q² - m²) with the typed pole guard.
ComplexMatrix4 propagator(const FourVector& q, double m) {
  const double d = minkowski_dot(q, q) - m * m;
  if (std::abs(d) < kPoleTolerance * m * m) {
    std::ostringstream os;
    os.precision(6);
    os << "intermediate fermion on the mass shell, q^2 - m^2 = " << d;
    throw PoleError(os.str());
  }
  ComplexMatrix4 num = slash(q);
  num.diagonal().array() += m;
  return num / d;
}

double photon_denominator(const FourVector& q, double m) {
  const double q2 = minkowski_dot(q, q);
  if (std::abs(q2) < kPoleTolerance * m * m) {
    std::ostringstream os;
    os.precision(6);
    os << "exchanged photon on the light cone, q^2 = " << q2;
    throw PoleError(os.str());
  }
  return q2;
}

double coulomb_denominator(const Vector3& q, double m) {
  const double q2 = q.squaredNorm();
  if (q2 < kCoulombTolerance * m * m) throw PoleError("zero momentum transfer to the nucleus (Coulomb pole)");
  return q2;
}

// ψ̄_a γ^μ ψ_b for μ = 0..3.
std::array<complex, 4> current(const ComplexRow4& row, const ComplexVector4& col) {
  std::array<complex, 4> j;
  for (int mu = 0; mu < 4; ++mu) j[static_cast<std::size_t>(mu)] = (row * gamma(mu) * col)(0, 0);
  return j;
}

complex contract(const std::array<complex, 4>& a, const std::array<complex, 4>& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

// One t-channel-like exchange term [ψ̄_a γ_μ ψ_b][ψ̄_c γ^μ ψ_d]/q².
complex exchange_term(const ComplexRow4& ra, const ComplexVector4& cb, const ComplexRow4& rc, const ComplexVector4& cd,
                      const FourVector& q, double m) {
  return contract(current(ra, cb), current(rc, cd)) / photon_denominator(q, m);
}

complex sandwich(const ComplexRow4& row, const ComplexMatrix4& x, const ComplexVector4& col) { return (row * x * col)(0, 0); }

const Slot& slot(const SlotMap& s, std::string_view label) {
  auto it = s.find(label);
  if (it == s.end()) throw DomainError("missing slot " + std::string(label));
  return it->second;
}

DiracSpinor fermion_wave(const ExternalLeg& leg, double m) {
  return electron_spinor(leg.momentum, leg.spin,
                         leg.species == Species::positron ? EnergySign::backward : EnergySign::forward, m);
}

ComplexFourVector photon_wave(const ExternalLeg& leg) {
  const ComplexFourVector eps = polarization_vector(leg.helicity, direction_of(leg.momentum));
  return leg.direction == Direction::incoming ? eps : eps.conj();
}

// Slot filled from a (target) leg: momentum × sign, wavefunction from the leg.
Slot fill(const ExternalLeg& leg, int sign, bool column, double m) {
  Slot s;
  s.momentum = leg.momentum * static_cast<double>(sign);
  if (leg.species == Species::photon) {
    s.polarization = photon_wave(leg);
  } else {
    const DiracSpinor w = fermion_wave(leg, m);
    if (column) {
      s.column = w.c;
    } else {
      s.row = w.bar();
    }
  }
  return s;
}

// Fermion slots of a base process: incoming lines are columns, outgoing rows.
bool is_column_slot(const LegSchema& l) { return l.direction == Direction::incoming; }

const LegSchema* find_schema(ProcessId id, std::string_view label) {
  for (const auto& l : process_schema(id)) {
    if (l.label == label) return &l;
  }
  return nullptr;
}

ConservationRecord conservation(const KinematicConfig& cfg) {
  ConservationRecord r;
  r.four_momentum = !has_nucleus(cfg.process);
  for (const auto& l : cfg.legs) {
    if (l.direction == Direction::incoming) {
      r.residual += l.momentum;
    } else {
      r.residual += -l.momentum;
    }
  }
  return r;
}

ReducedAmplitude finish(const KinematicConfig& cfg, complex value) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) throw NumericError("non-finite amplitude");
  return {value, printed_prefactor(cfg.process), conservation(cfg)};
}

void require_process(const KinematicConfig& cfg, ProcessId id) {
  if (cfg.process != id) {
    throw DomainError("configuration is for " + std::string(process_name(cfg.process)) + ", expected " +
                      std::string(process_name(id)));
  }
  cfg.validate();
}

} // namespace

std::string_view process_name(ProcessId id) {
  switch (id) {
  case ProcessId::compton: return "compton";
  case ProcessId::bremsstrahlung: return "bremsstrahlung";
  case ProcessId::pair_annihilation: return "pair_annihilation";
  case ProcessId::pair_production: return "pair_production";
  case ProcessId::electron_electron: return "electron_electron";
  case ProcessId::electron_positron: return "electron_positron";
  }
  return "unknown";
}

std::span<const LegSchema> process_schema(ProcessId id) {
  switch (id) {
  case ProcessId::compton: return kCompton;
  case ProcessId::bremsstrahlung: return kBrems;
  case ProcessId::pair_annihilation: return kAnnihilation;
  case ProcessId::pair_production: return kPairProduction;
  case ProcessId::electron_electron: return kMoller;
  case ProcessId::electron_positron: return kBhabha;
  }
  throw DomainError("unknown process id");
}

const ExternalLeg& KinematicConfig::leg(std::string_view label) const {
  for (const auto& l : legs) {
    if (l.label == label) return l;
  }
  throw DomainError("no leg labelled " + std::string(label) + " in " + std::string(process_name(process)));
}

ExternalLeg& KinematicConfig::leg(std::string_view label) {
  return const_cast<ExternalLeg&>(static_cast<const KinematicConfig&>(*this).leg(label));
}

void KinematicConfig::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("mass must be positive");
  if (has_nucleus(process) && !(nucleus_charge > 0.0)) throw DomainError("nucleus charge Z must be positive");
  const auto schema = process_schema(process);
  if (legs.size() != schema.size()) throw DomainError("wrong number of legs for " + std::string(process_name(process)));
  double scale = mass;
  for (const auto& s : schema) {
    const ExternalLeg& l = leg(s.label);
    if (l.species != s.species || l.direction != s.direction) throw DomainError("leg " + l.label + " has the wrong kind");
    if (!l.momentum.is_finite()) throw DomainError("leg " + l.label + " has a non-finite momentum");
    if (!(l.momentum.t > 0.0)) throw DomainError("leg " + l.label + " must have positive energy");
    scale = std::max(scale, l.momentum.t);
    const double p2 = minkowski_dot(l.momentum, l.momentum);
    const double tol = kShellTolerance * std::max(mass * mass, l.momentum.t * l.momentum.t);
    if (l.species == Species::photon) {
      if (std::abs(p2) > tol) throw DomainError("photon leg " + l.label + " is not lightlike");
    } else if (std::abs(p2 - mass * mass) > tol) {
      std::ostringstream os;
      os.precision(17);
      os << "leg " << l.label << " off shell, p^2 - m^2 = " << p2 - mass * mass;
      throw DomainError(os.str());
    }
  }
  if (process == ProcessId::pair_production && leg("k_i").momentum.t < 2.0 * mass) {
    throw DomainError("pair production below threshold: omega < 2m");
  }
  const ConservationRecord c = conservation(*this);
  const double tol = kShellTolerance * scale;
  const bool bad = c.four_momentum ? std::max({std::abs(c.residual.t), std::abs(c.residual.x), std::abs(c.residual.y),
                                               std::abs(c.residual.z)}) > tol
                                   : std::abs(c.residual.t) > tol;
  if (bad) {
    std::ostringstream os;
    os.precision(6);
    os << (c.four_momentum ? "four-momentum" : "energy") << " not conserved, residual (" << c.residual.t << ", "
       << c.residual.x << ", " << c.residual.y << ", " << c.residual.z << ")";
    throw DomainError(os.str());
  }
}

KinematicConfig make_config(ProcessId id, std::span<const FourVector> momenta, double mass, double Z) {
  const auto schema = process_schema(id);
  if (momenta.size() != schema.size()) throw DomainError("make_config: wrong number of momenta");
  KinematicConfig cfg;
  cfg.process = id;
  cfg.mass = mass;
  cfg.nucleus_charge = Z;
  for (std::size_t i = 0; i < schema.size(); ++i) {
    ExternalLeg l;
    l.label = std::string(schema[i].label);
    l.species = schema[i].species;
    l.direction = schema[i].direction;
    l.momentum = momenta[i];
    cfg.legs.push_back(std::move(l));
  }
  return cfg;
}

NormalizationLedger printed_prefactor(ProcessId id) {
  NormalizationLedger l;
  auto energies = [&l](std::initializer_list<const char*> labels) {
    for (const char* s : labels) l.times(std::string("E[") + s + "]", {-1, 2});
  };
  auto omegas = [&l](std::initializer_list<const char*> labels) {
    for (const char* s : labels) l.times(std::string("omega[") + s + "]", {-1, 2});
  };
  switch (id) {
  case ProcessId::compton:
  case ProcessId::pair_annihilation:
    l.times("e", 2).times("V", -1).times("T", -3).times("m", 1).times("2", -1).times("2pi", 4);
    if (id == ProcessId::compton) {
      energies({"p_f", "p_i"});
    } else {
      energies({"p_plus", "p_minus"});
    }
    omegas({"k_f", "k_i"});
    break;
  case ProcessId::bremsstrahlung:
  case ProcessId::pair_production:
    l.rotate_phase(2).times("Z", 1).times("e", 3).times("V", -1).times("T", {-3, 2}).times("2pi", 1).times("m", 1);
    l.times("2", {-1, 2});
    if (id == ProcessId::bremsstrahlung) {
      energies({"p_f", "p_i"});
      omegas({"k_f"});
    } else {
      energies({"p_plus", "p_minus"});
      omegas({"k_i"});
    }
    break;
  case ProcessId::electron_electron:
  case ProcessId::electron_positron:
    if (id == ProcessId::electron_electron) l.rotate_phase(2);
    l.times("e", 2).times("m", 2).times("V", {-3, 2}).times("T", {-3, 2}).times("2pi", 4);
    if (id == ProcessId::electron_electron) {
      energies({"p_i1", "p_i2", "p_f1", "p_f2"});
    } else {
      energies({"p_i_minus", "p_i_plus", "p_f_minus", "p_f_plus"});
    }
    break;
  }
  return l;
}

NormalizationLedger composed_prefactor(ProcessId id) {
  if (id != ProcessId::compton && id != ProcessId::pair_annihilation) {
    throw DomainError("composed_prefactor: no literal factor composition for " + std::string(process_name(id)));
  }
  namespace lf = ledger_factors;
  const bool c = id == ProcessId::compton;
  NormalizationLedger l = lf::coupling() * lf::coupling();
  l = l * lf::transverse_vertex("k_i") * lf::transverse_vertex("k_f");
  l = l * lf::vacuum_propagator() * lf::fermion_propagator();
  l = l * lf::electron_wave() * lf::electron_wave() * lf::photon_wave() * lf::photon_wave();
  l = l * lf::spinor_conversion(c ? "p_i" : "p_minus") * lf::spinor_conversion(c ? "p_f" : "p_plus");
  l.times("2pi", 4);
  return l;
}

// ---- base cores ------------------------------------------------------------

complex compton_core(const SlotMap& s, double m) {
  const Slot& pi = slot(s, "p_i");
  const Slot& ki = slot(s, "k_i");
  const Slot& pf = slot(s, "p_f");
  const Slot& kf = slot(s, "k_f");
  const ComplexMatrix4 ei = slash(ki.polarization);
  const ComplexMatrix4 ef = slash(kf.polarization);
  const ComplexMatrix4 x = ef * propagator(pi.momentum + ki.momentum, m) * ei +
                           ei * propagator(pi.momentum - kf.momentum, m) * ef;
  return sandwich(pf.row, x, pi.column);
}

complex bremsstrahlung_core(const SlotMap& s, double m) {
  const Slot& pi = slot(s, "p_i");
  const Slot& pf = slot(s, "p_f");
  const Slot& kf = slot(s, "k_f");
  const ComplexMatrix4 ef = slash(kf.polarization);
  const ComplexMatrix4& g0 = gamma(0);
  const ComplexMatrix4 x = ef * propagator(pf.momentum + kf.momentum, m) * g0 +
                           g0 * propagator(pi.momentum - kf.momentum, m) * ef;
  const Vector3 q = spatial(kf.momentum) + spatial(pf.momentum) - spatial(pi.momentum);
  return sandwich(pf.row, x, pi.column) / coulomb_denominator(q, m);
}

complex electron_electron_core(const SlotMap& s, double m) {
  const Slot& i1 = slot(s, "p_i1");
  const Slot& i2 = slot(s, "p_i2");
  const Slot& f1 = slot(s, "p_f1");
  const Slot& f2 = slot(s, "p_f2");
  const complex direct = exchange_term(f2.row, i2.column, f1.row, i1.column, i1.momentum - f1.momentum, m);
  const complex exchange = exchange_term(f1.row, i2.column, f2.row, i1.column, i1.momentum - f2.momentum, m);
  return direct - exchange;
}

SlotMap direct_slots(const KinematicConfig& cfg) {
  if (cfg.process != ProcessId::compton && cfg.process != ProcessId::bremsstrahlung &&
      cfg.process != ProcessId::electron_electron) {
    throw DomainError("direct_slots: " + std::string(process_name(cfg.process)) + " is not a base process");
  }
  SlotMap out;
  for (const auto& sc : process_schema(cfg.process)) {
    out.emplace(std::string(sc.label), fill(cfg.leg(sc.label), 1, is_column_slot(sc), cfg.mass));
  }
  return out;
}

// ---- direct evaluations ----------------------------------------------------

ReducedAmplitude compton_amplitude(const KinematicConfig& cfg) {
  require_process(cfg, ProcessId::compton);
  return finish(cfg, compton_core(direct_slots(cfg), cfg.mass));
}

ReducedAmplitude bremsstrahlung_amplitude(const KinematicConfig& cfg) {
  require_process(cfg, ProcessId::bremsstrahlung);
  return finish(cfg, bremsstrahlung_core(direct_slots(cfg), cfg.mass));
}

ReducedAmplitude electron_electron_amplitude(const KinematicConfig& cfg) {
  require_process(cfg, ProcessId::electron_electron);
  return finish(cfg, electron_electron_core(direct_slots(cfg), cfg.mass));
}

ReducedAmplitude pair_annihilation_amplitude(const KinematicConfig& cfg) {
  require_process(cfg, ProcessId::pair_annihilation);
  const double m = cfg.mass;
  const ExternalLeg& em = cfg.leg("p_minus");
  const ExternalLeg& ep = cfg.leg("p_plus");
  const ExternalLeg& ki = cfg.leg("k_i");
  const ExternalLeg& kf = cfg.leg("k_f");
  const ComplexVector4 u = electron_spinor(em.momentum, em.spin, EnergySign::forward, m).c;
  const ComplexRow4 vbar = electron_spinor(ep.momentum, ep.spin, EnergySign::backward, m).bar();
  const ComplexMatrix4 ei = slash(polarization_vector(ki.helicity, direction_of(ki.momentum)).conj());
  const ComplexMatrix4 ef = slash(polarization_vector(kf.helicity, direction_of(kf.momentum)).conj());
  const ComplexMatrix4 x = ef * propagator(em.momentum - ki.momentum, m) * ei +
                           ei * propagator(em.momentum - kf.momentum, m) * ef;
  return finish(cfg, sandwich(vbar, x, u));
}

ReducedAmplitude pair_production_amplitude(const KinematicConfig& cfg) {
  require_process(cfg, ProcessId::pair_production);
  const double m = cfg.mass;
  const ExternalLeg& k = cfg.leg("k_i");
  const ExternalLeg& ep = cfg.leg("p_plus");
  const ExternalLeg& em = cfg.leg("p_minus");
  const ComplexVector4 u = electron_spinor(em.momentum, em.spin, EnergySign::forward, m).c;
  const ComplexRow4 vbar = electron_spinor(ep.momentum, ep.spin, EnergySign::backward, m).bar();
  const ComplexMatrix4 ei = slash(polarization_vector(k.helicity, direction_of(k.momentum)));
  const ComplexMatrix4& g0 = gamma(0);
  const ComplexMatrix4 x = ei * propagator(ep.momentum - k.momentum, m) * g0 +
                           g0 * propagator(-em.momentum + k.momentum, m) * ei;
  const Vector3 q = -spatial(k.momentum) + spatial(ep.momentum) + spatial(em.momentum);
  return finish(cfg, sandwich(vbar, x, u) / coulomb_denominator(q, m));
}

ReducedAmplitude electron_positron_amplitude(const KinematicConfig& cfg) {
  require_process(cfg, ProcessId::electron_positron);
  const double m = cfg.mass;
  const ExternalLeg& im = cfg.leg("p_i_minus");
  const ExternalLeg& ip = cfg.leg("p_i_plus");
  const ExternalLeg& fm = cfg.leg("p_f_minus");
  const ExternalLeg& fp = cfg.leg("p_f_plus");
  const ComplexVector4 u_i = electron_spinor(im.momentum, im.spin, EnergySign::forward, m).c;
  const ComplexRow4 ubar_f = electron_spinor(fm.momentum, fm.spin, EnergySign::forward, m).bar();
  const ComplexRow4 vbar_i = electron_spinor(ip.momentum, ip.spin, EnergySign::backward, m).bar();
  const ComplexVector4 v_f = electron_spinor(fp.momentum, fp.spin, EnergySign::backward, m).c;
  const complex scattering = exchange_term(vbar_i, v_f, ubar_f, u_i, im.momentum - fm.momentum, m);
  const complex annihilation = exchange_term(ubar_f, v_f, vbar_i, u_i, im.momentum + ip.momentum, m);
  return finish(cfg, scattering - annihilation);
}

ReducedAmplitude amplitude(const KinematicConfig& cfg) {
  switch (cfg.process) {
  case ProcessId::compton: return compton_amplitude(cfg);
  case ProcessId::bremsstrahlung: return bremsstrahlung_amplitude(cfg);
  case ProcessId::pair_annihilation: return pair_annihilation_amplitude(cfg);
  case ProcessId::pair_production: return pair_production_amplitude(cfg);
  case ProcessId::electron_electron: return electron_electron_amplitude(cfg);
  case ProcessId::electron_positron: return electron_positron_amplitude(cfg);
  }
  throw DomainError("unknown process id");
}

// ---- crossing --------------------------------------------------------------

void SubstitutionTable::validate() const {
  if (base != ProcessId::compton && base != ProcessId::bremsstrahlung && base != ProcessId::electron_electron) {
    throw DomainError("substitution table: base process must be compton, bremsstrahlung or electron_electron");
  }
  const auto bs = process_schema(base);
  const auto ts = process_schema(target);
  if (bs.size() != ts.size() || entries.size() != bs.size()) {
    throw DomainError("substitution table: must map every base leg exactly once");
  }
  std::set<std::string, std::less<>> seen_base, seen_target;
  for (const auto& e : entries) {
    const LegSchema* b = find_schema(base, e.base_label);
    const LegSchema* t = find_schema(target, e.target_label);
    if (!b) throw DomainError("substitution table: unknown base label " + e.base_label);
    if (!t) throw DomainError("substitution table: unknown target label " + e.target_label);
    if (e.sign != 1 && e.sign != -1) throw DomainError("substitution table: sign must be +1 or -1");
    if (!seen_base.insert(e.base_label).second) throw DomainError("substitution table: duplicate " + e.base_label);
    if (!seen_target.insert(e.target_label).second) throw DomainError("substitution table: duplicate " + e.target_label);
    const bool b_photon = b->species == Species::photon;
    const bool t_photon = t->species == Species::photon;
    if (b_photon != t_photon) throw DomainError("substitution table: " + e.base_label + " and " + e.target_label + " differ in kind");
  }
}

SubstitutionTable identity_table(ProcessId base) {
  SubstitutionTable t{base, base, {}};
  for (const auto& l : process_schema(base)) t.entries.push_back({std::string(l.label), std::string(l.label), 1});
  return t;
}

SubstitutionTable compton_to_pair_annihilation() {
  return {ProcessId::compton,
          ProcessId::pair_annihilation,
          {{"k_f", "k_f", 1}, {"k_i", "k_i", -1}, {"p_f", "p_plus", -1}, {"p_i", "p_minus", 1}}};
}

SubstitutionTable bremsstrahlung_to_pair_production() {
  return {ProcessId::bremsstrahlung,
          ProcessId::pair_production,
          {{"k_f", "k_i", -1}, {"p_f", "p_plus", 1}, {"p_i", "p_minus", -1}}};
}

SubstitutionTable electron_electron_to_electron_positron() {
  return {ProcessId::electron_electron,
          ProcessId::electron_positron,
          {{"p_i1", "p_i_minus", 1}, {"p_f1", "p_f_minus", 1}, {"p_i2", "p_f_plus", -1}, {"p_f2", "p_i_plus", -1}}};
}

ReducedAmplitude apply_crossing(ProcessId base, const SubstitutionTable& table, const KinematicConfig& target) {
  if (table.base != base) throw DomainError("apply_crossing: table is for a different base process");
  table.validate();
  if (target.process != table.target) throw DomainError("apply_crossing: configuration does not match the table target");
  target.validate();
  SlotMap slots;
  for (const auto& e : table.entries) {
    const LegSchema* b = find_schema(base, e.base_label);
    slots.emplace(e.base_label, fill(target.leg(e.target_label), e.sign, is_column_slot(*b), target.mass));
  }
  complex value;
  switch (base) {
  case ProcessId::compton: value = compton_core(slots, target.mass); break;
  case ProcessId::bremsstrahlung: value = bremsstrahlung_core(slots, target.mass); break;
  case ProcessId::electron_electron: value = electron_electron_core(slots, target.mass); break;
  default: throw DomainError("apply_crossing: unsupported base process");
  }
  return finish(target, value);
}

// ---- spin sums -------------------------------------------------------------

double spin_summed_squared(const KinematicConfig& cfg, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("spin_summed_squared: alpha must be positive");
  cfg.validate();
  KinematicConfig work = cfg;
  const std::size_t n = work.legs.size();
  double sum = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) {
      const bool flip = (mask >> i) & 1u;
      work.legs[i].spin = flip ? Spin::down : Spin::up;
      work.legs[i].helicity = flip ? Helicity::minus : Helicity::plus;
    }
    sum += std::norm(amplitude(work).value);
  }
  double conversion = 1.0;
  int initial_states = 0;
  for (const auto& l : work.legs) {
    if (l.species != Species::photon) conversion *= 2.0 * l.momentum.t;
    if (l.direction == Direction::incoming) initial_states += 2;
  }
  const double e = std::sqrt(4.0 * std::numbers::pi * alpha);
  const double coupling = std::norm(printed_prefactor(cfg.process).coupling(e, cfg.nucleus_charge));
  return sum * conversion * coupling / initial_states;
}

double differential_cross_section(const KinematicConfig& cfg, double m2_avg) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  switch (cfg.process) {
  case ProcessId::compton: {
    const FourVector& p = cfg.leg("p_i").momentum;
    if (cfg.frame != Frame::lab || p.spatial_norm() != 0.0) {
      throw DomainError("differential_cross_section: Compton needs the lab frame (electron at rest)");
    }
    const double r = cfg.leg("k_f").momentum.t / cfg.leg("k_i").momentum.t;
    return r * r * m2_avg / (64.0 * pi2 * cfg.mass * cfg.mass);
  }
  case ProcessId::pair_annihilation:
  case ProcessId::electron_electron:
  case ProcessId::electron_positron: {
    if (cfg.frame != Frame::center_of_mass) throw DomainError("differential_cross_section: CM frame required");
    const auto schema = process_schema(cfg.process);
    FourVector total;
    double p_in = 0.0;
    double p_out = 0.0;
    for (const auto& s : schema) {
      const ExternalLeg& l = cfg.leg(s.label);
      if (s.direction == Direction::incoming) {
        total += l.momentum;
        p_in = l.momentum.spatial_norm();
      } else {
        p_out = l.momentum.spatial_norm();
      }
    }
    if (!(p_in > 0.0)) throw DomainError("differential_cross_section: incoming momenta vanish");
    return m2_avg * (p_out / p_in) / (64.0 * pi2 * minkowski_dot(total, total));
  }
  default:
    throw DomainError("differential_cross_section: only 2->2 processes");
  }
}

// ---- frame builders --------------------------------------------------------

namespace {

FourVector on_shell(double energy, double mass, double theta, double phi) {
  const double p = std::sqrt(std::max(0.0, energy * energy - mass * mass));
  return {energy, p * std::sin(theta) * std::cos(phi), p * std::sin(theta) * std::sin(phi), p * std::cos(theta)};
}

void require_energy(double e, double mass, const char* what) {
  if (!(e >= mass) || !std::isfinite(e)) throw DomainError(std::string(what) + ": energy below the mass");
}

} // namespace

KinematicConfig compton_lab(double omega_i, double theta, double phi, double mass) {
  if (!(omega_i > 0.0)) throw DomainError("compton_lab: omega must be positive");
  const double omega_f = omega_i / (1.0 + omega_i / mass * (1.0 - std::cos(theta)));
  const FourVector p_i{mass, 0, 0, 0};
  const FourVector k_i{omega_i, 0, 0, omega_i};
  const FourVector k_f = on_shell(omega_f, 0.0, theta, phi);
  const FourVector rest = p_i + k_i - k_f;
  // Recompute the energy from the spatial part so the shell holds to rounding.
  const double pf2 = rest.x * rest.x + rest.y * rest.y + rest.z * rest.z;
  const FourVector p_f{std::sqrt(mass * mass + pf2), rest.x, rest.y, rest.z};
  const std::array<FourVector, 4> m{p_i, k_i, p_f, k_f};
  auto cfg = make_config(ProcessId::compton, m, mass);
  cfg.frame = Frame::lab;
  return cfg;
}

KinematicConfig annihilation_cm(double energy, double theta, double mass) {
  require_energy(energy, mass, "annihilation_cm");
  const FourVector pm = on_shell(energy, mass, 0.0, 0.0);
  const FourVector pp{pm.t, -pm.x, -pm.y, -pm.z};
  const FourVector ki = on_shell(energy, 0.0, theta, 0.0);
  const FourVector kf{ki.t, -ki.x, -ki.y, -ki.z};
  const std::array<FourVector, 4> m{pm, pp, ki, kf};
  auto cfg = make_config(ProcessId::pair_annihilation, m, mass);
  cfg.frame = Frame::center_of_mass;
  return cfg;
}

KinematicConfig moller_cm(double energy, double theta, double mass) {
  require_energy(energy, mass, "moller_cm");
  const FourVector a = on_shell(energy, mass, 0.0, 0.0);
  const FourVector c = on_shell(energy, mass, theta, 0.0);
  const std::array<FourVector, 4> m{a, {a.t, -a.x, -a.y, -a.z}, c, {c.t, -c.x, -c.y, -c.z}};
  auto cfg = make_config(ProcessId::electron_electron, m, mass);
  cfg.frame = Frame::center_of_mass;
  return cfg;
}

KinematicConfig bhabha_cm(double energy, double theta, double mass) {
  require_energy(energy, mass, "bhabha_cm");
  const FourVector a = on_shell(energy, mass, 0.0, 0.0);
  const FourVector c = on_shell(energy, mass, theta, 0.0);
  const std::array<FourVector, 4> m{a, {a.t, -a.x, -a.y, -a.z}, c, {c.t, -c.x, -c.y, -c.z}};
  auto cfg = make_config(ProcessId::electron_positron, m, mass);
  cfg.frame = Frame::center_of_mass;
  return cfg;
}

KinematicConfig bremsstrahlung_kinematics(double energy_i, double omega, double theta_k, double theta_e, double phi_e,
                                          double Z, double mass) {
  require_energy(energy_i, mass, "bremsstrahlung");
  if (!(omega > 0.0)) throw DomainError("bremsstrahlung: photon energy must be positive");
  require_energy(energy_i - omega, mass, "bremsstrahlung (final electron)");
  const std::array<FourVector, 3> m{on_shell(energy_i, mass, 0.0, 0.0), on_shell(energy_i - omega, mass, theta_e, phi_e),
                                    on_shell(omega, 0.0, theta_k, 0.0)};
  auto cfg = make_config(ProcessId::bremsstrahlung, m, mass, Z);
  cfg.frame = Frame::lab;
  return cfg;
}

KinematicConfig pair_production_kinematics(double omega, double energy_plus, double theta_plus, double theta_minus,
                                           double phi_minus, double Z, double mass) {
  if (!(omega >= 2.0 * mass)) throw DomainError("pair production below threshold: omega < 2m");
  require_energy(energy_plus, mass, "pair production (positron)");
  require_energy(omega - energy_plus, mass, "pair production (electron)");
  const std::array<FourVector, 3> m{on_shell(omega, 0.0, 0.0, 0.0), on_shell(energy_plus, mass, theta_plus, 0.0),
                                    on_shell(omega - energy_plus, mass, theta_minus, phi_minus)};
  auto cfg = make_config(ProcessId::pair_production, m, mass, Z);
  cfg.frame = Frame::lab;
  return cfg;
}

} // namespace fqed
