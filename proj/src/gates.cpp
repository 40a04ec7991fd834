// Copyright 2026 The rydqudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rydqudit/gates.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>
#include <utility>

#include "rydqudit/error.hpp"
#include "rydqudit/evolution.hpp"

namespace rydqudit {

using units::kPi;

namespace {

constexpr double kSkip = 1e-14;
const Complex kI(0.0, 1.0);

int wrap(int m, int d) {
  const int r = m % d;
  return r < 0 ? r + d : r;
}

CMatrix embed(const TwoLevelOp& op, int d) {
  CMatrix e = CMatrix::Identity(d, d);
  e(op.k, op.k) = op.u2(0, 0);
  e(op.k, op.k_prime) = op.u2(0, 1);
  e(op.k_prime, op.k) = op.u2(1, 0);
  e(op.k_prime, op.k_prime) = op.u2(1, 1);
  return e;
}

bool near_identity(const Matrix2c& m) {
  return (m - Matrix2c::Identity()).cwiseAbs().maxCoeff() < 1e-12;
}

}  // namespace

Matrix2c logical_rotation(double theta, double psi) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  Matrix2c m;
  m << c, std::polar(s, psi), -std::polar(s, -psi), c;
  return m;
}

Matrix2c pulse_rotation(double theta, double phi) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  Matrix2c m;
  m << c, kI * std::polar(s, phi), kI * std::polar(s, -phi), c;
  return m;
}

bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  const CMatrix g = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
  return g.cwiseAbs().maxCoeff() <= tol;
}

GivensDecomposition givens_decompose(const CMatrix& u) {
  if (u.rows() != u.cols()) throw InvalidArgument("unitary must be square");
  if (!is_unitary(u, 1e-10)) throw InvalidArgument("matrix is not unitary to 1e-10");
  const int d = static_cast<int>(u.rows());
  CMatrix a = u;
  GivensDecomposition out;
  for (int c = 0; c + 1 < d; ++c) {
    for (int r = c + 1; r < d; ++r) {
      const Complex x = a(c, c), y = a(r, c);
      if (std::abs(y) < kSkip) continue;
      const double theta = 2.0 * std::atan2(std::abs(y), std::abs(x));
      const double psi = std::abs(x) > 0.0 ? std::arg(x) - std::arg(y) : 0.0;
      const Matrix2c g = logical_rotation(theta, psi);
      for (int col = 0; col < d; ++col) {
        const Complex p = a(c, col), q = a(r, col);
        a(c, col) = g(0, 0) * p + g(0, 1) * q;
        a(r, col) = g(1, 0) * p + g(1, 1) * q;
      }
      out.rotations.push_back({c, r, theta, psi});
    }
  }
  out.phases.resize(d);
  for (int i = 0; i < d; ++i) out.phases[i] = std::arg(a(i, i));
  return out;
}

std::vector<TwoLevelOp> decompose_unitary(const CMatrix& u) {
  const GivensDecomposition g = givens_decompose(u);
  const int d = static_cast<int>(u.rows());
  std::vector<TwoLevelOp> ops;
  for (int i = 0; i < d; i += 2) {
    TwoLevelOp op;
    if (i + 1 < d) {
      op.k = i;
      op.k_prime = i + 1;
      op.u2 << std::polar(1.0, g.phases[i]), 0.0, 0.0, std::polar(1.0, g.phases[i + 1]);
    } else {
      op.k = i;
      op.k_prime = 0;
      op.u2 << std::polar(1.0, g.phases[i]), 0.0, 0.0, 1.0;
    }
    if (!near_identity(op.u2)) ops.push_back(op);
  }
  for (auto it = g.rotations.rbegin(); it != g.rotations.rend(); ++it) {
    // L(theta, psi)^dagger = L(-theta, psi)
    ops.push_back({it->col, it->row, logical_rotation(-it->theta, it->psi)});
  }
  return ops;
}

CMatrix reconstruct(const std::vector<TwoLevelOp>& ops, int d) {
  CMatrix v = CMatrix::Identity(d, d);
  for (const auto& op : ops) {
    if (op.k < 0 || op.k >= d || op.k_prime < 0 || op.k_prime >= d || op.k == op.k_prime) {
      throw InvalidArgument("two-level op indices out of range");
    }
    v = embed(op, d) * v;
  }
  return v;
}

// ---- primitives --------------------------------------------------------------

double ManifoldPulse::duration() const {
  PulseSpec p;
  p.tau_p = tau_p;
  return 2.0 * p.half_support();
}

double duration_of(const Primitive& op) {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ManifoldPulse>) {
          return p.duration();
        } else {
          return p.duration;
        }
      },
      op);
}

std::string_view primitive_name(const Primitive& op) {
  switch (op.index()) {
    case 0: return "wait";
    case 1: return "manifold_pulse";
    default: return "storage_pulse";
  }
}

Matrix2c storage_pulse_matrix(const StoragePulse& p) {
  // Frame rotating at half the detuning: H = [[dt/2, th e^{i phi}/2], [.., -dt/2]].
  const double x = p.detuning * p.duration;
  const double a = 0.5 * std::hypot(p.theta, x);
  Matrix2c h;
  h << 0.5 * x, 0.5 * std::polar(p.theta, p.phi), 0.5 * std::polar(p.theta, -p.phi), -0.5 * x;
  Matrix2c u = std::cos(a) * Matrix2c::Identity();
  if (a > 0.0) u += kI * (std::sin(a) / a) * h;
  Matrix2c back = Matrix2c::Zero();
  back(0, 0) = std::polar(1.0, -0.5 * x);
  back(1, 1) = std::polar(1.0, 0.5 * x);
  return back * u;
}

double GateSchedule::total_duration() const {
  double t = 0.0;
  for (const auto& op : ops) t += duration_of(op);
  return t;
}

double GateSchedule::total_kepler_periods() const {
  return total_duration() / time_scales(manifold()).t_kepler;
}

std::size_t GateSchedule::pulse_count() const {
  return static_cast<std::size_t>(std::count_if(
      ops.begin(), ops.end(), [](const Primitive& p) { return !std::holds_alternative<Wait>(p); }));
}

std::vector<std::string> schedule_violations(const GateSchedule& schedule) {
  std::vector<std::string> out;
  const ManifoldSpec spec = schedule.manifold();
  const double slot = time_scales(spec).t_kepler / spec.d();
  double t = 0.0;
  for (std::size_t i = 0; i < schedule.ops.size(); ++i) {
    const auto& op = schedule.ops[i];
    if (const auto* p = std::get_if<ManifoldPulse>(&op)) {
      const double centre = t + p->duration() / 2.0;
      const double n = centre / slot;
      const double expected = wrap(-p->k, spec.d());
      double off = std::fmod(n - expected, double(spec.d()));
      if (off < 0) off += spec.d();
      off = std::min(off, spec.d() - off);
      if (off > 1e-6) {
        std::ostringstream os;
        os << "op " << i << ": pulse for k=" << p->k << " centred " << off
           << " slots away from its core time";
        out.push_back(os.str());
      }
    }
    const double dt = duration_of(op);
    if (!(dt >= 0.0)) out.push_back("op " + std::to_string(i) + ": negative duration");
    t += dt;
  }
  return out;
}

std::string_view to_string(CompileStrategy s) {
  return s == CompileStrategy::chain ? "chain" : "fragments";
}

CompileStrategy compile_strategy_from_string(std::string_view name) {
  if (name == "chain") return CompileStrategy::chain;
  if (name == "fragments") return CompileStrategy::fragments;
  throw InvalidArgument("unknown compile strategy '" + std::string(name) + "'");
}

double effective_tau_p(const ManifoldSpec& spec, const GateDefaults& defaults) {
  return defaults.tau_p > 0.0 ? defaults.tau_p : time_scales(spec).t_kepler / (8.0 * spec.d());
}

// ---- compilation ---------------------------------------------------------------

namespace {

// Appends primitives while tracking the clock. Pulse centres land on core
// times; the preceding wait absorbs the half support.
class Builder {
 public:
  Builder(const ManifoldSpec& spec, const GateDefaults& defaults)
      : spec_(spec), defaults_(defaults), tau_(effective_tau_p(spec, defaults)) {
    PulseSpec probe;
    probe.tau_p = tau_;
    half_ = probe.half_support();
    const PulseReport report = validate_pulse(spec, probe);
    if (!report.duration_ok) {
      throw InvalidArgument("gate pulse rejected: " +
                            (report.warnings.empty() ? std::string("invalid tau_p")
                                                     : report.warnings.front()));
    }
    const TimeScales ts = time_scales(spec);
    tk_ = ts.t_kepler;
    trev_ = ts.t_revival;
    sched_.nbar = spec.nbar();
    sched_.d = spec.d();
  }

  // Earliest centre for index `slot` that leaves room for the half support.
  double next_centre(int slot) const {
    const int label = spec_.label_at(slot);
    const double base = wrap(-label, spec_.d()) * tk_ / spec_.d();
    const double n = std::ceil((t_ + half_ - base) / tk_ - 1e-9);
    return base + std::max(0.0, n) * tk_;
  }

  double pulse(int slot, StorageLevel storage, double area, double phase) {
    const double centre = next_centre(slot);
    const double wait = centre - half_ - t_;
    if (wait > 0.0) sched_.ops.push_back(Wait{wait});
    ManifoldPulse p;
    p.k = spec_.label_at(slot);
    p.storage = storage;
    p.area = area;
    p.phase = std::remainder(phase, 2.0 * kPi);
    p.tau_p = tau_;
    p.detuning = defaults_.detuning;
    sched_.ops.push_back(p);
    t_ = centre + half_;
    return centre;
  }

  void storage_pulse(double theta, double phi) {
    StoragePulse p{theta, std::remainder(phi, 2.0 * kPi), 0.0, defaults_.storage_pulse_duration};
    sched_.ops.push_back(p);
    t_ += p.duration;
  }

  GateSchedule finish(double global_phase) {
    if (sched_.ops.empty()) {
      sched_.global_phase = global_phase;
      return sched_;
    }
    double end = std::ceil(t_ / tk_ - 1e-9) * tk_;
    if (defaults_.align_to_revival) {
      end = std::max(end, std::ceil(t_ / trev_ - 1e-9) * trev_);
      end = std::ceil(end / tk_ - 1e-9) * tk_;
    }
    if (end - t_ > 0.0) sched_.ops.push_back(Wait{end - t_});
    t_ = end;
    sched_.global_phase = std::remainder(global_phase, 2.0 * kPi);
    return sched_;
  }

  bool empty() const { return sched_.ops.empty(); }

 private:
  const ManifoldSpec& spec_;
  GateDefaults defaults_;
  double tau_;
  double half_ = 0.0;
  double tk_ = 0.0;
  double trev_ = 0.0;
  double t_ = 0.0;
  GateSchedule sched_;
};

// One store / g-e pulse / restore fragment for u2 on indices (a, b).
void emit_fragment(Builder& b, const ManifoldSpec& spec, const TwoLevelOp& op) {
  if (op.k < 0 || op.k >= spec.d() || op.k_prime < 0 || op.k_prime >= spec.d() ||
      op.k == op.k_prime) {
    throw InvalidArgument("two-level op needs distinct indices inside the manifold");
  }
  if (!is_unitary(op.u2, 1e-10)) throw InvalidArgument("u2 is not unitary");
  if (near_identity(op.u2)) return;

  const bool a_first = b.next_centre(op.k) <= b.next_centre(op.k_prime);
  const int first = a_first ? op.k : op.k_prime;
  const int second = a_first ? op.k_prime : op.k;
  Matrix2c w = op.u2;
  if (!a_first) {
    w << op.u2(1, 1), op.u2(1, 0), op.u2(0, 1), op.u2(0, 0);
  }
  // Both stores multiply by i, which commutes with w.
  b.pulse(first, StorageLevel::g, kPi, 0.0);
  b.pulse(second, StorageLevel::e, kPi, 0.0);

  // w = diag(e^{ia}, e^{ib}) R(theta, phi)
  const Complex x = w(0, 0), y = w(0, 1);
  const double theta = 2.0 * std::atan2(std::abs(y), std::abs(x));
  double a = 0.0, phi = 0.0;
  if (std::abs(x) > kSkip) {
    a = std::arg(x);
    phi = std::abs(y) > kSkip ? std::arg(y) - kPi / 2.0 - a : 0.0;
  } else {
    a = std::arg(y) - kPi / 2.0;
  }
  const double bph = std::abs(w(1, 1)) > kSkip ? std::arg(w(1, 1))
                                               : std::arg(w(1, 0)) - kPi / 2.0 + phi;
  if (std::abs(theta) > kSkip) b.storage_pulse(theta, phi);
  // Restore: core = i e^{-i phi_r} storage must equal e^{ia} storage / i.
  b.pulse(first, StorageLevel::g, kPi, kPi - a);
  b.pulse(second, StorageLevel::e, kPi, kPi - bph);
}

}  // namespace

GateSchedule compile_two_level(const TwoLevelOp& op, const ManifoldSpec& spec,
                               const GateDefaults& defaults) {
  Builder b(spec, defaults);
  emit_fragment(b, spec, op);
  return b.finish(0.0);
}

std::optional<int> shift_power(const CMatrix& u, double tol) {
  const int d = static_cast<int>(u.rows());
  if (u.cols() != d || d == 0) return std::nullopt;
  for (int n = 0; n < d; ++n) {
    const Complex ph = u(0, wrap(-n, d));
    if (std::abs(std::abs(ph) - 1.0) > tol) continue;
    if ((u - ph * shift_matrix(d, n)).cwiseAbs().maxCoeff() <= tol) return n;
  }
  return std::nullopt;
}

GateSchedule compile_unitary(const CMatrix& u, const ManifoldSpec& spec,
                             const GateDefaults& defaults) {
  if (u.rows() != spec.d() || u.cols() != spec.d()) {
    throw InvalidArgument("unitary dimension does not match the manifold");
  }
  if (!is_unitary(u, 1e-10)) throw InvalidArgument("matrix is not unitary to 1e-10");
  if (const auto n = shift_power(u)) {
    GateSchedule s;
    s.nbar = spec.nbar();
    s.d = spec.d();
    // The phase of u(0, -n) is the global phase of the target relative to SHIFT^n.
    s.global_phase = -std::arg(u(0, wrap(-*n, spec.d())));
    if (*n != 0) s.ops.push_back(Wait{*n * time_scales(spec).t_kepler / spec.d()});
    return s;
  }

  Builder b(spec, defaults);
  const int d = spec.d();
  if (defaults.strategy == CompileStrategy::fragments) {
    for (const auto& op : decompose_unitary(u)) emit_fragment(b, spec, op);
    return b.finish(0.0);
  }

  const GivensDecomposition g = givens_decompose(u);
  std::map<int, std::vector<GivensRotation>> groups;
  for (const auto& r : g.rotations) groups[r.col].push_back(r);
  const double ref = g.phases[d - 1];
  for (int c = d - 2; c >= 0; --c) {
    const auto it = groups.find(c);
    const double dc = g.phases[c] - ref;
    const bool has_rotations = it != groups.end() && !it->second.empty();
    if (!has_rotations && std::abs(std::polar(1.0, dc) - 1.0) < 1e-13) continue;
    // The store leaves i x_c = zeta (e^{i dc} x_c) in g.
    const Complex zeta = kI * std::polar(1.0, -dc);
    const double arg_zeta = std::arg(zeta);
    b.pulse(c, StorageLevel::g, kPi, 0.0);
    if (has_rotations) {
      const auto& rots = it->second;
      for (auto r = rots.rbegin(); r != rots.rend(); ++r) {
        b.pulse(r->row, StorageLevel::g, -r->theta, r->psi + arg_zeta - kPi / 2.0);
      }
    }
    b.pulse(c, StorageLevel::g, kPi, kPi / 2.0 + arg_zeta);
  }
  return b.finish(-ref);
}

// ---- simulation ----------------------------------------------------------------

std::string_view to_string(PulseModel m) { return m == PulseModel::full ? "full" : "ideal"; }

PulseModel pulse_model_from_string(std::string_view name) {
  if (name == "full") return PulseModel::full;
  if (name == "ideal") return PulseModel::ideal;
  throw InvalidArgument("unknown pulse model '" + std::string(name) + "'");
}

namespace {

void apply_ideal_pulse(SimulationState& s, const ManifoldPulse& p, double centre,
                       SpectrumMode mode) {
  AmplitudeVector bt = packet_amplitudes_at(s.spec, s.energy(), centre, mode);
  const int core = s.spec.slot_of_wrapped(0);
  Complex& storage = p.storage == StorageLevel::g ? s.b_g : s.b_e;
  const Matrix2c r = pulse_rotation(p.area, p.phase);
  const Complex x = storage, y = bt.values()[core];
  storage = r(0, 0) * x + r(0, 1) * y;
  bt.values()[core] = r(1, 0) * x + r(1, 1) * y;
  s.b_energy = energy_amplitudes_from_packets(s.spec, bt, centre, mode).values();
}

}  // namespace

SimulationState simulate_schedule(const GateSchedule& schedule, const SimulationState& initial,
                                  const SimulationOptions& options) {
  const ManifoldSpec& spec = initial.spec;
  if (schedule.nbar != spec.nbar() || schedule.d != spec.d()) {
    throw InvalidArgument("schedule was compiled for a different manifold");
  }
  SimulationState s = initial;
  std::map<std::pair<double, double>, double> calibration;
  for (std::size_t i = 0; i < schedule.ops.size(); ++i) {
    const Primitive& op = schedule.ops[i];
    try {
      if (const auto* w = std::get_if<Wait>(&op)) {
        s.t = propagate_free(FreeState{s.energy(), s.t}, w->duration).t;
      } else if (const auto* sp = std::get_if<StoragePulse>(&op)) {
        if (!(sp->duration >= 0.0)) throw InvalidArgument("negative storage pulse duration");
        const Matrix2c m = storage_pulse_matrix(*sp);
        const Complex g = s.b_g, e = s.b_e;
        s.b_g = m(0, 0) * g + m(0, 1) * e;
        s.b_e = m(1, 0) * g + m(1, 1) * e;
        s.t += sp->duration;
      } else {
        const auto& mp = std::get<ManifoldPulse>(op);
        const double dur = mp.duration();
        const double centre = s.t + dur / 2.0;
        if (options.model == PulseModel::ideal) {
          apply_ideal_pulse(s, mp, centre, options.mode);
          s.t += dur;
        } else if (mp.area == 0.0) {
          s.t += dur;
        } else {
          const auto key = std::make_pair(mp.tau_p, std::abs(mp.area));
          auto it = calibration.find(key);
          if (it == calibration.end()) {
            it = calibration
                     .emplace(key, calibrate_peak_rabi(spec, mp.tau_p, mp.area,
                                                       options.rabi_exponent))
                     .first;
          }
          PulseSpec ps;
          ps.carrier_detuning = mp.detuning;
          ps.tau_p = mp.tau_p;
          ps.peak_rabi = it->second;
          ps.phase = mp.area < 0.0 ? mp.phase + kPi : mp.phase;
          ps.center_time = centre;
          ps.target = mp.storage;
          PulseOptions po;
          po.mode = options.mode;
          po.rabi_exponent = options.rabi_exponent;
          po.ode = options.ode;
          // Guard against the start drifting a few ulps past the clock.
          s.t = std::min(s.t, ps.start());
          s = integrate_pulse(s, ps, po).state;
        }
      }
    } catch (const IntegrationError& e) {
      throw IntegrationError("schedule op " + std::to_string(i) + " (" +
                             std::string(primitive_name(op)) + "): " + e.what());
    }
  }
  return s;
}

CMatrix packet_map(const GateSchedule& schedule, const SimulationOptions& options,
                   unsigned threads) {
  const ManifoldSpec spec = schedule.manifold();
  const int d = spec.d();
  CMatrix map(d, d);
  auto column = [&](int k) {
    const SimulationState start =
        SimulationState::from_packets(spec, packet_delta(spec, spec.label_at(k)), 0.0, options.mode);
    const SimulationState end = simulate_schedule(schedule, start, options);
    map.col(k) = end.packets(options.mode).values();
  };
  const unsigned workers =
      threads == 1 ? 1u : std::min<unsigned>(threads == 0 ? d : threads, static_cast<unsigned>(d));
  if (workers <= 1) {
    for (int k = 0; k < d; ++k) column(k);
    return map;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(d));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int k = next++; k < d; k = next++) {
        try {
          column(k);
        } catch (...) {
          errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return map;
}

std::vector<CVector> fidelity_probes(int d) {
  std::vector<CVector> probes;
  for (int k = 0; k < d; ++k) probes.push_back(CVector::Unit(d, k));
  for (int m = 0; m <= d; ++m) {
    CVector p(d);
    for (int k = 0; k < d; ++k) {
      // m k^2 reduced mod 2d keeps the phase argument small.
      const long long q = (static_cast<long long>(m) * k * k) % (2LL * d);
      p[k] = std::polar(1.0 / std::sqrt(double(d)), kPi * double(q) / d);
    }
    probes.push_back(p);
  }
  return probes;
}

double process_fidelity(const CMatrix& map, const CMatrix& target) {
  if (map.rows() != target.rows() || map.cols() != target.cols() || map.rows() != map.cols()) {
    throw InvalidArgument("map and target dimensions differ");
  }
  const auto probes = fidelity_probes(static_cast<int>(map.rows()));
  double sum = 0.0;
  for (const auto& p : probes) {
    sum += std::norm((target * p).dot(map * p));
  }
  return sum / double(probes.size());
}

double process_fidelity(const GateSchedule& schedule, const CMatrix& target,
                        const SimulationOptions& options, unsigned threads) {
  return process_fidelity(packet_map(schedule, options, threads), target);
}

CMatrix haar_unitary(int d, std::mt19937_64& rng) {
  if (d < 1) throw InvalidArgument("dimension must be positive");
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  CMatrix z(d, d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const Complex rii = r(i, i);
    q.col(i) *= rii / std::abs(rii);
  }
  return q;
}

CMatrix shift_matrix(int d, int n) {
  CMatrix s = CMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) s(k, wrap(k - n, d)) = 1.0;
  return s;
}

}  // namespace rydqudit
