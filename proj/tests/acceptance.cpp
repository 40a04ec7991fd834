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

// Acceptance suite: one line per criterion. Each line combines the registered
// scenario's own verdict with an independent computation from oracles.hpp.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "rydqudit/basis.hpp"
#include "rydqudit/evolution.hpp"
#include "rydqudit/gates.hpp"
#include "rydqudit/manifold.hpp"
#include "rydqudit/pulse.hpp"
#include "rydqudit/scenarios.hpp"

namespace rq = rydqudit;
using oracle::cd;
using oracle::Vec;

namespace {

struct Line {
  int id = 0;
  std::string scenario;
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

Vec to_vec(const rq::CVector& v) { return Vec(v.data(), v.data() + v.size()); }

rq::CVector to_eigen(const Vec& v) {
  rq::CVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

int slot(int d, int label) {
  const int s = (label - oracle::j_min(d)) % d;
  return s < 0 ? s + d : s;
}

const rq::ScenarioResult& scenario(Line& line) {
  static std::vector<std::pair<std::string, rq::ScenarioResult>> cache;
  for (auto& [n, r] : cache) {
    if (n == line.scenario) return r;
  }
  cache.emplace_back(line.scenario, rq::run_builtin(line.scenario, {4}));
  return cache.back().second;
}

// Observable or check value recorded by the scenario.
double recorded(const rq::ScenarioResult& r, const std::string& key) {
  for (const auto& c : r.checks) {
    if (c.name == key) return c.value;
  }
  return r.observable(key);
}

void scenario_verdict(Line& line) {
  const auto& r = scenario(line);
  line.require(r.passed(), "scenario checks: " + r.summary_line());
}

void criterion_1(Line& l) {
  const double tk = oracle::kepler(180) * oracle::kAuSeconds * 1e9;
  const double trev = oracle::revival(180) * oracle::kAuSeconds * 1e9;
  const double tsr = oracle::superrevival(180) * oracle::kAuSeconds * 1e6;
  l.detail << "T_K=" << tk << " ns, T_rev=" << trev << " ns, T_sr=" << tsr << " us";
  l.require(std::abs(tk / 0.89 - 1) <= 0.01, "T_K within 1% of 0.89 ns");
  l.require(std::abs(trev / 106 - 1) <= 0.01, "T_rev within 1% of 106 ns");
  l.require(std::abs(tsr / 14 - 1) <= 0.03, "T_sr within 3% of 14 us");
  const auto ts = rq::time_scales(rq::ManifoldSpec(180, 8));
  const double lib_err = std::max({std::abs(ts.t_kepler / oracle::kepler(180) - 1),
                                   std::abs(ts.t_revival / oracle::revival(180) - 1),
                                   std::abs(ts.t_superrevival / oracle::superrevival(180) - 1)});
  l.detail << "; library rel. diff " << lib_err;
  l.require(lib_err < 1e-14, "library time scales equal the formulas");
  scenario_verdict(l);
}

void criterion_2(Line& l) {
  std::mt19937_64 rng(2002);
  double worst_round = 0.0, worst_naive = 0.0, worst_parseval = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + trial % 15;
    const rq::ManifoldSpec spec(180, d);
    const Vec b = oracle::random_state(d, rng);
    const rq::AmplitudeVector energy(rq::Basis::energy, to_eigen(b));
    const auto bt = rq::qft_energy_to_packet(spec, energy);
    const auto back = rq::iqft_packet_to_energy(spec, bt);
    worst_round = std::max(worst_round, oracle::max_diff(to_vec(back.values()), b));
    worst_naive = std::max(worst_naive, oracle::max_diff(to_vec(bt.values()), oracle::matvec(oracle::dft(d), b)));
    worst_parseval = std::max(worst_parseval, std::abs(bt.norm_squared() - oracle::norm2(b)));
  }
  l.detail << "round-trip " << worst_round << ", vs naive DFT " << worst_naive << ", Parseval "
           << worst_parseval;
  l.require(worst_round < 1e-12 && worst_naive < 1e-12 && worst_parseval < 1e-12, "errors < 1e-12");
  scenario_verdict(l);
}

void criterion_3(Line& l) {
  std::mt19937_64 rng(2003);
  double worst = 0.0;
  for (int d : {4, 5, 8}) {
    const rq::ManifoldSpec spec(180, d);
    for (int n = 0; n <= 2 * d; ++n) {
      const Vec bt = oracle::random_state(d, rng);
      const double dt = n * oracle::kepler(180) / d;
      // Linear spectrum: out[label k] = in[label k - n].
      Vec expect(d);
      for (int k = oracle::j_min(d); k < oracle::j_min(d) + d; ++k) expect[slot(d, k)] = bt[slot(d, k - n)];
      worst = std::max(worst, oracle::max_diff(oracle::evolve_packets(180, bt, dt, true), expect));
      const auto b = rq::energy_amplitudes_from_packets(spec, {rq::Basis::packet, to_eigen(bt)}, 0.0,
                                                        rq::SpectrumMode::taylor1);
      const auto lib = rq::packet_amplitudes_at(spec, b, dt, rq::SpectrumMode::taylor1);
      worst = std::max(worst, oracle::max_diff(to_vec(lib.values()), expect));
    }
  }
  l.detail << "max permutation error " << worst;
  l.require(worst < 1e-12, "error < 1e-12");
  scenario_verdict(l);
}

void criterion_4(Line& l) {
  std::mt19937_64 rng(2004);
  std::uniform_real_distribution<double> times(0.0, 2.0 * oracle::revival(180));
  const rq::ManifoldSpec spec(180, 8);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Vec bt = oracle::random_state(8, rng);
    const double t = times(rng);
    const Vec direct = oracle::evolve_packets(180, bt, t);
    const auto kernel = rq::evolution_kernel(spec, t);
    const auto lib = rq::apply_kernel(kernel, {rq::Basis::packet, to_eigen(bt)});
    worst = std::max(worst, oracle::max_diff(to_vec(lib.values()), direct));
  }
  l.detail << "max |kernel - direct| " << worst;
  l.require(worst < 1e-12, "error < 1e-12");
  scenario_verdict(l);
}

void criterion_5(Line& l) {
  const Vec om = oracle::rabi_tilde(180, 8);
  const double r_plus = std::abs(om[slot(8, 1)]) / std::abs(om[slot(8, 0)]);
  const double r_minus = std::abs(om[slot(8, -1)]) / std::abs(om[slot(8, 0)]);
  l.detail << "|W~_+1|/|W~_0|=" << r_plus << ", |W~_-1|/|W~_0|=" << r_minus;
  l.require(r_plus >= 0.005 && r_plus <= 0.02 && r_minus >= 0.005 && r_minus <= 0.02, "ratio in [0.005, 0.02]");
  const auto prof = rq::rabi_profile(rq::ManifoldSpec(180, 8), 1.0);
  double diff = 0.0;
  for (int k = 0; k < 8; ++k) diff = std::max(diff, std::abs(prof.omega_tilde_k[k] - om[k]));
  l.require(diff < 1e-12, "library profile equals naive DFT");
  scenario_verdict(l);
}

struct DarkOracle {
  Vec before, after;
  double pop_g = 0.0;
  double core_at_centre = 0.0;
};

const DarkOracle& dark_oracle() {
  static const DarkOracle f = [] {
    DarkOracle o;
    const int d = 8;
    const double slot_t = oracle::kepler(180) / d;
    const double tau = 0.5 * std::log(2.0) * slot_t;
    const Vec uniform(d, cd(1.0 / std::sqrt(double(d)), 0.0));
    oracle::PulseRun y{oracle::energy_from_packets(180, uniform, -slot_t), 0.0};
    o.before = oracle::packets_at(180, y.b, -slot_t);
    o.core_at_centre = std::norm(oracle::packets_at(180, y.b, 0.0)[slot(d, 0)]);
    y = oracle::rk4_pulse(180, y, tau, oracle::kPi, 0.0, 20000);
    o.after = oracle::packets_at(180, y.b, slot_t);
    o.pop_g = std::norm(y.b_s);
    return o;
  }();
  return f;
}

void criterion_6(Line& l) {
  const DarkOracle& o = dark_oracle();
  const double dark = std::norm(o.after[slot(8, 1)]);
  double gross = 0.0;
  for (int label : {-2, 0}) {
    gross += std::max(0.0, std::norm(o.before[slot(8, label)]) - std::norm(o.after[slot(8, label + 2)]));
  }
  l.detail << "RK4 oracle: dark=" << dark << ", pop_g=" << o.pop_g << ", neighbor loss=" << gross;
  l.require(dark < 0.02 / 8, "dark < 0.02/8");
  l.require(o.pop_g >= 0.9 / 8, "pop_g >= 0.9/8");
  l.require(gross >= 0.02 && gross <= 0.08, "neighbor loss in [0.02, 0.08]");
  const auto& r = scenario(l);
  const double lib_g = r.observable("pop_g_times_d") / 8;
  const double lib_dark = r.observable("dark_population_times_d") / 8;
  l.detail << "; library diff g " << std::abs(lib_g - o.pop_g) << ", dark " << std::abs(lib_dark - dark);
  l.require(std::abs(lib_g - o.pop_g) < 1e-6 && std::abs(lib_dark - dark) < 1e-6,
            "library agrees with RK4 oracle to 1e-6");
  scenario_verdict(l);
}

void criterion_7(Line& l) {
  const DarkOracle& o = dark_oracle();
  // Resonant pi pulse on {g, core packet}: complete transfer of the core population.
  const double two_level_g = o.core_at_centre;
  const double two_level_dark = 0.0;
  const double full_dark = std::norm(o.after[slot(8, 1)]);
  const double dg = std::abs(two_level_g - o.pop_g), dd = std::abs(two_level_dark - full_dark);
  l.detail << "two-level g=" << two_level_g << " vs full " << o.pop_g << " (diff " << dg
           << "); dark diff " << dd;
  l.require(dg <= 0.05 && dd <= 0.05, "both within 0.05");
  const auto& r = scenario(l);
  l.require(std::abs(r.observable("oracle_pop_g") - two_level_g) < 1e-9,
            "library two-level oracle equals closed form");
  scenario_verdict(l);
}

void criterion_8(Line& l) {
  const double tk = oracle::kepler(180), trev = oracle::revival(180);
  const double decay = 1.0 - oracle::autocorrelation(180, 8, tk);
  double best = 0.0, best_t = 0.0;
  const int n = 200000;
  for (int i = 0; i <= n; ++i) {
    const double t = trev * (0.99 + 0.02 * i / n);
    const double a = oracle::autocorrelation(180, 8, t);
    if (a > best) best = a, best_t = t;
  }
  double half_best = 0.0;
  for (int i = 0; i <= n; ++i) {
    half_best = std::max(half_best, oracle::autocorrelation(180, 8, trev * (0.49 + 0.02 * i / n)));
  }
  l.detail << "one-period decay " << decay << "; peak within 1% of T_rev: " << best << " at "
           << best_t / trev << " T_rev (gap " << 1 - best << "); first revival near T_rev/2 gap "
           << 1 - half_best;
  l.require(decay >= 0.03 && decay <= 0.08, "decay in [0.03, 0.08]");
  l.require(1 - best >= 0.01 && 1 - best <= 0.06, "revival gap in [0.01, 0.06]");
  const double lib = rq::one_period_decay(rq::ManifoldSpec(180, 8));
  l.require(std::abs(lib - decay) < 1e-12, "library decay equals oracle");
  const auto& r = scenario(l);
  l.require(std::abs(recorded(r, "revival_recovery_gap") - (1 - best)) < 1e-4,
            "library revival gap equals oracle");
  scenario_verdict(l);
}

void criterion_9(Line& l) {
  const double d180 = 1.0 - oracle::autocorrelation(180, 8, oracle::kepler(180));
  const double d360 = 1.0 - oracle::autocorrelation(360, 8, oracle::kepler(360));
  const double ratio = d360 / d180;
  l.detail << "decay(360)/decay(180) = " << ratio;
  l.require(ratio >= 1.0 / 6 && ratio <= 1.0 / 2.5, "ratio in [1/6, 1/2.5]");
  const double lib = rq::one_period_decay(rq::ManifoldSpec(360, 8)) / rq::one_period_decay(rq::ManifoldSpec(180, 8));
  l.require(std::abs(lib - ratio) < 1e-10, "library ratio equals oracle");
  scenario_verdict(l);
}

// Full width at half maximum of |integral g(t) exp(-i 2 pi nu t) dt|^power over nu.
double numeric_spectral_fwhm(const std::function<double(double)>& g, double t_max, double power,
                             double nu_guess) {
  auto spectrum = [&](double nu) {
    const int n = 4000;
    double re = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double t = -t_max + 2.0 * t_max * i / n;
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      re += w * g(t) * std::cos(2.0 * oracle::kPi * nu * t);  // g is even
    }
    return std::pow(std::abs(re), power);
  };
  const double peak = spectrum(0.0);
  double lo = 0.0, hi = 4.0 * nu_guess;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (spectrum(mid) > 0.5 * peak ? lo : hi) = mid;
  }
  return 2.0 * lo;
}

void criterion_10(Line& l) {
  const rq::ManifoldSpec spec(180, 8);
  const double tk = oracle::kepler(180);
  const double tau = 0.5 * std::log(2.0) * tk / 8;
  rq::PulseSpec p;
  p.tau_p = tau;
  const auto rep = rq::validate_pulse(spec, p);
  const double tbp_err = std::abs(rep.spectral_fwhm * tau - 2.0 * std::log(2.0) / oracle::kPi);
  // Power spectrum of a Gaussian whose intensity FWHM is tau_p.
  const double num_power = numeric_spectral_fwhm(
      [&](double t) { return std::exp(-2.0 * std::log(2.0) * t * t / (tau * tau)); }, 6 * tau, 2.0, 1.0 / tau);
  // Amplitude spectrum of the Rabi envelope itself (amplitude FWHM tau_p).
  const double num_field = numeric_spectral_fwhm(
      [&](double t) { return std::exp(-4.0 * std::log(2.0) * t * t / (tau * tau)); }, 6 * tau, 1.0, 1.0 / tau);
  const double in_spacings = rep.spectral_fwhm / (8 / tk);
  l.detail << "TBP error " << tbp_err << "; numeric FWHM rel. diff " << std::abs(num_power / rep.spectral_fwhm - 1)
           << " (power), " << std::abs(num_field / rep.field_amplitude_spectrum_fwhm - 1)
           << " (field); FWHM = " << in_spacings << " d/T_K";
  l.require(tbp_err < 1e-12, "transform-limit product to 1e-12");
  l.require(std::abs(num_power / rep.spectral_fwhm - 1) < 1e-6, "numeric power-spectrum FWHM agrees");
  l.require(std::abs(num_field / rep.field_amplitude_spectrum_fwhm - 1) < 1e-6, "numeric field FWHM agrees");
  l.require(std::abs(in_spacings / 1.3 - 1) <= 0.05, "FWHM within 5% of 1.3 d/T_K");
  scenario_verdict(l);
}

rq::CMatrix test_haar(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  rq::CMatrix z(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) z(r, c) = cd(g(rng), g(rng));
  }
  Eigen::HouseholderQR<rq::CMatrix> qr(z);
  rq::CMatrix q = qr.householderQ();
  const rq::CMatrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < d; ++c) q.col(c) *= rr(c, c) / std::abs(rr(c, c));
  return q;
}

rq::CMatrix embed(const rq::TwoLevelOp& op, int d) {
  rq::CMatrix m = rq::CMatrix::Identity(d, d);
  m(op.k, op.k) = op.u2(0, 0);
  m(op.k, op.k_prime) = op.u2(0, 1);
  m(op.k_prime, op.k) = op.u2(1, 0);
  m(op.k_prime, op.k_prime) = op.u2(1, 1);
  return m;
}

void criterion_11(Line& l) {
  std::mt19937_64 rng(2011);
  double worst = 0.0;
  bool counts_ok = true;
  for (int i = 0; i < 50; ++i) {
    const int d = std::vector<int>{2, 4, 8}[static_cast<std::size_t>(i % 3)];
    const rq::CMatrix u = test_haar(d, rng);
    const auto ops = rq::decompose_unitary(u);
    counts_ok = counts_ok && int(ops.size()) <= d * (d - 1) / 2 + d;
    rq::CMatrix v = rq::CMatrix::Identity(d, d);
    for (const auto& op : ops) v = embed(op, d) * v;
    worst = std::max(worst, (v - u).cwiseAbs().maxCoeff());
  }
  const rq::ManifoldSpec spec(180, 4);
  const rq::CMatrix target = test_haar(4, rng);
  const auto schedule = rq::compile_unitary(target, spec);
  const rq::CMatrix map = rq::packet_map(schedule, {}, 4);
  // Probe average: d basis states plus d + 1 quadratic-chirp states.
  double sum = 0.0;
  int probes = 0;
  for (int m = -1; m <= 4; ++m) {
    for (int k = 0; k < (m < 0 ? 4 : 1); ++k) {
      rq::CVector p(4);
      for (int s = 0; s < 4; ++s) {
        p[s] = m < 0 ? cd(s == k ? 1.0 : 0.0) : std::polar(0.5, oracle::kPi * m * s * s / 4.0);
      }
      sum += std::norm((target * p).dot(map * p));
      ++probes;
    }
  }
  const double fid = sum / probes;
  const double lib = rq::process_fidelity(map, target);
  const double haar_avg = (std::norm((target.adjoint() * map).trace()) + (map.adjoint() * map).trace().real()) / 20.0;
  l.detail << "max reconstruction error " << worst << "; d=4 full-model process fidelity " << fid
           << " (Haar-average fidelity " << haar_avg << ", " << schedule.total_kepler_periods() << " T_K, "
           << schedule.pulse_count() << " pulses)";
  l.require(worst < 1e-9, "reconstruction < 1e-9");
  l.require(counts_ok, "factor count <= d(d-1)/2 + d");
  l.require(fid >= 0.9, "process fidelity >= 0.9");
  l.require(std::abs(fid - lib) < 1e-12, "library fidelity equals probe oracle");
  scenario_verdict(l);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Line&)>>> criteria = {
      {"time_scales", criterion_1},       {"qft_roundtrip", criterion_2},
      {"shift_gate_demo", criterion_3},   {"kernel_identity", criterion_4},
      {"rabi_dft_ratio", criterion_5},    {"dark_packet", criterion_6},
      {"two_level_vs_full", criterion_7}, {"revival_recovery", criterion_8},
      {"dispersion_nbar_scaling", criterion_9}, {"pulse_constraint", criterion_10},
      {"compile_random_unitary", criterion_11},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Line line;
    line.id = int(i + 1);
    line.scenario = criteria[i].first;
    line.detail.precision(6);
    try {
      criteria[i].second(line);
    } catch (const std::exception& e) {
      line.require(false, std::string("exception: ") + e.what());
    }
    failures += line.ok ? 0 : 1;
    std::printf("%s [%d] %s: %s\n", line.ok ? "PASS" : "FAIL", line.id, line.scenario.c_str(),
                line.detail.str().c_str());
  }
  std::printf("%zu criteria, %d passed, %d failed\n", criteria.size(), int(criteria.size()) - failures, failures);
  return failures == 0 ? 0 : 1;
}
