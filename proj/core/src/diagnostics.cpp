#include "nqs/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace nqs {

TrackedSet::TrackedSet(std::vector<FockLabel> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) {
    throw std::invalid_argument("TrackedSet: at least one label is required");
  }
  std::set<FockLabel> seen;
  for (const auto& label : labels_) {
    if (label.m < 0 || label.n < 0) {
      throw std::invalid_argument("TrackedSet: negative occupation in " + to_string(label));
    }
    if (!seen.insert(label).second) {
      throw std::invalid_argument("TrackedSet: duplicate label " + to_string(label));
    }
  }
}

TrackedSet TrackedSet::three_state() { return TrackedSet({{0, 0}, {0, 1}, {1, 0}}); }

TrackedSet TrackedSet::four_state() { return TrackedSet({{0, 0}, {0, 1}, {1, 0}, {1, 1}}); }

TrackedSet TrackedSet::default_for(double chi_ab) {
  return chi_ab != 0.0 ? three_state() : four_state();
}

bool TrackedSet::contains(const FockLabel& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

void TrackedSet::check_within(const FockBasis& basis) const {
  for (const auto& label : labels_) {
    if (!basis.contains(label)) {
      throw std::out_of_range("TrackedSet: label " + to_string(label) + " outside basis (" +
                              std::to_string(basis.dim_a()) + ", " + std::to_string(basis.dim_b()) + ")");
    }
  }
}

std::map<FockLabel, double> probabilities(const StateVector& psi, const TrackedSet& set) {
  set.check_within(psi.basis());
  std::map<FockLabel, double> out;
  for (const auto& label : set.labels()) {
    out.emplace(label, psi.probability(label));
  }
  return out;
}

double leakage(const StateVector& psi, const TrackedSet& set) {
  set.check_within(psi.basis());
  double captured = 0.0;
  for (const auto& label : set.labels()) {
    captured += psi.probability(label);
  }
  return 1.0 - captured;
}

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
constexpr Complex kI{0.0, 1.0};

StateVector two_term_state(const FockBasis& basis, FockLabel first, Complex c_first, FockLabel second,
                           Complex c_second) {
  Vector amplitudes = Vector::Zero(basis.joint_dim());
  amplitudes(basis.flat_index(first)) = c_first;
  amplitudes(basis.flat_index(second)) = c_second;
  return {basis, std::move(amplitudes)};
}

}  // namespace

StateVector bell_state_b1(const FockBasis& basis) {
  return two_term_state(basis, {0, 1}, kInvSqrt2, {1, 0}, kI * kInvSqrt2);
}

StateVector bell_state_b2(const FockBasis& basis) {
  return two_term_state(basis, {1, 0}, kInvSqrt2, {0, 1}, -kI * kInvSqrt2);
}

BellFidelities bell_fidelities(const StateVector& psi) {
  const FockBasis& basis = psi.basis();
  // Only the |0,1> and |1,0> components overlap with either Bell state.
  const Complex c01 = psi.amplitude({0, 1});
  const Complex c10 = psi.amplitude({1, 0});
  const StateVector b1 = bell_state_b1(basis);
  const StateVector b2 = bell_state_b2(basis);
  const Complex overlap1 = std::conj(b1.amplitude({0, 1})) * c01 + std::conj(b1.amplitude({1, 0})) * c10;
  const Complex overlap2 = std::conj(b2.amplitude({0, 1})) * c01 + std::conj(b2.amplitude({1, 0})) * c10;
  return {std::norm(overlap1), std::norm(overlap2)};
}

double entanglement_entropy(const StateVector& psi) {
  const Matrix c = psi.amplitude_matrix();
  const Matrix rho_a = c * c.adjoint();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("entanglement_entropy: eigendecomposition did not converge");
  }
  double entropy = 0.0;
  for (const double lambda : solver.eigenvalues()) {
    if (lambda >= 1e-14) {
      entropy -= lambda * std::log2(lambda);
    }
  }
  return std::max(entropy, 0.0);
}

double KickRecord::probability(const FockLabel& label) const {
  if (label == FockLabel{0, 0}) return p00;
  if (label == FockLabel{0, 1}) return p01;
  if (label == FockLabel{1, 0}) return p10;
  if (label == FockLabel{1, 1}) return p11;
  throw std::out_of_range("KickRecord: no stored probability for " + to_string(label));
}

KickRecord record_kick(int kick, double period, const StateVector& psi, const TrackedSet& set) {
  set.check_within(psi.basis());
  KickRecord r;
  r.kick = kick;
  r.time = kick * period;
  r.p00 = psi.probability({0, 0});
  r.p01 = psi.probability({0, 1});
  r.p10 = psi.probability({1, 0});
  r.p11 = psi.probability({1, 1});
  r.tracked.reserve(set.labels().size());
  double captured = 0.0;
  for (const auto& label : set.labels()) {
    const double p = psi.probability(label);
    r.tracked.push_back(p);
    captured += p;
  }
  r.leakage = 1.0 - captured;
  const BellFidelities fid = bell_fidelities(psi);
  r.fid_b1 = fid.b1;
  r.fid_b2 = fid.b2;
  r.entropy = entanglement_entropy(psi);
  r.norm_error = std::abs(psi.norm() - 1.0);
  return r;
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::separable: return "separable";
    case EventKind::bell: return "bell";
    case EventKind::crossing_00_11: return "crossing_00_11";
    case EventKind::crossing_01_11: return "crossing_01_11";
  }
  return "unknown";
}

const std::array<CrossingPair, 4>& crossing_pairs() {
  static const std::array<CrossingPair, 4> pairs{{
      {EventKind::separable, {0, 0}, {1, 0}},
      {EventKind::bell, {0, 1}, {1, 0}},
      {EventKind::crossing_00_11, {0, 0}, {1, 1}},
      {EventKind::crossing_01_11, {0, 1}, {1, 1}},
  }};
  return pairs;
}

std::vector<CrossingEvent> detect_events(const KickTrajectory& traj, double tol) {
  if (!(tol > 0.0 && tol <= 0.1)) {
    throw std::invalid_argument("detect_events: tolerance must lie in (0, 0.1], got " + std::to_string(tol));
  }
  std::vector<CrossingEvent> events;
  for (const auto& r : traj.records) {
    for (const auto& pair : crossing_pairs()) {
      const double p1 = r.probability(pair.first);
      const double p2 = r.probability(pair.second);
      if (std::abs(p1 - 0.5) < tol && std::abs(p2 - 0.5) < tol) {
        events.push_back({r.kick, pair.kind, p1, p2});
      }
    }
  }
  return events;
}

std::size_t count_events(const std::vector<CrossingEvent>& events, EventKind kind) {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(), [kind](const CrossingEvent& e) { return e.kind == kind; }));
}

}  // namespace nqs
