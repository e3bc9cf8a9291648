#pragma once

// Per-kick observables of a kicked-coupler run: Fock probabilities, leakage
// out of the tracked subspace, Bell-state fidelities, entanglement entropy,
// and detection of probability crossings at 1/2.

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nqs/fock.hpp"

namespace nqs {

/// The Fock labels whose probabilities span the truncated (scissored)
/// subspace of a run.
class TrackedSet {
 public:
  /// Labels must be distinct and non-negative. Range checks against a basis
  /// happen when the set is used.
  explicit TrackedSet(std::vector<FockLabel> labels);

  /// {|0,0>, |0,1>, |1,0>}: the zero-energy manifold with cross-coupling.
  static TrackedSet three_state();
  /// three_state() plus |1,1>, which joins the manifold when chi_ab = 0.
  static TrackedSet four_state();
  /// three_state() for chi_ab != 0, four_state() otherwise.
  static TrackedSet default_for(double chi_ab);

  const std::vector<FockLabel>& labels() const noexcept { return labels_; }
  bool contains(const FockLabel& label) const;

  /// Throws std::out_of_range if a label lies outside `basis`.
  void check_within(const FockBasis& basis) const;

  friend bool operator==(const TrackedSet&, const TrackedSet&) = default;

 private:
  std::vector<FockLabel> labels_;
};

std::map<FockLabel, double> probabilities(const StateVector& psi, const TrackedSet& set);

/// 1 - sum of tracked probabilities.
double leakage(const StateVector& psi, const TrackedSet& set);

/// (|0,1> + i|1,0>) / sqrt(2)
StateVector bell_state_b1(const FockBasis& basis);
/// (|1,0> - i|0,1>) / sqrt(2)
StateVector bell_state_b2(const FockBasis& basis);

struct BellFidelities {
  double b1 = 0.0;
  double b2 = 0.0;
  double max() const { return b1 > b2 ? b1 : b2; }
};

BellFidelities bell_fidelities(const StateVector& psi);

/// Von Neumann entropy (bits) of the mode-a reduced density matrix.
/// Eigenvalues below 1e-14 contribute nothing.
double entanglement_entropy(const StateVector& psi);

struct KickRecord {
  int kick = 0;
  double time = 0.0;
  /// Raw probabilities of |0,0>, |0,1>, |1,0>, |1,1>, whatever the tracked set.
  double p00 = 0.0;
  double p01 = 0.0;
  double p10 = 0.0;
  double p11 = 0.0;
  /// Probabilities of the tracked labels, in TrackedSet order.
  std::vector<double> tracked;
  double leakage = 0.0;
  double fid_b1 = 0.0;
  double fid_b2 = 0.0;
  double entropy = 0.0;
  double norm_error = 0.0;

  double probability(const FockLabel& label) const;
};

KickRecord record_kick(int kick, double period, const StateVector& psi, const TrackedSet& set);

struct KickTrajectory {
  TrackedSet tracked = TrackedSet::three_state();
  std::vector<KickRecord> records;
};

enum class EventKind {
  separable,       ///< P(0,0) = P(1,0) = 1/2
  bell,            ///< P(0,1) = P(1,0) = 1/2
  crossing_00_11,  ///< P(0,0) = P(1,1) = 1/2
  crossing_01_11,  ///< P(0,1) = P(1,1) = 1/2
};

std::string_view to_string(EventKind kind);

struct CrossingPair {
  EventKind kind;
  FockLabel first;
  FockLabel second;
};

/// The designated probability pairs checked by detect_events.
const std::array<CrossingPair, 4>& crossing_pairs();

struct CrossingEvent {
  int kick = 0;
  EventKind kind = EventKind::separable;
  double first_probability = 0.0;
  double second_probability = 0.0;
};

/// One event per (kick, pair) where both probabilities of the pair lie within
/// `tol` of 1/2. Requires 0 < tol <= 0.1.
std::vector<CrossingEvent> detect_events(const KickTrajectory& traj, double tol);

std::size_t count_events(const std::vector<CrossingEvent>& events, EventKind kind);

}  // namespace nqs
