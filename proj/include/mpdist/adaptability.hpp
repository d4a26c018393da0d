#pragma once

#include "mpdist/geometry.hpp"
#include "mpdist/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <vector>

namespace mpdist {

inline constexpr double kDefaultAdaptabilityThreshold = 10.0;

struct EnergyReport {
    double s = 0;
    /// n^{-2} * sum over ordered pairs e != e' of (|e - e'| / diam)^{-s}.
    double energy = 0;
    std::size_t n = 0;
    SqDist diameter_sq = 0;
    bool adaptable = false;
    double threshold = kDefaultAdaptabilityThreshold;
};

/// Diameter-normalized discrete s-energy. Pairwise terms are reduced in fixed
/// row blocks with compensated summation, so the value does not depend on
/// `threads`.
EnergyReport discrete_energy(const PointSet& e, double s, unsigned threads = 1);

/// Same energy in exact rational arithmetic; needs an even integer s.
boost::multiprecision::cpp_rational exact_energy(const PointSet& e, unsigned s);

/// Reference energy for any positive integer s, evaluated in 100-digit binary
/// floating point from exact distance ratios.
boost::multiprecision::cpp_bin_float_100 reference_energy(const PointSet& e, unsigned s);

struct ThinResult {
    PointSet kept;
    std::vector<std::size_t> kept_indices;
    std::size_t removed = 0;
};

/// Greedy pass in input order: keep a point iff its diameter-normalized
/// distance to every kept point is at least n^{-1/s}.
ThinResult separate_thin(const PointSet& e, double s);

struct AdaptabilityResult {
    bool adaptable = false;
    EnergyReport report;
    /// Set when auto_thin ran before the energy evaluation.
    std::size_t kept = 0;
    std::size_t removed = 0;
};

/// energy <= threshold, optionally after separate_thin.
AdaptabilityResult is_adaptable(const PointSet& e, double s,
                                double threshold = kDefaultAdaptabilityThreshold,
                                bool auto_thin = false, unsigned threads = 1);

/// min squared distance / squared diameter, exact.
Rational min_separation(const PointSet& e);

/// Largest squared distance in the set.
SqDist diameter_sq(const PointSet& e);

}  // namespace mpdist
