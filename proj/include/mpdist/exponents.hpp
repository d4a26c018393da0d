#pragma once

#include "mpdist/geometry.hpp"
#include "mpdist/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace mpdist {

/// 2/m - 2/(m(m+2)), the Solymosi-Vu distinct-distance exponent.
Rational gamma_sv(std::size_t m);

struct NotedRational {
    Rational value;
    std::string note;
};

/// Best known distinct-distance exponent: 1 for m = 2 (up to logarithms),
/// 3/5 for m = 3, gamma_sv(m) otherwise.
NotedRational gamma_best(std::size_t m);

/// Two-set distance exponent 2/(m+1).
Rational delta_pair(std::size_t m);

/// 2 / (2d - (p_i - 1)).
Rational eta_general(std::size_t d, std::size_t block_size);

struct ThetaResult {
    Rational theta;
    /// Optimizing density parameter; equals theta.
    Rational alpha;
};

/// (1 + eta) / (q + (q-1) eta) for q >= 2 and eta in (0, 1].
ThetaResult theta(std::size_t q, const Rational& eta);

struct TwosTheta {
    std::size_t q = 0;
    Rational eta;             // 2 / (4(q-1))
    ThetaResult closed_form;  // theta(q, eta)
    Rational displayed;       // 1/q + 2/(q(4q+1)(q-1))
    bool discrepancy = false; // closed_form.theta != displayed
};

/// Partition-of-twos exponent with the convenient eta choice, alongside
/// the separately displayed closed form.
TwosTheta theta_partition_of_twos(std::size_t q);

struct TauReport {
    /// Value with block 0 (the smallest part).
    Rational tau;
    Rational alpha;
    /// tau and alpha evaluated with every block i.
    std::vector<Rational> per_block;
    std::vector<Rational> alpha_per_block;
    Rational max;
    std::size_t argmax = 0;
    bool first_block_maximizes = false;
};

/// gamma_q (g + e) / (gamma_q + (q-1)(g + e)) with g = gamma_sv(p_i),
/// e = eta_general(d, p_i); q >= 2.
TauReport tau(const Partition& p);

/// (k^2 + 2k) / (k^2 + 2k + 1) for k >= 3.
Rational zeta(std::size_t k);

/// gamma_best(p_q) / q.
Rational trivial_exponent(const Partition& p);
/// gamma_sv(p_q) / q.
Rational trivial_exponent_sv(const Partition& p);
/// 2q / d, the integer-cube growth rate.
Rational grid_exponent(const Partition& p);

enum class EntryKind { LowerBound, ConditionalLowerBound, GridUpper, Parameter };

std::string to_string(EntryKind k);
EntryKind parse_entry_kind(const std::string& s);

struct ExponentEntry {
    std::string key;
    Rational value;
    EntryKind kind = EntryKind::Parameter;
    std::string note;

    friend bool operator==(const ExponentEntry&, const ExponentEntry&) = default;
};

struct ExponentTable {
    Partition partition{std::vector<std::size_t>{2}};
    std::vector<Rational> gamma_sv;
    std::vector<Rational> gamma_best;
    std::vector<Rational> eta;
    std::vector<Rational> delta;
    Rational trivial;
    Rational trivial_sv;
    Rational grid_upper;
    std::optional<TauReport> tau;
    std::optional<TwosTheta> theta;
    std::optional<Rational> zeta;
    /// Label-ordered list of all predictions and parameters.
    std::vector<ExponentEntry> entries;
    std::vector<std::string> notes;

    const ExponentEntry* find(const std::string& key) const;
};

ExponentTable exponent_report(const Partition& p);

/// Enumerates all non-decreasing partitions of d with every part >= 2.
std::vector<Partition> increasing_partitions(std::size_t d);

}  // namespace mpdist
