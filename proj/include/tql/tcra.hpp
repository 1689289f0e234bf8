#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tql/core.hpp"
#include "tql/eval.hpp"
#include "tql/solver.hpp"

namespace tql {

// ---------------------------------------------------------------------------
// Set-lifted brute-force oracle
//
// Lifts a discovery program to its full result set by running it on every
// candidate tuple directly, without going through a choice function. Because
// the enumeration here is its own loop, the solver and this oracle reach
// their answers along separate routes.
// ---------------------------------------------------------------------------

/// A set of datasets deduplicated by structural equality: attribute set plus
/// row set, ignoring provenance name and column order.
class DatasetSet {
public:
    // True when the dataset was new.
    bool insert(const Dataset& d) { return members_.emplace(canonical_key(d), d).second; }

    bool contains(const Dataset& d) const { return members_.count(canonical_key(d)) != 0; }

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }

    /// Members in canonical-key order (deterministic across runs).
    std::vector<Dataset> members() const {
        std::vector<Dataset> out;
        out.reserve(members_.size());
        for (const auto& [key, d] : members_) out.push_back(d);
        return out;
    }

    /// Members of this set absent from `other`.
    std::vector<Dataset> missing_from(const DatasetSet& other) const {
        std::vector<Dataset> out;
        for (const auto& [key, d] : members_)
            if (!other.members_.count(key)) out.push_back(d);
        return out;
    }

    bool operator==(const DatasetSet& o) const {
        if (members_.size() != o.members_.size()) return false;
        for (const auto& [key, d] : members_)
            if (!o.members_.count(key)) return false;
        return true;
    }

private:
    std::map<std::string, Dataset> members_;
};

/// The natural inclusion of a single dataset into the set-lifted model.
inline DatasetSet singleton_inject(const Dataset& d) {
    DatasetSet out;
    out.insert(d);
    return out;
}

struct TcraCeilingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Runs the program on all |repo|^arity candidate tuples and collects every
/// successful output. Refuses instances whose candidate count exceeds the
/// ceiling; this is a desk-scale oracle.
inline DatasetSet tcra_eval(const DiscoveryProgram& dp, std::uint64_t ceiling = 10'000,
                            const RunOptions& opts = {}) {
    const std::vector<std::string> names = dp.repo->names();
    const std::size_t arity = dp.arity();

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < arity; ++i) {
        if (names.empty()) {
            total = 0;
            break;
        }
        if (total > ceiling / names.size() + 1) total = ceiling + 1;  // saturate
        else total *= names.size();
    }
    if (total > ceiling)
        throw TcraCeilingError("instance has more than " + std::to_string(ceiling) +
                               " candidate tuples");

    DatasetSet results;
    if (total == 0) return results;

    std::vector<std::size_t> digits(arity, 0);
    while (true) {
        std::vector<Dataset> inputs;
        inputs.reserve(arity);
        for (const std::size_t d : digits) inputs.push_back(dp.repo->lookup(names[d]));
        const Outcome outcome = run(dp.program, inputs, opts);
        if (outcome.status == Outcome::Status::Success) results.insert(*outcome.data);

        std::size_t pos = arity;
        while (pos > 0) {
            --pos;
            if (++digits[pos] < names.size()) break;
            digits[pos] = 0;
            if (pos == 0) return results;
        }
        if (arity == 0) return results;
    }
}

}  // namespace tql
