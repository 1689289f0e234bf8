#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tql/core.hpp"
#include "tql/csv.hpp"

namespace tql {

struct RepositoryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Edit distance, capped so near-miss suggestions stay cheap.
inline std::size_t edit_distance(const std::string& a, const std::string& b) {
    const std::size_t m = a.size(), n = b.size();
    std::vector<std::size_t> prev(n + 1), cur(n + 1);
    for (std::size_t j = 0; j <= n; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= m; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= n; ++j) {
            const std::size_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
        }
        std::swap(prev, cur);
    }
    return prev[n];
}

}  // namespace detail

/// The dataset catalog a discovery program draws its inputs from. Iteration
/// order is lexicographic by name, which fixes the solver's enumeration
/// order.
class Repository {
public:
    Repository() = default;

    void add(Dataset d) {
        if (d.name().empty()) throw RepositoryError("dataset has no name");
        const std::string name = d.name();
        if (!catalog_.emplace(name, std::move(d)).second)
            throw RepositoryError("duplicate dataset name '" + name + "'");
    }

    const Dataset& lookup(const std::string& name) const {
        const auto it = catalog_.find(name);
        if (it != catalog_.end()) return it->second;

        std::vector<std::string> near;
        for (const auto& [candidate, data] : catalog_)
            if (detail::edit_distance(name, candidate) <= 2) near.push_back(candidate);
        std::string message = "unknown dataset '" + name + "'";
        if (near.size() == 1) {
            message += "; did you mean '" + near.front() + "'?";
        } else if (!near.empty()) {
            message += "; did you mean one of:";
            for (const std::string& c : near) message += " '" + c + "'";
            message += "?";
        }
        throw RepositoryError(message);
    }

    bool contains(const std::string& name) const { return catalog_.count(name) != 0; }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        out.reserve(catalog_.size());
        for (const auto& [name, data] : catalog_) out.push_back(name);
        return out;
    }

    std::size_t size() const { return catalog_.size(); }
    bool empty() const { return catalog_.empty(); }

    auto begin() const { return catalog_.begin(); }
    auto end() const { return catalog_.end(); }

private:
    std::map<std::string, Dataset> catalog_;
};

/// Loads every *.csv file in a directory; the dataset name is the file stem.
/// Other files are ignored. Ingestion is strict: all per-file errors are
/// collected and reported together, and any error aborts the load.
inline Repository load_repository(const std::filesystem::path& dir) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec))
        throw RepositoryError("repository path '" + dir.string() + "' is not a directory");

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    Repository repo;
    std::vector<std::string> errors;
    for (const auto& path : files) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            errors.push_back(path.string() + ": cannot open file");
            continue;
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        try {
            repo.add(parse_csv(buffer.str(), path.stem().string()));
        } catch (const CsvError& e) {
            errors.push_back(path.string() + ":" + std::to_string(e.line) + ":" +
                             std::to_string(e.column) + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            errors.push_back(path.string() + ": " + e.what());
        }
    }
    if (!errors.empty()) {
        std::string message = "repository load failed:";
        for (const std::string& e : errors) message += "\n  " + e;
        throw RepositoryError(message);
    }
    return repo;
}

}  // namespace tql
