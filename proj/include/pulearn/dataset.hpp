#pragma once

// Dataset types, CSV ingestion with one-hot encoding of string columns,
// z-score standardization, and seeded train/test splitting.

#include <Eigen/Core>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pulearn/rng.hpp"

namespace pulearn {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Eigen::VectorXi;

// Fully labelled dataset: features plus the true class.
struct Dataset {
    MatrixXd X;
    VectorXi Y;
    std::vector<std::string> feature_names;

    Eigen::Index n() const { return X.rows(); }
    Eigen::Index p() const { return X.cols(); }

    void validate() const {
        if (n() < 1 || p() < 1) throw std::invalid_argument("Dataset: need n >= 1 and p >= 1");
        if (Y.size() != n()) throw std::invalid_argument("Dataset: Y length mismatch");
        if (!feature_names.empty() && static_cast<Eigen::Index>(feature_names.size()) != p())
            throw std::invalid_argument("Dataset: feature_names length mismatch");
        for (Eigen::Index i = 0; i < Y.size(); ++i)
            if (Y(i) != 0 && Y(i) != 1) throw std::invalid_argument("Dataset: Y entries must be 0/1");
        if (!X.allFinite()) throw std::invalid_argument("Dataset: X contains non-finite values");
    }
};

// Positive-unlabelled view: observed S, with the true Y optionally retained
// by simulations. Labelled rows are always positive.
struct PUDataset {
    MatrixXd X;
    VectorXi S;
    std::optional<VectorXi> Y_hidden;

    Eigen::Index n() const { return X.rows(); }
    Eigen::Index p() const { return X.cols(); }

    void validate() const {
        if (n() < 1 || p() < 1) throw std::invalid_argument("PUDataset: need n >= 1 and p >= 1");
        if (S.size() != n()) throw std::invalid_argument("PUDataset: S length mismatch");
        for (Eigen::Index i = 0; i < S.size(); ++i)
            if (S(i) != 0 && S(i) != 1) throw std::invalid_argument("PUDataset: S entries must be 0/1");
        if (Y_hidden) {
            if (Y_hidden->size() != n()) throw std::invalid_argument("PUDataset: Y_hidden length mismatch");
            for (Eigen::Index i = 0; i < n(); ++i) {
                if ((*Y_hidden)(i) != 0 && (*Y_hidden)(i) != 1)
                    throw std::invalid_argument("PUDataset: Y_hidden entries must be 0/1");
                if (S(i) == 1 && (*Y_hidden)(i) != 1)
                    throw std::invalid_argument("PUDataset: labelled row with Y=0");
            }
        }
        if (!X.allFinite()) throw std::invalid_argument("PUDataset: X contains non-finite values");
    }
};

struct ScalingParams {
    VectorXd means;
    VectorXd std_devs;  // strictly positive; constant columns get 1
};

// Raw parsed CSV column: either numeric or string-valued.
struct RawColumn {
    std::string name;
    bool numeric = true;
    std::vector<double> numbers;
    std::vector<std::string> strings;  // original cells, kept for string columns
};

struct RawTable {
    std::vector<RawColumn> columns;
    std::size_t rows = 0;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

inline bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

}  // namespace detail

// Parse a whole CSV file into typed columns. A column is numeric iff every
// cell parses as a finite number; "nan"/"inf" cells are rejected outright.
inline RawTable read_csv_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv_table: cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_csv_table: empty file " + path);
    const auto header = detail::split_csv_line(line);

    RawTable table;
    table.columns.resize(header.size());
    for (std::size_t j = 0; j < header.size(); ++j) table.columns[j].name = header[j];

    std::vector<std::vector<std::string>> cells(header.size());
    while (std::getline(in, line)) {
        if (line.empty() && in.eof()) break;
        const auto row = detail::split_csv_line(line);
        if (row.size() != header.size())
            throw std::runtime_error("read_csv_table: ragged row in " + path);
        for (std::size_t j = 0; j < row.size(); ++j) cells[j].push_back(row[j]);
    }
    table.rows = cells.empty() ? 0 : cells[0].size();
    if (table.rows == 0) throw std::runtime_error("read_csv_table: no data rows in " + path);

    for (std::size_t j = 0; j < header.size(); ++j) {
        RawColumn& col = table.columns[j];
        col.numbers.reserve(table.rows);
        col.numeric = true;
        for (const auto& cell : cells[j]) {
            double v;
            if (!detail::parse_double(cell, v)) {
                col.numeric = false;
                break;
            }
            if (!std::isfinite(v))
                throw std::runtime_error("read_csv_table: non-finite value in column " + col.name);
            col.numbers.push_back(v);
        }
        if (!col.numeric) {
            col.numbers.clear();
            col.strings = cells[j];
        }
    }
    return table;
}

struct EncodedFeatures {
    MatrixXd X;
    std::vector<std::string> names;
};

// One-hot encode string columns: each column with L >= 2 distinct levels
// becomes L indicator columns (levels sorted lexicographically, expanded in
// the original column position). Numeric columns pass through. A string
// column with a single level carries no information and is dropped with a
// warning.
inline EncodedFeatures one_hot_encode(const RawTable& table) {
    const std::size_t n = table.rows;
    std::vector<std::vector<double>> out_cols;
    std::vector<std::string> out_names;

    for (const auto& col : table.columns) {
        if (col.numeric) {
            out_cols.push_back(col.numbers);
            out_names.push_back(col.name);
            continue;
        }
        std::set<std::string> levels(col.strings.begin(), col.strings.end());
        if (levels.size() < 2) {
            std::cerr << "pulearn: dropping constant string column '" << col.name << "'\n";
            continue;
        }
        for (const auto& level : levels) {
            std::vector<double> indicator(n);
            for (std::size_t i = 0; i < n; ++i) indicator[i] = col.strings[i] == level ? 1.0 : 0.0;
            out_cols.push_back(std::move(indicator));
            out_names.push_back(col.name + "=" + level);
        }
    }

    EncodedFeatures enc;
    enc.names = std::move(out_names);
    enc.X.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(out_cols.size()));
    for (std::size_t j = 0; j < out_cols.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) enc.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = out_cols[j][i];
    return enc;
}

namespace detail {

inline std::size_t resolve_column(const RawTable& table, const std::string& label_column) {
    for (std::size_t j = 0; j < table.columns.size(); ++j)
        if (table.columns[j].name == label_column) return j;
    // fall back to a numeric index
    std::size_t idx = 0;
    bool all_digits = !label_column.empty() &&
                      std::all_of(label_column.begin(), label_column.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (all_digits) {
        idx = std::stoul(label_column);
        if (idx < table.columns.size()) return idx;
    }
    throw std::runtime_error("load_csv: label column '" + label_column + "' not found");
}

}  // namespace detail

// Load a labelled CSV: the label column must hold 0/1 values; remaining
// columns become features (string columns one-hot encoded).
inline Dataset load_csv(const std::string& path, const std::string& label_column) {
    RawTable table = read_csv_table(path);
    const std::size_t label_idx = detail::resolve_column(table, label_column);

    const RawColumn& label = table.columns[label_idx];
    if (!label.numeric)
        throw std::runtime_error("load_csv: label column '" + label.name + "' is not numeric");
    VectorXi Y(static_cast<Eigen::Index>(table.rows));
    for (std::size_t i = 0; i < table.rows; ++i) {
        const double v = label.numbers[i];
        if (v != 0.0 && v != 1.0)
            throw std::runtime_error("load_csv: label value outside {0,1} in " + path);
        Y(static_cast<Eigen::Index>(i)) = static_cast<int>(v);
    }

    RawTable features;
    features.rows = table.rows;
    for (std::size_t j = 0; j < table.columns.size(); ++j)
        if (j != label_idx) features.columns.push_back(std::move(table.columns[j]));
    if (features.columns.empty()) throw std::runtime_error("load_csv: no feature columns in " + path);

    EncodedFeatures enc = one_hot_encode(features);
    if (enc.X.cols() == 0) throw std::runtime_error("load_csv: all feature columns degenerate in " + path);

    Dataset ds{std::move(enc.X), std::move(Y), std::move(enc.names)};
    ds.validate();
    return ds;
}

// Write a Dataset back out; doubles use shortest round-trip formatting so a
// reload reproduces X bit for bit.
inline void save_csv(const Dataset& ds, const std::string& path, const std::string& label_name = "y") {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_csv: cannot open " + path + " for writing");
    for (Eigen::Index j = 0; j < ds.p(); ++j) {
        out << (ds.feature_names.empty() ? "x" + std::to_string(j + 1) : ds.feature_names[j]);
        out << ',';
    }
    out << label_name << '\n';
    char buf[40];
    for (Eigen::Index i = 0; i < ds.n(); ++i) {
        for (Eigen::Index j = 0; j < ds.p(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", ds.X(i, j));
            out << buf << ',';
        }
        out << ds.Y(i) << '\n';
    }
}

// Column means and population standard deviations over the given rows.
// Constant columns get std 1 so they standardize to zero.
inline ScalingParams fit_scaling(const Eigen::Ref<const MatrixXd>& X,
                                 const std::vector<Eigen::Index>& fit_rows) {
    if (fit_rows.empty()) throw std::invalid_argument("fit_scaling: empty fit_rows");
    const Eigen::Index p = X.cols();
    ScalingParams sp{VectorXd::Zero(p), VectorXd::Ones(p)};
    const double m = static_cast<double>(fit_rows.size());
    for (Eigen::Index j = 0; j < p; ++j) {
        double mean = 0.0;
        for (auto i : fit_rows) mean += X(i, j);
        mean /= m;
        double var = 0.0;
        for (auto i : fit_rows) var += (X(i, j) - mean) * (X(i, j) - mean);
        var /= m;
        sp.means(j) = mean;
        sp.std_devs(j) = var > 0.0 ? std::sqrt(var) : 1.0;
    }
    return sp;
}

inline MatrixXd apply_scaling(const Eigen::Ref<const MatrixXd>& X, const ScalingParams& sp) {
    if (X.cols() != sp.means.size()) throw std::invalid_argument("apply_scaling: dimension mismatch");
    return (X.rowwise() - sp.means.transpose()).array().rowwise() / sp.std_devs.transpose().array();
}

// Standardize every column using statistics from fit_rows only.
inline std::pair<Dataset, ScalingParams> standardize(const Dataset& ds,
                                                     const std::vector<Eigen::Index>& fit_rows) {
    ScalingParams sp = fit_scaling(ds.X, fit_rows);
    Dataset out{apply_scaling(ds.X, sp), ds.Y, ds.feature_names};
    return {std::move(out), std::move(sp)};
}

// Seed-determined row partition; train gets round(n * fraction) rows
// (ties toward train).
inline std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>> split_indices(
    Eigen::Index n, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("split_indices: train_fraction must lie in (0,1)");
    const auto n_train = static_cast<Eigen::Index>(std::floor(static_cast<double>(n) * train_fraction + 0.5));
    if (n_train < 1 || n_train >= n)
        throw std::invalid_argument("split_indices: split leaves an empty part");

    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    Rng rng(seed);
    for (Eigen::Index i = n - 1; i > 0; --i) {
        const auto j = static_cast<Eigen::Index>(rng.engine()() % static_cast<std::uint64_t>(i + 1));
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    std::vector<Eigen::Index> train(perm.begin(), perm.begin() + n_train);
    std::vector<Eigen::Index> test(perm.begin() + n_train, perm.end());
    return {std::move(train), std::move(test)};
}

namespace detail {

inline MatrixXd take_rows(const Eigen::Ref<const MatrixXd>& X, const std::vector<Eigen::Index>& rows) {
    MatrixXd out(static_cast<Eigen::Index>(rows.size()), X.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = X.row(rows[i]);
    return out;
}

inline VectorXi take_rows_int(const VectorXi& v, const std::vector<Eigen::Index>& rows) {
    VectorXi out(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) out(static_cast<Eigen::Index>(i)) = v(rows[i]);
    return out;
}

}  // namespace detail

inline std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double train_fraction,
                                                    std::uint64_t seed) {
    auto [train_idx, test_idx] = split_indices(ds.n(), train_fraction, seed);
    Dataset train{detail::take_rows(ds.X, train_idx), detail::take_rows_int(ds.Y, train_idx),
                  ds.feature_names};
    Dataset test{detail::take_rows(ds.X, test_idx), detail::take_rows_int(ds.Y, test_idx),
                 ds.feature_names};
    return {std::move(train), std::move(test)};
}

}  // namespace pulearn
