// Copyright 2026 The entdepth Authors
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

#include "entdepth/records_io.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace entdepth {

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc{}) {
        throw FormatError("cannot format number");
    }
    return std::string(buffer, end);
}

double parse_double(std::string_view text) {
    if (text == "nan") {
        return std::nan("");
    }
    double value = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw FormatError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
        throw FormatError("not a non-negative integer: '" + std::string(text) + "'");
    }
    return value;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    return line;
}

class CsvTable {
   public:
    CsvTable(std::istream &in, std::initializer_list<std::string_view> required) {
        std::string line;
        if (!std::getline(in, line)) {
            throw FormatError("empty CSV input");
        }
        auto header = split(strip_cr(line), ',');
        for (std::size_t k = 0; k < header.size(); ++k) {
            columns_.emplace(std::string(header[k]), k);
        }
        for (std::string_view name : required) {
            if (!columns_.count(std::string(name))) {
                throw FormatError("missing CSV column '" + std::string(name) + "'");
            }
        }
        width_ = header.size();
        std::size_t line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            std::string_view view = strip_cr(line);
            if (view.empty()) {
                continue;
            }
            rows_.emplace_back(view);
            if (split(rows_.back(), ',').size() != width_) {
                throw FormatError("CSV line " + std::to_string(line_no) + " has the wrong number of fields");
            }
        }
    }

    template <typename F>
    void for_each(F f) const {
        for (const std::string &row : rows_) {
            auto fields = split(row, ',');
            f([&](std::string_view name) { return fields[columns_.at(std::string(name))]; });
        }
    }

   private:
    std::map<std::string, std::size_t> columns_;
    std::size_t width_ = 0;
    std::vector<std::string> rows_;
};

}  // namespace

void write_depth_csv(std::ostream &out, std::span<const DepthRecord> records) {
    out << kDepthHeader << '\n';
    for (const DepthRecord &r : records) {
        out << format_double(r.p) << ',' << r.L << ',' << r.realization << ',' << r.seed << ',' << r.depth_qubits
            << ',' << r.n_clusters << '\n';
    }
}

void write_boxcount_csv(std::ostream &out, std::span<const BoxCountRecord> records) {
    out << kBoxCountHeader << '\n';
    for (const BoxCountRecord &r : records) {
        out << format_double(r.p) << ',' << r.L << ',' << r.b << ',' << r.realization << ',' << r.seed << ','
            << r.n_boxes << '\n';
    }
}

void write_fits_csv(std::ostream &out, std::span<const FitRow> rows) {
    out << kFitsHeader << '\n';
    for (const FitRow &r : rows) {
        out << format_double(r.p) << ',' << format_double(r.gamma) << ',' << format_double(r.gamma_err) << ','
            << format_double(r.d) << ',' << format_double(r.d_err) << ',' << r.n_L_points << ',' << r.n_b_points
            << '\n';
    }
}

std::vector<DepthRecord> read_depth_csv(std::istream &in) {
    CsvTable table(in, {"p", "L", "realization", "seed", "depth_qubits", "n_clusters"});
    std::vector<DepthRecord> out;
    table.for_each([&](auto field) {
        out.push_back({parse_double(field("p")), parse_u64(field("L")), parse_u64(field("realization")),
                       parse_u64(field("seed")), parse_u64(field("depth_qubits")), parse_u64(field("n_clusters"))});
    });
    return out;
}

std::vector<BoxCountRecord> read_boxcount_csv(std::istream &in) {
    CsvTable table(in, {"p", "L", "b", "realization", "seed", "n_boxes"});
    std::vector<BoxCountRecord> out;
    table.for_each([&](auto field) {
        out.push_back({parse_double(field("p")), parse_u64(field("L")), parse_u64(field("b")),
                       parse_u64(field("realization")), parse_u64(field("seed")), parse_u64(field("n_boxes"))});
    });
    return out;
}

std::vector<FitRow> read_fits_csv(std::istream &in) {
    CsvTable table(in, {"p", "gamma", "gamma_err", "d", "d_err", "n_L_points", "n_b_points"});
    std::vector<FitRow> out;
    table.for_each([&](auto field) {
        out.push_back({parse_double(field("p")), parse_double(field("gamma")), parse_double(field("gamma_err")),
                       parse_double(field("d")), parse_double(field("d_err")), parse_u64(field("n_L_points")),
                       parse_u64(field("n_b_points"))});
    });
    return out;
}

std::string render_fit_table(std::span<const FitRow> rows) {
    std::ostringstream out;
    out << std::left << std::setw(8) << "p" << std::setw(10) << "gamma" << std::setw(10) << "gamma_err"
        << std::setw(10) << "d" << std::setw(10) << "d_err" << '\n';
    out << std::fixed << std::setprecision(4);
    for (const FitRow &r : rows) {
        out << std::setw(8) << r.p << std::setw(10) << r.gamma << std::setw(10) << r.gamma_err << std::setw(10)
            << r.d << std::setw(10) << r.d_err << '\n';
    }
    return out.str();
}

void write_snapshot(std::ostream &out, const Snapshot &snapshot) {
    out << "p=" << format_double(snapshot.p) << " L=" << snapshot.L << " seed=" << snapshot.seed << '\n';
    for (const SnapshotBitmap &bitmap : snapshot.bitmaps) {
        if (bitmap.membership.size() != snapshot.L) {
            throw FormatError("snapshot bitmap length differs from L");
        }
        out << "b=" << bitmap.b << ' ';
        for (bool bit : bitmap.membership) {
            out << (bit ? '1' : '0');
        }
        out << '\n';
    }
}

Snapshot read_snapshot(std::istream &in) {
    Snapshot snapshot;
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("empty snapshot");
    }
    auto fields = split(strip_cr(line), ' ');
    if (fields.size() != 3 || fields[0].substr(0, 2) != "p=" || fields[1].substr(0, 2) != "L=" ||
        fields[2].substr(0, 5) != "seed=") {
        throw FormatError("snapshot header must read \"p=<> L=<> seed=<>\"");
    }
    snapshot.p = parse_double(fields[0].substr(2));
    snapshot.L = parse_u64(fields[1].substr(2));
    snapshot.seed = parse_u64(fields[2].substr(5));
    while (std::getline(in, line)) {
        std::string_view view = strip_cr(line);
        if (view.empty()) {
            continue;
        }
        auto parts = split(view, ' ');
        if (parts.size() != 2 || parts[0].substr(0, 2) != "b=" || parts[1].size() != snapshot.L) {
            throw FormatError("bad snapshot line: " + std::string(view));
        }
        SnapshotBitmap bitmap;
        bitmap.b = parse_u64(parts[0].substr(2));
        for (char c : parts[1]) {
            if (c != '0' && c != '1') {
                throw FormatError("snapshot bits must be 0 or 1");
            }
            bitmap.membership.push_back(c == '1');
        }
        snapshot.bitmaps.push_back(std::move(bitmap));
    }
    return snapshot;
}

}  // namespace entdepth
