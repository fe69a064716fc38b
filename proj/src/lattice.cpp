// Copyright 2026 The specq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "specq/lattice.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace specq {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kMaxRegisterBits = 26;  // dense-state ceiling, see statevector
}  // namespace

GridSpec::GridSpec(int d_, int n_) : d(d_), n(n_) {
    if (d < 1 || n < 1) {
        throw ValidationError("GridSpec requires d >= 1 and n >= 1");
    }
    if (d * n > kMaxRegisterBits) {
        throw ValidationError("lattice of 2^" + std::to_string(d * n) +
                              " points exceeds the dense ceiling of 2^" +
                              std::to_string(kMaxRegisterBits));
    }
}

Field::Field(const GridSpec& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) {
        throw ShapeError("Field value count does not match grid size");
    }
}

double Field::norm() const {
    double s = 0.0;
    for (const cplx& v : values) s += std::norm(v);
    return std::sqrt(s);
}

cplx Field::mean() const {
    cplx s{0.0, 0.0};
    for (const cplx& v : values) s += v;
    return s / static_cast<double>(values.size());
}

double Field::max_imag() const {
    double m = 0.0;
    for (const cplx& v : values) m = std::max(m, std::abs(v.imag()));
    return m;
}

std::size_t flatten_index(std::span<const int> multi, const GridSpec& grid) {
    if (static_cast<int>(multi.size()) != grid.d) {
        throw IndexError("multi-index has wrong dimension");
    }
    const int N = grid.points_per_dim();
    std::size_t flat = 0;
    for (int i = 0; i < grid.d; ++i) {
        if (multi[i] < 0 || multi[i] >= N) {
            throw IndexError("multi-index component out of range");
        }
        flat = flat * N + static_cast<std::size_t>(multi[i]);
    }
    return flat;
}

std::vector<int> unflatten_index(std::size_t flat, const GridSpec& grid) {
    if (flat >= grid.size()) {
        throw IndexError("flat index out of range");
    }
    const int N = grid.points_per_dim();
    std::vector<int> multi(grid.d);
    for (int i = grid.d - 1; i >= 0; --i) {
        multi[i] = static_cast<int>(flat % N);
        flat /= N;
    }
    return multi;
}

Field mean_project(const Field& f) {
    Field out = f;
    const cplx m = f.mean();
    for (cplx& v : out.values) v -= m;
    return out;
}

const std::vector<SourceCatalogEntry>& source_catalog() {
    static const std::vector<SourceCatalogEntry> catalog = {
        {"zero", "0", 1, true, [](const std::vector<double>&) { return 0.0; }},
        {"constant", "1", 1, false, [](const std::vector<double>&) { return 1.0; }},
        {"cos2pix", "cos(2*pi*x)", 1, true,
         [](const std::vector<double>& x) { return std::cos(2.0 * kPi * x[0]); }},
        {"sin2pix", "sin(2*pi*x)", 1, true,
         [](const std::vector<double>& x) { return std::sin(2.0 * kPi * x[0]); }},
        {"cos2pix_sinm4piy", "cos(2*pi*x)*sin(-4*pi*y)", 2, true,
         [](const std::vector<double>& x) {
             return std::cos(2.0 * kPi * x[0]) * std::sin(-4.0 * kPi * x[1]);
         }},
        {"cos2pix_sinm4piy_cos2piz", "cos(2*pi*x)*sin(-4*pi*y)*cos(2*pi*z)", 3, true,
         [](const std::vector<double>& x) {
             return std::cos(2.0 * kPi * x[0]) * std::sin(-4.0 * kPi * x[1]) *
                    std::cos(2.0 * kPi * x[2]);
         }},
        {"u0_2d",
         "cos(2*pi*x)*sin(8*pi*y) + 2*sin(6*pi*y) + 3*sin(10*pi*x)*cos(12*pi*y)^2", 2, true,
         [](const std::vector<double>& x) {
             const double c12 = std::cos(12.0 * kPi * x[1]);
             return std::cos(2.0 * kPi * x[0]) * std::sin(8.0 * kPi * x[1]) +
                    2.0 * std::sin(6.0 * kPi * x[1]) +
                    3.0 * std::sin(10.0 * kPi * x[0]) * c12 * c12;
         }},
        {"u0_3d",
         "cos(2*pi*x)*sin(8*pi*y) + 2*sin(6*pi*y) + 3*sin(10*pi*x)*cos(12*pi*y)^2", 3, true,
         [](const std::vector<double>& x) {
             const double c12 = std::cos(12.0 * kPi * x[1]);
             return std::cos(2.0 * kPi * x[0]) * std::sin(8.0 * kPi * x[1]) +
                    2.0 * std::sin(6.0 * kPi * x[1]) +
                    3.0 * std::sin(10.0 * kPi * x[0]) * c12 * c12;
         }},
    };
    return catalog;
}

const SourceCatalogEntry& find_source(const std::string& id) {
    for (const auto& entry : source_catalog()) {
        if (entry.id == id) return entry;
    }
    throw ConfigError("unknown source catalog id: " + id);
}

Field make_field(const GridSpec& grid, const std::string& id) {
    const SourceCatalogEntry& entry = find_source(id);
    if (grid.d < entry.min_d) {
        throw ConfigError("source '" + id + "' requires d >= " + std::to_string(entry.min_d));
    }
    const int N = grid.points_per_dim();
    Field f(grid);
    std::vector<int> multi(grid.d, 0);
    std::vector<double> x(grid.d, 0.0);
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        for (int i = 0; i < grid.d; ++i) x[i] = static_cast<double>(multi[i]) / N;
        f.values[flat] = cplx{entry.eval(x), 0.0};
        for (int i = grid.d - 1; i >= 0; --i) {
            if (++multi[i] < N) break;
            multi[i] = 0;
        }
    }
    return f;
}

void write_field_csv(const Field& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    for (int i = 0; i < f.grid.d; ++i) out << "j" << (i + 1) << ",";
    out << "re,im\n";
    char buf[64];
    for (std::size_t flat = 0; flat < f.grid.size(); ++flat) {
        const auto multi = unflatten_index(flat, f.grid);
        for (int m : multi) out << m << ",";
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.values[flat].real(),
                      f.values[flat].imag());
        out << buf;
    }
}

void write_field_bin(const Field& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    const std::int32_t header[2] = {f.grid.d, f.grid.n};
    out.write(reinterpret_cast<const char*>(header), sizeof header);
    for (const cplx& v : f.values) {
        const double pair[2] = {v.real(), v.imag()};
        out.write(reinterpret_cast<const char*>(pair), sizeof pair);
    }
}

Field read_field_bin(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path);
    std::int32_t header[2];
    in.read(reinterpret_cast<char*>(header), sizeof header);
    if (!in) throw ConfigError("truncated field file: " + path);
    Field f(GridSpec(header[0], header[1]));
    for (cplx& v : f.values) {
        double pair[2];
        in.read(reinterpret_cast<char*>(pair), sizeof pair);
        if (!in) throw ConfigError("truncated field file: " + path);
        v = cplx{pair[0], pair[1]};
    }
    return f;
}

}  // namespace specq
