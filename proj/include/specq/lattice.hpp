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

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "specq/errors.hpp"

namespace specq {

using cplx = std::complex<double>;

/// Periodic lattice on the unit torus: d dimensions, N = 2^n points per
/// dimension, sample points x_i = j_i / N.
struct GridSpec {
    int d = 1;
    int n = 1;

    GridSpec() = default;
    GridSpec(int d_, int n_);

    int points_per_dim() const { return 1 << n; }
    int register_bits() const { return d * n; }
    std::size_t size() const { return std::size_t{1} << register_bits(); }

    bool operator==(const GridSpec& o) const { return d == o.d && n == o.n; }
};

/// Complex samples on the lattice, flat row-major with axis 1 most
/// significant in the flat index.
struct Field {
    GridSpec grid;
    std::vector<cplx> values;

    Field() = default;
    explicit Field(const GridSpec& g) : grid(g), values(g.size(), cplx{0.0, 0.0}) {}
    Field(const GridSpec& g, std::vector<cplx> v);

    double norm() const;
    cplx mean() const;
    double max_imag() const;
};

std::size_t flatten_index(std::span<const int> multi, const GridSpec& grid);
std::vector<int> unflatten_index(std::size_t flat, const GridSpec& grid);

/// Subtracts the lattice mean; idempotent.
Field mean_project(const Field& f);

/// Closed catalog of source terms and initial conditions.
struct SourceCatalogEntry {
    std::string id;
    std::string formula;
    int min_d = 1;
    bool zero_mean = true;
    std::function<double(const std::vector<double>&)> eval;
};

const std::vector<SourceCatalogEntry>& source_catalog();
const SourceCatalogEntry& find_source(const std::string& id);

/// Samples a catalog entry at x_i = j_i/N; imaginary parts are exactly zero.
Field make_field(const GridSpec& grid, const std::string& id);

// Serialization: CSV (one row per lattice point: indices, Re, Im) and a flat
// binary format (int32 d, int32 n header, then little-endian f64 pairs).
void write_field_csv(const Field& f, const std::string& path);
void write_field_bin(const Field& f, const std::string& path);
Field read_field_bin(const std::string& path);

}  // namespace specq
