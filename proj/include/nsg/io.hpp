#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "nsg/duality.hpp"
#include "nsg/interval_calculus.hpp"
#include "nsg/system.hpp"
#include "nsg/transform.hpp"
#include "nsg/walnut.hpp"

namespace nsg::io {

using nlohmann::json;

/// System description:
///   {"L": 210, "windows": [{"offset": 0, "channels": 10,
///                           "samples": [[re, im], ...]} | {..., "generator": "hann", "length": 13}]}
/// or {"L": 210, "gabor": {"generator": "triangle", "length": 13, "offset": -6, "a": 7, "channels": 10}}.
NsgSystem parse_system(const json& j, const BuildOptions& opts = {});
NsgSystem read_system(const std::string& path, const BuildOptions& opts = {});
json system_to_json(const NsgSystem& s);
void write_system(const std::string& path, const NsgSystem& s);

/// `.bin`: little-endian float64 (re, im) pairs; anything else: CSV `index,re,im`.
Signal read_signal(const std::string& path);
void write_signal(const std::string& path, const Signal& f);

/// CSV `n,m,re,im`; every (n, m) of the system must appear exactly once.
Coefficients read_coefficients(const std::string& path, const NsgSystem& s);
void write_coefficients(const std::string& path, const Coefficients& c);

/// CSV `offset,l,re,im` over stored bands.
void write_operator(const std::string& path, const WalnutOperator& W);
/// Dense |W| as an L x L CSV grid, row l holding |W[l, l']|.
void write_magnitude_grid(const std::string& path, const WalnutOperator& W);

void write_json(const std::string& path, const json& j);

json to_json(const RegimeReport& r);
json to_json(const NeumannReport& r);
json to_json(const StructureReport& r);
json to_json(const DualityReport& r);
json to_json(const ExistenceReport& r);
json to_json(const LemmaReport& r);

}  // namespace nsg::io
