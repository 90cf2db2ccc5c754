// Copyright 2026 The qensemble Authors
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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace qens {

/// Derives an independent 64-bit seed for the named sub-stream `stream` at position `indices`.
///
/// Every random draw in the library flows from one master seed through this function, so a
/// result depends only on (master, stream, indices) and never on evaluation order.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream, std::initializer_list<std::uint64_t> indices = {});

/// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
inline double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace qens
