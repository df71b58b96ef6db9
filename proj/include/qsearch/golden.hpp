// Copyright 2026 The qsearch Authors
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

// Reference results for n = 4..10 at alpha = 1 with the linear Toffoli
// depths {1, 5, 13, 29, 61, 120, 160, 200, 240}.

#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace qsearch::golden {

struct OneStageRow {
    int n;
    std::string_view sequence;
    double probability;  // rounded to 3 decimals
    int depth;
    double med;  // rounded to 2 decimals
};

struct TwoStageRow {
    int n;
    std::string_view stage1;
    std::string_view stage2;
    double stage1_probability;
    double stage2_probability;
    int stage1_depth;
    int stage2_depth;
    double med;
    double med_tolerance;
};

struct CriticalRow {
    int n;
    double alpha_c1;
    std::optional<double> alpha_c2;  // empty: no two-stage schedule beats Grover
};

inline constexpr double kProbabilityTolerance = 1e-3;
inline constexpr double kMedTolerance = 0.02;
inline constexpr double kCriticalTolerance = 0.01;

inline constexpr std::array<OneStageRow, 7> kGrover{{
    {4, "S_4(1,0)", 0.473, 30, 63.47},
    {5, "S_5(2,0)", 0.602, 124, 205.83},
    {6, "S_6(4,0)", 0.816, 504, 617.36},
    {7, "S_7(6,0)", 0.833, 1464, 1756.35},
    {8, "S_8(9,0)", 0.861, 2916, 3388.03},
    {9, "S_9(12,0)", 0.798, 4848, 6071.76},
    {10, "S_{10}(18,0)", 0.838, 8712, 10397.28},
}};

inline constexpr std::array<OneStageRow, 7> kOneStage{{
    {4, "S_{4,3}(1,1)", 0.821, 52, 63.32},
    {5, "S_{5,4}(1,1,1)", 0.849, 154, 181.48},
    {6, "S_{6,4}(1,1,2)", 0.755, 360, 476.97},
    {7, "S_{7,4}(1,1,2,1,2)", 0.887, 1173, 1322.75},
    {8, "S_{8,4}(1,1,2,1,2,1,2)", 0.875, 2211, 2527.43},
    {9, "S_{9,5}(1,1,2,1,2,1,2,1,2)", 0.831, 3713, 4470.20},
    {10, "S_{10,5}(1,1,2,1,2,1,2,1,2,1,2,1,2)", 0.847, 6453, 7614.56},
}};

// The n = 7 MED cell does not follow from its rounded neighbours; it gets a
// wider band.
inline constexpr std::array<TwoStageRow, 7> kTwoStage{{
    {4, "S_{4,2}(1,1)", "S_2(1,0)", 0.953, 1.0, 48, 18, 69.25, kMedTolerance},
    {5, "S_{5,2}(1,1)", "S_2(1,0)", 0.658, 1.0, 96, 34, 197.51, kMedTolerance},
    {6, "S_{6,2}(1,1,1,1)", "S_2(1,0)", 0.791, 1.0, 384, 66, 569.22, kMedTolerance},
    {7, "S_{7,4}(1,4)", "S_4(2,0)", 0.739, 0.908, 792, 274, 1587.09, 0.5},
    {8, "S_{8,5}(1,4,1,2)", "S_{5,4}(1,1,2)", 0.882, 0.998, 1806, 724, 2876.40, kMedTolerance},
    {9, "S_{9,5}(1,4,1,3,1,3)", "S_{5,4}(1,1,2)", 0.906, 0.998, 3542, 884, 4898.88, kMedTolerance},
    {10, "S_{10,5}(1,4,1,3,1,3,1,3)", "S_{5,4}(1,1,2)", 0.810, 0.998, 5485, 1044, 8081.89, kMedTolerance},
}};

inline constexpr std::array<CriticalRow, 7> kCritical{{
    {4, 2.07, std::nullopt},
    {5, 4.64, 1.21},
    {6, 14.65, 1.53},
    {7, 29.45, 1.76},
    {8, 32.88, 2.00},
    {9, 45.95, 2.17},
    {10, 83.97, 2.28},
}};

}  // namespace qsearch::golden
