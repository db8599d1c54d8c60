#pragma once

// The five published Q6 labelings, bundled so golden checks run offline.
// Stored in vertex-index order: entry v = 8*r + c of each 8x8 table, where
// the row r holds bits 5..3 of the vertex index and the column c bits 2..0.

#include <array>

#include "qdml/hypercube.hpp"

namespace qdml {

inline constexpr int kNumPaperLabelings = 5;

inline constexpr std::array<std::array<int, 64>, 5> kPaperLabelings = {{
    {0,  4,  6,  15, 36, 60, 47, 49,  //
     38, 8,  61, 46, 41, 45, 28, 20,  //
     52, 56, 29, 30, 40, 24, 51, 5,   //
     21, 44, 32, 62, 9,  26, 13, 10,  //
     53, 50, 37, 54, 1,  31, 19, 42,  //
     58, 12, 39, 23, 33, 34, 7,  11,  //
     43, 35, 18, 22, 17, 2,  55, 25,  //
     14, 16, 3,  27, 48, 57, 59, 63},
    {0,  4,  6,  21, 36, 62, 58, 54,  //
     38, 14, 50, 55, 28, 47, 12, 19,  //
     52, 32, 34, 24, 23, 15, 61, 22,  //
     56, 43, 30, 45, 17, 37, 3,  10,  //
     53, 60, 26, 46, 18, 33, 20, 7,   //
     41, 2,  48, 40, 39, 29, 31, 11,  //
     44, 51, 16, 35, 8,  13, 49, 25,  //
     9,  5,  1,  27, 42, 57, 59, 63},
    {0,  4,  6,  26, 36, 51, 34, 45,  //
     38, 23, 8,  30, 56, 47, 46, 54,  //
     52, 41, 60, 42, 35, 43, 24, 5,   //
     44, 31, 49, 50, 1,  2,  15, 10,  //
     53, 48, 61, 62, 13, 14, 32, 19,  //
     58, 39, 20, 28, 21, 3,  22, 11,  //
     9,  17, 16, 7,  33, 55, 40, 25,  //
     18, 29, 12, 27, 37, 57, 59, 63},
    {0,  4,  6,  41, 36, 43, 61, 49,  //
     38, 35, 5,  29, 60, 48, 42, 7,   //
     52, 37, 50, 46, 1,  12, 47, 19,  //
     45, 54, 23, 39, 8,  31, 30, 10,  //
     53, 33, 32, 55, 24, 40, 9,  18,  //
     44, 16, 51, 62, 17, 13, 26, 11,  //
     56, 21, 15, 3,  34, 58, 28, 25,  //
     14, 2,  20, 27, 22, 57, 59, 63},
    {0,  4,  6,  15, 36, 54, 19, 23,  //
     38, 61, 60, 51, 26, 45, 49, 17,  //
     52, 16, 62, 55, 58, 42, 34, 28,  //
     7,  22, 24, 31, 13, 30, 20, 10,  //
     53, 43, 33, 50, 32, 39, 41, 56,  //
     35, 29, 21, 5,  8,  1,  47, 11,  //
     46, 14, 18, 37, 12, 3,  2,  25,  //
     40, 44, 9,  27, 48, 57, 59, 63},
}};

// index is 1-based (published labeling #1..#5).
inline Labeling paper_labeling(int index) {
    if (index < 1 || index > kNumPaperLabelings)
        throw std::invalid_argument("published labeling index must be in 1..5");
    const auto& a = kPaperLabelings[index - 1];
    Labeling lab;
    lab.n = 6;
    lab.labels.assign(a.begin(), a.end());
    return lab;
}

}  // namespace qdml
