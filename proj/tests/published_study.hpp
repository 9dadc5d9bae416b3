#pragma once

// Green-cities study: comprehensive values under the reference model and
// the class acceptability indices reported with them.

#include <array>

namespace published {

struct Row {
  const char* id;
  double value;
  std::array<double, 3> cai;
};

inline constexpr std::array<Row, 30> rows{{
    {"a1", 0.6963, {0.0, 0.0, 1.0}},
    {"a2", 0.6802, {0.0, 0.029, 0.971}},
    {"a3", 0.8129, {0.0, 0.0, 1.0}},
    {"a4", 0.796, {0.0, 0.0, 1.0}},
    {"a5", 0.7339, {0.0, 0.0, 1.0}},
    {"a6", 0.6414, {0.0, 0.056, 0.944}},
    {"a7", 0.5292, {0.0, 1.0, 0.0}},
    {"a8", 0.8163, {0.0, 0.0, 1.0}},
    {"a9", 0.6163, {0.0, 0.124, 0.876}},
    {"a10", 0.6805, {0.0, 0.0, 1.0}},
    {"a11", 0.6881, {0.0, 0.2, 0.8}},
    {"a12", 0.8258, {0.0, 0.0, 1.0}},
    {"a13", 0.7775, {0.0, 0.0, 1.0}},
    {"a14", 0.2662, {1.0, 0.0, 0.0}},
    {"a15", 0.39, {1.0, 0.0, 0.0}},
    {"a16", 0.3573, {1.0, 0.0, 0.0}},
    {"a17", 0.4677, {0.088, 0.912, 0.0}},
    {"a18", 0.4016, {0.0, 1.0, 0.0}},
    {"a19", 0.4978, {0.0, 1.0, 0.0}},
    {"a20", 0.3252, {1.0, 0.0, 0.0}},
    {"a21", 0.4759, {0.001, 0.999, 0.0}},
    {"a22", 0.3659, {1.0, 0.0, 0.0}},
    {"a23", 0.4952, {0.0, 0.935, 0.065}},
    {"a24", 0.2276, {1.0, 0.0, 0.0}},
    {"a25", 0.5185, {0.0, 0.849, 0.151}},
    {"a26", 0.4216, {0.008, 0.991, 0.001}},
    {"a27", 0.2701, {1.0, 0.0, 0.0}},
    {"a28", 0.2757, {1.0, 0.0, 0.0}},
    {"a29", 0.1418, {1.0, 0.0, 0.0}},
    {"a30", 0.2085, {1.0, 0.0, 0.0}},
}};

}  // namespace published
