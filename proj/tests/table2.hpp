#pragma once

// Published design table: total sizes at alpha 0.05, power 0.8.

#include <array>
#include <cstdint>

namespace table2 {

inline constexpr std::array<double, 7> kPrevalence = {0.5, 0.1, 0.05, 0.01, 0.005, 0.001, 0.0005};

struct Row {
    double efficacy;
    double delta;
    std::array<std::int64_t, 7> n;
};

inline constexpr std::array<Row, 16> kRows = {{
    {0.0, 0.1, {37632, 238336, 489216, 2496256, 5005056, 25075456, 50163456}},
    {0.0, 0.2, {9408, 59584, 122304, 624064, 1251264, 6268864, 12540864}},
    {0.0, 0.3, {4181, 26482, 54357, 277362, 556117, 2786162, 5573717}},
    {0.0, 0.4, {2352, 14896, 30576, 156016, 312816, 1567216, 3135216}},
    {0.3, 0.1, {21751, 145009, 299080, 1531654, 3072371, 15398105, 30805273}},
    {0.3, 0.2, {5438, 36252, 74770, 382913, 768093, 3849526, 7701318}},
    {0.3, 0.3, {2417, 16112, 33231, 170184, 341375, 1710901, 3422808}},
    {0.3, 0.4, {1359, 9063, 18693, 95728, 192023, 962382, 1925330}},
    {0.6, 0.1, {11064, 79905, 165957, 854372, 1714890, 8599037, 17204221}},
    {0.6, 0.2, {2766, 19976, 41489, 213593, 428723, 2149759, 4301055}},
    {0.6, 0.3, {1229, 8878, 18440, 94930, 190543, 955449, 1911580}},
    {0.6, 0.4, {691, 4994, 10372, 53398, 107181, 537440, 1075264}},
    {0.9, 0.1, {4553, 37946, 79686, 413607, 831009, 4170221, 8344237}},
    {0.9, 0.2, {1138, 9486, 19921, 103402, 207752, 1042555, 2086059}},
    {0.9, 0.3, {506, 4216, 8854, 45956, 92334, 463358, 927137}},
    {0.9, 0.4, {285, 2372, 4980, 25850, 51938, 260639, 521515}},
}};

}  // namespace table2
