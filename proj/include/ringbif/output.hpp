#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace ringbif {

// 12 significant digits, locale independent; "nan" for missing values.
std::string fmt_num(double v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const;
    nlohmann::json to_json() const;  // array of objects; numeric cells stay numbers
};

// Serialize JSON with doubles rounded to 12 significant digits.
std::string dump_json(const nlohmann::json& j);

}  // namespace ringbif
