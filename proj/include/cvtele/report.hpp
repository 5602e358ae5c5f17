#pragma once

#include <string>

#include "cvtele/teleport.hpp"

namespace cvtele {

// Flat JSON object with a frozen key order (schema "cvtele-report/1");
// NaN-valued optional metrics serialize as null.
std::string report_to_json(const ProtocolReport& rep);

// One header line plus one data row, columns in the JSON key order.
std::string report_csv_header();
std::string report_to_csv(const ProtocolReport& rep);

std::string error_to_json(const Error& err);

}  // namespace cvtele
