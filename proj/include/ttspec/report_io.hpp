#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "ttspec/asymptotics.hpp"
#include "ttspec/dynamics.hpp"
#include "ttspec/transition.hpp"

namespace ttspec {

/// Shortest round-trip decimal representation (std::to_chars).
std::string format_double(double v);

nlohmann::json report_to_json(const SpectrumReport& r);

/// CSV with header n,x1,x2,x1_model,x2_model,ratio1,ratio2,classification.
std::string asymptotics_table_csv(const AsymptoticsTable& t);

nlohmann::json return_record_to_json(const ReturnRecord& rec);

/// CSV orbit dump, columns step,phi,s,rho,u,n.
std::string itinerary_orbit_csv(const std::vector<ReturnRecord>& records);

/// Write-to-temp then atomic rename; no partial files on failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace ttspec
