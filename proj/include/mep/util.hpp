#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mep {

// Exact round-trip formatting for doubles ("%.17g"); used by every CSV and
// text writer so identical values always produce identical bytes.
std::string format_double(double value);

std::uint64_t fnv1a64(std::string_view data);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

double median(std::vector<double> values); // throws on empty

} // namespace mep
