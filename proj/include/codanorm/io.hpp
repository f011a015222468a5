#pragma once

#include <string>
#include <vector>

namespace codanorm {

// Writes via a sibling temp file and rename so readers never see a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

// Reads a UTF-8 file into lines, splitting on LF and dropping a trailing CR.
std::vector<std::string> read_lines(const std::string& path);

}  // namespace codanorm
