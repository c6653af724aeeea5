#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ontoline/error.hpp"

namespace ontoline::io {

inline std::string read_file(const std::filesystem::path& path, const std::string& module) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(module, "FileNotFound", "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view content,
                       const std::string& module) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(module, "FileWriteError", "cannot write " + path.string());
    out << content;
    if (!out) raise(module, "FileWriteError", "short write to " + path.string());
}

}  // namespace ontoline::io
