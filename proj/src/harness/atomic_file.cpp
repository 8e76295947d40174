#include "tsens/core/errors.hpp"
#include "tsens/harness/report.hpp"

#include <fstream>
#include <system_error>

namespace tsens::harness {

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    auto temp = path;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + temp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw IoError("write to '" + temp.string() + "' failed");
    }
    std::filesystem::rename(temp, path, ec);
    if (ec) {
        std::filesystem::remove(temp, ec);
        throw IoError("cannot move output into place at '" + path.string() + "'");
    }
}

}  // namespace tsens::harness
