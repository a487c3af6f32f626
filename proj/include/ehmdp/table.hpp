#pragma once

#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ehmdp {

inline std::string format_double(double v, const char* fmt = "%.10g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

/// Comma-delimited result table with a header row and optional # comment lines.
struct Table {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write_csv(std::ostream& os) const {
        for (const std::string& c : comments) os << "# " << c << "\n";
        write_row(os, header);
        for (const auto& row : rows) write_row(os, row);
    }

    std::string to_csv() const {
        std::ostringstream os;
        write_csv(os);
        return os.str();
    }

private:
    static void write_row(std::ostream& os, const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ",";
            os << cells[i];
        }
        os << "\n";
    }
};

} // namespace ehmdp
