#include "rootcensus/report.hpp"

#include <chrono>
#include <fstream>

#include "rootcensus/errors.hpp"

namespace rcs {

Json make_report(const std::string& command, const Json& config, const Json& payload) {
    Json r;
    r["version"] = "0.1.0";
    r["command"] = command;
    r["timestamp_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::system_clock::now().time_since_epoch())
                            .count();
    r["config"] = config;
    r["result"] = payload;
    return r;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    require(out.good(), error::code::io, "cannot write: " + path);
    out << content;
    require(out.good(), error::code::io, "write failed: " + path);
}

void write_report_file(const std::string& path, const Json& report) {
    write_text_file(path, report.dump(2) + "\n");
}

} // namespace rcs
