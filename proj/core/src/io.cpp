#include "abelprop/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "abelprop/errors.hpp"

namespace abelprop {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path fp(path);
    if (fp.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(fp.parent_path(), ec);
        if (ec) throw DomainError("io", "cannot create directory " + fp.parent_path().string());
    }
    std::ofstream out(fp, std::ios::binary);
    if (!out) throw DomainError("io", "cannot open " + path + " for writing");
    out << content;
    if (!out) throw DomainError("io", "write to " + path + " failed");
}

std::string trajectory_csv(const Trajectory& traj, const ModelParams& p, bool with_drift) {
    std::string s = with_drift ? "t,x1,x2,x3,drift\n" : "t,x1,x2,x3\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const State& st = traj.states[i];
        s += fmt_g17(traj.t[i]);
        s += ',';
        s += fmt_g17(st.x1);
        s += ',';
        s += fmt_g17(st.x2);
        s += ',';
        s += fmt_g17(st.x3);
        if (with_drift) {
            s += ',';
            s += fmt_g17(st.x1 + st.x2 + st.x3 - p.N);
        }
        s += '\n';
    }
    return s;
}

}  // namespace abelprop
