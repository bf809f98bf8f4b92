// cli_util.hpp — helpers for driving the resrelax executable from tests

#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace resrelax::testing {

struct RunResult {
    int exit_code{-1};
    std::string out;
    std::string err;
};

class Workspace {
public:
    explicit Workspace(const std::string& tag)
    {
        dir_ = std::filesystem::temp_directory_path() / ("resrelax_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(dir_);
        std::filesystem::create_directories(dir_);
    }
    ~Workspace() { std::filesystem::remove_all(dir_); }
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;

    const std::filesystem::path& dir() const { return dir_; }

    std::filesystem::path write(const std::string& name, const std::string& body) const
    {
        std::ofstream(dir_ / name) << body;
        return dir_ / name;
    }

    RunResult run(const std::string& args) const
    {
        const auto out = dir_ / "stdout.txt";
        const auto err = dir_ / "stderr.txt";
        const std::string cmd = std::string("\"") + RESRELAX_CLI + "\" " + args + " > \"" + out.string() + "\" 2> \"" +
                                err.string() + "\"";
        const int status = std::system(cmd.c_str());
        RunResult r;
        r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = read(out);
        r.err = read(err);
        return r;
    }

    static std::string read(const std::filesystem::path& p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

private:
    std::filesystem::path dir_;
};

inline std::string config_path(const std::string& name)
{
    return (std::filesystem::path(RESRELAX_CONFIG_DIR) / name).string();
}

inline std::vector<std::vector<std::string>> parse_csv(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

} // namespace resrelax::testing
