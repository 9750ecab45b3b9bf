#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lozi::cli {

enum class Exit : int { ok = 0, usage = 1, computation = 2, verification = 3 };

enum class Command { manifold, homoclinic, trace, endpoints, scan, verify_tables };
enum class Format { csv, json, svg };

std::string to_string(Command c);
std::string to_string(Format f);

struct RunConfig {
    Command command = Command::manifold;
    double a = 1.46, b = 0.86;
    int depth = 8;
    double tol = 0.0;  // 0 picks the per-command default
    std::string out = "-";
    Format format = Format::csv;

    // manifold
    std::size_t max_vertices = 0;
    // homoclinic
    bool snap = false;
    // trace
    int curve = 1;
    double from = 0.0, to = 0.0, step = 0.005;
    bool has_range = false;
    // endpoints / verify-tables
    std::vector<int> curves{1, 2, 3, 4, 5, 6};
    std::string fixture_dir;
    double match_tol = 1e-6;
    int table = 0;  // 0 = both
    int samples = 60;
    // scan
    double a_min = 1.0, a_max = 2.0, b_min = 0.02, b_max = 1.0;
    int na = 25, nb = 25;
    unsigned threads = 0;
};

// Formats each command accepts; the first one is the default.
std::vector<Format> formats_for(Command c);

// "C1..C6", "C2,C5" or "3".
std::vector<int> parse_curves(const std::string& text);

// Runs a parsed configuration, writing results to cfg.out ("-" is `out`).
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv and runs; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lozi::cli
