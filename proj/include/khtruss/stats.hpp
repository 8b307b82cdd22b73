#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace khtruss {

enum class Mode { peel, sync, async, pruned };

inline const char* to_string(Mode m) {
    switch (m) {
        case Mode::peel: return "peel";
        case Mode::sync: return "sync";
        case Mode::async: return "async";
        case Mode::pruned: return "pruned";
    }
    return "?";
}

inline std::optional<Mode> mode_from_string(const std::string& s) {
    if (s == "peel") return Mode::peel;
    if (s == "sync") return Mode::sync;
    if (s == "async") return Mode::async;
    if (s == "pruned") return Mode::pruned;
    return std::nullopt;
}

// Per-edge h-trussness t(e, h); always >= 2.
struct TrussnessResult {
    std::vector<std::int32_t> trussness;
    int h = 1;
};

// rounds: full fixed-point sweeps including the final no-change sweep
//         (0 for peel). evaluations: compute_h_sup calls, or support
//         recomputations for peel. skipped: evaluations avoided by the
//         pruning rule.
struct RunStats {
    Mode mode = Mode::peel;
    int h = 1;
    int workers = 1;
    std::int64_t rounds = 0;
    std::int64_t evaluations = 0;
    std::int64_t skipped = 0;
    double wall_time_ms = 0.0;
    std::int64_t vertex_count = 0;
    std::int64_t edge_count = 0;
};

struct DecompositionResult {
    TrussnessResult result;
    RunStats stats;
};

// Raised when an engine exceeds its configured deadline; the bench
// harness reports the cell as INF instead of failing the process.
class TimeoutError : public std::runtime_error {
public:
    explicit TimeoutError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace khtruss
