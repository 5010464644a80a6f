#include "tpred/parallel.hpp"

#include <cstdlib>

namespace tpred {

int configured_threads() {
    if (const char* env = std::getenv("TPRED_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min(v, 256L));
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

} // namespace tpred
