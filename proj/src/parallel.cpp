#include "domatic/parallel.hpp"

#include <cstdlib>
#include <string>

namespace domatic {

unsigned default_workers() {
    if (const char* env = std::getenv("DOMATIC_FORGE_WORKERS")) {
        try {
            const long value = std::stol(env);
            if (value >= 1) return static_cast<unsigned>(value);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace domatic
