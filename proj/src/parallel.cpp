#include "bornforge/parallel.hpp"

#include <cstdlib>
#include <string>

namespace bornforge {

std::size_t worker_count(std::size_t requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("BORNFORGE_THREADS")) {
        try {
            const unsigned long v = std::stoul(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            // unparsable values fall through to auto
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace bornforge
