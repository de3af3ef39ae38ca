#include "core/diag.hpp"

#include <cstdio>

namespace dwl::diag {

namespace {
thread_local Collector* g_active = nullptr;
}

Collector::Collector() : previous_(g_active) { g_active = this; }

Collector::~Collector() { g_active = previous_; }

bool Collector::contains(const std::string& needle) const {
    for (const auto& m : messages_)
        if (m.find(needle) != std::string::npos) return true;
    return false;
}

void warn(const std::string& message) {
    if (g_active) {
        g_active->messages_.push_back(message);
    } else {
        std::fprintf(stderr, "[dwl] warning: %s\n", message.c_str());
    }
}

} // namespace dwl::diag
