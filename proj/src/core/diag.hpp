#pragma once
#include <string>
#include <vector>

namespace dwl::diag {

// Resolution and zero-mode warnings surface here instead of being silently
// dropped. By default they go to stderr; a scope collector captures them so
// probes can attach them to reports and tests can assert on them.
class Collector {
public:
    Collector();
    ~Collector();
    Collector(const Collector&) = delete;
    Collector& operator=(const Collector&) = delete;

    const std::vector<std::string>& messages() const { return messages_; }
    bool contains(const std::string& needle) const;

private:
    friend void warn(const std::string&);
    std::vector<std::string> messages_;
    Collector* previous_;
};

void warn(const std::string& message);

} // namespace dwl::diag
