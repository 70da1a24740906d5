#pragma once

#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace shirew {

// JSON-lines trace of inferences and store events.
class TraceSink {
  public:
    virtual ~TraceSink() = default;
    virtual void emit(const nlohmann::json& event) = 0;
};

class FileTraceSink : public TraceSink {
  public:
    explicit FileTraceSink(const std::string& path) : out_(path) {}
    void emit(const nlohmann::json& event) override { out_ << event.dump() << "\n"; }

  private:
    std::ofstream out_;
};

class CollectingTraceSink : public TraceSink {
  public:
    void emit(const nlohmann::json& event) override { events.push_back(event); }
    std::vector<nlohmann::json> events;
};

}  // namespace shirew
