#pragma once

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "doubletop/catdata.hpp"
#include "doubletop/tube.hpp"

namespace doubletop {

using nlohmann::json;

uint64_t fnv1a64(const std::string& bytes);
// 16 hex digits of FNV-1a over the canonical category JSON
std::string category_fingerprint(const CategoryData& cat);

json to_json(cplx z);
json to_json(const Vec& v);
json to_json(const Mat& m);

struct RunReport {
    std::vector<std::string> command;
    std::string fingerprint;
    std::map<std::string, double> residuals;
    json results = json::object();
    std::map<std::string, double> timings;  // seconds per stage
    bool emit_timings = false;

    // Keys sorted, fixed float formatting; timings only when emit_timings is set.
    std::string to_json_text() const;
};

class StageTimer {
public:
    StageTimer(RunReport& r, std::string stage) : report_(r), stage_(std::move(stage)), start_(clock::now()) {}
    ~StageTimer() {
        report_.timings[stage_] += std::chrono::duration<double>(clock::now() - start_).count();
    }

private:
    using clock = std::chrono::steady_clock;
    RunReport& report_;
    std::string stage_;
    clock::time_point start_;
};

}  // namespace doubletop
